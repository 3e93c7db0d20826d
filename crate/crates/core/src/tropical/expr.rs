use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};

use super::TropError;

/// Expression tree over min, max and ordinary `+`.
#[derive(Debug, Clone, PartialEq)]
pub enum TropicalExpr {
    Const(f64),
    Var(String),
    /// Tropical product, i.e. ordinary addition of the children.
    Sum(Vec<TropicalExpr>),
    Max(Vec<TropicalExpr>),
    Min(Vec<TropicalExpr>),
    Neg(Box<TropicalExpr>),
    /// Tropical power: the child multiplied by an integer.
    Scale(i64, Box<TropicalExpr>),
}

/// Values an expression can be evaluated over.
///
/// `f64` is the working type; [`BigRational`] gives exact evaluation for
/// checking rewrites that must not change the function.
pub trait TropScalar: Clone + PartialOrd + Add<Output = Self> + Neg<Output = Self> {
    fn zero() -> Self;
    fn from_const(c: f64) -> Self;
    fn times_int(self, k: i64) -> Self;
}

impl TropScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_const(c: f64) -> Self {
        c
    }
    fn times_int(self, k: i64) -> Self {
        k as f64 * self
    }
}

impl TropScalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_const(c: f64) -> Self {
        BigRational::from_f64(c).expect("constants are finite")
    }
    fn times_int(self, k: i64) -> Self {
        self * BigRational::from_integer(BigInt::from(k))
    }
}

fn tmax<T: TropScalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

fn tmin<T: TropScalar>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

impl TropicalExpr {
    pub fn var(name: impl Into<String>) -> Self {
        TropicalExpr::Var(name.into())
    }

    /// Evaluates by structural recursion; `lookup` supplies variable values.
    pub fn eval_with<T, F>(&self, lookup: &F) -> Result<T, TropError>
    where
        T: TropScalar,
        F: Fn(&str) -> Option<T>,
    {
        match self {
            TropicalExpr::Const(c) => Ok(T::from_const(*c)),
            TropicalExpr::Var(name) => {
                lookup(name).ok_or_else(|| TropError::UnassignedVariable(name.clone()))
            }
            TropicalExpr::Sum(children) => {
                let mut acc = T::zero();
                for child in children {
                    acc = acc + child.eval_with(lookup)?;
                }
                Ok(acc)
            }
            TropicalExpr::Max(children) => fold_nonempty(children, lookup, "max", tmax),
            TropicalExpr::Min(children) => fold_nonempty(children, lookup, "min", tmin),
            TropicalExpr::Neg(child) => Ok(-child.eval_with(lookup)?),
            TropicalExpr::Scale(k, child) => Ok(child.eval_with(lookup)?.times_int(*k)),
        }
    }

    /// Variable names in first-occurrence order, without repeats.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            TropicalExpr::Const(_) => {}
            TropicalExpr::Var(name) => {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
            TropicalExpr::Sum(cs) | TropicalExpr::Max(cs) | TropicalExpr::Min(cs) => {
                cs.iter().for_each(|c| c.collect_vars(out))
            }
            TropicalExpr::Neg(c) | TropicalExpr::Scale(_, c) => c.collect_vars(out),
        }
    }
}

fn fold_nonempty<T, F>(
    children: &[TropicalExpr],
    lookup: &F,
    name: &'static str,
    op: fn(T, T) -> T,
) -> Result<T, TropError>
where
    T: TropScalar,
    F: Fn(&str) -> Option<T>,
{
    let (first, rest) = children
        .split_first()
        .ok_or(TropError::EmptyOperator(name))?;
    let mut acc = first.eval_with(lookup)?;
    for child in rest {
        acc = op(acc, child.eval_with(lookup)?);
    }
    Ok(acc)
}

/// Evaluates `expr` at a point given as a map from variable name to value.
pub fn trop_eval(expr: &TropicalExpr, point: &BTreeMap<String, f64>) -> Result<f64, TropError> {
    expr.eval_with(&|name: &str| point.get(name).copied())
}

// Printing mirrors the grammar so that parse(print(parse(s))) == parse(s).

impl fmt::Display for TropicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalExpr::Sum(children) if children.len() >= 2 => {
                write_term(f, &children[0])?;
                for child in &children[1..] {
                    match child {
                        TropicalExpr::Neg(inner) => {
                            f.write_str(" - ")?;
                            write_term(f, inner)?;
                        }
                        other => {
                            f.write_str(" + ")?;
                            write_term(f, other)?;
                        }
                    }
                }
                Ok(())
            }
            other => write_term(f, other),
        }
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, expr: &TropicalExpr) -> fmt::Result {
    match expr {
        TropicalExpr::Const(c) => write!(f, "{c}"),
        TropicalExpr::Var(name) => f.write_str(name),
        TropicalExpr::Sum(children) => match children.len() {
            0 => f.write_str("0"),
            1 => write_term(f, &children[0]),
            _ => write!(f, "({expr})"),
        },
        TropicalExpr::Max(children) => write_call(f, "max", children),
        TropicalExpr::Min(children) => write_call(f, "min", children),
        TropicalExpr::Neg(child) => {
            f.write_str("-")?;
            write_term(f, child)
        }
        TropicalExpr::Scale(k, child) if *k >= 0 => {
            write!(f, "{k}*")?;
            write_term(f, child)
        }
        TropicalExpr::Scale(k, child) => {
            write!(f, "-({}*", k.unsigned_abs())?;
            write_term(f, child)?;
            f.write_str(")")
        }
    }
}

fn write_call(f: &mut fmt::Formatter<'_>, name: &str, children: &[TropicalExpr]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, child) in children.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{child}")?;
    }
    f.write_str(")")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::parse_tropical;

    fn point(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn freshmans_dream_case() {
        let e = parse_tropical("max(x1 + x1, x2 + x2)").unwrap();
        let at = point(&[("x1", 3.0), ("x2", 1.0)]);
        assert_eq!(trop_eval(&e, &at).unwrap(), 6.0);
        let scaled = parse_tropical("2*max(x1, x2)").unwrap();
        assert_eq!(trop_eval(&scaled, &at).unwrap(), 6.0);
    }

    #[test]
    fn min_with_multiplier() {
        let e = parse_tropical("min(x1, 2*x2)").unwrap();
        assert_eq!(
            trop_eval(&e, &point(&[("x1", 5.0), ("x2", 1.0)])).unwrap(),
            2.0
        );
    }

    #[test]
    fn constant_leaf() {
        let e = TropicalExpr::Const(7.0);
        assert_eq!(trop_eval(&e, &point(&[])).unwrap(), 7.0);
        assert_eq!(trop_eval(&e, &point(&[("x", -3.0)])).unwrap(), 7.0);
    }

    #[test]
    fn unassigned_variable() {
        let e = parse_tropical("max(x1, y)").unwrap();
        assert_eq!(
            trop_eval(&e, &point(&[("x1", 0.0)])),
            Err(TropError::UnassignedVariable("y".into()))
        );
    }

    #[test]
    fn empty_max_is_an_error() {
        let e = TropicalExpr::Max(vec![]);
        assert_eq!(
            trop_eval(&e, &point(&[])),
            Err(TropError::EmptyOperator("max"))
        );
        assert_eq!(trop_eval(&TropicalExpr::Sum(vec![]), &point(&[])), Ok(0.0));
    }

    #[test]
    fn exact_and_float_agree_on_integers() {
        let e = parse_tropical("min(x2 - x1, -x2, -min(x2 + x1, x1)) + 3*max(x1, 2)").unwrap();
        let f = trop_eval(&e, &point(&[("x1", -4.0), ("x2", 7.0)])).unwrap();
        let q: BigRational = e
            .eval_with(&|n: &str| match n {
                "x1" => Some(BigRational::from_integer((-4).into())),
                "x2" => Some(BigRational::from_integer(7.into())),
                _ => None,
            })
            .unwrap();
        assert_eq!(BigRational::from_f64(f).unwrap(), q);
    }

    #[test]
    fn printing_negative_scale_keeps_meaning() {
        let e = TropicalExpr::Scale(-3, Box::new(TropicalExpr::var("x")));
        let again = parse_tropical(&e.to_string()).unwrap();
        let at = point(&[("x", 2.0)]);
        assert_eq!(trop_eval(&again, &at), trop_eval(&e, &at));
    }
}
