use std::collections::BTreeMap;
use std::fmt;

use super::{TropError, TropScalar, TropicalExpr};

/// `Σ coefficient·variable + constant`; coefficients are tropical exponents.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineTerm {
    pub coefficients: BTreeMap<String, i64>,
    pub constant: f64,
}

impl AffineTerm {
    pub fn constant(c: f64) -> Self {
        AffineTerm {
            coefficients: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn variable(name: &str) -> Self {
        AffineTerm {
            coefficients: BTreeMap::from([(name.to_string(), 1)]),
            constant: 0.0,
        }
    }

    /// Tropical product: coefficients and constants add.
    pub fn times(&self, other: &AffineTerm) -> AffineTerm {
        let mut coefficients = self.coefficients.clone();
        for (name, k) in &other.coefficients {
            *coefficients.entry(name.clone()).or_insert(0) += k;
        }
        coefficients.retain(|_, k| *k != 0);
        AffineTerm {
            coefficients,
            constant: self.constant + other.constant,
        }
    }

    fn scaled(&self, k: i64) -> AffineTerm {
        let mut coefficients: BTreeMap<String, i64> = self
            .coefficients
            .iter()
            .map(|(name, c)| (name.clone(), c * k))
            .collect();
        coefficients.retain(|_, c| *c != 0);
        AffineTerm {
            coefficients,
            constant: self.constant * k as f64,
        }
    }

    pub fn degree(&self) -> i64 {
        self.coefficients.values().sum()
    }

    pub fn eval_with<T, F>(&self, lookup: &F) -> Result<T, TropError>
    where
        T: TropScalar,
        F: Fn(&str) -> Option<T>,
    {
        let mut acc = T::from_const(self.constant);
        for (name, k) in &self.coefficients {
            let value =
                lookup(name).ok_or_else(|| TropError::UnassignedVariable(name.clone()))?;
            acc = acc + value.times_int(*k);
        }
        Ok(acc)
    }
}

impl fmt::Display for AffineTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, k) in &self.coefficients {
            let sign = if *k < 0 { "-" } else { "+" };
            let magnitude = k.unsigned_abs();
            match (first, *k < 0) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, _) => write!(f, " {sign} ")?,
            }
            if magnitude == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{magnitude}*{name}")?;
            }
            first = false;
        }
        if first {
            if self.constant < 0.0 {
                write!(f, "-{}", -self.constant)?;
            } else {
                write!(f, "{}", self.constant + 0.0)?;
            }
        } else if self.constant != 0.0 {
            let sign = if self.constant < 0.0 { "-" } else { "+" };
            write!(f, " {sign} {}", self.constant.abs())?;
        }
        Ok(())
    }
}

/// Maximum of a non-empty collection of affine terms.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxPlusForm {
    terms: Vec<AffineTerm>,
}

impl MaxPlusForm {
    /// Returns `None` for an empty term list.
    pub fn new(terms: Vec<AffineTerm>) -> Option<Self> {
        if terms.is_empty() {
            None
        } else {
            Some(MaxPlusForm { terms }.pruned())
        }
    }

    pub fn single(term: AffineTerm) -> Self {
        MaxPlusForm { terms: vec![term] }
    }

    pub fn terms(&self) -> &[AffineTerm] {
        &self.terms
    }

    /// All pairwise products of terms.
    pub fn times(&self, other: &MaxPlusForm) -> MaxPlusForm {
        let terms = self
            .terms
            .iter()
            .flat_map(|a| other.terms.iter().map(move |b| a.times(b)))
            .collect();
        MaxPlusForm { terms }.pruned()
    }

    pub fn max(&self, other: &MaxPlusForm) -> MaxPlusForm {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        MaxPlusForm { terms }.pruned()
    }

    /// Tropical power for `k ≥ 0`: every term multiplied by `k`.
    fn power(&self, k: i64) -> MaxPlusForm {
        debug_assert!(k >= 0);
        if k == 0 {
            return MaxPlusForm::single(AffineTerm::constant(0.0));
        }
        MaxPlusForm {
            terms: self.terms.iter().map(|t| t.scaled(k)).collect(),
        }
        .pruned()
    }

    /// Drops terms whose linear part repeats, keeping the largest constant,
    /// and sorts the rest into a deterministic order.
    fn pruned(self) -> MaxPlusForm {
        let mut best: BTreeMap<Vec<(String, i64)>, f64> = BTreeMap::new();
        for term in self.terms {
            let key: Vec<(String, i64)> = term.coefficients.into_iter().collect();
            best.entry(key)
                .and_modify(|c| {
                    if term.constant > *c {
                        *c = term.constant
                    }
                })
                .or_insert(term.constant);
        }
        let terms = best
            .into_iter()
            .map(|(key, constant)| AffineTerm {
                coefficients: key.into_iter().collect(),
                constant,
            })
            .collect();
        MaxPlusForm { terms }
    }

    /// Largest coefficient sum over the terms.
    pub fn degree(&self) -> Result<i64, TropError> {
        for term in &self.terms {
            if let Some((name, k)) = term.coefficients.iter().find(|(_, k)| **k < 0) {
                return Err(TropError::NegativeExponent {
                    variable: name.clone(),
                    exponent: *k,
                });
            }
        }
        Ok(self.terms.iter().map(AffineTerm::degree).max().unwrap_or(0))
    }

    pub fn eval_with<T, F>(&self, lookup: &F) -> Result<T, TropError>
    where
        T: TropScalar,
        F: Fn(&str) -> Option<T>,
    {
        let mut best: Option<T> = None;
        for term in &self.terms {
            let v = term.eval_with(lookup)?;
            best = Some(match best {
                Some(b) if b >= v => b,
                _ => v,
            });
        }
        Ok(best.expect("max-plus forms are non-empty"))
    }

    pub fn eval(&self, point: &BTreeMap<String, f64>) -> Result<f64, TropError> {
        self.eval_with(&|name: &str| point.get(name).copied())
    }
}

impl fmt::Display for MaxPlusForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [only] = self.terms.as_slice() {
            return write!(f, "{only}");
        }
        f.write_str("max(")?;
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{term}")?;
        }
        f.write_str(")")
    }
}

/// `numerator(x) − denominator(x)`, the tropical quotient of two max-plus forms.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalNormalForm {
    pub numerator: MaxPlusForm,
    pub denominator: MaxPlusForm,
}

impl RationalNormalForm {
    fn from_term(term: AffineTerm) -> Self {
        RationalNormalForm {
            numerator: MaxPlusForm::single(term),
            denominator: MaxPlusForm::single(AffineTerm::constant(0.0)),
        }
    }

    fn negated(self) -> Self {
        RationalNormalForm {
            numerator: self.denominator,
            denominator: self.numerator,
        }
    }

    fn plus(&self, other: &Self) -> Self {
        RationalNormalForm {
            numerator: self.numerator.times(&other.numerator),
            denominator: self.denominator.times(&other.denominator),
        }
    }

    fn max(&self, other: &Self) -> Self {
        RationalNormalForm {
            numerator: self
                .numerator
                .times(&other.denominator)
                .max(&other.numerator.times(&self.denominator)),
            denominator: self.denominator.times(&other.denominator),
        }
    }

    pub fn eval_with<T, F>(&self, lookup: &F) -> Result<T, TropError>
    where
        T: TropScalar,
        F: Fn(&str) -> Option<T>,
    {
        Ok(self.numerator.eval_with(lookup)? + -self.denominator.eval_with(lookup)?)
    }

    pub fn eval(&self, point: &BTreeMap<String, f64>) -> Result<f64, TropError> {
        self.eval_with(&|name: &str| point.get(name).copied())
    }
}

/// Rewrites `expr` as a difference of two max-plus forms.
///
/// Negation swaps numerator and denominator, sums multiply both sides,
/// `max(p1 − q1, p2 − q2) = max(p1 q2, p2 q1) − q1 q2`, and
/// `min(a, b) = −max(−a, −b)`.
pub fn to_rational_normal_form(expr: &TropicalExpr) -> Result<RationalNormalForm, TropError> {
    Ok(match expr {
        TropicalExpr::Const(c) => RationalNormalForm::from_term(AffineTerm::constant(*c)),
        TropicalExpr::Var(name) => RationalNormalForm::from_term(AffineTerm::variable(name)),
        TropicalExpr::Sum(children) => {
            let mut acc = RationalNormalForm::from_term(AffineTerm::constant(0.0));
            for child in children {
                acc = acc.plus(&to_rational_normal_form(child)?);
            }
            acc
        }
        TropicalExpr::Max(children) => fold_max(children, "max", false)?,
        TropicalExpr::Min(children) => fold_max(children, "min", true)?.negated(),
        TropicalExpr::Neg(child) => to_rational_normal_form(child)?.negated(),
        TropicalExpr::Scale(k, child) => {
            let inner = to_rational_normal_form(child)?;
            let inner = if *k < 0 { inner.negated() } else { inner };
            let k = k.abs();
            RationalNormalForm {
                numerator: inner.numerator.power(k),
                denominator: inner.denominator.power(k),
            }
        }
    })
}

fn fold_max(
    children: &[TropicalExpr],
    name: &'static str,
    negate_children: bool,
) -> Result<RationalNormalForm, TropError> {
    let mut acc: Option<RationalNormalForm> = None;
    for child in children {
        let mut form = to_rational_normal_form(child)?;
        if negate_children {
            form = form.negated();
        }
        acc = Some(match acc {
            None => form,
            Some(prev) => prev.max(&form),
        });
    }
    acc.ok_or(TropError::EmptyOperator(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::{parse_tropical, trop_eval};

    fn form(text: &str) -> MaxPlusForm {
        let e = parse_tropical(text).unwrap();
        let rnf = to_rational_normal_form(&e).unwrap();
        assert_eq!(rnf.denominator.to_string(), "0", "{text} is not a polynomial");
        rnf.numerator
    }

    #[test]
    fn variable_is_its_own_numerator() {
        let rnf = to_rational_normal_form(&TropicalExpr::var("x1")).unwrap();
        assert_eq!(rnf.numerator.to_string(), "x1");
        assert_eq!(rnf.denominator.to_string(), "0");
    }

    #[test]
    fn max_minus_variable() {
        let rnf = to_rational_normal_form(&parse_tropical("max(x1, x2) - x1").unwrap()).unwrap();
        assert_eq!(rnf.numerator.to_string(), "max(x1, x2)");
        assert_eq!(rnf.denominator.to_string(), "x1");
    }

    #[test]
    fn degrees() {
        assert_eq!(form("max(x1 + x2, 2*x1)").degree(), Ok(2));
        assert_eq!(form("5").degree(), Ok(0));
        assert_eq!(form("x1").degree(), Ok(1));
        let neg = MaxPlusForm::new(vec![AffineTerm {
            coefficients: BTreeMap::from([("x".to_string(), -1)]),
            constant: 0.0,
        }])
        .unwrap();
        assert_eq!(
            neg.degree(),
            Err(TropError::NegativeExponent {
                variable: "x".into(),
                exponent: -1
            })
        );
    }

    #[test]
    fn duplicate_linear_parts_keep_largest_constant() {
        let f = form("max(x + 1, x + 3, x + 2, y)");
        assert_eq!(f.terms().len(), 2);
        assert_eq!(f.to_string(), "max(x + 3, y)");
    }

    #[test]
    fn printed_forms_reparse_to_the_same_function() {
        let e = parse_tropical("min(3*a - b + 2.5, max(b, -4), -a)").unwrap();
        let rnf = to_rational_normal_form(&e).unwrap();
        let p = parse_tropical(&rnf.numerator.to_string()).unwrap();
        let q = parse_tropical(&rnf.denominator.to_string()).unwrap();
        for a in -3..=3 {
            for b in -3..=3 {
                let at = BTreeMap::from([("a".to_string(), a as f64), ("b".to_string(), b as f64)]);
                let lhs = trop_eval(&p, &at).unwrap() - trop_eval(&q, &at).unwrap();
                assert_eq!(lhs, trop_eval(&e, &at).unwrap());
            }
        }
    }

    #[test]
    fn empty_min_errors() {
        assert_eq!(
            to_rational_normal_form(&TropicalExpr::Min(vec![])),
            Err(TropError::EmptyOperator("min"))
        );
    }
}
