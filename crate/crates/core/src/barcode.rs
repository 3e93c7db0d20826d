//! Barcodes as canonical multisets of intervals.
//!
//! An interval is stored as `(x, d)`: left endpoint and length. Two raw
//! interval lists describe the same barcode when they agree after deleting
//! every zero-length interval, regardless of order. [`Barcode`] always holds
//! that canonical representative: zero-length intervals removed, sorted by
//! `(x, d)`.
//!
//! Text format: one interval per line as `x,d`; blank lines and lines
//! starting with `#` are ignored. A JSON array of pairs `[[x,d],...]` is
//! accepted on input as well.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::util::format_decimal;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BarcodeError {
    #[error("interval ({x}, {d}) must have finite x >= 0 and d >= 0")]
    InvalidInterval { x: f64, d: f64 },
    #[error("pair (birth {birth}, death {death}) must satisfy 0 <= birth <= death, both finite")]
    InvalidPair { birth: f64, death: f64 },
    #[error("cannot pad a barcode of {size} intervals to {target}")]
    PadTooShort { size: usize, target: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    /// Left endpoint (birth).
    pub x: f64,
    /// Length (persistence).
    pub d: f64,
}

impl Interval {
    pub fn new(x: f64, d: f64) -> Result<Self, BarcodeError> {
        if x.is_finite() && d.is_finite() && x >= 0.0 && d >= 0.0 {
            // `+ 0.0` folds -0.0 into 0.0.
            Ok(Interval { x: x + 0.0, d: d + 0.0 })
        } else {
            Err(BarcodeError::InvalidInterval { x, d })
        }
    }

    pub const fn zero() -> Self {
        Interval { x: 0.0, d: 0.0 }
    }

    pub fn death(&self) -> f64 {
        self.x + self.d
    }

    fn validate(&self) -> Result<Self, BarcodeError> {
        Interval::new(self.x, self.d)
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.x
            .total_cmp(&other.x)
            .then_with(|| self.d.total_cmp(&other.d))
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct Barcode {
    intervals: Vec<Interval>,
}

/// Removes zero-length intervals and sorts by `(x, d)`.
pub fn canonicalize(raw: &[Interval]) -> Result<Barcode, BarcodeError> {
    let mut intervals = raw
        .iter()
        .map(Interval::validate)
        .filter(|iv| iv.as_ref().map_or(true, |iv| iv.d != 0.0))
        .collect::<Result<Vec<_>, _>>()?;
    intervals.sort_by(Interval::lex_cmp);
    Ok(Barcode { intervals })
}

/// Equality in the barcode space: same canonical multiset.
pub fn equivalent(a: &Barcode, b: &Barcode) -> bool {
    a == b
}

/// The intervals of `b` followed by `(0, 0)` entries up to length `n`.
pub fn pad(b: &Barcode, n: usize) -> Result<Vec<Interval>, BarcodeError> {
    if n < b.len() {
        return Err(BarcodeError::PadTooShort {
            size: b.len(),
            target: n,
        });
    }
    let mut out = b.intervals.clone();
    out.resize(n, Interval::zero());
    Ok(out)
}

/// Converts `(birth, death)` pairs into intervals `(birth, death - birth)`.
pub fn from_birth_death(pairs: &[(f64, f64)]) -> Result<Barcode, BarcodeError> {
    let raw = pairs
        .iter()
        .map(|&(birth, death)| {
            if birth.is_finite() && death.is_finite() && birth >= 0.0 && death >= birth {
                Interval::new(birth, death - birth)
            } else {
                Err(BarcodeError::InvalidPair { birth, death })
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    canonicalize(&raw)
}

impl Barcode {
    pub fn empty() -> Self {
        Barcode::default()
    }

    /// Shorthand for `canonicalize` on `(x, d)` tuples.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self, BarcodeError> {
        let raw: Vec<Interval> = pairs.iter().map(|&(x, d)| Interval { x, d }).collect();
        canonicalize(&raw)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> String {
        let pairs: Vec<[f64; 2]> = self.intervals.iter().map(|iv| [iv.x, iv.d]).collect();
        serde_json::to_string(&pairs).expect("pairs of finite floats serialize")
    }

    /// Parses the text format or, when the input starts with `[`, a JSON
    /// array of `[x, d]` pairs. The result is canonical.
    pub fn parse(text: &str) -> Result<Self, BarcodeError> {
        canonicalize(&parse_intervals(text)?)
    }
}

/// Raw intervals from either accepted format, in file order.
pub fn parse_intervals(text: &str) -> Result<Vec<Interval>, BarcodeError> {
    if text.trim_start().starts_with('[') {
        let pairs: Vec<(f64, f64)> =
            serde_json::from_str(text).map_err(|e| BarcodeError::Parse {
                line: e.line(),
                message: e.to_string(),
            })?;
        return pairs
            .into_iter()
            .map(|(x, d)| Interval::new(x, d))
            .collect();
    }
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| BarcodeError::Parse {
            line: line_no,
            message,
        };
        let (xs, ds) = line
            .split_once(',')
            .ok_or_else(|| parse_err(format!("expected `x,d`, found `{line}`")))?;
        let x: f64 = xs
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad number `{}`", xs.trim())))?;
        let d: f64 = ds
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad number `{}`", ds.trim())))?;
        out.push(Interval::new(x, d).map_err(|e| parse_err(e.to_string()))?);
    }
    Ok(out)
}

impl fmt::Display for Barcode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for iv in &self.intervals {
            writeln!(f, "{},{}", format_decimal(iv.x), format_decimal(iv.d))?;
        }
        Ok(())
    }
}
