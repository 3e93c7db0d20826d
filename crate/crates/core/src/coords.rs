//! Coordinate functions on barcodes.
//!
//! An elementary 2-symmetric max-plus polynomial is identified by how many
//! rows of each non-zero pattern its exponent matrix has: `k` rows `(1,0)`
//! (picking `x`), `l` rows `(0,1)` (picking `d`) and `p` rows `(1,1)`
//! (picking `x + d`). Its value is the best total over injective
//! assignments of those rows to intervals, the barcode being padded with
//! `(0, 0)` when it has fewer intervals than rows.
//!
//! `E_{m,orbit}` evaluates the same polynomial after replacing every `x` by
//! `min(x, m·d)`, which makes it blind to the position of zero-length bars.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::assignment::max_weight_assignment;
use crate::barcode::{Barcode, Interval};
use crate::util::canonical_sum;

/// Default `m` of the digit features.
pub const DEFAULT_M: u32 = 28;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoordError {
    #[error("an orbit needs at least one non-zero row")]
    EmptyOrbit,
    #[error("m must be a positive integer")]
    ZeroM,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrbitSpec {
    k: u32,
    l: u32,
    p: u32,
}

impl OrbitSpec {
    /// `k` rows `(1,0)`, `l` rows `(0,1)`, `p` rows `(1,1)`.
    pub fn new(k: u32, l: u32, p: u32) -> Result<Self, CoordError> {
        if k + l + p == 0 {
            Err(CoordError::EmptyOrbit)
        } else {
            Ok(OrbitSpec { k, l, p })
        }
    }

    /// `(0,1)^n`: the total length of the `n` longest bars.
    pub fn lengths(n: u32) -> Result<Self, CoordError> {
        OrbitSpec::new(0, n, 0)
    }

    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        (self.k + self.l + self.p) as usize
    }

    /// Every orbit with `1 ≤ k + l + p ≤ max_rows`.
    pub fn all_up_to(max_rows: u32) -> Vec<OrbitSpec> {
        let mut out = Vec::new();
        for k in 0..=max_rows {
            for l in 0..=max_rows - k {
                for p in 0..=max_rows - k - l {
                    if let Ok(o) = OrbitSpec::new(k, l, p) {
                        out.push(o);
                    }
                }
            }
        }
        out
    }

    fn row_values(&self) -> impl Iterator<Item = fn(&Interval) -> f64> {
        let x: fn(&Interval) -> f64 = |iv| iv.x;
        let d: fn(&Interval) -> f64 = |iv| iv.d;
        let xd: fn(&Interval) -> f64 = |iv| iv.x + iv.d;
        std::iter::repeat_n(x, self.k as usize)
            .chain(std::iter::repeat_n(d, self.l as usize))
            .chain(std::iter::repeat_n(xd, self.p as usize))
    }
}

impl fmt::Display for OrbitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.k, self.l, self.p)
    }
}

/// `σ_orbit` on the canonical representative of `b`.
pub fn sigma_eval(orbit: OrbitSpec, b: &Barcode) -> f64 {
    sigma_eval_intervals(orbit, b.intervals())
}

/// `σ_orbit` on a raw interval list, computed as a maximum-weight
/// assignment of rows to intervals.
///
/// Raw lists are not identified up to zero-length bars here: an orbit with
/// `(1,0)` or `(1,1)` rows sees the `x` of a zero-length interval.
pub fn sigma_eval_intervals(orbit: OrbitSpec, intervals: &[Interval]) -> f64 {
    let rows: Vec<fn(&Interval) -> f64> = orbit.row_values().collect();
    let mut padded = intervals.to_vec();
    if padded.len() < rows.len() {
        padded.resize(rows.len(), Interval::zero());
    }
    let weights: Vec<Vec<f64>> = rows
        .iter()
        .map(|value| padded.iter().map(value).collect())
        .collect();
    let chosen = max_weight_assignment(&weights);
    canonical_sum(
        chosen
            .iter()
            .enumerate()
            .map(|(row, &col)| weights[row][col])
            .collect(),
    )
}

fn min_x_md(iv: &Interval, m: u32) -> f64 {
    iv.x.min(m as f64 * iv.d)
}

/// Replaces each `x` by `min(x, m·d)`; lengths are unchanged.
pub fn clip_births(intervals: &[Interval], m: u32) -> Vec<Interval> {
    intervals
        .iter()
        .map(|iv| Interval {
            x: min_x_md(iv, m),
            d: iv.d,
        })
        .collect()
}

/// `E_{m,orbit}(b)`.
pub fn e_eval(m: u32, orbit: OrbitSpec, b: &Barcode) -> f64 {
    e_eval_intervals(m, orbit, b.intervals())
}

/// `E_{m,orbit}` on a raw list. Zero-length intervals become `(0, 0)`, so
/// the value does not depend on their position.
pub fn e_eval_intervals(m: u32, orbit: OrbitSpec, intervals: &[Interval]) -> f64 {
    sigma_eval_intervals(orbit, &clip_births(intervals, m))
}

/// `Σ_i d_i`.
pub fn sum_lengths(b: &Barcode) -> f64 {
    b.intervals().iter().map(|iv| iv.d).sum()
}

/// `Σ_i min(m·d_i, x_i)`.
pub fn sum_min_x_md(b: &Barcode, m: u32) -> f64 {
    b.intervals().iter().map(|iv| min_x_md(iv, m)).sum()
}

/// `Σ_i (max_j t_j − t_i)` with `t_i = min(m·d_i, x_i) + d_i`.
pub fn sum_max_gap(b: &Barcode, m: u32) -> f64 {
    let t: Vec<f64> = b
        .intervals()
        .iter()
        .map(|iv| min_x_md(iv, m) + iv.d)
        .collect();
    let Some(top) = t.iter().copied().reduce(f64::max) else {
        return 0.0;
    };
    t.iter().map(|ti| top - ti).sum()
}

/// The seven digit features, in order: the longest 1..4 total bar lengths,
/// `Σ d`, `Σ min(m·d, x)` and the max-gap sum.
pub fn mnist_features(b: &Barcode, m: u32) -> [f64; 7] {
    let mut lengths: Vec<f64> = b.intervals().iter().map(|iv| iv.d).collect();
    lengths.sort_by(|a, b| b.total_cmp(a));
    let top = |n: usize| lengths.iter().take(n).sum::<f64>();
    [
        top(1),
        top(2),
        top(3),
        top(4),
        sum_lengths(b),
        sum_min_x_md(b, m),
        sum_max_gap(b, m),
    ]
}

/// One coordinate function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoordinateSpec {
    Sigma(OrbitSpec),
    RationalE { m: u32, orbit: OrbitSpec },
    SumLengths,
    SumMinXmd { m: u32 },
    SumMaxGap { m: u32 },
}

impl CoordinateSpec {
    pub fn eval(&self, b: &Barcode) -> f64 {
        match *self {
            CoordinateSpec::Sigma(orbit) => sigma_eval(orbit, b),
            CoordinateSpec::RationalE { m, orbit } => e_eval(m, orbit, b),
            CoordinateSpec::SumLengths => sum_lengths(b),
            CoordinateSpec::SumMinXmd { m } => sum_min_x_md(b, m),
            CoordinateSpec::SumMaxGap { m } => sum_max_gap(b, m),
        }
    }

    /// The specs matching [`mnist_features`] column by column.
    pub fn mnist_features(m: u32) -> [CoordinateSpec; 7] {
        let len = |n| CoordinateSpec::Sigma(OrbitSpec::lengths(n).expect("n >= 1"));
        [
            len(1),
            len(2),
            len(3),
            len(4),
            CoordinateSpec::SumLengths,
            CoordinateSpec::SumMinXmd { m },
            CoordinateSpec::SumMaxGap { m },
        ]
    }
}

/// Evaluates every spec on `b`, in order.
pub fn featurize(b: &Barcode, specs: &[CoordinateSpec]) -> Vec<f64> {
    specs.iter().map(|s| s.eval(b)).collect()
}

impl fmt::Display for CoordinateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordinateSpec::Sigma(o) => write!(f, "sigma {o}"),
            CoordinateSpec::RationalE { m, orbit } => write!(f, "e {m} {orbit}"),
            CoordinateSpec::SumLengths => f.write_str("sumlen"),
            CoordinateSpec::SumMinXmd { m } => write!(f, "summinx {m}"),
            CoordinateSpec::SumMaxGap { m } => write!(f, "summaxgap {m}"),
        }
    }
}

impl FromStr for CoordinateSpec {
    type Err = String;

    /// `sigma k l p`, `e m k l p`, `sumlen`, `summinx m` or `summaxgap m`.
    fn from_str(s: &str) -> Result<Self, String> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let Some((&head, args)) = words.split_first() else {
            return Err("empty coordinate spec".into());
        };
        let nums = args
            .iter()
            .map(|w| w.parse::<u32>().map_err(|_| format!("`{w}` is not a nonnegative integer")))
            .collect::<Result<Vec<u32>, String>>()?;
        let arity = |n: usize| {
            if nums.len() == n {
                Ok(())
            } else {
                Err(format!("`{head}` takes {n} arguments, got {}", nums.len()))
            }
        };
        let m_of = |m: u32| if m == 0 { Err(CoordError::ZeroM.to_string()) } else { Ok(m) };
        let orbit = |k, l, p| OrbitSpec::new(k, l, p).map_err(|e| e.to_string());
        match head {
            "sigma" => {
                arity(3)?;
                Ok(CoordinateSpec::Sigma(orbit(nums[0], nums[1], nums[2])?))
            }
            "e" => {
                arity(4)?;
                Ok(CoordinateSpec::RationalE {
                    m: m_of(nums[0])?,
                    orbit: orbit(nums[1], nums[2], nums[3])?,
                })
            }
            "sumlen" => {
                arity(0)?;
                Ok(CoordinateSpec::SumLengths)
            }
            "summinx" => {
                arity(1)?;
                Ok(CoordinateSpec::SumMinXmd { m: m_of(nums[0])? })
            }
            "summaxgap" => {
                arity(1)?;
                Ok(CoordinateSpec::SumMaxGap { m: m_of(nums[0])? })
            }
            other => Err(format!("unknown coordinate `{other}`")),
        }
    }
}

impl Serialize for CoordinateSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoordinateSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a specs file: one coordinate per line, `#` comments allowed.
pub fn parse_specs(text: &str) -> Result<Vec<CoordinateSpec>, CoordError> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| {
            let t = line.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, line)| {
            line.parse().map_err(|message| CoordError::Parse {
                line: i + 1,
                message,
            })
        })
        .collect()
}

/// Provenance of one feature column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnMeta {
    pub name: String,
    pub spec: CoordinateSpec,
    /// Which barcode the column was computed from, e.g. `top/h1`.
    pub source: String,
}

/// Row-major table of coordinate values.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: usize,
    columns: Vec<ColumnMeta>,
    values: Vec<f64>,
}

impl FeatureMatrix {
    /// Returns `None` unless `values.len() == rows * columns.len()`.
    pub fn new(rows: usize, columns: Vec<ColumnMeta>, values: Vec<f64>) -> Option<Self> {
        (values.len() == rows * columns.len()).then_some(FeatureMatrix {
            rows,
            columns,
            values,
        })
    }

    /// A matrix whose columns carry no provenance, e.g. read back from CSV.
    pub fn from_rows(rows: &[Vec<f64>]) -> Option<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return None;
        }
        let columns = (0..width)
            .map(|j| ColumnMeta {
                name: format!("c{j}"),
                spec: CoordinateSpec::SumLengths,
                source: "unknown".into(),
            })
            .collect();
        FeatureMatrix::new(rows.len(), columns, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[ColumnMeta] {
        &self.columns
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.cols();
        &self.values[i * w..(i + 1) * w]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols() + j]
    }

    /// The listed rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> FeatureMatrix {
        let values = idx.iter().flat_map(|&i| self.row(i).iter().copied()).collect();
        FeatureMatrix {
            rows: idx.len(),
            columns: self.columns.clone(),
            values,
        }
    }

    pub(crate) fn with_values(&self, values: Vec<f64>) -> FeatureMatrix {
        debug_assert_eq!(values.len(), self.values.len());
        FeatureMatrix {
            rows: self.rows,
            columns: self.columns.clone(),
            values,
        }
    }

    /// Headerless comma-separated decimals, one row per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| crate::format_decimal(*v)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Reads [`to_csv`](Self::to_csv) output back; columns lose provenance.
    pub fn parse_csv(text: &str) -> Result<FeatureMatrix, CoordError> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|w| {
                    w.trim().parse::<f64>().map_err(|_| CoordError::Parse {
                        line: i + 1,
                        message: format!("bad number `{}`", w.trim()),
                    })
                })
                .collect::<Result<Vec<f64>, _>>()?;
            rows.push(row);
        }
        FeatureMatrix::from_rows(&rows).ok_or(CoordError::Parse {
            line: 0,
            message: "rows have different lengths".into(),
        })
    }
}
