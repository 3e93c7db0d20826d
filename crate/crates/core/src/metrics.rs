//! Exact bottleneck and Wasserstein distances between barcodes.
//!
//! Intervals are compared with `max(|x1 − x2|, |d1 − d2 + x1 − x2|)`, i.e.
//! the sup-distance between (birth, death) points, and an unmatched interval
//! pays `d / 2`, its distance to the diagonal.
//!
//! Both distances are computed on the augmented bipartite graph whose left
//! side is `A ∪ diag(B)` and right side `B ∪ diag(A)`: each interval may
//! match an interval of the other barcode or its own diagonal copy, and
//! diagonal copies match each other for free.

use thiserror::Error;

use crate::assignment::{maximum_matching, min_cost_assignment};
use crate::barcode::{Barcode, Interval};
use crate::util::canonical_sum;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("Wasserstein order p must be >= 1, got {0}")]
    InvalidOrder(f64),
    #[error("brute-force oracle limited to 12 intervals in total, got {0}")]
    OracleTooLarge(usize),
}

/// A partial bijection between two barcodes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchingPenalty {
    pub matched: Vec<(usize, usize)>,
    pub unmatched_a: Vec<usize>,
    pub unmatched_b: Vec<usize>,
}

impl MatchingPenalty {
    /// Largest single penalty of the matching.
    pub fn bottleneck_cost(&self, a: &Barcode, b: &Barcode) -> f64 {
        self.penalties(a, b).into_iter().fold(0.0, f64::max)
    }

    /// `Σ penalty^p`, before taking the root.
    pub fn wasserstein_cost(&self, p: f64, a: &Barcode, b: &Barcode) -> f64 {
        canonical_sum(self.penalties(a, b).into_iter().map(|c| c.powf(p)).collect())
    }

    fn penalties(&self, a: &Barcode, b: &Barcode) -> Vec<f64> {
        let (ai, bi) = (a.intervals(), b.intervals());
        self.matched
            .iter()
            .map(|&(i, j)| interval_dist(&ai[i], &bi[j]))
            .chain(self.unmatched_a.iter().map(|&i| diag_dist(&ai[i])))
            .chain(self.unmatched_b.iter().map(|&j| diag_dist(&bi[j])))
            .collect()
    }
}

pub fn interval_dist(a: &Interval, b: &Interval) -> f64 {
    let dx = a.x - b.x;
    dx.abs().max((a.d - b.d + dx).abs())
}

pub fn diag_dist(iv: &Interval) -> f64 {
    iv.d / 2.0
}

/// Bottleneck distance.
pub fn bottleneck(a: &Barcode, b: &Barcode) -> f64 {
    bottleneck_matching(a, b).0
}

/// Bottleneck distance with an optimal partial bijection.
///
/// The optimum is one of the pairwise or diagonal distances, so the least
/// feasible candidate is found by binary search over the sorted candidate
/// set, testing feasibility with a perfect-matching check.
pub fn bottleneck_matching(a: &Barcode, b: &Barcode) -> (f64, MatchingPenalty) {
    let (ai, bi) = (a.intervals(), b.intervals());
    if ai.is_empty() && bi.is_empty() {
        return (0.0, MatchingPenalty::default());
    }
    let mut candidates: Vec<f64> = ai
        .iter()
        .flat_map(|x| bi.iter().map(move |y| interval_dist(x, y)))
        .chain(ai.iter().chain(bi).map(diag_dist))
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // The largest candidate always admits the all-diagonal matching.
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    let mut best = perfect_matching_within(ai, bi, candidates[hi]).expect("all-diagonal matching");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match perfect_matching_within(ai, bi, candidates[mid]) {
            Some(m) => {
                hi = mid;
                best = m;
            }
            None => lo = mid + 1,
        }
    }
    (candidates[hi], best)
}

fn perfect_matching_within(a: &[Interval], b: &[Interval], t: f64) -> Option<MatchingPenalty> {
    let (n, m) = (a.len(), b.len());
    // Left: a_0..a_n, then diagonal copies of b. Right: b_0..b_m, then diagonal copies of a.
    let mut adjacency: Vec<Vec<usize>> = Vec::with_capacity(n + m);
    for (i, ai) in a.iter().enumerate() {
        let mut adj: Vec<usize> = (0..m).filter(|&j| interval_dist(ai, &b[j]) <= t).collect();
        if diag_dist(ai) <= t {
            adj.push(m + i);
        }
        adjacency.push(adj);
    }
    for (j, bj) in b.iter().enumerate() {
        let mut adj = Vec::with_capacity(n + 1);
        if diag_dist(bj) <= t {
            adj.push(j);
        }
        adj.extend(m..m + n);
        adjacency.push(adj);
    }
    let matching = maximum_matching(&adjacency, n + m);
    if matching.iter().any(Option::is_none) {
        return None;
    }
    Some(decode(n, m, |left| matching[left].expect("perfect")))
}

fn decode(n: usize, m: usize, partner: impl Fn(usize) -> usize) -> MatchingPenalty {
    let mut out = MatchingPenalty::default();
    for i in 0..n {
        let r = partner(i);
        if r < m {
            out.matched.push((i, r));
        } else {
            out.unmatched_a.push(i);
        }
    }
    for j in 0..m {
        if partner(n + j) == j {
            out.unmatched_b.push(j);
        }
    }
    out
}

/// Wasserstein-`p` distance, `p ≥ 1`.
pub fn wasserstein(p: f64, a: &Barcode, b: &Barcode) -> Result<f64, MetricError> {
    let matching = wasserstein_matching(p, a, b)?;
    Ok(lp_root(matching.wasserstein_cost(p, a, b), p))
}

/// An optimal partial bijection for the Wasserstein-`p` cost, found as a
/// minimum-cost assignment on the `(n + m) × (n + m)` augmented table.
pub fn wasserstein_matching(p: f64, a: &Barcode, b: &Barcode) -> Result<MatchingPenalty, MetricError> {
    if !p.is_finite() || p < 1.0 {
        return Err(MetricError::InvalidOrder(p));
    }
    let (ai, bi) = (a.intervals(), b.intervals());
    let (n, m) = (ai.len(), bi.len());
    if n + m == 0 {
        return Ok(MatchingPenalty::default());
    }
    let diag_a: Vec<f64> = ai.iter().map(|iv| diag_dist(iv).powf(p)).collect();
    let diag_b: Vec<f64> = bi.iter().map(|iv| diag_dist(iv).powf(p)).collect();
    // Any assignment through a forbidden cell costs more than the
    // all-diagonal one.
    let forbidden = 1.0 + 2.0 * (diag_a.iter().sum::<f64>() + diag_b.iter().sum::<f64>());

    let size = n + m;
    let mut cost = vec![vec![0.0; size]; size];
    for i in 0..n {
        for j in 0..m {
            cost[i][j] = interval_dist(&ai[i], &bi[j]).powf(p);
        }
        for i2 in 0..n {
            cost[i][m + i2] = if i == i2 { diag_a[i] } else { forbidden };
        }
    }
    for j2 in 0..m {
        for j in 0..m {
            cost[n + j2][j] = if j == j2 { diag_b[j] } else { forbidden };
        }
        // diagonal to diagonal stays 0
    }
    let assignment = min_cost_assignment(&cost);
    Ok(decode(n, m, |left| assignment[left]))
}

/// `total^(1/p)`; shared with the oracle so both take the same root.
pub(crate) fn lp_root(total: f64, p: f64) -> f64 {
    if p == 1.0 {
        total
    } else if p == 2.0 {
        total.sqrt()
    } else {
        total.powf(1.0 / p)
    }
}

/// Exhaustive enumeration of partial bijections, for small inputs.
pub mod oracle {
    use super::*;

    const LIMIT: usize = 12;

    fn enumerate(a: &[Interval], b: &[Interval], visit: &mut dyn FnMut(&[Option<usize>])) {
        fn go(
            i: usize,
            m: usize,
            used: &mut Vec<bool>,
            chosen: &mut Vec<Option<usize>>,
            visit: &mut dyn FnMut(&[Option<usize>]),
        ) {
            if i == chosen.len() {
                visit(chosen);
                return;
            }
            chosen[i] = None;
            go(i + 1, m, used, chosen, visit);
            for j in 0..m {
                if !used[j] {
                    used[j] = true;
                    chosen[i] = Some(j);
                    go(i + 1, m, used, chosen, visit);
                    used[j] = false;
                }
            }
            chosen[i] = None;
        }
        go(0, b.len(), &mut vec![false; b.len()], &mut vec![None; a.len()], visit);
    }

    fn penalties(a: &[Interval], b: &[Interval], chosen: &[Option<usize>]) -> Vec<f64> {
        let mut hit = vec![false; b.len()];
        let mut out = Vec::with_capacity(a.len() + b.len());
        for (i, c) in chosen.iter().enumerate() {
            match c {
                Some(j) => {
                    hit[*j] = true;
                    out.push(interval_dist(&a[i], &b[*j]));
                }
                None => out.push(diag_dist(&a[i])),
            }
        }
        out.extend(b.iter().zip(&hit).filter(|(_, h)| !**h).map(|(iv, _)| diag_dist(iv)));
        out
    }

    fn check_size(a: &Barcode, b: &Barcode) -> Result<(), MetricError> {
        let total = a.len() + b.len();
        if total > LIMIT {
            Err(MetricError::OracleTooLarge(total))
        } else {
            Ok(())
        }
    }

    pub fn bottleneck_oracle(a: &Barcode, b: &Barcode) -> Result<f64, MetricError> {
        check_size(a, b)?;
        let mut best = f64::INFINITY;
        enumerate(a.intervals(), b.intervals(), &mut |chosen| {
            let cost = penalties(a.intervals(), b.intervals(), chosen)
                .into_iter()
                .fold(0.0, f64::max);
            best = best.min(cost);
        });
        Ok(best)
    }

    pub fn wasserstein_oracle(p: f64, a: &Barcode, b: &Barcode) -> Result<f64, MetricError> {
        if !p.is_finite() || p < 1.0 {
            return Err(MetricError::InvalidOrder(p));
        }
        check_size(a, b)?;
        let mut best = f64::INFINITY;
        enumerate(a.intervals(), b.intervals(), &mut |chosen| {
            let cost: f64 = penalties(a.intervals(), b.intervals(), chosen)
                .into_iter()
                .map(|c| c.powf(p))
                .sum();
            best = best.min(cost);
        });
        Ok(lp_root(best, p))
    }
}
