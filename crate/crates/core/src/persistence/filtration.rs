use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{BinaryImage, PersistenceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SweepDirection {
    TopDown,
    BottomUp,
    LeftRight,
    RightLeft,
}

impl SweepDirection {
    pub const ALL: [SweepDirection; 4] = [
        SweepDirection::TopDown,
        SweepDirection::BottomUp,
        SweepDirection::LeftRight,
        SweepDirection::RightLeft,
    ];

    /// Death assigned to essential classes: one past the largest vertex value.
    pub fn extent(self, rows: usize, cols: usize) -> usize {
        match self {
            SweepDirection::TopDown | SweepDirection::BottomUp => rows,
            SweepDirection::LeftRight | SweepDirection::RightLeft => cols,
        }
    }

    pub fn vertex_value(self, rows: usize, cols: usize, r: usize, c: usize) -> usize {
        match self {
            SweepDirection::TopDown => r,
            SweepDirection::BottomUp => rows - 1 - r,
            SweepDirection::LeftRight => c,
            SweepDirection::RightLeft => cols - 1 - c,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SweepDirection::TopDown => "top",
            SweepDirection::BottomUp => "bottom",
            SweepDirection::LeftRight => "left",
            SweepDirection::RightLeft => "right",
        }
    }
}

impl fmt::Display for SweepDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepDirection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "top" => Ok(SweepDirection::TopDown),
            "bottom" => Ok(SweepDirection::BottomUp),
            "left" => Ok(SweepDirection::LeftRight),
            "right" => Ok(SweepDirection::RightLeft),
            other => Err(format!("unknown sweep direction `{other}` (expected top, bottom, left or right)")),
        }
    }
}

/// A simplex with sorted vertex ids (pixel indices).
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub value: f64,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    fn order(&self, other: &Simplex) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.vertices.len().cmp(&other.vertices.len()))
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

/// Simplices of dimension ≤ 2 in filtration order, with the death value
/// given to classes that never die.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    extent: f64,
}

impl FilteredComplex {
    /// Sorts the simplices into filtration order and checks that the result
    /// is a lower-star filtration of a simplicial complex.
    pub fn new(mut simplices: Vec<Simplex>, extent: f64) -> Result<Self, PersistenceError> {
        let bad = |m: String| Err(PersistenceError::MalformedComplex(m));
        for s in &simplices {
            if s.vertices.is_empty() || s.vertices.len() > 3 {
                return bad(format!("simplex {:?} has unsupported dimension", s.vertices));
            }
            if s.vertices.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("vertex ids {:?} are not strictly increasing", s.vertices));
            }
            if !(s.value.is_finite() && s.value >= 0.0) {
                return bad(format!("simplex {:?} has value {}", s.vertices, s.value));
            }
        }
        if !(extent.is_finite() && extent >= 0.0) {
            return bad(format!("extent {extent} is not a finite nonnegative number"));
        }
        simplices.sort_by(Simplex::order);

        let mut position: HashMap<&[usize], usize> = HashMap::with_capacity(simplices.len());
        for (i, s) in simplices.iter().enumerate() {
            if position.insert(&s.vertices, i).is_some() {
                return bad(format!("simplex {:?} appears twice", s.vertices));
            }
            if s.value > extent {
                return bad(format!("simplex {:?} enters after the extent {extent}", s.vertices));
            }
            if s.vertices.len() > 1 {
                for face in facets(&s.vertices) {
                    match position.get(face.as_slice()) {
                        Some(&j) if j < i => {}
                        _ => return bad(format!("face {face:?} of {:?} is missing or late", s.vertices)),
                    }
                }
                let top = s
                    .vertices
                    .iter()
                    .map(|v| simplices[position[[*v].as_slice()]].value)
                    .fold(f64::NEG_INFINITY, f64::max);
                if top != s.value {
                    return bad(format!(
                        "simplex {:?} has value {} but its vertices peak at {top}",
                        s.vertices, s.value
                    ));
                }
            }
        }
        Ok(FilteredComplex { simplices, extent })
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Number of simplices of each dimension 0, 1, 2.
    pub fn counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for s in &self.simplices {
            c[s.dim()] += 1;
        }
        c
    }

    pub fn euler_characteristic(&self) -> i64 {
        let [v, e, f] = self.counts();
        v as i64 - e as i64 + f as i64
    }
}

/// Codimension-one faces, each with sorted vertices.
pub(crate) fn facets(vertices: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..vertices.len()).map(move |skip| {
        vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, v)| *v)
            .collect()
    })
}

pub fn sweep_filtration(img: &BinaryImage, dir: SweepDirection) -> FilteredComplex {
    let (rows, cols) = (img.rows(), img.cols());
    let id = |r: usize, c: usize| r * cols + c;
    let value = |v: usize| dir.vertex_value(rows, cols, v / cols, v % cols) as f64;
    let simplex = |mut vertices: Vec<usize>| {
        vertices.sort_unstable();
        let value = vertices.iter().map(|&v| value(v)).fold(0.0, f64::max);
        Simplex { vertices, value }
    };

    let mut simplices = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if !img.get(r, c) {
                continue;
            }
            simplices.push(simplex(vec![id(r, c)]));
            // Each edge once: towards east, south-west, south and south-east.
            let forward = [(0isize, 1isize), (1, -1), (1, 0), (1, 1)];
            for (dr, dc) in forward {
                let (nr, nc) = (r as isize + dr, c as isize + dc);
                if nr < rows as isize && nc >= 0 && nc < cols as isize && img.get(nr as usize, nc as usize) {
                    simplices.push(simplex(vec![id(r, c), id(nr as usize, nc as usize)]));
                }
            }
        }
    }
    // Any three pixels of a 2×2 block are mutually adjacent, and every
    // mutually adjacent triple lies in exactly one such block.
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            let block: Vec<usize> = [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)]
                .into_iter()
                .filter(|&(a, b)| img.get(a, b))
                .map(|(a, b)| id(a, b))
                .collect();
            if block.len() < 3 {
                continue;
            }
            if block.len() == 3 {
                simplices.push(simplex(block));
                continue;
            }
            for skip in 0..4 {
                let tri = block.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, v)| *v).collect();
                simplices.push(simplex(tri));
            }
        }
    }

    simplices.sort_by(Simplex::order);
    let extent = dir.extent(rows, cols) as f64;
    debug_assert!(FilteredComplex::new(simplices.clone(), extent).is_ok());
    FilteredComplex { simplices, extent }
}
