use std::collections::HashMap;

use serde::Serialize;

use super::filtration::facets;
use super::{BinaryImage, FilteredComplex, SweepDirection};
use crate::barcode::{from_birth_death, Barcode};

/// Barcodes of one filtration together with its essential-class counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PersistenceDiagrams {
    pub h0: Barcode,
    pub h1: Barcode,
    pub essential_h0: usize,
    pub essential_h1: usize,
    /// Classes of 2-cycles. The 4 triangles of a full 2×2 block bound no
    /// 3-simplex, so each such block carries one.
    pub essential_h2: usize,
    pub extent: f64,
}

impl PersistenceDiagrams {
    pub fn barcode(&self, dim: usize) -> Option<&Barcode> {
        match dim {
            0 => Some(&self.h0),
            1 => Some(&self.h1),
            _ => None,
        }
    }
}

/// Standard Z/2 column reduction over the filtration order.
///
/// Finite pairs become `(birth, death - birth)` intervals; pairs with equal
/// values vanish under canonicalization. Unpaired vertices and edges give
/// essential bars dying at the complex's extent.
pub fn persistent_homology(k: &FilteredComplex) -> PersistenceDiagrams {
    let simplices = k.simplices();
    let index: HashMap<&[usize], usize> = simplices
        .iter()
        .enumerate()
        .map(|(i, s)| (s.vertices.as_slice(), i))
        .collect();

    // Owner of each pivot row, and whether a simplex was killed or kills.
    let mut pivot_owner: Vec<Option<usize>> = vec![None; simplices.len()];
    let mut paired = vec![false; simplices.len()];
    let mut pairs = [Vec::new(), Vec::new()];
    let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(simplices.len());

    for (j, s) in simplices.iter().enumerate() {
        let mut column: Vec<usize> = if s.vertices.len() > 1 {
            let mut c: Vec<usize> = facets(&s.vertices).map(|f| index[f.as_slice()]).collect();
            c.sort_unstable();
            c
        } else {
            Vec::new()
        };
        while let Some(&low) = column.last() {
            match pivot_owner[low] {
                Some(other) => column = symmetric_difference(&column, &reduced[other]),
                None => break,
            }
        }
        if let Some(&low) = column.last() {
            pivot_owner[low] = Some(j);
            paired[low] = true;
            paired[j] = true;
            let dim = simplices[low].dim();
            if dim < 2 {
                pairs[dim].push((simplices[low].value, s.value));
            }
        }
        reduced.push(column);
    }

    let extent = k.extent();
    let mut essential = [0usize; 3];
    for (i, s) in simplices.iter().enumerate() {
        if !paired[i] {
            essential[s.dim()] += 1;
            if s.dim() < 2 {
                pairs[s.dim()].push((s.value, extent));
            }
        }
    }
    let [p0, p1] = pairs;
    PersistenceDiagrams {
        h0: from_birth_death(&p0).expect("filtration values are ordered"),
        h1: from_birth_death(&p1).expect("filtration values are ordered"),
        essential_h0: essential[0],
        essential_h1: essential[1],
        essential_h2: essential[2],
        extent,
    }
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else if b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Sweep filtration followed by reduction.
pub fn image_persistence(img: &BinaryImage, dir: SweepDirection) -> PersistenceDiagrams {
    persistent_homology(&super::sweep_filtration(img, dir))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcode::Interval;
    use crate::persistence::{connected_component_count, sweep_filtration, Simplex};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bars(b: &Barcode) -> Vec<(f64, f64)> {
        b.intervals().iter().map(|i| (i.x, i.d)).collect()
    }

    fn random_image(rng: &mut ChaCha8Rng, rows: usize, cols: usize, p: f64) -> BinaryImage {
        let bits = (0..rows * cols).map(|_| rng.random_bool(p)).collect();
        BinaryImage::new(rows, cols, bits).unwrap()
    }

    #[test]
    fn single_vertex_is_essential() {
        let mut bits = vec![false; 400];
        bits[3 * 20 + 5] = true;
        let img = BinaryImage::new(20, 20, bits).unwrap();
        let ph = image_persistence(&img, SweepDirection::TopDown);
        assert_eq!(bars(&ph.h0), vec![(3.0, 17.0)]);
        assert!(ph.h1.is_empty());
    }

    #[test]
    fn filled_block() {
        let img = BinaryImage::from_ascii("##\n##").unwrap();
        // A constant filtration: every simplex enters at 0.
        let flat: Vec<Simplex> = sweep_filtration(&img, SweepDirection::TopDown)
            .simplices()
            .iter()
            .map(|s| Simplex { vertices: s.vertices.clone(), value: 0.0 })
            .collect();
        let ph = persistent_homology(&FilteredComplex::new(flat, 2.0).unwrap());
        assert_eq!(bars(&ph.h0), vec![(0.0, 2.0)]);
        assert!(ph.h1.is_empty());
        assert_eq!(ph.essential_h1, 0);
        assert_eq!(ph.essential_h2, 1);
    }

    #[test]
    fn ring_has_one_loop() {
        let img = BinaryImage::from_ascii("###\n#.#\n###").unwrap();
        let ph = image_persistence(&img, SweepDirection::TopDown);
        // Born when the bottom row closes the ring at value 2, never dies.
        assert_eq!(bars(&ph.h1), vec![(2.0, 1.0)]);
        assert_eq!(ph.essential_h1, 1);
        assert_eq!(bars(&ph.h0), vec![(0.0, 3.0)]);
    }

    #[test]
    fn u_shape_merges() {
        // Two arms born at row 0 join at row 2.
        let img = BinaryImage::from_ascii("#.#\n#.#\n###").unwrap();
        let ph = image_persistence(&img, SweepDirection::TopDown);
        assert_eq!(bars(&ph.h0), vec![(0.0, 2.0), (0.0, 3.0)]);
        let up = image_persistence(&img, SweepDirection::BottomUp);
        assert_eq!(bars(&up.h0), vec![(0.0, 3.0)]);
    }

    #[test]
    fn finite_bars_have_positive_length() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let img = random_image(&mut rng, 10, 10, 0.45);
            for dir in SweepDirection::ALL {
                let ph = image_persistence(&img, dir);
                let all: Vec<Interval> = [ph.h0.intervals(), ph.h1.intervals()].concat();
                assert!(all.iter().all(|i| i.d > 0.0));
            }
        }
    }

    #[test]
    fn essential_counts_and_euler() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let img = random_image(&mut rng, 12, 12, 0.5);
            let k = sweep_filtration(&img, SweepDirection::TopDown);
            let ph = persistent_homology(&k);
            assert_eq!(ph.essential_h0, connected_component_count(&img));
            let betti = ph.essential_h0 as i64 - ph.essential_h1 as i64 + ph.essential_h2 as i64;
            assert_eq!(k.euler_characteristic(), betti);
        }
    }

    #[test]
    fn reflection_swaps_sweeps() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let img = random_image(&mut rng, 9, 11, 0.5);
            let mirror = img.flip_horizontal();
            let a = image_persistence(&img, SweepDirection::LeftRight);
            let b = image_persistence(&mirror, SweepDirection::RightLeft);
            assert_eq!(a, b);
            let flipped = img.flip_vertical();
            let c = image_persistence(&img, SweepDirection::TopDown);
            let d = image_persistence(&flipped, SweepDirection::BottomUp);
            assert_eq!(c, d);
        }
    }

    #[test]
    fn empty_complex() {
        let ph = persistent_homology(&FilteredComplex::new(Vec::new(), 4.0).unwrap());
        assert!(ph.h0.is_empty() && ph.h1.is_empty());
    }
}
