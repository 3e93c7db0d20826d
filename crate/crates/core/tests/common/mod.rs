#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tropcoord::barcode::canonicalize;
use tropcoord::{Barcode, BinaryImage, Interval};

/// Up to `max_len` intervals with `x, d` uniform in `[0, hi)`.
pub fn uniform_intervals(rng: &mut ChaCha8Rng, max_len: usize, hi: f64) -> Vec<Interval> {
    let n = rng.random_range(0..=max_len);
    (0..n)
        .map(|_| Interval::new(rng.random_range(0.0..hi), rng.random_range(0.0..hi)).unwrap())
        .collect()
}

pub fn uniform_barcode(rng: &mut ChaCha8Rng, max_len: usize, hi: f64) -> Barcode {
    canonicalize(&uniform_intervals(rng, max_len, hi)).unwrap()
}

/// Multiples of 1/8 in `[0, hi]`; sums of these are exact in f64.
pub fn dyadic_intervals(rng: &mut ChaCha8Rng, max_len: usize, hi: u32) -> Vec<Interval> {
    let n = rng.random_range(0..=max_len);
    let mut v = || rng.random_range(0..=8 * hi) as f64 / 8.0;
    (0..n).map(|_| Interval::new(v(), v()).unwrap()).collect()
}

/// `b` moved by at most `eps` per endpoint, sometimes with extra short bars.
pub fn perturbed(rng: &mut ChaCha8Rng, b: &Barcode, eps: f64) -> Barcode {
    let mut out: Vec<Interval> = b
        .intervals()
        .iter()
        .map(|iv| {
            let birth = (iv.x + rng.random_range(-eps..=eps)).max(0.0);
            let death = (iv.death() + rng.random_range(-eps..=eps)).max(birth);
            Interval::new(birth, death - birth).unwrap()
        })
        .collect();
    for _ in 0..rng.random_range(0..=1) {
        out.push(Interval::new(rng.random_range(0.0..10.0), rng.random_range(0.0..eps)).unwrap());
    }
    canonicalize(&out).unwrap()
}

/// A random pair: independent, or a small perturbation of one another.
pub fn random_pair(rng: &mut ChaCha8Rng, max_len: usize) -> (Barcode, Barcode) {
    let a = uniform_barcode(rng, max_len, 10.0);
    let b = if rng.random_bool(0.5) {
        uniform_barcode(rng, max_len, 10.0)
    } else {
        let eps = rng.random_range(0.01..1.0);
        perturbed(rng, &a, eps)
    };
    (a, b)
}

/// `intervals` shuffled, with `extra` zero-length intervals at random births.
pub fn shuffled_and_padded(rng: &mut ChaCha8Rng, intervals: &[Interval], extra: usize) -> Vec<Interval> {
    let mut out = intervals.to_vec();
    for _ in 0..extra {
        out.push(Interval::new(rng.random_range(0.0..20.0), 0.0).unwrap());
    }
    out.shuffle(rng);
    out
}

pub fn random_image(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> BinaryImage {
    let bits = (0..rows * cols).map(|_| rng.random_bool(density)).collect();
    BinaryImage::new(rows, cols, bits).unwrap()
}
