//! Seeded fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropcoord::{Barcode, BinaryImage, GrayImage};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` intervals with births and lengths uniform in `[0, 10)`.
pub fn random_barcode(rng: &mut ChaCha8Rng, n: usize) -> Barcode {
    let pairs: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random_range(0.0..10.0), rng.random_range(0.0..10.0)))
        .collect();
    Barcode::from_pairs(&pairs).expect("nonnegative coordinates")
}

pub fn random_binary_image(rng: &mut ChaCha8Rng, rows: usize, cols: usize, density: f64) -> BinaryImage {
    let bits = (0..rows * cols).map(|_| rng.random_bool(density)).collect();
    BinaryImage::new(rows, cols, bits).expect("rows*cols bits")
}

/// A 28×28 frame holding a thick ring, roughly the shape of a zero.
pub fn ring_digit() -> GrayImage {
    let pixels = (0..28 * 28)
        .map(|i| {
            let (r, c) = ((i / 28) as f64 - 13.5, (i % 28) as f64 - 13.5);
            let rad = (r * r / 1.4 + c * c / 0.8).sqrt();
            if (6.0..9.0).contains(&rad) {
                255
            } else {
                0
            }
        })
        .collect();
    GrayImage::new(28, 28, pixels).expect("784 pixels")
}
