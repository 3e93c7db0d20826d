//! Sweep filtrations of binary images and their persistent homology.
//!
//! Every foreground pixel is a vertex, every pair of 8-adjacent foreground
//! pixels an edge and every triple of mutually adjacent foreground pixels
//! (necessarily inside one 2×2 block) a triangle. A sweep assigns each
//! vertex its row or column index, counted from the side the sweep starts
//! at, and a simplex enters at the largest value among its vertices.
//!
//! Classes that never die are given death equal to the sweep extent: the
//! number of rows for top/bottom sweeps, the number of columns for
//! left/right sweeps. That is one step past the last vertex value, so an
//! essential bar is always longer than a finite bar with the same birth.

mod filtration;
mod image;
mod reduction;

pub use filtration::{sweep_filtration, FilteredComplex, Simplex, SweepDirection};
pub use image::{connected_component_count, read_pgm, threshold, write_pgm, BinaryImage, GrayImage};
pub use reduction::{image_persistence, persistent_homology, PersistenceDiagrams};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PersistenceError {
    #[error("image of {rows}x{cols} needs {expected} pixels, got {got}")]
    PixelCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error("PGM: {0}")]
    Pgm(String),
}
