//! Tropical coordinates on the space of persistence barcodes.
//!
//! The crate is organised bottom-up:
//!
//! * [`tropical`] – max-plus arithmetic, a small expression language and the
//!   conversion of min/max/plus expressions to a difference of two max-plus
//!   polynomials.
//! * [`barcode`] – intervals `(x, d)` (birth, length), barcodes as canonical
//!   multisets, and their text/JSON formats.
//! * [`assignment`] – Hungarian assignment and Hopcroft–Karp matching.
//! * [`coords`] – elementary 2-symmetric max-plus polynomials `σ`, the
//!   rational coordinates `E_m` and the aggregate digit features.
//! * [`metrics`] – exact bottleneck and Wasserstein distances plus
//!   brute-force oracles.
//! * [`persistence`] – sweep filtrations of binary images and `Z/2`
//!   persistent homology.
//! * [`mnist`] – IDX readers, the 56-column featurisation pipeline, scaling,
//!   k-NN and cross-validation.

pub mod assignment;
pub mod barcode;
pub mod coords;
pub mod metrics;
pub mod mnist;
pub mod persistence;
pub mod tropical;
mod util;

pub use barcode::{Barcode, BarcodeError, Interval};
pub use coords::{CoordinateSpec, FeatureMatrix, OrbitSpec};
pub use metrics::{bottleneck, wasserstein, MatchingPenalty, MetricError};
pub use persistence::{
    BinaryImage, FilteredComplex, GrayImage, PersistenceDiagrams, PersistenceError, SweepDirection,
};
pub use tropical::{MaxPlusForm, RationalNormalForm, TropError, TropicalExpr};
pub use util::format_decimal;
