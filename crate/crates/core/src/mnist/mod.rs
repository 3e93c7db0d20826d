//! MNIST ingestion, the 56-column digit featurisation, min/max scaling,
//! k-nearest-neighbour classification and cross-validation.

mod classify;
mod idx;
mod pipeline;

pub use classify::{cross_validate, knn_classify, CvReport, Scaler};
pub use idx::{parse_idx_images, parse_idx_labels, read_idx_images, read_idx_labels, LabeledDataset};
pub use pipeline::{
    column_metadata, featurize_dataset, featurize_images, image_features, FeatureMetadata, PipelineConfig,
    FEATURE_COUNT,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MnistError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("bad magic number {found} (expected {expected})")]
    BadMagic { expected: u32, found: u32 },
    #[error("truncated file: need {expected} bytes, have {got}")]
    Truncated { expected: usize, got: usize },
    #[error("label {label} at index {index} is outside 0..=9")]
    LabelOutOfRange { index: usize, label: u8 },
    #[error("{images} images but {labels} labels")]
    LengthMismatch { images: usize, labels: usize },
    #[error("training matrix is empty")]
    EmptyTraining,
    #[error("k = {k} must be between 1 and the training size {train}")]
    InvalidK { k: usize, train: usize },
    #[error("column count mismatch: train has {train}, test has {test}")]
    ColumnMismatch { train: usize, test: usize },
    #[error("folds = {folds} must be between 2 and the sample count {samples}")]
    InvalidFolds { folds: usize, samples: usize },
}
