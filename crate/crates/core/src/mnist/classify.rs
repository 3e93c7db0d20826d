use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::MnistError;
use crate::coords::FeatureMatrix;

/// Per-column min/max from a training split.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scaler {
    min: Vec<f64>,
    max: Vec<f64>,
}

impl Scaler {
    pub fn fit(train: &FeatureMatrix) -> Result<Scaler, MnistError> {
        if train.rows() == 0 {
            return Err(MnistError::EmptyTraining);
        }
        let cols = train.cols();
        let mut min = vec![f64::INFINITY; cols];
        let mut max = vec![f64::NEG_INFINITY; cols];
        for i in 0..train.rows() {
            for (j, &v) in train.row(i).iter().enumerate() {
                min[j] = min[j].min(v);
                max[j] = max[j].max(v);
            }
        }
        Ok(Scaler { min, max })
    }

    /// Maps each column to `[0, 1]`; constant training columns map to 0 and
    /// values outside the training range are clamped.
    pub fn apply(&self, x: &FeatureMatrix) -> Result<FeatureMatrix, MnistError> {
        if x.cols() != self.min.len() {
            return Err(MnistError::ColumnMismatch {
                train: self.min.len(),
                test: x.cols(),
            });
        }
        let cols = self.min.len();
        let values = x
            .values()
            .iter()
            .enumerate()
            .map(|(idx, &v)| {
                let (lo, hi) = (self.min[idx % cols], self.max[idx % cols]);
                if hi > lo {
                    ((v - lo) / (hi - lo)).clamp(0.0, 1.0)
                } else {
                    0.0
                }
            })
            .collect();
        Ok(x.with_values(values))
    }

    pub fn min(&self) -> &[f64] {
        &self.min
    }

    pub fn max(&self) -> &[f64] {
        &self.max
    }
}

/// Majority vote among the `k` nearest training rows (Euclidean).
///
/// Equal distances are ordered by training index. A tied vote goes to the
/// label whose voters have the smaller mean distance, then to the smaller
/// label.
pub fn knn_classify(
    train_x: &FeatureMatrix,
    train_y: &[u8],
    test_x: &FeatureMatrix,
    k: usize,
) -> Result<Vec<u8>, MnistError> {
    if train_x.rows() != train_y.len() {
        return Err(MnistError::LengthMismatch {
            images: train_x.rows(),
            labels: train_y.len(),
        });
    }
    if k == 0 || k > train_x.rows() {
        return Err(MnistError::InvalidK {
            k,
            train: train_x.rows(),
        });
    }
    if test_x.rows() > 0 && test_x.cols() != train_x.cols() {
        return Err(MnistError::ColumnMismatch {
            train: train_x.cols(),
            test: test_x.cols(),
        });
    }
    let predictions = (0..test_x.rows())
        .map(|t| {
            let q = test_x.row(t);
            let mut dist: Vec<(f64, usize)> = (0..train_x.rows())
                .map(|i| {
                    let sq: f64 = train_x.row(i).iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
                    (sq.sqrt(), i)
                })
                .collect();
            dist.select_nth_unstable_by(k - 1, |a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let mut count = [0usize; 256];
            let mut total = [0.0f64; 256];
            for &(d, i) in &dist[..k] {
                count[train_y[i] as usize] += 1;
                total[train_y[i] as usize] += d;
            }
            (0..=255u8)
                .filter(|&l| count[l as usize] > 0)
                .min_by(|&a, &b| {
                    let (ca, cb) = (count[a as usize], count[b as usize]);
                    let mean = |l: u8| total[l as usize] / count[l as usize] as f64;
                    cb.cmp(&ca).then(mean(a).total_cmp(&mean(b))).then(a.cmp(&b))
                })
                .expect("k >= 1 voters")
        })
        .collect();
    Ok(predictions)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CvReport {
    pub fold_accuracies: Vec<f64>,
    pub mean_accuracy: f64,
}

/// Shuffles rows with a seeded ChaCha8 stream, cuts them into contiguous
/// folds and scores k-NN on each fold with a scaler fitted on the rest.
pub fn cross_validate(
    x: &FeatureMatrix,
    y: &[u8],
    folds: usize,
    k: usize,
    seed: u64,
) -> Result<CvReport, MnistError> {
    let n = x.rows();
    if y.len() != n {
        return Err(MnistError::LengthMismatch { images: n, labels: y.len() });
    }
    if folds < 2 || folds > n {
        return Err(MnistError::InvalidFolds { folds, samples: n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut fold_accuracies = Vec::with_capacity(folds);
    for f in 0..folds {
        let (lo, hi) = (f * n / folds, (f + 1) * n / folds);
        let test_idx = &order[lo..hi];
        let train_idx: Vec<usize> = order[..lo].iter().chain(&order[hi..]).copied().collect();
        let scaler = Scaler::fit(&x.select_rows(&train_idx))?;
        let train_x = scaler.apply(&x.select_rows(&train_idx))?;
        let test_x = scaler.apply(&x.select_rows(test_idx))?;
        let train_y: Vec<u8> = train_idx.iter().map(|&i| y[i]).collect();
        let pred = knn_classify(&train_x, &train_y, &test_x, k)?;
        let correct = pred.iter().zip(test_idx).filter(|(p, &i)| **p == y[i]).count();
        fold_accuracies.push(correct as f64 / test_idx.len() as f64);
    }
    let mean_accuracy = fold_accuracies.iter().sum::<f64>() / folds as f64;
    Ok(CvReport {
        fold_accuracies,
        mean_accuracy,
    })
}
