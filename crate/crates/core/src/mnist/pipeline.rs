use rayon::prelude::*;
use serde::Serialize;

use super::LabeledDataset;
use crate::coords::{mnist_features, ColumnMeta, CoordinateSpec, FeatureMatrix, DEFAULT_M};
use crate::persistence::{image_persistence, threshold, GrayImage, SweepDirection};

/// 4 sweeps × 2 homology dimensions × 7 features.
pub const FEATURE_COUNT: usize = 56;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PipelineConfig {
    /// Birth clipping factor in the `min(m·d, x)` features.
    pub m: u32,
    /// Pixels strictly brighter than this are foreground.
    pub threshold: u8,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            m: DEFAULT_M,
            threshold: 100,
        }
    }
}

/// Features of one image, sweep-major: for each of top, bottom, left,
/// right, the 7 features of h0 then the 7 features of h1.
pub fn image_features(img: &GrayImage, cfg: PipelineConfig) -> [f64; FEATURE_COUNT] {
    let bin = threshold(img, cfg.threshold);
    let mut out = [0.0; FEATURE_COUNT];
    for (s, dir) in SweepDirection::ALL.into_iter().enumerate() {
        let ph = image_persistence(&bin, dir);
        for (h, barcode) in [&ph.h0, &ph.h1].into_iter().enumerate() {
            let start = (2 * s + h) * 7;
            out[start..start + 7].copy_from_slice(&mnist_features(barcode, cfg.m));
        }
    }
    out
}

pub fn column_metadata(cfg: PipelineConfig) -> Vec<ColumnMeta> {
    let specs = CoordinateSpec::mnist_features(cfg.m);
    let mut columns = Vec::with_capacity(FEATURE_COUNT);
    for dir in SweepDirection::ALL {
        for h in 0..2 {
            for (f, spec) in specs.iter().enumerate() {
                columns.push(ColumnMeta {
                    name: format!("{dir}_h{h}_F{}", f + 1),
                    spec: *spec,
                    source: format!("{dir}/h{h}"),
                });
            }
        }
    }
    columns
}

/// Featurises images in parallel; row `i` always belongs to image `i`.
pub fn featurize_images(images: &[GrayImage], cfg: PipelineConfig) -> FeatureMatrix {
    let rows: Vec<[f64; FEATURE_COUNT]> = images.par_iter().map(|img| image_features(img, cfg)).collect();
    FeatureMatrix::new(rows.len(), column_metadata(cfg), rows.concat()).expect("56 values per row")
}

pub fn featurize_dataset(ds: &LabeledDataset, cfg: PipelineConfig) -> FeatureMatrix {
    featurize_images(ds.images(), cfg)
}

/// Sidecar description of an exported feature table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureMetadata {
    pub rows: usize,
    pub config: PipelineConfig,
    /// Image frame as `[rows, cols]`; features are computed on the full frame.
    pub frame: [usize; 2],
    pub sweep_values: &'static str,
    pub essential_death: &'static str,
    pub columns: Vec<ColumnMeta>,
}

impl FeatureMetadata {
    pub fn new(rows: usize, frame: [usize; 2], cfg: PipelineConfig) -> Self {
        FeatureMetadata {
            rows,
            config: cfg,
            frame,
            sweep_values: "0-indexed distance in pixels from the side the sweep starts at",
            essential_death: "sweep extent: frame rows for top/bottom, frame cols for left/right",
            columns: column_metadata(cfg),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metadata is serialisable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blank_image_is_all_zero() {
        let img = GrayImage::new(28, 28, vec![0; 784]).unwrap();
        assert!(image_features(&img, PipelineConfig::default()).iter().all(|v| *v == 0.0));
    }

    #[test]
    fn full_image() {
        let img = GrayImage::new(28, 28, vec![255; 784]).unwrap();
        let f = image_features(&img, PipelineConfig::default());
        for s in 0..4 {
            let h0 = &f[14 * s..14 * s + 7];
            // One essential bar (0, 28): F1..F5 are its length, births are 0.
            assert_eq!(h0, &[28.0, 28.0, 28.0, 28.0, 28.0, 0.0, 0.0]);
            assert!(f[14 * s + 7..14 * s + 14].iter().all(|v| *v == 0.0));
        }
    }

    #[test]
    fn non_square_extent() {
        let img = GrayImage::new(4, 6, vec![255; 24]).unwrap();
        let f = image_features(&img, PipelineConfig::default());
        assert_eq!(f[4], 4.0);
        assert_eq!(f[14 + 4], 4.0);
        assert_eq!(f[28 + 4], 6.0);
        assert_eq!(f[42 + 4], 6.0);
    }

    #[test]
    fn column_names() {
        let cols = column_metadata(PipelineConfig::default());
        assert_eq!(cols.len(), FEATURE_COUNT);
        assert_eq!(cols[0].name, "top_h0_F1");
        assert_eq!(cols[13].name, "top_h1_F7");
        assert_eq!(cols[55].name, "right_h1_F7");
        assert_eq!(cols[7].source, "top/h1");
    }

    #[test]
    fn parallel_matches_sequential() {
        let images: Vec<GrayImage> = (0..12u32)
            .map(|i| {
                let px = (0..100u32).map(|p| ((p * 37 + i * 11) % 256) as u8).collect();
                GrayImage::new(10, 10, px).unwrap()
            })
            .collect();
        let cfg = PipelineConfig::default();
        let m = featurize_images(&images, cfg);
        for (i, img) in images.iter().enumerate() {
            assert_eq!(m.row(i), &image_features(img, cfg)[..]);
        }
        assert_eq!(featurize_images(&images, cfg), m);
    }

    #[test]
    fn metadata_json() {
        let meta = FeatureMetadata::new(3, [28, 28], PipelineConfig::default());
        let v: serde_json::Value = serde_json::from_str(&meta.to_json()).unwrap();
        assert_eq!(v["columns"].as_array().unwrap().len(), 56);
        assert_eq!(v["config"]["m"], 28);
        assert_eq!(v["frame"][0], 28);
    }
}
