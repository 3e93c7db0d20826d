use std::path::Path;

use super::MnistError;
use crate::persistence::GrayImage;

const IMAGE_MAGIC: u32 = 2051;
const LABEL_MAGIC: u32 = 2049;

fn be_u32(bytes: &[u8], at: usize) -> Result<u32, MnistError> {
    let word = bytes.get(at..at + 4).ok_or(MnistError::Truncated {
        expected: at + 4,
        got: bytes.len(),
    })?;
    Ok(u32::from_be_bytes(word.try_into().expect("4 bytes")))
}

fn check_magic(bytes: &[u8], expected: u32) -> Result<(), MnistError> {
    let found = be_u32(bytes, 0)?;
    if found != expected {
        return Err(MnistError::BadMagic { expected, found });
    }
    Ok(())
}

fn read(path: &Path) -> Result<Vec<u8>, MnistError> {
    std::fs::read(path).map_err(|source| MnistError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Decodes an IDX image file. With `limit`, only the first `limit` images
/// are decoded (the header must still describe a complete file).
pub fn parse_idx_images(bytes: &[u8], limit: Option<usize>) -> Result<Vec<GrayImage>, MnistError> {
    check_magic(bytes, IMAGE_MAGIC)?;
    let count = be_u32(bytes, 4)? as usize;
    let rows = be_u32(bytes, 8)? as usize;
    let cols = be_u32(bytes, 12)? as usize;
    let size = rows * cols;
    let expected = 16 + count * size;
    if bytes.len() < expected {
        return Err(MnistError::Truncated {
            expected,
            got: bytes.len(),
        });
    }
    let take = limit.map_or(count, |l| l.min(count));
    Ok((0..take)
        .map(|i| {
            let start = 16 + i * size;
            GrayImage::new(rows, cols, bytes[start..start + size].to_vec()).expect("slice has rows*cols bytes")
        })
        .collect())
}

pub fn parse_idx_labels(bytes: &[u8], limit: Option<usize>) -> Result<Vec<u8>, MnistError> {
    check_magic(bytes, LABEL_MAGIC)?;
    let count = be_u32(bytes, 4)? as usize;
    let expected = 8 + count;
    if bytes.len() < expected {
        return Err(MnistError::Truncated {
            expected,
            got: bytes.len(),
        });
    }
    let take = limit.map_or(count, |l| l.min(count));
    let labels = bytes[8..8 + take].to_vec();
    if let Some((index, &label)) = labels.iter().enumerate().find(|(_, l)| **l > 9) {
        return Err(MnistError::LabelOutOfRange { index, label });
    }
    Ok(labels)
}

pub fn read_idx_images(path: impl AsRef<Path>, limit: Option<usize>) -> Result<Vec<GrayImage>, MnistError> {
    parse_idx_images(&read(path.as_ref())?, limit)
}

pub fn read_idx_labels(path: impl AsRef<Path>, limit: Option<usize>) -> Result<Vec<u8>, MnistError> {
    parse_idx_labels(&read(path.as_ref())?, limit)
}

/// Images paired with digit labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    images: Vec<GrayImage>,
    labels: Vec<u8>,
}

impl LabeledDataset {
    pub fn new(images: Vec<GrayImage>, labels: Vec<u8>) -> Result<Self, MnistError> {
        if images.len() != labels.len() {
            return Err(MnistError::LengthMismatch {
                images: images.len(),
                labels: labels.len(),
            });
        }
        if let Some((index, &label)) = labels.iter().enumerate().find(|(_, l)| **l > 9) {
            return Err(MnistError::LabelOutOfRange { index, label });
        }
        Ok(LabeledDataset { images, labels })
    }

    /// Loads the first `limit` images and labels (all when `None`).
    pub fn load(
        images: impl AsRef<Path>,
        labels: impl AsRef<Path>,
        limit: Option<usize>,
    ) -> Result<Self, MnistError> {
        LabeledDataset::new(read_idx_images(images, limit)?, read_idx_labels(labels, limit)?)
    }

    pub fn images(&self) -> &[GrayImage] {
        &self.images
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header(magic: u32, dims: &[u32]) -> Vec<u8> {
        let mut out = magic.to_be_bytes().to_vec();
        for d in dims {
            out.extend_from_slice(&d.to_be_bytes());
        }
        out
    }

    #[test]
    fn images_round_trip() {
        let mut bytes = header(2051, &[2, 2, 3]);
        bytes.extend(0..12u8);
        let imgs = parse_idx_images(&bytes, None).unwrap();
        assert_eq!(imgs.len(), 2);
        assert_eq!(imgs[1].pixels(), &[6, 7, 8, 9, 10, 11]);
        assert_eq!((imgs[0].rows(), imgs[0].cols()), (2, 3));
        assert_eq!(parse_idx_images(&bytes, Some(1)).unwrap().len(), 1);
    }

    #[test]
    fn image_errors() {
        let mut bytes = header(2049, &[1, 1, 1]);
        bytes.push(0);
        assert!(matches!(
            parse_idx_images(&bytes, None),
            Err(MnistError::BadMagic { expected: 2051, found: 2049 })
        ));
        let mut short = header(2051, &[2, 2, 2]);
        short.extend([0u8; 5]);
        assert!(matches!(
            parse_idx_images(&short, None),
            Err(MnistError::Truncated { expected: 24, got: 21 })
        ));
    }

    #[test]
    fn labels() {
        let mut bytes = header(2049, &[3]);
        bytes.extend([5, 0, 9]);
        assert_eq!(parse_idx_labels(&bytes, None).unwrap(), vec![5, 0, 9]);
        assert!(matches!(parse_idx_labels(&header(2051, &[0]), None), Err(MnistError::BadMagic { .. })));
        assert!(matches!(parse_idx_labels(&[], None), Err(MnistError::Truncated { .. })));
        let mut bad = header(2049, &[2]);
        bad.extend([1, 10]);
        assert!(matches!(
            parse_idx_labels(&bad, None),
            Err(MnistError::LabelOutOfRange { index: 1, label: 10 })
        ));
    }

    #[test]
    fn dataset_checks_lengths() {
        let img = GrayImage::new(1, 1, vec![0]).unwrap();
        assert!(LabeledDataset::new(vec![img.clone()], vec![]).is_err());
        assert!(LabeledDataset::new(vec![img.clone()], vec![12]).is_err());
        assert_eq!(LabeledDataset::new(vec![img], vec![3]).unwrap().len(), 1);
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            read_idx_labels("/nonexistent/labels", None),
            Err(MnistError::Io { .. })
        ));
    }
}
