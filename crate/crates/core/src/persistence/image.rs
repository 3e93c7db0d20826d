use std::collections::VecDeque;

use super::PersistenceError;

/// 8-bit intensities, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    rows: usize,
    cols: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(rows: usize, cols: usize, pixels: Vec<u8>) -> Result<Self, PersistenceError> {
        if pixels.len() != rows * cols {
            return Err(PersistenceError::PixelCount {
                rows,
                cols,
                expected: rows * cols,
                got: pixels.len(),
            });
        }
        Ok(GrayImage { rows, cols, pixels })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.pixels[r * self.cols + c]
    }
}

/// Foreground mask, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl BinaryImage {
    pub fn new(rows: usize, cols: usize, bits: Vec<bool>) -> Result<Self, PersistenceError> {
        if bits.len() != rows * cols {
            return Err(PersistenceError::PixelCount {
                rows,
                cols,
                expected: rows * cols,
                got: bits.len(),
            });
        }
        Ok(BinaryImage { rows, cols, bits })
    }

    /// Parses rows of `#` (foreground) and `.` (background); handy in tests.
    pub fn from_ascii(art: &str) -> Result<Self, PersistenceError> {
        let lines: Vec<&str> = art
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect();
        let cols = lines.first().map_or(0, |l| l.len());
        let bits: Vec<bool> = lines.iter().flat_map(|l| l.chars().map(|c| c == '#')).collect();
        BinaryImage::new(lines.len(), cols, bits)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.cols + c]
    }

    pub fn foreground_count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    /// Mirror image across the vertical axis.
    pub fn flip_horizontal(&self) -> BinaryImage {
        let bits = (0..self.rows)
            .flat_map(|r| (0..self.cols).rev().map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        BinaryImage {
            rows: self.rows,
            cols: self.cols,
            bits,
        }
    }

    /// Mirror image across the horizontal axis.
    pub fn flip_vertical(&self) -> BinaryImage {
        let bits = (0..self.rows)
            .rev()
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c))
            .collect();
        BinaryImage {
            rows: self.rows,
            cols: self.cols,
            bits,
        }
    }

    pub(crate) fn neighbours(&self, r: usize, c: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (rows, cols) = (self.rows as isize, self.cols as isize);
        (-1isize..=1)
            .flat_map(|dr| (-1isize..=1).map(move |dc| (dr, dc)))
            .filter(|&(dr, dc)| dr != 0 || dc != 0)
            .map(move |(dr, dc)| (r as isize + dr, c as isize + dc))
            .filter(move |&(nr, nc)| nr >= 0 && nc >= 0 && nr < rows && nc < cols)
            .map(|(nr, nc)| (nr as usize, nc as usize))
    }
}

/// Foreground iff intensity is strictly greater than `t`.
pub fn threshold(img: &GrayImage, t: u8) -> BinaryImage {
    BinaryImage {
        rows: img.rows,
        cols: img.cols,
        bits: img.pixels.iter().map(|&p| p > t).collect(),
    }
}

/// Number of 8-connected foreground components, by flood fill.
pub fn connected_component_count(img: &BinaryImage) -> usize {
    let mut seen = vec![false; img.bits.len()];
    let mut count = 0;
    for start in 0..img.bits.len() {
        if !img.bits[start] || seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(idx) = queue.pop_front() {
            let (r, c) = (idx / img.cols, idx % img.cols);
            for (nr, nc) in img.neighbours(r, c) {
                let n = nr * img.cols + nc;
                if img.bits[n] && !seen[n] {
                    seen[n] = true;
                    queue.push_back(n);
                }
            }
        }
    }
    count
}

/// Reads a binary (`P5`) PGM with maxval ≤ 255.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage, PersistenceError> {
    let err = |m: &str| PersistenceError::Pgm(m.to_string());
    let mut pos = 0;
    let mut fields = Vec::with_capacity(4);
    while fields.len() < 4 {
        // Skip whitespace and comments.
        while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b'#') {
            if bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                pos += 1;
            }
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(err("truncated header"));
        }
        fields.push(String::from_utf8_lossy(&bytes[start..pos]).into_owned());
    }
    if fields[0] != "P5" {
        return Err(err("only binary P5 files are supported"));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| err("bad header number"));
    let (cols, rows, maxval) = (num(&fields[1])?, num(&fields[2])?, num(&fields[3])?);
    if maxval == 0 || maxval > 255 {
        return Err(err("maxval must be in 1..=255"));
    }
    // Exactly one whitespace byte separates the header from the raster.
    pos += 1;
    let raster = bytes.get(pos..pos + rows * cols).ok_or_else(|| err("truncated raster"))?;
    GrayImage::new(rows, cols, raster.to_vec())
}

pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.cols, img.rows).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}
