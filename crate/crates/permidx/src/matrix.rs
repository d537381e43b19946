//! The rectangular unsigned-integer matrix that everything else operates on.

use crate::error::{Error, Result};

/// Element width of a matrix: every element is an unsigned integer
/// strictly below `2^bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Width {
    W8,
    W16,
    W32,
}

impl Width {
    pub fn bits(self) -> u32 {
        match self {
            Width::W8 => 8,
            Width::W16 => 16,
            Width::W32 => 32,
        }
    }

    pub fn from_bits(bits: u32) -> Result<Self> {
        match bits {
            8 => Ok(Width::W8),
            16 => Ok(Width::W16),
            32 => Ok(Width::W32),
            other => Err(Error::WidthBits(other)),
        }
    }

    /// Largest representable element value, `2^bits - 1`.
    pub fn max_value(self) -> u32 {
        match self {
            Width::W8 => u8::MAX as u32,
            Width::W16 => u16::MAX as u32,
            Width::W32 => u32::MAX,
        }
    }

    pub fn fits(self, value: u32) -> bool {
        value <= self.max_value()
    }

    /// Smallest width that can hold `value`.
    pub fn minimal_for(value: u32) -> Self {
        if value <= u8::MAX as u32 {
            Width::W8
        } else if value <= u16::MAX as u32 {
            Width::W16
        } else {
            Width::W32
        }
    }
}

impl std::fmt::Display for Width {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.bits())
    }
}

/// A rows x cols grid of unsigned integers stored row-major, with a
/// declared element width. The unit of encoding and decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    width: Width,
    data: Vec<u32>,
}

impl Matrix {
    /// Builds a matrix, checking that `data` has exactly `rows * cols`
    /// elements and that every element fits `width`.
    pub fn new(rows: usize, cols: usize, width: Width, data: Vec<u32>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::BadDimensions(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        let expected = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::BadDimensions("matrix dimensions overflow".into()))?;
        if data.len() != expected {
            return Err(Error::BadDimensions(format!(
                "{rows}x{cols} matrix needs {expected} elements, got {}",
                data.len()
            )));
        }
        if let Some(&value) = data.iter().find(|&&v| !width.fits(v)) {
            return Err(Error::value_too_wide(value as u64, width));
        }
        Ok(Matrix {
            rows,
            cols,
            width,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn width(&self) -> Width {
        self.width
    }

    /// Row-major elements.
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    /// One full row as a slice.
    pub fn row(&self, row: usize) -> &[u32] {
        assert!(row < self.rows);
        &self.data[row * self.cols..(row + 1) * self.cols]
    }
}
