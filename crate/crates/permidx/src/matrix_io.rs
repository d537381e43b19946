//! Reading and writing matrices: the PDXM binary container, plain CSV,
//! and PGM grayscale images (P5 binary and P2 ASCII).
//!
//! All readers take byte slices and all writers return bytes; nothing
//! here touches the filesystem.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Width};

pub const PDXM_MAGIC: &[u8; 4] = b"PDXM";
pub const PDXM_VERSION: u8 = 1;
/// Magic, version, width, two reserved bytes, u32 rows, u32 cols.
pub const PDXM_HEADER_LEN: usize = 16;

/// The three on-disk matrix representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Pdxm,
    Csv,
    Pgm,
}

impl Format {
    pub fn from_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "pdxm" => Ok(Format::Pdxm),
            "csv" => Ok(Format::Csv),
            "pgm" => Ok(Format::Pgm),
            other => Err(Error::matrix_format(
                "format",
                format!("unknown format {other:?} (expected pdxm, csv, or pgm)"),
            )),
        }
    }
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Format::Pdxm => write!(f, "pdxm"),
            Format::Csv => write!(f, "csv"),
            Format::Pgm => write!(f, "pgm"),
        }
    }
}

/// PDXM and PGM announce themselves by magic bytes; anything else is
/// treated as CSV.
pub fn detect_format(bytes: &[u8]) -> Format {
    if bytes.starts_with(PDXM_MAGIC) {
        Format::Pdxm
    } else if bytes.starts_with(b"P5") || bytes.starts_with(b"P2") {
        Format::Pgm
    } else {
        Format::Csv
    }
}

/// Reads a matrix in the given format, or by detection when `format`
/// is `None`. `csv_width` forces the element width of CSV input, which
/// has no width of its own.
pub fn read_matrix(
    bytes: &[u8],
    format: Option<Format>,
    csv_width: Option<Width>,
) -> Result<(Matrix, Format)> {
    let format = format.unwrap_or_else(|| detect_format(bytes));
    let matrix = match format {
        Format::Pdxm => read_pdxm(bytes)?,
        Format::Csv => read_csv(bytes, csv_width)?,
        Format::Pgm => read_pgm(bytes)?,
    };
    Ok((matrix, format))
}

/// Writes a matrix in the given format.
pub fn write_matrix(matrix: &Matrix, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Pdxm => Ok(write_pdxm(matrix)),
        Format::Csv => Ok(write_csv(matrix).into_bytes()),
        Format::Pgm => write_pgm(matrix),
    }
}

// ---------------------------------------------------------------- PDXM

pub fn write_pdxm(matrix: &Matrix) -> Vec<u8> {
    let per_element = (matrix.width().bits() / 8) as usize;
    let mut out = Vec::with_capacity(PDXM_HEADER_LEN + matrix.data().len() * per_element);
    out.extend_from_slice(PDXM_MAGIC);
    out.push(PDXM_VERSION);
    out.push(matrix.width().bits() as u8);
    out.extend_from_slice(&[0, 0]); // reserved
    out.extend_from_slice(&(matrix.rows() as u32).to_le_bytes());
    out.extend_from_slice(&(matrix.cols() as u32).to_le_bytes());
    for &value in matrix.data() {
        out.extend_from_slice(&value.to_le_bytes()[..per_element]);
    }
    out
}

pub fn read_pdxm(bytes: &[u8]) -> Result<Matrix> {
    let fail = |reason: String| Error::matrix_format("PDXM", reason);
    if bytes.len() < PDXM_HEADER_LEN {
        return Err(fail(format!(
            "truncated header: {} bytes, need {PDXM_HEADER_LEN}",
            bytes.len()
        )));
    }
    if &bytes[0..4] != PDXM_MAGIC {
        return Err(fail("bad magic".into()));
    }
    if bytes[4] != PDXM_VERSION {
        return Err(fail(format!("unsupported version {}", bytes[4])));
    }
    let width = Width::from_bits(bytes[5] as u32)
        .map_err(|_| fail(format!("bad width byte {}", bytes[5])))?;
    let rows = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let cols = u32::from_le_bytes(bytes[12..16].try_into().unwrap()) as usize;
    let count = rows
        .checked_mul(cols)
        .ok_or_else(|| fail("dimensions overflow".into()))?;
    let per_element = (width.bits() / 8) as usize;
    let expected = PDXM_HEADER_LEN + count * per_element;
    if bytes.len() != expected {
        return Err(fail(format!(
            "element count mismatch: {rows}x{cols} at {width} bits needs {expected} bytes, file has {} (payload ends at offset {})",
            bytes.len(),
            bytes.len().min(expected)
        )));
    }
    let data = bytes[PDXM_HEADER_LEN..]
        .chunks_exact(per_element)
        .map(|chunk| {
            let mut buf = [0u8; 4];
            buf[..per_element].copy_from_slice(chunk);
            u32::from_le_bytes(buf)
        })
        .collect();
    Matrix::new(rows, cols, width, data).map_err(|e| fail(e.to_string()))
}

// ----------------------------------------------------------------- CSV

/// Rows of comma-separated unsigned decimal integers. With no width
/// override, the smallest of 8/16/32 bits that holds the largest value
/// is chosen.
pub fn read_csv(bytes: &[u8], width: Option<Width>) -> Result<Matrix> {
    let fail = |reason: String| Error::matrix_format("CSV", reason);
    let text = std::str::from_utf8(bytes).map_err(|e| fail(format!("not UTF-8: {e}")))?;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut max_value = 0u32;
    for (line_no, line) in text.lines().enumerate() {
        let mut row = Vec::new();
        for token in line.split(',') {
            let token = token.trim();
            let value: u64 = token
                .parse()
                .map_err(|_| fail(format!("line {}: bad token {token:?}", line_no + 1)))?;
            let value = u32::try_from(value).map_err(|_| {
                fail(format!("line {}: value {value} exceeds 32 bits", line_no + 1))
            })?;
            max_value = max_value.max(value);
            row.push(value);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(fail(format!(
                    "ragged rows: line {} has {} values, line 1 has {}",
                    line_no + 1,
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(fail("no rows".into()));
    }
    let width = width.unwrap_or_else(|| Width::minimal_for(max_value));
    if !width.fits(max_value) {
        return Err(Error::value_too_wide(max_value as u64, width));
    }
    let cols = rows[0].len();
    let data: Vec<u32> = rows.into_iter().flatten().collect();
    let row_count = data.len() / cols;
    Matrix::new(row_count, cols, width, data).map_err(|e| fail(e.to_string()))
}

/// One row per line, comma separated, no trailing comma.
pub fn write_csv(matrix: &Matrix) -> String {
    let mut out = String::new();
    for row in 0..matrix.rows() {
        for (i, value) in matrix.row(row).iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&value.to_string());
        }
        out.push('\n');
    }
    out
}

// ----------------------------------------------------------------- PGM

/// Pulls whitespace-separated header tokens, skipping `#` comments.
struct PgmTokens<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PgmTokens<'a> {
    fn new(bytes: &'a [u8], pos: usize) -> Self {
        PgmTokens { bytes, pos }
    }

    fn skip_filler(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn next_u32(&mut self, what: &str) -> Result<u32> {
        self.skip_filler();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::matrix_format(
                "PGM",
                format!("expected {what} at byte {start}"),
            ));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::matrix_format("PGM", format!("{what} out of range")))
    }
}

/// Reads P5 (binary) or P2 (ASCII) grayscale images. A maxval up to
/// 255 yields an 8-bit matrix; up to 65535 a 16-bit one, with P5
/// samples big-endian as the format prescribes.
pub fn read_pgm(bytes: &[u8]) -> Result<Matrix> {
    let fail = |reason: String| Error::matrix_format("PGM", reason);
    let binary = match bytes.get(0..2) {
        Some(b"P5") => true,
        Some(b"P2") => false,
        Some(b"P3") | Some(b"P6") => {
            return Err(fail("color images are not supported".into()));
        }
        _ => return Err(fail("bad magic, not a PGM".into())),
    };
    let mut tokens = PgmTokens::new(bytes, 2);
    let cols = tokens.next_u32("width")? as usize;
    let rows = tokens.next_u32("height")? as usize;
    let maxval = tokens.next_u32("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(fail(format!("maxval {maxval} out of range 1..=65535")));
    }
    let width = if maxval <= 255 { Width::W8 } else { Width::W16 };
    let count = rows
        .checked_mul(cols)
        .ok_or_else(|| fail("dimensions overflow".into()))?;

    let data: Vec<u32> = if binary {
        // Exactly one whitespace byte separates the header from the raster.
        let raster = tokens.pos + 1;
        if bytes.len() < raster || !bytes[tokens.pos].is_ascii_whitespace() {
            return Err(fail("missing whitespace before raster".into()));
        }
        let raster = &bytes[raster..];
        let per_sample = if width == Width::W8 { 1 } else { 2 };
        if raster.len() != count * per_sample {
            return Err(fail(format!(
                "payload mismatch: {rows}x{cols} needs {} raster bytes, found {}",
                count * per_sample,
                raster.len()
            )));
        }
        if width == Width::W8 {
            raster.iter().map(|&b| b as u32).collect()
        } else {
            raster
                .chunks_exact(2)
                .map(|pair| u32::from(u16::from_be_bytes([pair[0], pair[1]])))
                .collect()
        }
    } else {
        let mut samples = Vec::with_capacity(count);
        for _ in 0..count {
            samples.push(tokens.next_u32("sample")?);
        }
        tokens.skip_filler();
        if tokens.pos != bytes.len() {
            return Err(fail("trailing data after raster".into()));
        }
        samples
    };
    if let Some(&bad) = data.iter().find(|&&v| v > maxval) {
        return Err(fail(format!("sample {bad} exceeds maxval {maxval}")));
    }
    Matrix::new(rows, cols, width, data).map_err(|e| fail(e.to_string()))
}

/// Writes binary P5 with maxval 2^w - 1. 32-bit matrices exceed what
/// PGM can represent.
pub fn write_pgm(matrix: &Matrix) -> Result<Vec<u8>> {
    if matrix.width() == Width::W32 {
        return Err(Error::matrix_format(
            "PGM",
            "32-bit matrices cannot be written as PGM (maxval tops out at 65535)",
        ));
    }
    let maxval = matrix.width().max_value();
    let mut out = format!("P5\n{} {}\n{}\n", matrix.cols(), matrix.rows(), maxval).into_bytes();
    for &value in matrix.data() {
        if matrix.width() == Width::W8 {
            out.push(value as u8);
        } else {
            out.extend_from_slice(&(value as u16).to_be_bytes());
        }
    }
    Ok(out)
}
