//! Geometry of the encoding: how a matrix splits into chunks, how much
//! room the appended index region needs, and how ranks are packed into
//! cells of the matrix's own element width.

use crate::error::{Error, Result};
use crate::matrix::Width;
use crate::perm_rank::{RankIndex, FACTORIALS, MAX_CHUNK_LEN, MIN_CHUNK_LEN};

/// Derived layout values tying matrix dimensions to the appended index
/// region. One rank index is stored per chunk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridGeometry {
    /// Original row count.
    pub rows: usize,
    /// Column count, shared by original and appended rows.
    pub cols: usize,
    /// Chunk length (the column constant), 2..=9.
    pub chunk_len: usize,
    /// Element width of the matrix.
    pub width: Width,
    /// Number of chunks, rows*cols / chunk_len; also the number of
    /// rank indices to store.
    pub chunk_count: usize,
    /// Cells needed to store one rank at this width.
    pub cells_per_index: usize,
    /// Rows appended to hold the index region.
    pub appended_rows: usize,
    /// Total cells in the appended region, appended_rows * cols.
    pub appended_cells: usize,
}

impl GridGeometry {
    /// Cells actually occupied by rank data; the remaining
    /// `appended_cells - rank_cells()` slots take the filler value.
    pub fn rank_cells(&self) -> usize {
        self.chunk_count * self.cells_per_index
    }

    /// Total rows of the compound matrix.
    pub fn compound_rows(&self) -> usize {
        self.rows + self.appended_rows
    }
}

/// Bits required to represent `value`; zero still needs one bit.
fn bits_needed(value: u64) -> u32 {
    if value == 0 {
        1
    } else {
        64 - value.leading_zeros()
    }
}

/// Cells of `width` bits needed to hold any rank for chunks of
/// `chunk_len` elements (the ranks are stored zero-based, so the
/// largest stored value is chunk_len! - 1).
fn cells_per_index(chunk_len: usize, width: Width) -> usize {
    let max_stored = FACTORIALS[chunk_len] - 1;
    bits_needed(max_stored).div_ceil(width.bits()) as usize
}

fn check_chunk_len(chunk_len: usize) -> Result<()> {
    if !(MIN_CHUNK_LEN..=MAX_CHUNK_LEN).contains(&chunk_len) {
        return Err(Error::ChunkLength(chunk_len));
    }
    Ok(())
}

/// Derives the full geometry for a rows x cols matrix encoded with the
/// given chunk length and element width.
///
/// Fails when the chunk length does not divide rows*cols; the matrix
/// is never padded to force divisibility.
pub fn compute_geometry(
    rows: usize,
    cols: usize,
    chunk_len: usize,
    width: Width,
) -> Result<GridGeometry> {
    check_chunk_len(chunk_len)?;
    if rows == 0 || cols == 0 {
        return Err(Error::BadDimensions(format!(
            "matrix dimensions must be positive, got {rows}x{cols}"
        )));
    }
    let count = rows
        .checked_mul(cols)
        .ok_or_else(|| Error::BadDimensions("matrix dimensions overflow".into()))?;
    if count % chunk_len != 0 {
        return Err(Error::Divisibility {
            rows,
            cols,
            chunk_len,
            count,
        });
    }
    let chunk_count = count / chunk_len;
    let cells = cells_per_index(chunk_len, width);
    let appended_rows = (chunk_count * cells).div_ceil(cols);
    Ok(GridGeometry {
        rows,
        cols,
        chunk_len,
        width,
        chunk_count,
        cells_per_index: cells,
        appended_rows,
        appended_cells: appended_rows * cols,
    })
}

/// Recovers the original row count M from a compound's total row count.
///
/// M is the unique solution of `M + ceil(M*c/x) = total_rows`; the map
/// is strictly increasing in M, so a binary search either finds it or
/// proves the input is not a compound for these parameters.
pub fn infer_original_rows(
    total_rows: usize,
    cols: usize,
    chunk_len: usize,
    width: Width,
) -> Result<usize> {
    check_chunk_len(chunk_len)?;
    let fail = || Error::RowInference {
        rows: total_rows,
        chunk_len,
        width: width.bits(),
    };
    if total_rows < 2 || cols == 0 {
        return Err(fail());
    }
    let cells = cells_per_index(chunk_len, width);
    let compound_rows = |m: usize| m + (m * cells).div_ceil(chunk_len);
    let (mut lo, mut hi) = (1usize, total_rows);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if compound_rows(mid) < total_rows {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if compound_rows(lo) != total_rows || (lo * cols) % chunk_len != 0 {
        return Err(fail());
    }
    Ok(lo)
}

/// Packs a rank into `cells_per_index` big-endian base-2^width digits
/// of `rank - 1`, each of which fits a matrix element.
pub fn encode_rank_cells(rank: RankIndex, geom: &GridGeometry) -> Result<Vec<u32>> {
    let max = FACTORIALS[geom.chunk_len];
    if rank.get() > max {
        return Err(Error::RankRange {
            rank: rank.get(),
            max,
        });
    }
    let mut value = rank.get() - 1;
    let mut cells = vec![0u32; geom.cells_per_index];
    for cell in cells.iter_mut().rev() {
        *cell = (value & geom.width.max_value() as u64) as u32;
        value >>= geom.width.bits();
    }
    debug_assert_eq!(value, 0);
    Ok(cells)
}

/// Inverse of [`encode_rank_cells`]. Rejects values that no rank of
/// this chunk length could have produced.
pub fn decode_rank_cells(cells: &[u32], geom: &GridGeometry) -> Result<RankIndex> {
    if cells.len() != geom.cells_per_index {
        return Err(Error::BadDimensions(format!(
            "rank cell group has {} cells, geometry requires {}",
            cells.len(),
            geom.cells_per_index
        )));
    }
    let mut value = 0u64;
    for &cell in cells {
        value = (value << geom.width.bits()) | cell as u64;
    }
    let max = FACTORIALS[geom.chunk_len];
    if value >= max {
        return Err(Error::Corrupt(format!(
            "stored rank value {value} exceeds the {max} arrangements of a {}-element chunk",
            geom.chunk_len
        )));
    }
    RankIndex::new(value + 1)
}
