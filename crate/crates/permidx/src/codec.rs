//! The end-to-end transform: encoding replaces each chunk with a
//! shuffled rearrangement and hides the chunk's rank in appended rows;
//! decoding reads the ranks back and restores every chunk exactly.

use crate::error::{Error, Result};
use crate::layout::{self, GridGeometry};
use crate::matrix::Matrix;
use crate::passkey::{self, Passkey, PrngState};
use crate::perm_rank::{self, OrderingMode, RankIndex, SortedMultiset};

/// Flat row-major regrouping of the matrix into chunks of `chunk_len`
/// elements. Chunk j covers flat positions `j*chunk_len..(j+1)*chunk_len`;
/// no element moves.
pub fn chunk_matrix(matrix: &Matrix, chunk_len: usize) -> Result<Vec<&[u32]>> {
    let geom = layout::compute_geometry(matrix.rows(), matrix.cols(), chunk_len, matrix.width())?;
    debug_assert_eq!(geom.chunk_count * chunk_len, matrix.data().len());
    Ok(matrix.data().chunks_exact(chunk_len).collect())
}

/// Rank of every chunk in chunk order, with no shuffling or placement.
pub fn permutation_indices(
    matrix: &Matrix,
    chunk_len: usize,
    ordering: OrderingMode,
) -> Result<Vec<RankIndex>> {
    chunk_matrix(matrix, chunk_len)?
        .into_iter()
        .map(|chunk| perm_rank::rank(chunk, ordering))
        .collect()
}

fn check_width(matrix: &Matrix, key: &Passkey) -> Result<()> {
    if matrix.width() != key.width {
        return Err(Error::WidthMismatch {
            matrix: matrix.width().bits(),
            key: key.width.bits(),
        });
    }
    Ok(())
}

/// Encodes a matrix into its compound form.
///
/// Each chunk is ranked, then shuffled in place; all shuffles draw
/// from one SplitMix64 stream seeded by the key, chunks in ascending
/// order. The rank cells, in chunk order, are scattered over the
/// appended region through the key's placement permutation, and the
/// slots left over take the filler value. Fully deterministic: the
/// same matrix and key always produce the same compound.
pub fn encode(matrix: &Matrix, key: &Passkey) -> Result<Matrix> {
    check_width(matrix, key)?;
    let geom = layout::compute_geometry(matrix.rows(), matrix.cols(), key.chunk_len, key.width)?;

    let mut data = matrix.data().to_vec();
    let mut payload = Vec::with_capacity(geom.appended_cells);
    let mut shuffle_state = PrngState::new(key.shuffle_seed);
    for chunk in data.chunks_exact_mut(key.chunk_len) {
        let rank = perm_rank::rank(chunk, key.ordering)?;
        payload.extend(layout::encode_rank_cells(rank, &geom)?);
        passkey::shuffle(chunk, &mut shuffle_state);
    }
    payload.resize(geom.appended_cells, key.filler);

    let placement = passkey::placement_permutation(key.placement_seed, geom.appended_cells);
    let mut appended = vec![0u32; geom.appended_cells];
    for (cell, &slot) in payload.into_iter().zip(placement.iter()) {
        appended[slot] = cell;
    }
    data.extend(appended);
    Matrix::new(geom.compound_rows(), geom.cols, geom.width, data)
}

/// Decodes a compound back to the original matrix.
///
/// The original row count is inferred from the compound's dimensions,
/// the rank cells are gathered through the same placement permutation,
/// and each chunk is rebuilt by unranking its sorted multiset — the
/// shuffle never needs to be undone, so any rearrangement of a chunk
/// decodes identically.
pub fn decode(compound: &Matrix, key: &Passkey) -> Result<Matrix> {
    check_width(compound, key)?;
    let original_rows = layout::infer_original_rows(
        compound.rows(),
        compound.cols(),
        key.chunk_len,
        key.width,
    )?;
    let geom = layout::compute_geometry(original_rows, compound.cols(), key.chunk_len, key.width)?;

    let (parent, index_region) = compound.data().split_at(original_rows * geom.cols);
    debug_assert_eq!(index_region.len(), geom.appended_cells);
    let placement = passkey::placement_permutation(key.placement_seed, geom.appended_cells);
    let cells: Vec<u32> = placement[..geom.rank_cells()]
        .iter()
        .map(|&slot| index_region[slot])
        .collect();

    let mut data = Vec::with_capacity(parent.len());
    for (chunk, cell_group) in parent
        .chunks_exact(key.chunk_len)
        .zip(cells.chunks_exact(geom.cells_per_index))
    {
        let rank = layout::decode_rank_cells(cell_group, &geom)?;
        let multiset = SortedMultiset::from(chunk);
        let count = perm_rank::arrangement_count(&multiset)?;
        if rank.get() > count {
            return Err(Error::Corrupt(format!(
                "extracted rank {rank} exceeds the {count} arrangements of its chunk"
            )));
        }
        data.extend(perm_rank::unrank(&multiset, rank, key.ordering)?);
    }
    Matrix::new(original_rows, geom.cols, geom.width, data)
}

/// Geometry the key would use for this matrix; handy for callers that
/// want to report layout numbers without encoding.
pub fn geometry_for(matrix: &Matrix, key: &Passkey) -> Result<GridGeometry> {
    check_width(matrix, key)?;
    layout::compute_geometry(matrix.rows(), matrix.cols(), key.chunk_len, key.width)
}
