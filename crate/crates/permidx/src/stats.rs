//! Quantitative reports: how implausible brute-force unscrambling is,
//! and how much the compound grows.

use crate::error::Result;
use crate::layout::{self, GridGeometry};
use crate::matrix::{Matrix, Width};
use crate::perm_rank::{arrangement_count, SortedMultiset};

/// Chance of guessing every chunk's original arrangement at once.
#[derive(Debug, Clone, PartialEq)]
pub struct GuessReport {
    /// Distinct-arrangement count of each chunk, in chunk order.
    pub chunk_counts: Vec<u64>,
    /// log10 of the total probability; always <= 0.
    pub log10_probability: f64,
    /// Linear probability, or `None` when it underflows below 1e-300.
    pub probability: Option<f64>,
}

impl GuessReport {
    /// Per-chunk probability when every chunk has the same count.
    pub fn uniform_chunk_probability(&self) -> Option<f64> {
        let first = *self.chunk_counts.first()?;
        self.chunk_counts
            .iter()
            .all(|&c| c == first)
            .then(|| 1.0 / first as f64)
    }
}

/// Product over chunks of 1/arrangement_count, computed in log domain
/// so megapixel matrices report a finite exponent instead of zero.
pub fn guess_probability(matrix: &Matrix, chunk_len: usize) -> Result<GuessReport> {
    let chunk_counts: Vec<u64> = crate::codec::chunk_matrix(matrix, chunk_len)?
        .into_iter()
        .map(|chunk| arrangement_count(&SortedMultiset::from(chunk)))
        .collect::<Result<_>>()?;
    let log10_probability = -chunk_counts.iter().map(|&c| (c as f64).log10()).sum::<f64>();
    let probability = (log10_probability >= -300.0).then(|| 10f64.powf(log10_probability));
    Ok(GuessReport {
        chunk_counts,
        log10_probability,
        probability,
    })
}

/// Size cost of encoding: the appended index region relative to the
/// original element count.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub geometry: GridGeometry,
    /// (rows + appended_rows) * cols / (rows * cols); always > 1.
    pub ratio: f64,
}

pub fn expansion_report(
    rows: usize,
    cols: usize,
    chunk_len: usize,
    width: Width,
) -> Result<ExpansionReport> {
    let geometry = layout::compute_geometry(rows, cols, chunk_len, width)?;
    let ratio = (geometry.compound_rows() * cols) as f64 / (rows * cols) as f64;
    Ok(ExpansionReport { geometry, ratio })
}
