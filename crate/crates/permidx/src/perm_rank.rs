//! Ranking and unranking of multiset arrangements.
//!
//! Every chunk of 2..=9 elements has a finite set of distinct
//! arrangements. Listed under a total order, each arrangement gets a
//! 1-based position: its rank. [`rank`] finds that position without
//! enumerating the list, [`unrank`] walks back from a position to the
//! arrangement, and [`enumerate_arrangements`] builds the full list by
//! brute force — it exists as the oracle the fast paths are tested
//! against, and for inspecting small cases.
//!
//! Duplicate elements are handled throughout: arrangements that are
//! equal as sequences count once, so a chunk of all-equal values has
//! exactly one arrangement and rank 1.

use crate::error::{Error, Result};

/// Chunk lengths outside this range are rejected everywhere.
pub const MIN_CHUNK_LEN: usize = 2;
pub const MAX_CHUNK_LEN: usize = 9;

/// n! for n in 0..=9.
pub(crate) const FACTORIALS: [u64; 10] =
    [1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880];

/// The total order used to list arrangements.
///
/// `ReverseLex` is the canonical codec ordering: sequences comparing
/// larger come first, so `[3,2,1]` is rank 1 and `[1,2,3]` is last.
/// `Lex` is the plain ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OrderingMode {
    #[default]
    ReverseLex,
    Lex,
}

impl std::fmt::Display for OrderingMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderingMode::ReverseLex => write!(f, "reverse-lex"),
            OrderingMode::Lex => write!(f, "lex"),
        }
    }
}

/// A multiset of elements kept in ascending order. Construction sorts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedMultiset(Vec<u32>);

impl SortedMultiset {
    pub fn new(mut elements: Vec<u32>) -> Self {
        elements.sort_unstable();
        SortedMultiset(elements)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<&[u32]> for SortedMultiset {
    fn from(elements: &[u32]) -> Self {
        SortedMultiset::new(elements.to_vec())
    }
}

/// 1-based position of an arrangement in the ordered listing of its
/// multiset's distinct arrangements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankIndex(u64);

impl RankIndex {
    pub fn new(value: u64) -> Result<Self> {
        if value == 0 {
            return Err(Error::RankRange {
                rank: 0,
                max: FACTORIALS[MAX_CHUNK_LEN],
            });
        }
        Ok(RankIndex(value))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for RankIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check_len(len: usize) -> Result<()> {
    if !(MIN_CHUNK_LEN..=MAX_CHUNK_LEN).contains(&len) {
        return Err(Error::ChunkLength(len));
    }
    Ok(())
}

/// Distinct values of a multiset with their multiplicities, ascending.
fn value_counts(sorted: &[u32]) -> Vec<(u32, u32)> {
    let mut counts: Vec<(u32, u32)> = Vec::with_capacity(sorted.len());
    for &v in sorted {
        match counts.last_mut() {
            Some((value, count)) if *value == v => *count += 1,
            _ => counts.push((v, 1)),
        }
    }
    counts
}

fn multinomial(counts: &[(u32, u32)]) -> u64 {
    let n: u32 = counts.iter().map(|&(_, c)| c).sum();
    let mut total = FACTORIALS[n as usize];
    for &(_, c) in counts {
        total /= FACTORIALS[c as usize];
    }
    total
}

/// Number of distinct arrangements of the multiset: n! / prod(m_i!).
///
/// At most 9! = 362880, so the count always fits in a `u64`.
pub fn arrangement_count(ms: &SortedMultiset) -> Result<u64> {
    check_len(ms.len())?;
    Ok(multinomial(&value_counts(ms.as_slice())))
}

/// True when `candidate` is listed before `current` under `ordering`,
/// deciding on the first element alone (the tail is symmetric).
fn sorts_earlier(candidate: u32, current: u32, ordering: OrderingMode) -> bool {
    match ordering {
        OrderingMode::ReverseLex => candidate > current,
        OrderingMode::Lex => candidate < current,
    }
}

/// 1-based rank of `arr` among the distinct arrangements of its own
/// multiset, under `ordering`. Runs in O(x^2) for chunk length x — no
/// enumeration.
///
/// At each position, every still-available element that would sort
/// earlier than the one actually used contributes the arrangement
/// count of the remainder; those counts sum to the number of whole
/// arrangements listed before `arr`.
pub fn rank(arr: &[u32], ordering: OrderingMode) -> Result<RankIndex> {
    check_len(arr.len())?;
    let sorted = SortedMultiset::from(arr);
    let mut counts = value_counts(sorted.as_slice());
    // Arrangements of the elements not yet consumed.
    let mut remaining_arrangements = multinomial(&counts);
    let mut remaining_len = arr.len() as u64;
    let mut preceding = 0u64;
    for &element in arr {
        for &(value, count) in counts.iter() {
            if count > 0 && sorts_earlier(value, element, ordering) {
                // Fixing `value` at this position leaves
                // remaining_arrangements * count / remaining_len
                // arrangements of the tail (always an exact integer).
                preceding += remaining_arrangements * count as u64 / remaining_len;
            }
        }
        let slot = counts
            .iter_mut()
            .find(|(value, count)| *value == element && *count > 0)
            .expect("element drawn from its own multiset");
        remaining_arrangements = remaining_arrangements * slot.1 as u64 / remaining_len;
        slot.1 -= 1;
        remaining_len -= 1;
    }
    RankIndex::new(preceding + 1)
}

/// Arrangement at 1-based position `idx` in the ordered listing of the
/// multiset's distinct arrangements. Inverse of [`rank`]; same
/// polynomial cost.
pub fn unrank(ms: &SortedMultiset, idx: RankIndex, ordering: OrderingMode) -> Result<Vec<u32>> {
    check_len(ms.len())?;
    let total = multinomial(&value_counts(ms.as_slice()));
    if idx.get() > total {
        return Err(Error::RankRange {
            rank: idx.get(),
            max: total,
        });
    }
    let mut counts = value_counts(ms.as_slice());
    let mut remaining_arrangements = total;
    let mut remaining_len = ms.len() as u64;
    let mut skip = idx.get() - 1;
    let mut out = Vec::with_capacity(ms.len());
    for _ in 0..ms.len() {
        let order: Box<dyn Iterator<Item = usize>> = match ordering {
            OrderingMode::Lex => Box::new(0..counts.len()),
            OrderingMode::ReverseLex => Box::new((0..counts.len()).rev()),
        };
        for i in order {
            let (value, count) = counts[i];
            if count == 0 {
                continue;
            }
            let with_value_first = remaining_arrangements * count as u64 / remaining_len;
            if skip < with_value_first {
                out.push(value);
                counts[i].1 -= 1;
                remaining_arrangements = with_value_first;
                remaining_len -= 1;
                break;
            }
            skip -= with_value_first;
        }
    }
    debug_assert_eq!(out.len(), ms.len());
    Ok(out)
}

/// Every distinct arrangement of the multiset, listed under `ordering`.
///
/// Deliberately brute force: all n! position permutations are
/// generated, deduplicated, and comparison-sorted, sharing nothing
/// with the counting walk in [`rank`]/[`unrank`]. Cost is O(n! * n),
/// fine for the supported n <= 9.
pub fn enumerate_arrangements(
    ms: &SortedMultiset,
    ordering: OrderingMode,
) -> Result<Vec<Vec<u32>>> {
    check_len(ms.len())?;
    let mut distinct = std::collections::BTreeSet::new();
    let mut scratch = ms.as_slice().to_vec();
    let n = scratch.len();
    permute_into(&mut scratch, n, &mut distinct);
    let ascending: Vec<Vec<u32>> = distinct.into_iter().collect();
    Ok(match ordering {
        OrderingMode::Lex => ascending,
        OrderingMode::ReverseLex => ascending.into_iter().rev().collect(),
    })
}

/// Heap's algorithm over the first `k` positions, collecting every
/// full permutation it visits.
fn permute_into(items: &mut Vec<u32>, k: usize, out: &mut std::collections::BTreeSet<Vec<u32>>) {
    if k <= 1 {
        out.insert(items.clone());
        return;
    }
    for i in 0..k {
        permute_into(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}
