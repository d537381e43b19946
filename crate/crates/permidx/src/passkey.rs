//! The shared secret and the deterministic pseudorandom machinery both
//! ends must reproduce bit for bit: an FNV-1a seed derivation, a
//! SplitMix64 stream, and a Fisher-Yates shuffle built on it.
//!
//! Everything here is fixed by the key-file format: the same secret
//! yields the same seeds, placement, and shuffles on every platform.
//! The index draw is a plain modulo (no rejection sampling); the tiny
//! bias does not matter for an obfuscation codec, which this is — none
//! of this provides cryptographic protection.

use crate::error::{Error, Result};
use crate::matrix::Width;
use crate::perm_rank::OrderingMode;

pub const KEY_MAGIC: &[u8; 4] = b"PDXK";
pub const KEY_VERSION: u8 = 1;
/// Serialized key size: magic, version, ordering, column constant,
/// width, 4-byte filler, two 8-byte seeds.
pub const KEY_LEN: usize = 28;

const FNV_OFFSET_BASIS: u64 = 0xCBF2_9CE4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01B3;

/// 64-bit FNV-1a over a byte sequence.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET_BASIS, |hash, &byte| {
        (hash ^ byte as u64).wrapping_mul(FNV_PRIME)
    })
}

/// A SplitMix64 generator. Identical seeds produce identical streams
/// everywhere; the state is a plain value, so concurrent consumers
/// each take their own copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrngState(u64);

impl PrngState {
    pub fn new(seed: u64) -> Self {
        PrngState(seed)
    }

    /// One SplitMix64 step.
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Fisher-Yates shuffle driven by `state`: positions n-1 down to 1
/// each swap with a modulo-drawn partner at or below them.
pub fn shuffle<T>(items: &mut [T], state: &mut PrngState) {
    for i in (1..items.len()).rev() {
        let j = (state.next_u64() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

/// The permutation of `0..n` produced by shuffling the identity.
pub fn fisher_yates(n: usize, state: &mut PrngState) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    shuffle(&mut perm, state);
    perm
}

/// The secret record shared by encoder and decoder. Dimension
/// independent: one passkey works for any matrix whose element count
/// the column constant divides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Passkey {
    pub ordering: OrderingMode,
    /// Column constant: chunk length, 2..=9.
    pub chunk_len: usize,
    pub width: Width,
    /// Value written into appended-region slots that hold no rank cell.
    pub filler: u32,
    /// Seeds the placement permutation over appended-region slots.
    pub placement_seed: u64,
    /// Seeds the single stream that shuffles every chunk during encode.
    pub shuffle_seed: u64,
}

impl Passkey {
    pub fn new(
        ordering: OrderingMode,
        chunk_len: usize,
        width: Width,
        filler: u32,
        placement_seed: u64,
        shuffle_seed: u64,
    ) -> Result<Self> {
        if !(crate::perm_rank::MIN_CHUNK_LEN..=crate::perm_rank::MAX_CHUNK_LEN)
            .contains(&chunk_len)
        {
            return Err(Error::ChunkLength(chunk_len));
        }
        if !width.fits(filler) {
            return Err(Error::value_too_wide(filler as u64, width));
        }
        Ok(Passkey {
            ordering,
            chunk_len,
            width,
            filler,
            placement_seed,
            shuffle_seed,
        })
    }
}

/// Derives both seeds from a passphrase by hashing it with a trailing
/// domain-separation byte: 0x01 for placement, 0x02 for shuffling.
pub fn derive_passkey(
    secret: &str,
    chunk_len: usize,
    width: Width,
    ordering: OrderingMode,
    filler: u32,
) -> Result<Passkey> {
    if secret.is_empty() {
        return Err(Error::EmptySecret);
    }
    let seed_for = |domain: u8| {
        let mut bytes = secret.as_bytes().to_vec();
        bytes.push(domain);
        fnv1a64(&bytes)
    };
    Passkey::new(
        ordering,
        chunk_len,
        width,
        filler,
        seed_for(0x01),
        seed_for(0x02),
    )
}

/// Where each rank cell lands: global cell k of the index payload is
/// stored at appended-region slot `perm[k]`, and slots mapped from
/// k >= rank_cells receive the filler.
pub fn placement_permutation(placement_seed: u64, slots: usize) -> Vec<usize> {
    fisher_yates(slots, &mut PrngState::new(placement_seed))
}

/// Serializes a passkey to the fixed 28-byte PDXK layout.
pub fn serialize_passkey(key: &Passkey) -> Vec<u8> {
    let mut out = Vec::with_capacity(KEY_LEN);
    out.extend_from_slice(KEY_MAGIC);
    out.push(KEY_VERSION);
    out.push(match key.ordering {
        OrderingMode::ReverseLex => 0,
        OrderingMode::Lex => 1,
    });
    out.push(key.chunk_len as u8);
    out.push(key.width.bits() as u8);
    out.extend_from_slice(&key.filler.to_le_bytes());
    out.extend_from_slice(&key.placement_seed.to_le_bytes());
    out.extend_from_slice(&key.shuffle_seed.to_le_bytes());
    debug_assert_eq!(out.len(), KEY_LEN);
    out
}

/// Parses a PDXK key file, validating every field range.
pub fn parse_passkey(bytes: &[u8]) -> Result<Passkey> {
    if bytes.len() != KEY_LEN {
        return Err(Error::KeyFormat(format!(
            "expected {KEY_LEN} bytes, got {}",
            bytes.len()
        )));
    }
    if &bytes[0..4] != KEY_MAGIC {
        return Err(Error::KeyFormat("bad magic, not a PDXK key file".into()));
    }
    if bytes[4] != KEY_VERSION {
        return Err(Error::KeyFormat(format!(
            "unsupported version {}",
            bytes[4]
        )));
    }
    let ordering = match bytes[5] {
        0 => OrderingMode::ReverseLex,
        1 => OrderingMode::Lex,
        other => {
            return Err(Error::KeyFormat(format!("bad ordering byte {other}")));
        }
    };
    let chunk_len = bytes[6] as usize;
    let width = Width::from_bits(bytes[7] as u32)
        .map_err(|_| Error::KeyFormat(format!("bad width byte {}", bytes[7])))?;
    let filler = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    let placement_seed = u64::from_le_bytes(bytes[12..20].try_into().unwrap());
    let shuffle_seed = u64::from_le_bytes(bytes[20..28].try_into().unwrap());
    Passkey::new(
        ordering,
        chunk_len,
        width,
        filler,
        placement_seed,
        shuffle_seed,
    )
    .map_err(|e| Error::KeyFormat(e.to_string()))
}
