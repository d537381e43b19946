//! Reversible matrix obfuscation through hidden permutation ranks.
//!
//! A matrix is split into fixed-width chunks. Each chunk is replaced
//! by a pseudorandom rearrangement of its own elements, and the
//! chunk's *permutation rank* — its position in the ordered listing of
//! all distinct arrangements of those elements — is stored in rows
//! appended to the matrix, scattered to positions only the passkey can
//! reproduce. Decoding gathers the ranks and restores every chunk
//! exactly; an 8-bit image encodes to a slightly taller 8-bit image
//! and back without losing a bit.
//!
//! This is obfuscation, not encryption: the transform hides structure
//! from casual inspection but offers no cryptographic guarantees.
//!
//! ```
//! use permidx::{codec, derive_passkey, Matrix, OrderingMode, Width};
//!
//! # fn main() -> Result<(), permidx::Error> {
//! let key = derive_passkey("my secret", 2, Width::W8, OrderingMode::ReverseLex, 0)?;
//! let matrix = Matrix::new(2, 2, Width::W8, vec![1, 3, 4, 2])?;
//!
//! let compound = codec::encode(&matrix, &key)?;
//! assert_eq!(compound.rows(), 3); // one appended index row
//! assert_eq!(codec::decode(&compound, &key)?, matrix);
//! # Ok(())
//! # }
//! ```

pub mod cli;
pub mod codec;
mod error;
pub mod layout;
mod matrix;
pub mod matrix_io;
pub mod passkey;
pub mod perm_rank;
pub mod stats;

pub use error::{Error, Result};
pub use matrix::{Matrix, Width};
pub use passkey::{derive_passkey, Passkey};
pub use perm_rank::{OrderingMode, RankIndex, SortedMultiset};

// The guide's code blocks double as doc-tests; `cargo test --doc`
// keeps the book in sync with the library.
#[cfg(doctest)]
mod book;
