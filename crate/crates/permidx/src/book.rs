//! Doc-test shims for the guide in `book/`. Each chapter is included
//! as module documentation so its Rust code blocks compile and run
//! under `cargo test --doc`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/permutation-ranks.md")]
pub mod permutation_ranks {}

#[doc = include_str!("../../../book/src/chunk-geometry.md")]
pub mod chunk_geometry {}

#[doc = include_str!("../../../book/src/passkeys.md")]
pub mod passkeys {}

#[doc = include_str!("../../../book/src/encoding-and-decoding.md")]
pub mod encoding_and_decoding {}

#[doc = include_str!("../../../book/src/file-formats.md")]
pub mod file_formats {}

#[doc = include_str!("../../../book/src/guessing-and-growth.md")]
pub mod guessing_and_growth {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
