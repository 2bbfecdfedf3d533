//! The narrative guide, compiled straight from the book chapters in
//! `book/src/` so that every code block in the book runs under
//! `cargo test --doc` and cannot drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-linear-algebra.md")]
pub mod exact_linear_algebra {}

#[doc = include_str!("../../../book/src/complexes-and-homology.md")]
pub mod complexes_and_homology {}

#[doc = include_str!("../../../book/src/spaces.md")]
pub mod spaces {}

#[doc = include_str!("../../../book/src/exact-sequences.md")]
pub mod exact_sequences {}

#[doc = include_str!("../../../book/src/axiom-harness.md")]
pub mod axiom_harness {}

#[doc = include_str!("../../../book/src/cli-and-corpus.md")]
pub mod cli_and_corpus {}
