//! Enumeration and analysis of Ulam words.
//!
//! The words `0` and `1` are Ulam; a longer binary word is Ulam when it can be
//! written as a concatenation of two distinct Ulam words in exactly one way.
//! [`UlamTable`] enumerates them length by length with a bitset sieve,
//! [`oracle`] recomputes them independently, [`patterns`] holds closed-form
//! rules for special families and [`stats`] the density, gap and residue
//! statistics.

pub mod bitset;
pub mod engine;
pub mod error;
pub mod io;
pub mod oracle;
pub mod patterns;
pub mod stats;
pub mod word;

pub use bitset::Bitset;
pub use engine::{LevelSet, UlamTable};
pub use error::{Result, UlamError};
pub use word::{Code, Word};
