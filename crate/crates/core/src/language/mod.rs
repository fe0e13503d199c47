//! Regular languages over structured alphabets.
//!
//! A family of base alphabets is registered once; each subset of them (a
//! [`SieveIndex`](crate::sieve::SieveIndex)) determines an alphabet, either
//! the product of the components (synchronous composition) or their disjoint
//! union (asynchronous composition). Languages are total DFAs over such an
//! alphabet, so complement is a flip of the accepting set and each per-index
//! family is a Boolean lattice.
//!
//! Languages at different indices meet at the union of their indices:
//! synchronous languages are lifted (every symbol is paired with every symbol
//! of the missing components), asynchronous ones are expanded (foreign
//! symbols may be inserted anywhere). Expanding `{ε}` yields every word over
//! the foreign symbols.

mod alphabet;
pub mod corpus;
mod dfa;
mod doc;
mod ops;
mod sieve;

use thiserror::Error;

pub use alphabet::{BaseAlphabet, Kind, Registry, StructuredAlphabet, SymbolLabel};
pub use dfa::{Dfa, Word};
pub use doc::{AlphabetDoc, ComponentDoc, DfaDoc, LanguageDoc, SieveDoc, WordsDoc};
pub use ops::{expand, expand_to, lift, reorder, reorder_canonical};
pub use sieve::{LanguageSieve, SampleConfig};

use crate::heap::HeapError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LanguageError {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },
    #[error("alphabet {0} is not registered")]
    UnregisteredAlphabet(String),
    #[error("alphabet {0} is registered twice")]
    DuplicateAlphabet(String),
    #[error("symbol {0} appears in more than one place")]
    DuplicateSymbol(String),
    #[error("alphabet {0} has no symbols")]
    EmptyAlphabet(String),
    #[error("expected a {expected} alphabet, found {found}")]
    KindMismatch { expected: Kind, found: Kind },
    #[error("invalid component permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("lifting needs at least one extra component")]
    EmptyLifting,
    #[error("component {0} is already part of the alphabet")]
    OverlappingLift(String),
    #[error("unknown symbol {0}")]
    UnknownSymbol(String),
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("index {from} is not below {to}")]
    NotBelow { from: String, to: String },
}

impl From<LanguageError> for HeapError {
    fn from(e: LanguageError) -> Self {
        HeapError::undefined("language", e)
    }
}

/// How languages over different indices are brought together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Lock-step composition over tuple alphabets, concretized by lifting.
    Sync,
    /// Interleaving composition over union alphabets, concretized by expansion.
    Async,
}

impl Mode {
    pub fn kind(self) -> Kind {
        match self {
            Mode::Sync => Kind::Tuple,
            Mode::Async => Kind::Union,
        }
    }

    pub fn of_kind(kind: Kind) -> Mode {
        match kind {
            Kind::Tuple => Mode::Sync,
            Kind::Union => Mode::Async,
        }
    }
}
