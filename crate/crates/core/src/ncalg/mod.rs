//! Finitely presented `*`-algebras over the rationals.
//!
//! Elements are [`NCPoly`] values: exact linear combinations of words in a
//! generator [`Alphabet`] ordered degree-lexicographically. A
//! [`Presentation`] lists relations; [`complete`] runs a degree-bounded
//! completion into a [`RewriteSystem`] whose [`RewriteSystem::normal_form`]
//! decides membership for everything the completion reached. On top of that
//! sit [`triviality_status`], [`verify_homomorphism`] and
//! [`hereditary_closure_step`].

mod completion;
mod derivation;
mod hom;
mod parser;
mod poly;
mod presentation;
mod rewrite;
mod triviality;
mod word;

use thiserror::Error;

pub use completion::{complete, CompletionOptions};
pub use derivation::{Certificate, Derivation, Part, ReplayError, Source};
pub use hom::{hereditary_closure_step, verify_homomorphism, HomEntry, HomReport};
pub use parser::{parse_poly, parse_presentation};
pub use poly::NCPoly;
pub use presentation::Presentation;
pub use rewrite::{RewriteSystem, Rule};
pub use triviality::{find_boolean_character, triviality_status, Triviality, TrivialityReport};
pub use word::{Alphabet, Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown letter {0:?}")]
    UnknownLetter(String),

    #[error("letter {0:?} declared twice")]
    DuplicateLetter(String),

    #[error("invalid letter name {0:?}")]
    BadName(String),

    #[error("adjoint {0:?} declared without its base letter")]
    UnpairedAdjoint(String),

    #[error("alphabet limited to 65536 letters")]
    TooManyLetters,

    #[error("expected {expected} letters, got {got}")]
    AlphabetMismatch { expected: usize, got: usize },

    #[error("image of {0:?} is not compatible with the star map")]
    BadStarImage(String),

    #[error("invalid rewrite system: {0}")]
    Json(String),
}

pub type NcResult<T> = Result<T, NcError>;
