//! Synchronous nonlocal games and the algebra around them.
//!
//! The crate builds synchronous games (graph homomorphism, graph isomorphism,
//! synchronous binary-constraint-system games), their finitely presented game
//! `*`-algebras, and decides (non)triviality of those algebras with a
//! degree-truncated noncommutative rewriting engine over exact rationals.
//! Alongside that it verifies finite-dimensional quantum strategies, checks the
//! quantum adjacency axioms of quantum graphs, and computes exact spectral and
//! degree certificates for classical graphs.
//!
//! Module map:
//!
//! - [`graph`]: classical graphs, exact characteristic polynomials,
//!   automorphisms and isomorphism search, named constructions.
//! - [`qgraph`]: quantum sets, GNS structure tensors, quantum adjacency axioms
//!   and the quantum automorphism / isomorphism presentations.
//! - [`game`]: synchronous games as predicate tables, deterministic search and
//!   strategy verification.
//! - [`ncalg`]: finitely presented `*`-algebras, normal forms, completion,
//!   triviality certificates and homomorphism checks.
//! - [`game_algebra`]: the game algebra builders and the explicit
//!   homomorphisms between the BCS, isomorphism and homomorphism games.
//! - [`bcs`]: linear systems over `Z_2`, their games and graphs, and the
//!   magic-square instance.
//! - [`certificates`]: simple-spectrum, degree and isospectrality obstructions.
//! - [`repro`]: one-shot reproductions of the named results.

pub mod bcs;
pub mod certificates;
pub mod game;
pub mod game_algebra;
pub mod graph;
pub mod ncalg;
pub mod par;
pub mod qgraph;
pub mod repro;

mod error;

pub use error::Error;

/// Exact rational scalar used throughout the algebraic code.
pub type Rational = num_rational::BigRational;
