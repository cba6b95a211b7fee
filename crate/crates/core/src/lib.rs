//! Exact embedded and relative embedded homology of hypergraphs.
//!
//! A hypergraph is a set of non-empty vertex sets that need not be closed
//! under taking faces. Its embedded homology is the homology of the largest
//! subcomplex of the simplicial chains of its closure that lives on its own
//! hyperedges. This crate computes that homology exactly over the integers,
//! the rationals and prime fields, together with the relative version for
//! pairs, the exact sequences relating them, a combinatorial topology on
//! sub-hypergraphs and persistence over filtrations built from it.
//!
//! The generic kernels ([`lattice`]) are written against the traits in
//! [`scalar`]; the aliases below fix the concrete exact types used by the
//! engine.

pub mod chain;
pub mod error;
pub mod fixtures;
pub mod golden;
pub mod homology;
pub mod hypergraph;
pub mod io;
pub mod lattice;
pub mod persistence;
pub mod random;
pub mod scalar;
pub mod sequences;
pub mod topology;

pub use error::{Error, Result};

/// Integer scalar used for every lattice computation.
pub type Int = num_bigint::BigInt;
/// Rational scalar used for exactness checks over `Q`.
pub type Rational = num_rational::BigRational;
/// Residues modulo a prime.
pub type Residue = scalar::Zp;
pub type IntMatrix = lattice::Matrix<Int>;
pub type RationalMatrix = lattice::Matrix<Rational>;
