//! Exact-arithmetic toolkit for finite-dimensional Lie algebras over the
//! rationals: structure constants and canonical series, the two canonical
//! Abelian ideals, Chevalley-Eilenberg cochains, Abelian extensions built
//! from cocycle data, invariant-metric decisions, and the classification of
//! the Heisenberg-quotient family.
//!
//! Everything is computed over Q with arbitrary precision; no floating point
//! is used anywhere. All values are immutable after construction and every
//! operation is a pure function.

pub mod cechain;
pub mod exactlin;
pub mod extension;
pub mod heis;
pub mod liecore;
pub mod quadratic;

pub use exactlin::{Matrix, Rational, Subspace};
pub use liecore::LieAlgebra;
