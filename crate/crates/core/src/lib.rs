//! Exact spectral theory of matrix convolution operators on lattices over
//! fields of positive characteristic.
//!
//! The library builds finite fields GF(p^m) deterministically, enumerates the
//! character group of a finite lattice quotient as points on an algebraic
//! torus, and uses the discrete Fourier transform to reduce a convolution
//! operator to a family of finite matrices ("symbols"), one per character.
//! From the symbols it computes kernels of harmonic equations, full spectral
//! decompositions with Jordan structure, descent of solutions to a base field
//! via Frobenius traces, and fragmentations of operators along finite-index
//! sublattices (the voltage-graph picture of periodic graphs).
//!
//! Everything is exact: no floating point, no randomness in library code, and
//! all reported bases and orderings are deterministic. An independent dense
//! brute-force oracle ([`oracle`]) recomputes kernels and Jordan data from the
//! quotient matrix directly, so the two paths can be checked against each
//! other on any instance.

pub mod algebra;
pub mod arith;
pub mod descent;
pub mod error;
pub mod field;
pub mod files;
pub mod fragment;
pub mod lattice;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod scalar;
pub(crate) mod unipoly;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use lattice::{QuotientData, Sublattice, TorusPoint};
