//! Exact construction and verification of the complete two-qubit MUB
//! catalog over GF(4).
//!
//! The five mutually unbiased bases of a two-qubit system correspond to
//! partitions of the 15 nonzero points of the phase space GF(4) x GF(4)
//! into 5 triples of mutually commuting Pauli operators. This crate
//! builds those partitions from seed points, solves a four-relation
//! trace system whose minimality is checked by exhaustion, and verifies
//! everything that makes a candidate a genuine MUB set: commutation
//! (predicate and matrix), partition, orthonormality, exact 1/4 cross
//! overlaps, and the 3-separable / 2-entangled signature. All
//! arithmetic is exact: GF(4) elements, Gaussian integers, and
//! rationals.
//!
//! Module layout:
//! - [`galois`]: GF(2^n) contexts, trace, self-dual coordinates.
//! - [`phase_space`]: points, the commutation predicate, table
//!   construction and canonicalization.
//! - [`solver`]: the trace system, solution labeling, the independence
//!   sweep, and the full catalog scan.
//! - [`pauli`]: exact operators, joint eigenbases, the MUB verifier.
//! - [`document`]: the JSON table format.
//! - [`cli`] (feature `cli`): the command-line tool.

pub mod document;
pub mod galois;
pub mod pauli;
pub mod phase_space;
pub mod solver;

#[cfg(feature = "cli")]
pub mod cli;
