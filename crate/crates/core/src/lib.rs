//! Spectral analysis of hypergraphs through their unified matrices.
//!
//! A hypergraph `H` is indexed by `I(H)`, the vertex singletons together with
//! every part of every 2-partition of every edge. The crate builds the unified
//! matrix `U`, its Laplacian `U^L`, signless Laplacian `U^Q` and normalized
//! Laplacian `U^𝓛` over that index, computes spectra both numerically and
//! exactly, and derives the combinatorial invariants those spectra control:
//! components of the associated graph, constrained path distances, spanning
//! trees and the Cheeger constant.
//!
//! Matrix code is generic over [`Scalar`]; the aliases below fix the common
//! choices.

pub mod assoc;
pub mod error;
pub mod format;
pub mod hypergraph;
pub mod invariants;
pub mod matrices;
pub mod paths;
pub mod scalar;
pub mod spectra;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, PartSet, Vertex};
pub use matrices::{DenseMatrix, MatrixKind, SymMatrix};
pub use scalar::{Rational, Scalar, ScalarKind};

/// Exact integer matrix (`U`, `U^D`, `U^L`, `U^Q`).
pub type IntMatrix = SymMatrix<i64>;
/// Arbitrary-precision integer matrix.
pub type BigIntMatrix = SymMatrix<num_bigint::BigInt>;
/// Exact rational matrix.
pub type RatMatrix = SymMatrix<Rational>;
/// Double-precision matrix (`U^𝓛` and numeric work).
pub type FloatMatrix = SymMatrix<f64>;
/// Single-precision matrix.
pub type Float32Matrix = SymMatrix<f32>;
/// Double-precision spectrum.
pub type FloatSpectrum = spectra::Spectrum<f64>;
/// Integer characteristic polynomial.
pub type IntCharPoly = spectra::CharPoly<num_bigint::BigInt>;
