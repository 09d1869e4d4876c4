//! Spectra of the hypergraph matrices: numeric eigenvalues, exact
//! characteristic polynomials, eigenvalue multiplicities and the
//! edge-deletion interlacing chains.

mod eigen;
mod exact;
mod interlacing;

pub use eigen::{eigenvalues_sym, spectrum_of, Spectrum};
pub use exact::{
    berkowitz, char_poly_exact, cofactor_exact, det_bareiss, det_exact, exact_nullity_at, is_totally_unimodular,
    rank_exact, rank_rational, CharPoly,
};
pub use interlacing::{interlacing_check, ChainLink, InterlacingReport};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::matrices::{float_matrix, integer_matrix, normalized_similar_rational, MatrixKind, SymMatrix};
use crate::scalar::Rational;

/// Default eigen residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Number of eigenvalues within `cluster_tol` of `target`.
pub fn multiplicity_of(spec: &Spectrum<f64>, target: f64, cluster_tol: f64) -> usize {
    spec.values.iter().filter(|&&v| (v - target).abs() <= cluster_tol).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub numeric: usize,
    pub exact: usize,
}

impl Multiplicity {
    pub fn agrees(&self) -> bool {
        self.numeric == self.exact
    }
}

/// Numeric multiplicity of an integer eigenvalue, cross-checked by
/// `k − rank(M − tI)`. Disagreement is reported as a numeric error.
pub fn multiplicity_checked(m: &SymMatrix<i64>, spec: &Spectrum<f64>, target: i64) -> Result<Multiplicity> {
    let numeric = multiplicity_of(spec, target as f64, spec.cluster_tol());
    let exact = exact_nullity_at(m, target);
    let mult = Multiplicity { numeric, exact };
    if !mult.agrees() {
        return Err(Error::NumericInput(format!(
            "eigenvalue {target}: clustered multiplicity {numeric} but exact nullity {exact}"
        )));
    }
    Ok(mult)
}

/// Spectrum of one of the five matrices of `h`.
pub fn matrix_spectrum(h: &Hypergraph, kind: MatrixKind, tol: f64) -> Result<Spectrum<f64>> {
    let mut s = spectrum_of(&float_matrix(h, kind), tol)?;
    if kind.is_integer() {
        s.source_kind = crate::scalar::ScalarKind::Integer;
    }
    Ok(s)
}

/// Exact characteristic polynomial of a matrix kind, as rationals.
///
/// Integer kinds are computed directly. For `UNL` the polynomial is taken
/// from `D⁺·U^L`, which is similar to `U^𝓛` (loopless input only).
pub fn kind_char_poly(h: &Hypergraph, kind: MatrixKind) -> Result<CharPoly<Rational>> {
    if kind.is_integer() {
        let p = char_poly_exact(&integer_matrix(h, kind)?)?;
        return Ok(CharPoly { coeffs: p.coeffs.into_iter().map(Rational::from_integer).collect() });
    }
    berkowitz(&normalized_similar_rational(h)?)
}

/// Integer characteristic polynomial of an integer kind.
pub fn integer_char_poly(h: &Hypergraph, kind: MatrixKind) -> Result<CharPoly<BigInt>> {
    char_poly_exact(&integer_matrix(h, kind)?)
}
