//! Invariants built on the matrices and paths: spanning pairs, the Cheeger
//! constant, subset distances, the bound suite, enumeration and cospectral
//! scans.

mod bounds;
mod cheeger;
mod cospectral;
mod enumerate;
mod spanning;

pub use bounds::{bound_suite, BoundRecord, RecordStatus, VerificationReport, FLOAT_TOL};
pub use cheeger::{cheeger_constant, cheeger_constant_capped, subset_distance, CheegerResult, DEFAULT_CHEEGER_CAP};
pub use cospectral::{cospectral_scan, CospectralCatalog, CospectralGroup};
pub use enumerate::{
    canonical_form, enumerate_hypergraphs, is_isomorphic, standard_corpus, CanonicalForm, EnumerationSpec,
    MAX_ENUM_VERTICES,
};
pub use spanning::{
    enumerate_exact_spanning_pairs, exact_spanning_pairs_count, spanning_product, SpanningPair,
};

use num_traits::One;
use serde::Serializer;

use crate::scalar::Rational;

/// Rationals as `"p/q"`, or just `"p"` for integers.
pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    if r.denom().is_one() {
        s.serialize_str(&r.numer().to_string())
    } else {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }
}
