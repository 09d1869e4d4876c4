//! Grouping hypergraphs by characteristic polynomial and splitting the
//! groups by isomorphism.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::emit_hypergraph;
use crate::hypergraph::Hypergraph;
use crate::matrices::MatrixKind;
use crate::spectra::kind_char_poly;

use super::enumerate::{canonical_form, CanonicalForm};

/// Non-isomorphic hypergraphs sharing one characteristic polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct CospectralGroup {
    /// Coefficients from the leading one down, as exact rationals.
    pub char_poly: Vec<String>,
    pub polynomial: String,
    /// Text encoding of one canonical representative per isomorphism class.
    pub members: Vec<String>,
    /// Family positions of every instance in each class.
    pub instances: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CospectralCatalog {
    pub kind: MatrixKind,
    pub scanned: usize,
    pub distinct_polynomials: usize,
    /// Only groups with at least two isomorphism classes.
    pub groups: Vec<CospectralGroup>,
}

impl CospectralCatalog {
    /// Every unordered pair of non-isomorphic cospectral representatives.
    pub fn pairs(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        for g in &self.groups {
            for i in 0..g.members.len() {
                for j in i + 1..g.members.len() {
                    out.push((g.members[i].as_str(), g.members[j].as_str()));
                }
            }
        }
        out
    }
}

/// Groups `family` by the exact characteristic polynomial of `kind`.
///
/// `U^𝓛` is compared through the exact polynomial of `D⁺·U^L`, so every
/// kind is compared exactly. Isomorphism is decided by brute-force
/// canonical forms, which limits members to eight vertices.
pub fn cospectral_scan(family: &[Hypergraph], kind: MatrixKind) -> Result<CospectralCatalog> {
    if kind == MatrixKind::UD {
        return Err(Error::InvalidInput("cospectral scans use U, UL, UQ or UNL".into()));
    }
    let keyed: Vec<(Vec<String>, String, CanonicalForm)> = family
        .par_iter()
        .map(|h| {
            let p = kind_char_poly(h, kind)?;
            let coeffs = p.coeffs.iter().map(|c| c.to_string()).collect();
            Ok((coeffs, p.to_string(), canonical_form(h)?))
        })
        .collect::<Result<_>>()?;

    let mut by_poly: BTreeMap<&Vec<String>, (String, BTreeMap<&CanonicalForm, Vec<usize>>)> = BTreeMap::new();
    for (i, (coeffs, shown, canon)) in keyed.iter().enumerate() {
        let entry = by_poly.entry(coeffs).or_insert_with(|| (shown.clone(), BTreeMap::new()));
        entry.1.entry(canon).or_default().push(i);
    }
    let distinct_polynomials = by_poly.len();
    let groups = by_poly
        .into_iter()
        .filter(|(_, (_, classes))| classes.len() >= 2)
        .map(|(coeffs, (shown, classes))| CospectralGroup {
            char_poly: coeffs.clone(),
            polynomial: shown,
            members: classes.keys().map(|c| emit_hypergraph(&c.hypergraph())).collect(),
            instances: classes.into_values().collect(),
        })
        .collect();
    Ok(CospectralCatalog { kind, scanned: family.len(), distinct_polynomials, groups })
}
