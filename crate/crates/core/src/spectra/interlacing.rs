//! Eigenvalue chains under deletion of `r` copies of an edge, for `U^L`
//! and `U^Q`, when the index family is unchanged by the deletion.

use serde::Serialize;

use crate::error::Result;
use crate::hypergraph::{index_set, Hypergraph, PartSet};
use crate::matrices::{unified_laplacian, unified_signless_laplacian, SymMatrix};

use super::eigen::spectrum_of;

const CHAIN_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize)]
pub struct ChainLink {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct InterlacingReport {
    pub applicable: bool,
    pub reason: Option<String>,
    /// `"pair"` for a 2-edge, `"shifted"` otherwise.
    pub branch: &'static str,
    pub laplacian_chain: Vec<ChainLink>,
    pub signless_chain: Vec<ChainLink>,
    pub laplacian_holds: bool,
    pub signless_holds: bool,
    /// Smallest step `next − previous` over both chains.
    pub min_slack: f64,
}

impl InterlacingReport {
    pub fn holds(&self) -> bool {
        !self.applicable || (self.laplacian_holds && self.signless_holds)
    }

    fn inapplicable(reason: String) -> Self {
        InterlacingReport {
            applicable: false,
            reason: Some(reason),
            branch: "",
            laplacian_chain: Vec::new(),
            signless_chain: Vec::new(),
            laplacian_holds: true,
            signless_holds: true,
            min_slack: 0.0,
        }
    }
}

/// Interleaves the two spectra from the bottom up, adding `step·(k − j)`
/// to the `j`-th pair (`step = 0` gives plain interlacing).
fn chain(full: &[f64], deleted: &[f64], step: f64, sym: &str) -> Vec<ChainLink> {
    let k = full.len();
    let mut out = Vec::with_capacity(2 * k);
    for j in (1..=k).rev() {
        let shift = step * (k - j) as f64;
        let suffix = if shift > 0.0 { format!(" + {}", shift) } else { String::new() };
        out.push(ChainLink { label: format!("{sym}_{j}(H-e^r){suffix}"), value: deleted[j - 1] + shift });
        out.push(ChainLink { label: format!("{sym}_{j}(H){suffix}"), value: full[j - 1] + shift });
    }
    out
}

fn monotone(links: &[ChainLink]) -> (bool, f64) {
    let mut slack = f64::INFINITY;
    for w in links.windows(2) {
        slack = slack.min(w[1].value - w[0].value);
    }
    (slack >= -CHAIN_TOL, if slack.is_finite() { slack } else { 0.0 })
}

/// Checks both eigenvalue chains for deleting `r` copies of `e`.
///
/// Returns an inapplicable report when `e` is a loop, `r` is out of range,
/// or the deletion changes `I(H)`.
pub fn interlacing_check(h: &Hypergraph, e: PartSet, r: u64) -> Result<InterlacingReport> {
    if e.len() < 2 {
        return Ok(InterlacingReport::inapplicable("edge is a loop".into()));
    }
    let m = h.multiplicity(e);
    if r == 0 || r > m {
        return Ok(InterlacingReport::inapplicable(format!("r = {r} outside 1..={m}")));
    }
    let reduced = h.remove_edge_copies(e, r)?;
    if index_set(&reduced).parts() != index_set(h).parts() {
        return Ok(InterlacingReport::inapplicable("deletion changes I(H)".into()));
    }

    let spectra = |g: &Hypergraph| -> Result<(Vec<f64>, Vec<f64>)> {
        let l: SymMatrix<i64> = unified_laplacian(g);
        let q: SymMatrix<i64> = unified_signless_laplacian(g);
        Ok((spectrum_of(&l, 1e-10)?.values, spectrum_of(&q, 1e-10)?.values))
    };
    let (nu, xi) = spectra(h)?;
    let (nu_r, xi_r) = spectra(&reduced)?;
    let k = nu.len();

    let pair = e.len() == 2;
    let step = if pair { 0.0 } else { 2.0 * r as f64 };
    let lap = chain(&nu, &nu_r, step, "nu");
    let sgn = chain(&xi, &xi_r, step, "xi");
    let (mut lap_ok, lap_slack) = monotone(&lap);
    let (mut sgn_ok, sgn_slack) = monotone(&sgn);
    // the chains start at 0 = nu_k(H - e^r) = nu_k(H), and 0 <= xi_k(H - e^r)
    if k > 0 {
        lap_ok &= nu[k - 1].abs() <= CHAIN_TOL && nu_r[k - 1].abs() <= CHAIN_TOL;
        sgn_ok &= xi_r[k - 1] >= -CHAIN_TOL;
    }
    Ok(InterlacingReport {
        applicable: true,
        reason: None,
        branch: if pair { "pair" } else { "shifted" },
        laplacian_chain: lap,
        signless_chain: sgn,
        laplacian_holds: lap_ok,
        signless_holds: sgn_ok,
        min_slack: lap_slack.min(sgn_slack),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubled_edge_of_triangle() {
        let h = Hypergraph::from_index_edges(3, &[(vec![0, 1], 2), (vec![0, 2], 1), (vec![1, 2], 1)]).unwrap();
        let rep = interlacing_check(&h, PartSet::from_indices([0, 1]).unwrap(), 1).unwrap();
        assert!(rep.applicable);
        assert_eq!(rep.branch, "pair");
        assert!(rep.holds());
        assert_eq!(rep.laplacian_chain.len(), 6);
    }

    #[test]
    fn doubled_triple_uses_shifted_chain() {
        let h = Hypergraph::from_index_edges(3, &[(vec![0, 1, 2], 2)]).unwrap();
        let rep = interlacing_check(&h, PartSet::from_indices([0, 1, 2]).unwrap(), 1).unwrap();
        assert!(rep.applicable);
        assert_eq!(rep.branch, "shifted");
        assert!(rep.holds());
    }

    #[test]
    fn changed_index_family_is_inapplicable() {
        let h = Hypergraph::from_index_edges(3, &[(vec![0, 1, 2], 1)]).unwrap();
        let rep = interlacing_check(&h, PartSet::from_indices([0, 1, 2]).unwrap(), 1).unwrap();
        assert!(!rep.applicable);
        assert!(rep.holds());
        let rep = interlacing_check(&h, PartSet::from_indices([0, 1, 2]).unwrap(), 2).unwrap();
        assert!(!rep.applicable);
    }
}
