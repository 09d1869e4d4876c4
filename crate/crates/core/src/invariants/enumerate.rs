//! Small labeled hypergraphs, streamed in a fixed order, and canonical forms
//! for isomorphism testing.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartSet};

/// Largest vertex count for enumeration and brute-force canonical forms.
pub const MAX_ENUM_VERTICES: usize = 8;

/// Isomorphism-invariant encoding: vertex count plus the lexicographically
/// least sorted `(edge mask, multiplicity)` list over all relabelings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub edges: Vec<(u64, u64)>,
}

impl CanonicalForm {
    /// The canonical representative on vertices `1..=n`.
    pub fn hypergraph(&self) -> Hypergraph {
        let edges: Vec<(Vec<usize>, u64)> =
            self.edges.iter().map(|&(m, k)| (PartSet::from_mask(m).expect("non-empty").members(), k)).collect();
        Hypergraph::from_index_edges(self.n, &edges).expect("canonical form of a valid hypergraph")
    }
}

fn permute(mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << perm[i];
        m &= m - 1;
    }
    out
}

/// Brute-force canonical form over all `n!` vertex permutations.
pub fn canonical_form(h: &Hypergraph) -> Result<CanonicalForm> {
    let n = h.vertex_count();
    if n > MAX_ENUM_VERTICES {
        return Err(Error::SizeCap(format!("canonical forms are limited to {MAX_ENUM_VERTICES} vertices")));
    }
    let edges: Vec<(u64, u64)> = h.edges().map(|(e, m)| (e.mask(), m)).collect();
    let mut best: Option<Vec<(u64, u64)>> = None;
    let mut buf = Vec::with_capacity(edges.len());
    for perm in (0..n).permutations(n) {
        buf.clear();
        buf.extend(edges.iter().map(|&(e, m)| (permute(e, &perm), m)));
        buf.sort_unstable();
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    Ok(CanonicalForm { n, edges: best.unwrap_or_default() })
}

pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub n: usize,
    pub max_edge_size: usize,
    /// `None` for no limit.
    pub max_edges: Option<usize>,
    /// Keep only the first member of each isomorphism class.
    pub reject_isomorphs: bool,
}

impl EnumerationSpec {
    pub fn new(n: usize, max_edge_size: usize, max_edges: Option<usize>) -> Self {
        EnumerationSpec { n, max_edge_size, max_edges, reject_isomorphs: false }
    }

    pub fn up_to_isomorphism(mut self) -> Self {
        self.reject_isomorphs = true;
        self
    }
}

/// Every simple loopless hypergraph on `1..=n` with edge sizes in
/// `[2, max_edge_size]` and at most `max_edges` edges: by edge count, then
/// lexicographically over the canonical edge order.
pub fn enumerate_hypergraphs(spec: EnumerationSpec) -> Result<impl Iterator<Item = Hypergraph>> {
    let n = spec.n;
    if n > MAX_ENUM_VERTICES {
        return Err(Error::SizeCap(format!("enumeration is limited to {MAX_ENUM_VERTICES} vertices, got {n}")));
    }
    let mut candidates: Vec<PartSet> = (1u64..1 << n)
        .map(|m| PartSet::from_mask(m).expect("non-zero"))
        .filter(|e| e.len() >= 2 && e.len() <= spec.max_edge_size)
        .collect();
    candidates.sort();
    let top = spec.max_edges.unwrap_or(candidates.len()).min(candidates.len());
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let reject = spec.reject_isomorphs;
    let it = (0..=top)
        .flat_map(move |r| candidates.clone().into_iter().combinations(r))
        .map(move |edges| {
            let list: Vec<(Vec<usize>, u64)> = edges.iter().map(|e| (e.members(), 1)).collect();
            Hypergraph::from_index_edges(n, &list).expect("valid by construction")
        })
        .filter(move |h| !reject || seen.insert(canonical_form(h).expect("n checked")));
    Ok(it)
}

/// The fixed test corpus: every labeled hypergraph on up to four vertices,
/// plus five-vertex hypergraphs with at most four edges up to isomorphism.
pub fn standard_corpus() -> Vec<Hypergraph> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.extend(enumerate_hypergraphs(EnumerationSpec::new(n, n, None)).expect("n <= 8"));
    }
    out.extend(enumerate_hypergraphs(EnumerationSpec::new(5, 5, Some(4)).up_to_isomorphism()).expect("n <= 8"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, size: usize, edges: Option<usize>) -> usize {
        enumerate_hypergraphs(EnumerationSpec::new(n, size, edges)).unwrap().count()
    }

    #[test]
    fn labeled_counts() {
        assert_eq!(count(2, 2, Some(1)), 2);
        assert_eq!(count(3, 3, Some(1)), 5);
        assert_eq!(count(3, 3, None), 16);
        assert_eq!(count(4, 4, None), 1 << 11);
        assert!(enumerate_hypergraphs(EnumerationSpec::new(9, 2, Some(1))).is_err());
    }

    #[test]
    fn isomorphism_classes() {
        // graphs on 4 vertices: 11 classes
        let n = enumerate_hypergraphs(EnumerationSpec::new(4, 2, None).up_to_isomorphism()).unwrap().count();
        assert_eq!(n, 11);
        // hypergraphs on 3 vertices with edges of size 2 or 3
        let n = enumerate_hypergraphs(EnumerationSpec::new(3, 3, None).up_to_isomorphism()).unwrap().count();
        assert_eq!(n, 8);
    }

    #[test]
    fn canonical_form_is_label_free() {
        let a = Hypergraph::from_index_edges(4, &[(vec![0, 1, 2], 1), (vec![2, 3], 2)]).unwrap();
        let b = Hypergraph::from_index_edges(4, &[(vec![1, 2, 3], 1), (vec![0, 3], 2)]).unwrap();
        let c = Hypergraph::from_index_edges(4, &[(vec![1, 2, 3], 2), (vec![0, 3], 1)]).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        assert!(!is_isomorphic(&a, &c).unwrap());
        assert!(is_isomorphic(&canonical_form(&a).unwrap().hypergraph(), &a).unwrap());
    }

    #[test]
    fn order_is_deterministic() {
        let a: Vec<Hypergraph> = enumerate_hypergraphs(EnumerationSpec::new(3, 3, None)).unwrap().collect();
        let b: Vec<Hypergraph> = enumerate_hypergraphs(EnumerationSpec::new(3, 3, None)).unwrap().collect();
        assert_eq!(a, b);
        assert_eq!(a[0].edge_count(), 0);
        assert_eq!(a[15].edge_count(), 4);
    }
}
