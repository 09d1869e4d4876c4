//! Exact spanning pairs: counted by a cofactor of `U^L`, enumerated through
//! spanning trees of `G_H`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::assoc::{build_associated_graph, AssociatedGraph};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartSet};
use crate::matrices::{unified_laplacian, SymMatrix};
use crate::spectra::{cofactor_exact, spectrum_of, DEFAULT_TOL};

const PRODUCT_RTOL: f64 = 1e-6;

fn require_simple(h: &Hypergraph) -> Result<()> {
    if !h.is_simple() {
        return Err(Error::UnsupportedStructure("spanning pairs need a simple hypergraph".into()));
    }
    Ok(())
}

/// `(1/k)·ν₁⋯ν_{k−1}` from the numeric `U^L` spectrum.
pub fn spanning_product(h: &Hypergraph) -> Result<f64> {
    let l: SymMatrix<i64> = unified_laplacian(h);
    let k = l.order();
    if k == 0 {
        return Ok(0.0);
    }
    let s = spectrum_of(&l, DEFAULT_TOL)?;
    Ok(s.values[..k - 1].iter().product::<f64>() / k as f64)
}

/// Number of exact spanning pairs, as the `(0,0)` cofactor of `U^L`.
///
/// The value is cross-checked against [`spanning_product`]; a relative
/// disagreement above `1e-6` is reported as a numeric error.
pub fn exact_spanning_pairs_count(h: &Hypergraph) -> Result<BigInt> {
    require_simple(h)?;
    let l: SymMatrix<i64> = unified_laplacian(h);
    if l.order() == 0 {
        return Ok(BigInt::zero());
    }
    let count = cofactor_exact(&l, 0, 0)?;
    if !count.is_zero() {
        let c = count.to_f64().unwrap_or(f64::INFINITY);
        let p = spanning_product(h)?;
        if ((p - c) / c).abs() > PRODUCT_RTOL {
            return Err(Error::NumericInput(format!("cofactor {count} but eigenvalue product {p}")));
        }
    }
    Ok(count)
}

/// One exact spanning pair `(H′, D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningPair {
    pub hypergraph: Hypergraph,
    /// The chosen 2-partitions, each as `(smaller part, larger part)`.
    pub partitions: Vec<(PartSet, PartSet)>,
}

impl SpanningPair {
    pub fn to_json(&self) -> Value {
        let h = &self.hypergraph;
        json!({
            "edges": h.edges().map(|(e, _)| h.labels(e)).collect::<Vec<_>>(),
            "partitions": self.partitions.iter().map(|&(a, b)| json!([h.labels(a), h.labels(b)])).collect::<Vec<_>>(),
        })
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
}

fn spans(k: usize, edges: &[(usize, usize)], chosen: &[usize], rest: &[usize]) -> bool {
    let mut d = Dsu((0..k).collect());
    let mut comps = k;
    for &i in chosen.iter().chain(rest) {
        let (a, b) = (d.find(edges[i].0), d.find(edges[i].1));
        if a != b {
            d.0[a] = b;
            comps -= 1;
        }
    }
    comps <= 1
}

/// All spanning trees of a simple graph on `k` nodes, as edge-index lists.
pub(crate) fn spanning_trees(k: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    fn go(k: usize, edges: &[(usize, usize)], i: usize, chosen: &mut Vec<usize>, dsu: &Dsu, out: &mut Vec<Vec<usize>>) {
        if chosen.len() + 1 == k {
            out.push(chosen.clone());
            return;
        }
        if i == edges.len() {
            return;
        }
        let mut d = Dsu(dsu.0.clone());
        let (a, b) = (d.find(edges[i].0), d.find(edges[i].1));
        if a != b {
            d.0[a] = b;
            chosen.push(i);
            go(k, edges, i + 1, chosen, &d, out);
            chosen.pop();
        }
        let rest: Vec<usize> = (i + 1..edges.len()).collect();
        if spans(k, edges, chosen, &rest) {
            go(k, edges, i + 1, chosen, dsu, out);
        }
    }
    let mut out = Vec::new();
    if k == 0 || !spans(k, edges, &[], &(0..edges.len()).collect::<Vec<_>>()) {
        return out;
    }
    go(k, edges, 0, &mut Vec::new(), &Dsu((0..k).collect()), &mut out);
    out
}

fn pair_of(g: &AssociatedGraph, h: &Hypergraph, tree: &[usize]) -> SpanningPair {
    let pairs = g.pairs();
    let partitions: Vec<(PartSet, PartSet)> = tree.iter().map(|&i| (g.index().get(pairs[i].tail), g.index().get(pairs[i].head))).collect();
    let mut edges: Vec<PartSet> = tree.iter().map(|&i| pairs[i].edge).collect();
    edges.sort();
    edges.dedup();
    let sub = Hypergraph::new(h.vertices().iter().cloned(), edges.iter().map(|&e| (h.labels(e), 1)))
        .expect("subhypergraph of a valid hypergraph");
    SpanningPair { hypergraph: sub, partitions }
}

/// Every exact spanning pair, refusing with [`Error::Truncated`] when there
/// are more than `limit`.
pub fn enumerate_exact_spanning_pairs(h: &Hypergraph, limit: usize) -> Result<Vec<SpanningPair>> {
    let count = exact_spanning_pairs_count(h)?;
    if count > BigInt::from(limit) {
        return Err(Error::Truncated { count: count.to_string(), limit });
    }
    let g = build_associated_graph(h)?;
    let edges: Vec<(usize, usize)> = g.pairs().iter().map(|p| (p.tail, p.head)).collect();
    let trees = spanning_trees(g.order(), &edges);
    debug_assert_eq!(BigInt::from(trees.len()), count);
    Ok(trees.iter().map(|t| pair_of(&g, h, t)).collect())
}
