//! The unified Cheeger constant and distances between subsets of `I(H)`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::assoc::{build_associated_graph, AssociatedGraph};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartSet};
use crate::paths::Distance;
use crate::scalar::Rational;

/// Largest `e`-index handled by the brute-force search (`2^(k−1)` subsets).
pub const DEFAULT_CHEEGER_CAP: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheegerResult {
    #[serde(serialize_with = "crate::invariants::ser_rational")]
    pub value: Rational,
    /// Boundary pairs `|Ê(𝒳)|` and `min(vol 𝒳, vol 𝒳ᶜ)` of a minimizer.
    pub boundary: u64,
    pub volume: u64,
    /// A minimizing `𝒳`, as positions in `I(H)`.
    pub minimizer: Vec<usize>,
}

fn require_connected_simple(h: &Hypergraph) -> Result<AssociatedGraph> {
    if !h.is_simple() {
        return Err(Error::UnsupportedStructure("the Cheeger constant needs a simple hypergraph".into()));
    }
    let g = build_associated_graph(h)?;
    if g.order() < 2 || !g.is_connected() {
        return Err(Error::UnsupportedStructure("the Cheeger constant needs a deeply connected hypergraph with k >= 2".into()));
    }
    Ok(g)
}

pub fn cheeger_constant(h: &Hypergraph) -> Result<CheegerResult> {
    cheeger_constant_capped(h, DEFAULT_CHEEGER_CAP)
}

/// Exact `uc(H)` by walking all subsets not containing the last part in
/// Gray-code order, so each step flips one part and updates the boundary
/// and volume in constant time.
pub fn cheeger_constant_capped(h: &Hypergraph, cap: usize) -> Result<CheegerResult> {
    let g = require_connected_simple(h)?;
    let k = g.order();
    if k > cap {
        return Err(Error::SizeCap(format!("Cheeger search over k = {k} parts exceeds the cap of {cap}")));
    }
    let adj: Vec<u64> = (0..k).map(|i| g.neighbors(i).iter().fold(0u64, |m, &(j, _)| m | 1 << j)).collect();
    let deg: Vec<u64> = (0..k).map(|i| g.degree(i)).collect();
    let total: u64 = deg.iter().sum();

    let (mut set, mut boundary, mut vol) = (0u64, 0u64, 0u64);
    let mut best: Option<(u64, u64, u64)> = None;
    for step in 1u64..1 << (k - 1) {
        let v = step.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let inside = (adj[v] & set).count_ones() as u64;
        if set & bit == 0 {
            boundary = boundary + deg[v] - 2 * inside;
            vol += deg[v];
        } else {
            boundary = boundary + 2 * inside - deg[v];
            vol -= deg[v];
        }
        set ^= bit;
        let denom = vol.min(total - vol);
        if denom == 0 {
            continue;
        }
        let better = match best {
            None => true,
            Some((b, d, _)) => (boundary as u128) * (d as u128) < (b as u128) * (denom as u128),
        };
        if better {
            best = Some((boundary, denom, set));
        }
    }
    let (b, d, s) = best.ok_or_else(|| Error::UnsupportedStructure("no subset with positive volume".into()))?;
    Ok(CheegerResult {
        value: Rational::new(BigInt::from(b), BigInt::from(d)),
        boundary: b,
        volume: d,
        minimizer: (0..k).filter(|&i| s >> i & 1 == 1).collect(),
    })
}

/// `esd(𝒳, 𝒴)`: the least exact set distance between a member of each set.
pub fn subset_distance(h: &Hypergraph, xs: &[PartSet], ys: &[PartSet]) -> Result<Distance> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::InvalidInput("subset distance needs non-empty sets".into()));
    }
    let g = build_associated_graph(h)?;
    subset_distance_in(&g, xs, ys)
}

pub(crate) fn subset_distance_in(g: &AssociatedGraph, xs: &[PartSet], ys: &[PartSet]) -> Result<Distance> {
    let pos = |s: &PartSet| g.index().require(*s);
    let xs: Vec<usize> = xs.iter().map(pos).collect::<Result<_>>()?;
    let ys: Vec<usize> = ys.iter().map(pos).collect::<Result<_>>()?;
    Ok(index_subset_distance(g, &xs, &ys))
}

/// Multi-source BFS from `xs` in `G_H`.
pub(crate) fn index_subset_distance(g: &AssociatedGraph, xs: &[usize], ys: &[usize]) -> Distance {
    let mut dist = vec![usize::MAX; g.order()];
    let mut queue = std::collections::VecDeque::new();
    for &x in xs {
        if dist[x] != 0 {
            dist[x] = 0;
            queue.push_back(x);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &(w, _) in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    ys.iter().map(|&y| dist[y]).min().filter(|&d| d != usize::MAX).map_or(Distance::Infinite, Distance::Finite)
}
