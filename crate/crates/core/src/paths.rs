//! Exact paths and the distance families built on them.
//!
//! An exact path is a walk `S₀, S₁, …, Sₙ` in the associated graph with
//! distinct parts. The plain distances (`ED`, `SED`, `ESD`) are breadth-first
//! distances in `G_H`. The constrained ones add side conditions that BFS
//! cannot express, so they use a depth-first branch-and-bound search with
//! the unconstrained BFS distance as an admissible lower bound:
//!
//! * edge exact: every edge occurrence used at most once,
//! * internal unified: length ≥ 2 and parts pairwise disjoint, except that the
//!   initial and terminal parts may meet,
//! * unified: length ≥ 2 and all parts pairwise disjoint.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::assoc::{build_associated_graph, AssociatedGraph};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartSet, Vertex};

/// Default bound on `k` for the constrained searches.
pub const DEFAULT_SEARCH_CAP: usize = 64;

/// A length or `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Distance::Finite(d) => d as f64,
            Distance::Infinite => f64::INFINITY,
        }
    }
}

impl Ord for Distance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Distance::Finite(a), Distance::Finite(b)) => a.cmp(b),
            (Distance::Finite(_), Distance::Infinite) => Ordering::Less,
            (Distance::Infinite, Distance::Finite(_)) => Ordering::Greater,
            (Distance::Infinite, Distance::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

/// The ten distance families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DistanceMode {
    ED,
    EED,
    IUD,
    UD,
    SED,
    SEED,
    SUD,
    ESD,
    EESD,
    IUSD,
}

/// Side condition on the path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    Exact,
    EdgeExact,
    InternalUnified,
    Unified,
}

impl DistanceMode {
    pub const VERTEX: [DistanceMode; 7] = [
        DistanceMode::ED,
        DistanceMode::EED,
        DistanceMode::IUD,
        DistanceMode::UD,
        DistanceMode::SED,
        DistanceMode::SEED,
        DistanceMode::SUD,
    ];
    pub const SET: [DistanceMode; 3] = [DistanceMode::ESD, DistanceMode::EESD, DistanceMode::IUSD];
    pub const ALL: [DistanceMode; 10] = [
        DistanceMode::ED,
        DistanceMode::EED,
        DistanceMode::IUD,
        DistanceMode::UD,
        DistanceMode::SED,
        DistanceMode::SEED,
        DistanceMode::SUD,
        DistanceMode::ESD,
        DistanceMode::EESD,
        DistanceMode::IUSD,
    ];

    pub fn is_set_mode(self) -> bool {
        matches!(self, DistanceMode::ESD | DistanceMode::EESD | DistanceMode::IUSD)
    }

    /// Endpoints must be the vertex singletons.
    pub fn is_strong(self) -> bool {
        matches!(self, DistanceMode::SED | DistanceMode::SEED | DistanceMode::SUD)
    }

    fn rule(self) -> Rule {
        match self {
            DistanceMode::ED | DistanceMode::SED | DistanceMode::ESD => Rule::Exact,
            DistanceMode::EED | DistanceMode::SEED | DistanceMode::EESD => Rule::EdgeExact,
            DistanceMode::IUD | DistanceMode::IUSD => Rule::InternalUnified,
            DistanceMode::UD | DistanceMode::SUD => Rule::Unified,
        }
    }
}

impl fmt::Display for DistanceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for DistanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DistanceMode::ALL
            .into_iter()
            .find(|m| m.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown distance mode {s:?}")))
    }
}

/// A concrete exact path with its structural flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPath {
    pub parts: Vec<PartSet>,
    /// The edge of each step, `parts[i] ∪ parts[i+1]`.
    pub edges: Vec<PartSet>,
}

impl ExactPath {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Each distinct edge appears at most its multiplicity many times.
    pub fn edges_distinct(&self, h: &Hypergraph) -> bool {
        let mut used: HashMap<PartSet, u64> = HashMap::new();
        self.edges.iter().all(|&e| {
            let c = used.entry(e).or_insert(0);
            *c += 1;
            *c <= h.multiplicity(e)
        })
    }

    pub fn parts_pairwise_disjoint(&self) -> bool {
        let p = &self.parts;
        (0..p.len()).all(|i| (i + 1..p.len()).all(|j| p[i].is_disjoint(p[j])))
    }

    /// Pairwise disjoint except possibly the initial/terminal pair.
    pub fn internal_disjoint(&self) -> bool {
        let p = &self.parts;
        let last = p.len() - 1;
        (0..p.len()).all(|i| (i + 1..p.len()).all(|j| (i == 0 && j == last) || p[i].is_disjoint(p[j])))
    }

    /// Consecutive parts partition an edge of `h` and all parts are distinct.
    pub fn is_valid(&self, h: &Hypergraph) -> bool {
        let p = &self.parts;
        let distinct = (0..p.len()).all(|i| (i + 1..p.len()).all(|j| p[i] != p[j]));
        distinct
            && self.edges.len() + 1 == p.len()
            && p.windows(2).zip(&self.edges).all(|(w, &e)| {
                w[0].is_disjoint(w[1]) && w[0].union(w[1]) == e && h.multiplicity(e) > 0 && e.len() >= 2
            })
    }
}

/// Reusable search context over one hypergraph.
pub struct PathEngine<'h> {
    h: &'h Hypergraph,
    g: AssociatedGraph,
    /// `(neighbor, distinct edge id)` per node.
    adj: Vec<Vec<(usize, usize)>>,
    edge_mult: Vec<u64>,
    edge_sets: Vec<PartSet>,
    /// All-pairs BFS distances in `G_H`.
    bfs: Vec<Vec<Option<usize>>>,
    cap: usize,
}

struct Dfs<'a> {
    rule: Rule,
    adj: &'a [Vec<(usize, usize)>],
    parts: &'a [PartSet],
    edge_mult: &'a [u64],
    is_target: Vec<bool>,
    /// Lower bound on remaining steps to a target.
    lb: Vec<Option<usize>>,
    min_len: usize,
    start_mask: u64,
    visited: Vec<bool>,
    used: Vec<u64>,
    path: Vec<usize>,
    best: usize,
    best_path: Vec<usize>,
}

impl Dfs<'_> {
    /// `interior` is the union of the parts strictly after the start, or of
    /// every part for the unified rule.
    fn run(&mut self, node: usize, interior: u64) {
        let depth = self.path.len() - 1;
        let mut next: Vec<(usize, usize, usize)> = self.adj[node]
            .iter()
            .filter_map(|&(w, e)| self.lb[w].map(|b| (b, w, e)))
            .collect();
        next.sort_unstable();
        for (bound, w, e) in next {
            let len = depth + 1;
            if self.visited[w] || len + bound >= self.best {
                continue;
            }
            if self.rule == Rule::EdgeExact && self.used[e] >= self.edge_mult[e] {
                continue;
            }
            let wm = self.parts[w].mask();
            let ok_inner = match self.rule {
                Rule::Exact | Rule::EdgeExact => true,
                Rule::Unified => wm & interior == 0,
                Rule::InternalUnified => wm & (interior | self.start_mask) == 0,
            };
            let ok_terminal = match self.rule {
                Rule::Exact | Rule::EdgeExact => true,
                Rule::Unified => wm & interior == 0,
                Rule::InternalUnified => wm & interior == 0,
            };
            if self.is_target[w] && ok_terminal && len >= self.min_len && len < self.best {
                self.best = len;
                self.best_path = self.path.clone();
                self.best_path.push(w);
            }
            if ok_inner && len + 1 < self.best {
                self.visited[w] = true;
                self.used[e] += 1;
                self.path.push(w);
                self.run(w, interior | wm);
                self.path.pop();
                self.used[e] -= 1;
                self.visited[w] = false;
            }
        }
    }
}

impl<'h> PathEngine<'h> {
    pub fn new(h: &'h Hypergraph) -> Result<Self> {
        Self::with_cap(h, DEFAULT_SEARCH_CAP)
    }

    pub fn with_cap(h: &'h Hypergraph, cap: usize) -> Result<Self> {
        let g = build_associated_graph(h)?;
        let mut edge_id: HashMap<PartSet, usize> = HashMap::new();
        let mut edge_mult = Vec::new();
        let mut edge_sets = Vec::new();
        let mut adj = vec![Vec::new(); g.order()];
        for p in g.pairs() {
            let id = *edge_id.entry(p.edge).or_insert_with(|| {
                edge_mult.push(p.multiplicity);
                edge_sets.push(p.edge);
                edge_mult.len() - 1
            });
            adj[p.tail].push((p.head, id));
            adj[p.head].push((p.tail, id));
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        let bfs = (0..g.order()).map(|s| g.bfs(s)).collect();
        Ok(PathEngine { h, g, adj, edge_mult, edge_sets, bfs, cap })
    }

    pub fn graph(&self) -> &AssociatedGraph {
        &self.g
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        self.h
    }

    pub fn k(&self) -> usize {
        self.g.order()
    }

    fn node(&self, s: PartSet) -> Result<usize> {
        self.g.index().require(s)
    }

    /// BFS distance in `G_H` between two nodes.
    pub fn graph_distance(&self, i: usize, j: usize) -> Distance {
        self.bfs[i][j].map_or(Distance::Infinite, Distance::Finite)
    }

    fn check_cap(&self) -> Result<()> {
        if self.k() > self.cap {
            return Err(Error::SizeCap(format!(
                "constrained path search limited to e-index {}, got {}",
                self.cap,
                self.k()
            )));
        }
        Ok(())
    }

    /// Shortest path from any source to any target (a target different from
    /// its source), under `rule`.
    fn search(&self, rule: Rule, sources: &[usize], targets: &[usize]) -> Result<Option<Vec<usize>>> {
        let k = self.k();
        let mut lb = vec![None; k];
        for (w, slot) in lb.iter_mut().enumerate() {
            *slot = targets.iter().filter_map(|&t| self.bfs[w][t]).min();
        }
        if rule == Rule::Exact {
            // plain exact paths are shortest paths in G_H
            let mut best: Option<(usize, usize, usize)> = None;
            for &s in sources {
                for &t in targets {
                    if s == t {
                        continue;
                    }
                    if let Some(d) = self.bfs[s][t] {
                        if best.is_none_or(|(b, _, _)| d < b) {
                            best = Some((d, s, t));
                        }
                    }
                }
            }
            return Ok(best.map(|(_, s, t)| self.bfs_path(s, t)));
        }
        self.check_cap()?;
        let mut is_target = vec![false; k];
        for &t in targets {
            is_target[t] = true;
        }
        let mut dfs = Dfs {
            rule,
            adj: &self.adj,
            parts: self.g.nodes(),
            edge_mult: &self.edge_mult,
            is_target,
            lb,
            min_len: if matches!(rule, Rule::InternalUnified | Rule::Unified) { 2 } else { 1 },
            start_mask: 0,
            visited: vec![false; k],
            used: vec![0; self.edge_mult.len()],
            path: Vec::with_capacity(k),
            best: usize::MAX,
            best_path: Vec::new(),
        };
        let mut order: Vec<usize> = sources.to_vec();
        order.sort_by_key(|&s| (dfs.lb[s].unwrap_or(usize::MAX), s));
        for s in order {
            if dfs.lb[s].is_none() {
                continue;
            }
            let sm = self.g.nodes()[s].mask();
            dfs.start_mask = sm;
            dfs.visited[s] = true;
            dfs.path.clear();
            dfs.path.push(s);
            let interior = if rule == Rule::Unified { sm } else { 0 };
            dfs.run(s, interior);
            dfs.visited[s] = false;
        }
        Ok((dfs.best != usize::MAX).then_some(dfs.best_path))
    }

    fn bfs_path(&self, s: usize, t: usize) -> Vec<usize> {
        let mut path = vec![t];
        let mut cur = t;
        while cur != s {
            let d = self.bfs[s][cur].unwrap();
            cur = self.adj[cur].iter().map(|&(w, _)| w).find(|&w| self.bfs[s][w] == Some(d - 1)).unwrap();
            path.push(cur);
        }
        path.reverse();
        path
    }

    fn to_exact_path(&self, nodes: &[usize]) -> ExactPath {
        let parts: Vec<PartSet> = nodes.iter().map(|&i| self.g.nodes()[i]).collect();
        let edges = parts.windows(2).map(|w| w[0].union(w[1])).collect();
        ExactPath { parts, edges }
    }

    /// Shortest qualifying path between two elements of `I(H)`.
    pub fn set_path(&self, s: PartSet, t: PartSet, mode: DistanceMode) -> Result<Option<ExactPath>> {
        if !mode.is_set_mode() {
            return Err(Error::InvalidInput(format!("{mode} is not a set distance")));
        }
        let (i, j) = (self.node(s)?, self.node(t)?);
        if i == j {
            return Ok(Some(ExactPath { parts: vec![s], edges: Vec::new() }));
        }
        Ok(self.search(mode.rule(), &[i], &[j])?.map(|p| self.to_exact_path(&p)))
    }

    pub fn set_distance(&self, s: PartSet, t: PartSet, mode: DistanceMode) -> Result<Distance> {
        Ok(self.set_path(s, t, mode)?.map_or(Distance::Infinite, |p| Distance::Finite(p.len())))
    }

    fn vertex_endpoints(&self, u: usize, strong: bool) -> Vec<usize> {
        if strong {
            vec![self.g.index().position(PartSet::singleton(u)).expect("singleton in I(H)")]
        } else {
            (0..self.k()).filter(|&i| self.g.nodes()[i].contains(u)).collect()
        }
    }

    /// Shortest qualifying path joining vertices given by dense index.
    pub fn vertex_path_idx(&self, u: usize, v: usize, mode: DistanceMode) -> Result<Option<ExactPath>> {
        if mode.is_set_mode() {
            return Err(Error::InvalidInput(format!("{mode} is not a vertex distance")));
        }
        let n = self.h.vertex_count();
        if u >= n || v >= n {
            return Err(Error::InvalidVertex(format!("vertex index {} out of range", u.max(v))));
        }
        if u == v {
            let s = PartSet::singleton(u);
            return Ok(Some(ExactPath { parts: vec![s], edges: Vec::new() }));
        }
        let sources = self.vertex_endpoints(u, mode.is_strong());
        let targets = self.vertex_endpoints(v, mode.is_strong());
        Ok(self.search(mode.rule(), &sources, &targets)?.map(|p| self.to_exact_path(&p)))
    }

    pub fn vertex_distance_idx(&self, u: usize, v: usize, mode: DistanceMode) -> Result<Distance> {
        Ok(self.vertex_path_idx(u, v, mode)?.map_or(Distance::Infinite, |p| Distance::Finite(p.len())))
    }

    pub fn vertex_distance(&self, u: &Vertex, v: &Vertex, mode: DistanceMode) -> Result<Distance> {
        let ui = self.h.vertex_index(u).ok_or_else(|| Error::InvalidVertex(u.to_string()))?;
        let vi = self.h.vertex_index(v).ok_or_else(|| Error::InvalidVertex(v.to_string()))?;
        self.vertex_distance_idx(ui, vi, mode)
    }

    /// All pairwise distances of a mode over unordered pairs, in row-major
    /// `(i < j)` order.
    pub fn pair_distances(&self, mode: DistanceMode) -> Result<Vec<((usize, usize), Distance)>> {
        let n = if mode.is_set_mode() { self.k() } else { self.h.vertex_count() };
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let d = if mode.is_set_mode() {
                    let nodes = self.g.nodes();
                    self.set_distance(nodes[i], nodes[j], mode)?
                } else {
                    self.vertex_distance_idx(i, j, mode)?
                };
                Ok(((i, j), d))
            })
            .collect()
    }

    /// Maximum distance over all pairs; `∞` when some pair is not joined.
    pub fn diameter(&self, mode: DistanceMode) -> Result<Distance> {
        let all = self.pair_distances(mode)?;
        Ok(all.into_iter().map(|(_, d)| d).max().unwrap_or(Distance::Finite(0)))
    }

    pub fn distinct_edges(&self) -> &[PartSet] {
        &self.edge_sets
    }
}

/// Set distance between two elements of `I(H)`.
pub fn set_distance(h: &Hypergraph, s: PartSet, t: PartSet, mode: DistanceMode) -> Result<Distance> {
    PathEngine::new(h)?.set_distance(s, t, mode)
}

/// Vertex distance of one of the seven vertex modes.
pub fn vertex_distance(h: &Hypergraph, u: &Vertex, v: &Vertex, mode: DistanceMode) -> Result<Distance> {
    PathEngine::new(h)?.vertex_distance(u, v, mode)
}

pub fn diameter(h: &Hypergraph, mode: DistanceMode) -> Result<Distance> {
    PathEngine::new(h)?.diameter(mode)
}

/// The ten connectedness notions, each decided by finiteness of its diameter.
#[derive(Debug, Clone, Serialize)]
pub struct ConnectednessProfile {
    pub exactly: bool,
    pub edge_exact: bool,
    pub inter_uni: bool,
    pub uni: bool,
    pub strong_exact: bool,
    pub strong_edge_exact: bool,
    pub strong_uni: bool,
    pub deeply: bool,
    pub deeply_edge_exact: bool,
    pub deeply_inter_uni: bool,
    pub diameters: Vec<(DistanceMode, Distance)>,
    /// Definitionally sound implications that failed (always empty unless
    /// there is a bug).
    pub violations: Vec<String>,
    /// Implications used in arguments but not implied by the definitions,
    /// with whether they held on this instance.
    pub audits: Vec<(String, bool)>,
}

impl ConnectednessProfile {
    pub fn diameter(&self, mode: DistanceMode) -> Distance {
        self.diameters.iter().find(|(m, _)| *m == mode).map(|(_, d)| *d).expect("all modes present")
    }
}

pub fn connectedness_profile(h: &Hypergraph) -> Result<ConnectednessProfile> {
    let engine = PathEngine::new(h)?;
    profile_of(&engine)
}

pub fn profile_of(engine: &PathEngine<'_>) -> Result<ConnectednessProfile> {
    let diameters: Vec<(DistanceMode, Distance)> =
        DistanceMode::ALL.iter().map(|&m| engine.diameter(m).map(|d| (m, d))).collect::<Result<_>>()?;
    let fin = |m: DistanceMode| diameters.iter().any(|&(x, d)| x == m && d.is_finite());
    let mut p = ConnectednessProfile {
        exactly: fin(DistanceMode::ED),
        edge_exact: fin(DistanceMode::EED),
        inter_uni: fin(DistanceMode::IUD),
        uni: fin(DistanceMode::UD),
        strong_exact: fin(DistanceMode::SED),
        strong_edge_exact: fin(DistanceMode::SEED),
        strong_uni: fin(DistanceMode::SUD),
        deeply: fin(DistanceMode::ESD),
        deeply_edge_exact: fin(DistanceMode::EESD),
        deeply_inter_uni: fin(DistanceMode::IUSD),
        diameters,
        violations: Vec::new(),
        audits: Vec::new(),
    };
    let sound = [
        ("uni => inter-uni", p.uni, p.inter_uni),
        ("inter-uni => edge-exact", p.inter_uni, p.edge_exact),
        ("edge-exact => exactly", p.edge_exact, p.exactly),
        ("strong-exact => exactly", p.strong_exact, p.exactly),
        ("strong-edge-exact => edge-exact", p.strong_edge_exact, p.edge_exact),
        ("strong-uni => uni", p.strong_uni, p.uni),
        ("strong-uni => strong-edge-exact", p.strong_uni, p.strong_edge_exact),
        ("strong-edge-exact => strong-exact", p.strong_edge_exact, p.strong_exact),
        ("deeply => strong-exact", p.deeply, p.strong_exact),
        ("deeply-edge-exact => deeply", p.deeply_edge_exact, p.deeply),
        ("deeply-edge-exact => strong-edge-exact", p.deeply_edge_exact, p.strong_edge_exact),
        ("deeply-inter-uni => deeply-edge-exact", p.deeply_inter_uni, p.deeply_edge_exact),
        ("deeply-inter-uni => strong-uni", p.deeply_inter_uni, p.strong_uni),
    ];
    p.violations = sound.iter().filter(|(_, a, b)| *a && !*b).map(|(n, _, _)| n.to_string()).collect();
    p.audits = vec![
        ("deeply => uni".to_string(), !p.deeply || p.uni),
        ("deeply => strong-uni".to_string(), !p.deeply || p.strong_uni),
    ];
    Ok(p)
}

/// `G_H` has an odd cycle.
pub fn has_odd_exact_cycle(h: &Hypergraph) -> Result<bool> {
    Ok(!build_associated_graph(h)?.is_bipartite())
}

/// `G_H` is a tree (connected with `k − 1` edges counted with multiplicity).
pub fn is_exact_tree(h: &Hypergraph) -> Result<bool> {
    let g = build_associated_graph(h)?;
    Ok(g.is_connected() && g.edge_count() + 1 == g.order() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        let e: Vec<(Vec<usize>, u64)> = edges.iter().map(|e| (e.iter().map(|x| x - 1).collect(), 1)).collect();
        Hypergraph::from_index_edges(n, &e).unwrap()
    }

    fn ps(v: &[usize]) -> PartSet {
        PartSet::from_indices(v.iter().map(|x| x - 1)).unwrap()
    }

    fn fin(d: usize) -> Distance {
        Distance::Finite(d)
    }

    fn four_vertex() -> Hypergraph {
        hg(4, &[&[1, 2], &[1, 3], &[1, 4], &[1, 2, 3], &[1, 2, 4], &[2, 3, 4]])
    }

    #[test]
    fn edge_exact_set_distances() {
        let h = four_vertex();
        let e = PathEngine::new(&h).unwrap();
        assert_eq!(e.set_distance(ps(&[1, 4]), ps(&[2]), DistanceMode::EESD).unwrap(), fin(1));
        assert_eq!(e.set_distance(ps(&[2]), ps(&[2, 4]), DistanceMode::EESD).unwrap(), fin(2));
        assert_eq!(e.set_distance(ps(&[1, 4]), ps(&[2, 4]), DistanceMode::EESD).unwrap(), fin(4));
        let p = e.set_path(ps(&[1, 4]), ps(&[2, 4]), DistanceMode::EESD).unwrap().unwrap();
        assert!(p.is_valid(&h) && p.edges_distinct(&h));
        // plain exact distance may reuse an edge
        assert!(e.set_distance(ps(&[1, 4]), ps(&[2, 4]), DistanceMode::ESD).unwrap() <= fin(4));
        for mode in DistanceMode::SET {
            assert_eq!(e.set_distance(ps(&[3]), ps(&[3]), mode).unwrap(), fin(0));
        }
    }

    #[test]
    fn triple_distances() {
        let t = hg(3, &[&[1, 2, 3]]);
        assert_eq!(set_distance(&t, ps(&[1]), ps(&[2]), DistanceMode::ESD).unwrap(), Distance::Infinite);
        assert_eq!(vertex_distance(&t, &Vertex::Id(1), &Vertex::Id(2), DistanceMode::ED).unwrap(), fin(1));
        assert_eq!(diameter(&t, DistanceMode::ED).unwrap(), fin(1));
        let p = connectedness_profile(&t).unwrap();
        assert!(p.exactly && !p.deeply);
        assert!(p.violations.is_empty());
    }

    #[test]
    fn graphs_reduce_to_ordinary_distance() {
        let p5 = hg(5, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5]]);
        let e = PathEngine::new(&p5).unwrap();
        for mode in [DistanceMode::ED, DistanceMode::EED, DistanceMode::SED, DistanceMode::SEED] {
            assert_eq!(e.vertex_distance_idx(0, 4, mode).unwrap(), fin(4));
        }
        // unified modes need at least two edges
        assert_eq!(e.vertex_distance_idx(0, 1, DistanceMode::UD).unwrap(), Distance::Infinite);
        assert_eq!(e.vertex_distance_idx(0, 2, DistanceMode::UD).unwrap(), fin(2));
        assert_eq!(e.diameter(DistanceMode::ESD).unwrap(), fin(4));
    }

    #[test]
    fn internal_unified_allows_touching_ends() {
        // triangle: {1},{2},{3},{1} is not a path, but {1}-{2}-{3} is, and
        // iud(1,2) must route around because length one is too short
        let k3 = hg(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let e = PathEngine::new(&k3).unwrap();
        assert_eq!(e.vertex_distance_idx(0, 1, DistanceMode::IUD).unwrap(), fin(2));
        assert_eq!(e.vertex_distance_idx(0, 1, DistanceMode::ED).unwrap(), fin(1));
    }

    #[test]
    fn odd_cycles_and_trees() {
        assert!(has_odd_exact_cycle(&hg(3, &[&[1, 2], &[1, 3], &[2, 3]])).unwrap());
        assert!(!has_odd_exact_cycle(&hg(3, &[&[1, 2, 3]])).unwrap());
        assert!(!has_odd_exact_cycle(&hg(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])).unwrap());
        assert!(is_exact_tree(&hg(4, &[&[1, 2], &[2, 3], &[3, 4]])).unwrap());
        assert!(!is_exact_tree(&hg(3, &[&[1, 2], &[1, 3], &[2, 3]])).unwrap());
        assert!(!is_exact_tree(&hg(6, &[&[1, 2, 3], &[3, 4], &[4, 5, 6]])).unwrap());
        let doubled = Hypergraph::from_index_edges(2, &[(vec![0, 1], 2)]).unwrap();
        assert!(!is_exact_tree(&doubled).unwrap());
    }

    #[test]
    fn errors() {
        let h = four_vertex();
        assert!(matches!(
            vertex_distance(&h, &Vertex::Id(9), &Vertex::Id(1), DistanceMode::ED),
            Err(Error::InvalidVertex(_))
        ));
        assert!(matches!(set_distance(&h, ps(&[1, 3, 4]), ps(&[1]), DistanceMode::ESD), Err(Error::InvalidIndex(_))));
        let e = PathEngine::with_cap(&h, 3).unwrap();
        assert!(matches!(e.set_distance(ps(&[1]), ps(&[2]), DistanceMode::EESD), Err(Error::SizeCap(_))));
        assert_eq!("sud".parse::<DistanceMode>().unwrap(), DistanceMode::SUD);
        assert_eq!(serde_json::to_string(&Distance::Infinite).unwrap(), "\"inf\"");
    }
}
