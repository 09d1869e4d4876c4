//! Hypergraph data model: vertices, edge multisets, the index family `I(H)`,
//! unified degrees and volumes.
//!
//! Vertices are arbitrary tokens; internally every vertex gets a dense index
//! in sorted order and vertex subsets are stored as 64-bit masks over those
//! indices. Edges are kept as a canonical-subset to multiplicity map, so
//! repeated edges simply accumulate multiplicity.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported vertex count (vertex subsets are 64-bit masks).
pub const MAX_VERTICES: usize = 64;

/// A vertex token. Integers sort numerically and before named vertices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Id(u64),
    Name(String),
}

impl Vertex {
    /// Parses a token; canonical positive decimal integers become [`Vertex::Id`].
    pub fn parse(token: &str) -> Vertex {
        let canonical = !token.is_empty()
            && token.bytes().all(|b| b.is_ascii_digit())
            && !token.starts_with('0');
        match token.parse::<u64>() {
            Ok(v) if canonical => Vertex::Id(v),
            _ => Vertex::Name(token.to_string()),
        }
    }
}

impl From<u64> for Vertex {
    fn from(v: u64) -> Self {
        Vertex::Id(v)
    }
}

impl From<&str> for Vertex {
    fn from(v: &str) -> Self {
        Vertex::parse(v)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Id(v) => write!(f, "{v}"),
            Vertex::Name(s) => f.write_str(s),
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Vertex::Id(v) => s.serialize_u64(*v),
            Vertex::Name(n) => s.serialize_str(n),
        }
    }
}

/// A non-empty vertex subset over dense vertex indices.
///
/// The total order is (cardinality, lexicographic on the sorted member
/// list); it is the row/column order of every matrix in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartSet(u64);

impl PartSet {
    pub fn from_mask(mask: u64) -> Result<Self> {
        if mask == 0 {
            return Err(Error::InvalidInput("empty vertex subset".into()));
        }
        Ok(PartSet(mask))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut mask = 0u64;
        for i in indices {
            if i >= MAX_VERTICES {
                return Err(Error::InvalidInput(format!("vertex index {i} out of range")));
            }
            mask |= 1 << i;
        }
        PartSet::from_mask(mask)
    }

    pub fn singleton(i: usize) -> Self {
        PartSet(1 << i)
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        false
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: PartSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: PartSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: PartSet) -> PartSet {
        PartSet(self.0 | other.0)
    }

    /// Dense member indices in ascending order.
    pub fn members(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }
}

impl Ord for PartSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            // lexicographic on ascending member lists
            let (mut a, mut b) = (self.0, other.0);
            while a != 0 && b != 0 {
                let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
                if x != y {
                    return x.cmp(&y);
                }
                a &= a - 1;
                b &= b - 1;
            }
            (a != 0).cmp(&(b != 0))
        })
    }
}

impl PartialOrd for PartSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Unordered 2-partition `{a, b}` with `a < b` in [`PartSet`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    pub a: PartSet,
    pub b: PartSet,
}

/// All unordered 2-partitions of `e`, ordered by their smaller part.
///
/// There are `2^(|e|-1) - 1` of them for `|e| >= 2` and none for a singleton.
pub fn partitions2(e: PartSet) -> Result<Vec<Split>> {
    if e.0 == 0 {
        return Err(Error::InvalidInput("cannot partition the empty set".into()));
    }
    let members = e.members();
    if members.len() > 30 {
        return Err(Error::SizeCap(format!("edge of size {} has too many partitions", members.len())));
    }
    let mut out = Vec::with_capacity((1usize << (members.len() - 1)).saturating_sub(1));
    let full = (1u64 << members.len()) - 1;
    for local in 1..full {
        let mut a = 0u64;
        for (bit, &m) in members.iter().enumerate() {
            if local >> bit & 1 == 1 {
                a |= 1 << m;
            }
        }
        let (pa, pb) = (PartSet(a), PartSet(e.0 & !a));
        if pa < pb {
            out.push(Split { a: pa, b: pb });
        }
    }
    out.sort();
    Ok(out)
}

/// A finite hypergraph with an edge multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertices: Vec<Vertex>,
    edges: BTreeMap<PartSet, u64>,
}

impl Hypergraph {
    /// Builds a hypergraph from vertex tokens and edge occurrences `(members, multiplicity)`.
    ///
    /// Edge members not listed in `vertices` are added as vertices.
    pub fn new<V, E, M>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (M, u64)>,
        M: IntoIterator<Item = Vertex>,
    {
        let mut vset: BTreeSet<Vertex> = vertices.into_iter().collect();
        let mut raw = Vec::new();
        for (members, mult) in edges {
            let members: Vec<Vertex> = members.into_iter().collect();
            let distinct: BTreeSet<&Vertex> = members.iter().collect();
            if members.is_empty() {
                return Err(Error::InvalidInput("edge must be non-empty".into()));
            }
            if distinct.len() != members.len() {
                return Err(Error::InvalidInput("edge lists a vertex twice".into()));
            }
            if mult == 0 {
                return Err(Error::InvalidInput("edge multiplicity must be at least 1".into()));
            }
            vset.extend(members.iter().cloned());
            raw.push((members, mult));
        }
        if vset.len() > MAX_VERTICES {
            return Err(Error::SizeCap(format!(
                "{} vertices exceed the supported maximum of {MAX_VERTICES}",
                vset.len()
            )));
        }
        let vertices: Vec<Vertex> = vset.into_iter().collect();
        let pos: HashMap<&Vertex, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut edges = BTreeMap::new();
        for (members, mult) in raw {
            let e = PartSet::from_indices(members.iter().map(|v| pos[v]))?;
            *edges.entry(e).or_insert(0) += mult;
        }
        Ok(Hypergraph { vertices, edges })
    }

    /// Hypergraph on vertices `1..=n` from 0-based index edges.
    pub fn from_index_edges(n: usize, edges: &[(Vec<usize>, u64)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeCap(format!("{n} vertices exceed {MAX_VERTICES}")));
        }
        let vertices = (1..=n as u64).map(Vertex::Id);
        let mut map = BTreeMap::new();
        for (members, mult) in edges {
            if members.iter().any(|&i| i >= n) {
                return Err(Error::InvalidInput("edge member outside vertex range".into()));
            }
            if *mult == 0 {
                return Err(Error::InvalidInput("edge multiplicity must be at least 1".into()));
            }
            let e = PartSet::from_indices(members.iter().copied())?;
            if e.len() != members.len() {
                return Err(Error::InvalidInput("edge lists a vertex twice".into()));
            }
            *map.entry(e).or_insert(0) += mult;
        }
        Ok(Hypergraph { vertices: vertices.collect(), edges: map })
    }

    /// Hypergraph on vertices `1..=n` with the given edge masks, each of multiplicity one.
    pub fn from_masks(n: usize, masks: &[u64]) -> Result<Self> {
        let edges: Vec<(Vec<usize>, u64)> =
            masks.iter().map(|&m| (PartSet::from_mask(m).map(|p| p.members()), 1)).map(|(r, m)| r.map(|v| (v, m))).collect::<Result<_>>()?;
        Hypergraph::from_index_edges(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_index(&self, v: &Vertex) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Distinct edges in canonical order with their multiplicities.
    pub fn edges(&self) -> impl Iterator<Item = (PartSet, u64)> + '_ {
        self.edges.iter().map(|(&e, &m)| (e, m))
    }

    pub fn distinct_edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edge occurrences, `|E(H)|`.
    pub fn edge_count(&self) -> u64 {
        self.edges.values().sum()
    }

    /// `m(e)`; zero when `e` is not an edge.
    pub fn multiplicity(&self, e: PartSet) -> u64 {
        self.edges.get(&e).copied().unwrap_or(0)
    }

    pub fn loops(&self) -> impl Iterator<Item = (PartSet, u64)> + '_ {
        self.edges().filter(|(e, _)| e.len() == 1)
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().next().is_none()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.values().all(|&m| m == 1) && self.is_loopless()
    }

    /// Vertex degree `d_H(v)` counting edge occurrences.
    pub fn vertex_degree(&self, v: usize) -> u64 {
        self.edges().filter(|(e, _)| e.contains(v)).map(|(_, m)| m).sum()
    }

    pub fn max_vertex_degree(&self) -> u64 {
        (0..self.vertex_count()).map(|v| self.vertex_degree(v)).max().unwrap_or(0)
    }

    /// An edge is included when it is a proper subset of another edge.
    pub fn has_included_edges(&self) -> bool {
        let es: Vec<PartSet> = self.edges.keys().copied().collect();
        es.iter().any(|&e| es.iter().any(|&f| f != e && e.is_subset(f)))
    }

    pub fn is_uniform(&self) -> Option<usize> {
        let mut sizes = self.edges.keys().map(|e| e.len());
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    /// True when every edge has two vertices.
    pub fn is_graph(&self) -> bool {
        self.edges.keys().all(|e| e.len() == 2)
    }

    /// `H - e^r`: removes `r` copies of `e`.
    pub fn remove_edge_copies(&self, e: PartSet, r: u64) -> Result<Hypergraph> {
        let m = self.multiplicity(e);
        if r == 0 || r > m {
            return Err(Error::InvalidInput(format!("cannot remove {r} copies of an edge with multiplicity {m}")));
        }
        let mut h = self.clone();
        if r == m {
            h.edges.remove(&e);
        } else {
            h.edges.insert(e, m - r);
        }
        Ok(h)
    }

    /// Adds `r` copies of `e` (members must already be vertices).
    pub fn with_edge(&self, e: PartSet, r: u64) -> Result<Hypergraph> {
        if e.mask() >> self.vertex_count() != 0 {
            return Err(Error::InvalidInput("edge member outside vertex range".into()));
        }
        let mut h = self.clone();
        *h.edges.entry(e).or_insert(0) += r;
        Ok(h)
    }

    /// Vertex labels of a part, in order.
    pub fn labels(&self, s: PartSet) -> Vec<Vertex> {
        s.members().into_iter().map(|i| self.vertices[i].clone()).collect()
    }

    /// Resolves a list of vertex tokens to a part.
    pub fn part_of(&self, members: &[Vertex]) -> Result<PartSet> {
        let idx = members
            .iter()
            .map(|v| self.vertex_index(v).ok_or_else(|| Error::InvalidVertex(v.to_string())))
            .collect::<Result<Vec<_>>>()?;
        PartSet::from_indices(idx)
    }
}

/// `I(H)` in canonical order with reverse lookup.
#[derive(Debug, Clone)]
pub struct IndexSet {
    parts: Vec<PartSet>,
    pos: HashMap<PartSet, usize>,
}

impl IndexSet {
    pub fn parts(&self) -> &[PartSet] {
        &self.parts
    }

    /// The e-index `k`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn position(&self, s: PartSet) -> Option<usize> {
        self.pos.get(&s).copied()
    }

    pub fn require(&self, s: PartSet) -> Result<usize> {
        self.position(s)
            .ok_or_else(|| Error::InvalidIndex(format!("{:?} is not an element of I(H)", s.members())))
    }

    pub fn get(&self, i: usize) -> PartSet {
        self.parts[i]
    }
}

/// The index family: every vertex singleton plus every part of every edge.
pub fn index_set(h: &Hypergraph) -> IndexSet {
    let mut set: BTreeSet<PartSet> = (0..h.vertex_count()).map(PartSet::singleton).collect();
    for (e, _) in h.edges() {
        if e.len() > 1 {
            for sp in partitions2(e).expect("non-empty edge") {
                set.insert(sp.a);
                set.insert(sp.b);
            }
        }
    }
    let parts: Vec<PartSet> = set.into_iter().collect();
    let pos = parts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    IndexSet { parts, pos }
}

/// One neighbor relation `S ~c S'` coming from a distinct non-loop edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitPair {
    /// Index of the smaller part (tail of the canonical arc).
    pub tail: usize,
    /// Index of the larger part (head of the canonical arc).
    pub head: usize,
    pub edge: PartSet,
    pub multiplicity: u64,
}

/// Every `(edge, partition)` pair in canonical order: edges ascending, then
/// partitions in [`partitions2`] order. This is the column order of the
/// incidence matrices and the edge list of the associated graph.
pub fn split_pairs(h: &Hypergraph, index: &IndexSet) -> Vec<SplitPair> {
    let mut out = Vec::new();
    for (e, m) in h.edges() {
        if e.len() < 2 {
            continue;
        }
        for sp in partitions2(e).expect("non-empty edge") {
            out.push(SplitPair {
                tail: index.position(sp.a).expect("part in I(H)"),
                head: index.position(sp.b).expect("part in I(H)"),
                edge: e,
                multiplicity: m,
            });
        }
    }
    out
}

/// Unified and modified unified degree of each element of `I(H)`.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeEntry {
    #[serde(skip)]
    pub part: PartSet,
    pub d: u64,
    pub d_star: u64,
}

#[derive(Debug, Clone)]
pub struct DegreeTable {
    entries: Vec<DegreeEntry>,
}

impl DegreeTable {
    pub fn entries(&self) -> &[DegreeEntry] {
        &self.entries
    }

    pub fn d(&self, i: usize) -> u64 {
        self.entries[i].d
    }

    pub fn d_star(&self, i: usize) -> u64 {
        self.entries[i].d_star
    }

    pub fn d_star_values(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.d_star).collect()
    }

    /// `m*(H)`, the minimum modified unified degree.
    pub fn min_d_star(&self) -> u64 {
        self.entries.iter().map(|e| e.d_star).min().unwrap_or(0)
    }

    /// `d̂*(H)`, the maximum modified unified degree.
    pub fn max_d_star(&self) -> u64 {
        self.entries.iter().map(|e| e.d_star).max().unwrap_or(0)
    }

    /// `vol(H)`.
    pub fn total_volume(&self) -> u64 {
        self.entries.iter().map(|e| e.d_star).sum()
    }
}

pub fn degrees(h: &Hypergraph, index: &IndexSet) -> DegreeTable {
    let entries = index
        .parts()
        .iter()
        .map(|&s| {
            let d: u64 = h.edges().filter(|(e, _)| s.is_subset(*e)).map(|(_, m)| m).sum();
            let d_star = if s.len() > 1 { d - h.multiplicity(s) } else { d };
            DegreeEntry { part: s, d, d_star }
        })
        .collect();
    DegreeTable { entries }
}

/// `c` in `S ~c S'`: total multiplicity of edges partitioned by `{S, S'}`.
pub fn neighbor_multiplicity(h: &Hypergraph, index: &IndexSet, s: PartSet, t: PartSet) -> Result<u64> {
    index.require(s)?;
    index.require(t)?;
    if !s.is_disjoint(t) {
        return Ok(0);
    }
    Ok(h.multiplicity(s.union(t)))
}

/// `vol_H(𝒮)`, the sum of modified unified degrees over `parts`.
pub fn volume(h: &Hypergraph, index: &IndexSet, parts: &[PartSet]) -> Result<u64> {
    if parts.is_empty() {
        return Err(Error::InvalidInput("volume of an empty family".into()));
    }
    let table = degrees(h, index);
    let distinct: BTreeSet<PartSet> = parts.iter().copied().collect();
    distinct.into_iter().map(|s| index.require(s).map(|i| table.d_star(i))).sum()
}
