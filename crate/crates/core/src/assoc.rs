//! The associated graph `G_H`, its components (DE-components) and exact
//! subhypergraphs induced by sets of parts.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{degrees, index_set, split_pairs, DegreeTable, Hypergraph, IndexSet, PartSet, SplitPair};

/// Multigraph on `I(H)`: parts `S`, `S'` are joined by `c` parallel edges when
/// they 2-partition `c` edge occurrences.
#[derive(Debug, Clone)]
pub struct AssociatedGraph {
    index: IndexSet,
    degrees: DegreeTable,
    pairs: Vec<SplitPair>,
    adj: Vec<Vec<(usize, u64)>>,
}

impl AssociatedGraph {
    pub fn index(&self) -> &IndexSet {
        &self.index
    }

    pub fn degrees(&self) -> &DegreeTable {
        &self.degrees
    }

    pub fn order(&self) -> usize {
        self.index.len()
    }

    pub fn nodes(&self) -> &[PartSet] {
        self.index.parts()
    }

    /// Every adjacent pair once, in incidence-column order.
    pub fn pairs(&self) -> &[SplitPair] {
        &self.pairs
    }

    /// `(neighbor, multiplicity)` in ascending neighbor order.
    pub fn neighbors(&self, i: usize) -> &[(usize, u64)] {
        &self.adj[i]
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u64 {
        self.adj[i].binary_search_by_key(&j, |&(n, _)| n).map(|p| self.adj[i][p].1).unwrap_or(0)
    }

    /// Degree of a node counting parallel edges; equals `d*(S)`.
    pub fn degree(&self, i: usize) -> u64 {
        self.adj[i].iter().map(|&(_, c)| c).sum()
    }

    /// Number of edges counting multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.pairs.iter().map(|p| p.multiplicity).sum()
    }

    /// Breadth-first hop distances from `src`; `None` when unreachable.
    pub fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &(w, _) in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components as sorted node lists, plus a bipartiteness flag each.
    pub fn components(&self) -> Vec<(Vec<usize>, bool)> {
        let k = self.order();
        let mut color = vec![u8::MAX; k];
        let mut out = Vec::new();
        for s in 0..k {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut members = vec![s];
            let mut bipartite = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        members.push(w);
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        bipartite = false;
                    }
                }
            }
            members.sort_unstable();
            out.push((members, bipartite));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.bfs(0).iter().all(Option::is_some)
    }

    pub fn is_bipartite(&self) -> bool {
        self.components().iter().all(|(_, b)| *b)
    }

    /// Simple complete graph on `I(H)` (every pair adjacent once).
    pub fn is_complete_simple(&self) -> bool {
        let k = self.order();
        (0..k).all(|i| self.adj[i].len() == k - 1 && self.adj[i].iter().all(|&(_, c)| c == 1))
    }
}

fn reject_loops(h: &Hypergraph) -> Result<()> {
    if let Some((e, m)) = h.loops().next() {
        let v = &h.labels(e)[0];
        return Err(Error::UnsupportedStructure(format!("loop at vertex {v} (multiplicity {m})")));
    }
    Ok(())
}

/// Builds `G_H`. Loops have no associated-graph meaning and are rejected.
pub fn build_associated_graph(h: &Hypergraph) -> Result<AssociatedGraph> {
    reject_loops(h)?;
    Ok(associated_graph_unchecked(h))
}

pub(crate) fn associated_graph_unchecked(h: &Hypergraph) -> AssociatedGraph {
    let index = index_set(h);
    let degrees = degrees(h, &index);
    let pairs = split_pairs(h, &index);
    let mut adj = vec![Vec::new(); index.len()];
    for p in &pairs {
        adj[p.tail].push((p.head, p.multiplicity));
        adj[p.head].push((p.tail, p.multiplicity));
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    AssociatedGraph { index, degrees, pairs, adj }
}

/// One ρ-class.
#[derive(Debug, Clone, Serialize)]
pub struct DEClass {
    /// Positions in `I(H)`.
    pub members: Vec<usize>,
    #[serde(skip)]
    pub parts: Vec<PartSet>,
    pub is_trivial: bool,
    pub has_odd_exact_cycle: bool,
    /// Position of the first class inducing the same exact subhypergraph.
    pub induced_group: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DEPartition {
    pub classes: Vec<DEClass>,
}

impl DEPartition {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn trivial_count(&self) -> usize {
        self.classes.iter().filter(|c| c.is_trivial).count()
    }

    /// Non-trivial classes without an odd exact cycle.
    pub fn bipartite_nontrivial_count(&self) -> usize {
        self.classes.iter().filter(|c| !c.is_trivial && !c.has_odd_exact_cycle).count()
    }

    /// Number of distinct induced exact subhypergraphs.
    pub fn distinct_induced_count(&self) -> usize {
        self.classes.iter().enumerate().filter(|(i, c)| c.induced_group == *i).count()
    }
}

pub fn de_components(h: &Hypergraph) -> Result<DEPartition> {
    let g = build_associated_graph(h)?;
    Ok(de_components_of(h, &g))
}

pub fn de_components_of(h: &Hypergraph, g: &AssociatedGraph) -> DEPartition {
    let mut classes: Vec<DEClass> = g
        .components()
        .into_iter()
        .map(|(members, bipartite)| {
            let parts: Vec<PartSet> = members.iter().map(|&i| g.index.get(i)).collect();
            let is_trivial = members.len() == 1 && parts[0].len() == 1 && g.degrees.d_star(members[0]) == 0;
            DEClass { members, parts, is_trivial, has_odd_exact_cycle: !bipartite, induced_group: 0 }
        })
        .collect();
    let induced: Vec<Hypergraph> = classes
        .iter()
        .map(|c| induced_unchecked(h, g, &c.parts))
        .collect();
    for i in 0..classes.len() {
        classes[i].induced_group = (0..=i).find(|&j| induced[j] == induced[i]).unwrap();
    }
    DEPartition { classes }
}

/// The exact subhypergraph induced by `d`: every edge split by two parts of
/// `d`, with its multiplicity, plus the vertices of singletons in `d`.
pub fn exact_subhypergraph(h: &Hypergraph, d: &[PartSet]) -> Result<Hypergraph> {
    let g = build_associated_graph(h)?;
    if d.is_empty() {
        return Err(Error::InvalidInduceSet("empty part set".into()));
    }
    let members: BTreeSet<usize> = d
        .iter()
        .map(|&s| g.index.position(s).ok_or_else(|| Error::InvalidInduceSet(format!("{:?} is not in I(H)", h.labels(s)))))
        .collect::<Result<_>>()?;
    for &i in &members {
        let s = g.index.get(i);
        if s.len() > 1 && !g.neighbors(i).iter().any(|(j, _)| members.contains(j)) {
            return Err(Error::InvalidInduceSet(format!("{:?} has no neighbor inside the set", h.labels(s))));
        }
    }
    Ok(induced_unchecked(h, &g, d))
}

fn induced_unchecked(h: &Hypergraph, g: &AssociatedGraph, d: &[PartSet]) -> Hypergraph {
    let inside: BTreeSet<usize> = d.iter().filter_map(|&s| g.index.position(s)).collect();
    let mut edges: BTreeMap<PartSet, u64> = BTreeMap::new();
    for p in g.pairs() {
        if inside.contains(&p.tail) && inside.contains(&p.head) {
            edges.insert(p.edge, p.multiplicity);
        }
    }
    let mut vertices: BTreeSet<usize> = d.iter().filter(|s| s.len() == 1).flat_map(|s| s.members()).collect();
    for e in edges.keys() {
        vertices.extend(e.members());
    }
    let labels = h.vertices();
    Hypergraph::new(
        vertices.iter().map(|&v| labels[v].clone()),
        edges.iter().map(|(e, &m)| (h.labels(*e), m)),
    )
    .expect("subhypergraph of a valid hypergraph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Vertex;

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        let e: Vec<(Vec<usize>, u64)> = edges.iter().map(|e| (e.iter().map(|x| x - 1).collect(), 1)).collect();
        Hypergraph::from_index_edges(n, &e).unwrap()
    }

    fn ps(v: &[usize]) -> PartSet {
        PartSet::from_indices(v.iter().map(|x| x - 1)).unwrap()
    }

    #[test]
    fn graph_is_its_own_associated_graph() {
        let k3 = hg(3, &[&[1, 2], &[1, 3], &[2, 3]]);
        let g = build_associated_graph(&k3).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_complete_simple());
    }

    #[test]
    fn single_triple_gives_three_edges() {
        let g = build_associated_graph(&hg(3, &[&[1, 2, 3]])).unwrap();
        assert_eq!(g.edge_count(), 3);
        let idx = g.index();
        let one = idx.position(ps(&[1])).unwrap();
        assert_eq!(g.neighbors(one), &[(idx.position(ps(&[2, 3])).unwrap(), 1)]);
    }

    #[test]
    fn six_vertex_example_counts() {
        let h = hg(6, &[&[1, 2, 3], &[3, 4], &[4, 5, 6]]);
        let g = build_associated_graph(&h).unwrap();
        assert_eq!((g.order(), g.edge_count()), (12, 7));
        for i in 0..g.order() {
            assert_eq!(g.degree(i), g.degrees().d_star(i));
        }
    }

    #[test]
    fn loops_are_rejected() {
        let h = Hypergraph::from_index_edges(2, &[(vec![0], 1), (vec![0, 1], 1)]).unwrap();
        assert!(matches!(build_associated_graph(&h), Err(Error::UnsupportedStructure(_))));
    }

    #[test]
    fn components_of_triple() {
        let p = de_components(&hg(3, &[&[1, 2, 3]])).unwrap();
        assert_eq!(p.count(), 3);
        assert!(p.classes.iter().all(|c| !c.is_trivial && !c.has_odd_exact_cycle));
    }

    #[test]
    fn isolated_vertex_is_trivial() {
        let p = de_components(&hg(3, &[&[1, 2]])).unwrap();
        assert_eq!(p.count(), 2);
        assert_eq!(p.trivial_count(), 1);
        let k3 = de_components(&hg(3, &[&[1, 2], &[2, 3], &[1, 3]])).unwrap();
        assert!(k3.classes[0].has_odd_exact_cycle);
    }

    #[test]
    fn induced_subhypergraphs() {
        let t = hg(3, &[&[1, 2, 3]]);
        let sub = exact_subhypergraph(&t, &[ps(&[1]), ps(&[2, 3])]).unwrap();
        assert_eq!(sub, t);

        let h = hg(6, &[&[1, 2, 3], &[3, 4], &[4, 5, 6]]);
        let sub = exact_subhypergraph(&h, &[ps(&[5]), ps(&[6]), ps(&[4, 5]), ps(&[4, 6])]).unwrap();
        let want = Hypergraph::new(
            Vec::<Vertex>::new(),
            vec![(vec![Vertex::Id(4), Vertex::Id(5), Vertex::Id(6)], 1)],
        )
        .unwrap();
        assert_eq!(sub, want);

        // induced subgraph semantics on graphs
        let c4 = hg(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        let sub = exact_subhypergraph(&c4, &[ps(&[1]), ps(&[2]), ps(&[3])]).unwrap();
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 2);

        assert!(matches!(exact_subhypergraph(&h, &[ps(&[2, 3])]), Err(Error::InvalidInduceSet(_))));
    }

    #[test]
    fn equal_induced_classes_are_grouped() {
        // each class of a lone triple induces the triple itself
        let h = hg(3, &[&[1, 2, 3]]);
        let p = de_components(&h).unwrap();
        assert!(p.classes.iter().all(|c| c.induced_group == 0));
        assert_eq!(p.distinct_induced_count(), 1);
    }
}
