use hyperspec::assoc::{build_associated_graph, de_components};
use hyperspec::paths::{connectedness_profile, Distance, DistanceMode, PathEngine};
use hyperspec::{Hypergraph, PartSet};

fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
    let e: Vec<(Vec<usize>, u64)> = edges.iter().map(|e| (e.iter().map(|x| x - 1).collect(), 1)).collect();
    Hypergraph::from_index_edges(n, &e).unwrap()
}

fn ps(v: &[usize]) -> PartSet {
    PartSet::from_indices(v.iter().map(|x| x - 1)).unwrap()
}

fn ten_vertex() -> Hypergraph {
    hg(
        10,
        &[
            &[1, 2], &[1, 3], &[1, 7], &[2, 3], &[2, 7], &[3, 4], &[4, 9], &[5, 6], &[5, 9], &[5, 10],
            &[6, 10], &[7, 8], &[8, 9], &[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[3, 5, 6],
        ],
    )
}

fn fourteen_vertex() -> Hypergraph {
    hg(
        14,
        &[
            &[1, 7], &[1, 8], &[2, 8], &[3, 4], &[5, 11], &[5, 12], &[5, 13], &[5, 14], &[6, 13], &[6, 14],
            &[9, 12], &[12, 13], &[13, 14], &[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[8, 9, 10, 11], &[10, 11, 12],
        ],
    )
}

/// Shortest path with pairwise disjoint parts and at least two edges, by
/// breadth-first search over (last part, used vertices, length capped at 2).
fn disjoint_oracle(h: &Hypergraph, from: &[PartSet], to: &[PartSet]) -> Option<usize> {
    use std::collections::{HashSet, VecDeque};
    let mut parts: Vec<PartSet> = Vec::new();
    for (e, _) in h.edges() {
        for m in 1..(1u64 << e.len()) - 1 {
            let idx: Vec<usize> = e.members().into_iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, v)| v).collect();
            parts.push(PartSet::from_indices(idx).unwrap());
        }
    }
    parts.sort();
    parts.dedup();
    let mut seen = HashSet::new();
    let mut q = VecDeque::new();
    for &s in from {
        q.push_back((s, s.mask(), 0usize));
        seen.insert((s, s.mask(), 0));
    }
    while let Some((last, used, len)) = q.pop_front() {
        if len >= 2 && to.contains(&last) {
            return Some(len);
        }
        for &t in &parts {
            if t.mask() & used == 0 && h.multiplicity(last.union(t)) > 0 && seen.insert((t, used | t.mask(), (len + 1).min(2))) {
                q.push_back((t, used | t.mask(), len + 1));
            }
        }
    }
    None
}

fn containing(h: &Hypergraph, v: usize) -> Vec<PartSet> {
    let mut out = vec![ps(&[v])];
    for (e, _) in h.edges() {
        for m in 1..(1u64 << e.len()) - 1 {
            let idx: Vec<usize> = e.members().into_iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, v)| v).collect();
            let p = PartSet::from_indices(idx).unwrap();
            if p.contains(v - 1) {
                out.push(p);
            }
        }
    }
    out
}

#[test]
fn unified_distances_on_ten_vertices() {
    let h = ten_vertex();
    let e = PathEngine::new(&h).unwrap();
    for mode in [DistanceMode::UD, DistanceMode::SUD] {
        assert_eq!(e.vertex_distance_idx(0, 3, mode).unwrap(), Distance::Finite(2));
        assert_eq!(e.vertex_distance_idx(3, 5, mode).unwrap(), Distance::Finite(2));
    }

    // {1}, {3}, {5,6} over edges {1,3} and {3,5,6}
    let witness = e.vertex_path_idx(0, 5, DistanceMode::UD).unwrap().unwrap();
    assert_eq!(witness.parts, vec![ps(&[1]), ps(&[3]), ps(&[5, 6])]);
    assert!(witness.is_valid(&h) && witness.parts_pairwise_disjoint());
    // {1}, {2}, {3,4}, {5}, {6} over {1,2}, {2,3,4}, {3,4,5}, {5,6}
    let strong = e.vertex_path_idx(0, 5, DistanceMode::SUD).unwrap().unwrap();
    assert_eq!(strong.len(), 4);
    assert!(strong.is_valid(&h) && strong.parts_pairwise_disjoint());

    for u in 1..=10 {
        for v in 1..=10 {
            if u == v {
                continue;
            }
            let ud = disjoint_oracle(&h, &containing(&h, u), &containing(&h, v));
            let sud = disjoint_oracle(&h, &[ps(&[u])], &[ps(&[v])]);
            let got = |m| match e.vertex_distance_idx(u - 1, v - 1, m).unwrap() {
                Distance::Finite(d) => Some(d),
                Distance::Infinite => None,
            };
            assert_eq!(got(DistanceMode::UD), ud, "ud({u},{v})");
            assert_eq!(got(DistanceMode::SUD), sud, "sud({u},{v})");
        }
    }

    let profile = connectedness_profile(&h).unwrap();
    assert!(profile.uni);
    assert!(profile.violations.is_empty());
    let d = |m| profile.diameter(m);
    assert!(d(DistanceMode::UD) >= d(DistanceMode::IUD));
    assert!(d(DistanceMode::IUD) >= d(DistanceMode::EED));
    assert!(d(DistanceMode::EED) >= d(DistanceMode::ED));
}

#[test]
fn internal_unified_distances_on_fourteen_vertices() {
    let h = fourteen_vertex();
    let e = PathEngine::new(&h).unwrap();
    assert_eq!(e.vertex_distance_idx(0, 5, DistanceMode::IUD).unwrap(), Distance::Finite(3));
    assert_eq!(e.vertex_distance_idx(5, 13, DistanceMode::IUD).unwrap(), Distance::Finite(2));
    assert_eq!(e.vertex_distance_idx(0, 13, DistanceMode::IUD).unwrap(), Distance::Finite(6));
    let p = e.vertex_path_idx(0, 13, DistanceMode::IUD).unwrap().unwrap();
    assert!(p.is_valid(&h) && p.internal_disjoint());
}

#[test]
fn four_vertex_profile() {
    let h = hg(4, &[&[1, 2], &[1, 3], &[1, 4], &[1, 2, 3], &[1, 2, 4], &[2, 3, 4]]);
    let p = connectedness_profile(&h).unwrap();
    assert!(p.deeply_edge_exact);
    assert!(p.violations.is_empty());
}

#[test]
fn six_vertex_classes() {
    let h = hg(6, &[&[1, 2, 3], &[3, 4], &[4, 5, 6]]);
    let g = build_associated_graph(&h).unwrap();
    assert_eq!((g.order(), g.edge_count()), (12, 7));
    let parts = de_components(&h).unwrap();
    let classes: Vec<Vec<PartSet>> = parts.classes.iter().map(|c| c.parts.clone()).collect();
    assert!(classes.contains(&vec![ps(&[1]), ps(&[2, 3])]));
    assert!(classes.contains(&vec![ps(&[5]), ps(&[4, 6])]));
}
