// Acceptance suite. Every criterion prints exactly one `PASS`/`FAIL` line;
// tolerances are pinned in the constants below. The criteria share a lock
// so the reported timings are not polluted by each other.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::io::Write;
use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use hyperspec::assoc::de_components;
use hyperspec::invariants::{bound_suite, cheeger_constant, cospectral_scan, is_isomorphic, standard_corpus};
use hyperspec::matrices::{normalized_similar_rational, unified_laplacian, unified_signless_laplacian};
use hyperspec::paths::{Distance, DistanceMode, PathEngine};
use hyperspec::spectra::{
    char_poly_exact, cofactor_exact, exact_nullity_at, interlacing_check, matrix_spectrum, multiplicity_checked,
    DEFAULT_TOL,
};
use hyperspec::{Hypergraph, MatrixKind, PartSet, Rational, Scalar, SymMatrix};

/// Float identities (traces against eigenvalue sums), relative to max(1, |exact|).
const TRACE_TOL: f64 = 1e-8;
/// Spanning-tree count against (1/k)·ν₁⋯ν_{k−1}.
const PRODUCT_REL_TOL: f64 = 1e-6;
/// Slack allowed on the Cheeger inequalities, including the strict ones.
const CHEEGER_SLACK: f64 = 1e-8;
/// Smallest signless eigenvalue treated as zero.
const ZERO_TOL: f64 = 1e-8;
/// Interlacing chain slack (enforced inside the library check; restated here).
const CHAIN_TOL: f64 = 1e-8;

static SERIAL: Mutex<()> = Mutex::new(());

fn report(id: u32, limit: Option<Duration>, run: impl FnOnce() -> (bool, String)) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let t = Instant::now();
    let (ok, detail) = run();
    let took = t.elapsed();
    let in_time = limit.is_none_or(|l| took <= l);
    let pass = ok && in_time;
    let budget = limit.map_or(String::new(), |l| format!(" / {:.0}s", l.as_secs_f64()));
    // straight to the stderr handle so the line survives the harness capture
    let _ = writeln!(
        std::io::stderr(),
        "criterion {id:>2}: {} ({:.2}s{budget}) {detail}{}",
        if pass { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        if in_time { "" } else { " [over time budget]" }
    );
    assert!(pass, "criterion {id} failed: {detail}");
}

fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
    let e: Vec<(Vec<usize>, u64)> = edges.iter().map(|e| (e.iter().map(|x| x - 1).collect(), 1)).collect();
    Hypergraph::from_index_edges(n, &e).unwrap()
}

fn ps(v: &[usize]) -> PartSet {
    PartSet::from_indices(v.iter().map(|x| x - 1)).unwrap()
}

// ---------------------------------------------------------------------------
// Independent associated-graph oracle: parts are vertex masks, adjacency is
// built straight from the 2-partitions of each edge.

struct Assoc {
    parts: Vec<u64>,
    adj: Vec<Vec<i64>>,
}

impl Assoc {
    fn of(h: &Hypergraph) -> Assoc {
        let mut parts: Vec<u64> = (0..h.vertex_count()).map(|v| 1u64 << v).collect();
        for (e, _) in h.edges() {
            let e = e.mask();
            let mut s = (e - 1) & e;
            while s != 0 {
                parts.push(s);
                s = (s - 1) & e;
            }
        }
        parts.sort_unstable();
        parts.dedup();
        let pos: HashMap<u64, usize> = parts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let k = parts.len();
        let mut adj = vec![vec![0i64; k]; k];
        for (e, m) in h.edges() {
            let e = e.mask();
            if e.count_ones() < 2 {
                continue;
            }
            let mut s = (e - 1) & e;
            while s != 0 {
                adj[pos[&s]][pos[&(e ^ s)]] += m as i64;
                s = (s - 1) & e;
            }
        }
        Assoc { parts, adj }
    }

    fn k(&self) -> usize {
        self.parts.len()
    }

    fn degree(&self, i: usize) -> i64 {
        self.adj[i].iter().sum()
    }

    fn laplacian(&self, sign: i64) -> Vec<Vec<i64>> {
        let k = self.k();
        (0..k)
            .map(|i| (0..k).map(|j| if i == j { self.degree(i) } else { sign * self.adj[i][j] }).collect())
            .collect()
    }

    fn colouring(&self) -> (usize, bool) {
        let k = self.k();
        let mut colour = vec![-1i8; k];
        let (mut comps, mut bip) = (0, true);
        for s in 0..k {
            if colour[s] >= 0 {
                continue;
            }
            comps += 1;
            colour[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for v in 0..k {
                    if self.adj[u][v] > 0 {
                        if colour[v] < 0 {
                            colour[v] = 1 - colour[u];
                            q.push_back(v);
                        } else if colour[v] == colour[u] {
                            bip = false;
                        }
                    }
                }
            }
        }
        (comps, bip)
    }

    fn multigraph(&self) -> Vec<(usize, usize, u128)> {
        let k = self.k();
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if self.adj[i][j] > 0 {
                    out.push((i, j, self.adj[i][j] as u128));
                }
            }
        }
        out
    }
}

fn sym(rows: &[Vec<i64>]) -> SymMatrix<i64> {
    SymMatrix::from_rows(rows).unwrap()
}

fn connected(n: usize, edges: &[(usize, usize, u128)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b, _) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == u && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Spanning trees of a multigraph by deletion-contraction on parallel classes.
fn spanning_trees(n: usize, edges: Vec<(usize, usize, u128)>, memo: &mut HashMap<(usize, Vec<(usize, usize, u128)>), u128>) -> u128 {
    if n <= 1 {
        return 1;
    }
    if !connected(n, &edges) {
        return 0;
    }
    let key = (n, edges.clone());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    // prefer a pendant class: deleting it disconnects, so only the contraction counts
    let mut incident = vec![0usize; n];
    for &(a, b, _) in &edges {
        incident[a] += 1;
        incident[b] += 1;
    }
    let pick = edges.iter().position(|&(a, b, _)| incident[a] == 1 || incident[b] == 1).unwrap_or(0);
    let (u, v, m) = edges[pick];
    let rest: Vec<_> = edges.iter().enumerate().filter(|&(i, _)| i != pick).map(|(_, &e)| e).collect();

    let relabel = |x: usize| {
        let x = if x == v { u } else { x };
        if x > v { x - 1 } else { x }
    };
    let mut merged: BTreeMap<(usize, usize), u128> = BTreeMap::new();
    for &(a, b, w) in &rest {
        let (a, b) = (relabel(a), relabel(b));
        if a != b {
            *merged.entry((a.min(b), a.max(b))).or_default() += w;
        }
    }
    let contracted: Vec<_> = merged.into_iter().map(|((a, b), w)| (a, b, w)).collect();
    let deleted = if incident[u] == 1 || incident[v] == 1 { 0 } else { spanning_trees(n, rest, memo) };
    let total = deleted + m * spanning_trees(n - 1, contracted, memo);
    memo.insert(key, total);
    total
}

fn corpus() -> Vec<Hypergraph> {
    standard_corpus()
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_01_distance_vectors() {
    report(1, Some(Duration::from_secs(5)), || {
        let ten = hg(
            10,
            &[
                &[1, 2], &[1, 3], &[1, 7], &[2, 3], &[2, 7], &[3, 4], &[4, 9], &[5, 6], &[5, 9], &[5, 10],
                &[6, 10], &[7, 8], &[8, 9], &[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[3, 5, 6],
            ],
        );
        let fourteen = hg(
            14,
            &[
                &[1, 7], &[1, 8], &[2, 8], &[3, 4], &[5, 11], &[5, 12], &[5, 13], &[5, 14], &[6, 13], &[6, 14],
                &[9, 12], &[12, 13], &[13, 14], &[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[8, 9, 10, 11], &[10, 11, 12],
            ],
        );
        let four = hg(4, &[&[1, 2], &[1, 3], &[1, 4], &[1, 2, 3], &[1, 2, 4], &[2, 3, 4]]);

        let mut mismatches = Vec::new();
        let mut check = |label: String, got: Distance, want: usize| {
            if got != Distance::Finite(want) {
                mismatches.push(format!("{label} = {got} (expected {want})"));
            }
        };
        let e = PathEngine::new(&ten).unwrap();
        for mode in [DistanceMode::UD, DistanceMode::SUD] {
            for (u, v, want) in [(1, 4, 2), (4, 6, 2), (1, 6, 5)] {
                check(format!("{mode}({u},{v})"), e.vertex_distance_idx(u - 1, v - 1, mode).unwrap(), want);
            }
        }
        let e = PathEngine::new(&fourteen).unwrap();
        for (u, v, want) in [(1, 6, 3), (6, 14, 2), (1, 14, 6)] {
            check(format!("IUD({u},{v})"), e.vertex_distance_idx(u - 1, v - 1, DistanceMode::IUD).unwrap(), want);
        }
        let e = PathEngine::new(&four).unwrap();
        for (s, t, want) in [(&[1, 4][..], &[2][..], 1), (&[2], &[2, 4], 2), (&[1, 4], &[2, 4], 4)] {
            check(format!("EESD({s:?},{t:?})"), e.set_distance(ps(s), ps(t), DistanceMode::EESD).unwrap(), want);
        }
        let detail = if mismatches.is_empty() {
            "all 12 distances match".to_string()
        } else {
            format!("{} of 12 differ: {}", mismatches.len(), mismatches.join("; "))
        };
        (mismatches.is_empty(), detail)
    });
}

#[test]
fn criterion_02_de_component_classes() {
    report(2, Some(Duration::from_secs(1)), || {
        // the four classes as listed: [{1}], [{2}], [{3}], [{5}]
        let listed: Vec<Vec<PartSet>> = vec![
            vec![ps(&[1]), ps(&[2, 3])],
            vec![ps(&[2]), ps(&[1, 3])],
            vec![ps(&[3]), ps(&[4]), ps(&[1, 2]), ps(&[5, 6])],
            vec![ps(&[5]), ps(&[6]), ps(&[4, 5]), ps(&[4, 6])],
        ];
        let normal = |mut c: Vec<Vec<PartSet>>| {
            for x in &mut c {
                x.sort();
            }
            c.sort();
            c
        };
        let run = |h: &Hypergraph| {
            let classes: Vec<Vec<PartSet>> = de_components(h).unwrap().classes.into_iter().map(|c| c.parts).collect();
            let l: SymMatrix<i64> = unified_laplacian(h);
            let spec = matrix_spectrum(h, MatrixKind::UL, DEFAULT_TOL).unwrap();
            let mult = multiplicity_checked(&l, &spec, 0).map(|m| m.numeric).unwrap_or(usize::MAX);
            let rank_nullity = exact_nullity_at(&l, 0);
            (normal(classes) == normal(listed.clone()), mult, rank_nullity)
        };

        // edge set exactly as stated
        let literal = hg(6, &[&[1, 2, 3], &[3, 4], &[4, 5, 6]]);
        // the listed class [{5}] = {{5},{6},{4,5},{4,6}} needs {5,6} to be an edge as well
        let corrected = hg(6, &[&[1, 2, 3], &[3, 4], &[4, 5, 6], &[5, 6]]);
        let (lit_classes, lit_mult, lit_null) = run(&literal);
        let (cor_classes, cor_mult, cor_null) = run(&corrected);
        let literal_ok = lit_classes && lit_mult == 4 && lit_null == 4;
        let corrected_ok = cor_classes && cor_mult == 4 && cor_null == 4;
        (
            literal_ok && corrected_ok,
            format!(
                "stated edges: classes match {lit_classes}, mult(UL,0) {lit_mult}, nullity {lit_null}; \
                 with edge {{5,6}}: classes match {cor_classes}, mult(UL,0) {cor_mult}, nullity {cor_null}"
            ),
        )
    });
}

#[test]
fn criterion_03_trace_identities() {
    report(3, Some(Duration::from_secs(60)), || {
        let family: Vec<Hypergraph> = corpus().into_iter().filter(|h| h.is_simple() && h.vertex_count() <= 5).collect();
        let mut bad = Vec::new();
        for h in &family {
            let a = Assoc::of(h);
            let k = a.k() as i64;
            let ul: SymMatrix<i64> = unified_laplacian(h);
            let uq: SymMatrix<i64> = unified_signless_laplacian(h);

            // tr U^L = tr U^Q = vol = 2·Σ m(e)(2^{|e|-1} − 1)
            let vol: i64 = (0..a.k()).map(|i| a.degree(i)).sum();
            let partitions: i64 = h.edges().map(|(e, m)| m as i64 * ((1i64 << (e.len() - 1)) - 1)).sum();
            // tr (U^L)² = Σ d(S)² + Σ_{S≠T} a(S,T)²
            let sq: i64 = (0..a.k()).map(|i| a.degree(i).pow(2) + a.adj[i].iter().map(|x| x * x).sum::<i64>()).sum();
            let trivial = (0..a.k()).filter(|&i| a.degree(i) == 0).count() as i64;
            let unl = normalized_similar_rational(h).unwrap();
            let unl_trace = (0..a.k()).fold(Rational::from_integer(0.into()), |acc, i| acc + unl.get(i, i).clone());
            let de_trivial = de_components(h).unwrap().trivial_count() as i64;

            let exact = ul.trace() == vol
                && vol == 2 * partitions
                && uq.trace() == vol
                && ul.trace_of_square() == sq
                && unl_trace == Rational::from_integer((k - trivial).into())
                && de_trivial == trivial;

            let close = |x: f64, y: f64| (x - y).abs() <= TRACE_TOL * y.abs().max(1.0);
            let nu = matrix_spectrum(h, MatrixKind::UL, DEFAULT_TOL).unwrap();
            let xi = matrix_spectrum(h, MatrixKind::UQ, DEFAULT_TOL).unwrap();
            let nh = matrix_spectrum(h, MatrixKind::UNL, DEFAULT_TOL).unwrap();
            let float = close(nu.sum(), vol as f64)
                && close(xi.sum(), vol as f64)
                && close(nu.values.iter().map(|v| v * v).sum(), sq as f64)
                && close(nh.sum(), (k - trivial) as f64);
            if !(exact && float) {
                bad.push(hyperspec::format::emit_hypergraph(h).replace('\n', "; "));
            }
        }
        let n = family.len();
        (
            n >= 500 && bad.is_empty(),
            format!("{n} simple instances (n <= 5), {} violations{}", bad.len(), bad.first().map_or(String::new(), |b| format!(", first: {b}"))),
        )
    });
}

#[test]
fn criterion_04_matrix_tree() {
    report(4, Some(Duration::from_secs(120)), || {
        let mut checked = 0;
        let mut bad = Vec::new();
        let mut worst_rel: f64 = 0.0;
        for h in corpus() {
            let a = Assoc::of(&h);
            let k = a.k();
            if k > 10 || a.colouring().0 != 1 {
                continue;
            }
            checked += 1;
            let trees = spanning_trees(k, a.multigraph(), &mut HashMap::new());
            let ul: SymMatrix<i64> = unified_laplacian(&h);
            let cof = cofactor_exact(&ul, 0, 0).unwrap();
            let nu = matrix_spectrum(&h, MatrixKind::UL, DEFAULT_TOL).unwrap();
            let product = nu.values[..k - 1].iter().product::<f64>() / k as f64;
            let rel = (product - trees as f64).abs() / (trees as f64).max(1.0);
            worst_rel = worst_rel.max(rel);
            if cof.to_string() != trees.to_string() || rel > PRODUCT_REL_TOL {
                bad.push(format!("{} (cofactor {cof}, oracle {trees}, product {product})", hyperspec::format::emit_hypergraph(&h).replace('\n', "; ")));
            }
        }
        (
            checked > 0 && bad.is_empty(),
            format!("{checked} deeply connected instances with k <= 10, {} mismatches, worst relative error {worst_rel:.1e}{}", bad.len(), bad.first().map_or(String::new(), |b| format!(", first: {b}"))),
        )
    });
}

#[test]
fn criterion_05_signless_zero_and_char_poly() {
    report(5, Some(Duration::from_secs(60)), || {
        let (mut deep, mut bipartite, mut bad) = (0, 0, Vec::new());
        for h in corpus() {
            let a = Assoc::of(&h);
            let (comps, bip) = a.colouring();
            let uq: SymMatrix<i64> = unified_signless_laplacian(&h);
            let ul: SymMatrix<i64> = unified_laplacian(&h);
            let label = || hyperspec::format::emit_hypergraph(&h).replace('\n', "; ");
            if comps == 1 {
                deep += 1;
                let xi = matrix_spectrum(&h, MatrixKind::UQ, DEFAULT_TOL).unwrap();
                let smallest_zero = xi.nth(a.k()).abs() <= ZERO_TOL;
                let exact_zero = exact_nullity_at(&uq, 0) > 0;
                if smallest_zero != bip || exact_zero != bip {
                    bad.push(format!("zero test on {}", label()));
                }
            }
            if bip {
                bipartite += 1;
                let q = char_poly_exact(&uq).unwrap();
                let l = char_poly_exact(&ul).unwrap();
                // and the same polynomials from the oracle matrices
                let q2 = char_poly_exact(&sym(&a.laplacian(1))).unwrap();
                let l2 = char_poly_exact(&sym(&a.laplacian(-1))).unwrap();
                if q.coeffs != l.coeffs || q.coeffs != q2.coeffs || l.coeffs != l2.coeffs {
                    bad.push(format!("char poly on {}", label()));
                }
            }
        }
        (
            deep > 0 && bipartite > 0 && bad.is_empty(),
            format!("{deep} deeply connected (zero test), {bipartite} without odd exact cycles (char poly), {} violations", bad.len()),
        )
    });
}

#[test]
fn criterion_06_cheeger_sandwich() {
    report(6, Some(Duration::from_secs(120)), || {
        let (mut checked, mut bad) = (0, Vec::new());
        let mut worst = f64::INFINITY;
        for h in corpus() {
            let a = Assoc::of(&h);
            let k = a.k();
            if !h.is_simple() || !(2..=14).contains(&k) || a.colouring().0 != 1 {
                continue;
            }
            checked += 1;
            let uc = cheeger_constant(&h).unwrap().value;
            let uc = uc.as_f64();
            let nh = matrix_spectrum(&h, MatrixKind::UNL, DEFAULT_TOL).unwrap();
            let f = nh.nth(k - 1);
            let slacks = [2.0 * f - uc * uc, 4.0 * uc - 2.0 * f, f - (1.0 - (1.0 - uc * uc).max(0.0).sqrt())];
            let s = slacks.iter().cloned().fold(f64::INFINITY, f64::min);
            worst = worst.min(s);
            if s < -CHEEGER_SLACK {
                bad.push(hyperspec::format::emit_hypergraph(&h).replace('\n', "; "));
            }
        }
        (
            checked > 0 && bad.is_empty(),
            format!("{checked} deeply connected simple instances with k <= 14, {} violations, smallest slack {worst:.3e}", bad.len()),
        )
    });
}

#[test]
fn criterion_07_interlacing() {
    report(7, None, || {
        let (mut pair, mut shifted, mut bad) = (0usize, 0usize, Vec::new());
        let mut worst = f64::INFINITY;
        for h in corpus().into_iter().filter(|h| h.vertex_count() >= 3) {
            for (e, m) in h.edges().collect::<Vec<_>>() {
                if e.len() < 2 {
                    continue;
                }
                // a doubled or tripled edge keeps I(H) when some copies are removed
                let mut cases = vec![(h.with_edge(e, 1).unwrap(), 1u64), (h.with_edge(e, 2).unwrap(), 2)];
                // a 2-edge has only singleton parts, so deleting it outright keeps I(H) too
                if e.len() == 2 {
                    cases.push((h.clone(), m));
                }
                for (g, r) in cases {
                    let rep = interlacing_check(&g, e, r).unwrap();
                    if !rep.applicable {
                        bad.push(format!("inapplicable: {:?}", rep.reason));
                        continue;
                    }
                    if rep.branch == "pair" { pair += 1 } else { shifted += 1 }
                    worst = worst.min(rep.min_slack);
                    if !rep.holds() || rep.min_slack < -CHAIN_TOL {
                        bad.push(hyperspec::format::emit_hypergraph(&g).replace('\n', "; "));
                    }
                }
            }
            if pair >= 100 && shifted >= 100 {
                break;
            }
        }
        (
            pair + shifted >= 50 && pair > 0 && shifted > 0 && bad.is_empty(),
            format!("{} constructed deletions ({pair} with |e| = 2, {shifted} with |e| >= 3), {} violations, smallest step {worst:.3e}", pair + shifted, bad.len()),
        )
    });
}

#[test]
fn criterion_08_bound_suite_corpus() {
    report(8, None, || {
        let family = corpus();
        let mut hard: BTreeMap<String, usize> = BTreeMap::new();
        let mut audit: BTreeMap<String, usize> = BTreeMap::new();
        for h in &family {
            let r = bound_suite(h).unwrap();
            for x in r.hard_failures() {
                *hard.entry(x.id.clone()).or_default() += 1;
            }
            for x in r.audit_failures() {
                *audit.entry(x.id.clone()).or_default() += 1;
            }
        }
        let audit_total: usize = audit.values().sum();
        let _ = writeln!(std::io::stderr(), "criterion  8 audit-only violations ({audit_total} over {} records): {audit:?}", audit.len());
        (
            hard.is_empty(),
            format!("{} instances, {} hard failures {hard:?}, {audit_total} audit-only violations logged", family.len(), hard.values().sum::<usize>()),
        )
    });
}

#[test]
fn criterion_09_cospectral_pair() {
    report(9, None, || {
        let matching = hg(6, &[&[1, 2], &[3, 4], &[5, 6]]);
        let triple = hg(3, &[&[1, 2, 3]]);
        let catalog = cospectral_scan(&[matching.clone(), triple.clone()], MatrixKind::U).unwrap();
        let flagged = catalog.groups.iter().any(|g| g.members.len() == 2);
        // independent: the oracle adjacency matrices give the same polynomial
        let same = char_poly_exact(&sym(&Assoc::of(&matching).adj)).unwrap().coeffs
            == char_poly_exact(&sym(&Assoc::of(&triple).adj)).unwrap().coeffs;
        let non_iso = !is_isomorphic(&matching, &triple).unwrap();
        (
            flagged && same && non_iso,
            format!("flagged {flagged}, oracle char polys equal {same}, non-isomorphic {non_iso}"),
        )
    });
}

#[test]
fn criterion_10_verify_determinism() {
    report(10, None, || {
        let run = || Command::new(env!("CARGO_BIN_EXE_hyperspec")).args(["verify", "--corpus"]).output().unwrap();
        let a = run();
        let b = run();
        let same = a.stdout == b.stdout;
        let ok = same && a.status.code() == Some(0) && b.status.code() == Some(0) && !a.stdout.is_empty();
        (ok, format!("two runs, {} bytes each, identical {same}, exit codes {:?}/{:?}", a.stdout.len(), a.status.code(), b.status.code()))
    });
}
