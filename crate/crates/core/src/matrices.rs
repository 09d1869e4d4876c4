//! Matrices of a hypergraph indexed by `I(H)`: `U`, `U^D`, `U^L`, `U^Q`,
//! the normalized `U^𝓛`, and the incidence matrices `R(H)` and `B(H)`.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::Float;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypergraph::{degrees, index_set, split_pairs, Hypergraph, IndexSet};
use crate::scalar::{Scalar, ScalarKind};

/// Symmetric matrix stored as a packed lower triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    order: usize,
    tri: Vec<T>,
}

#[inline]
fn tri_pos(i: usize, j: usize) -> usize {
    let (r, c) = if i >= j { (i, j) } else { (j, i) };
    r * (r + 1) / 2 + c
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(order: usize) -> Self {
        SymMatrix { order, tri: vec![T::zero(); order * (order + 1) / 2] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds from a full square array; only the lower triangle is read.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix rows must form a square".into()));
        }
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                if i != j && rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidInput(format!("matrix is not symmetric at ({i}, {j})")));
                }
                m.set(i, j, rows[i][j].clone());
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> ScalarKind {
        T::KIND
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.tri[tri_pos(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let p = tri_pos(i, j);
        self.tri[p] = v;
    }

    pub fn trace(&self) -> T {
        (0..self.order).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.order).map(|i| (0..self.order).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        DenseMatrix::from_fn(self.order, self.order, |i, j| self.get(i, j).clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SymMatrix<U> {
        SymMatrix { order: self.order, tri: self.tri.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> SymMatrix<f64> {
        self.map(|v| v.as_f64())
    }

    /// `self + s·I`.
    pub fn shifted(&self, s: T) -> Self {
        let mut m = self.clone();
        for i in 0..self.order {
            let v = m.get(i, i).clone() + s.clone();
            m.set(i, i, v);
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.order {
            for j in 0..self.order {
                let v = self.get(i, j).as_f64();
                acc += v * v;
            }
        }
        acc.sqrt()
    }

    /// Row sums; zero for every Laplacian row.
    pub fn row_sums(&self) -> Vec<T> {
        (0..self.order)
            .map(|i| (0..self.order).fold(T::zero(), |acc, j| acc + self.get(i, j).clone()))
            .collect()
    }

    /// Exact `self²` trace, `Σ_ij a_ij²`.
    pub fn trace_of_square(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.order {
            for j in 0..self.order {
                acc = acc + self.get(i, j).clone() * self.get(i, j).clone();
            }
        }
        acc
    }
}

/// Row-major rectangular matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(DenseMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[T]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        DenseMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &DenseMatrix<T>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput("dimension mismatch in product".into()));
        }
        Ok(DenseMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, t| acc + self.get(i, t).clone() * other.get(t, j).clone())
        }))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Square submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        DenseMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}

/// Which of the five square matrices is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MatrixKind {
    U,
    UD,
    UL,
    UQ,
    UNL,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 5] = [MatrixKind::U, MatrixKind::UD, MatrixKind::UL, MatrixKind::UQ, MatrixKind::UNL];

    pub fn is_integer(self) -> bool {
        self != MatrixKind::UNL
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::U => "U",
            MatrixKind::UD => "UD",
            MatrixKind::UL => "UL",
            MatrixKind::UQ => "UQ",
            MatrixKind::UNL => "UNL",
        })
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "U" => Ok(MatrixKind::U),
            "UD" => Ok(MatrixKind::UD),
            "UL" => Ok(MatrixKind::UL),
            "UQ" => Ok(MatrixKind::UQ),
            "UNL" => Ok(MatrixKind::UNL),
            _ => Err(Error::InvalidInput(format!("unknown matrix kind {s:?}"))),
        }
    }
}

fn count<T: Scalar>(v: u64) -> T {
    T::from_i64(i64::try_from(v).expect("multiplicity fits in i64"))
}

/// `U(H)`: loop multiplicities on the diagonal, neighbor multiplicities off it.
pub fn unified_matrix<T: Scalar>(h: &Hypergraph) -> SymMatrix<T> {
    let index = index_set(h);
    let mut m = SymMatrix::zeros(index.len());
    for (e, mult) in h.loops() {
        let i = index.position(e).expect("singleton in I(H)");
        m.set(i, i, count(mult));
    }
    for p in split_pairs(h, &index) {
        m.set(p.tail, p.head, count(p.multiplicity));
    }
    m
}

/// `U^D(H) = diag(d*)`.
pub fn unified_degree_matrix<T: Scalar>(h: &Hypergraph) -> SymMatrix<T> {
    let index = index_set(h);
    let table = degrees(h, &index);
    let mut m = SymMatrix::zeros(index.len());
    for i in 0..index.len() {
        m.set(i, i, count(table.d_star(i)));
    }
    m
}

fn combine<T: Scalar>(h: &Hypergraph, sign: i64) -> SymMatrix<T> {
    let u: SymMatrix<T> = unified_matrix(h);
    let d: SymMatrix<T> = unified_degree_matrix(h);
    let s = T::from_i64(sign);
    SymMatrix { order: u.order, tri: d.tri.into_iter().zip(u.tri).map(|(a, b)| a + s.clone() * b).collect() }
}

/// `U^L(H) = U^D − U`.
pub fn unified_laplacian<T: Scalar>(h: &Hypergraph) -> SymMatrix<T> {
    combine(h, -1)
}

/// `U^Q(H) = U^D + U`.
pub fn unified_signless_laplacian<T: Scalar>(h: &Hypergraph) -> SymMatrix<T> {
    combine(h, 1)
}

/// `U^𝓛(H)`. Diagonal: 0 for parts of zero degree, `1 − m({v})/d*` for
/// singletons (with `m({v}) = 0` when `{v}` is not a loop), 1 otherwise.
pub fn unified_normalized_laplacian<F: Float + Scalar>(h: &Hypergraph) -> SymMatrix<F> {
    let index = index_set(h);
    let table = degrees(h, &index);
    let k = index.len();
    let f = |v: u64| F::from(v).expect("degree representable");
    let mut m = SymMatrix::zeros(k);
    for i in 0..k {
        let d = table.d_star(i);
        if d == 0 {
            continue;
        }
        let s = index.get(i);
        let diag = if s.len() == 1 { F::one() - f(h.multiplicity(s)) / f(d) } else { F::one() };
        m.set(i, i, diag);
    }
    for p in split_pairs(h, &index) {
        let denom = (f(table.d_star(p.tail)) * f(table.d_star(p.head))).sqrt();
        m.set(p.tail, p.head, -f(p.multiplicity) / denom);
    }
    m
}

/// `D⁺·U^L` as an exact rational matrix, with `D⁺` the pseudo-inverse of
/// `U^D`. For loopless `H` it is similar to `U^𝓛` on the non-isolated block
/// and zero on isolated rows, so it has the same characteristic polynomial.
pub fn normalized_similar_rational(h: &Hypergraph) -> Result<DenseMatrix<crate::scalar::Rational>> {
    use crate::scalar::Rational;
    if !h.is_loopless() {
        return Err(Error::UnsupportedStructure("rational normalized form requires a loopless hypergraph".into()));
    }
    let l: SymMatrix<i64> = unified_laplacian(h);
    let d: SymMatrix<i64> = unified_degree_matrix(h);
    Ok(DenseMatrix::from_fn(l.order(), l.order(), |i, j| {
        let di = *d.get(i, i);
        if di == 0 {
            Rational::from_i64(0)
        } else {
            Rational::new((*l.get(i, j)).into(), di.into())
        }
    }))
}

/// Column list of the incidence matrices: one per (distinct edge, 2-partition).
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    pub matrix: DenseMatrix<i64>,
    /// `(tail, head)` row positions of each column.
    pub columns: Vec<(usize, usize)>,
    pub index: IndexSet,
}

fn require_simple(h: &Hypergraph) -> Result<()> {
    if !h.is_simple() {
        return Err(Error::UnsupportedStructure("incidence matrices require a simple hypergraph".into()));
    }
    Ok(())
}

fn incidence(h: &Hypergraph, head_value: i64) -> Result<IncidenceMatrix> {
    require_simple(h)?;
    let index = index_set(h);
    let pairs = split_pairs(h, &index);
    let mut matrix = DenseMatrix::zeros(index.len(), pairs.len());
    let columns: Vec<(usize, usize)> = pairs.iter().map(|p| (p.tail, p.head)).collect();
    for (c, &(t, hd)) in columns.iter().enumerate() {
        matrix.set(t, c, 1);
        matrix.set(hd, c, head_value);
    }
    Ok(IncidenceMatrix { matrix, columns, index })
}

/// `R(H)`, the arc incidence matrix. Each arc runs from the smaller part
/// (`+1`) to the larger one (`−1`); `R Rᵀ = U^L`.
pub fn arc_incidence(h: &Hypergraph) -> Result<IncidenceMatrix> {
    incidence(h, -1)
}

/// `B(H)`, the 0/1 edge-parts incidence matrix with `B Bᵀ = U^Q`.
pub fn edge_parts_incidence(h: &Hypergraph) -> Result<IncidenceMatrix> {
    incidence(h, 1)
}

/// All four symmetric matrices plus `U^D` and the incidence matrices (when simple).
#[derive(Debug, Clone)]
pub struct UnifiedMatrixBundle {
    pub u: SymMatrix<i64>,
    pub ud: SymMatrix<i64>,
    pub ul: SymMatrix<i64>,
    pub uq: SymMatrix<i64>,
    pub unl: SymMatrix<f64>,
    pub r: Option<IncidenceMatrix>,
    pub b: Option<IncidenceMatrix>,
}

pub fn matrix_bundle(h: &Hypergraph) -> UnifiedMatrixBundle {
    UnifiedMatrixBundle {
        u: unified_matrix(h),
        ud: unified_degree_matrix(h),
        ul: unified_laplacian(h),
        uq: unified_signless_laplacian(h),
        unl: unified_normalized_laplacian(h),
        r: arc_incidence(h).ok(),
        b: edge_parts_incidence(h).ok(),
    }
}

/// Integer matrix of the given kind; `UNL` is rejected.
pub fn integer_matrix(h: &Hypergraph, kind: MatrixKind) -> Result<SymMatrix<i64>> {
    Ok(match kind {
        MatrixKind::U => unified_matrix(h),
        MatrixKind::UD => unified_degree_matrix(h),
        MatrixKind::UL => unified_laplacian(h),
        MatrixKind::UQ => unified_signless_laplacian(h),
        MatrixKind::UNL => return Err(Error::Kind("the normalized Laplacian has irrational entries".into())),
    })
}

pub fn float_matrix(h: &Hypergraph, kind: MatrixKind) -> SymMatrix<f64> {
    match kind {
        MatrixKind::UNL => unified_normalized_laplacian(h),
        k => integer_matrix(h, k).expect("integer kind").to_f64(),
    }
}

/// Member-label lists of `I(H)` in matrix order.
pub fn index_labels(h: &Hypergraph) -> Vec<Vec<Value>> {
    index_set(h)
        .parts()
        .iter()
        .map(|&s| h.labels(s).iter().map(|v| serde_json::to_value(v).expect("vertex serializes")).collect())
        .collect()
}

fn json_number(v: f64) -> Value {
    if v.fract() == 0.0 && v.abs() < 9.0e15 {
        json!(v as i64)
    } else {
        json!(v)
    }
}

/// `{order, index_labels, kind, rows}`.
pub fn matrix_json(h: &Hypergraph, kind: MatrixKind) -> Value {
    let rows: Vec<Vec<Value>> = if kind.is_integer() {
        integer_matrix(h, kind).expect("integer kind").rows().into_iter().map(|r| r.into_iter().map(|v| json!(v)).collect()).collect()
    } else {
        float_matrix(h, kind).rows().into_iter().map(|r| r.into_iter().map(json_number).collect()).collect()
    };
    json!({
        "order": rows.len(),
        "index_labels": index_labels(h),
        "kind": kind.to_string(),
        "rows": rows,
    })
}

/// Dense CSV with a header row of part labels (members joined by `|`).
pub fn matrix_csv(h: &Hypergraph, kind: MatrixKind) -> String {
    let labels: Vec<String> = index_set(h)
        .parts()
        .iter()
        .map(|&s| h.labels(s).iter().map(ToString::to_string).collect::<Vec<_>>().join("|"))
        .collect();
    let rows: Vec<Vec<String>> = if kind.is_integer() {
        integer_matrix(h, kind).expect("integer kind").rows().into_iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    } else {
        float_matrix(h, kind).rows().into_iter().map(|r| r.iter().map(|v| format!("{v:?}")).collect()).collect()
    };
    let mut out = String::new();
    let _ = writeln!(out, "part,{}", labels.join(","));
    for (label, row) in labels.iter().zip(rows) {
        let _ = writeln!(out, "{label},{}", row.join(","));
    }
    out
}

/// Adjacency of `G_H` as an integer matrix; equals `U` off the diagonal.
pub fn associated_adjacency(h: &Hypergraph) -> Result<SymMatrix<i64>> {
    let g = crate::assoc::build_associated_graph(h)?;
    let mut m = SymMatrix::zeros(g.order());
    for p in g.pairs() {
        m.set(p.tail, p.head, count(p.multiplicity));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        let e: Vec<(Vec<usize>, u64)> = edges.iter().map(|e| (e.iter().map(|x| x - 1).collect(), 1)).collect();
        Hypergraph::from_index_edges(n, &e).unwrap()
    }

    fn k3() -> Hypergraph {
        hg(3, &[&[1, 2], &[1, 3], &[2, 3]])
    }

    #[test]
    fn unified_matrix_examples() {
        let u: SymMatrix<i64> = unified_matrix(&k3());
        assert_eq!(u.rows(), vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);

        let t: SymMatrix<i64> = unified_matrix(&hg(3, &[&[1, 2, 3]]));
        assert_eq!(t.trace(), 0);
        // {1}-{2,3}, {2}-{1,3}, {3}-{1,2}: positions 0-5, 1-4, 2-3
        for (i, j) in [(0, 5), (1, 4), (2, 3)] {
            assert_eq!(*t.get(i, j), 1);
        }
        assert_eq!(t.row_sums(), vec![1; 6]);

        let loop2 = Hypergraph::from_index_edges(1, &[(vec![0], 2)]).unwrap();
        let u: SymMatrix<i64> = unified_matrix(&loop2);
        assert_eq!(u.rows(), vec![vec![2]]);
    }

    #[test]
    fn degree_and_laplacians() {
        let d: SymMatrix<i64> = unified_degree_matrix(&k3());
        assert_eq!(d.rows(), vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        let iso = hg(3, &[&[1, 2]]);
        let d: SymMatrix<i64> = unified_degree_matrix(&iso);
        assert_eq!(*d.get(2, 2), 0);

        let k2 = hg(2, &[&[1, 2]]);
        let l: SymMatrix<i64> = unified_laplacian(&k2);
        assert_eq!(l.rows(), vec![vec![1, -1], vec![-1, 1]]);
        let q: SymMatrix<i64> = unified_signless_laplacian(&k2);
        assert_eq!(q.rows(), vec![vec![1, 1], vec![1, 1]]);
        let l: SymMatrix<i64> = unified_laplacian(&hg(4, &[&[1, 2, 3], &[3, 4], &[2, 4]]));
        assert!(l.row_sums().iter().all(|&s| s == 0));
    }

    #[test]
    fn laplacian_with_loop_has_zero_row_sums() {
        let h = Hypergraph::from_index_edges(2, &[(vec![0], 2), (vec![0, 1], 1)]).unwrap();
        let l: SymMatrix<i64> = unified_laplacian(&h);
        assert!(l.row_sums().iter().all(|&s| s == 0));
    }

    #[test]
    fn normalized_matches_factored_form() {
        let h = hg(5, &[&[1, 2, 3], &[3, 4], &[2, 4, 5], &[1, 5]]);
        let n: SymMatrix<f64> = unified_normalized_laplacian(&h);
        let l: SymMatrix<f64> = unified_laplacian(&h);
        let d: SymMatrix<f64> = unified_degree_matrix(&h);
        for i in 0..n.order() {
            for j in 0..n.order() {
                let want = l.get(i, j) / (d.get(i, i) * d.get(j, j)).sqrt();
                assert!((n.get(i, j) - want).abs() < 1e-12);
            }
        }
        let k2: SymMatrix<f64> = unified_normalized_laplacian(&hg(2, &[&[1, 2]]));
        assert_eq!(k2.rows(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
    }

    #[test]
    fn incidence_products() {
        for h in [hg(2, &[&[1, 2]]), hg(3, &[&[1, 2, 3]]), hg(4, &[&[1, 2, 3, 4], &[1, 2]]), k3()] {
            let r = arc_incidence(&h).unwrap().matrix;
            let b = edge_parts_incidence(&h).unwrap().matrix;
            let l: SymMatrix<i64> = unified_laplacian(&h);
            let q: SymMatrix<i64> = unified_signless_laplacian(&h);
            assert_eq!(r.mul(&r.transpose()).unwrap(), l.to_dense());
            assert_eq!(b.mul(&b.transpose()).unwrap(), q.to_dense());
            for c in 0..r.ncols() {
                let col: Vec<i64> = (0..r.nrows()).map(|i| *r.get(i, c)).collect();
                assert_eq!(col.iter().filter(|&&v| v == 1).count(), 1);
                assert_eq!(col.iter().filter(|&&v| v == -1).count(), 1);
            }
        }
        let t = arc_incidence(&hg(3, &[&[1, 2, 3]])).unwrap();
        assert_eq!((t.matrix.nrows(), t.matrix.ncols()), (6, 3));
        let doubled = Hypergraph::from_index_edges(2, &[(vec![0, 1], 2)]).unwrap();
        assert!(arc_incidence(&doubled).is_err());
    }

    #[test]
    fn export_shapes() {
        let h = hg(3, &[&[1, 2, 3]]);
        let j = matrix_json(&h, MatrixKind::UL);
        assert_eq!(j["order"], 6);
        assert_eq!(j["index_labels"][3], json!([1, 2]));
        assert_eq!(j["rows"][0][0], 1);
        let csv = matrix_csv(&h, MatrixKind::U);
        assert_eq!(csv.lines().count(), 7);
        assert!(csv.starts_with("part,1,2,3,1|2,1|3,2|3\n"));
    }
}
