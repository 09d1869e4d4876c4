//! Exact algebra: division-free characteristic polynomials, fraction-free
//! determinants and cofactors, rational rank, and total unimodularity.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrices::{DenseMatrix, SymMatrix};
use crate::scalar::{Rational, Scalar};

/// Monic characteristic polynomial `det(xI − M)`, leading coefficient first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharPoly<T = BigInt> {
    pub coeffs: Vec<T>,
}

impl<T: Scalar> CharPoly<T> {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^p`.
    pub fn coeff(&self, p: usize) -> &T {
        &self.coeffs[self.degree() - p]
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc * x + c.as_f64())
    }
}

impl<T: Scalar + fmt::Display + Signed> fmt::Display for CharPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = n - i;
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match p {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{p}")?,
                _ => write!(f, "{mag}x^{p}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> Serialize for CharPoly<T> {
    /// Coefficients as decimal strings so big integers survive JSON.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

/// Berkowitz's algorithm; uses only ring operations, so it is exact over
/// any commutative ring.
pub fn berkowitz<T: Scalar>(m: &DenseMatrix<T>) -> Result<CharPoly<T>> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::InvalidInput("characteristic polynomial needs a square matrix".into()));
    }
    let mut c = vec![T::one()];
    for r in 0..n {
        // q = [1, -a_rr, -R S, -R M S, ..., -R M^{r-1} S]
        let mut q = Vec::with_capacity(r + 2);
        q.push(T::one());
        q.push(T::zero() - m.get(r, r).clone());
        let mut v: Vec<T> = (0..r).map(|i| m.get(i, r).clone()).collect();
        for step in 0..r {
            let rv = (0..r).fold(T::zero(), |acc, j| acc + m.get(r, j).clone() * v[j].clone());
            q.push(T::zero() - rv);
            if step + 1 < r {
                v = (0..r)
                    .map(|i| (0..r).fold(T::zero(), |acc, j| acc + m.get(i, j).clone() * v[j].clone()))
                    .collect();
            }
        }
        let next: Vec<T> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(T::zero(), |acc, j| acc + q[i - j].clone() * c[j].clone())
            })
            .collect();
        c = next;
    }
    Ok(CharPoly { coeffs: c })
}

fn to_big<T: Scalar>(m: &SymMatrix<T>) -> Result<DenseMatrix<BigInt>> {
    let n = m.order();
    let mut out = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let v = m
                .get(i, j)
                .to_integer()
                .ok_or_else(|| Error::Kind(format!("{:?} matrices are not integer-kind", T::KIND)))?;
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// Exact characteristic polynomial of an integer-valued matrix.
pub fn char_poly_exact<T: Scalar>(m: &SymMatrix<T>) -> Result<CharPoly<BigInt>> {
    berkowitz(&to_big(m)?)
}

/// Fraction-free (Bareiss) determinant.
pub fn det_bareiss(m: &DenseMatrix<BigInt>) -> BigInt {
    let n = m.nrows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `(−1)^{i+j}` times the minor with row `i` and column `j` removed.
pub fn cofactor_exact<T: Scalar>(m: &SymMatrix<T>, i: usize, j: usize) -> Result<BigInt> {
    let n = m.order();
    if i >= n || j >= n {
        return Err(Error::InvalidIndex(format!("cofactor ({i}, {j}) outside a {n}x{n} matrix")));
    }
    let big = to_big(m)?;
    let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
    let d = det_bareiss(&big.select(&rows, &cols));
    Ok(if (i + j).is_multiple_of(2) { d } else { -d })
}

pub fn det_exact<T: Scalar>(m: &SymMatrix<T>) -> Result<BigInt> {
    Ok(det_bareiss(&to_big(m)?))
}

/// Rank over the rationals by Gaussian elimination.
pub fn rank_rational(m: &DenseMatrix<Rational>) -> usize {
    let mut a = m.rows();
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in rank + 1..rows {
            if a[r][c].is_zero() {
                continue;
            }
            let factor = &a[r][c] / &pivot;
            for j in c..cols {
                let v = &a[r][j] - &factor * &a[rank][j];
                a[r][j] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Exact rank of an integer-valued matrix.
pub fn rank_exact<T: Scalar>(m: &DenseMatrix<T>) -> Result<usize> {
    let mut conv = DenseMatrix::<Rational>::zeros(m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let v = m
                .get(i, j)
                .to_integer()
                .ok_or_else(|| Error::Kind("exact rank needs integer entries".into()))?;
            conv.set(i, j, Rational::from_integer(v));
        }
    }
    Ok(rank_rational(&conv))
}

/// `dim ker(M − tI)`, the exact multiplicity of the integer eigenvalue `t`.
pub fn exact_nullity_at(m: &SymMatrix<i64>, t: i64) -> usize {
    let shifted = m.shifted(-t);
    m.order() - rank_exact(&shifted.to_dense()).expect("integer matrix")
}

/// Every square minor lies in `{−1, 0, 1}`. Exhaustive, so only for small matrices.
pub fn is_totally_unimodular(m: &DenseMatrix<i64>, max_rows: usize) -> Result<bool> {
    if m.nrows() > max_rows {
        return Err(Error::SizeCap(format!("total unimodularity check limited to {max_rows} rows")));
    }
    let big = m.map(|&v| BigInt::from(v));
    for size in 1..=m.nrows().min(m.ncols()) {
        for rows in (0..m.nrows()).combinations(size) {
            for cols in (0..m.ncols()).combinations(size) {
                if det_bareiss(&big.select(&rows, &cols)).abs() > BigInt::one() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> SymMatrix<i64> {
        SymMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn known_polynomials() {
        let lk2 = int(&[&[1, -1], &[-1, 1]]);
        assert_eq!(char_poly_exact(&lk2).unwrap().coeffs, big(&[1, -2, 0]));
        let lk3 = int(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        let p = char_poly_exact(&lk3).unwrap();
        assert_eq!(p.coeffs, big(&[1, -6, 9, 0]));
        assert_eq!(p.to_string(), "x^3 - 6x^2 + 9x");
        assert_eq!(char_poly_exact(&SymMatrix::<i64>::zeros(0)).unwrap().coeffs, big(&[1]));
    }

    #[test]
    fn float_matrices_are_rejected() {
        let m = SymMatrix::<f64>::identity(2);
        assert!(matches!(char_poly_exact(&m), Err(Error::Kind(_))));
    }

    #[test]
    fn polynomial_agrees_with_leibniz_determinant() {
        // oracle: det(tI - M) by permutation expansion at several integer points
        let m = int(&[&[3, 1, -2, 0], &[1, 0, 4, 1], &[-2, 4, 5, -1], &[0, 1, -1, 2]]);
        let p = char_poly_exact(&m).unwrap();
        for t in -3i64..=3 {
            let mut s = BigInt::zero();
            for perm in (0..4).permutations(4) {
                let inv = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
                let mut prod = BigInt::one();
                for (r, &c) in perm.iter().enumerate() {
                    let e = if r == c { t } else { 0 } - m.get(r, c);
                    prod *= e;
                }
                s += if inv % 2 == 0 { prod } else { -prod };
            }
            assert_eq!(p.eval(&BigInt::from(t)), s);
        }
        assert_eq!(*p.coeff(3), BigInt::from(-m.trace()));
    }

    #[test]
    fn cofactors() {
        let lk3 = int(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(cofactor_exact(&lk3, i, j).unwrap(), BigInt::from(3));
            }
        }
        assert!(matches!(cofactor_exact(&lk3, 3, 0), Err(Error::InvalidIndex(_))));
        let lk2 = int(&[&[1, -1], &[-1, 1]]);
        assert_eq!(cofactor_exact(&lk2, 0, 1).unwrap(), BigInt::one());
    }

    #[test]
    fn determinant_with_pivoting() {
        let m = DenseMatrix::from_rows(&[big(&[0, 2, 1]), big(&[1, 0, 0]), big(&[3, 1, 4])]).unwrap();
        // 0*(0-0) - 2*(4-0) + 1*(1-0) = -7
        assert_eq!(det_bareiss(&m), BigInt::from(-7));
    }

    #[test]
    fn rank_and_nullity() {
        let lk3 = int(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert_eq!(exact_nullity_at(&lk3, 0), 1);
        assert_eq!(exact_nullity_at(&lk3, 3), 2);
        assert_eq!(exact_nullity_at(&lk3, 1), 0);
    }

    #[test]
    fn unimodularity() {
        // incidence of a path is TU; of a triangle (unsigned) is not
        let path = DenseMatrix::from_rows(&[vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        assert!(is_totally_unimodular(&path, 6).unwrap());
        let tri = DenseMatrix::from_rows(&[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert!(!is_totally_unimodular(&tri, 6).unwrap());
    }
}
