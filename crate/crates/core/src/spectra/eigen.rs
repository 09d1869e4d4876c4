//! Dense symmetric eigensolver: Householder reduction to tridiagonal form,
//! then implicit QL iteration with Wilkinson-style shifts.

use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrices::SymMatrix;
use crate::scalar::{Scalar, ScalarKind};

/// Eigenvalues in descending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum<F = f64> {
    pub values: Vec<F>,
    #[serde(skip)]
    pub vectors: Vec<Vec<F>>,
    /// Largest `‖Mx − λx‖₂` over the returned pairs.
    pub residual: F,
    /// `‖M‖_F` of the source matrix.
    pub norm: F,
    pub source_kind: ScalarKind,
}

impl<F: Float> Spectrum<F> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `i`-th largest eigenvalue, 1-based as in `ν₁ ≥ ν₂ ≥ …`.
    pub fn nth(&self, i: usize) -> F {
        self.values[i - 1]
    }

    pub fn sum(&self) -> F {
        self.values.iter().fold(F::zero(), |a, &b| a + b)
    }

    /// Default clustering width `1e-7·(1 + ‖M‖_F)`.
    pub fn cluster_tol(&self) -> F {
        F::from(1e-7).unwrap() * (F::one() + self.norm)
    }
}

/// Spectral decomposition of a symmetric matrix.
///
/// Fails on non-finite entries, or when the residual exceeds `tol·(1 + ‖M‖_F)`.
pub fn eigenvalues_sym<F: Float + Scalar>(m: &SymMatrix<F>, tol: F) -> Result<Spectrum<F>> {
    let n = m.order();
    if (0..n).any(|i| (0..=i).any(|j| !m.get(i, j).is_finite())) {
        return Err(Error::NumericInput("matrix has non-finite entries".into()));
    }
    let mut v: Vec<Vec<F>> = m.rows();
    let mut d = vec![F::zero(); n];
    let mut e = vec![F::zero(); n];
    if n > 0 {
        tred2(&mut v, &mut d, &mut e);
        tql2(&mut v, &mut d, &mut e)?;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[b].partial_cmp(&d[a]).unwrap().then(a.cmp(&b)));
    let values: Vec<F> = order.iter().map(|&i| d[i]).collect();
    let vectors: Vec<Vec<F>> = order.iter().map(|&c| (0..n).map(|r| v[r][c]).collect()).collect();

    let norm = F::from(m.frobenius_norm()).unwrap();
    let mut residual = F::zero();
    for (lambda, x) in values.iter().zip(&vectors) {
        let mut acc = F::zero();
        for i in 0..n {
            let mut mx = F::zero();
            for (j, &xj) in x.iter().enumerate() {
                mx = mx + *m.get(i, j) * xj;
            }
            let r = mx - *lambda * x[i];
            acc = acc + r * r;
        }
        residual = residual.max(acc.sqrt());
    }
    if residual > tol * (F::one() + norm) {
        return Err(Error::NumericInput(format!(
            "eigen residual {:e} exceeds tolerance",
            num_traits::ToPrimitive::to_f64(&residual).unwrap_or(f64::NAN)
        )));
    }
    Ok(Spectrum { values, vectors, residual, norm, source_kind: ScalarKind::Float })
}

/// Convenience wrapper: spectrum of any scalar matrix, computed in `f64`.
pub fn spectrum_of<T: Scalar>(m: &SymMatrix<T>, tol: f64) -> Result<Spectrum<f64>> {
    let mut s = eigenvalues_sym(&m.to_f64(), tol)?;
    s.source_kind = T::KIND;
    Ok(s)
}

fn tred2<F: Float>(v: &mut [Vec<F>], d: &mut [F], e: &mut [F]) {
    let n = d.len();
    for j in 0..n {
        d[j] = v[n - 1][j];
    }
    for i in (1..n).rev() {
        let mut scale = F::zero();
        let mut h = F::zero();
        for dk in d.iter().take(i) {
            scale = scale + dk.abs();
        }
        if scale == F::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[i - 1][j];
                v[i][j] = F::zero();
                v[j][i] = F::zero();
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk = *dk / scale;
                h = h + *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > F::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h = h - f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = F::zero();
            }
            for j in 0..i {
                f = d[j];
                v[j][i] = f;
                g = e[j] + v[j][j] * f;
                for k in j + 1..i {
                    g = g + v[k][j] * d[k];
                    e[k] = e[k] + v[k][j] * f;
                }
                e[j] = g;
            }
            f = F::zero();
            for j in 0..i {
                e[j] = e[j] / h;
                f = f + e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] = e[j] - hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k][j] = v[k][j] - (f * e[k] + g * d[k]);
                }
                d[j] = v[i - 1][j];
                v[i][j] = F::zero();
            }
        }
        d[i] = h;
    }

    // accumulate transformations
    for i in 0..n.saturating_sub(1) {
        v[n - 1][i] = v[i][i];
        v[i][i] = F::one();
        let h = d[i + 1];
        if h != F::zero() {
            for k in 0..=i {
                d[k] = v[k][i + 1] / h;
            }
            for j in 0..=i {
                let mut g = F::zero();
                for k in 0..=i {
                    g = g + v[k][i + 1] * v[k][j];
                }
                for k in 0..=i {
                    v[k][j] = v[k][j] - g * d[k];
                }
            }
        }
        for row in v.iter_mut().take(i + 1) {
            row[i + 1] = F::zero();
        }
    }
    for j in 0..n {
        d[j] = v[n - 1][j];
        v[n - 1][j] = F::zero();
    }
    v[n - 1][n - 1] = F::one();
    e[0] = F::zero();
}

fn tql2<F: Float>(v: &mut [Vec<F>], d: &mut [F], e: &mut [F]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = F::zero();

    let two = F::one() + F::one();
    let eps = F::epsilon();
    let mut f = F::zero();
    let mut tst1 = F::zero();
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 64 {
                    return Err(Error::NumericInput("QL iteration did not converge".into()));
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(F::one());
                if p < F::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = F::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = F::zero();
                let mut s2 = F::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for row in v.iter_mut() {
                        let t = row[i + 1];
                        row[i + 1] = s * row[i] + c * t;
                        row[i] = c * row[i] - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = F::zero();
    }
    Ok(())
}
