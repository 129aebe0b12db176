//! Dense double-double linear algebra for oracle computations.
//!
//! Provides LU with partial pivoting, Cholesky, a cyclic Jacobi eigensolver
//! for complex Hermitian matrices, and the Hermitian-definite pencil
//! eigendecomposition built from the two. Accuracy is set by the
//! double-double format (~1e-30 relative on well-conditioned inputs), far
//! beyond every tolerance the test suites check.

use crate::cdd::Cdd;
use crate::dd::Dd;

/// Dense column-ordered-by-row complex double-double matrix.
#[derive(Clone, Debug)]
pub struct DMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Cdd>,
}

impl DMat {
    pub fn zeros(rows: usize, cols: usize) -> DMat {
        DMat {
            rows,
            cols,
            data: vec![Cdd::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> DMat {
        let mut m = DMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cdd::ONE;
        }
        m
    }

    /// Build from interleaved (re, im) binary64 pairs in row-major order.
    pub fn from_f64_pairs(rows: usize, cols: usize, entries: &[(f64, f64)]) -> DMat {
        assert_eq!(entries.len(), rows * cols);
        DMat {
            rows,
            cols,
            data: entries
                .iter()
                .map(|&(re, im)| Cdd::from_f64(re, im))
                .collect(),
        }
    }

    pub fn conj_transpose(&self) -> DMat {
        let mut out = DMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &DMat) -> DMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = DMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &DMat) -> DMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = *a - *b;
        }
        out
    }

    pub fn scale(&self, s: Cdd) -> DMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = *a * s;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Cdd> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn frobenius(&self) -> Dd {
        let mut s = Dd::ZERO;
        for z in &self.data {
            s = s + z.abs_sq();
        }
        s.sqrt()
    }

    /// Largest column 2-norm, used for crude scale checks.
    pub fn max_col_norm(&self) -> Dd {
        let mut best = Dd::ZERO;
        for j in 0..self.cols {
            let mut s = Dd::ZERO;
            for i in 0..self.rows {
                s = s + self[(i, j)].abs_sq();
            }
            best = best.max(s.sqrt());
        }
        best
    }
}

impl std::ops::Index<(usize, usize)> for DMat {
    type Output = Cdd;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Cdd {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cdd {
        &mut self.data[i * self.cols + j]
    }
}

/// LU factorization with partial pivoting; `None` on exact breakdown.
pub struct Lu {
    lu: DMat,
    piv: Vec<usize>,
}

pub fn lu_factor(a: &DMat) -> Option<Lu> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut lu = a.clone();
    let mut piv = Vec::with_capacity(n);
    for k in 0..n {
        let mut best = k;
        let mut best_mag = lu[(k, k)].abs_sq();
        for i in k + 1..n {
            let m = lu[(i, k)].abs_sq();
            if m > best_mag {
                best_mag = m;
                best = i;
            }
        }
        if best_mag.is_zero() {
            return None;
        }
        piv.push(best);
        if best != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(best, j)];
                lu[(best, j)] = t;
            }
        }
        let inv_piv = Cdd::ONE / lu[(k, k)];
        for i in k + 1..n {
            let f = lu[(i, k)] * inv_piv;
            lu[(i, k)] = f;
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                lu[(i, j)] = lu[(i, j)] - f * lu[(k, j)];
            }
        }
    }
    Some(Lu { lu, piv })
}

impl Lu {
    pub fn solve_mat(&self, b: &DMat) -> DMat {
        let n = self.lu.rows;
        assert_eq!(b.rows, n);
        let mut x = b.clone();
        // L is stored in the final row order, so all interchanges must be
        // applied to the right-hand side before the triangular solves.
        for k in 0..n {
            let p = self.piv[k];
            if p != k {
                for j in 0..x.cols {
                    let t = x[(k, j)];
                    x[(k, j)] = x[(p, j)];
                    x[(p, j)] = t;
                }
            }
        }
        for k in 0..n {
            for i in k + 1..n {
                let f = self.lu[(i, k)];
                if f.is_zero() {
                    continue;
                }
                for j in 0..x.cols {
                    x[(i, j)] = x[(i, j)] - f * x[(k, j)];
                }
            }
        }
        for k in (0..n).rev() {
            let d = Cdd::ONE / self.lu[(k, k)];
            for j in 0..x.cols {
                x[(k, j)] = x[(k, j)] * d;
            }
            for i in 0..k {
                let f = self.lu[(i, k)];
                if f.is_zero() {
                    continue;
                }
                for j in 0..x.cols {
                    x[(i, j)] = x[(i, j)] - f * x[(k, j)];
                }
            }
        }
        x
    }
}

/// Convenience direct solve.
pub fn solve(a: &DMat, b: &DMat) -> Option<DMat> {
    lu_factor(a).map(|f| f.solve_mat(b))
}

/// Lower Cholesky factor of a Hermitian positive definite matrix.
pub fn cholesky(a: &DMat) -> Option<DMat> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut l = DMat::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d = d - l[(j, k)].abs_sq();
        }
        if !d.is_positive() {
            return None;
        }
        let dj = d.sqrt();
        l[(j, j)] = Cdd::real(dj);
        let inv = Dd::ONE / dj;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s = s - l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s.scale(inv);
        }
    }
    Some(l)
}

/// Forward-solve L X = B with L lower triangular.
pub fn solve_lower(l: &DMat, b: &DMat) -> DMat {
    let n = l.rows;
    let mut x = b.clone();
    for i in 0..n {
        for k in 0..i {
            let f = l[(i, k)];
            if f.is_zero() {
                continue;
            }
            for j in 0..x.cols {
                x[(i, j)] = x[(i, j)] - f * x[(k, j)];
            }
        }
        let d = Cdd::ONE / l[(i, i)];
        for j in 0..x.cols {
            x[(i, j)] = x[(i, j)] * d;
        }
    }
    x
}

/// Back-solve L^H X = B with L lower triangular.
pub fn solve_lower_conj_transpose(l: &DMat, b: &DMat) -> DMat {
    let n = l.rows;
    let mut x = b.clone();
    for i in (0..n).rev() {
        for k in i + 1..n {
            let f = l[(k, i)].conj();
            if f.is_zero() {
                continue;
            }
            for j in 0..x.cols {
                x[(i, j)] = x[(i, j)] - f * x[(k, j)];
            }
        }
        let d = Cdd::ONE / l[(i, i)].conj();
        for j in 0..x.cols {
            x[(i, j)] = x[(i, j)] * d;
        }
    }
    x
}

/// Eigenvalues (ascending) and eigenvectors of a complex Hermitian matrix by
/// cyclic Jacobi with phase-aware rotations.
pub fn jacobi_hermitian(a: &DMat) -> (Vec<Dd>, DMat) {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.clone();
    let mut v = DMat::identity(n);
    let scale = m.frobenius().max(Dd::from_f64(1e-300));
    let tol = scale * Dd::from_f64(1e-31);

    for _sweep in 0..80 {
        let mut off = Dd::ZERO;
        for p in 0..n {
            for q in p + 1..n {
                off = off + m[(p, q)].abs_sq();
            }
        }
        if off.sqrt() < tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let w = m[(p, q)];
                let aw = w.abs();
                if aw < tol * Dd::from_f64(1e-3) {
                    continue;
                }
                // phase e^{i phi} = w / |w|
                let cphi = w.re / aw;
                let sphi = w.im / aw;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (Dd::from_f64(2.0) * aw);
                // small-magnitude root of t^2 - 2 tau t - 1 = 0
                let t = {
                    let root = (Dd::ONE + tau * tau).sqrt();
                    if tau.is_negative() {
                        Dd::ONE / (-tau + root)
                    } else {
                        -Dd::ONE / (tau + root)
                    }
                };
                let c = Dd::ONE / (Dd::ONE + t * t).sqrt();
                let s = t * c;
                let phase = Cdd::new(cphi, sphi);
                let sp = phase.scale(s); // s e^{i phi}
                // Update rows/columns r not in {p,q}.
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let mrp = m[(r, p)];
                    let mrq = m[(r, q)];
                    let new_rp = mrp.scale(c) + mrq * sp.conj();
                    let new_rq = mrq.scale(c) - mrp * sp;
                    m[(r, p)] = new_rp;
                    m[(r, q)] = new_rq;
                    m[(p, r)] = new_rp.conj();
                    m[(q, r)] = new_rq.conj();
                }
                let two = Dd::from_f64(2.0);
                let new_pp = app * (c * c) + aqq * (s * s) + two * aw * s * c;
                let new_qq = app * (s * s) + aqq * (c * c) - two * aw * s * c;
                m[(p, p)] = Cdd::real(new_pp);
                m[(q, q)] = Cdd::real(new_qq);
                m[(p, q)] = Cdd::ZERO;
                m[(q, p)] = Cdd::ZERO;
                for r in 0..n {
                    let vrp = v[(r, p)];
                    let vrq = v[(r, q)];
                    v[(r, p)] = vrp.scale(c) + vrq * sp.conj();
                    v[(r, q)] = vrq.scale(c) - vrp * sp;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[(i, i)]
            .re
            .partial_cmp(&m[(j, j)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let vals: Vec<Dd> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vecs = DMat::zeros(n, n);
    for (newj, &oldj) in order.iter().enumerate() {
        for i in 0..n {
            vecs[(i, newj)] = v[(i, oldj)];
        }
    }
    (vals, vecs)
}

/// Eigendecomposition of the Hermitian-definite pencil (A, B): eigenvalues
/// ascending and B-orthonormal eigenvectors (X^H B X = I).
pub fn pencil_eig(a: &DMat, b: &DMat) -> Option<(Vec<Dd>, DMat)> {
    let l = cholesky(b)?;
    // C = L^-1 A L^-H
    let x = solve_lower(&l, a);
    let c = solve_lower(&l, &x.conj_transpose()).conj_transpose();
    let (vals, q) = jacobi_hermitian(&c);
    let vecs = solve_lower_conj_transpose(&l, &q);
    Some((vals, vecs))
}

/// Verify the annihilation: max column residual ||A x - lambda B x||_2.
pub fn pencil_residual(a: &DMat, b: &DMat, vals: &[Dd], vecs: &DMat) -> Dd {
    let av = a.matmul(vecs);
    let bv = b.matmul(vecs);
    let mut worst = Dd::ZERO;
    for (j, &lam) in vals.iter().enumerate() {
        let mut s = Dd::ZERO;
        for i in 0..a.rows {
            let r = av[(i, j)] - bv[(i, j)].scale(lam);
            s = s + r.abs_sq();
        }
        worst = worst.max(s.sqrt());
    }
    worst
}

/// Estimate of ||A^-1||_2 via power iteration on (A^H A)^-1, i.e. the inverse
/// smallest singular value. Converges from below, which is the safe direction
/// for checking upper-bound theorems.
pub fn inv_norm2_est(a: &DMat, iters: usize) -> Option<Dd> {
    let n = a.rows;
    let fa = lu_factor(a)?;
    let fah = lu_factor(&a.conj_transpose())?;
    let mut x = DMat::zeros(n, 1);
    for i in 0..n {
        x[(i, 0)] = Cdd::from_f64(1.0 + (i as f64 * 0.37).sin(), (i as f64 * 0.61).cos());
    }
    for _ in 0..iters {
        // y = A^-1 A^-H x
        let w = fah.solve_mat(&x);
        let y = fa.solve_mat(&w);
        let norm = y.frobenius();
        if norm.is_zero() {
            return Some(Dd::ZERO);
        }
        let inv = Cdd::real(Dd::ONE / norm);
        x = y.scale(inv);
    }
    // final Rayleigh step: ||A^-1 A^-H x||^(1/2) with unit x
    let w = fah.solve_mat(&x);
    let y = fa.solve_mat(&w);
    Some(y.frobenius().sqrt())
}
