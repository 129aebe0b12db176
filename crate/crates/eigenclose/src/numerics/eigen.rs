//! Approximate Hermitian eigensolvers: cyclic Jacobi with phase-aware
//! rotations, plus the definite-pencil reduction through Cholesky.

use super::{CMat, cholesky};
use num_complex::Complex64;

/// Eigenvalues (ascending) and eigenvectors of a complex Hermitian matrix.
pub fn hermitian_eig(a: &CMat) -> (Vec<f64>, CMat) {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.clone();
    let mut v = CMat::identity(n);
    let scale = m.frobenius().max(f64::MIN_POSITIVE);
    let tol = scale * 1e-15;

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let w = m[(p, q)];
                let aw = w.norm();
                if aw <= tol * 1e-2 {
                    continue;
                }
                let phase = w / aw; // e^{i phi}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * aw);
                // small-magnitude root of t^2 - 2 tau t - 1 = 0
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = phase * s;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let mrp = m[(r, p)];
                    let mrq = m[(r, q)];
                    let new_rp = mrp * c + mrq * sp.conj();
                    let new_rq = mrq * c - mrp * sp;
                    m[(r, p)] = new_rp;
                    m[(r, q)] = new_rq;
                    m[(p, r)] = new_rp.conj();
                    m[(q, r)] = new_rq.conj();
                }
                let new_pp = app * c * c + aqq * s * s + 2.0 * aw * s * c;
                let new_qq = app * s * s + aqq * c * c - 2.0 * aw * s * c;
                m[(p, p)] = Complex64::new(new_pp, 0.0);
                m[(q, q)] = Complex64::new(new_qq, 0.0);
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    let vrp = v[(r, p)];
                    let vrq = v[(r, q)];
                    v[(r, p)] = vrp * c + vrq * sp.conj();
                    v[(r, q)] = vrq * c - vrp * sp;
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
    let vals: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vecs = CMat::zeros(n, n);
    for (newj, &oldj) in order.iter().enumerate() {
        for i in 0..n {
            vecs[(i, newj)] = v[(i, oldj)];
        }
    }
    (vals, vecs)
}

/// Eigendecomposition of a Hermitian-definite pencil (A, B): eigenvalues
/// ascending and B-orthonormal eigenvectors (X^H B X ~ I). `None` when the
/// floating Cholesky of B breaks down.
pub fn definite_pencil_eig(a: &CMat, b: &CMat) -> Option<(Vec<f64>, CMat)> {
    let n = a.rows;
    let l = cholesky::dense(&b.data, n)?;
    // C = L^-1 A L^-H
    let mut c = a.clone();
    // forward solve L * X = A, column blocks
    for j in 0..n {
        for i in 0..n {
            let mut s = c[(i, j)];
            for k in 0..i {
                s -= l[i * n + k] * c[(k, j)];
            }
            c[(i, j)] = s / l[i * n + i];
        }
    }
    // now C <- C * L^-H, i.e. solve rows against L^H from the right:
    // (C L^-H)^H = L^-1 C^H
    let mut ch = c.conj_transpose();
    for j in 0..n {
        for i in 0..n {
            let mut s = ch[(i, j)];
            for k in 0..i {
                s -= l[i * n + k] * ch[(k, j)];
            }
            ch[(i, j)] = s / l[i * n + i];
        }
    }
    let c = ch.conj_transpose();
    let (vals, q) = hermitian_eig(&c);
    // eigenvectors X = L^-H Q
    let mut x = q;
    for j in 0..x.cols {
        for i in (0..n).rev() {
            let mut s = x[(i, j)];
            for k in i + 1..n {
                s -= l[k * n + i].conj() * x[(k, j)];
            }
            x[(i, j)] = s / l[i * n + i];
        }
    }
    Some((vals, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix() {
        let mut a = CMat::zeros(3, 3);
        a[(0, 0)] = Complex64::new(3.0, 0.0);
        a[(1, 1)] = Complex64::new(-1.0, 0.0);
        a[(2, 2)] = Complex64::new(0.5, 0.0);
        let (vals, _) = hermitian_eig(&a);
        assert_eq!(vals, vec![-1.0, 0.5, 3.0]);
    }

    #[test]
    fn residual_small() {
        let n = 5;
        let mut a = CMat::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = Complex64::new((i as f64 * 0.9).sin() * 2.0, 0.0);
            for j in i + 1..n {
                let z = Complex64::new(
                    ((i * 3 + j) as f64 * 0.7).sin(),
                    ((i + j * 2) as f64 * 0.4).cos(),
                );
                a[(i, j)] = z;
                a[(j, i)] = z.conj();
            }
        }
        let (vals, vecs) = hermitian_eig(&a);
        let av = a.matmul(&vecs);
        for (j, &lam) in vals.iter().enumerate() {
            let mut r = 0.0f64;
            for i in 0..n {
                r = r.max((av[(i, j)] - vecs[(i, j)] * lam).norm());
            }
            assert!(r < 1e-12, "residual {r} at {j}");
        }
    }

    #[test]
    fn pencil_diag_case() {
        let mut a = CMat::zeros(2, 2);
        a[(0, 0)] = Complex64::new(2.0, 0.0);
        a[(1, 1)] = Complex64::new(6.0, 0.0);
        let mut b = CMat::identity(2);
        b[(1, 1)] = Complex64::new(2.0, 0.0);
        let (vals, vecs) = definite_pencil_eig(&a, &b).unwrap();
        assert!((vals[0] - 2.0).abs() < 1e-14);
        assert!((vals[1] - 3.0).abs() < 1e-14);
        // B-orthonormality
        let g = vecs.conj_transpose().matmul(&b).matmul(&vecs);
        assert!((g[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!((g[(1, 1)].re - 1.0).abs() < 1e-12);
        assert!(g[(0, 1)].norm() < 1e-12);
    }
}
