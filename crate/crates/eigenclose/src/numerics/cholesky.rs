//! Floating complex Cholesky, dense and banded.
//!
//! Success/failure of these factorizations is the computational core of the
//! positive-definiteness certificates in [`crate::certify`]; the rigorous
//! error argument lives there, not here.

use num_complex::Complex64;

/// Attempt an in-place dense Cholesky of the Hermitian matrix given as
/// row-major lower data; returns false on a nonpositive pivot.
pub fn dense_in_place(a: &mut [Complex64], n: usize) -> bool {
    for j in 0..n {
        let mut d = a[j * n + j].re;
        for k in 0..j {
            d -= a[j * n + k].norm_sqr();
        }
        if !(d > 0.0) || !d.is_finite() {
            return false;
        }
        let dj = d.sqrt();
        a[j * n + j] = Complex64::new(dj, 0.0);
        let inv = 1.0 / dj;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k].conj();
            }
            a[i * n + j] = s * inv;
        }
    }
    true
}

/// Dense Cholesky returning the lower factor (row-major full storage with
/// zero strict upper part) or `None`.
pub fn dense(a: &[Complex64], n: usize) -> Option<Vec<Complex64>> {
    let mut l = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..=i {
            l[i * n + j] = a[i * n + j];
        }
    }
    if dense_in_place(&mut l, n) {
        Some(l)
    } else {
        None
    }
}

/// Banded Hermitian Cholesky; `band[r * n + j]` holds entry (j + r, j) for
/// r = 0..=bw (lower band, diagonal at r = 0). Factors in place, false on a
/// nonpositive pivot.
pub fn banded_in_place(band: &mut [Complex64], n: usize, bw: usize) -> bool {
    let at = |r: usize, c: usize| r * n + c;
    for j in 0..n {
        let mut d = band[at(0, j)].re;
        let k0 = j.saturating_sub(bw);
        for k in k0..j {
            d -= band[at(j - k, k)].norm_sqr();
        }
        if !(d > 0.0) || !d.is_finite() {
            return false;
        }
        let dj = d.sqrt();
        band[at(0, j)] = Complex64::new(dj, 0.0);
        let inv = 1.0 / dj;
        let imax = (j + bw).min(n - 1);
        for i in j + 1..=imax {
            let mut s = band[at(i - j, j)];
            let k0 = i.saturating_sub(bw).max(j.saturating_sub(bw));
            for k in k0..j {
                if i - k <= bw {
                    s -= band[at(i - k, k)] * band[at(j - k, k)].conj();
                }
            }
            band[at(i - j, j)] = s * inv;
        }
    }
    true
}

/// Forward/backward solve with a dense lower Cholesky factor: solves
/// L L^H x = b for one column, in place.
pub fn dense_solve(l: &[Complex64], n: usize, x: &mut [Complex64]) {
    for i in 0..n {
        let mut s = x[i];
        for k in 0..i {
            s -= l[i * n + k] * x[k];
        }
        x[i] = s / l[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in i + 1..n {
            s -= l[k * n + i].conj() * x[k];
        }
        x[i] = s / l[i * n + i];
    }
}
