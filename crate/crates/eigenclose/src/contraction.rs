//! Approximate-inverse contraction bounds.
//!
//! The workhorse inequality behind both the exclusion-band certificates and
//! the general verified linear solver: with a floating approximate inverse R
//! of mid(D), if an upper bound of ||I - R D||_inf over all members D of an
//! interval matrix falls below 1, every member is nonsingular and residual
//! iteration converges.
//!
//! The bound splits as |I - R D| <= |I - fl(R Dmid)| + gamma |R||Dmid| +
//! |R| rad(D) entrywise, so only one plain complex matmul and two
//! upward-rounded nonnegative matmuls are needed; `gamma` covers the rounding
//! of the plain matmul.

use crate::interval::round::*;
use crate::numerics::CMat;
use num_complex::Complex64;

/// Sparse interval matrix in midpoint/disc-radius form.
pub struct SparseIntervalEntries {
    pub n: usize,
    /// (row, col, midpoint, disc radius)
    pub entries: Vec<(usize, usize, Complex64, f64)>,
}

/// Conservative rounding factor k*u/(1 - k*u) for complex accumulations of
/// length up to n.
pub fn gamma_factor(n: usize) -> f64 {
    let u = 0.5 * f64::EPSILON;
    let ku = mul_up((2 * n + 4) as f64, u);
    div_up(ku, sub_down(1.0, ku))
}

/// Upper bound of ||I - R `[D]`||_inf over all members of `[D]`.
pub fn contraction_norm_upper(r: &CMat, d: &SparseIntervalEntries) -> f64 {
    let n = d.n;
    assert_eq!(r.rows, n);
    assert_eq!(r.cols, n);

    // P = fl(R * Dmid); U >= |R| |Dmid| and W >= |R| rad(D), upward rounded.
    let mut p = vec![Complex64::new(0.0, 0.0); n * n];
    let mut u_bound = vec![0.0f64; n * n];
    let mut w_bound = vec![0.0f64; n * n];
    for &(k, j, mid, rad) in &d.entries {
        let mid_mag = cnorm_up(mid);
        for i in 0..n {
            let rik = r[(i, k)];
            p[i * n + j] += rik * mid;
            let rmag = cnorm_up(rik);
            u_bound[i * n + j] = add_up(u_bound[i * n + j], mul_up(rmag, mid_mag));
            w_bound[i * n + j] = add_up(w_bound[i * n + j], mul_up(rmag, rad));
        }
    }

    let gamma = gamma_factor(n);
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut row = 0.0f64;
        for j in 0..n {
            let pij = p[i * n + j];
            let delta = if i == j { 1.0 } else { 0.0 };
            // |delta - pij| with outward rounding of the subtraction
            let re = RealIv::sub_point(delta, pij.re);
            let im = RealIv::sub_point(0.0, pij.im);
            let s1 = sqrt_up(add_up(sq_up(re), sq_up(im)));
            let e = add_up(
                s1,
                add_up(mul_up(gamma, u_bound[i * n + j]), w_bound[i * n + j]),
            );
            row = add_up(row, e);
        }
        worst = worst.max(row);
    }
    worst
}

/// |a - b| upper bound for exact binary64 operands.
struct RealIv;
impl RealIv {
    #[inline]
    fn sub_point(a: f64, b: f64) -> f64 {
        sub_down(a, b).abs().max(sub_up(a, b).abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::lu;

    #[test]
    fn identity_contracts() {
        let n = 4;
        let mut entries = Vec::new();
        for i in 0..n {
            entries.push((i, i, Complex64::new(1.0, 0.0), 0.0));
        }
        let d = SparseIntervalEntries { n, entries };
        let r = CMat::identity(n);
        let beta = contraction_norm_upper(&r, &d);
        assert!(beta < 1e-12, "beta={beta}");
    }

    #[test]
    fn wide_radius_fails() {
        let n = 2;
        let entries = vec![
            (0, 0, Complex64::new(1.0, 0.0), 1.5),
            (1, 1, Complex64::new(1.0, 0.0), 0.0),
        ];
        let d = SparseIntervalEntries { n, entries };
        let r = CMat::identity(n);
        assert!(contraction_norm_upper(&r, &d) > 1.0);
    }

    #[test]
    fn inverse_preconditioner_contracts() {
        let n = 5;
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Complex64::new(
                    ((i * 3 + j) as f64 * 0.61).sin() * 0.4,
                    ((i + j * 2) as f64 * 0.23).cos() * 0.3,
                );
            }
            m[(i, i)] += Complex64::new(3.0, 0.0);
        }
        let r = lu::factor(&m).unwrap().inverse();
        let entries: Vec<_> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, m[(i, j)], 1e-10))
            .collect();
        let d = SparseIntervalEntries { n, entries };
        let beta = contraction_norm_upper(&r, &d);
        assert!(beta < 1e-6, "beta={beta}");
    }
}
