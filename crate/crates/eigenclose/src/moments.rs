//! Rigorous enclosures of the truncated contour-integral moments and the
//! block Hankel pencil assembled from them.
//!
//! Everything is expressed in scaled coordinates (window mapped to [-1, 1],
//! nodes on the unit circle), so the p-th moment is
//! (1/N) sum_j z_j^(p+1) V^H B Y_j with Y_j the verified node solutions.
//! The enclosure of the truncated moment absorbs all rounding through
//! interval evaluation; the part of the quadrature contributed by
//! eigenvalues outside the circle is bounded by a geometric-series tail and
//! added to every entry's radius.
//!
//! Enclosing the truncated inside-moments (rather than the exact contour
//! integrals) loses nothing: truncation multiplies each inside eigenvalue's
//! rank-one contribution by a positive quadrature weight, and positive
//! per-eigenvalue weights can be absorbed into a rescaling of the probe
//! block, which leaves the generalized eigenvalues of the block Hankel
//! pencil unchanged.

use crate::error::{Error, Result};
use crate::interval::{
    ComplexInterval, IntervalMatrix, RealInterval, pi_bracket, round::*, sin_cos,
};
use crate::linsolve::SolveCertificate;
use crate::numerics::CMat;
use num_complex::Complex64;

/// Target interval with its expected eigenvalue count.
#[derive(Clone, Copy, Debug)]
pub struct SpectralWindow {
    pub lo: f64,
    pub hi: f64,
    pub m: usize,
}

impl SpectralWindow {
    pub fn new(lo: f64, hi: f64, m: usize) -> Result<SpectralWindow> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Config("window must satisfy a < b".into()));
        }
        Ok(SpectralWindow { lo, hi, m })
    }

    /// Center (b + a)/2 as a rigorous interval.
    pub fn gamma(&self) -> RealInterval {
        RealInterval::point(self.lo)
            .add(&RealInterval::point(self.hi))
            .scale(0.5)
    }

    /// Radius (b - a)/2 as a rigorous interval.
    pub fn rho(&self) -> RealInterval {
        RealInterval::point(self.hi)
            .sub(&RealInterval::point(self.lo))
            .scale(0.5)
    }
}

/// One quadrature node: angle enclosure, unit-circle point enclosure and the
/// certified lower bound of |Im z| over the node interval.
#[derive(Clone, Debug)]
pub struct QuadNode {
    pub theta: RealInterval,
    pub z: ComplexInterval,
    pub im_lower: f64,
}

#[derive(Clone, Debug)]
pub struct QuadratureGrid {
    nodes: Vec<QuadNode>,
}

impl QuadratureGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[QuadNode] {
        &self.nodes
    }

    /// Smallest certified |Im z| over all nodes.
    pub fn min_im_lower(&self) -> f64 {
        self.nodes
            .iter()
            .map(|n| n.im_lower)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Enclose the equi-distributed angles theta_j = (2j-1) pi / N and the
/// unit-circle nodes z_j = e^{i theta_j}. N must be even; the second half of
/// the grid is the exact conjugate mirror of the first (theta_{N+1-j} =
/// 2 pi - theta_j), which keeps node pairs symmetric about the real axis.
pub fn build_grid(n_nodes: usize) -> Result<QuadratureGrid> {
    if n_nodes < 2 || !n_nodes.is_multiple_of(2) {
        return Err(Error::Config(format!(
            "node count {n_nodes} must be even and at least 2"
        )));
    }
    let pi = pi_bracket();
    let denom = RealInterval::point(n_nodes as f64);
    let mut nodes = vec![
        QuadNode {
            theta: RealInterval::ZERO,
            z: ComplexInterval::ZERO,
            im_lower: 0.0,
        };
        n_nodes
    ];
    let two_pi = pi.scale(2.0);
    for j in 1..=n_nodes / 2 {
        let theta = pi.scale((2 * j - 1) as f64).div(&denom)?;
        let (sin_t, cos_t) = sin_cos(&theta)?;
        let z = ComplexInterval::new(cos_t, sin_t);
        let im_lower = z.im.mig();
        if !(im_lower > 0.0) {
            return Err(Error::Domain(format!(
                "node {j} enclosure touches the real axis"
            )));
        }
        nodes[j - 1] = QuadNode { theta, z, im_lower };
        // mirror node: theta' = 2 pi - theta, z' = conj(z)
        let theta_m = two_pi.sub(&theta);
        nodes[n_nodes - j] = QuadNode {
            theta: theta_m,
            z: z.conj(),
            im_lower,
        };
    }
    Ok(QuadratureGrid { nodes })
}

/// Smallest admissible even node count from the quadrature tolerance:
/// N >= log(delta / (c + delta)) / log(1 / t) with
/// c = (r - m) ||V^H B V||_F t^(2M-1), in scaled units where t > 1 is the
/// certified gap bound. The outer bound is re-evaluated rigorously for the
/// chosen N afterwards, so plain arithmetic suffices here.
pub fn choose_n(
    delta: f64,
    r_minus_m: usize,
    lambda_hat_lower: f64,
    vbv_upper: f64,
    moment_order: usize,
) -> Result<usize> {
    if !(delta > 0.0) {
        return Err(Error::Config("delta must be positive".into()));
    }
    let floor_n = (2 * moment_order).max(2);
    if r_minus_m == 0 {
        return Ok(floor_n);
    }
    if !(lambda_hat_lower > 1.0) {
        return Err(Error::Config(format!(
            "gap bound {lambda_hat_lower} must exceed 1; no convergent truncation"
        )));
    }
    let c = r_minus_m as f64 * vbv_upper * lambda_hat_lower.powi((2 * moment_order - 1) as i32);
    let ratio = ((c + delta) / delta).ln() / lambda_hat_lower.ln();
    if !ratio.is_finite() || ratio > 1e7 {
        return Err(Error::Config(format!(
            "required node count {ratio:.1} is impractical; widen the gap or relax delta"
        )));
    }
    let mut n = ratio.ceil().max(0.0) as usize;
    if n % 2 == 1 {
        n += 1;
    }
    Ok(n.max(floor_n))
}

fn pow_up(x: f64, k: usize) -> f64 {
    let mut acc = 1.0f64;
    for _ in 0..k {
        acc = mul_up(acc, x);
    }
    acc
}

fn pow_up_sq(x: f64, mut k: usize) -> f64 {
    // upper bound of x^k by repeated squaring (x >= 0)
    let mut acc = 1.0f64;
    let mut base = x;
    while k > 0 {
        if k & 1 == 1 {
            acc = mul_up(acc, base);
        }
        base = mul_up(base, base);
        k >>= 1;
    }
    acc
}

/// Rigorous upper bound of the outside-eigenvalue contribution to the p-th
/// truncated moment:
/// (r - m) t^p (q^N / (1 - q^N)) ||V^H B V||_F with q = 1/t, evaluated with
/// outward rounding. Valid because the true expression is decreasing in the
/// outside distance for p < N, so the certified lower bound t is the worst
/// case.
pub fn outer_bound(
    p: usize,
    r_minus_m: usize,
    lambda_hat_lower: f64,
    vbv_upper: f64,
    n_nodes: usize,
) -> Result<f64> {
    if r_minus_m == 0 {
        return Ok(0.0);
    }
    if !(lambda_hat_lower > 1.0) {
        return Err(Error::Config("gap bound must exceed 1".into()));
    }
    if n_nodes <= p {
        return Err(Error::Config(format!(
            "node count {n_nodes} must exceed the moment order {p}"
        )));
    }
    let q_up = div_up(1.0, lambda_hat_lower);
    let qn_up = pow_up_sq(q_up, n_nodes);
    let denom = sub_down(1.0, qn_up);
    if !(denom > 0.0) {
        return Err(Error::Config(
            "geometric tail does not contract for this N".into(),
        ));
    }
    let tp_up = pow_up(lambda_hat_lower, p);
    let tail = div_up(mul_up(tp_up, qn_up), denom);
    Ok(mul_up(mul_up(r_minus_m as f64, vbv_upper), tail))
}

/// Upper bound of ||V^H B V||_F from the enclosure of B V.
pub fn vbv_norm_upper(v: &CMat, bv: &IntervalMatrix) -> f64 {
    let vh = IntervalMatrix::from_points(v.rows, v.cols, &v.data).conj_transpose();
    match vh.matmul(bv) {
        Ok(prod) => prod.frobenius_norm_upper(),
        Err(_) => f64::INFINITY,
    }
}

/// Per-node projection `W_j = (B V)^H [Y_j]`, an L x L interval matrix.
pub fn node_projection(bv: &IntervalMatrix, cert: &SolveCertificate) -> Result<IntervalMatrix> {
    bv.conj_transpose().matmul(&cert.enclosure())
}

/// Enclosure of one truncated moment in center/disc-radius form. The center
/// is exactly Hermitian; the radius matrix is symmetric and already includes
/// the outside-tail bound.
#[derive(Clone, Debug)]
pub struct MomentEnclosure {
    pub order: usize,
    pub block: usize,
    pub center: Vec<Complex64>,
    pub radius: Vec<f64>,
}

impl MomentEnclosure {
    pub fn to_interval_matrix(&self) -> IntervalMatrix {
        let l = self.block;
        let mut m = IntervalMatrix::zeros(l, l);
        for i in 0..l {
            for j in 0..l {
                m[(i, j)] =
                    ComplexInterval::point(self.center[i * l + j]).inflate(self.radius[i * l + j]);
            }
        }
        m.hermitianize().expect("square")
    }

    pub fn max_radius(&self) -> f64 {
        self.radius.iter().copied().fold(0.0, f64::max)
    }
}

/// Assemble the p-th moment enclosure from per-node projections:
/// (1/N) sum_j z_j^(p+1) W_j, Hermitian-symmetrized, with the outside tail
/// added to every entry radius. Summation runs in node order.
pub fn assemble_moment(
    p: usize,
    grid: &QuadratureGrid,
    projections: &[IntervalMatrix],
    outer: f64,
) -> Result<MomentEnclosure> {
    let n_nodes = grid.len();
    if projections.len() != n_nodes {
        return Err(Error::DimensionMismatch(format!(
            "{} projections for {} nodes",
            projections.len(),
            n_nodes
        )));
    }
    if n_nodes == 0 {
        return Err(Error::Config("empty grid".into()));
    }
    let l = projections[0].rows();
    let mut sum = IntervalMatrix::zeros(l, l);
    for (node, w) in grid.nodes().iter().zip(projections.iter()) {
        let zp = node.z.powi((p + 1) as u32);
        sum = sum.add(&w.scale_complex(&zp))?;
    }
    let inv_n = RealInterval::ONE.div(&RealInterval::point(n_nodes as f64))?;
    let scaled = sum.scale_real(&inv_n).hermitianize()?;
    if !scaled.is_valid() {
        return Err(Error::InvalidInterval("moment enclosure".into()));
    }
    let center = scaled.midpoint_hermitian()?;
    let mut radius = scaled.disc_radii_about(&center);
    for r in radius.iter_mut() {
        *r = add_up(*r, outer);
    }
    Ok(MomentEnclosure {
        order: p,
        block: l,
        center,
        radius,
    })
}

/// The interval block Hankel pair: `h_lt` from moments 1..=2M-1 and `h`
/// from moments 0..=2M-2, both LM x LM and Hermitian-tagged.
#[derive(Clone, Debug)]
pub struct HankelPencilEnclosure {
    pub h_lt: IntervalMatrix,
    pub h: IntervalMatrix,
}

pub fn build_hankel(
    moments: &[MomentEnclosure],
    block_size: usize,
    moment_order: usize,
) -> Result<HankelPencilEnclosure> {
    let (l, m) = (block_size, moment_order);
    if moments.len() < 2 * m {
        return Err(Error::Config(format!(
            "need {} moments, have {}",
            2 * m,
            moments.len()
        )));
    }
    for (p, mom) in moments.iter().enumerate().take(2 * m) {
        if mom.order != p || mom.block != l {
            return Err(Error::Config(format!(
                "moment {p} has order {} and block {}",
                mom.order, mom.block
            )));
        }
    }
    let as_intervals: Vec<IntervalMatrix> = moments
        .iter()
        .take(2 * m)
        .map(|mm| mm.to_interval_matrix())
        .collect();
    let dim = l * m;
    let mut h_lt = IntervalMatrix::zeros(dim, dim);
    let mut h = IntervalMatrix::zeros(dim, dim);
    for bi in 0..m {
        for bj in 0..m {
            let src_lt = &as_intervals[bi + bj + 1];
            let src_h = &as_intervals[bi + bj];
            for r in 0..l {
                for c in 0..l {
                    h_lt[(bi * l + r, bj * l + c)] = src_lt[(r, c)];
                    h[(bi * l + r, bj * l + c)] = src_h[(r, c)];
                }
            }
        }
    }
    Ok(HankelPencilEnclosure {
        h_lt: h_lt.hermitianize()?,
        h: h.hermitianize()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify;
    use crate::linsolve::{ShiftedSystem, approx_solve, enclose_fast_pd};
    use crate::operator::{HermitianOperator, ScaledPencil};
    use refmath::dd::Dd;
    use refmath::trig::{dd_pi, dd_sin_cos};

    #[test]
    fn window_scaling_intervals() {
        let w = SpectralWindow::new(1.0, 3.0, 1).unwrap();
        assert!(w.gamma().contains(2.0) && w.gamma().width() < 1e-15);
        assert!(w.rho().contains(1.0) && w.rho().width() < 1e-15);
    }

    #[test]
    fn grid_four_nodes() {
        let grid = build_grid(4).unwrap();
        assert_eq!(grid.len(), 4);
        // theta_1 = pi/4, z_1 = (sqrt2/2)(1 + i) via the double-double oracle
        let q = dd_pi() * Dd::from_f64(0.25);
        let (s, c) = dd_sin_cos(q);
        let n0 = &grid.nodes()[0];
        assert!(n0.theta.contains(q.to_f64()));
        assert!(n0.z.re.contains(c.to_f64()));
        assert!(n0.z.im.contains(s.to_f64()));
        assert!(n0.z.re.width() < 1e-14);
        // conjugate mirrors are exact by construction
        for j in 0..4 {
            let zj = &grid.nodes()[j].z;
            let zm = &grid.nodes()[3 - j].z;
            assert_eq!(*zj, zm.conj());
        }
    }

    #[test]
    fn grid_im_lower_bound() {
        for n in [4usize, 8, 30, 128] {
            let grid = build_grid(n).unwrap();
            let want = (std::f64::consts::PI / n as f64).sin();
            assert!(grid.min_im_lower() >= want - 1e-10, "n={n}");
            assert!(grid.min_im_lower() <= want + 1e-10, "n={n}");
        }
        assert!(build_grid(5).is_err());
        assert!(build_grid(0).is_err());
    }

    #[test]
    fn choose_n_frozen_example() {
        // c = 2^3 = 8; N >= ln((8+1e-15)/1e-15)/ln 2 = 52.83.. -> 54
        let n = choose_n(1e-15, 1, 2.0, 1.0, 2).unwrap();
        assert_eq!(n, 54);
        // a huge gap still needs only a handful of nodes
        let n = choose_n(1e-15, 1, 1e6, 1.0, 2).unwrap();
        assert_eq!(n, 6);
        // the 2M floor binds when the tail is already tiny at N = 2M
        let n = choose_n(1.0, 1, 10.0, 1e-6, 2).unwrap();
        assert_eq!(n, 4);
        // no outside eigenvalues
        assert_eq!(choose_n(1e-15, 0, 1.0, 1.0, 2).unwrap(), 4);
        // gap at or below 1 is rejected
        assert!(choose_n(1e-15, 1, 1.0, 1.0, 2).is_err());
    }

    #[test]
    fn outer_bound_frozen_examples() {
        // q = 1/2, N = 8: (1/256)/(1 - 1/256) = 1/255
        let b0 = outer_bound(0, 1, 2.0, 1.0, 8).unwrap();
        let exact = 1.0 / 255.0;
        assert!(b0 >= exact && b0 <= exact * (1.0 + 1e-12), "b0={b0}");
        let b1 = outer_bound(1, 1, 2.0, 1.0, 8).unwrap();
        assert!(b1 >= 2.0 * exact && b1 <= 2.0 * exact * (1.0 + 1e-12));
        // eight more nodes divide the tail by ~2^8
        let b16 = outer_bound(0, 1, 2.0, 1.0, 16).unwrap();
        let ratio = b0 / b16;
        assert!((ratio / 256.0 - 1.0).abs() < 0.01, "ratio={ratio}");
        // r = m means no tail
        assert_eq!(outer_bound(0, 0, 2.0, 1.0, 8).unwrap(), 0.0);
    }

    #[test]
    fn vbv_unit_vectors() {
        let b = HermitianOperator::diagonal(&[1.0; 4]).unwrap();
        let mut v = CMat::zeros(4, 1);
        v[(0, 0)] = Complex64::new(1.0, 0.0);
        let bv = b.matmat_interval(&v);
        let norm = vbv_norm_upper(&v, &bv);
        assert!(norm >= 1.0);
        assert!(norm <= 1.0 + 1e-14);

        // two orthonormal columns: frobenius sqrt(2)
        let mut v2 = CMat::zeros(4, 2);
        v2[(0, 0)] = Complex64::new(1.0, 0.0);
        v2[(1, 1)] = Complex64::new(1.0, 0.0);
        let bv2 = b.matmat_interval(&v2);
        let norm2 = vbv_norm_upper(&v2, &bv2);
        let s2 = 2.0f64.sqrt();
        assert!(norm2 >= s2 && norm2 <= s2 * (1.0 + 1e-14));
    }

    #[test]
    fn vbv_against_oracle() {
        let diag = [0.7, 1.3, 0.4, 2.2, 1.0];
        let b = HermitianOperator::diagonal(&diag).unwrap();
        let v = crate::problems::gaussian_matrix(5, 2, 31);
        let bv = b.matmat_interval(&v);
        let upper = vbv_norm_upper(&v, &bv);
        // exact V^H B V in double-double
        let mut g = refmath::DMat::zeros(2, 2);
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = refmath::Cdd::ZERO;
                for i in 0..5 {
                    let t = refmath::Cdd::from_f64(v[(i, r)].re, -v[(i, r)].im)
                        * refmath::Cdd::from_f64(diag[i], 0.0)
                        * refmath::Cdd::from_f64(v[(i, c)].re, v[(i, c)].im);
                    acc = acc + t;
                }
                g[(r, c)] = acc;
            }
        }
        let oracle = g.frobenius().to_f64();
        assert!(upper >= oracle);
        assert!(
            upper <= oracle * (1.0 + 1e-13),
            "upper={upper} oracle={oracle}"
        );
    }

    /// End-to-end moment assembly on a 2x2 diagonal pencil with one inside
    /// and one outside eigenvalue.
    #[test]
    fn moment_contains_filtered_inside_value() {
        let a = HermitianOperator::diagonal(&[0.5, 5.0]).unwrap();
        let b = HermitianOperator::diagonal(&[1.0, 1.0]).unwrap();
        let pencil = ScaledPencil::new(&a, &b, -1.0, 1.0).unwrap();
        let mut v = CMat::zeros(2, 1);
        v[(0, 0)] = Complex64::new(1.0, 0.0);
        v[(1, 0)] = Complex64::new(1.0, 0.0);
        let bv = b.matmat_interval(&v);
        let bv_mid = b.matmat(&v);

        let n_nodes = 16;
        let grid = build_grid(n_nodes).unwrap();
        let lam_b = certify::lambda_min_lower_bound(&b, 0.99).unwrap();
        let mut projections = Vec::new();
        for node in grid.nodes() {
            let sys = ShiftedSystem::new(&pencil, node.z, &bv, &bv_mid).unwrap();
            let y = approx_solve(&sys).unwrap();
            let cert = enclose_fast_pd(&sys, y, lam_b).unwrap();
            projections.push(node_projection(&bv, &cert).unwrap());
        }
        let vbv = vbv_norm_upper(&v, &bv);
        // true outside distance is 5; any certified bound t <= 5 is sound
        let outer0 = outer_bound(0, 1, 5.0, vbv, n_nodes).unwrap();
        let m0 = assemble_moment(0, &grid, &projections, outer0).unwrap();

        // Midpoint-rule filter: for these nodes z_j^N = -1, so the inside
        // weight is alpha = 1/(1 + lambda^N), not the plus-signed series.
        let alpha = Dd::ONE / (Dd::ONE + Dd::from_f64(0.5).powi(16));
        let enc = m0.to_interval_matrix();
        assert!(
            enc[(0, 0)].re.contains(alpha.to_f64()),
            "enclosure {:?} vs {}",
            enc[(0, 0)].re,
            alpha.to_f64()
        );
        assert!(enc[(0, 0)].im.contains(0.0));
        // radius keeps the additive tail
        assert!(m0.radius.iter().all(|&r| r >= outer0));

        // p = 1 moment of the single inside eigenvalue at scaled position 0.5
        let outer1 = outer_bound(1, 1, 5.0, vbv, n_nodes).unwrap();
        let m1 = assemble_moment(1, &grid, &projections, outer1).unwrap();
        let enc1 = m1.to_interval_matrix();
        let expect1 = Dd::from_f64(0.5) * alpha;
        assert!(enc1[(0, 0)].re.contains(expect1.to_f64()));
    }

    #[test]
    fn moment_point_center_toy() {
        // single eigenvalue at the window center: M_0 contains 1, M_1 contains 0
        let a = HermitianOperator::diagonal(&[0.0]).unwrap();
        let b = HermitianOperator::diagonal(&[1.0]).unwrap();
        let pencil = ScaledPencil::new(&a, &b, -1.0, 1.0).unwrap();
        let mut v = CMat::zeros(1, 1);
        v[(0, 0)] = Complex64::new(1.0, 0.0);
        let bv = b.matmat_interval(&v);
        let bv_mid = b.matmat(&v);
        let grid = build_grid(8).unwrap();
        let mut projections = Vec::new();
        for node in grid.nodes() {
            let sys = ShiftedSystem::new(&pencil, node.z, &bv, &bv_mid).unwrap();
            let y = approx_solve(&sys).unwrap();
            let cert = enclose_fast_pd(&sys, y, 1.0).unwrap();
            projections.push(node_projection(&bv, &cert).unwrap());
        }
        let m0 = assemble_moment(0, &grid, &projections, 0.0).unwrap();
        let m1 = assemble_moment(1, &grid, &projections, 0.0).unwrap();
        assert!(m0.to_interval_matrix()[(0, 0)].contains(Complex64::new(1.0, 0.0)));
        assert!(m1.to_interval_matrix()[(0, 0)].contains(Complex64::new(0.0, 0.0)));
        assert!(m0.max_radius() < 1e-12);
    }

    #[test]
    fn hankel_block_placement() {
        // L = 1, M = 2: H is 2x2 with (0,0)=M0, off=M1, (1,1)=M2
        let mk = |p: usize, val: f64| MomentEnclosure {
            order: p,
            block: 1,
            center: vec![Complex64::new(val, 0.0)],
            radius: vec![0.0],
        };
        let moments = vec![mk(0, 10.0), mk(1, 11.0), mk(2, 12.0), mk(3, 13.0)];
        let hp = build_hankel(&moments, 1, 2).unwrap();
        assert!(hp.h[(0, 0)].contains(Complex64::new(10.0, 0.0)));
        assert!(hp.h[(0, 1)].contains(Complex64::new(11.0, 0.0)));
        assert!(hp.h[(1, 0)].contains(Complex64::new(11.0, 0.0)));
        assert!(hp.h[(1, 1)].contains(Complex64::new(12.0, 0.0)));
        assert!(hp.h_lt[(0, 0)].contains(Complex64::new(11.0, 0.0)));
        assert!(hp.h_lt[(0, 1)].contains(Complex64::new(12.0, 0.0)));
        assert!(hp.h_lt[(1, 1)].contains(Complex64::new(13.0, 0.0)));
        assert!(hp.h.is_hermitian_tagged());

        // M = 1 degenerates to the two moments themselves
        let hp1 = build_hankel(&moments[..2], 1, 1).unwrap();
        assert!(hp1.h[(0, 0)].contains(Complex64::new(10.0, 0.0)));
        assert!(hp1.h_lt[(0, 0)].contains(Complex64::new(11.0, 0.0)));
    }
}
