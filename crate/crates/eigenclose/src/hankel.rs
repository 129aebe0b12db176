//! Verified eigenvalue enclosures of the small interval Hankel pencil
//! `[H_lt]` y = lambda' `[H]` y, and the affine map back to problem units.
//!
//! Mechanism: with W the approximate eigenvector basis of the midpoint
//! pencil, every Hermitian member pair (P, Q) satisfies
//! eig(P, Q) = eig(W^-1 Q^-1 P W), and G = (Q W)^-1 (P W) is enclosed by one
//! verified solve against the interval matrices. Gershgorin discs of `[G]`
//! (intersected with the real axis, since member pencils are Hermitian
//! definite) then enclose the spectrum; a disjoint group of k discs contains
//! exactly k eigenvalues of every member, which is what makes cluster
//! multiplicities sound. Overlapping or nearly-touching discs are merged
//! into clusters.

use crate::certify;
use crate::error::{Error, Result};
use crate::interval::{IntervalMatrix, RealInterval, round::*};
use crate::moments::SpectralWindow;
use crate::numerics::{CMat, eigen, lu};

/// Default relative clustering tolerance.
pub const CLUSTER_TOL_REL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenStatus {
    Verified,
    Failed,
}

/// A verified (or failed) enclosure in original problem units.
#[derive(Clone, Debug)]
pub struct EigenEnclosure {
    /// Present exactly when status is Verified.
    pub interval: Option<RealInterval>,
    pub cluster_size: usize,
    pub status: EigenStatus,
    /// Approximate location, for ordering and reporting failed slots.
    pub approx: f64,
}

/// Verified enclosure of one cluster in scaled units.
#[derive(Clone, Copy, Debug)]
pub struct PencilCluster {
    pub interval: RealInterval,
    pub cluster_size: usize,
}

/// Approximate eigenpairs of the midpoint Hankel pencil, ascending.
pub fn approx_pencil_eig(h_lt_mid: &CMat, h_mid: &CMat) -> Result<(Vec<f64>, CMat)> {
    eigen::definite_pencil_eig(h_lt_mid, h_mid).ok_or_else(|| {
        Error::SolveFailed("midpoint Hankel matrix is not numerically positive definite".into())
    })
}

/// Positive definiteness of `[H]`; the gate for the verification stage.
pub fn verify_pencil_pd(h: &IntervalMatrix) -> Result<bool> {
    certify::verify_positive_definite(h)
}

/// Verified eigenvalue enclosures with cluster multiplicities, scaled units.
/// Requires `verify_pencil_pd` to have succeeded and the approximate
/// eigenvector matrix of the midpoint pencil.
pub fn enclose_pencil_eigs(
    h_lt: &IntervalMatrix,
    h: &IntervalMatrix,
    vecs: &CMat,
    cluster_tol_rel: f64,
) -> Result<Vec<PencilCluster>> {
    let m = h.rows();
    if h_lt.rows() != m || h_lt.cols() != m || h.cols() != m {
        return Err(Error::DimensionMismatch("hankel pencil".into()));
    }
    if vecs.rows != m || vecs.cols != m {
        return Err(Error::DimensionMismatch("eigenvector basis".into()));
    }

    let w_iv = IntervalMatrix::from_points(m, m, &vecs.data);
    let k_iv = h.matmul(&w_iv)?;
    let f_iv = h_lt.matmul(&w_iv)?;

    // approximate inverse of mid(K)
    let mut k_mid = CMat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            k_mid[(i, j)] = k_iv[(i, j)].midpoint();
        }
    }
    let r = lu::factor(&k_mid)
        .map(|f| f.inverse())
        .ok_or_else(|| Error::VerificationFailed("transformed pencil is singular".into()))?;
    let r_iv = IntervalMatrix::from_points(m, m, &r.data);

    // E = I - R K, beta = ||mag E||_inf
    let e_iv = IntervalMatrix::identity(m).sub(&r_iv.matmul(&k_iv)?)?;
    let mut beta = 0.0f64;
    let mut row_sums = vec![0.0f64; m];
    for i in 0..m {
        let mut s = 0.0f64;
        for j in 0..m {
            s = add_up(s, e_iv[(i, j)].mag());
        }
        row_sums[i] = s;
        beta = beta.max(s);
    }
    if !(beta < 1.0) {
        return Err(Error::VerificationFailed(format!(
            "residual contraction failed (beta = {beta:.3}); enclosures too wide"
        )));
    }

    // G = G0 + E G with G0 = R F: columnwise norm bound, then entry inflation
    let g0 = r_iv.matmul(&f_iv)?;
    let mut g = g0.clone();
    for c in 0..m {
        let mut colmax = 0.0f64;
        for i in 0..m {
            colmax = colmax.max(g0[(i, c)].mag());
        }
        let gbound = div_up(colmax, sub_down(1.0, beta));
        for i in 0..m {
            let delta = mul_up(row_sums[i], gbound);
            g[(i, c)] = g[(i, c)].inflate(delta);
        }
    }

    // Gershgorin discs intersected with the real axis
    let mut discs: Vec<RealInterval> = Vec::with_capacity(m);
    for i in 0..m {
        let mut rad = 0.0f64;
        for j in 0..m {
            if j != i {
                rad = add_up(rad, g[(i, j)].mag());
            }
        }
        let center = g[(i, i)].re;
        discs.push(RealInterval::new(
            sub_down(center.inf, rad),
            add_up(center.sup, rad),
        )?);
    }
    discs.sort_by(|a, b| {
        a.midpoint()
            .partial_cmp(&b.midpoint())
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    // merge overlapping or nearly-touching discs into clusters
    let mut clusters: Vec<PencilCluster> = Vec::new();
    for d in discs {
        let tol = cluster_tol_rel * d.midpoint().abs().max(1.0);
        match clusters.last_mut() {
            Some(last) if d.inf <= add_up(last.interval.sup, tol) => {
                last.interval = last.interval.hull(&d);
                last.cluster_size += 1;
            }
            _ => clusters.push(PencilCluster {
                interval: d,
                cluster_size: 1,
            }),
        }
    }
    Ok(clusters)
}

/// Map scaled enclosures back to problem units: lambda = rho lambda' + gamma,
/// outward rounded; ordering is preserved (rho > 0).
pub fn rescale(clusters: &[PencilCluster], window: &SpectralWindow) -> Vec<EigenEnclosure> {
    let gamma = window.gamma();
    let rho = window.rho();
    clusters
        .iter()
        .map(|c| {
            let iv = rho.mul(&c.interval).add(&gamma);
            EigenEnclosure {
                approx: iv.midpoint(),
                interval: Some(iv),
                cluster_size: c.cluster_size,
                status: EigenStatus::Verified,
            }
        })
        .collect()
}

/// All-failed outcome carrying approximate locations only.
pub fn failed_enclosures(approx_scaled: &[f64], window: &SpectralWindow) -> Vec<EigenEnclosure> {
    let gamma = window.gamma().midpoint();
    let rho = window.rho().midpoint();
    approx_scaled
        .iter()
        .map(|&lam| EigenEnclosure {
            interval: None,
            cluster_size: 1,
            status: EigenStatus::Failed,
            approx: rho * lam + gamma,
        })
        .collect()
}
