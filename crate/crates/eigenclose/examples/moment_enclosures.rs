//! Inside the moment engine: quadrature grid, per-node projections, the
//! assembled interval moments and the block Hankel pencil, on a pencil whose
//! spectrum is known exactly.
//!
//! Run with: cargo run --example moment_enclosures

use eigenclose::linsolve::{ShiftedSystem, approx_solve, enclose_fast_pd};
use eigenclose::moments::{
    assemble_moment, build_grid, build_hankel, choose_n, node_projection, outer_bound,
    vbv_norm_upper,
};
use eigenclose::numerics::CMat;
use eigenclose::operator::{HermitianOperator, ScaledPencil};
use num_complex::Complex64;

fn main() -> eigenclose::Result<()> {
    // diagonal pencil: eigenvalues -0.6, 0.2, 0.7 inside [-1, 1] and 3, -5
    // outside; the window is already scaled
    let a = HermitianOperator::diagonal(&[-0.6, 0.2, 0.7, 3.0, -5.0])?;
    let b = HermitianOperator::diagonal(&[1.0; 5])?;
    let pencil = ScaledPencil::new(&a, &b, -1.0, 1.0)?;
    let (block, order) = (3usize, 1usize);

    let mut v = CMat::zeros(5, block);
    for i in 0..5 {
        for c in 0..block {
            v[(i, c)] = Complex64::new(((i * 3 + 2 * c + 1) as f64 * 0.41).sin(), 0.0);
        }
    }
    let bv = b.matmat_interval(&v);
    let bv_mid = b.matmat(&v);
    let vbv = vbv_norm_upper(&v, &bv);

    // nearest outside eigenvalue has |lambda| = 3
    let t_hi = 2.97;
    let n_nodes = choose_n(1e-15, 2, t_hi, vbv, order)?;
    println!("vbv upper {vbv:.4}, N = {n_nodes} nodes");

    let grid = build_grid(n_nodes)?;
    let mut projections = Vec::new();
    for node in grid.nodes() {
        let sys = ShiftedSystem::new(&pencil, node.z, &bv, &bv_mid)?;
        let y = approx_solve(&sys)?;
        let cert = enclose_fast_pd(&sys, y, 1.0)?;
        projections.push(node_projection(&bv, &cert)?);
    }

    let mut moments = Vec::new();
    for p in 0..2 * order {
        let tail = outer_bound(p, 2, t_hi, vbv, n_nodes)?;
        let mom = assemble_moment(p, &grid, &projections, tail)?;
        println!(
            "moment {p}: outside tail {tail:.3e}, max radius {:.3e}",
            mom.max_radius()
        );
        moments.push(mom);
    }

    let hankel = build_hankel(&moments, block, order)?;
    println!(
        "Hankel pair assembled: H is {0}x{0}, Hermitian-tagged: {1}",
        hankel.h.rows(),
        hankel.h.is_hermitian_tagged()
    );
    Ok(())
}
