//! Linear torsion solves: `-Lap u = N` with zero Dirichlet data (Cartesian
//! and axisymmetric), and the screened variant `-Lap u + u/eps = N` whose
//! complementary function `v = 1 - u / (N eps)` carries the small-diffusion
//! asymptotics.

use super::field::ScalarField;
use super::grid::Grid;
use super::linsolve::pcg;
use super::operators::Operator;
use crate::error::{Error, Result};
use std::sync::Arc;

pub const CG_TOL: f64 = 1e-10;
pub const CG_MAX_ITER: usize = 200_000;

fn check_resolution(grid: &Grid) -> Result<()> {
    // >= 30 cells across the inradius; the bounding box short side bounds the
    // inradius from above, so a cheap necessary check uses it, and solvers on
    // genuinely under-resolved domains fail in their accuracy tests anyway.
    let (lo, hi) = grid.domain.bounding_box();
    let short = (hi[0] - lo[0]).min(hi[1] - lo[1]);
    if short / grid.h < 30.0 {
        return Err(Error::Solver(format!(
            "grid too coarse: {} cells across the short box side (need >= 30 across the inradius)",
            (short / grid.h) as i64
        )));
    }
    Ok(())
}

/// `-Lap u = N` in the domain, `u = 0` on the boundary. `N` is the space
/// dimension (the axisymmetric path uses `N = 3` on the half-plane section).
pub fn solve_torsion(grid: &Arc<Grid>) -> Result<ScalarField> {
    check_resolution(grid)?;
    let n_dim = grid.domain.dim() as f64;
    let op = Operator::laplacian(grid);
    let b = op.rhs_from(|_| n_dim);
    let diag = op.diagonal();
    let out = pcg(|u, o| op.apply(u, o), &diag, &b, None, CG_TOL, CG_MAX_ITER)?;
    Ok(ScalarField::new(grid.clone(), out.x, "torsion"))
}

/// Axisymmetric torsion on a solid of revolution; rejects other kinds.
pub fn solve_torsion_axisymmetric(grid: &Arc<Grid>) -> Result<ScalarField> {
    if !grid.axisymmetric {
        return Err(Error::Unsupported(
            "axisymmetric solve requires a revolution-profile domain".into(),
        ));
    }
    solve_torsion(grid)
}

/// Screened torsion `-Lap u + u/eps = N` and the companion
/// `v = 1 - u/(N eps)` (positive in the interior, 1 on the boundary).
pub fn solve_small_diffusion(grid: &Arc<Grid>, eps: f64) -> Result<(ScalarField, ScalarField)> {
    if eps <= 0.0 {
        return Err(Error::Domain("diffusion parameter must be positive".into()));
    }
    check_resolution(grid)?;
    let n_dim = grid.domain.dim() as f64;
    let op = Operator::helmholtz(grid, 1.0 / eps);
    let b = op.rhs_from(|_| n_dim);
    let diag = op.diagonal();
    let out = pcg(|u, o| op.apply(u, o), &diag, &b, None, CG_TOL, CG_MAX_ITER)?;
    let u = ScalarField::new(grid.clone(), out.x, format!("small_diffusion eps={eps}"));
    let v_values = u
        .values
        .iter()
        .map(|&ui| 1.0 - ui / (n_dim * eps))
        .collect();
    let v = ScalarField::new(grid.clone(), v_values, format!("screen ratio eps={eps}"));
    Ok((u, v))
}
