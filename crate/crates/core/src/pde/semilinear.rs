//! Semilinear solves `-Lap u = f(u)`, `u >= 0`, `u = 0` on the boundary.
//!
//! Two modes:
//! * fixed-point: damped Picard `(A + mu M) u_{k+1} = M (f(u_k) + mu u_k)`
//!   with `mu >= max(-f')`; affine sources converge in one step, which makes
//!   the screened-torsion cross-check exact.
//! * normalized: ground-state iteration for the Lane-Emden problem
//!   `-Lap u = lambda_q |u|^{q-2} u`, `||u||_q = 1`, `1 < q < 2` (q = 2 is
//!   plain inverse power iteration); returns the Rayleigh estimate of
//!   `lambda_q` as the Dirichlet energy of the normalized iterate.

use super::field::ScalarField;
use super::grid::Grid;
use super::linsolve::pcg;
use super::operators::Operator;
use super::torsion::CG_MAX_ITER;
use crate::error::{Error, Result};
use std::sync::Arc;

/// A C^1 source and its primitive with `F(0) = 0`.
#[derive(Clone)]
pub struct SemilinearSource {
    pub f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub big_f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl SemilinearSource {
    pub fn new<F, G>(f: F, big_f: G) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        SemilinearSource {
            f: Arc::new(f),
            big_f: Arc::new(big_f),
        }
    }

    /// `f(s) = N - s/eps`, the screened-torsion source.
    pub fn screened(n_dim: f64, eps: f64) -> Self {
        SemilinearSource::new(
            move |s| n_dim - s / eps,
            move |s| n_dim * s - s * s / (2.0 * eps),
        )
    }

    /// Checks `F' = f` by central differences on a sample range.
    pub fn primitive_consistent(&self, s_max: f64) -> bool {
        let h = 1e-6 * s_max.max(1.0);
        for i in 1..64 {
            let s = s_max * i as f64 / 64.0;
            let fd = ((self.big_f)(s + h) - (self.big_f)(s - h)) / (2.0 * h);
            if (fd - (self.f)(s)).abs() > 1e-6 * (1.0 + (self.f)(s).abs()) {
                return false;
            }
        }
        ((self.big_f)(0.0)).abs() < 1e-12
    }
}

/// Damped Picard iteration for `-Lap u = f(u)`.
pub fn solve_semilinear_fixed_point(
    grid: &Arc<Grid>,
    source: &SemilinearSource,
) -> Result<ScalarField> {
    let n = grid.n_interior();
    let vols: Vec<f64> = (0..n).map(|k| grid.cell_volume(k)).collect();
    // Damping: mu >= max(-f') over the expected range, probed by differences.
    let mut mu = 0.0f64;
    for i in 0..=64 {
        let s = 10.0 * i as f64 / 64.0;
        let h = 1e-5;
        let fp = ((source.f)(s + h) - (source.f)(s - h)) / (2.0 * h);
        mu = mu.max(-fp);
    }
    let op = Operator::helmholtz(grid, mu);
    let diag = op.diagonal();
    let mut u = vec![0.0f64; n];
    let mut change = f64::INFINITY;
    for _ in 0..400 {
        let b: Vec<f64> = (0..n)
            .map(|k| vols[k] * ((source.f)(u[k]) + mu * u[k]))
            .collect();
        let out = pcg(
            |x, o| op.apply(x, o),
            &diag,
            &b,
            Some(&u),
            1e-12,
            CG_MAX_ITER,
        )?;
        change = u
            .iter()
            .zip(&out.x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        u = out.x;
        if change < 1e-10 {
            break;
        }
    }
    if change > 1e-8 {
        return Err(Error::Solver(format!(
            "semilinear Picard iteration stalled with change {change:.3e}"
        )));
    }
    Ok(ScalarField::new(grid.clone(), u, "semilinear"))
}

pub struct LaneEmden {
    pub lambda_q: f64,
    /// Minimizer with unit discrete Lq norm.
    pub field: ScalarField,
}

/// Ground-state iteration for the Lane-Emden problem, `1 < q <= 2`.
pub fn solve_lane_emden(grid: &Arc<Grid>, q: f64) -> Result<LaneEmden> {
    if !(q > 1.0 && q <= 2.0) {
        return Err(Error::Domain(format!(
            "Lane-Emden normalized mode requires 1 < q <= 2, got {q}"
        )));
    }
    let n = grid.n_interior();
    let vols: Vec<f64> = (0..n).map(|k| grid.cell_volume(k)).collect();
    let op = Operator::laplacian(grid);
    let diag = op.diagonal();
    let lq_norm = |u: &[f64]| -> f64 {
        u.iter()
            .zip(&vols)
            .map(|(x, m)| m * x.abs().powf(q))
            .sum::<f64>()
            .powf(1.0 / q)
    };
    let mut u = vec![1.0f64; n];
    let nrm = lq_norm(&u);
    u.iter_mut().for_each(|x| *x /= nrm);
    let mut lambda = f64::INFINITY;
    let mut warm: Option<Vec<f64>> = None;
    for _ in 0..600 {
        let b: Vec<f64> = u
            .iter()
            .zip(&vols)
            .map(|(x, m)| m * x.abs().powf(q - 1.0))
            .collect();
        let out = pcg(
            |x, o| op.apply(x, o),
            &diag,
            &b,
            warm.as_deref(),
            1e-12,
            CG_MAX_ITER,
        )?;
        let mut w = out.x;
        let nrm = lq_norm(&w);
        w.iter_mut().for_each(|x| *x /= nrm);
        warm = Some(w.iter().map(|x| x * nrm).collect());
        // Dirichlet energy of the normalized iterate.
        let mut aw = vec![0.0; n];
        op.apply(&w, &mut aw);
        let energy: f64 = w.iter().zip(&aw).map(|(a, b)| a * b).sum();
        let done = (energy - lambda).abs() <= 1e-10 * energy.abs()
            && u.iter()
                .zip(&w)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
                < 1e-9;
        u = w;
        lambda = energy;
        if done {
            break;
        }
    }
    Ok(LaneEmden {
        lambda_q: lambda,
        field: ScalarField::new(grid.clone(), u, format!("lane_emden q={q}")),
    })
}
