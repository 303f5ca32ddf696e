//! Matrix-free Jacobi-preconditioned conjugate gradients for the symmetric
//! positive definite embedded-boundary operators.

use crate::error::{Error, Result};

pub struct CgOutcome {
    pub x: Vec<f64>,
    pub rel_residual: f64,
    pub iterations: usize,
}

/// Solve `A x = b` with `A` given as a closure, `diag` the matrix diagonal
/// (Jacobi preconditioner). `x0` is the warm start.
pub fn pcg<F>(
    apply: F,
    diag: &[f64],
    b: &[f64],
    x0: Option<&[f64]>,
    rel_tol: f64,
    max_iter: usize,
) -> Result<CgOutcome>
where
    F: Fn(&[f64], &mut [f64]),
{
    let n = b.len();
    let mut x = match x0 {
        Some(v) => v.to_vec(),
        None => vec![0.0; n],
    };
    let mut r = vec![0.0; n];
    let mut ax = vec![0.0; n];
    apply(&x, &mut ax);
    for i in 0..n {
        r[i] = b[i] - ax[i];
    }
    let b_norm = b.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-300);
    let mut z: Vec<f64> = r.iter().zip(diag).map(|(ri, di)| ri / di).collect();
    let mut p = z.clone();
    let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
    let mut res = r.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut iters = 0;
    while res / b_norm > rel_tol && iters < max_iter {
        apply(&p, &mut ax);
        let pap: f64 = p.iter().zip(&ax).map(|(a, b)| a * b).sum();
        if pap <= 0.0 {
            return Err(Error::Solver(format!(
                "CG breakdown: non-positive curvature {pap} at iteration {iters}"
            )));
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ax[i];
        }
        for i in 0..n {
            z[i] = r[i] / diag[i];
        }
        let rz_new: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
        res = r.iter().map(|v| v * v).sum::<f64>().sqrt();
        iters += 1;
    }
    let rel = res / b_norm;
    if rel > rel_tol {
        return Err(Error::Solver(format!(
            "CG stalled: relative residual {rel:.3e} after {iters} iterations"
        )));
    }
    Ok(CgOutcome {
        x,
        rel_residual: rel,
        iterations: iters,
    })
}
