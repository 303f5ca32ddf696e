//! Radial screened-torsion quadratures: the angular kernel
//! `h_eps(sigma) = int_0^pi exp(sigma cos(theta)/sqrt(eps)) sin(theta)^{N-2} dtheta`
//! and the nested integral
//! `q_eps(r) = N h_eps(0) int_0^r (int_0^s sigma^{N-1} h_eps(sigma) dsigma) / (s^{N-1} h_eps(s)^2) ds`,
//! which is the center value of the screened torsion function on a ball of
//! radius `r`. As `eps -> inf`, `q_eps(r) -> r^2/2`.

use crate::error::{Error, Result};
use crate::numerics::{integrate_rel, MonotoneCubic};

/// The angular kernel by adaptive quadrature (relative 1e-11 target).
pub fn h_eps(eps: f64, sigma: f64, dim: usize) -> Result<f64> {
    if eps <= 0.0 {
        return Err(Error::Domain("eps must be positive".into()));
    }
    if dim < 2 {
        return Err(Error::Domain("dimension must be >= 2".into()));
    }
    let a = sigma / eps.sqrt();
    let m = (dim - 2) as f64;
    Ok(integrate_rel(
        |th: f64| (a * th.cos()).exp() * th.sin().powf(m),
        0.0,
        std::f64::consts::PI,
        1e-11,
    ))
}

/// Nested adaptive quadrature of `q_eps(r)`, relative 1e-8. The kernel is
/// tabulated once on a dense grid and interpolated; both integral layers are
/// adaptive Simpson.
pub fn radial_q_eps(eps: f64, r: f64, dim: usize) -> Result<f64> {
    if r < 0.0 {
        return Err(Error::Domain("radius must be non-negative".into()));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let n_dim = dim as f64;
    let h0 = h_eps(eps, 0.0, dim)?;
    // Dense kernel table: h_eps is smooth and, for the parameter ranges the
    // bounds use (sigma/sqrt(eps) of order a few), mildly varying.
    let n_tab = 2048usize;
    let mut xs = Vec::with_capacity(n_tab + 1);
    let mut ys = Vec::with_capacity(n_tab + 1);
    for i in 0..=n_tab {
        let s = r * i as f64 / n_tab as f64;
        xs.push(s);
        ys.push(h_eps(eps, s, dim)?);
    }
    let table = MonotoneCubic::new(xs, ys);
    let h = |s: f64| table.eval(s);

    // Inner integral m(s) = int_0^s sigma^{N-1} h(sigma) dsigma, also tabulated.
    let mut ms = Vec::with_capacity(n_tab + 1);
    let mut acc = 0.0f64;
    let ds = r / n_tab as f64;
    ms.push(0.0);
    for i in 1..=n_tab {
        let s0 = (i - 1) as f64 * ds;
        let s1 = i as f64 * ds;
        acc += integrate_rel(|s| s.powf(n_dim - 1.0) * h(s), s0, s1, 1e-10);
        ms.push(acc);
    }
    let m_xs: Vec<f64> = (0..=n_tab).map(|i| r * i as f64 / n_tab as f64).collect();
    let m_table = MonotoneCubic::new(m_xs, ms);

    // Outer integrand m(s) / (s^{N-1} h(s)^2); at s -> 0 it behaves like
    // h0 s / (N h0^2) -> 0, so the origin is regular.
    let outer = |s: f64| -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        m_table.eval(s) / (s.powf(n_dim - 1.0) * h(s) * h(s))
    };
    let integral = integrate_rel(outer, 0.0, r, 1e-9);
    Ok(n_dim * h0 * integral)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_eps_closed_form_in_three_dimensions() {
        // N = 3: h = 2 sqrt(eps) sinh(sigma/sqrt(eps)) / sigma.
        for (eps, sigma) in [(1.0, 0.5), (0.25, 1.0), (4.0, 2.0)] {
            let got = h_eps(eps, sigma, 3).unwrap();
            let a: f64 = sigma / f64::sqrt(eps);
            let expect = 2.0 * a.sinh() / a;
            assert!(
                (got - expect).abs() < 1e-8 * expect,
                "eps={eps} sigma={sigma}: {got} vs {expect}"
            );
        }
        // h(0) = pi for N = 2, 2 for N = 3.
        assert!((h_eps(1.0, 0.0, 2).unwrap() - std::f64::consts::PI).abs() < 1e-10);
        assert!((h_eps(1.0, 0.0, 3).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn q_eps_tends_to_half_r_squared() {
        // Large-diffusion limit: q_eps(r) -> r^2/2; within 1% at eps = 1e4 r^2.
        let v = radial_q_eps(1e4, 1.0, 2).unwrap();
        assert!((v - 0.5).abs() < 0.01 * 0.5, "q = {v}");
        let v3 = radial_q_eps(1e4, 1.0, 3).unwrap();
        assert!((v3 - 0.5).abs() < 0.01 * 0.5, "q (N=3) = {v3}");
    }

    #[test]
    fn q_eps_zero_radius() {
        assert_eq!(radial_q_eps(1.0, 0.0, 2).unwrap(), 0.0);
    }

    #[test]
    fn q_eps_matches_disk_center_solve() {
        // Independent cross-check: q_eps(1) for N=2 equals the center value
        // of the screened torsion on the unit disk, which radially is
        // 2 eps (1 - 1/I0(1/sqrt(eps))).
        let eps = 1.0f64;
        let bessel_i0 = |x: f64| -> f64 {
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 1..200 {
                term *= (x / (2.0 * k as f64)).powi(2);
                sum += term;
                if term < 1e-18 * sum {
                    break;
                }
            }
            sum
        };
        let expect = 2.0 * eps * (1.0 - 1.0 / bessel_i0(1.0 / eps.sqrt()));
        let got = radial_q_eps(eps, 1.0, 2).unwrap();
        assert!(
            (got - expect).abs() < 1e-6 * expect,
            "q_eps(1) = {got} vs radial {expect}"
        );
    }

    #[test]
    fn invalid_arguments_rejected() {
        assert!(h_eps(-1.0, 0.0, 2).is_err());
        assert!(h_eps(1.0, 0.0, 1).is_err());
        assert!(radial_q_eps(1.0, -0.5, 2).is_err());
    }
}
