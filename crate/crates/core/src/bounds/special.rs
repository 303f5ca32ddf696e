//! Special functions the closed-form bounds need: Bessel-J first zeros,
//! log-Gamma/Beta, and unit-ball volumes.

use crate::error::{Error, Result};
use crate::numerics::bisect;

/// Bessel function of the first kind by its power series; adequate for
/// `x <= 25`, `nu <= 10` in f64 (alternating series with factorial decay).
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let half = 0.5 * x;
    let mut term = (nu * half.ln() - ln_gamma(nu + 1.0)).exp();
    let mut sum = term;
    for k in 1..400 {
        let kf = k as f64;
        term *= -(half * half) / (kf * (nu + kf));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    sum
}

/// First positive zero of `J_nu` by scan plus bisection (absolute 1e-12).
pub fn bessel_first_zero(nu: f64) -> Result<f64> {
    if nu < 0.0 {
        return Err(Error::Domain(format!("order must be >= 0, got {nu}")));
    }
    if nu > 10.0 {
        return Err(Error::Domain("order above 10 not supported".into()));
    }
    // J_nu > 0 just right of 0; march until the first sign change.
    let mut a = 0.05f64;
    let mut fa = bessel_j(nu, a);
    let mut b = a;
    loop {
        b += 0.05;
        let fb = bessel_j(nu, b);
        if fa * fb <= 0.0 {
            break;
        }
        a = b;
        fa = fb;
        if b > 30.0 {
            return Err(Error::Domain("no zero found below 30".into()));
        }
    }
    Ok(bisect(|x| bessel_j(nu, x), a, b, 1e-12))
}

/// `lambda_1` of the unit ball in `R^N`: square of the first zero of
/// `J_{N/2 - 1}`.
pub fn lambda1_unit_ball(dim: usize) -> Result<f64> {
    let nu = dim as f64 / 2.0 - 1.0;
    let j = bessel_first_zero(nu)?;
    Ok(j * j)
}

/// Log-Gamma (Lanczos, g = 7, 9 coefficients; relative error ~ 1e-13).
pub fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEF[0];
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Euler Beta function via log-Gamma.
pub fn gamma_beta(a: f64, b: f64) -> Result<f64> {
    if a <= 0.0 || b <= 0.0 {
        return Err(Error::Domain(format!(
            "beta requires positive arguments, got ({a}, {b})"
        )));
    }
    Ok((ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp())
}

/// Volume of the unit ball in `R^k`.
pub fn ball_volume(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("dimension must be >= 1".into()));
    }
    let kf = k as f64;
    Ok((std::f64::consts::PI.powf(kf / 2.0).ln() - ln_gamma(kf / 2.0 + 1.0)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_order_zero_is_pi() {
        // J_{1/2}(x) ~ sin(x): first zero at pi; so sqrt(lambda_1(B)) = pi in 3D.
        let z = bessel_first_zero(0.5).unwrap();
        assert!((z - std::f64::consts::PI).abs() < 1e-10);
        assert!((lambda1_unit_ball(3).unwrap() - std::f64::consts::PI.powi(2)).abs() < 1e-9);
    }

    #[test]
    fn j0_first_zero_reference_value() {
        // Bisection on the series; the classical value to 10 digits.
        let z = bessel_first_zero(0.0).unwrap();
        assert!((z - 2.404_825_557_7).abs() < 1e-9, "j01 = {z}");
        let l2 = lambda1_unit_ball(2).unwrap();
        assert!((l2 - 5.783_185_962_9).abs() < 1e-8, "lambda1(B,2) = {l2}");
    }

    #[test]
    fn bessel_series_against_known_points() {
        assert!((bessel_j(0.0, 1.0) - 0.765_197_686_557_967).abs() < 1e-12);
        assert!((bessel_j(1.0, 2.0) - 0.576_724_807_756_873).abs() < 1e-12);
    }

    #[test]
    fn beta_identities() {
        assert!((gamma_beta(0.5, 0.5).unwrap() - std::f64::consts::PI).abs() < 1e-10);
        assert!((gamma_beta(1.0, 1.0).unwrap() - 1.0).abs() < 1e-12);
        // Reflection oracle: beta(1/3, 2/3) = pi / sin(pi/3) = 2 pi / sqrt(3).
        let expect = 2.0 * std::f64::consts::PI / 3f64.sqrt();
        assert!((gamma_beta(1.0 / 3.0, 2.0 / 3.0).unwrap() - expect).abs() < 1e-10);
        assert!(gamma_beta(-1.0, 1.0).is_err());
        assert!(gamma_beta(1.0, 0.0).is_err());
    }

    #[test]
    fn ball_volumes() {
        assert!((ball_volume(2).unwrap() - std::f64::consts::PI).abs() < 1e-12);
        assert!((ball_volume(3).unwrap() - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
        assert!((ball_volume(1).unwrap() - 2.0).abs() < 1e-12);
        assert!(ball_volume(0).is_err());
    }
}
