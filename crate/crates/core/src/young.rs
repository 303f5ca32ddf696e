//! Convex function pairs `(Phi, Psi)` under Legendre duality on `[0, inf)`.
//!
//! `Phi` is convex with `Phi(0) = phi(0) = 0` and strictly increasing
//! derivative `phi`; `Psi(tau) = max_{sigma >= 0} [tau sigma - Phi(sigma)]`
//! is its conjugate, `psi = Psi'` inverts `phi`. The power case
//! `Phi = sigma^p / p` is handled analytically; everything else goes through
//! log-spaced tables with monotone cubic interpolation and golden-section
//! conjugation.

use crate::error::{Error, Result};
use crate::numerics::{golden_max, integrate_rel, invert_increasing, MonotoneCubic};
use std::sync::Arc;

/// Two-sided growth envelope constants: `c (a + s)^{p-1} <= phi(s) <= C (a + s)^{p-1}`.
#[derive(Debug, Clone, Copy)]
pub struct Growth {
    pub p: f64,
    pub a: f64,
    pub c: f64,
    pub big_c: f64,
}

#[derive(Clone)]
enum PairKind {
    Power { p: f64 },
    Tabulated(Tabulated),
}

#[derive(Clone)]
struct Tabulated {
    phi_fn: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    big_phi: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// psi on a log-spaced tau grid (inverse of phi).
    psi_table: Arc<MonotoneCubic>,
}

/// A conjugate pair with derivatives, inverses and growth constants.
#[derive(Clone)]
pub struct YoungPair {
    kind: PairKind,
    pub growth: Growth,
}

impl std::fmt::Debug for YoungPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            PairKind::Power { p } => write!(f, "YoungPair::power(p = {p})"),
            PairKind::Tabulated(_) => write!(f, "YoungPair::tabulated({:?})", self.growth),
        }
    }
}

/// Analytic power pair `Phi = sigma^p / p`, `Psi = tau^{p'} / p'`.
pub fn make_power_pair(p: f64) -> Result<YoungPair> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("power pair requires p > 1, got {p}")));
    }
    Ok(YoungPair {
        kind: PairKind::Power { p },
        growth: Growth {
            p,
            a: 0.0,
            c: 1.0,
            big_c: 1.0,
        },
    })
}

/// Numerically conjugated pair from a convex `Phi` with `Phi(0) = 0`.
/// `phi` is differenced from `Phi`; tables span slopes up to `phi(sigma_max)`.
pub fn make_tabulated_pair<F>(big_phi: F, sigma_max: f64, growth_hint_p: f64) -> Result<YoungPair>
where
    F: Fn(f64) -> f64 + Send + Sync + 'static,
{
    if sigma_max <= 0.0 {
        return Err(Error::Domain("sigma_max must be positive".into()));
    }
    let big_phi: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(big_phi);
    let bp = big_phi.clone();
    let phi_fn: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(move |s: f64| {
        let h = (1e-7 * (1.0 + s)).min(1e-5);
        if s < h {
            (bp(s + h) - bp(s.max(0.0))) / h
        } else {
            (bp(s + h) - bp(s - h)) / (2.0 * h)
        }
    });
    // psi inverts phi: tabulate sigma against tau = phi(sigma) on a log-ish grid.
    let n = 2048usize;
    let mut taus = Vec::with_capacity(n + 1);
    let mut sigmas = Vec::with_capacity(n + 1);
    taus.push(0.0);
    sigmas.push(0.0);
    let s_min = sigma_max * 1e-8;
    for i in 0..n {
        let s = s_min * (sigma_max / s_min).powf(i as f64 / (n - 1) as f64);
        let t = phi_fn(s);
        if t > *taus.last().unwrap() {
            taus.push(t);
            sigmas.push(s);
        }
    }
    if taus.len() < 16 {
        return Err(Error::Domain(
            "Phi derivative is not strictly increasing on the table range".into(),
        ));
    }
    let psi_table = Arc::new(MonotoneCubic::new(taus, sigmas));

    let mut pair = YoungPair {
        kind: PairKind::Tabulated(Tabulated {
            phi_fn,
            big_phi,
            psi_table,
        }),
        growth: Growth {
            p: growth_hint_p,
            a: 0.0,
            c: 1.0,
            big_c: 1.0,
        },
    };
    let fitted = fit_growth(&pair, growth_hint_p, 0.0, s_min * 10.0, sigma_max);
    pair.growth = fitted;
    Ok(pair)
}

/// Fit envelope constants `c`, `C` for given `p`, `a` by min/max of
/// `phi(s) / (a + s)^{p-1}` over a sigma range.
pub fn fit_growth(pair: &YoungPair, p: f64, a: f64, s_lo: f64, s_hi: f64) -> Growth {
    let mut c = f64::INFINITY;
    let mut big_c = 0.0f64;
    let n = 512;
    for i in 0..=n {
        let s = s_lo + (s_hi - s_lo) * i as f64 / n as f64;
        if s <= 0.0 {
            continue;
        }
        let ratio = pair.phi(s) / (a + s).powf(p - 1.0);
        c = c.min(ratio);
        big_c = big_c.max(ratio);
    }
    Growth { p, a, c, big_c }
}

impl YoungPair {
    pub fn is_power(&self) -> bool {
        matches!(self.kind, PairKind::Power { .. })
    }

    pub fn p(&self) -> f64 {
        self.growth.p
    }

    pub fn p_conj(&self) -> f64 {
        let p = self.growth.p;
        p / (p - 1.0)
    }

    /// `Phi(sigma)`.
    pub fn big_phi(&self, sigma: f64) -> f64 {
        match &self.kind {
            PairKind::Power { p } => sigma.powf(*p) / p,
            PairKind::Tabulated(t) => (t.big_phi)(sigma),
        }
    }

    /// `phi(sigma) = Phi'(sigma)`.
    pub fn phi(&self, sigma: f64) -> f64 {
        match &self.kind {
            PairKind::Power { p } => sigma.powf(p - 1.0),
            PairKind::Tabulated(t) => (t.phi_fn)(sigma),
        }
    }

    /// `psi(tau) = Psi'(tau)`, the inverse of `phi`.
    pub fn psi(&self, tau: f64) -> f64 {
        match &self.kind {
            PairKind::Power { p } => tau.powf(1.0 / (p - 1.0)),
            PairKind::Tabulated(t) => t.psi_table.eval(tau).max(0.0),
        }
    }

    /// Conjugate `Psi(tau) = max_{sigma >= 0} [tau sigma - Phi(sigma)]`:
    /// analytic in the power case, golden-section maximization otherwise.
    pub fn big_psi(&self, tau: f64) -> Result<f64> {
        if tau < 0.0 {
            return Err(Error::Domain(format!("conjugate argument {tau} < 0")));
        }
        match &self.kind {
            PairKind::Power { p } => {
                let pc = p / (p - 1.0);
                Ok(tau.powf(pc) / pc)
            }
            PairKind::Tabulated(t) => {
                if tau == 0.0 {
                    return Ok(0.0);
                }
                // Grow the bracket until phi(sigma_max) exceeds tau.
                let mut s_hi = 1.0;
                let mut guard = 0;
                while (t.phi_fn)(s_hi) <= tau {
                    s_hi *= 2.0;
                    guard += 1;
                    if guard > 200 {
                        return Err(Error::Domain(
                            "conjugate bracket growth failed; Phi not superlinear?".into(),
                        ));
                    }
                }
                let (_, v) = golden_max(|s| tau * s - (t.big_phi)(s), 0.0, s_hi, 200);
                Ok(v.max(0.0))
            }
        }
    }

    /// `Psi^{-1}(s)` by geometric bracket growth and bisection.
    pub fn psi_inverse(&self, s: f64) -> Result<f64> {
        if s < 0.0 {
            return Err(Error::Domain(format!("Psi^-1 argument {s} < 0")));
        }
        match &self.kind {
            PairKind::Power { p } => {
                let pc = p / (p - 1.0);
                Ok((pc * s).powf(1.0 / pc))
            }
            PairKind::Tabulated(_) => {
                let f = |tau: f64| self.big_psi(tau).unwrap_or(f64::INFINITY);
                Ok(invert_increasing(f, s, 1e-10))
            }
        }
    }

    /// `chi(sigma) = Psi^{-1}(N sigma) / N`, cross-checked against the
    /// quadrature `int_0^sigma ds / psi(Psi^{-1}(N s))`; a relative mismatch
    /// beyond `1e-4` is an internal consistency error.
    pub fn chi(&self, sigma: f64, dim: usize) -> Result<f64> {
        if sigma < 0.0 {
            return Err(Error::Domain(format!("chi argument {sigma} < 0")));
        }
        if dim < 2 {
            return Err(Error::Domain("chi requires dimension >= 2".into()));
        }
        let n = dim as f64;
        let direct = self.psi_inverse(n * sigma)? / n;
        if sigma == 0.0 {
            return Ok(0.0);
        }
        // Quadrature route, desingularized by s = sigma * t^kappa.
        let kappa = 8.0;
        let integrand = |t: f64| -> f64 {
            if t <= 0.0 {
                return 0.0;
            }
            let s = sigma * t.powf(kappa);
            let denom = self.psi(self.psi_inverse(n * s).unwrap_or(0.0));
            if denom <= 0.0 {
                return 0.0;
            }
            kappa * sigma * t.powf(kappa - 1.0) / denom
        };
        let quad = integrate_rel(integrand, 0.0, 1.0, 1e-7);
        let rel = (quad - direct).abs() / direct.abs().max(1e-300);
        if rel > 1e-4 {
            return Err(Error::Inconsistent(format!(
                "chi identity vs quadrature mismatch: {direct} vs {quad} (rel {rel:.2e})"
            )));
        }
        Ok(direct)
    }

    /// Worst relative violation of the two-sided derivative envelope
    /// `c (a+s)^{p-1} <= phi(s) <= C (a+s)^{p-1}` on `[s_lo, s_hi]` (zero
    /// means the stated constants hold there), plus fitted constants for the
    /// Hessian-eigenvalue envelope `c2 (a+s)^{p-2} <= e <= E <= C2 (a+s)^{p-2}`.
    /// The eigenvalues of the Hessian of `Phi(|xi|)` are `phi'(s)` (radial)
    /// and `phi(s)/s` (tangential); one set of constants cannot serve both
    /// lines once they differ by a factor (already so for the power case),
    /// so the second line carries its own fit.
    pub fn verify_growth(&self, s_lo: f64, s_hi: f64) -> GrowthReport {
        let g = self.growth;
        let mut worst: f64 = 0.0;
        let mut hess_lo = f64::INFINITY;
        let mut hess_hi = 0.0f64;
        let n = 512;
        let h = (s_hi - s_lo) / n as f64;
        for i in 1..n {
            let s = s_lo + i as f64 * h;
            if s <= 0.0 {
                continue;
            }
            let envelope = (g.a + s).powf(g.p - 1.0);
            let lo = g.c * envelope;
            let hi = g.big_c * envelope;
            let val = self.phi(s);
            if val < lo {
                worst = worst.max((lo - val) / lo.abs().max(1e-300));
            }
            if val > hi {
                worst = worst.max((val - hi) / hi.abs().max(1e-300));
            }
            // Hessian eigenvalues against (a+s)^{p-2}.
            let dphi = (self.phi(s + 0.5 * h) - self.phi(s - 0.5 * h)) / h;
            let tangential = val / s;
            let env2 = (g.a + s).powf(g.p - 2.0);
            hess_lo = hess_lo.min(dphi.min(tangential) / env2);
            hess_hi = hess_hi.max(dphi.max(tangential) / env2);
        }
        GrowthReport {
            worst_violation: worst,
            growth: g,
            hessian_c: hess_lo,
            hessian_big_c: hess_hi,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GrowthReport {
    pub worst_violation: f64,
    pub growth: Growth,
    /// Fitted lower constant of the Hessian-eigenvalue envelope.
    pub hessian_c: f64,
    /// Fitted upper constant of the Hessian-eigenvalue envelope.
    pub hessian_big_c: f64,
}

impl GrowthReport {
    /// The eigenvalue envelope is admissible when its fitted constants are
    /// positive and finite.
    pub fn hessian_envelope_ok(&self) -> bool {
        self.hessian_c > 0.0 && self.hessian_big_c.is_finite()
    }
}
