//! Small scalar-numerics toolbox: root bracketing/bisection, golden-section
//! extrema, adaptive Simpson quadrature and monotone cubic interpolation.

/// Bisection for a root of `f` in `[a, b]`, assuming `f(a)` and `f(b)` have
/// opposite signs. Returns the midpoint of the final bracket.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    let fb = f(b);
    debug_assert!(fa * fb <= 0.0, "bisect: root not bracketed");
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    while (b - a).abs() > tol {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Inverse of a continuous strictly increasing function by bracket growth and
/// bisection: returns `x >= 0` with `f(x) = target` to relative tolerance.
pub fn invert_increasing<F: Fn(f64) -> f64>(f: F, target: f64, rel_tol: f64) -> f64 {
    if target <= f(0.0) {
        return 0.0;
    }
    let mut hi = 1.0;
    let mut guard = 0;
    while f(hi) < target {
        hi *= 2.0;
        guard += 1;
        if guard > 400 {
            return f64::INFINITY;
        }
    }
    let lo = if hi > 1.0 { hi / 2.0 } else { 0.0 };
    let tol = rel_tol * hi.max(1e-300);
    bisect(|x| f(x) - target, lo, hi, tol)
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section minimization of a unimodal `f` on `[a, b]`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let mut c = b - (b - a) * INV_PHI;
    let mut d = a + (b - a) * INV_PHI;
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INV_PHI;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INV_PHI;
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Golden-section maximization on `[a, b]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, iters: usize) -> (f64, f64) {
    let (x, fneg) = golden_min(|t| -f(t), a, b, iters);
    (x, -fneg)
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
        + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` with absolute tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(fa, fm, fb, b - a);
    adaptive_simpson_rec(&f, a, b, fa, fm, fb, whole, abs_tol.max(1e-300), 48)
}

/// Adaptive Simpson with a relative tolerance, bootstrapped from a coarse pass.
pub fn integrate_rel<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let coarse = integrate(&f, a, b, 1e-6);
    let scale = coarse.abs().max(1e-12);
    integrate(&f, a, b, rel_tol * scale)
}

/// Monotone cubic interpolant (Fritsch–Carlson) through strictly increasing
/// abscissae. Preserves monotonicity of the data.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        assert!(xs.len() >= 2 && xs.len() == ys.len());
        let n = xs.len();
        let mut d = vec![0.0; n - 1];
        for i in 0..n - 1 {
            d[i] = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        }
        let mut m = vec![0.0; n];
        m[0] = d[0];
        m[n - 1] = d[n - 2];
        for i in 1..n - 1 {
            m[i] = if d[i - 1] * d[i] <= 0.0 {
                0.0
            } else {
                0.5 * (d[i - 1] + d[i])
            };
        }
        // Fritsch-Carlson limiter keeps the interpolant monotone.
        for i in 0..n - 1 {
            if d[i] == 0.0 {
                m[i] = 0.0;
                m[i + 1] = 0.0;
            } else {
                let alpha = m[i] / d[i];
                let beta = m[i + 1] / d[i];
                let s = alpha * alpha + beta * beta;
                if s > 9.0 {
                    let tau = 3.0 / s.sqrt();
                    m[i] = tau * alpha * d[i];
                    m[i + 1] = tau * beta * d[i];
                }
            }
        }
        MonotoneCubic { xs, ys, slopes: m }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0] + self.slopes[0] * (x - self.xs[0]);
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1] + self.slopes[n - 1] * (x - self.xs[n - 1]);
        }
        let mut lo = 0usize;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.xs[mid] <= x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let hstep = self.xs[lo + 1] - self.xs[lo];
        let t = (x - self.xs[lo]) / hstep;
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        h00 * self.ys[lo]
            + h10 * hstep * self.slopes[lo]
            + h01 * self.ys[lo + 1]
            + h11 * hstep * self.slopes[lo + 1]
    }
}
