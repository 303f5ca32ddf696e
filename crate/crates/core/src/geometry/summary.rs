//! Scalar geometric quantities of a domain: inradius and incenters, diameter,
//! exterior tangent-ball radius, boundary mean curvature extremes, the John
//! (maximum-volume inscribed) ellipsoid and the (-2)-mean of its semi-axes.

use super::{DomainSpec, Profile};
use crate::error::{Error, Result};
use crate::numerics::golden_min;

#[derive(Debug, Clone)]
pub struct GeomSummary {
    pub r_in: f64,
    pub incenters: Vec<[f64; 2]>,
    pub diam: f64,
    pub r_e: Option<ExteriorRadius>,
    /// `max(0, -min boundary mean curvature)`; zero for convex domains.
    pub m0_minus: Option<f64>,
    pub john_center: Option<[f64; 2]>,
    pub john_axes: Option<Vec<f64>>,
}

/// Result of the exterior tangent-ball estimate.
#[derive(Debug, Clone, Copy)]
pub struct ExteriorRadius {
    pub radius: f64,
    /// Set when every tested radius admitted a tangent ball; `radius` is then
    /// truncated to the diameter (larger radii only improve the bounds fed by it).
    pub unbounded: bool,
    /// Set when no positive radius was admissible.
    pub degenerate: bool,
}

/// Inradius and all near-maximal grid points of the boundary distance.
///
/// The distance field is scanned on a uniform lattice and the best point is
/// refined by pattern search; every lattice point within `1e-3 * r` of the
/// refined maximum is reported (domains may carry a continuum of incenters).
/// The refined point itself is always included, lexicographically first.
pub fn inradius_incenter(domain: &DomainSpec) -> Result<(f64, Vec<[f64; 2]>)> {
    let (lo, hi) = domain.bounding_box();
    let n = 200usize;
    let hx = (hi[0] - lo[0]) / n as f64;
    let hy = (hi[1] - lo[1]) / n as f64;
    let mut best = f64::NEG_INFINITY;
    let mut best_p = [f64::NAN; 2];
    let mut grid_vals: Vec<([f64; 2], f64)> = Vec::new();
    for j in 0..=n {
        for i in 0..=n {
            let p = [lo[0] + i as f64 * hx, lo[1] + j as f64 * hy];
            if domain.inside(&p) {
                let d = domain.unsigned_boundary_distance(&p);
                grid_vals.push((p, d));
                if d > best {
                    best = d;
                    best_p = p;
                }
            }
        }
    }
    if !best.is_finite() {
        return Err(Error::Domain(
            "domain has empty interior on the scan grid".into(),
        ));
    }
    // Pattern-search refinement around the best lattice point.
    let mut step = hx.max(hy);
    let mut center = best_p;
    let mut r = best;
    for _ in 0..60 {
        let mut improved = false;
        for dj in -2i64..=2 {
            for di in -2i64..=2 {
                let p = [center[0] + di as f64 * step, center[1] + dj as f64 * step];
                if domain.inside(&p) {
                    let d = domain.unsigned_boundary_distance(&p);
                    if d > r {
                        r = d;
                        center = p;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
            if step < 1e-12 * domain.scale() {
                break;
            }
        }
    }
    let tol = 1e-3 * r;
    let mut incenters: Vec<[f64; 2]> = vec![center];
    for (p, d) in grid_vals {
        if d >= r - tol {
            incenters.push(p);
        }
    }
    incenters.sort_by(|a, b| a.partial_cmp(b).unwrap());
    incenters.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-14 && (a[1] - b[1]).abs() < 1e-14);
    Ok((r, incenters))
}

/// Diameter: exact for analytic kinds, max pairwise distance of boundary
/// samples otherwise. For solids of revolution the 3D pairing across
/// meridian planes is used.
pub fn diameter(domain: &DomainSpec) -> f64 {
    match domain {
        DomainSpec::Ball { radius, .. } => 2.0 * radius,
        DomainSpec::Ellipse { semi_axes, .. } => 2.0 * semi_axes[0].max(semi_axes[1]),
        DomainSpec::Rectangle { lo, hi } => {
            ((hi[0] - lo[0]).powi(2) + (hi[1] - lo[1]).powi(2)).sqrt()
        }
        DomainSpec::Polygon { vertices } => {
            let mut best: f64 = 0.0;
            for (i, a) in vertices.iter().enumerate() {
                for b in vertices.iter().skip(i + 1) {
                    best = best.max(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
                }
            }
            best
        }
        DomainSpec::Revolution { profile } => {
            // Farthest surface pairs sit in a common meridian plane, either on
            // the same side or diametrically opposite (rho_i + rho_j apart).
            let samples = profile.curve_samples(512);
            let mut best: f64 = 0.0;
            for (i, a) in samples.iter().enumerate() {
                for b in samples.iter().skip(i) {
                    let same = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
                    let opposite = ((a[0] + b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
                    best = best.max(same.max(opposite));
                }
            }
            best
        }
        DomainSpec::Implicit(_) => {
            let samples = domain.boundary_samples(1200);
            let mut best: f64 = 0.0;
            for (i, a) in samples.iter().enumerate() {
                for b in samples.iter().skip(i + 1) {
                    best = best.max(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
                }
            }
            best
        }
    }
}

/// Exterior tangent-ball radius estimate.
///
/// When `supplied` is given it is echoed back unchanged. Otherwise the largest
/// `r` such that every boundary sample admits an exterior tangent ball of
/// radius `r` is bracketed by bisection; candidate balls are tested for
/// containment in the complement with the inside-test plus a dense
/// boundary-sample screen. Radii beyond the diameter are reported as
/// unbounded and truncated to the diameter.
pub fn exterior_sphere_radius(
    domain: &DomainSpec,
    supplied: Option<f64>,
) -> Result<ExteriorRadius> {
    if let Some(r) = supplied {
        return Ok(ExteriorRadius {
            radius: r,
            unbounded: false,
            degenerate: false,
        });
    }
    if matches!(domain, DomainSpec::Revolution { .. }) {
        return Err(Error::Unsupported(
            "exterior radius estimation is planar-only; supply a value for revolution domains"
                .into(),
        ));
    }
    let diam = diameter(domain);
    let samples_normals = boundary_with_normals(domain, 256)?;
    let screen = domain.boundary_samples(2048);
    let admissible = |r: f64| -> bool {
        for (y, nrm) in &samples_normals {
            let c = [y[0] + r * nrm[0], y[1] + r * nrm[1]];
            if domain.inside(&c) {
                return false;
            }
            // No boundary point may penetrate the open ball.
            let r2 = r * r;
            for s in &screen {
                let dx = s[0] - c[0];
                let dy = s[1] - c[1];
                if dx * dx + dy * dy < r2 * (1.0 - 1e-9) - 1e-12 {
                    return false;
                }
            }
            // Interior ball probes (rings biased toward the tangency point).
            for &f in &[0.3, 0.6, 0.85, 0.97] {
                for k in 0..16 {
                    let th = 2.0 * std::f64::consts::PI * k as f64 / 16.0;
                    let p = [c[0] + f * r * th.cos(), c[1] + f * r * th.sin()];
                    if domain.inside(&p) {
                        return false;
                    }
                }
            }
        }
        true
    };
    if admissible(diam) {
        return Ok(ExteriorRadius {
            radius: diam,
            unbounded: true,
            degenerate: false,
        });
    }
    let tol = 1e-3 * diam;
    if !admissible(tol) {
        return Ok(ExteriorRadius {
            radius: 0.0,
            unbounded: false,
            degenerate: true,
        });
    }
    let mut lo = tol;
    let mut hi = diam;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if admissible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ExteriorRadius {
        radius: lo,
        unbounded: false,
        degenerate: false,
    })
}

fn boundary_with_normals(domain: &DomainSpec, n: usize) -> Result<Vec<([f64; 2], [f64; 2])>> {
    let mut out = Vec::with_capacity(n);
    if domain.has_boundary_param() {
        for i in 0..n {
            // Offset keeps samples off polygon vertices.
            let t = (i as f64 + 0.37) / n as f64;
            out.push((domain.boundary_point(t), domain.outward_normal(t)));
        }
        return Ok(out);
    }
    match domain {
        DomainSpec::Implicit(d) => {
            let samples = domain.boundary_samples(n);
            let eps = 1e-6 * domain.scale();
            for s in samples {
                let gx = ((d.level)(s[0] + eps, s[1]) - (d.level)(s[0] - eps, s[1])) / (2.0 * eps);
                let gy = ((d.level)(s[0], s[1] + eps) - (d.level)(s[0], s[1] - eps)) / (2.0 * eps);
                let g = (gx * gx + gy * gy).sqrt();
                if g > 1e-12 {
                    out.push((s, [gx / g, gy / g]));
                }
            }
            Ok(out)
        }
        _ => Err(Error::Unsupported(format!(
            "no boundary normals for kind {}",
            domain.kind_name()
        ))),
    }
}

/// Minimum boundary mean curvature and the max of its negative part.
///
/// Planar kinds use the signed curvature of the boundary curve; solids of
/// revolution use the exact piecewise profile curvature. Kinds without
/// curvature data (rectangle, polygon, implicit) are unsupported.
pub fn min_mean_curvature(domain: &DomainSpec) -> Result<(f64, f64)> {
    let min_m = match domain {
        DomainSpec::Ball { radius, .. } => 1.0 / radius,
        DomainSpec::Ellipse { semi_axes, .. } => {
            let (a, b) = (semi_axes[0], semi_axes[1]);
            let kappa = |th: f64| {
                let s = th.sin();
                let c = th.cos();
                a * b / (a * a * s * s + b * b * c * c).powf(1.5)
            };
            let mut best = f64::INFINITY;
            let mut best_th = 0.0;
            for i in 0..512 {
                let th = 2.0 * std::f64::consts::PI * i as f64 / 512.0;
                let k = kappa(th);
                if k < best {
                    best = k;
                    best_th = th;
                }
            }
            let dt = 2.0 * std::f64::consts::PI / 512.0;
            let (_, v) = golden_min(kappa, best_th - dt, best_th + dt, 80);
            v.min(best)
        }
        DomainSpec::Revolution { profile } => {
            let (z0, z1) = profile.z_range();
            let mut best = f64::INFINITY;
            let n = 4096;
            for i in 1..n {
                let z = z0 + (z1 - z0) * i as f64 / n as f64;
                let m = profile.mean_curvature(z);
                if m.is_finite() {
                    best = best.min(m);
                }
            }
            let (c0, c1) = profile.closed_ends();
            if !c0 || !c1 {
                best = best.min(0.0); // flat end caps
            }
            best
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "kind {} carries no curvature data",
                domain.kind_name()
            )))
        }
    };
    Ok((min_m, (-min_m).max(0.0)))
}

/// John (maximum-volume inscribed) ellipsoid of a convex planar domain:
/// center and ascending semi-axes. Ellipses return themselves, rectangles the
/// inscribed ellipse with half-side semi-axes; convex polygons are solved by
/// a log-barrier Newton method on `max log det B` subject to
/// `|B a_i| + a_i . d <= b_i` over the edge half-planes.
pub fn john_ellipsoid(domain: &DomainSpec) -> Result<([f64; 2], Vec<f64>)> {
    if !domain.is_convex() {
        return Err(Error::Unsupported(
            "John ellipsoid requires a convex domain".into(),
        ));
    }
    match domain {
        DomainSpec::Ball { center, radius } => Ok(([center[0], center[1]], vec![*radius, *radius])),
        DomainSpec::Ellipse { center, semi_axes } => {
            let mut axes = vec![semi_axes[0], semi_axes[1]];
            axes.sort_by(|a, b| a.partial_cmp(b).unwrap());
            Ok((*center, axes))
        }
        DomainSpec::Rectangle { lo, hi } => {
            let c = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
            let mut axes = vec![(hi[0] - lo[0]) / 2.0, (hi[1] - lo[1]) / 2.0];
            axes.sort_by(|a, b| a.partial_cmp(b).unwrap());
            Ok((c, axes))
        }
        DomainSpec::Polygon { vertices } => mvie_polygon(domain, vertices),
        _ => Err(Error::Unsupported(format!(
            "John ellipsoid not available for kind {}",
            domain.kind_name()
        ))),
    }
}

/// Maximum-volume inscribed ellipse of a convex polygon by a log-barrier
/// interior-point method with finite-difference Newton steps (5 unknowns:
/// symmetric B and center d).
fn mvie_polygon(domain: &DomainSpec, vertices: &[[f64; 2]]) -> Result<([f64; 2], Vec<f64>)> {
    // Half-planes a.x <= b with unit outward normals.
    let n = vertices.len();
    let mut area = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        area += a[0] * b[1] - b[0] * a[1];
    }
    let ccw = area > 0.0;
    let mut halfplanes = Vec::with_capacity(n);
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        let t = [q[0] - p[0], q[1] - p[1]];
        let len = (t[0] * t[0] + t[1] * t[1]).sqrt();
        let nrm = if ccw {
            [t[1] / len, -t[0] / len]
        } else {
            [-t[1] / len, t[0] / len]
        };
        halfplanes.push((nrm, nrm[0] * p[0] + nrm[1] * p[1]));
    }

    let (r_in, incenters) = inradius_incenter(domain)?;
    let c0 = incenters[0];
    // v = (b00, b01, b11, d0, d1)
    let mut v = [0.5 * r_in, 0.0, 0.5 * r_in, c0[0], c0[1]];

    let slack = |v: &[f64; 5], i: usize| -> f64 {
        let (a, b) = halfplanes[i];
        let ba0 = v[0] * a[0] + v[1] * a[1];
        let ba1 = v[1] * a[0] + v[2] * a[1];
        b - (a[0] * v[3] + a[1] * v[4]) - (ba0 * ba0 + ba1 * ba1).sqrt()
    };
    let feasible = |v: &[f64; 5]| -> bool {
        v[0] * v[2] - v[1] * v[1] > 0.0 && v[0] > 0.0 && (0..n).all(|i| slack(v, i) > 0.0)
    };
    let objective = |v: &[f64; 5], t: f64| -> f64 {
        let det = v[0] * v[2] - v[1] * v[1];
        let mut val = -t * det.ln();
        for i in 0..n {
            val -= slack(v, i).ln();
        }
        val
    };

    let mut t = 1.0;
    let scale = domain.scale();
    while t < 2e8 {
        // Damped Newton with finite-difference derivatives.
        for _ in 0..60 {
            let h = 1e-6 * scale.max(1.0);
            let mut grad = [0.0f64; 5];
            let mut hess = [[0.0f64; 5]; 5];
            let f0 = objective(&v, t);
            for k in 0..5 {
                let mut vp = v;
                let mut vm = v;
                vp[k] += h;
                vm[k] -= h;
                grad[k] = (objective(&vp, t) - objective(&vm, t)) / (2.0 * h);
                hess[k][k] = (objective(&vp, t) - 2.0 * f0 + objective(&vm, t)) / (h * h);
            }
            for k in 0..5 {
                for l in (k + 1)..5 {
                    let mut vpp = v;
                    vpp[k] += h;
                    vpp[l] += h;
                    let mut vpm = v;
                    vpm[k] += h;
                    vpm[l] -= h;
                    let mut vmp = v;
                    vmp[k] -= h;
                    vmp[l] += h;
                    let mut vmm = v;
                    vmm[k] -= h;
                    vmm[l] -= h;
                    let mixed = (objective(&vpp, t) - objective(&vpm, t) - objective(&vmp, t)
                        + objective(&vmm, t))
                        / (4.0 * h * h);
                    hess[k][l] = mixed;
                    hess[l][k] = mixed;
                }
            }
            // Levenberg damping keeps the step well-posed.
            for k in 0..5 {
                hess[k][k] += 1e-9 * (1.0 + hess[k][k].abs());
            }
            let step = solve5(hess, grad);
            let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
            if gnorm < 1e-10 * t.max(1.0) {
                break;
            }
            let mut alpha = 1.0;
            let mut accepted = false;
            for _ in 0..50 {
                let mut vn = v;
                for k in 0..5 {
                    vn[k] -= alpha * step[k];
                }
                if feasible(&vn) && objective(&vn, t) < f0 {
                    v = vn;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        t *= 8.0;
    }
    if !feasible(&v) {
        return Err(Error::Solver(
            "inscribed-ellipse barrier method failed".into(),
        ));
    }
    // Eigen-decompose B to get semi-axes.
    let tr = v[0] + v[2];
    let det = v[0] * v[2] - v[1] * v[1];
    let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
    let mut axes = vec![tr / 2.0 - disc, tr / 2.0 + disc];
    axes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(([v[3], v[4]], axes))
}

fn solve5(mut a: [[f64; 5]; 5], mut b: [f64; 5]) -> [f64; 5] {
    for col in 0..5 {
        let mut piv = col;
        for r in (col + 1)..5 {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        if d.abs() < 1e-300 {
            continue;
        }
        for r in (col + 1)..5 {
            let f = a[r][col] / d;
            for c in col..5 {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = [0.0f64; 5];
    for col in (0..5).rev() {
        let mut s = b[col];
        for c in (col + 1)..5 {
            s -= a[col][c] * x[c];
        }
        x[col] = if a[col][col].abs() > 1e-300 {
            s / a[col][col]
        } else {
            0.0
        };
    }
    x
}

/// The (-2)-mean of positive numbers: `(N^{-1} sum a_i^{-2})^{-1/2}`.
pub fn m_minus2(axes: &[f64]) -> Result<f64> {
    if axes.is_empty() || axes.iter().any(|&a| a <= 0.0) {
        return Err(Error::Domain("(-2)-mean requires positive entries".into()));
    }
    let n = axes.len() as f64;
    let s: f64 = axes.iter().map(|a| a.powi(-2)).sum();
    Ok((s / n).powf(-0.5))
}

/// Assemble every geometric quantity the bound evaluators consume.
pub fn compute_summary(domain: &DomainSpec, supplied_r_e: Option<f64>) -> Result<GeomSummary> {
    let (r_in, incenters) = inradius_incenter(domain)?;
    let diam = diameter(domain);
    let r_e = exterior_sphere_radius(domain, supplied_r_e).ok();
    let m0_minus = min_mean_curvature(domain).ok().map(|(_, m0)| m0);
    let (john_center, john_axes) = match john_ellipsoid(domain) {
        Ok((c, a)) => (Some(c), Some(a)),
        Err(_) => (None, None),
    };
    Ok(GeomSummary {
        r_in,
        incenters,
        diam,
        r_e,
        m0_minus,
        john_center,
        john_axes,
    })
}

/// Axisymmetric profile of the domain, when it is a solid of revolution.
pub fn revolution_profile(domain: &DomainSpec) -> Option<&Profile> {
    match domain {
        DomainSpec::Revolution { profile } => Some(profile),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::DomainSpec;

    #[test]
    fn disk_inradius_and_incenter() {
        let (r, inc) = inradius_incenter(&DomainSpec::unit_disk()).unwrap();
        assert!((r - 1.0).abs() < 1e-9);
        assert!(inc.iter().any(|p| p[0].abs() < 1e-9 && p[1].abs() < 1e-9));
    }

    #[test]
    fn rectangle_incenter_segment_is_sampled() {
        let dom = DomainSpec::Rectangle {
            lo: [0.0, 0.0],
            hi: [4.0, 2.0],
        };
        let (r, inc) = inradius_incenter(&dom).unwrap();
        assert!((r - 1.0).abs() < 1e-9);
        // All incenters lie on y = 1, 1 <= x <= 3, and both ends appear.
        for p in &inc {
            assert!((p[1] - 1.0).abs() < 1e-9);
            assert!(p[0] > 1.0 - 1e-6 && p[0] < 3.0 + 1e-6);
        }
        assert!(inc.len() > 20);
    }

    #[test]
    fn ellipse_inradius_from_grid_max() {
        let dom = DomainSpec::Ellipse {
            center: [0.0, 0.0],
            semi_axes: [2.0, 1.0],
        };
        let (r, inc) = inradius_incenter(&dom).unwrap();
        assert!((r - 1.0).abs() < 1e-8, "r = {r}");
        assert!(inc.iter().any(|p| p[0].abs() < 1e-8 && p[1].abs() < 1e-8));
    }

    #[test]
    fn diameters() {
        assert!((diameter(&DomainSpec::unit_disk()) - 2.0).abs() < 1e-12);
        let rect = DomainSpec::Rectangle {
            lo: [0.0, 0.0],
            hi: [4.0, 2.0],
        };
        assert!((diameter(&rect) - 20f64.sqrt()).abs() < 1e-12);
        let ell = DomainSpec::Ellipse {
            center: [0.0, 0.0],
            semi_axes: [2.0, 1.0],
        };
        assert!((diameter(&ell) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn disk_exterior_radius_unbounded_truncated_to_diameter() {
        let r = exterior_sphere_radius(&DomainSpec::unit_disk(), None).unwrap();
        assert!(r.unbounded);
        assert!((r.radius - 2.0).abs() < 1e-12);
    }

    #[test]
    fn supplied_exterior_radius_is_echoed() {
        let r = exterior_sphere_radius(&DomainSpec::unit_disk(), Some(0.25)).unwrap();
        assert!(!r.unbounded && (r.radius - 0.25).abs() < 1e-15);
    }

    #[test]
    fn convex_domains_admit_arbitrarily_large_exterior_balls() {
        // A tangent ball on the far side of a supporting line never meets a
        // convex set, so the estimate saturates at the diameter for the
        // ellipse exactly as for the disk.
        let ell = DomainSpec::Ellipse {
            center: [0.0, 0.0],
            semi_axes: [2.0, 1.0],
        };
        let r = exterior_sphere_radius(&ell, None).unwrap();
        assert!(r.unbounded, "ellipse exterior radius should be unbounded");
        assert!((r.radius - 4.0).abs() < 1e-12);
    }

    #[test]
    fn nonconvex_domain_has_finite_exterior_radius() {
        // Crescent-like implicit domain: unit disk minus a bulge; the concave
        // part pins the exterior tangent radius at the bulge scale.
        let dom = DomainSpec::Implicit(crate::geometry::ImplicitDomain::new(
            |x, y| {
                let d1 = (x * x + y * y).sqrt() - 1.0;
                let d2 = 0.55 - ((x - 1.0) * (x - 1.0) + y * y).sqrt();
                d1.max(d2)
            },
            [-1.1, -1.1],
            [1.1, 1.1],
        ));
        let r = exterior_sphere_radius(&dom, None).unwrap();
        assert!(!r.unbounded && !r.degenerate);
        // The carved bulge has radius 0.55; the estimate cannot exceed it much.
        assert!(r.radius < 0.75, "r_e = {}", r.radius);
        assert!(r.radius > 0.2, "r_e = {}", r.radius);
    }

    #[test]
    fn sphere_and_catenoid_curvature() {
        let sphere = DomainSpec::Revolution {
            profile: Profile::sphere(2.0),
        };
        let (min_m, m0) = min_mean_curvature(&sphere).unwrap();
        assert!((min_m - 0.5).abs() < 1e-10);
        assert_eq!(m0, 0.0);

        let cat = DomainSpec::Revolution {
            profile: Profile::catenoid(0.5, -0.4, 0.6),
        };
        let (min_m, m0) = min_mean_curvature(&cat).unwrap();
        assert!(min_m.abs() < 1e-8);
        assert!(m0 < 1e-8);
    }

    #[test]
    fn ellipse_min_curvature_matches_analytic() {
        // Oracle: kappa(theta) = ab / (a^2 sin^2 + b^2 cos^2)^{3/2},
        // minimized numerically; analytic minimum is b/a^2.
        let dom = DomainSpec::Ellipse {
            center: [0.0, 0.0],
            semi_axes: [2.0, 1.0],
        };
        let (min_m, m0) = min_mean_curvature(&dom).unwrap();
        assert!((min_m - 0.25).abs() < 1e-9, "min curvature {min_m}");
        assert_eq!(m0, 0.0);
    }

    #[test]
    fn curvature_unsupported_for_polygon() {
        let tri = DomainSpec::Polygon {
            vertices: vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
        };
        assert!(min_mean_curvature(&tri).is_err());
    }

    #[test]
    fn john_of_ellipse_is_itself() {
        let dom = DomainSpec::Ellipse {
            center: [0.0, 0.0],
            semi_axes: [2.0, 1.0],
        };
        let (c, axes) = john_ellipsoid(&dom).unwrap();
        assert!(c[0].abs() < 1e-12 && c[1].abs() < 1e-12);
        assert!((axes[0] - 1.0).abs() < 1e-12 && (axes[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn john_of_rectangle_is_half_sides() {
        // Oracle: among axis-aligned inscribed ellipses (forced by symmetry)
        // the best is a = w/2, b = h/2 since containment requires a <= w/2, b <= h/2.
        let dom = DomainSpec::Rectangle {
            lo: [0.0, 0.0],
            hi: [4.0, 2.0],
        };
        let (c, axes) = john_ellipsoid(&dom).unwrap();
        assert!((c[0] - 2.0).abs() < 1e-12 && (c[1] - 1.0).abs() < 1e-12);
        assert!((axes[0] - 1.0).abs() < 1e-12 && (axes[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn john_of_regular_triangle_is_incircle() {
        let s = 2.0f64;
        let h = s * 3f64.sqrt() / 2.0;
        let tri = DomainSpec::Polygon {
            vertices: vec![[0.0, 0.0], [s, 0.0], [s / 2.0, h]],
        };
        let (c, axes) = john_ellipsoid(&tri).unwrap();
        let r_expect = s / (2.0 * 3f64.sqrt());
        assert!((axes[0] - r_expect).abs() < 2e-5, "axes {axes:?}");
        assert!((axes[1] - r_expect).abs() < 2e-5, "axes {axes:?}");
        assert!((c[0] - s / 2.0).abs() < 1e-4);
        assert!((c[1] - r_expect).abs() < 1e-4);
    }

    #[test]
    fn john_rejects_nonconvex() {
        let kite = DomainSpec::Polygon {
            vertices: vec![[0.0, 0.0], [3.0, -1.2], [1.0, 0.0], [3.0, 1.2]],
        };
        assert!(matches!(john_ellipsoid(&kite), Err(Error::Unsupported(_))));
    }

    #[test]
    fn john_ellipse_containment_sampled() {
        let s = 2.0f64;
        let h = s * 3f64.sqrt() / 2.0;
        let tri = DomainSpec::Polygon {
            vertices: vec![[0.0, 0.0], [s, 0.0], [s / 2.0, h]],
        };
        let (c, axes) = john_ellipsoid(&tri).unwrap();
        let mut inside_count = 0;
        let n = 10_000;
        for i in 0..n {
            let th = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            let shrink = 1.0 - 1e-9;
            let p = [
                c[0] + shrink * axes[1] * th.cos(),
                c[1] + shrink * axes[0] * th.sin(),
            ];
            // The triangle's John ellipse is a circle, so orientation is moot.
            if tri.inside(&p) {
                inside_count += 1;
            }
        }
        assert!(inside_count as f64 > 0.999 * n as f64);
    }

    #[test]
    fn m_minus2_values() {
        assert!((m_minus2(&[1.0, 1.0]).unwrap() - 1.0).abs() < 1e-15);
        // Direct arithmetic oracle: (0.5*(1/9 + 1/16))^{-1/2} = sqrt(288/25).
        let expect = (288.0f64 / 25.0).sqrt();
        assert!((m_minus2(&[3.0, 4.0]).unwrap() - expect).abs() < 1e-12);
        // Degenerate limit (1, t), t -> infinity: sqrt(2).
        let v = m_minus2(&[1.0, 1e9]).unwrap();
        assert!((v - 2f64.sqrt()).abs() < 1e-8);
        assert!(m_minus2(&[1.0, -2.0]).is_err());
        assert!(m_minus2(&[0.0]).is_err());
    }

    #[test]
    fn m_minus2_mean_inequalities() {
        // min(a) <= m_{-2}(a) <= min(a) * sqrt(N) for positive tuples.
        let tuples: [&[f64]; 4] = [
            &[1.0, 2.0],
            &[0.3, 0.7, 5.0],
            &[2.0, 2.0, 2.0, 2.0],
            &[0.1, 10.0],
        ];
        for axes in tuples {
            let m = m_minus2(axes).unwrap();
            let min = axes.iter().cloned().fold(f64::INFINITY, f64::min);
            let n = axes.len() as f64;
            assert!(m >= min - 1e-12);
            assert!(m <= min * n.sqrt() + 1e-12);
        }
    }

    #[test]
    fn summary_invariants_hold_across_kinds() {
        let domains = [
            DomainSpec::unit_disk(),
            DomainSpec::Ellipse {
                center: [0.0, 0.0],
                semi_axes: [2.0, 1.0],
            },
            DomainSpec::Rectangle {
                lo: [0.0, 0.0],
                hi: [4.0, 2.0],
            },
        ];
        for dom in domains {
            let s = compute_summary(&dom, None).unwrap();
            assert!(s.r_in <= s.diam / 2.0 + 1e-9);
            for c in &s.incenters {
                let d = dom.unsigned_boundary_distance(c);
                assert!((d - s.r_in).abs() <= 1e-3 * s.r_in + 1e-9);
            }
            if let Some(axes) = &s.john_axes {
                assert!(axes.windows(2).all(|w| w[0] <= w[1]));
                assert!(axes.iter().all(|a| *a > 0.0));
            }
            // Convex smooth kinds carry no negative curvature part.
            if matches!(dom, DomainSpec::Ball { .. } | DomainSpec::Ellipse { .. }) {
                assert_eq!(s.m0_minus, Some(0.0));
            }
        }
    }

    #[test]
    fn dumbbell_summary() {
        let dom = DomainSpec::Revolution {
            profile: Profile::dumbbell(1.0, 0.55, 0.3),
        };
        let (r, inc) = inradius_incenter(&dom).unwrap();
        assert!((r - 1.0).abs() < 1e-6, "inradius {r}");
        // Incenter at the big-sphere center (rho = 0).
        assert!(inc.iter().any(|p| p[0].abs() < 1e-3));
        let (min_m, m0) = min_mean_curvature(&dom).unwrap();
        assert!(min_m > -1e-9 && m0 < 1e-9);
    }
}
