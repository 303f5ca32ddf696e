//! Domains, distance fields and the geometric quantities the distance bounds
//! consume: inradius/incenters, diameter, exterior tangent radius, boundary
//! mean curvature and its negative part, John ellipsoid, (-2)-mean of axes.

mod profile;
mod summary;

pub use profile::{Profile, ProfilePiece};
pub use summary::{
    compute_summary, diameter, exterior_sphere_radius, inradius_incenter, john_ellipsoid, m_minus2,
    min_mean_curvature, revolution_profile, ExteriorRadius, GeomSummary,
};

use crate::error::{Error, Result};
use crate::numerics::golden_min;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Signed-distance-style implicit 2D domain: `level(x, y) < 0` inside.
#[derive(Clone)]
pub struct ImplicitDomain {
    pub level: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    pub bbox: ([f64; 2], [f64; 2]),
    boundary: Arc<OnceLock<Vec<[f64; 2]>>>,
}

impl ImplicitDomain {
    pub fn new<F>(level: F, lo: [f64; 2], hi: [f64; 2]) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        ImplicitDomain {
            level: Arc::new(level),
            bbox: (lo, hi),
            boundary: Arc::new(OnceLock::new()),
        }
    }
}

impl fmt::Debug for ImplicitDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ImplicitDomain")
            .field("bbox", &self.bbox)
            .finish()
    }
}

/// A bounded domain given analytically or through an implicit level function.
///
/// Planar kinds live in the `(x, y)` plane. `Revolution` is a solid of
/// revolution in three dimensions; its points are half-plane section
/// coordinates `(rho, z)` with `rho >= 0`, and all distances reported for it
/// are genuine 3D distances to the surface (they coincide with half-plane
/// distances to the profile curve by symmetry).
#[derive(Debug, Clone)]
pub enum DomainSpec {
    Ball {
        center: Vec<f64>,
        radius: f64,
    },
    Ellipse {
        center: [f64; 2],
        semi_axes: [f64; 2],
    },
    Rectangle {
        lo: [f64; 2],
        hi: [f64; 2],
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Revolution {
        profile: Profile,
    },
    Implicit(ImplicitDomain),
}

impl DomainSpec {
    pub fn unit_disk() -> Self {
        DomainSpec::Ball {
            center: vec![0.0, 0.0],
            radius: 1.0,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            DomainSpec::Ball { .. } => "ball",
            DomainSpec::Ellipse { .. } => "ellipse",
            DomainSpec::Rectangle { .. } => "rectangle",
            DomainSpec::Polygon { .. } => "polygon",
            DomainSpec::Revolution { .. } => "revolution",
            DomainSpec::Implicit(_) => "implicit",
        }
    }

    /// Space dimension of the boundary-value problem posed on this domain.
    pub fn dim(&self) -> usize {
        match self {
            DomainSpec::Ball { center, .. } => center.len(),
            DomainSpec::Revolution { .. } => 3,
            _ => 2,
        }
    }

    /// Bounding box of the computational section (always planar).
    pub fn bounding_box(&self) -> ([f64; 2], [f64; 2]) {
        match self {
            DomainSpec::Ball { center, radius } => (
                [center[0] - radius, center[1] - radius],
                [center[0] + radius, center[1] + radius],
            ),
            DomainSpec::Ellipse { center, semi_axes } => (
                [center[0] - semi_axes[0], center[1] - semi_axes[1]],
                [center[0] + semi_axes[0], center[1] + semi_axes[1]],
            ),
            DomainSpec::Rectangle { lo, hi } => (*lo, *hi),
            DomainSpec::Polygon { vertices } => {
                let mut lo = [f64::INFINITY; 2];
                let mut hi = [f64::NEG_INFINITY; 2];
                for v in vertices {
                    for k in 0..2 {
                        lo[k] = lo[k].min(v[k]);
                        hi[k] = hi[k].max(v[k]);
                    }
                }
                (lo, hi)
            }
            DomainSpec::Revolution { profile } => {
                let (z0, z1) = profile.z_range();
                ([0.0, z0], [profile.max_rho(), z1])
            }
            DomainSpec::Implicit(d) => d.bbox,
        }
    }

    /// Strict interior test in section coordinates.
    pub fn inside(&self, p: &[f64]) -> bool {
        match self {
            DomainSpec::Ball { center, radius } => {
                let mut s = 0.0;
                for k in 0..center.len() {
                    let d = p[k] - center[k];
                    s += d * d;
                }
                s.sqrt() < *radius
            }
            DomainSpec::Ellipse { center, semi_axes } => {
                let dx = (p[0] - center[0]) / semi_axes[0];
                let dy = (p[1] - center[1]) / semi_axes[1];
                dx * dx + dy * dy < 1.0
            }
            DomainSpec::Rectangle { lo, hi } => {
                p[0] > lo[0] && p[0] < hi[0] && p[1] > lo[1] && p[1] < hi[1]
            }
            DomainSpec::Polygon { vertices } => point_in_polygon(p[0], p[1], vertices),
            DomainSpec::Revolution { profile } => {
                let (z0, z1) = profile.z_range();
                let (rho, z) = (p[0], p[1]);
                rho >= 0.0 && z > z0 && z < z1 && rho < profile.rho(z)
            }
            DomainSpec::Implicit(d) => (d.level)(p[0], p[1]) < 0.0,
        }
    }

    /// Distance from a point in the closure of the domain to its boundary.
    pub fn distance_to_boundary(&self, p: &[f64]) -> Result<f64> {
        let d = self.unsigned_boundary_distance(p);
        let scale = self.scale();
        if !self.inside(p) && d > 1e-9 * scale {
            return Err(Error::Domain(format!(
                "point {:?} lies outside the closure of the domain",
                p
            )));
        }
        Ok(d)
    }

    /// Unsigned distance to the boundary (valid on both sides).
    pub fn unsigned_boundary_distance(&self, p: &[f64]) -> f64 {
        match self {
            DomainSpec::Ball { center, radius } => {
                let mut s = 0.0;
                for k in 0..center.len() {
                    let d = p[k] - center[k];
                    s += d * d;
                }
                (radius - s.sqrt()).abs()
            }
            DomainSpec::Ellipse { center, semi_axes } => {
                let q = [p[0] - center[0], p[1] - center[1]];
                distance_to_ellipse(q, *semi_axes)
            }
            DomainSpec::Rectangle { lo, hi } => {
                // Inside: nearest side. Outside: distance to the box.
                if self.inside(p) {
                    (p[0] - lo[0])
                        .min(hi[0] - p[0])
                        .min(p[1] - lo[1])
                        .min(hi[1] - p[1])
                } else {
                    let dx = (lo[0] - p[0]).max(0.0).max(p[0] - hi[0]);
                    let dy = (lo[1] - p[1]).max(0.0).max(p[1] - hi[1]);
                    (dx * dx + dy * dy).sqrt()
                }
            }
            DomainSpec::Polygon { vertices } => {
                let mut best = f64::INFINITY;
                let n = vertices.len();
                for i in 0..n {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    best = best.min(point_segment_distance(p[0], p[1], a, b));
                }
                best
            }
            DomainSpec::Revolution { profile } => profile.distance_to_curve(p[0], p[1]),
            DomainSpec::Implicit(_) => {
                let samples = self.boundary_samples(0);
                let mut best = f64::INFINITY;
                for s in samples {
                    let dx = p[0] - s[0];
                    let dy = p[1] - s[1];
                    best = best.min(dx * dx + dy * dy);
                }
                best.sqrt()
            }
        }
    }

    /// A characteristic length (bounding-box diagonal).
    pub fn scale(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        ((hi[0] - lo[0]).powi(2) + (hi[1] - lo[1]).powi(2)).sqrt()
    }

    /// Does this kind expose a smooth 1-parameter boundary curve?
    pub fn has_boundary_param(&self) -> bool {
        matches!(
            self,
            DomainSpec::Ball { .. }
                | DomainSpec::Ellipse { .. }
                | DomainSpec::Rectangle { .. }
                | DomainSpec::Polygon { .. }
        )
    }

    /// Boundary point at parameter `t` in `[0, 1)` (planar kinds only).
    pub fn boundary_point(&self, t: f64) -> [f64; 2] {
        let tau = t.rem_euclid(1.0);
        match self {
            DomainSpec::Ball { center, radius } => {
                let th = 2.0 * std::f64::consts::PI * tau;
                [center[0] + radius * th.cos(), center[1] + radius * th.sin()]
            }
            DomainSpec::Ellipse { center, semi_axes } => {
                let th = 2.0 * std::f64::consts::PI * tau;
                [
                    center[0] + semi_axes[0] * th.cos(),
                    center[1] + semi_axes[1] * th.sin(),
                ]
            }
            DomainSpec::Rectangle { lo, hi } => {
                let verts = [
                    [lo[0], lo[1]],
                    [hi[0], lo[1]],
                    [hi[0], hi[1]],
                    [lo[0], hi[1]],
                ];
                polyline_point(&verts, tau)
            }
            DomainSpec::Polygon { vertices } => polyline_point(vertices, tau),
            _ => panic!(
                "boundary_point: kind {} has no parametrization",
                self.kind_name()
            ),
        }
    }

    /// Outward unit normal at parameter `t` (smooth points of planar kinds).
    pub fn outward_normal(&self, t: f64) -> [f64; 2] {
        match self {
            DomainSpec::Ball { center, radius } => {
                let p = self.boundary_point(t);
                let n = [(p[0] - center[0]) / radius, (p[1] - center[1]) / radius];
                n
            }
            DomainSpec::Ellipse { center, semi_axes } => {
                let p = self.boundary_point(t);
                let g = [
                    (p[0] - center[0]) / (semi_axes[0] * semi_axes[0]),
                    (p[1] - center[1]) / (semi_axes[1] * semi_axes[1]),
                ];
                let norm = (g[0] * g[0] + g[1] * g[1]).sqrt();
                [g[0] / norm, g[1] / norm]
            }
            DomainSpec::Rectangle { lo, hi } => {
                let verts = [
                    [lo[0], lo[1]],
                    [hi[0], lo[1]],
                    [hi[0], hi[1]],
                    [lo[0], hi[1]],
                ];
                polyline_normal(&verts, t.rem_euclid(1.0))
            }
            DomainSpec::Polygon { vertices } => polyline_normal(vertices, t.rem_euclid(1.0)),
            _ => panic!(
                "outward_normal: kind {} has no parametrization",
                self.kind_name()
            ),
        }
    }

    /// Boundary sample points. `n = 0` picks a kind-appropriate default.
    /// Implicit samples come from level-set edge bisection on a lattice and
    /// are cached after the first call.
    pub fn boundary_samples(&self, n: usize) -> Vec<[f64; 2]> {
        match self {
            DomainSpec::Implicit(d) => {
                let cached = d.boundary.get_or_init(|| implicit_boundary_samples(d));
                if n == 0 || n >= cached.len() {
                    cached.clone()
                } else {
                    let stride = cached.len().div_ceil(n);
                    cached.iter().step_by(stride).copied().collect()
                }
            }
            DomainSpec::Revolution { profile } => {
                let m = if n == 0 { 2048 } else { n };
                profile.curve_samples(m)
            }
            _ => {
                let m = if n == 0 { 1024 } else { n };
                (0..m)
                    .map(|i| self.boundary_point(i as f64 / m as f64))
                    .collect()
            }
        }
    }

    /// True when the planar domain is convex (ellipse/ball/rectangle always;
    /// polygons by edge-turn test).
    pub fn is_convex(&self) -> bool {
        match self {
            DomainSpec::Ball { .. } | DomainSpec::Ellipse { .. } | DomainSpec::Rectangle { .. } => {
                true
            }
            DomainSpec::Polygon { vertices } => polygon_is_convex(vertices),
            _ => false,
        }
    }

    pub fn convex_polygon(vertices: Vec<[f64; 2]>) -> Result<Self> {
        if !polygon_is_convex(&vertices) {
            return Err(Error::Domain("polygon is not convex".into()));
        }
        Ok(DomainSpec::Polygon { vertices })
    }
}

/// Even-odd ray-crossing test; works for general simple polygons.
fn point_in_polygon(x: f64, y: f64, vertices: &[[f64; 2]]) -> bool {
    let n = vertices.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (xi, yi) = (vertices[i][0], vertices[i][1]);
        let (xj, yj) = (vertices[j][0], vertices[j][1]);
        if ((yi > y) != (yj > y)) && (x < (xj - xi) * (y - yi) / (yj - yi) + xi) {
            inside = !inside;
        }
        j = i;
    }
    inside
}

fn polygon_is_convex(vertices: &[[f64; 2]]) -> bool {
    let n = vertices.len();
    if n < 3 {
        return false;
    }
    let mut sign = 0.0f64;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let c = vertices[(i + 2) % n];
        let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
        if cross.abs() > 1e-14 {
            if sign != 0.0 && cross.signum() != sign {
                return false;
            }
            sign = cross.signum();
        }
    }
    true
}

pub(crate) fn point_segment_distance(x: f64, y: f64, a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [x - a[0], y - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let px = a[0] + t * ab[0];
    let py = a[1] + t * ab[1];
    ((x - px).powi(2) + (y - py).powi(2)).sqrt()
}

/// Distance from `q` (relative to the center) to the axis-aligned ellipse
/// with the given semi-axes: coarse parameter scan plus golden refinement.
fn distance_to_ellipse(q: [f64; 2], semi: [f64; 2]) -> f64 {
    let d2 = |th: f64| {
        let dx = semi[0] * th.cos() - q[0];
        let dy = semi[1] * th.sin() - q[1];
        dx * dx + dy * dy
    };
    let coarse = 256;
    let mut best_i = 0;
    let mut best = f64::INFINITY;
    let two_pi = 2.0 * std::f64::consts::PI;
    for i in 0..coarse {
        let v = d2(two_pi * i as f64 / coarse as f64);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let lo = two_pi * (best_i as f64 - 1.0) / coarse as f64;
    let hi = two_pi * (best_i as f64 + 1.0) / coarse as f64;
    let (_, v) = golden_min(d2, lo, hi, 100);
    v.min(best).sqrt()
}

/// Total boundary length and point at arclength fraction `t` of a closed polyline.
fn polyline_point(vertices: &[[f64; 2]], t: f64) -> [f64; 2] {
    let n = vertices.len();
    let mut lens = Vec::with_capacity(n);
    let mut total = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let l = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
        lens.push(l);
        total += l;
    }
    let mut s = t * total;
    for i in 0..n {
        if s <= lens[i] || i == n - 1 {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let f = if lens[i] > 0.0 { s / lens[i] } else { 0.0 };
            return [a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])];
        }
        s -= lens[i];
    }
    vertices[0]
}

fn polyline_normal(vertices: &[[f64; 2]], t: f64) -> [f64; 2] {
    let n = vertices.len();
    let mut lens = Vec::with_capacity(n);
    let mut total = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let l = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
        lens.push(l);
        total += l;
    }
    // Counterclockwise orientation is normalized by signed area.
    let mut area = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        area += a[0] * b[1] - b[0] * a[1];
    }
    let ccw = area > 0.0;
    let mut s = t * total;
    for i in 0..n {
        if s <= lens[i] || i == n - 1 {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let tx = (b[0] - a[0]) / lens[i].max(1e-300);
            let ty = (b[1] - a[1]) / lens[i].max(1e-300);
            return if ccw { [ty, -tx] } else { [-ty, tx] };
        }
        s -= lens[i];
    }
    [1.0, 0.0]
}

/// Zero-level samples of an implicit domain: every lattice edge crossed by the
/// level set contributes a bisected crossing point; lattice resolution keeps
/// at least four samples per crossed cell.
fn implicit_boundary_samples(d: &ImplicitDomain) -> Vec<[f64; 2]> {
    let (lo, hi) = d.bbox;
    let n = 512usize;
    let hx = (hi[0] - lo[0]) / n as f64;
    let hy = (hi[1] - lo[1]) / n as f64;
    let phi = |x: f64, y: f64| (d.level)(x, y);
    let mut pts = Vec::new();
    let mut cross = |xa: f64, ya: f64, xb: f64, yb: f64| {
        let fa = phi(xa, ya);
        let fb = phi(xb, yb);
        if fa == 0.0 {
            pts.push([xa, ya]);
            return;
        }
        if fa * fb < 0.0 {
            let mut a = 0.0f64;
            let mut b = 1.0f64;
            let mut va = fa;
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                let vm = phi(xa + m * (xb - xa), ya + m * (yb - ya));
                if va * vm <= 0.0 {
                    b = m;
                } else {
                    a = m;
                    va = vm;
                }
            }
            let m = 0.5 * (a + b);
            pts.push([xa + m * (xb - xa), ya + m * (yb - ya)]);
        }
    };
    for j in 0..=n {
        for i in 0..=n {
            let x = lo[0] + i as f64 * hx;
            let y = lo[1] + j as f64 * hy;
            if i < n {
                cross(x, y, x + hx, y);
            }
            if j < n {
                cross(x, y, x, y + hy);
            }
            // Half-edge midpoint crossings double the density along the front.
            if i < n && j < n {
                cross(x + 0.5 * hx, y, x + 0.5 * hx, y + hy);
                cross(x, y + 0.5 * hy, x + hx, y + 0.5 * hy);
            }
        }
    }
    pts
}
