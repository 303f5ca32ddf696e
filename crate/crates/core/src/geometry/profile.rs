//! Profiles of solids of revolution. A profile is a piecewise-analytic radius
//! function `rho(z) >= 0` on `[z0, z1]`; each piece carries exact first and
//! second derivatives so boundary curvature needs no numerical differentiation.

use crate::numerics::golden_min;

#[derive(Debug, Clone)]
pub enum ProfilePiece {
    /// Spherical cap: `rho = sqrt(R^2 - (z - zc)^2)`.
    Arc { zc: f64, radius: f64 },
    /// Catenoid neck: `rho = waist * cosh((z - z_waist) / waist)`.
    Catenoid { z_waist: f64, waist: f64 },
    /// Straight cylinder: `rho = r`.
    Constant { rho: f64 },
}

impl ProfilePiece {
    fn rho(&self, z: f64) -> f64 {
        match self {
            ProfilePiece::Arc { zc, radius } => {
                let d = z - zc;
                (radius * radius - d * d).max(0.0).sqrt()
            }
            ProfilePiece::Catenoid { z_waist, waist } => waist * ((z - z_waist) / waist).cosh(),
            ProfilePiece::Constant { rho } => *rho,
        }
    }

    fn drho(&self, z: f64) -> f64 {
        match self {
            ProfilePiece::Arc { zc, .. } => {
                let r = self.rho(z);
                if r <= 0.0 {
                    f64::INFINITY
                } else {
                    -(z - zc) / r
                }
            }
            ProfilePiece::Catenoid { z_waist, waist } => ((z - z_waist) / waist).sinh(),
            ProfilePiece::Constant { .. } => 0.0,
        }
    }

    fn d2rho(&self, z: f64) -> f64 {
        match self {
            ProfilePiece::Arc { radius, .. } => {
                let r = self.rho(z);
                if r <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    -radius * radius / (r * r * r)
                }
            }
            ProfilePiece::Catenoid { z_waist, waist } => ((z - z_waist) / waist).cosh() / waist,
            ProfilePiece::Constant { .. } => 0.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Profile {
    /// `(z_lo, z_hi, piece)`, consecutive and increasing in `z`.
    pieces: Vec<(f64, f64, ProfilePiece)>,
}

impl Profile {
    pub fn new(pieces: Vec<(f64, f64, ProfilePiece)>) -> Self {
        assert!(!pieces.is_empty());
        for w in pieces.windows(2) {
            assert!((w[0].1 - w[1].0).abs() < 1e-12, "pieces must be contiguous");
        }
        Profile { pieces }
    }

    /// Full ball of the given radius, as the semicircular profile.
    pub fn sphere(radius: f64) -> Self {
        Profile::new(vec![(
            -radius,
            radius,
            ProfilePiece::Arc { zc: 0.0, radius },
        )])
    }

    /// Catenoid `rho = c cosh(z/c)` truncated to `[z0, z1]` (open ends).
    pub fn catenoid(waist: f64, z0: f64, z1: f64) -> Self {
        Profile::new(vec![(
            z0,
            z1,
            ProfilePiece::Catenoid {
                z_waist: 0.0,
                waist,
            },
        )])
    }

    /// Cylinder of radius `r` on `[z0, z1]` (flat end caps).
    pub fn cylinder(rho: f64, z0: f64, z1: f64) -> Self {
        Profile::new(vec![(z0, z1, ProfilePiece::Constant { rho })])
    }

    /// Dumbbell: two spheres of radii `big >= small`, joined by the unique
    /// catenoid of the given waist tangent to both. Tangency makes the profile
    /// C^1 with mean curvature >= 0 on every smooth piece (spheres: 1/R,
    /// catenoid: 0), so the solid has a mean-convex boundary.
    pub fn dumbbell(big: f64, small: f64, waist: f64) -> Self {
        assert!(big >= small && small > waist && waist > 0.0);
        // Tangency angle alpha on a sphere of radius R satisfies cos(alpha) = sqrt(waist/R).
        let junction = |radius: f64| -> (f64, f64) {
            let cos_a = (waist / radius).sqrt();
            let sin_a = (1.0 - cos_a * cos_a).sqrt();
            let tan_a = sin_a / cos_a;
            // z of tangency on the catenoid (waist at z = 0).
            let z_star = waist * tan_a.asinh();
            (z_star, sin_a)
        };
        let (z_star_big, sin_big) = junction(big);
        let (z_star_small, sin_small) = junction(small);
        let z_left = -z_star_big; // big sphere on the left
        let z_right = z_star_small;
        let zc_left = z_left - big * sin_big;
        let zc_right = z_right + small * sin_small;
        Profile::new(vec![
            (
                zc_left - big,
                z_left,
                ProfilePiece::Arc {
                    zc: zc_left,
                    radius: big,
                },
            ),
            (
                z_left,
                z_right,
                ProfilePiece::Catenoid {
                    z_waist: 0.0,
                    waist,
                },
            ),
            (
                z_right,
                zc_right + small,
                ProfilePiece::Arc {
                    zc: zc_right,
                    radius: small,
                },
            ),
        ])
    }

    /// Center of the larger spherical end, if the first piece is an arc.
    pub fn first_arc_center_radius(&self) -> Option<(f64, f64)> {
        match &self.pieces[0].2 {
            ProfilePiece::Arc { zc, radius } => Some((*zc, *radius)),
            _ => None,
        }
    }

    pub fn z_range(&self) -> (f64, f64) {
        (self.pieces[0].0, self.pieces[self.pieces.len() - 1].1)
    }

    pub fn rho(&self, z: f64) -> f64 {
        let (z0, z1) = self.z_range();
        if z <= z0 {
            return self.pieces[0].2.rho(z0);
        }
        if z >= z1 {
            return self.pieces[self.pieces.len() - 1].2.rho(z1);
        }
        for (lo, hi, piece) in &self.pieces {
            if z >= *lo && z <= *hi {
                return piece.rho(z);
            }
        }
        unreachable!()
    }

    pub fn max_rho(&self) -> f64 {
        let mut best: f64 = 0.0;
        for (lo, hi, piece) in &self.pieces {
            for i in 0..=256 {
                let z = lo + (hi - lo) * i as f64 / 256.0;
                best = best.max(piece.rho(z));
            }
        }
        best
    }

    /// Whether the profile is closed (touches the axis) at its two ends.
    pub fn closed_ends(&self) -> (bool, bool) {
        let (z0, z1) = self.z_range();
        (self.rho(z0) < 1e-12, self.rho(z1) < 1e-12)
    }

    /// Mean curvature of the surface of revolution at height `z` (inward
    /// normal; a sphere of radius R gives `1/R`).
    pub fn mean_curvature(&self, z: f64) -> f64 {
        for (lo, hi, piece) in &self.pieces {
            if z >= *lo && z <= *hi {
                let rho = piece.rho(z);
                if rho <= 1e-12 {
                    return f64::NAN; // pole; handled by the caller
                }
                let dr = piece.drho(z);
                let ddr = piece.d2rho(z);
                let w = (1.0 + dr * dr).sqrt();
                let k_meridian = -ddr / (w * w * w);
                let k_parallel = 1.0 / (rho * w);
                return 0.5 * (k_meridian + k_parallel);
            }
        }
        f64::NAN
    }

    /// Distance in the `(rho, z)` half-plane from `(rho, z)` to the profile
    /// curve (including flat end caps when the profile has open ends). Equals
    /// the 3D distance to the surface of revolution for points with rho >= 0.
    pub fn distance_to_curve(&self, rho: f64, z: f64) -> f64 {
        let mut best = f64::INFINITY;
        for (lo, hi, piece) in &self.pieces {
            best = best.min(distance_to_piece(piece, *lo, *hi, rho, z));
        }
        // Flat caps for open ends.
        let (z0, z1) = self.z_range();
        let (closed0, closed1) = self.closed_ends();
        if !closed0 {
            best = best.min(distance_to_cap(self.rho(z0), z0, rho, z));
        }
        if !closed1 {
            best = best.min(distance_to_cap(self.rho(z1), z1, rho, z));
        }
        best
    }

    /// Sample points along the curve (arcs by angle, other pieces by z).
    pub fn curve_samples(&self, n_per_piece: usize) -> Vec<[f64; 2]> {
        let mut out = Vec::new();
        for (lo, hi, piece) in &self.pieces {
            match piece {
                ProfilePiece::Arc { zc, radius } => {
                    let a0 = ((lo - zc) / radius).clamp(-1.0, 1.0).asin();
                    let a1 = ((hi - zc) / radius).clamp(-1.0, 1.0).asin();
                    for i in 0..=n_per_piece {
                        let a = a0 + (a1 - a0) * i as f64 / n_per_piece as f64;
                        out.push([radius * a.cos(), zc + radius * a.sin()]);
                    }
                }
                _ => {
                    for i in 0..=n_per_piece {
                        let z = lo + (hi - lo) * i as f64 / n_per_piece as f64;
                        out.push([piece.rho(z), z]);
                    }
                }
            }
        }
        out
    }
}

fn distance_to_cap(cap_rho: f64, cap_z: f64, rho: f64, z: f64) -> f64 {
    if rho <= cap_rho {
        (z - cap_z).abs()
    } else {
        ((rho - cap_rho).powi(2) + (z - cap_z).powi(2)).sqrt()
    }
}

fn distance_to_piece(piece: &ProfilePiece, lo: f64, hi: f64, rho: f64, z: f64) -> f64 {
    match piece {
        ProfilePiece::Arc { zc, radius } => {
            // Circle centered at (0, zc) in the half-plane; project radially,
            // falling back to the arc endpoints when outside the z window.
            let v = [rho, z - zc];
            let len = (v[0] * v[0] + v[1] * v[1]).sqrt();
            let mut best = f64::INFINITY;
            if len > 1e-300 {
                let pz = zc + radius * v[1] / len;
                if pz >= lo - 1e-12 && pz <= hi + 1e-12 {
                    best = (len - radius).abs();
                }
            } else {
                best = *radius;
            }
            for ze in [lo, hi] {
                let re = piece.rho(ze);
                best = best.min(((rho - re).powi(2) + (z - ze).powi(2)).sqrt());
            }
            best
        }
        _ => {
            let d2 = |zz: f64| {
                let dr = piece.rho(zz) - rho;
                let dz = zz - z;
                dr * dr + dz * dz
            };
            let coarse = 128;
            let mut best_i = 0;
            let mut best = f64::INFINITY;
            for i in 0..=coarse {
                let zz = lo + (hi - lo) * i as f64 / coarse as f64;
                let v = d2(zz);
                if v < best {
                    best = v;
                    best_i = i;
                }
            }
            let a = lo + (hi - lo) * (best_i as f64 - 1.0).max(0.0) / coarse as f64;
            let b = lo + (hi - lo) * (best_i as f64 + 1.0).min(coarse as f64) / coarse as f64;
            let (_, v) = golden_min(d2, a, b, 90);
            v.min(best).sqrt()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_profile_curvature_is_inverse_radius() {
        let p = Profile::sphere(2.0);
        for z in [-1.5, -0.5, 0.0, 0.7, 1.9] {
            assert!((p.mean_curvature(z) - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn catenoid_is_a_minimal_surface() {
        let p = Profile::catenoid(0.7, -0.9, 1.1);
        for i in 0..50 {
            let z = -0.9 + 2.0 * i as f64 / 50.0;
            assert!(p.mean_curvature(z).abs() < 1e-12);
        }
    }

    #[test]
    fn sphere_profile_distance_matches_ball() {
        let p = Profile::sphere(1.0);
        // interior point (rho, z) = (0.3, 0.2): distance = 1 - |x|
        let d = p.distance_to_curve(0.3, 0.2);
        let exact = 1.0 - (0.09f64 + 0.04).sqrt();
        assert!((d - exact).abs() < 1e-9, "d={d} exact={exact}");
    }

    #[test]
    fn dumbbell_profile_is_tangent_at_junctions() {
        let p = Profile::dumbbell(1.0, 0.55, 0.3);
        // C^0 and C^1 matching at both junction heights.
        let (z0, z1) = p.z_range();
        assert!(z0 < 0.0 && z1 > 0.0);
        let pieces = [
            (p.pieces[0].1, &p.pieces[0].2, &p.pieces[1].2),
            (p.pieces[1].1, &p.pieces[1].2, &p.pieces[2].2),
        ];
        for (zj, left, right) in pieces {
            assert!((left.rho(zj) - right.rho(zj)).abs() < 1e-10);
            assert!((left.drho(zj) - right.drho(zj)).abs() < 1e-8);
        }
    }

    #[test]
    fn dumbbell_mean_curvature_nonnegative() {
        let p = Profile::dumbbell(1.0, 0.55, 0.3);
        let (z0, z1) = p.z_range();
        for i in 1..2000 {
            let z = z0 + (z1 - z0) * i as f64 / 2000.0;
            let m = p.mean_curvature(z);
            if m.is_finite() {
                assert!(m >= -1e-10, "mean curvature {m} at z={z}");
            }
        }
    }

    #[test]
    fn dumbbell_contains_big_sphere() {
        let p = Profile::dumbbell(1.0, 0.55, 0.3);
        let (zc, radius) = p.first_arc_center_radius().unwrap();
        assert!((radius - 1.0).abs() < 1e-15);
        // The inscribed ball at the big-sphere center has radius exactly R.
        let d = p.distance_to_curve(0.0, zc);
        assert!((d - 1.0).abs() < 1e-9, "distance at big center = {d}");
    }

    #[test]
    fn cylinder_distance_accounts_for_caps() {
        let p = Profile::cylinder(1.0, 0.0, 8.0);
        assert!((p.distance_to_curve(0.0, 4.0) - 1.0).abs() < 1e-12);
        assert!((p.distance_to_curve(0.5, 0.3) - 0.3).abs() < 1e-12);
    }
}
