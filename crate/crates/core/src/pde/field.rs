//! Scalar fields on a grid: values per interior node with zero extension
//! outside, plus the argmax and gradient services every bound check uses.

use super::grid::Grid;
use crate::error::{Error, Result};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct ScalarField {
    pub grid: Arc<Grid>,
    pub values: Vec<f64>,
    pub problem: String,
}

/// Argmax report: interpolated maximum point, its value, and the set of
/// near-maximal nodes (within 1e-3 of the max, relatively).
#[derive(Debug, Clone)]
pub struct MaxLocation {
    pub point: [f64; 2],
    pub value: f64,
    pub near_max: Vec<[f64; 2]>,
}

impl ScalarField {
    pub fn new(grid: Arc<Grid>, values: Vec<f64>, problem: impl Into<String>) -> Self {
        debug_assert_eq!(grid.n_interior(), values.len());
        ScalarField {
            grid,
            values,
            problem: problem.into(),
        }
    }

    pub fn from_fn(grid: &Arc<Grid>, f: impl Fn([f64; 2]) -> f64, problem: &str) -> Self {
        let values = (0..grid.n_interior()).map(|k| f(grid.point(k))).collect();
        ScalarField::new(grid.clone(), values, problem)
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Value at the interior node nearest to `p` (panics off-grid).
    pub fn value_near(&self, p: [f64; 2]) -> f64 {
        let g = &self.grid;
        let i = ((p[0] - g.origin[0]) / g.h).round() as i64;
        let j = ((p[1] - g.origin[1]) / g.h).round() as i64;
        let k = g.index[j as usize * g.nx + i as usize];
        assert!(k >= 0, "value_near: point not interior");
        self.values[k as usize]
    }

    /// Discrete L2 norm with cell-volume weights.
    pub fn l2_norm(&self) -> f64 {
        let g = &self.grid;
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| g.cell_volume(k) * v * v)
            .sum::<f64>()
            .sqrt()
    }

    /// Volume-weighted inner product.
    pub fn inner(&self, other: &ScalarField) -> f64 {
        let g = &self.grid;
        self.values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(k, (a, b))| g.cell_volume(k) * a * b)
            .sum()
    }

    /// Largest node value, its node, and all nodes within `1e-3 * max`.
    pub fn locate_max(&self) -> Result<MaxLocation> {
        let g = &self.grid;
        let mut best = f64::NEG_INFINITY;
        let mut best_k = usize::MAX;
        for (k, &v) in self.values.iter().enumerate() {
            if v > best {
                best = v;
                best_k = k;
            }
        }
        if !best.is_finite() || best == 0.0 && self.values.iter().all(|&v| v == 0.0) {
            return Err(Error::Domain("locate_max on an all-zero field".into()));
        }
        let thresh = best - 1e-3 * best.abs();
        let mut near: Vec<[f64; 2]> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v >= thresh)
            .map(|(k, _)| g.point(k))
            .collect();
        near.sort_by(|a, b| a.partial_cmp(b).unwrap());

        // Quadratic interpolation around the best node, one axis at a time.
        let (bi, bj) = g.nodes[best_k];
        let mut point = g.point(best_k);
        let mut value = best;
        let node_val = |i: i64, j: i64| -> Option<f64> {
            if i < 0 || j < 0 || i as usize >= g.nx || j as usize >= g.ny {
                return None;
            }
            let k = g.index[j as usize * g.nx + i as usize];
            if k >= 0 {
                Some(self.values[k as usize])
            } else {
                None
            }
        };
        let mut gain = 0.0;
        for axis in 0..2 {
            let (di, dj) = if axis == 0 { (1i64, 0i64) } else { (0, 1) };
            let (i, j) = (bi as i64, bj as i64);
            if let (Some(um), Some(up)) = (node_val(i - di, j - dj), node_val(i + di, j + dj)) {
                let denom = um - 2.0 * best + up;
                if denom < -1e-300 {
                    let delta = (0.5 * (um - up) / denom).clamp(-0.5, 0.5);
                    point[axis] += delta * g.h;
                    gain += 0.5 * (up - um) * delta + 0.5 * denom * delta * delta;
                }
            }
        }
        value += gain.max(0.0);
        Ok(MaxLocation {
            point,
            value,
            near_max: near,
        })
    }

    /// Gradient at every interior node: central differences where both
    /// neighbors are interior; boundary-adjacent nodes use the three-point
    /// nonuniform formula through the boundary intercept when the cut arm is
    /// long enough (intercepts closer than half a spacing amplify the
    /// solution error at the node into O(1) gradient error, so short arms
    /// fall back to the one-sided interior difference). On axisymmetric
    /// grids the rho = 0 column is a symmetry plane, not a boundary: the
    /// radial derivative there vanishes by reflection.
    pub fn gradient(&self) -> Vec<[f64; 2]> {
        let g = &self.grid;
        let h = g.h;
        let mut out = vec![[0.0f64; 2]; self.values.len()];
        for (k, grad) in out.iter_mut().enumerate() {
            let u0 = self.values[k];
            let on_axis = g.axisymmetric && g.point(k)[0].abs() < 0.5 * h;
            for axis in 0..2 {
                let (dm, dp) = if axis == 0 { (0usize, 1usize) } else { (2, 3) };
                let nb_m = g.neighbors[k][dm];
                let nb_p = g.neighbors[k][dp];
                if axis == 0 && on_axis {
                    // Mirror symmetry: u(-rho) = u(rho).
                    grad[0] = 0.0;
                    continue;
                }
                let arm = |nb: i64, d: usize| -> Option<(f64, f64)> {
                    if nb >= 0 {
                        Some((h, self.values[nb as usize]))
                    } else {
                        let theta = g.fractions[k][d];
                        if theta >= 0.5 {
                            Some((theta * h, 0.0))
                        } else {
                            None
                        }
                    }
                };
                match (arm(nb_m, dm), arm(nb_p, dp)) {
                    (Some((hm, um)), Some((hp, up))) => {
                        // Nonuniform three-point first derivative at the node.
                        grad[axis] = (hm * hm * up - hp * hp * um + (hp * hp - hm * hm) * u0)
                            / (hm * hp * (hm + hp));
                    }
                    (Some((hm, um)), None) => grad[axis] = (u0 - um) / hm,
                    (None, Some((hp, up))) => grad[axis] = (up - u0) / hp,
                    (None, None) => {
                        // Sliver column: both intercepts are close; the value
                        // itself is pinned near zero, use the tighter cut.
                        let tm = g.fractions[k][dm] * h;
                        let tp = g.fractions[k][dp] * h;
                        grad[axis] = if tp < tm { -u0 / tp } else { u0 / tm };
                    }
                }
            }
        }
        out
    }
}

/// Worst near-max representative: among the near-max nodes, the one with the
/// smallest boundary distance (the bounds must survive any maximum point).
pub fn worst_near_max(field: &ScalarField, loc: &MaxLocation) -> Result<([f64; 2], f64)> {
    let dom = &field.grid.domain;
    let mut worst_d = f64::INFINITY;
    let mut worst_p = loc.point;
    for &p in &loc.near_max {
        let d = dom.distance_to_boundary(&p)?;
        if d < worst_d {
            worst_d = d;
            worst_p = p;
        }
    }
    // The interpolated point itself competes too.
    if let Ok(d) = dom.distance_to_boundary(&loc.point) {
        if d < worst_d {
            worst_d = d;
            worst_p = loc.point;
        }
    }
    Ok((worst_p, worst_d))
}
