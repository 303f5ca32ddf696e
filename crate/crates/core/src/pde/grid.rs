//! Uniform lattice restricted to a domain, with boundary intersection
//! fractions per cut edge (Shortley–Weller style data for symmetric
//! embedded-boundary stencils).
//!
//! The lattice is anchored so the bounding-box center is a node: symmetric
//! domains then produce symmetric node sets, which keeps argmax reporting
//! deterministic and symmetry-exact.

use crate::error::{Error, Result};
use crate::geometry::DomainSpec;

/// Direction order used throughout: W, E, S, N.
pub const DIRS: [(i64, i64); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];

#[derive(Debug, Clone)]
pub struct Grid {
    pub h: f64,
    /// Coordinates of lattice node (0, 0).
    pub origin: [f64; 2],
    pub nx: usize,
    pub ny: usize,
    /// Lattice node -> interior index, or -1.
    pub index: Vec<i64>,
    /// Interior index -> lattice (i, j).
    pub nodes: Vec<(usize, usize)>,
    /// Interior index -> neighbor interior index per direction, -1 if the
    /// edge is cut by the boundary (or leaves the lattice).
    pub neighbors: Vec<[i64; 4]>,
    /// Interior index -> edge fraction per direction in (0, 1]; 1 for full
    /// interior edges, the boundary intersection fraction for cut edges.
    pub fractions: Vec<[f64; 4]>,
    /// Axisymmetric weighting (solid of revolution): x plays rho.
    pub axisymmetric: bool,
    pub domain: DomainSpec,
}

impl Grid {
    /// Build the lattice for `domain` at spacing `h`. Fails when the grid
    /// does not resolve the domain (fewer than 30 cells across the inradius
    /// is rejected by the solvers' precondition, checked here cheaply via
    /// the bounding box).
    pub fn build(domain: &DomainSpec, h: f64) -> Result<Grid> {
        if h <= 0.0 {
            return Err(Error::Domain("grid spacing must be positive".into()));
        }
        let axisymmetric = matches!(domain, DomainSpec::Revolution { .. });
        let (lo, hi) = domain.bounding_box();
        // Anchor so that symmetric domains produce symmetric node sets; the
        // axisymmetric x-anchor must be the axis itself so that rho = 0 is a
        // node column (the symmetry condition lives there, not a Dirichlet 0).
        let center = if axisymmetric {
            [0.0, (lo[1] + hi[1]) / 2.0]
        } else {
            [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0]
        };
        let imin = ((lo[0] - center[0]) / h).floor() as i64 - 1;
        let imax = ((hi[0] - center[0]) / h).ceil() as i64 + 1;
        let jmin = ((lo[1] - center[1]) / h).floor() as i64 - 1;
        let jmax = ((hi[1] - center[1]) / h).ceil() as i64 + 1;
        let nx = (imax - imin + 1) as usize;
        let ny = (jmax - jmin + 1) as usize;
        let origin = [center[0] + imin as f64 * h, center[1] + jmin as f64 * h];

        let mut index = vec![-1i64; nx * ny];
        let mut nodes = Vec::new();
        let inside = |i: usize, j: usize| -> bool {
            let p = [origin[0] + i as f64 * h, origin[1] + j as f64 * h];
            domain.inside(&p)
        };
        for j in 0..ny {
            for i in 0..nx {
                if inside(i, j) {
                    index[j * nx + i] = nodes.len() as i64;
                    nodes.push((i, j));
                }
            }
        }
        if nodes.is_empty() {
            return Err(Error::Domain(
                "grid does not resolve the domain interior".into(),
            ));
        }

        let mut neighbors = vec![[-1i64; 4]; nodes.len()];
        let mut fractions = vec![[1.0f64; 4]; nodes.len()];
        for (k, &(i, j)) in nodes.iter().enumerate() {
            let p = [origin[0] + i as f64 * h, origin[1] + j as f64 * h];
            for (d, (di, dj)) in DIRS.iter().enumerate() {
                let ni = i as i64 + di;
                let nj = j as i64 + dj;
                let nb_inside = ni >= 0
                    && nj >= 0
                    && (ni as usize) < nx
                    && (nj as usize) < ny
                    && index[nj as usize * nx + ni as usize] >= 0;
                if nb_inside {
                    neighbors[k][d] = index[nj as usize * nx + ni as usize];
                } else {
                    let q = [p[0] + *di as f64 * h, p[1] + *dj as f64 * h];
                    fractions[k][d] = edge_fraction(domain, p, q);
                }
            }
        }

        Ok(Grid {
            h,
            origin,
            nx,
            ny,
            index,
            nodes,
            neighbors,
            fractions,
            axisymmetric,
            domain: domain.clone(),
        })
    }

    pub fn n_interior(&self) -> usize {
        self.nodes.len()
    }

    pub fn point(&self, k: usize) -> [f64; 2] {
        let (i, j) = self.nodes[k];
        [
            self.origin[0] + i as f64 * self.h,
            self.origin[1] + j as f64 * self.h,
        ]
    }

    /// Volume measure of the node's cell (axisymmetric cells carry the
    /// rho-weight; the axis cell is the half-cell of radius h/2).
    pub fn cell_volume(&self, k: usize) -> f64 {
        let h = self.h;
        if self.axisymmetric {
            let rho = self.point(k)[0];
            if rho.abs() < 0.5 * h {
                h * h * h / 8.0
            } else {
                rho * h * h
            }
        } else {
            h * h
        }
    }

    /// Flux coefficient of the edge from node `k` in direction `d`, including
    /// the 1/theta cut scaling. Interior edges produce symmetric pair weights.
    pub fn edge_coeff(&self, k: usize, d: usize) -> f64 {
        let theta = self.fractions[k][d].max(1e-8);
        if !self.axisymmetric {
            return 1.0 / theta;
        }
        let h = self.h;
        let rho = self.point(k)[0];
        match d {
            0 => {
                // toward -rho
                let face = (rho - theta * h / 2.0).max(0.0);
                face / theta
            }
            1 => (rho + theta * h / 2.0) / theta,
            _ => {
                // z-direction face; axis half-cell carries h/8 instead of rho.
                let m = if rho.abs() < 0.5 * h { h / 8.0 } else { rho };
                m / theta
            }
        }
    }
}

/// Boundary crossing fraction along the edge `p -> q` (p inside, q outside),
/// located by bisection of the inside-test.
fn edge_fraction(domain: &DomainSpec, p: [f64; 2], q: [f64; 2]) -> f64 {
    let mut a = 0.0f64;
    let mut b = 1.0f64;
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        let x = [p[0] + m * (q[0] - p[0]), p[1] + m * (q[1] - p[1])];
        if domain.inside(&x) {
            a = m;
        } else {
            b = m;
        }
    }
    (0.5 * (a + b)).clamp(1e-8, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_grid_masks_and_fractions() {
        let dom = DomainSpec::unit_disk();
        let g = Grid::build(&dom, 1.0 / 16.0).unwrap();
        // Center node exists and has all-interior neighbors.
        let k_center = g
            .nodes
            .iter()
            .position(|&(i, j)| {
                let p = [g.origin[0] + i as f64 * g.h, g.origin[1] + j as f64 * g.h];
                p[0].abs() < 1e-12 && p[1].abs() < 1e-12
            })
            .expect("center node");
        assert!(g.neighbors[k_center].iter().all(|&n| n >= 0));
        // Fractions lie in (0, 1]; cut edges approximate the circle.
        for (k, fr) in g.fractions.iter().enumerate() {
            let p = g.point(k);
            for (d, &f) in fr.iter().enumerate() {
                assert!(f > 0.0 && f <= 1.0);
                if g.neighbors[k][d] < 0 {
                    let (di, dj) = DIRS[d];
                    let bx = p[0] + f * di as f64 * g.h;
                    let by = p[1] + f * dj as f64 * g.h;
                    let r = (bx * bx + by * by).sqrt();
                    assert!((r - 1.0).abs() < 1e-9, "cut point off the circle: {r}");
                }
            }
        }
    }

    #[test]
    fn mask_consistent_with_inside_test() {
        let dom = DomainSpec::Ellipse {
            center: [0.3, -0.2],
            semi_axes: [1.5, 0.8],
        };
        let g = Grid::build(&dom, 1.0 / 32.0).unwrap();
        for j in 0..g.ny {
            for i in 0..g.nx {
                let p = [g.origin[0] + i as f64 * g.h, g.origin[1] + j as f64 * g.h];
                assert_eq!(g.index[j * g.nx + i] >= 0, dom.inside(&p));
            }
        }
    }
}
