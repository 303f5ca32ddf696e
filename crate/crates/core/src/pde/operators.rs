//! Symmetric embedded-boundary operator application.
//!
//! The discrete operator acting on interior unknowns is the finite-volume
//! flux balance `(A u)_k = sum_dirs c_{k,dir} (u_k - u_nb)` with `u_nb = 0`
//! across cut edges and `c` the coefficients of [`Grid::edge_coeff`] (cut
//! `1/theta` scaling and axisymmetric face weights included). Interior pair
//! coefficients are shared, so `A` is symmetric positive definite, and
//! `-Lap u + m u = f` integrated over the cell reads
//! `A u + m vol u = f vol`.

use super::grid::Grid;

/// Per-node edge coefficients, optionally modulated by face diffusivities.
pub struct Operator<'g> {
    pub grid: &'g Grid,
    /// Edge coefficient per node per direction (cut scaling included).
    pub coeff: Vec<[f64; 4]>,
    /// Added mass term per node (already volume-weighted).
    pub mass: Vec<f64>,
}

impl<'g> Operator<'g> {
    /// The plain (an)isotropic-free Laplacian-type operator.
    pub fn laplacian(grid: &'g Grid) -> Self {
        let n = grid.n_interior();
        let mut coeff = vec![[0.0f64; 4]; n];
        for (k, c) in coeff.iter_mut().enumerate() {
            for d in 0..4 {
                c[d] = grid.edge_coeff(k, d);
            }
        }
        Operator {
            grid,
            coeff,
            mass: vec![0.0; n],
        }
    }

    /// Laplacian plus the volume-weighted mass coefficient `m` (for
    /// `-Lap u + m u = f`).
    pub fn helmholtz(grid: &'g Grid, m: f64) -> Self {
        let mut op = Operator::laplacian(grid);
        for (k, mass) in op.mass.iter_mut().enumerate() {
            *mass = m * grid.cell_volume(k);
        }
        op
    }

    /// Variable-diffusivity operator: `c_{k,d} <- a_face * base`, with the
    /// caller guaranteeing `a_face` is symmetric across interior pairs.
    pub fn with_face_diffusivity(grid: &'g Grid, a_face: &[[f64; 4]]) -> Self {
        let n = grid.n_interior();
        let mut coeff = vec![[0.0f64; 4]; n];
        for (k, c) in coeff.iter_mut().enumerate() {
            for d in 0..4 {
                c[d] = a_face[k][d] * grid.edge_coeff(k, d);
            }
        }
        Operator {
            grid,
            coeff,
            mass: vec![0.0; n],
        }
    }

    /// `out = A u` in flux units (callers divide by h^2 when they need the
    /// differential-operator normalization).
    pub fn apply(&self, u: &[f64], out: &mut [f64]) {
        let nb = &self.grid.neighbors;
        for k in 0..u.len() {
            let c = &self.coeff[k];
            let mut acc = (c[0] + c[1] + c[2] + c[3] + self.mass[k]) * u[k];
            for d in 0..4 {
                let j = nb[k][d];
                if j >= 0 {
                    acc -= c[d] * u[j as usize];
                }
            }
            out[k] = acc;
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.coeff.len())
            .map(|k| {
                let c = &self.coeff[k];
                c[0] + c[1] + c[2] + c[3] + self.mass[k]
            })
            .collect()
    }

    /// Right-hand side for `-Lap u (+ m u) = f` in flux units: `b_k = f_k vol_k`.
    pub fn rhs_from(&self, f: impl Fn(usize) -> f64) -> Vec<f64> {
        (0..self.grid.n_interior())
            .map(|k| f(k) * self.grid.cell_volume(k))
            .collect()
    }
}
