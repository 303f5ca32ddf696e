//! Grid-based solvers for the boundary-value problems whose interior maxima
//! the distance bounds constrain, plus field services (argmax, gradients)
//! and radial quadratures.

pub mod aniso;
pub mod eigen;
pub mod field;
pub mod grid;
pub mod heat;
pub mod linsolve;
pub mod operators;
pub mod ptorsion;
pub mod radial;
pub mod semilinear;
pub mod torsion;

pub use aniso::{descent_energy_trace, solve_aniso_torsion};
pub use eigen::{solve_eigen, EigenPair};
pub use field::{worst_near_max, MaxLocation, ScalarField};
pub use grid::Grid;
pub use heat::{solve_heat, HeatTrajectory};
pub use ptorsion::solve_p_torsion;
pub use radial::{h_eps, radial_q_eps};
pub use semilinear::{solve_lane_emden, solve_semilinear_fixed_point, LaneEmden, SemilinearSource};
pub use torsion::{solve_small_diffusion, solve_torsion, solve_torsion_axisymmetric};
