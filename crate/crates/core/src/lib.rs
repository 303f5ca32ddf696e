//! Solvers and certified geometric bounds for the location of interior maxima
//! (hot spots, maximal torsion points) of elliptic and parabolic boundary-value
//! problems with homogeneous Dirichlet data.
//!
//! The crate is organized around the pipeline
//! `solve -> locate maximum -> measure geometry -> evaluate bounds -> certify`:
//!
//! * [`geometry`] — domains, distance fields, inradius/incenters, diameter,
//!   exterior tangent radius, boundary mean curvature, John ellipsoid.
//! * [`young`] — convex function pairs `(Phi, Psi)` under Legendre duality,
//!   with derivatives, inverses and growth envelopes.
//! * [`anisotropy`] — norms `H` with gradients, polar norms, anisotropic
//!   distance/inradius and Wulff-shape exact solutions.
//! * [`pde`] — embedded-boundary finite-difference solvers (torsion,
//!   first eigenpair, heat flow, reaction-diffusion, p-torsion, anisotropic
//!   torsion, semilinear) plus field services (argmax, gradients).
//! * [`bounds`] — the closed-form distance bounds and the special functions
//!   they need; produces [`bounds::BoundCheck`] records.
//! * [`harness`] — JSON configuration, experiment orchestration, property
//!   suite, CSV/JSON report emission.

pub mod anisotropy;
pub mod bounds;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod numerics;
pub mod pde;
pub mod young;

pub use error::{Error, Result};
