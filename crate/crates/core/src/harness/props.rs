//! Property suite: the pointwise inequalities every solve must satisfy
//! (maximum principles, distance lower bounds, the seven gradient bounds)
//! plus the trend checks (small-diffusion and early-time distance limits,
//! p -> infinity concentration at incenters, large-time spectral ratio).
//!
//! Pointwise inequalities carry tolerance `5 h * scale` with `scale` the
//! larger of the two sides' maxima; trend checks report their margins.

use super::config::{ExperimentConfig, HeatInitial, ProblemSpec};
use crate::anisotropy::aniso_distance;
use crate::bounds::{self, HeatBoundInputs};
use crate::error::Result;
use crate::geometry::{compute_summary, inradius_incenter};
use crate::pde::{
    solve_aniso_torsion, solve_eigen, solve_heat, solve_lane_emden, solve_p_torsion,
    solve_small_diffusion, solve_torsion, Grid, ScalarField,
};
use crate::young::make_power_pair;
use rayon::prelude::*;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct PropRow {
    pub domain: String,
    pub property: String,
    pub pass: bool,
    /// Signed margin: positive means the property held with room to spare.
    pub margin: f64,
    pub note: String,
}

/// Worst violation of `lhs_k <= rhs_k + 5 h scale`; returns (pass, margin).
fn pointwise(lhs: &[f64], rhs: &[f64], h: f64) -> (bool, f64) {
    let scale = lhs
        .iter()
        .chain(rhs.iter())
        .fold(0.0f64, |a, &b| a.max(b.abs()));
    let tol = 5.0 * h * scale;
    let mut worst = f64::INFINITY;
    for (l, r) in lhs.iter().zip(rhs) {
        worst = worst.min(r + tol - l);
    }
    (worst >= 0.0, worst / scale.max(1e-300))
}

fn grad_sq(field: &ScalarField) -> Vec<f64> {
    field
        .gradient()
        .iter()
        .map(|g| g[0] * g[0] + g[1] * g[1])
        .collect()
}

fn distances(grid: &Arc<Grid>) -> Result<Vec<f64>> {
    (0..grid.n_interior())
        .map(|k| grid.domain.distance_to_boundary(&grid.point(k)))
        .collect()
}

pub fn property_suite(config: &ExperimentConfig) -> Result<Vec<PropRow>> {
    config.validate()?;
    let mut jobs = Vec::new();
    for dc in &config.domains {
        jobs.push(dc);
    }
    let results: Vec<Result<Vec<PropRow>>> = jobs
        .par_iter()
        .map(|dc| domain_properties(config, dc))
        .collect();
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    rows.sort_by(|a, b| (&a.domain, &a.property).cmp(&(&b.domain, &b.property)));
    Ok(rows)
}

fn domain_properties(
    config: &ExperimentConfig,
    dc: &super::config::DomainConfig,
) -> Result<Vec<PropRow>> {
    let domain = dc.shape.build("shape")?;
    let grid = Arc::new(Grid::build(&domain, config.h)?);
    let h = config.h;
    let dim = domain.dim() as f64;
    let summary = compute_summary(&domain, dc.r_e_override)?;
    let mut rows: Vec<PropRow> = Vec::new();
    let mut push = |property: &str, pass: bool, margin: f64, note: String| {
        rows.push(PropRow {
            domain: dc.id.clone(),
            property: property.to_string(),
            pass,
            margin,
            note,
        });
    };

    // Geometry: sampled 1-Lipschitz property of the distance field.
    {
        let d = distances(&grid)?;
        let mut worst = f64::INFINITY;
        for k in (0..grid.n_interior()).step_by(7) {
            for d4 in 0..4 {
                let nb = grid.neighbors[k][d4];
                if nb >= 0 {
                    let gap = h + 1e-9 - (d[k] - d[nb as usize]).abs();
                    worst = worst.min(gap);
                }
            }
        }
        push("distance_lipschitz", worst >= 0.0, worst / h, String::new());
    }

    // Geometry: sampled containment of the John ellipsoid.
    if let (Some(c), Some(axes)) = (&summary.john_center, &summary.john_axes) {
        if domain.dim() == 2 {
            let mut inside_all = true;
            let shrink = 1.0 - 1e-9;
            for i in 0..10_000 {
                let th = 2.0 * std::f64::consts::PI * i as f64 / 10_000.0;
                // Axis-aligned kinds only (ellipse/rectangle/symmetric polygons).
                let p = [
                    c[0] + shrink * axes[axes.len() - 1] * th.cos(),
                    c[1] + shrink * axes[0] * th.sin(),
                ];
                if !domain.inside(&p) {
                    inside_all = false;
                    break;
                }
            }
            push("john_containment", inside_all, 0.0, String::new());
        }
    }

    for pb in &dc.problems {
        match pb {
            ProblemSpec::Torsion { .. } => {
                let u = solve_torsion(&grid)?;
                let max_u = u.max_value();
                push(
                    "torsion_nonnegative",
                    u.min_value() >= -1e-12,
                    u.min_value(),
                    String::new(),
                );
                // u >= d^2/2 at every node.
                let d = distances(&grid)?;
                let lhs: Vec<f64> = d.iter().map(|di| di * di / 2.0).collect();
                let (pass, margin) = pointwise(&lhs, &u.values, h);
                push("torsion_lower_bound_distance", pass, margin, String::new());
                // Gradient bound, mean-convex form when curvature permits.
                let mean_convex =
                    domain.is_convex() || summary.m0_minus.map(|m| m < 1e-9).unwrap_or(false);
                let gsq = grad_sq(&u);
                if mean_convex {
                    let rhs: Vec<f64> = u.values.iter().map(|v| 2.0 * dim * (max_u - v)).collect();
                    let (pass, margin) = pointwise(&gsq, &rhs, h);
                    push("torsion_gradient_bound", pass, margin, String::new());
                } else if let (Some(m0), Some(re)) = (summary.m0_minus, summary.r_e) {
                    let g_up = bounds::gradient_g_upper(domain.dim(), summary.diam, re.radius)?;
                    let beta = dim + (dim - 1.0) * m0 * g_up;
                    let rhs: Vec<f64> = u.values.iter().map(|v| 2.0 * beta * (max_u - v)).collect();
                    let (pass, margin) = pointwise(&gsq, &rhs, h);
                    push(
                        "torsion_gradient_bound_general",
                        pass,
                        margin,
                        format!("G upper bound {g_up:.4}"),
                    );
                } else if let Some(re) = summary.r_e {
                    // Curvature data missing (polygon): the exterior-radius
                    // form with M0^- <= 1/r_e still applies.
                    let g_up = bounds::gradient_g_upper(domain.dim(), summary.diam, re.radius)?;
                    let beta = dim + (dim - 1.0) * g_up / re.radius;
                    let rhs: Vec<f64> = u.values.iter().map(|v| 2.0 * beta * (max_u - v)).collect();
                    let (pass, margin) = pointwise(&gsq, &rhs, h);
                    push(
                        "torsion_gradient_bound_general",
                        pass,
                        margin,
                        format!("M0^- replaced by 1/r_e; G upper bound {g_up:.4}"),
                    );
                }
            }
            ProblemSpec::Eigen { .. } => {
                let pair = solve_eigen(&grid)?;
                let m1 = pair.psi1.max_value();
                let gsq = grad_sq(&pair.psi1);
                let rhs: Vec<f64> = pair
                    .psi1
                    .values
                    .iter()
                    .map(|v| pair.lambda1 * (m1 * m1 - v * v))
                    .collect();
                let (pass, margin) = pointwise(&gsq, &rhs, h);
                push("eigen_gradient_bound", pass, margin, String::new());
            }
            ProblemSpec::Heat { g, times, .. } => {
                let eig = solve_eigen(&grid)?;
                let g_field = match g {
                    HeatInitial::Phi1 => eig.phi1.clone(),
                    HeatInitial::Ones => ScalarField::from_fn(&grid, |_| 1.0, "ones"),
                    HeatInitial::Torsion => solve_torsion(&grid)?,
                };
                let t_end = times.iter().cloned().fold(0.0f64, f64::max);
                let dt_cap =
                    (0.01 / (eig.lambda1 * eig.lambda1 * t_end.max(1e-9))).clamp(h * h, 2e-3);
                let traj = solve_heat(&grid, &g_field, times, Some(dt_cap))?;
                let max_g = g_field.max_value();
                // Maximum principle: 0 <= u <= max g, M non-increasing.
                let mut bound_ok = true;
                for f in &traj.fields {
                    bound_ok &= f.min_value() >= -1e-12 && f.max_value() <= max_g * (1.0 + 1e-9);
                }
                let monotone = traj
                    .max_values
                    .windows(2)
                    .all(|w| w[1] <= w[0] * (1.0 + 1e-9));
                push(
                    "heat_maximum_principle",
                    bound_ok && monotone,
                    0.0,
                    String::new(),
                );
                // Pointwise eigenfunction roof (sup before the boundary ratio
                // degenerates) and the gradient envelope from the constants.
                if !traj.discontinuous_data {
                    let phi_max = eig.phi1.max_value();
                    let mut sup_ratio = 0.0f64;
                    for (gv, pv) in g_field.values.iter().zip(&eig.phi1.values) {
                        if *pv > 1e-6 * phi_max {
                            sup_ratio = sup_ratio.max(gv / pv);
                        }
                    }
                    let mut roof_pass = true;
                    let mut roof_margin = f64::INFINITY;
                    for (i, t) in traj.times.iter().enumerate() {
                        let decay = (-eig.lambda1 * t).exp();
                        let rhs: Vec<f64> = eig
                            .phi1
                            .values
                            .iter()
                            .map(|p| sup_ratio * p * decay)
                            .collect();
                        let (p, m) = pointwise(&traj.fields[i].values, &rhs, h);
                        roof_pass &= p;
                        roof_margin = roof_margin.min(m);
                    }
                    push(
                        "heat_eigenfunction_roof",
                        roof_pass,
                        roof_margin,
                        String::new(),
                    );

                    let (k, k_omega) =
                        bounds::heat_k(domain.dim(), eig.lambda1, &g_field, &eig.phi1)?;
                    let inputs = HeatBoundInputs {
                        lambda1: eig.lambda1,
                        lambda1_ball: crate::bounds::special::lambda1_unit_ball(domain.dim())?,
                        k,
                        k_omega,
                        r_in: summary.r_in,
                        m_of_t: traj
                            .times
                            .iter()
                            .zip(&traj.max_values)
                            .map(|(a, b)| (*a, *b))
                            .collect(),
                    };
                    push(
                        "heat_k_scaling_consistency",
                        inputs.consistent(),
                        k * inputs.lambda1_ball.sqrt() / summary.r_in - k_omega,
                        format!("K = {k:.6}, K_Omega = {k_omega:.6}"),
                    );
                    // Gradient envelope |grad u|^2 + lambda u^2 <= K_Omega^2 e^{-2 lambda t}.
                    let mut env_pass = true;
                    let mut env_margin = f64::INFINITY;
                    for (i, t) in traj.times.iter().enumerate() {
                        let lhs: Vec<f64> = grad_sq(&traj.fields[i])
                            .iter()
                            .zip(&traj.fields[i].values)
                            .map(|(gs, v)| gs + eig.lambda1 * v * v)
                            .collect();
                        let roof = k_omega * k_omega * (-2.0 * eig.lambda1 * t).exp();
                        let rhs = vec![roof; lhs.len()];
                        let (p, m) = pointwise(&lhs, &rhs, h);
                        env_pass &= p;
                        env_margin = env_margin.min(m);
                    }
                    push(
                        "heat_gradient_envelope",
                        env_pass,
                        env_margin,
                        String::new(),
                    );

                    // Eigenmode evolution: M(t) e^{lambda t} pinned to 1.
                    if *g == HeatInitial::Phi1 {
                        let mut worst: f64 = 0.0;
                        for (t, m) in traj.times.iter().zip(&traj.max_values) {
                            worst = worst.max((m * (eig.lambda1 * t).exp() - 1.0).abs());
                        }
                        push(
                            "heat_eigenmode_ratio",
                            worst <= 1e-2,
                            1e-2 - worst,
                            format!("max |M e^(lambda t) - 1| = {worst:.2e}"),
                        );
                    }
                    // Large-time spectral ratio for generic data.
                    if *g == HeatInitial::Torsion {
                        let t_last = *traj.times.last().unwrap();
                        let m_last = *traj.max_values.last().unwrap();
                        let expect = g_field.inner(&eig.phi1) / eig.phi1.inner(&eig.phi1);
                        let got = m_last * (eig.lambda1 * t_last).exp();
                        let dev = (got - expect).abs() / expect;
                        push(
                            "heat_spectral_large_time",
                            dev <= 0.02,
                            0.02 - dev,
                            format!("ratio {got:.6} vs spectral {expect:.6}"),
                        );
                    }
                } else {
                    // g = 1: early-time distance limit d(z(t)) -> r.
                    let (r_in, _) = inradius_incenter(&domain)?;
                    let mut ds = Vec::new();
                    for f in &traj.fields {
                        let loc = f.locate_max()?;
                        ds.push(domain.distance_to_boundary(&loc.point)?);
                    }
                    let early = ds[0] / r_in;
                    push(
                        "heat_early_time_distance",
                        early >= 0.9 && ds[0] >= ds[ds.len() - 1] - 0.02 * r_in,
                        early - 0.9,
                        format!("d(z(t))/r over times: {ds:?}"),
                    );
                }
            }
            ProblemSpec::SmallDiffusion { eps, .. } => {
                let mut dist_ratio = Vec::new();
                let (r_in, _) = inradius_incenter(&domain)?;
                let mean_convex =
                    domain.is_convex() || summary.m0_minus.map(|m| m < 1e-9).unwrap_or(false);
                let mut sorted = eps.clone();
                sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
                for e in &sorted {
                    let (u, _) = solve_small_diffusion(&grid, *e)?;
                    // Semilinear gradient bound with f(s) = N - s/eps:
                    // |grad u|^2 <= 2 (F(M) - F(u)); needs a mean-convex boundary.
                    if mean_convex {
                        let max_u = u.max_value();
                        let big_f = |s: f64| dim * s - s * s / (2.0 * e);
                        let gsq = grad_sq(&u);
                        let rhs: Vec<f64> = u
                            .values
                            .iter()
                            .map(|v| 2.0 * (big_f(max_u) - big_f(*v)))
                            .collect();
                        let (pass, margin) = pointwise(&gsq, &rhs, h);
                        push(
                            &format!("semilinear_gradient_bound@eps={e}"),
                            pass,
                            margin,
                            String::new(),
                        );
                    }
                    // The plateau of a small-diffusion field makes near-max
                    // representatives meaningless for the limit trend; track
                    // the argmax itself.
                    let loc = u.locate_max()?;
                    let d_max = domain.distance_to_boundary(&loc.point)?;
                    dist_ratio.push(d_max / r_in);
                }
                if sorted.len() >= 2 {
                    // Distance ratio climbs toward 1 as eps decreases.
                    let increasing = dist_ratio.windows(2).all(|w| w[1] >= w[0] - 2.0 * h / r_in);
                    push(
                        "small_diffusion_distance_trend",
                        increasing && *dist_ratio.last().unwrap() <= 1.0 + 1e-9,
                        dist_ratio.last().unwrap() - dist_ratio[0],
                        format!("d/r over decreasing eps: {dist_ratio:?}"),
                    );
                }
            }
            ProblemSpec::PTorsion { p, .. } => {
                let d = distances(&grid)?;
                let (r_in, _) = inradius_incenter(&domain)?;
                let mut dist_of_p = Vec::new();
                for pv in p {
                    let pair = make_power_pair(*pv)?;
                    let u = solve_p_torsion(&grid, *pv)?;
                    let max_u = u.max_value();
                    // Lower bound u >= Psi(d).
                    let lhs: Result<Vec<f64>> = d.iter().map(|di| pair.big_psi(*di)).collect();
                    let (pass, margin) = pointwise(&lhs?, &u.values, h);
                    push(
                        &format!("p_torsion_lower_bound@p={pv}"),
                        pass,
                        margin,
                        String::new(),
                    );
                    // Gradient bound Psi(phi(|grad u|)) <= N (max - u).
                    let grads = u.gradient();
                    let lhs: Result<Vec<f64>> = grads
                        .iter()
                        .map(|g| {
                            let gn = (g[0] * g[0] + g[1] * g[1]).sqrt();
                            pair.big_psi(pair.phi(gn))
                        })
                        .collect();
                    let rhs: Vec<f64> = u.values.iter().map(|v| dim * (max_u - v)).collect();
                    let (pass, margin) = pointwise(&lhs?, &rhs, h);
                    push(
                        &format!("p_torsion_gradient_bound@p={pv}"),
                        pass,
                        margin,
                        String::new(),
                    );
                    let loc = u.locate_max()?;
                    let mut d_worst = f64::INFINITY;
                    for pt in &loc.near_max {
                        d_worst = d_worst.min(domain.distance_to_boundary(pt)?);
                    }
                    dist_of_p.push(d_worst);
                }
                let _ = &dist_of_p;
                // Maximum points concentrate at incenters as p grows: sweep
                // p in {2, 4, 8, 16} (grid coarsened to 1/64 - the check is
                // about the argmax location, not pointwise values).
                {
                    let h_trend = h.max(1.0 / 64.0);
                    let grid_trend = if (h_trend - h).abs() < 1e-15 {
                        grid.clone()
                    } else {
                        Arc::new(Grid::build(&domain, h_trend)?)
                    };
                    let sweep = [2.0f64, 4.0, 8.0, 16.0];
                    let mut ds = Vec::new();
                    for pv in sweep {
                        let u = solve_p_torsion(&grid_trend, pv)?;
                        let loc = u.locate_max()?;
                        ds.push(domain.distance_to_boundary(&loc.point)?);
                    }
                    let last = *ds.last().unwrap();
                    let ok = ds
                        .iter()
                        .zip(sweep)
                        .all(|(dv, pv)| *dv >= r_in * (dim).powf(-1.0 / pv) - 2.0 * h_trend)
                        && last >= r_in - 4.0 * h_trend;
                    push(
                        "p_torsion_incenter_trend",
                        ok,
                        (last - r_in) / r_in,
                        format!("d(z_p) over p=2,4,8,16: {ds:?}, r = {r_in:.6}"),
                    );
                }
            }
            ProblemSpec::LaneEmden { q, .. } => {
                let le = solve_lane_emden(&grid, *q)?;
                let max_u = le.field.max_value();
                // Gradient bound with f(s) = lambda_q |s|^{q-2} s:
                // F(s) = lambda_q |s|^q / q.
                let gsq = grad_sq(&le.field);
                let rhs: Vec<f64> = le
                    .field
                    .values
                    .iter()
                    .map(|v| 2.0 * le.lambda_q / q * (max_u.powf(*q) - v.abs().powf(*q)))
                    .collect();
                let (pass, margin) = pointwise(&gsq, &rhs, h);
                push(
                    &format!("lane_emden_gradient_bound@q={q}"),
                    pass,
                    margin,
                    String::new(),
                );
            }
            ProblemSpec::Aniso { norm, p, .. } => {
                let norm = norm.build("norm")?;
                let pair = make_power_pair(*p)?;
                let u = solve_aniso_torsion(&grid, &norm, &pair)?;
                let max_u = u.max_value();
                // Lower bound u >= Psi(d_aniso).
                let lhs: Result<Vec<f64>> = (0..grid.n_interior())
                    .map(|k| {
                        let da = aniso_distance(&domain, &norm, grid.point(k))?;
                        pair.big_psi(da)
                    })
                    .collect();
                let (pass, margin) = pointwise(&lhs?, &u.values, h);
                push("aniso_lower_bound", pass, margin, String::new());
                // Gradient bound Psi(phi(H(grad u))) <= N (max - u).
                let grads = u.gradient();
                let lhs: Result<Vec<f64>> = grads
                    .iter()
                    .map(|g| pair.big_psi(pair.phi(norm.eval(*g))))
                    .collect();
                let rhs: Vec<f64> = u.values.iter().map(|v| dim * (max_u - v)).collect();
                let (pass, margin) = pointwise(&lhs?, &rhs, h);
                push("aniso_gradient_bound", pass, margin, String::new());
            }
        }
    }
    Ok(rows)
}
