//! Experiment orchestration: for each (domain, problem) pair, solve, locate
//! the maximum (certifying against the worst near-max representative),
//! measure geometry, evaluate the requested bounds and certify. Pairs run
//! independently (rayon), rows are sorted canonically before emission so
//! identical configurations give identical reports.

use super::config::{DomainConfig, ExperimentConfig, HeatInitial, ProblemSpec};
use crate::anisotropy::{aniso_distance, aniso_inradius, AnisoNorm};
use crate::bounds::{self, EigenForm, LaneEmdenForm, PEigenForm, QuasilinearForm};
use crate::error::{Error, Result};
use crate::geometry::{compute_summary, DomainSpec, GeomSummary};
use crate::pde::{
    solve_aniso_torsion, solve_eigen, solve_heat, solve_lane_emden, solve_p_torsion,
    solve_small_diffusion, solve_torsion, worst_near_max, Grid, ScalarField, SemilinearSource,
};
use crate::young::{make_power_pair, YoungPair};
use rayon::prelude::*;
use std::sync::Arc;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
    Error,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReportRow {
    pub domain: String,
    pub problem: String,
    pub dim: usize,
    /// Inradius; the anisotropic inradius for aniso rows.
    pub r_in: f64,
    pub d_measured: f64,
    pub bound: String,
    pub bound_value: f64,
    pub slack: f64,
    pub status: Status,
    pub runtime_s: f64,
    pub note: String,
}

/// Everything a bound evaluator may need about one solved problem.
pub struct SolvedProblem {
    pub field: ScalarField,
    pub max_value: f64,
    /// Reported maximum point (lexicographically smallest near-max node).
    pub z: [f64; 2],
    /// Distance of the worst (smallest-distance) near-max representative.
    pub d_worst: f64,
    pub lambda1: Option<f64>,
    pub extra: ProblemExtra,
}

pub enum ProblemExtra {
    None,
    Eigen {
        psi1: ScalarField,
        phi1: ScalarField,
    },
    Heat {
        /// (t, M(t), worst distance of the near-max set at t).
        profile: Vec<(f64, f64, f64)>,
        k: f64,
        k_omega: f64,
    },
    SmallDiffusion {
        eps: f64,
    },
    PTorsion {
        pair: YoungPair,
    },
    LaneEmden {
        q: f64,
        lambda_q: f64,
        lambda_q_ball: Option<f64>,
        volume: f64,
    },
    Aniso {
        pair: YoungPair,
        norm: AnisoNorm,
        r_aniso: f64,
        d_aniso_worst: f64,
    },
}

/// Run every (domain, problem, bound) triple of the configuration.
pub fn run(config: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    config.validate()?;
    let mut jobs: Vec<(&DomainConfig, &ProblemSpec, String)> = Vec::new();
    for dc in &config.domains {
        for pb in &dc.problems {
            jobs.push((dc, pb, pb.kind_name().to_string()));
        }
    }
    let rows: Vec<Vec<ReportRow>> = jobs
        .par_iter()
        .map(|(dc, pb, _)| run_problem(config, dc, pb))
        .collect();
    let mut all: Vec<ReportRow> = rows.into_iter().flatten().collect();
    all.sort_by(|a, b| (&a.domain, &a.problem, &a.bound).cmp(&(&b.domain, &b.problem, &b.bound)));
    Ok(all)
}

fn error_rows(
    dc: &DomainConfig,
    problem_id: &str,
    dim: usize,
    bounds: &[String],
    err: &Error,
) -> Vec<ReportRow> {
    bounds
        .iter()
        .map(|b| ReportRow {
            domain: dc.id.clone(),
            problem: problem_id.to_string(),
            dim,
            r_in: f64::NAN,
            d_measured: f64::NAN,
            bound: b.clone(),
            bound_value: f64::NAN,
            slack: f64::NAN,
            status: Status::Error,
            runtime_s: 0.0,
            note: format!("{err}"),
        })
        .collect()
}

fn run_problem(config: &ExperimentConfig, dc: &DomainConfig, pb: &ProblemSpec) -> Vec<ReportRow> {
    let domain = match dc.shape.build("shape") {
        Ok(d) => d,
        Err(e) => return error_rows(dc, pb.kind_name(), 0, pb.bounds(), &e),
    };
    let dim = domain.dim();
    let summary = match compute_summary(&domain, dc.r_e_override) {
        Ok(s) => s,
        Err(e) => return error_rows(dc, pb.kind_name(), dim, pb.bounds(), &e),
    };
    let grid = match Grid::build(&domain, config.h) {
        Ok(g) => Arc::new(g),
        Err(e) => return error_rows(dc, pb.kind_name(), dim, pb.bounds(), &e),
    };

    // A problem spec may expand to several solves (eps or p sweeps).
    let instances: Vec<(String, ProblemInstance)> = expand_instances(pb);

    let mut rows = Vec::new();
    for (problem_id, inst) in instances {
        let start = Instant::now();
        match solve_instance(&domain, &grid, &inst) {
            Ok(solved) => {
                let runtime = start.elapsed().as_secs_f64();
                for bname in pb.bounds() {
                    let mut row =
                        evaluate_bound(bname, &domain, &summary, dc, &solved, config.tolerance);
                    row.domain = dc.id.clone();
                    row.problem = problem_id.clone();
                    row.dim = dim;
                    row.runtime_s = runtime;
                    rows.push(row);
                }
            }
            Err(e) => rows.extend(error_rows(dc, &problem_id, dim, pb.bounds(), &e)),
        }
    }
    rows
}

enum ProblemInstance {
    Torsion,
    Eigen,
    Heat {
        g: HeatInitial,
        times: Vec<f64>,
    },
    SmallDiffusion {
        eps: f64,
    },
    PTorsion {
        p: f64,
    },
    LaneEmden {
        q: f64,
        lambda_q_ball: Option<f64>,
    },
    Aniso {
        norm: super::config::NormSpec,
        p: f64,
    },
}

fn locate(field: &ScalarField) -> Result<([f64; 2], f64, f64)> {
    let loc = field.locate_max()?;
    let (_, d_worst) = worst_near_max(field, &loc)?;
    let z = loc.near_max.first().copied().unwrap_or(loc.point);
    Ok((z, loc.value, d_worst))
}

fn solve_instance(
    domain: &DomainSpec,
    grid: &Arc<Grid>,
    inst: &ProblemInstance,
) -> Result<SolvedProblem> {
    match inst {
        ProblemInstance::Torsion => {
            let field = solve_torsion(grid)?;
            let (z, max_value, d_worst) = locate(&field)?;
            Ok(SolvedProblem {
                field,
                max_value,
                z,
                d_worst,
                lambda1: None,
                extra: ProblemExtra::None,
            })
        }
        ProblemInstance::Eigen => {
            let pair = solve_eigen(grid)?;
            let (z, max_value, d_worst) = locate(&pair.psi1)?;
            Ok(SolvedProblem {
                field: pair.psi1.clone(),
                max_value,
                z,
                d_worst,
                lambda1: Some(pair.lambda1),
                extra: ProblemExtra::Eigen {
                    psi1: pair.psi1,
                    phi1: pair.phi1,
                },
            })
        }
        ProblemInstance::Heat { g, times } => {
            let eig = solve_eigen(grid)?;
            let g_field = match g {
                HeatInitial::Phi1 => eig.phi1.clone(),
                HeatInitial::Ones => ScalarField::from_fn(grid, |_| 1.0, "ones"),
                HeatInitial::Torsion => solve_torsion(grid)?,
            };
            // Implicit-Euler amplification error ~ lambda^2 dt t / 2 per unit
            // run; cap dt so the recorded ratios stay within half a percent.
            let t_end = times.iter().cloned().fold(0.0f64, f64::max);
            let dt_cap =
                (0.01 / (eig.lambda1 * eig.lambda1 * t_end.max(1e-9))).clamp(grid.h * grid.h, 2e-3);
            let traj = solve_heat(grid, &g_field, times, Some(dt_cap))?;
            let (k, k_omega) = bounds::heat_k(domain.dim(), eig.lambda1, &g_field, &eig.phi1)?;
            let mut profile = Vec::new();
            for (i, t) in traj.times.iter().enumerate() {
                let mut d_worst = f64::INFINITY;
                for p in &traj.hotspots[i] {
                    d_worst = d_worst.min(domain.distance_to_boundary(p)?);
                }
                profile.push((*t, traj.max_values[i], d_worst));
            }
            let last = traj.fields.last().expect("non-empty trajectory").clone();
            let (z, max_value, d_worst) = locate(&last)?;
            Ok(SolvedProblem {
                field: last,
                max_value,
                z,
                d_worst,
                lambda1: Some(eig.lambda1),
                extra: ProblemExtra::Heat {
                    profile,
                    k,
                    k_omega,
                },
            })
        }
        ProblemInstance::SmallDiffusion { eps } => {
            let (u, _v) = solve_small_diffusion(grid, *eps)?;
            let (z, max_value, d_worst) = locate(&u)?;
            Ok(SolvedProblem {
                field: u,
                max_value,
                z,
                d_worst,
                lambda1: None,
                extra: ProblemExtra::SmallDiffusion { eps: *eps },
            })
        }
        ProblemInstance::PTorsion { p } => {
            let field = solve_p_torsion(grid, *p)?;
            let (z, max_value, d_worst) = locate(&field)?;
            Ok(SolvedProblem {
                field,
                max_value,
                z,
                d_worst,
                lambda1: None,
                extra: ProblemExtra::PTorsion {
                    pair: make_power_pair(*p)?,
                },
            })
        }
        ProblemInstance::LaneEmden { q, lambda_q_ball } => {
            let le = solve_lane_emden(grid, *q)?;
            let (z, max_value, d_worst) = locate(&le.field)?;
            // |Omega| from the grid cell volumes.
            let volume: f64 = (0..grid.n_interior()).map(|k| grid.cell_volume(k)).sum();
            // A ball domain determines lambda_q(B) by scaling.
            let lam_ball = lambda_q_ball.or_else(|| match domain {
                DomainSpec::Ball { radius, .. } => {
                    let n = domain.dim() as f64;
                    Some(le.lambda_q * radius.powf(2.0 + 2.0 * n / q - n))
                }
                _ => None,
            });
            Ok(SolvedProblem {
                field: le.field.clone(),
                max_value,
                z,
                d_worst,
                lambda1: None,
                extra: ProblemExtra::LaneEmden {
                    q: *q,
                    lambda_q: le.lambda_q,
                    lambda_q_ball: lam_ball,
                    volume,
                },
            })
        }
        ProblemInstance::Aniso { norm, p } => {
            let norm = norm.build("norm")?;
            let pair = make_power_pair(*p)?;
            let field = solve_aniso_torsion(grid, &norm, &pair)?;
            let loc = field.locate_max()?;
            let z = loc.near_max.first().copied().unwrap_or(loc.point);
            // Worst anisotropic distance among near-max representatives.
            let mut d_aniso_worst = f64::INFINITY;
            for pt in &loc.near_max {
                d_aniso_worst = d_aniso_worst.min(aniso_distance(domain, &norm, *pt)?);
            }
            let (r_aniso, _) = aniso_inradius(domain, &norm)?;
            let (_, d_worst) = worst_near_max(&field, &loc)?;
            Ok(SolvedProblem {
                field,
                max_value: loc.value,
                z,
                d_worst,
                lambda1: None,
                extra: ProblemExtra::Aniso {
                    pair,
                    norm,
                    r_aniso,
                    d_aniso_worst,
                },
            })
        }
    }
}

fn row_from_check(
    bname: &str,
    r_in: f64,
    check: bounds::BoundCheck,
    note: impl Into<String>,
) -> ReportRow {
    ReportRow {
        domain: String::new(),
        problem: String::new(),
        dim: 0,
        r_in,
        d_measured: check.measured_d,
        bound: bname.to_string(),
        bound_value: check.bound_value,
        slack: check.relative_slack,
        status: if check.pass {
            Status::Pass
        } else {
            Status::Fail
        },
        runtime_s: 0.0,
        note: note.into(),
    }
}

fn inapplicable_row(bname: &str, r_in: f64, why: String) -> ReportRow {
    ReportRow {
        domain: String::new(),
        problem: String::new(),
        dim: 0,
        r_in,
        d_measured: f64::NAN,
        bound: bname.to_string(),
        bound_value: f64::NAN,
        slack: f64::NAN,
        status: Status::Inapplicable,
        runtime_s: 0.0,
        note: why,
    }
}

/// Evaluate one named bound against a solved problem. Ratio-form bounds are
/// converted to lengths through the relevant inradius so every row compares
/// lengths to lengths.
fn evaluate_bound(
    bname: &str,
    domain: &DomainSpec,
    summary: &GeomSummary,
    dc: &DomainConfig,
    solved: &SolvedProblem,
    tolerance: f64,
) -> ReportRow {
    let dim = domain.dim();
    let r_in = summary.r_in;
    let d = solved.d_worst;
    let outcome: Result<ReportRow> = (|| {
        match bname {
            "torsion_meanconvex" => {
                // Hypothesis: mean-convex boundary. Convex domains qualify;
                // otherwise the sampled curvature must have no negative part.
                let mean_convex =
                    domain.is_convex() || summary.m0_minus.map(|m| m <= 1e-9).unwrap_or(false);
                if !mean_convex {
                    return Err(Error::Inapplicable(
                        "boundary is not mean convex (or carries no curvature data)".into(),
                    ));
                }
                let ratio = bounds::bound_torsion_meanconvex(dim)?;
                Ok(row_from_check(
                    bname,
                    r_in,
                    bounds::check(d, ratio * r_in, tolerance),
                    "",
                ))
            }
            "torsion_john" => {
                let axes = dc
                    .john_axes_override
                    .clone()
                    .or_else(|| summary.john_axes.clone())
                    .ok_or_else(|| {
                        Error::Inapplicable("John ellipsoid unavailable (non-convex domain)".into())
                    })?;
                let ratio = bounds::bound_torsion_john(&axes, r_in, dim)?;
                Ok(row_from_check(
                    bname,
                    r_in,
                    bounds::check(d, ratio * r_in, tolerance),
                    "",
                ))
            }
            "torsion_curvature" => {
                let m0 = summary.m0_minus.ok_or_else(|| {
                    Error::Inapplicable("boundary curvature unavailable for this kind".into())
                })?;
                let ratio = bounds::bound_torsion_curvature(dim, m0, r_in)?;
                Ok(row_from_check(
                    bname,
                    r_in,
                    bounds::check(d, ratio * r_in, tolerance),
                    "",
                ))
            }
            "torsion_exterior" => {
                let re = summary
                    .r_e
                    .ok_or_else(|| Error::Inapplicable("exterior radius unavailable".into()))?;
                if re.degenerate {
                    return Err(Error::Inapplicable(
                        "no positive exterior tangent radius".into(),
                    ));
                }
                let ratio = bounds::bound_torsion_exterior(dim, summary.diam, re.radius)?;
                Ok(row_from_check(
                    bname,
                    r_in,
                    bounds::check(d, ratio * r_in, tolerance),
                    "",
                ))
            }
            "torsion_max_upper" => {
                let cap = bounds::torsion_max_upper(dim, r_in)?;
                Ok(row_from_check(
                    bname,
                    r_in,
                    bounds::check_upper(solved.max_value, cap, tolerance),
                    "upper bound on max u",
                ))
            }
            "semilinear" => {
                let n_dim = dim as f64;
                let source = match &solved.extra {
                    ProblemExtra::SmallDiffusion { eps } => SemilinearSource::screened(n_dim, *eps),
                    _ => SemilinearSource::new(move |_| n_dim, move |s| n_dim * s),
                };
                let length =
                    bounds::bound_semilinear_distance(&source, solved.max_value, solved.max_value)?;
                Ok(row_from_check(
                    bname,
                    r_in,
                    bounds::check(d, length, tolerance),
                    "",
                ))
            }
            "small_diffusion" | "small_diffusion_geometric" => {
                let eps = match &solved.extra {
                    ProblemExtra::SmallDiffusion { eps } => *eps,
                    _ => {
                        return Err(Error::Config(
                            "bound requires a small_diffusion problem".into(),
                        ))
                    }
                };
                let geometric = bname.ends_with("geometric");
                let length =
                    bounds::bound_small_diffusion(eps, dim, solved.max_value, r_in, geometric)?;
                Ok(row_from_check(
                    bname,
                    r_in,
                    bounds::check(d, length, tolerance),
                    "",
                ))
            }
            "eigen_absolute" => {
                let lam = solved
                    .lambda1
                    .ok_or_else(|| Error::Config("bound requires an eigen problem".into()))?;
                let length = bounds::bound_eigen(lam, dim, EigenForm::Absolute)?;
                Ok(row_from_check(
                    bname,
                    r_in,
                    bounds::check(d, length, tolerance),
                    "",
                ))
            }
            "eigen_ratio" => {
                let lam = solved
                    .lambda1
                    .ok_or_else(|| Error::Config("bound requires an eigen problem".into()))?;
                let ratio = bounds::bound_eigen(lam, dim, EigenForm::Ratio)?;
                Ok(row_from_check(
                    bname,
                    r_in,
                    bounds::check(d, ratio * r_in, tolerance),
                    "",
                ))
            }
            "bms" => {
                let ratio = bounds::bms_bound(dim, r_in, summary.diam)?;
                Ok(row_from_check(
                    bname,
                    r_in,
                    bounds::check(d, ratio * r_in, tolerance),
                    "",
                ))
            }
            "p_eigen_absolute" | "p_eigen_ratio" => {
                // p = 2: the first Laplace eigenfunction IS the 2-eigenfunction.
                let lam = solved
                    .lambda1
                    .ok_or_else(|| Error::Config("bound requires an eigen problem".into()))?;
                if bname.ends_with("absolute") {
                    let length = bounds::bound_p_eigen(2.0, lam, PEigenForm::Absolute)?;
                    Ok(row_from_check(
                        bname,
                        r_in,
                        bounds::check(d, length, tolerance),
                        "p = 2",
                    ))
                } else {
                    let lam_ball = crate::bounds::special::lambda1_unit_ball(dim)?;
                    let ratio = bounds::bound_p_eigen(2.0, lam_ball, PEigenForm::Ratio)?;
                    Ok(row_from_check(
                        bname,
                        r_in,
                        bounds::check(d, ratio * r_in, tolerance),
                        "p = 2",
                    ))
                }
            }
            "heat" => {
                let (profile, k) = match &solved.extra {
                    ProblemExtra::Heat { profile, k, .. } => (profile, *k),
                    _ => return Err(Error::Config("bound requires a heat problem".into())),
                };
                let lam = solved.lambda1.expect("heat solve provides lambda1");
                // Certify at every recorded time; report the worst slack.
                let mut worst: Option<bounds::BoundCheck> = None;
                let mut all_pass = true;
                for (t, m_t, d_t) in profile {
                    let ratio = bounds::heat_bound_at(*m_t, lam, *t, k)?;
                    let c = bounds::check(*d_t, ratio * r_in, tolerance);
                    all_pass &= c.pass;
                    let replace = match &worst {
                        Some(w) => c.relative_slack < w.relative_slack,
                        None => true,
                    };
                    if replace {
                        worst = Some(c);
                    }
                }
                let mut c = worst.ok_or_else(|| Error::Solver("empty heat trajectory".into()))?;
                c.pass = all_pass;
                Ok(row_from_check(
                    bname,
                    r_in,
                    c,
                    format!("every recorded time certified; K = {k:.6}"),
                ))
            }
            "quasilinear" | "quasilinear_power_ratio" | "quasilinear_shift" => {
                let pair = match &solved.extra {
                    ProblemExtra::PTorsion { pair } => pair,
                    _ => return Err(Error::Config("bound requires a p_torsion problem".into())),
                };
                let (form, is_ratio) = match bname {
                    "quasilinear" => (QuasilinearForm::General, false),
                    "quasilinear_power_ratio" => (QuasilinearForm::PowerRatio, true),
                    _ => (QuasilinearForm::Shift, false),
                };
                let v = bounds::bound_quasilinear(pair, dim, r_in, form)?;
                let length = if is_ratio { v * r_in } else { v };
                Ok(row_from_check(
                    bname,
                    r_in,
                    bounds::check(d, length, tolerance),
                    "",
                ))
            }
            "lane_emden_absolute" | "lane_emden_ratio" => {
                let (q, lambda_q, lambda_q_ball, volume) = match &solved.extra {
                    ProblemExtra::LaneEmden {
                        q,
                        lambda_q,
                        lambda_q_ball,
                        volume,
                    } => (*q, *lambda_q, *lambda_q_ball, *volume),
                    _ => return Err(Error::Config("bound requires a lane_emden problem".into())),
                };
                if bname.ends_with("absolute") {
                    let length = bounds::bound_lane_emden(
                        q,
                        lambda_q,
                        solved.max_value,
                        dim,
                        r_in,
                        volume,
                        LaneEmdenForm::Absolute,
                    )?;
                    Ok(row_from_check(
                        bname,
                        r_in,
                        bounds::check(d, length, tolerance),
                        "",
                    ))
                } else {
                    let lam_ball = lambda_q_ball.ok_or_else(|| {
                        Error::Inapplicable(
                            "lambda_q of the unit ball not supplied and not derivable".into(),
                        )
                    })?;
                    let ratio = bounds::bound_lane_emden(
                        q,
                        lam_ball,
                        solved.max_value,
                        dim,
                        r_in,
                        volume,
                        LaneEmdenForm::Ratio,
                    )?;
                    Ok(row_from_check(
                        bname,
                        r_in,
                        bounds::check(d, ratio * r_in, tolerance),
                        "",
                    ))
                }
            }
            "aniso" | "aniso_power_ratio" => {
                let (pair, norm, r_aniso, d_aniso) = match &solved.extra {
                    ProblemExtra::Aniso {
                        pair,
                        norm,
                        r_aniso,
                        d_aniso_worst,
                    } => (pair, norm, *r_aniso, *d_aniso_worst),
                    _ => return Err(Error::Config("bound requires an aniso problem".into())),
                };
                if bname == "aniso" {
                    let length = bounds::bound_aniso(pair, dim, r_aniso)?;
                    Ok(row_from_check(
                        bname,
                        r_aniso,
                        bounds::check(d_aniso, length, tolerance),
                        "anisotropic distance",
                    ))
                } else {
                    // Growth constants of Phi(H(.)): directional extremes of
                    // |grad Phi_H(omega)| = H(omega)^{p-1} |grad H(omega)|.
                    let mut c = f64::INFINITY;
                    let mut big_c = 0.0f64;
                    for i in 0..720 {
                        let th = 2.0 * std::f64::consts::PI * i as f64 / 720.0;
                        let w = [th.cos(), th.sin()];
                        let hval = norm.eval(w);
                        let g = norm.grad(w);
                        let gnorm = (g[0] * g[0] + g[1] * g[1]).sqrt();
                        let v = hval.powf(pair.p() - 1.0) * gnorm;
                        c = c.min(v);
                        big_c = big_c.max(v);
                    }
                    let ratio = (c / (dim as f64 * big_c)).powf(1.0 / pair.p());
                    Ok(row_from_check(
                        bname,
                        r_aniso,
                        bounds::check(d_aniso, ratio * r_aniso, tolerance),
                        "anisotropic distance",
                    ))
                }
            }
            other => Err(Error::Config(format!("unknown bound name '{other}'"))),
        }
    })();
    match outcome {
        Ok(row) => row,
        Err(Error::Inapplicable(why)) => inapplicable_row(bname, r_in, why),
        Err(e) => ReportRow {
            domain: String::new(),
            problem: String::new(),
            dim,
            r_in,
            d_measured: f64::NAN,
            bound: bname.to_string(),
            bound_value: f64::NAN,
            slack: f64::NAN,
            status: Status::Error,
            runtime_s: 0.0,
            note: format!("{e}"),
        },
    }
}

/// Solve every (domain, problem) instance of the configuration and return
/// the fields for dumping (domain id, problem id, field).
pub fn solve_fields(config: &ExperimentConfig) -> Result<Vec<(String, String, ScalarField)>> {
    config.validate()?;
    let mut out = Vec::new();
    for dc in &config.domains {
        let domain = dc.shape.build("shape")?;
        let grid = Arc::new(Grid::build(&domain, config.h)?);
        for pb in &dc.problems {
            let instances: Vec<(String, ProblemInstance)> = expand_instances(pb);
            for (pid, inst) in instances {
                let solved = solve_instance(&domain, &grid, &inst)?;
                out.push((dc.id.clone(), pid, solved.field));
            }
        }
    }
    Ok(out)
}

fn expand_instances(pb: &ProblemSpec) -> Vec<(String, ProblemInstance)> {
    match pb {
        ProblemSpec::Torsion { .. } => vec![("torsion".into(), ProblemInstance::Torsion)],
        ProblemSpec::Eigen { .. } => vec![("eigen".into(), ProblemInstance::Eigen)],
        ProblemSpec::Heat { g, times, .. } => vec![(
            "heat".into(),
            ProblemInstance::Heat {
                g: *g,
                times: times.clone(),
            },
        )],
        ProblemSpec::SmallDiffusion { eps, .. } => eps
            .iter()
            .map(|e| {
                (
                    format!("small_diffusion@eps={e}"),
                    ProblemInstance::SmallDiffusion { eps: *e },
                )
            })
            .collect(),
        ProblemSpec::PTorsion { p, .. } => p
            .iter()
            .map(|pv| {
                (
                    format!("p_torsion@p={pv}"),
                    ProblemInstance::PTorsion { p: *pv },
                )
            })
            .collect(),
        ProblemSpec::LaneEmden {
            q, lambda_q_ball, ..
        } => vec![(
            format!("lane_emden@q={q}"),
            ProblemInstance::LaneEmden {
                q: *q,
                lambda_q_ball: *lambda_q_ball,
            },
        )],
        ProblemSpec::Aniso { norm, p, .. } => vec![(
            format!("aniso@p={p}"),
            ProblemInstance::Aniso {
                norm: norm.clone(),
                p: *p,
            },
        )],
    }
}

/// True when no row failed or errored (inapplicable rows do not fail a run).
pub fn all_certified(rows: &[ReportRow]) -> bool {
    rows.iter()
        .all(|r| matches!(r.status, Status::Pass | Status::Inapplicable))
}
