//! JSON experiment configuration: domains, per-domain problem lists, grid
//! spacing, tolerances and geometry overrides. Validation reports the field
//! path of the first offending entry.

use crate::anisotropy::AnisoNorm;
use crate::error::{Error, Result};
use crate::geometry::{DomainSpec, Profile};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeSpec {
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
    /// Two tangent spheres joined by a catenoid neck (solid of revolution).
    Dumbbell {
        big: f64,
        small: f64,
        waist: f64,
    },
    /// Ball in 3D realized as a revolution profile (axisymmetric solves).
    SphereRevolution {
        radius: f64,
    },
    CylinderRevolution {
        radius: f64,
        length: f64,
    },
}

impl ShapeSpec {
    pub fn build(&self, path: &str) -> Result<DomainSpec> {
        match self {
            ShapeSpec::Ball { center, radius } => {
                if !(center.len() == 2 || center.len() == 3) {
                    return Err(Error::Config(format!(
                        "{path}.center: expected 2 or 3 coordinates"
                    )));
                }
                if *radius <= 0.0 {
                    return Err(Error::Config(format!("{path}.radius: must be positive")));
                }
                Ok(DomainSpec::Ball {
                    center: center.clone(),
                    radius: *radius,
                })
            }
            ShapeSpec::Ellipse { center, semi_axes } => {
                if semi_axes.iter().any(|a| *a <= 0.0) {
                    return Err(Error::Config(format!("{path}.semi_axes: must be positive")));
                }
                Ok(DomainSpec::Ellipse {
                    center: *center,
                    semi_axes: *semi_axes,
                })
            }
            ShapeSpec::Rectangle { lo, hi } => {
                if lo[0] >= hi[0] || lo[1] >= hi[1] {
                    return Err(Error::Config(format!("{path}: lo must be below hi")));
                }
                Ok(DomainSpec::Rectangle { lo: *lo, hi: *hi })
            }
            ShapeSpec::Polygon { vertices } => {
                if vertices.len() < 3 {
                    return Err(Error::Config(format!("{path}.vertices: need at least 3")));
                }
                Ok(DomainSpec::Polygon {
                    vertices: vertices.clone(),
                })
            }
            ShapeSpec::Dumbbell { big, small, waist } => {
                if !(big >= small && *small > *waist && *waist > 0.0) {
                    return Err(Error::Config(format!(
                        "{path}: need big >= small > waist > 0"
                    )));
                }
                Ok(DomainSpec::Revolution {
                    profile: Profile::dumbbell(*big, *small, *waist),
                })
            }
            ShapeSpec::SphereRevolution { radius } => {
                if *radius <= 0.0 {
                    return Err(Error::Config(format!("{path}.radius: must be positive")));
                }
                Ok(DomainSpec::Revolution {
                    profile: Profile::sphere(*radius),
                })
            }
            ShapeSpec::CylinderRevolution { radius, length } => {
                if *radius <= 0.0 || *length <= 0.0 {
                    return Err(Error::Config(format!(
                        "{path}: need positive radius/length"
                    )));
                }
                Ok(DomainSpec::Revolution {
                    profile: Profile::cylinder(*radius, 0.0, *length),
                })
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NormSpec {
    Euclidean,
    Elliptic { matrix: [[f64; 2]; 2] },
    Ls { s: f64 },
}

impl NormSpec {
    pub fn build(&self, path: &str) -> Result<AnisoNorm> {
        match self {
            NormSpec::Euclidean => Ok(AnisoNorm::Euclidean),
            NormSpec::Elliptic { matrix } => AnisoNorm::elliptic(*matrix)
                .map_err(|e| Error::Config(format!("{path}.matrix: {e}"))),
            NormSpec::Ls { s } => {
                AnisoNorm::ls(*s).map_err(|e| Error::Config(format!("{path}.s: {e}")))
            }
        }
    }
}

/// Initial temperature distributions the heat problem accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeatInitial {
    /// The max-normalized first eigenfunction (eigenmode evolution).
    Phi1,
    /// Constant 1 (discontinuous at the boundary; early-time distance probe).
    Ones,
    /// The torsion function of the same domain.
    Torsion,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemSpec {
    Torsion {
        bounds: Vec<String>,
    },
    Eigen {
        bounds: Vec<String>,
    },
    Heat {
        g: HeatInitial,
        times: Vec<f64>,
        bounds: Vec<String>,
    },
    SmallDiffusion {
        eps: Vec<f64>,
        bounds: Vec<String>,
    },
    PTorsion {
        p: Vec<f64>,
        bounds: Vec<String>,
    },
    LaneEmden {
        q: f64,
        /// Ground-state level of the unit ball for the ratio form; optional,
        /// derived from the solve itself when the domain is a ball.
        lambda_q_ball: Option<f64>,
        bounds: Vec<String>,
    },
    Aniso {
        norm: NormSpec,
        p: f64,
        bounds: Vec<String>,
    },
}

impl ProblemSpec {
    pub fn bounds(&self) -> &[String] {
        match self {
            ProblemSpec::Torsion { bounds }
            | ProblemSpec::Eigen { bounds }
            | ProblemSpec::Heat { bounds, .. }
            | ProblemSpec::SmallDiffusion { bounds, .. }
            | ProblemSpec::PTorsion { bounds, .. }
            | ProblemSpec::LaneEmden { bounds, .. }
            | ProblemSpec::Aniso { bounds, .. } => bounds,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ProblemSpec::Torsion { .. } => "torsion",
            ProblemSpec::Eigen { .. } => "eigen",
            ProblemSpec::Heat { .. } => "heat",
            ProblemSpec::SmallDiffusion { .. } => "small_diffusion",
            ProblemSpec::PTorsion { .. } => "p_torsion",
            ProblemSpec::LaneEmden { .. } => "lane_emden",
            ProblemSpec::Aniso { .. } => "aniso",
        }
    }
}

/// Bound names usable per problem kind.
pub fn allowed_bounds(problem: &ProblemSpec) -> &'static [&'static str] {
    match problem {
        ProblemSpec::Torsion { .. } => &[
            "torsion_meanconvex",
            "torsion_john",
            "torsion_curvature",
            "torsion_exterior",
            "torsion_max_upper",
            "semilinear",
        ],
        ProblemSpec::Eigen { .. } => &[
            "eigen_absolute",
            "eigen_ratio",
            "bms",
            "p_eigen_absolute",
            "p_eigen_ratio",
        ],
        ProblemSpec::Heat { .. } => &["heat"],
        ProblemSpec::SmallDiffusion { .. } => {
            &["small_diffusion", "small_diffusion_geometric", "semilinear"]
        }
        ProblemSpec::PTorsion { .. } => &[
            "quasilinear",
            "quasilinear_power_ratio",
            "quasilinear_shift",
        ],
        ProblemSpec::LaneEmden { .. } => &["lane_emden_absolute", "lane_emden_ratio"],
        ProblemSpec::Aniso { .. } => &["aniso", "aniso_power_ratio"],
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub id: String,
    pub shape: ShapeSpec,
    #[serde(default)]
    pub r_e_override: Option<f64>,
    #[serde(default)]
    pub john_axes_override: Option<Vec<f64>>,
    pub problems: Vec<ProblemSpec>,
}

fn default_h() -> f64 {
    1.0 / 128.0
}

fn default_tolerance() -> f64 {
    crate::bounds::DEFAULT_TOLERANCE
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_h")]
    pub h: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    pub domains: Vec<DomainConfig>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.h <= 0.0 {
            return Err(Error::Config("h: must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.tolerance) {
            return Err(Error::Config("tolerance: must lie in [0, 1)".into()));
        }
        for (di, dc) in self.domains.iter().enumerate() {
            let dpath = format!("domains[{di}]");
            dc.shape.build(&format!("{dpath}.shape"))?;
            if let Some(r) = dc.r_e_override {
                if r <= 0.0 {
                    return Err(Error::Config(format!(
                        "{dpath}.r_e_override: must be positive"
                    )));
                }
            }
            for (pi, pb) in dc.problems.iter().enumerate() {
                let ppath = format!("{dpath}.problems[{pi}]");
                let allowed = allowed_bounds(pb);
                for (bi, b) in pb.bounds().iter().enumerate() {
                    if !allowed.contains(&b.as_str()) {
                        return Err(Error::Config(format!(
                            "{ppath}.bounds[{bi}]: unknown bound '{b}' for problem kind '{}'; allowed: {allowed:?}",
                            pb.kind_name()
                        )));
                    }
                }
                match pb {
                    ProblemSpec::Heat { times, .. } => {
                        if times.is_empty() || times.iter().any(|t| *t <= 0.0) {
                            return Err(Error::Config(format!(
                                "{ppath}.times: must be non-empty and positive"
                            )));
                        }
                    }
                    ProblemSpec::SmallDiffusion { eps, .. } => {
                        if eps.is_empty() || eps.iter().any(|e| *e <= 0.0) {
                            return Err(Error::Config(format!(
                                "{ppath}.eps: must be non-empty and positive"
                            )));
                        }
                    }
                    ProblemSpec::PTorsion { p, .. } => {
                        if p.is_empty() || p.iter().any(|v| *v <= 1.0) {
                            return Err(Error::Config(format!("{ppath}.p: entries must exceed 1")));
                        }
                    }
                    ProblemSpec::LaneEmden { q, .. } => {
                        if !(*q > 1.0 && *q <= 2.0) {
                            return Err(Error::Config(format!("{ppath}.q: must lie in (1, 2]")));
                        }
                    }
                    ProblemSpec::Aniso { norm, p, .. } => {
                        norm.build(&format!("{ppath}.norm"))?;
                        if *p <= 1.0 {
                            return Err(Error::Config(format!("{ppath}.p: must exceed 1")));
                        }
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

/// Read and validate a configuration file.
pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path.as_ref())?;
    let cfg: ExperimentConfig =
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{e}")))?;
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_json() -> &'static str {
        r#"{
            "domains": [
                {
                    "id": "disk",
                    "shape": {"kind": "ball", "center": [0.0, 0.0], "radius": 1.0},
                    "problems": [
                        {"kind": "torsion", "bounds": ["torsion_meanconvex"]}
                    ]
                }
            ]
        }"#
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg: ExperimentConfig = serde_json::from_str(minimal_json()).unwrap();
        cfg.validate().unwrap();
        assert!((cfg.h - 1.0 / 128.0).abs() < 1e-15);
        assert!((cfg.tolerance - 0.02).abs() < 1e-15);
    }

    #[test]
    fn unknown_bound_name_is_a_schema_error_with_path() {
        let text = minimal_json().replace("torsion_meanconvex", "no_such_bound");
        let cfg: ExperimentConfig = serde_json::from_str(&text).unwrap();
        let err = cfg.validate().unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("domains[0].problems[0].bounds[0]"), "{msg}");
        assert!(msg.contains("no_such_bound"));
    }

    #[test]
    fn heat_without_times_rejected() {
        let text = r#"{
            "domains": [{
                "id": "d",
                "shape": {"kind": "ball", "center": [0.0, 0.0], "radius": 1.0},
                "problems": [{"kind": "heat", "g": "phi1", "times": [], "bounds": ["heat"]}]
            }]
        }"#;
        let cfg: ExperimentConfig = serde_json::from_str(text).unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn heat_requires_initial_data_field() {
        // Missing "g" must fail at deserialization (schema error).
        let text = r#"{
            "domains": [{
                "id": "d",
                "shape": {"kind": "ball", "center": [0.0, 0.0], "radius": 1.0},
                "problems": [{"kind": "heat", "times": [0.1], "bounds": ["heat"]}]
            }]
        }"#;
        assert!(serde_json::from_str::<ExperimentConfig>(text).is_err());
    }

    #[test]
    fn shapes_build() {
        for (json, kind) in [
            (
                r#"{"kind": "dumbbell", "big": 1.0, "small": 0.55, "waist": 0.3}"#,
                "revolution",
            ),
            (
                r#"{"kind": "ellipse", "center": [0.0, 0.0], "semi_axes": [2.0, 1.0]}"#,
                "ellipse",
            ),
            (
                r#"{"kind": "polygon", "vertices": [[0,0],[1,0],[0,1]]}"#,
                "polygon",
            ),
        ] {
            let spec: ShapeSpec = serde_json::from_str(json).unwrap();
            assert_eq!(spec.build("shape").unwrap().kind_name(), kind);
        }
    }
}
