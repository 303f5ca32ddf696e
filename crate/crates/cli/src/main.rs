//! `hotspot` — solve the model boundary-value problems on a configured set of
//! domains, locate their interior maxima, and certify the closed-form lower
//! bounds on the distance from those maxima to the boundary.

use clap::{Args, Parser, Subcommand};
use hotspot_core::bounds::{self, EigenForm, LaneEmdenForm, PEigenForm, QuasilinearForm};
use hotspot_core::error::Error;
use hotspot_core::harness::{
    all_certified, emit, field_to_csv, load_config, property_suite, props_to_csv, run, Format,
};
use hotspot_core::pde::{radial_q_eps, SemilinearSource};
use hotspot_core::young::make_power_pair;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hotspot",
    about = "Certified lower bounds on the distance from interior maxima (hot spots) to the boundary",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve every configured problem and dump the fields as x,y,value CSVs.
    Solve(SolveArgs),
    /// Run the full pipeline (solve, measure, certify) and emit the report.
    Verify(VerifyArgs),
    /// Evaluate a single closed-form bound from explicit parameters.
    Bounds(BoundsArgs),
    /// Run the property suite (pointwise inequalities and trend checks).
    Props(PropsArgs),
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    config: PathBuf,
    /// CSV report path.
    #[arg(long)]
    report: PathBuf,
    /// Optional JSON mirror (rows plus configuration echo).
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Bound name (see README for the catalogue).
    #[arg(long)]
    name: String,
    /// Comma-separated `key=value` parameters; list-valued keys use
    /// semicolons, e.g. `axes=1;2`.
    #[arg(long, default_value = "")]
    params: String,
}

#[derive(Args)]
struct PropsArgs {
    #[arg(long)]
    config: PathBuf,
    /// Optional CSV output; stdout otherwise.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn init_threads() {
    if let Ok(v) = std::env::var("HOTSPOT_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Solve(args) => {
            let config = load_config(&args.config)?;
            std::fs::create_dir_all(&args.out)?;
            let fields = hotspot_core::harness::run::solve_fields(&config)?;
            for (domain, problem, field) in fields {
                let sanitized = problem.replace(['@', '='], "_");
                let path = args.out.join(format!("{domain}_{sanitized}.csv"));
                std::fs::write(&path, field_to_csv(&field))?;
                println!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let config = load_config(&args.config)?;
            let rows = run(&config)?;
            emit(&rows, &config, Format::Csv, &args.report)?;
            if let Some(json_path) = &args.json {
                emit(&rows, &config, Format::Json, json_path)?;
            }
            for r in &rows {
                println!(
                    "{:<14} {:<28} {:<26} measured {:>12.6} bound {:>12.6} slack {:>9.4} {}",
                    r.domain,
                    r.problem,
                    r.bound,
                    r.d_measured,
                    r.bound_value,
                    r.slack,
                    r.status.as_str()
                );
            }
            let ok = all_certified(&rows);
            println!(
                "{} rows; {}",
                rows.len(),
                if ok {
                    "all certified"
                } else {
                    "FAILURES present"
                }
            );
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Bounds(args) => {
            let value = eval_bound(&args.name, &parse_params(&args.params)?)?;
            println!("{value:.12e}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Props(args) => {
            let config = load_config(&args.config)?;
            let rows = property_suite(&config)?;
            let csv = props_to_csv(&rows);
            match &args.report {
                Some(p) => std::fs::write(p, &csv)?,
                None => print!("{csv}"),
            }
            let ok = rows.iter().all(|r| r.pass);
            println!(
                "{} properties; {}",
                rows.len(),
                if ok { "all hold" } else { "VIOLATIONS present" }
            );
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

type Params = BTreeMap<String, String>;

fn parse_params(s: &str) -> Result<Params, Error> {
    let mut out = BTreeMap::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("parameter '{part}' is not key=value")))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn need_f64(p: &Params, key: &str) -> Result<f64, Error> {
    p.get(key)
        .ok_or_else(|| Error::Config(format!("missing parameter '{key}'")))?
        .parse::<f64>()
        .map_err(|_| Error::Config(format!("parameter '{key}' is not a number")))
}

fn need_usize(p: &Params, key: &str) -> Result<usize, Error> {
    Ok(need_f64(p, key)? as usize)
}

fn need_list(p: &Params, key: &str) -> Result<Vec<f64>, Error> {
    let raw = p
        .get(key)
        .ok_or_else(|| Error::Config(format!("missing parameter '{key}'")))?;
    raw.split(';')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("entry '{v}' of '{key}' is not a number")))
        })
        .collect()
}

fn eval_bound(name: &str, p: &Params) -> Result<f64, Error> {
    match name {
        "torsion_meanconvex" => bounds::bound_torsion_meanconvex(need_usize(p, "n")?),
        "torsion_max_upper" => bounds::torsion_max_upper(need_usize(p, "n")?, need_f64(p, "r_in")?),
        "torsion_john" => bounds::bound_torsion_john(
            &need_list(p, "axes")?,
            need_f64(p, "r_in")?,
            need_usize(p, "n")?,
        ),
        "torsion_curvature" => bounds::bound_torsion_curvature(
            need_usize(p, "n")?,
            need_f64(p, "m0_minus")?,
            need_f64(p, "r_in")?,
        ),
        "gradient_g_upper" => bounds::gradient_g_upper(
            need_usize(p, "n")?,
            need_f64(p, "diam")?,
            need_f64(p, "r_e")?,
        ),
        "torsion_exterior" => bounds::bound_torsion_exterior(
            need_usize(p, "n")?,
            need_f64(p, "diam")?,
            need_f64(p, "r_e")?,
        ),
        "small_diffusion" | "small_diffusion_geometric" => bounds::bound_small_diffusion(
            need_f64(p, "eps")?,
            need_usize(p, "n")?,
            p.get("u_z")
                .map(|v| v.parse().unwrap_or(0.0))
                .unwrap_or(0.0),
            p.get("r_in")
                .map(|v| v.parse().unwrap_or(1.0))
                .unwrap_or(1.0),
            name.ends_with("geometric"),
        ),
        "semilinear" => {
            // f(s) = N - s/eps when eps given, else the constant source N.
            let n = need_usize(p, "n")? as f64;
            let u_z = need_f64(p, "u_z")?;
            let src = match p.get("eps") {
                Some(e) => {
                    let eps: f64 = e
                        .parse()
                        .map_err(|_| Error::Config("eps is not a number".into()))?;
                    SemilinearSource::screened(n, eps)
                }
                None => SemilinearSource::new(move |_| n, move |s| n * s),
            };
            bounds::bound_semilinear_distance(&src, u_z, u_z)
        }
        "eigen_absolute" => bounds::bound_eigen(
            need_f64(p, "lambda1")?,
            need_usize(p, "n")?,
            EigenForm::Absolute,
        ),
        "eigen_ratio" => bounds::bound_eigen(1.0, need_usize(p, "n")?, EigenForm::Ratio),
        "bms" => bounds::bms_bound(
            need_usize(p, "n")?,
            need_f64(p, "r_in")?,
            need_f64(p, "diam")?,
        ),
        "quasilinear" | "quasilinear_power_ratio" | "quasilinear_shift" => {
            let mut pair = make_power_pair(need_f64(p, "p")?)?;
            if let Some(a) = p.get("a") {
                pair.growth.a = a
                    .parse()
                    .map_err(|_| Error::Config("a is not a number".into()))?;
            }
            if let Some(c) = p.get("c") {
                pair.growth.c = c
                    .parse()
                    .map_err(|_| Error::Config("c is not a number".into()))?;
            }
            if let Some(cc) = p.get("C") {
                pair.growth.big_c = cc
                    .parse()
                    .map_err(|_| Error::Config("C is not a number".into()))?;
            }
            let form = match name {
                "quasilinear" => QuasilinearForm::General,
                "quasilinear_power_ratio" => QuasilinearForm::PowerRatio,
                _ => QuasilinearForm::Shift,
            };
            bounds::bound_quasilinear(&pair, need_usize(p, "n")?, need_f64(p, "r_in")?, form)
        }
        "p_eigen_absolute" => bounds::bound_p_eigen(
            need_f64(p, "p")?,
            need_f64(p, "lambda")?,
            PEigenForm::Absolute,
        ),
        "p_eigen_ratio" => bounds::bound_p_eigen(
            need_f64(p, "p")?,
            need_f64(p, "lambda_ball")?,
            PEigenForm::Ratio,
        ),
        "lane_emden_absolute" => bounds::bound_lane_emden(
            need_f64(p, "q")?,
            need_f64(p, "lambda_q")?,
            need_f64(p, "max_u")?,
            need_usize(p, "n")?,
            1.0,
            1.0,
            LaneEmdenForm::Absolute,
        ),
        "lane_emden_ratio" => bounds::bound_lane_emden(
            need_f64(p, "q")?,
            need_f64(p, "lambda_q_ball")?,
            1.0,
            need_usize(p, "n")?,
            need_f64(p, "r_in")?,
            need_f64(p, "vol")?,
            LaneEmdenForm::Ratio,
        ),
        "aniso" => {
            let pair = make_power_pair(need_f64(p, "p")?)?;
            bounds::bound_aniso(&pair, need_usize(p, "n")?, need_f64(p, "r_aniso")?)
        }
        "bessel_first_zero" => bounds::special::bessel_first_zero(need_f64(p, "nu")?),
        "lambda1_ball" => bounds::special::lambda1_unit_ball(need_usize(p, "n")?),
        "beta" => bounds::special::gamma_beta(need_f64(p, "a")?, need_f64(p, "b")?),
        "ball_volume" => bounds::special::ball_volume(need_usize(p, "k")?),
        "radial_q_eps" => radial_q_eps(need_f64(p, "eps")?, need_f64(p, "r")?, need_usize(p, "n")?),
        "chi" => {
            let pair = make_power_pair(need_f64(p, "p")?)?;
            pair.chi(need_f64(p, "sigma")?, need_usize(p, "n")?)
        }
        other => Err(Error::Config(format!("unknown bound name '{other}'"))),
    }
}
