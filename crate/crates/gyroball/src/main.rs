//! Thin command-line front-end over the library: evaluate single
//! operations, run identity suites, render figure scenes, and compute
//! gyroline boundary endpoints.
//!
//! Exit codes: 0 success, 1 failing identity suite, 2 parse/usage or
//! malformed-scene errors, 3 domain errors (inputs violate an operation
//! precondition), 4 SVG requested for a non-planar scene.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gyroball::identities::{run_suite, Suite, VerifyConfig};
use gyroball::scene::{render_svg, rows_to_csv, rows_to_json, SceneSpec};
use gyroball::{BallParams, GyroModel, ModelKind, TolerancePolicy};

const EXIT_SUITE_FAILED: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_SVG_DIM: u8 = 4;

#[derive(Parser)]
#[command(
    name = "gyroball",
    version,
    about = "Gyrovector operations and figures in the Einstein and Mobius ball models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one operation on point literals and print the result as JSON.
    Eval(EvalArgs),
    /// Run an identity suite and print one row per identity.
    Check(CheckArgs),
    /// Render a scene file to CSV, JSON, or SVG.
    Figure(FigureArgs),
    /// Print the two boundary points of the gyroline through two points.
    Endpoints(EndpointsArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EvalOp {
    Add,
    Coadd,
    Gyr,
    Scalar,
    Distance,
    Midpoint,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::Einstein)]
    model: ModelKind,
    #[arg(long, value_enum)]
    op: EvalOp,
    /// Ball radius.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Scalar multiplier, required by --op scalar.
    #[arg(long)]
    r: Option<f64>,
    /// Point literals as comma-separated reals, e.g. "0.5,0".
    #[arg(required = true)]
    points: Vec<String>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::Einstein)]
    model: ModelKind,
    /// Suite name: all, gyrogroup, cooperation, gyrovector,
    /// broken-model, or a single identity name.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Sampling seed; when absent, GYROBALL_SEED applies, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Sampling radius cap as a fraction of the ball radius.
    #[arg(long, default_value_t = 0.9)]
    cap: f64,
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    /// Ambient dimension.
    #[arg(long, default_value_t = 3)]
    dim: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FigureFormat {
    Csv,
    Json,
    Svg,
}

#[derive(Args)]
struct FigureArgs {
    /// Scene description file (JSON).
    #[arg(long)]
    scene: PathBuf,
    #[arg(long, value_enum, default_value_t = FigureFormat::Csv)]
    format: FigureFormat,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Convert the scene to the other model before rendering.
    #[arg(long, value_enum)]
    to: Option<ModelKind>,
}

#[derive(Args)]
struct EndpointsArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::Einstein)]
    model: ModelKind,
    /// Ball radius.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Exactly two point literals.
    #[arg(required = true, num_args = 2)]
    points: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Check(args) => cmd_check(args),
        Command::Figure(args) => cmd_figure(args),
        Command::Endpoints(args) => cmd_endpoints(args),
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

/// Writes to standard output without panicking when the reader has gone
/// away (e.g. piping into `head`); a closed pipe is not an error.
fn emit(text: &str) -> Result<(), ExitCode> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(fail(EXIT_PARSE, format!("cannot write output: {e}"))),
    }
}

fn parse_point_literal(text: &str) -> Result<Vec<f64>, String> {
    let coords: Result<Vec<f64>, _> = text
        .split(',')
        .map(|part| part.trim().parse::<f64>())
        .collect();
    match coords {
        Ok(v) if !v.is_empty() => Ok(v),
        _ => Err(format!(
            "point literal '{text}' is not a comma-separated list of reals"
        )),
    }
}

fn json_vec(v: &[f64]) -> String {
    serde_json::to_string(v).expect("vector serializes")
}

fn cmd_eval(args: EvalArgs) -> ExitCode {
    let arity = match args.op {
        EvalOp::Scalar => 1,
        EvalOp::Gyr => 3,
        _ => 2,
    };
    if args.points.len() != arity {
        return fail(
            EXIT_PARSE,
            format!("--op expects {arity} point literal(s), got {}", args.points.len()),
        );
    }
    if args.op == EvalOp::Scalar && args.r.is_none() {
        return fail(EXIT_PARSE, "--op scalar requires --r");
    }
    let mut literals = Vec::with_capacity(args.points.len());
    for text in &args.points {
        match parse_point_literal(text) {
            Ok(v) => literals.push(v),
            Err(e) => return fail(EXIT_PARSE, e),
        }
    }
    let params = match BallParams::new(literals[0].len(), args.c) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_DOMAIN, e),
    };
    let model = GyroModel::new(args.model, params);
    let mut points = Vec::with_capacity(literals.len());
    for lit in literals {
        match model.point(lit) {
            Ok(p) => points.push(p),
            Err(e) => return fail(EXIT_DOMAIN, e),
        }
    }
    let printed = match args.op {
        EvalOp::Add => model.add(&points[0], &points[1]).map(|p| json_vec(&p.to_vec())),
        EvalOp::Coadd => model.coadd(&points[0], &points[1]).map(|p| json_vec(&p.to_vec())),
        EvalOp::Gyr => model
            .gyr_apply(&points[0], &points[1], &points[2])
            .map(|p| json_vec(&p.to_vec())),
        EvalOp::Scalar => model
            .scalar_mul(args.r.expect("checked above"), &points[0])
            .map(|p| json_vec(&p.to_vec())),
        EvalOp::Distance => model
            .distance(&points[0], &points[1])
            .map(|d| serde_json::to_string(&d).expect("number serializes")),
        EvalOp::Midpoint => gyroball::geometry::gyromidpoint(&model, &points[0], &points[1])
            .map(|p| json_vec(&p.to_vec())),
    };
    match printed {
        Ok(text) => match emit(&format!("{text}\n")) {
            Ok(()) => ExitCode::SUCCESS,
            Err(code) => code,
        },
        Err(e) => fail(EXIT_DOMAIN, e),
    }
}

fn resolve_seed(cli_seed: Option<u64>) -> u64 {
    cli_seed
        .or_else(|| {
            std::env::var("GYROBALL_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0)
}

fn cmd_check(args: CheckArgs) -> ExitCode {
    let suite = match Suite::parse(&args.suite) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_PARSE, e),
    };
    let params = match BallParams::new(args.dim, 1.0) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_DOMAIN, e),
    };
    if !(args.cap > 0.0 && args.cap <= 1.0) {
        return fail(EXIT_PARSE, format!("--cap must be in (0, 1], got {}", args.cap));
    }
    let model = GyroModel::new(args.model, params);
    let config = VerifyConfig {
        samples: args.samples,
        seed: resolve_seed(args.seed),
        cap: args.cap,
        policy: TolerancePolicy {
            rel_tol: args.rel_tol,
            ..TolerancePolicy::default()
        },
    };
    let reports = run_suite(&model, &suite, &config);
    use std::fmt::Write as _;
    let mut table = String::new();
    writeln!(
        table,
        "model: {}   suite: {}   samples: {}   seed: {}   cap: {}   rel-tol: {:e}",
        model.kind(),
        args.suite,
        config.samples,
        config.seed,
        config.cap,
        config.policy.rel_tol
    )
    .expect("string formatting");
    writeln!(table, "{:<28} {:>8} {:>14} {:>8}", "identity", "samples", "max residual", "result")
        .expect("string formatting");
    let mut failures = 0usize;
    for report in &reports {
        if !report.pass {
            failures += 1;
        }
        writeln!(
            table,
            "{:<28} {:>8} {:>14.3e} {:>8}",
            report.identity.name(),
            report.samples,
            report.max_residual,
            if report.pass { "pass" } else { "FAIL" }
        )
        .expect("string formatting");
    }
    if failures == 0 {
        writeln!(table, "all {} identities passed", reports.len()).expect("string formatting");
    } else {
        writeln!(table, "{failures} of {} identities failed", reports.len())
            .expect("string formatting");
    }
    if let Err(code) = emit(&table) {
        return code;
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_SUITE_FAILED)
    }
}

fn cmd_figure(args: FigureArgs) -> ExitCode {
    let text = match std::fs::read_to_string(&args.scene) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_PARSE, format!("cannot read {}: {e}", args.scene.display())),
    };
    let scene = match SceneSpec::from_json(&text) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_PARSE, e),
    };
    let scene = match args.to {
        Some(kind) => match scene.convert(kind) {
            Ok(s) => s,
            Err(e) => return fail(EXIT_PARSE, e),
        },
        None => scene,
    };
    if args.format == FigureFormat::Svg && scene.dim != 2 {
        return fail(
            EXIT_SVG_DIM,
            format!("SVG output is planar-only; the scene has dimension {}", scene.dim),
        );
    }
    let rows = match scene.render() {
        Ok(r) => r,
        Err(e) => return fail(EXIT_PARSE, e),
    };
    let output = match args.format {
        FigureFormat::Csv => rows_to_csv(&rows, scene.dim),
        FigureFormat::Json => rows_to_json(&scene, &rows),
        FigureFormat::Svg => match render_svg(&scene, &rows) {
            Ok(s) => s,
            Err(e) => return fail(EXIT_SVG_DIM, e),
        },
    };
    match args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, output) {
                return fail(EXIT_PARSE, format!("cannot write {}: {e}", path.display()));
            }
        }
        None => {
            if let Err(code) = emit(&output) {
                return code;
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_endpoints(args: EndpointsArgs) -> ExitCode {
    let mut literals = Vec::with_capacity(2);
    for text in &args.points {
        match parse_point_literal(text) {
            Ok(v) => literals.push(v),
            Err(e) => return fail(EXIT_PARSE, e),
        }
    }
    let params = match BallParams::new(literals[0].len(), args.c) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_DOMAIN, e),
    };
    let model = GyroModel::new(args.model, params);
    let mut points = Vec::with_capacity(2);
    for lit in literals {
        match model.point(lit) {
            Ok(p) => points.push(p),
            Err(e) => return fail(EXIT_DOMAIN, e),
        }
    }
    match gyroball::geometry::gyroline_endpoints(&model, &points[0], &points[1]) {
        Ok((e1, e2)) => {
            let doc = serde_json::json!({
                "e1": e1.to_vec(),
                "e1_norm": e1.norm(),
                "e2": e2.to_vec(),
                "e2_norm": e2.norm(),
            });
            match emit(&format!("{doc}\n")) {
                Ok(()) => ExitCode::SUCCESS,
                Err(code) => code,
            }
        }
        Err(e) => fail(EXIT_DOMAIN, e),
    }
}
