//! `mink` - bisectors, shadow boundaries and radial projections of
//! centrally symmetric convex bodies.
//!
//! Exit codes: 0 success, 1 failed verification checks, 2 configuration
//! errors, 3 unresolved classification verdicts.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mink_core::bisector::ScanParams;
use mink_core::body::{BodySpec, ConvexBody};
use mink_core::shadow::{bounded_representation, GridParams};
use mink_core::topology::{classify_sphere, sphere_mesh};
use mink_core::verify::{self, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "mink",
    about = "Bisectors, shadow boundaries and radial projections in Minkowski normed spaces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Label every mesh direction against the bisector B(-x, x).
    Classify(RunArgs),
    /// Emit the bounded representation (chord midpoints + shadow boundary).
    BoundedRep(RunArgs),
    /// Run a named verification suite and report machine-readable checks.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Body tag (`lp:<p>`, `cube`, `cross`, `halfdisk[:<m>]`) or a path to
    /// a JSON body spec.
    #[arg(long)]
    body: String,

    /// Reference direction, comma-separated (gauge-normalized internally).
    #[arg(long, allow_hyphen_values = true)]
    x: String,

    /// Ambient dimension for `lp`, `cube` and `cross` tags.
    #[arg(long)]
    dim: Option<usize>,

    /// Sphere mesh resolution (subdivision level; 2^level-gon in the plane).
    #[arg(long, default_value_t = 4)]
    mesh_level: u32,

    /// Seed for the n = 4 random mesh.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output path; stdout when omitted.  Files are written atomically.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format: csv, json or obj.
    #[arg(long, default_value = "csv")]
    format: String,

    /// Chord grid spacing in the complement hyperplane.
    #[arg(long, default_value_t = 0.02)]
    grid_spacing: f64,

    /// Strict zero threshold on the scan function.
    #[arg(long, default_value_t = 1e-9)]
    tol_f: f64,

    /// Ideal-limit threshold on the scan tail.
    #[arg(long, default_value_t = 1e-6)]
    tol_asym: f64,

    /// Near-miss band on the proximity statistic; by default matched to
    /// the mesh resolution.  Zero disables the band.
    #[arg(long)]
    tol_band: Option<f64>,

    /// Gauge tolerance override for the body oracle.
    #[arg(long)]
    tol_gauge: Option<f64>,

    /// Scan horizon for classification.
    #[arg(long, default_value_t = 1e4)]
    t_max: f64,
}

#[derive(Args, Clone)]
struct VerifyArgs {
    /// Suite: prop1, lemma1, corollary1, mw26, mw29, mw210 or example1.
    suite: String,

    /// Body tag or spec path (ignored by `corollary1` and `example1`,
    /// which run fixed body sets).
    #[arg(long)]
    body: Option<String>,

    /// Reference direction (defaults to the first coordinate direction).
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,

    #[arg(long)]
    dim: Option<usize>,

    #[arg(long, default_value_t = 4)]
    mesh_level: u32,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, default_value_t = 0.02)]
    grid_spacing: f64,
}

fn parse_vector(text: &str) -> Result<Vec<f64>, String> {
    let parts: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    match parts {
        Ok(v) if v.len() >= 2 => Ok(v),
        Ok(_) => Err("direction needs at least two components".into()),
        Err(e) => Err(format!("bad direction '{text}': {e}")),
    }
}

fn load_body(tag_or_path: &str, dim: usize) -> Result<ConvexBody<f64>, String> {
    let looks_like_path = tag_or_path.ends_with(".json") || tag_or_path.contains('/');
    if looks_like_path {
        let spec = BodySpec::load(std::path::Path::new(tag_or_path))
            .map_err(|e| format!("cannot load body spec: {e}"))?;
        return ConvexBody::from_spec(&spec).map_err(|e| format!("bad body spec: {e}"));
    }
    ConvexBody::from_tag(tag_or_path, dim).map_err(|e| e.to_string())
}

struct Prepared {
    body: ConvexBody<f64>,
    x: Vec<f64>,
    mesh_level: u32,
    seed: u64,
    scan: ScanParams<f64>,
    grid: GridParams<f64>,
    config_echo: serde_json::Value,
}

fn prepare(args: &RunArgs) -> Result<Prepared, String> {
    let x_raw = parse_vector(&args.x)?;
    let dim = args.dim.unwrap_or(x_raw.len());
    if dim != x_raw.len() {
        return Err(format!(
            "--dim {dim} disagrees with --x of length {}",
            x_raw.len()
        ));
    }
    let mut body = load_body(&args.body, dim)?;
    if body.dim() != x_raw.len() {
        return Err(format!(
            "body dimension {} disagrees with --x of length {}",
            body.dim(),
            x_raw.len()
        ));
    }
    if let Some(g) = args.tol_gauge {
        body.set_gauge_tolerance(g);
    }
    let x = body
        .boundary_point(&x_raw)
        .map_err(|e| format!("bad direction: {e}"))?;
    let scan = ScanParams {
        eps_f: args.tol_f,
        eps_asym: args.tol_asym,
        t_max: args.t_max,
        band: args.tol_band.unwrap_or(0.0),
        ..ScanParams::default()
    };
    let config_echo = serde_json::json!({
        "body": args.body,
        "x": x,
        "mesh_level": args.mesh_level,
        "seed": args.seed,
        "format": args.format,
        "grid_spacing": args.grid_spacing,
        "tol_f": args.tol_f,
        "tol_asym": args.tol_asym,
        "tol_band": args.tol_band,
        "t_max": args.t_max,
    });
    Ok(Prepared {
        body,
        x,
        mesh_level: args.mesh_level,
        seed: args.seed,
        scan,
        grid: GridParams { spacing: args.grid_spacing },
        config_echo,
    })
}

fn cmd_classify(args: &RunArgs) -> Result<u8, String> {
    let p = prepare(args)?;
    let mesh = sphere_mesh::<f64>(p.body.dim(), p.mesh_level, p.seed)
        .map_err(|e| e.to_string())?;
    let mut scan = p.scan;
    if args.tol_band.is_none() {
        scan.band = mesh.default_band();
    }
    let labeled = classify_sphere(&p.body, &p.x, &mesh, &scan);
    let content = match args.format.as_str() {
        "csv" => output::classify_csv(&labeled),
        "json" => output::classify_json(&labeled, &p.config_echo),
        "obj" => output::classify_obj(&labeled),
        other => return Err(format!("unknown format '{other}'")),
    };
    output::Sink::from_arg(&args.out)
        .write(&content)
        .map_err(|e| format!("write failed: {e}"))?;
    if output::unresolved_count(&labeled) > 0 {
        return Ok(3);
    }
    Ok(0)
}

fn cmd_bounded_rep(args: &RunArgs) -> Result<u8, String> {
    let p = prepare(args)?;
    let mesh = sphere_mesh::<f64>(p.body.dim(), p.mesh_level, p.seed)
        .map_err(|e| e.to_string())?;
    let mut scan = p.scan;
    if args.tol_band.is_none() {
        scan.band = mesh.default_band();
    }
    let labeled = classify_sphere(&p.body, &p.x, &mesh, &scan);
    let rep = bounded_representation(&p.body, &p.x, &labeled, &p.grid)
        .map_err(|e| e.to_string())?;
    let content = match args.format.as_str() {
        "csv" => output::rep_csv(&rep),
        "json" => output::rep_json(&rep, &p.config_echo),
        "obj" => output::rep_obj(&rep, &labeled),
        other => return Err(format!("unknown format '{other}'")),
    };
    output::Sink::from_arg(&args.out)
        .write(&content)
        .map_err(|e| format!("write failed: {e}"))?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, String> {
    if !verify::SUITE_NAMES.contains(&args.suite.as_str()) {
        return Err(format!(
            "unknown suite '{}'; available: {}",
            args.suite,
            verify::SUITE_NAMES.join(", ")
        ));
    }
    let dim = args.dim.unwrap_or(if args.suite == "mw210" { 2 } else { 3 });
    let default_body = match args.suite.as_str() {
        "lemma1" => "cube",
        _ => "lp:2",
    };
    let body = load_body(args.body.as_deref().unwrap_or(default_body), dim)?;
    let x_raw = match &args.x {
        Some(text) => parse_vector(text)?,
        None => {
            let mut e = vec![0.0; body.dim()];
            e[0] = 1.0;
            e
        }
    };
    if x_raw.len() != body.dim() {
        return Err(format!(
            "body dimension {} disagrees with --x of length {}",
            body.dim(),
            x_raw.len()
        ));
    }
    let x = body
        .boundary_point(&x_raw)
        .map_err(|e| format!("bad direction: {e}"))?;
    let cfg = VerifyConfig {
        level: args.mesh_level,
        seed: args.seed,
        scan: ScanParams::default(),
        grid: GridParams { spacing: args.grid_spacing },
        sample_k: 24,
    };
    let report = verify::run_suite(&args.suite, &body, &x, &cfg).map_err(|e| e.to_string())?;
    for c in &report.checks {
        eprintln!(
            "[{}] {}: expected {}, actual {} (tol {})",
            if c.pass { "pass" } else { "FAIL" },
            c.name,
            c.expected,
            c.actual,
            c.tol
        );
    }
    output::Sink::from_arg(&args.out)
        .write(&(report.to_json() + "\n"))
        .map_err(|e| format!("write failed: {e}"))?;
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(args) => cmd_classify(args),
        Command::BoundedRep(args) => cmd_bounded_rep(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
