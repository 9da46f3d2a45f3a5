//! `cubegeo`: distances, witness paths, audits and candidate listings for
//! the sup-norm cube surface.
//!
//! Exit codes: 0 on success, 1 for bad input, 2 when a verification fails.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cube_geodesic::audit::{run_audit, AuditConfig, AuditReport, OracleChoice};
use cube_geodesic::export::{to_csv, to_obj, PathExport};
use cube_geodesic::nd::{candidates, closed_form_count, family_count, geodesic_distance_with, Family, NdConfig, Source};
use cube_geodesic::sampling::SampleClass;
use cube_geodesic::{PairClass, SurfacePoint};
use serde::Serialize;

/// Longest candidate stream that `candidates --count-only` will walk; above
/// this the integer sum stands in for the streamed count.
const STREAM_COUNT_LIMIT: u128 = 50_000_000;

/// Path lengths must match the reported distance this closely.
const PATH_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "cubegeo", version, about = "Geodesics on the surface of the n-cube under the sup norm")]
struct Cli {
    /// Largest dimension accepted.
    #[arg(long, global = true, default_value_t = cube_geodesic::nd::DEFAULT_MAX_DIM)]
    max_dim: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two surface points.
    Dist {
        #[command(flatten)]
        points: Points,
        /// Print a JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Shortest path between two surface points.
    Path {
        #[command(flatten)]
        points: Points,
        #[arg(long, value_enum, default_value_t = PathFormat::Json)]
        format: PathFormat,
        /// Write to this file instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the closed forms against the oracles on random pairs.
    Audit(AuditArgs),
    /// List or count the candidate stream for one family.
    Candidates {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Args)]
struct Points {
    /// First point, comma separated, e.g. `1,0.5,0`.
    #[arg(short = 'a', long = "point-a", allow_hyphen_values = true)]
    a: String,
    /// Second point.
    #[arg(short = 'b', long = "point-b", allow_hyphen_values = true)]
    b: String,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, value_enum, default_value_t = ClassArg::Adjacent)]
    class: ClassArg,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OracleArg::Exact)]
    oracle: OracleArg,
    /// Grid spacing (default 0.01 for n = 3, 0.05 otherwise).
    #[arg(long)]
    h: Option<f64>,
    /// Exact-oracle tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Face-sequence depth for the exact oracle.
    #[arg(long)]
    depth: Option<usize>,
    /// Write the full JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the full JSON report on standard output.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathFormat {
    Json,
    Csv,
    Obj,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Adjacent,
    Opposite,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Adjacent,
    Opposite,
    SameFace,
    Mixed,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Exact,
    Grid,
    Both,
}

enum Failure {
    Input(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Verify(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Verify(m) => f.write_str(m),
        }
    }
}

impl From<cube_geodesic::GeodesicError> for Failure {
    fn from(e: cube_geodesic::GeodesicError) -> Self {
        match e {
            cube_geodesic::GeodesicError::Inconsistent(m) => Failure::Verify(m),
            e => Failure::Input(e.to_string()),
        }
    }
}

fn io_err(e: io::Error) -> Failure {
    Failure::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = NdConfig { max_dim: cli.max_dim };
    match cli.command {
        Command::Dist { points, json } => dist(&points, json, &cfg),
        Command::Path { points, format, output } => path(&points, format, output, &cfg),
        Command::Audit(args) => audit(args, cfg),
        Command::Candidates { n, mode, count_only } => list_candidates(n, mode, count_only, &cfg),
    }
}

fn parse_point(text: &str, which: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Input(format!("point {which}: cannot parse `{}` as a number", t.trim())))
        })
        .collect()
}

fn parse_points(p: &Points, cfg: &NdConfig) -> Result<(SurfacePoint, SurfacePoint), Failure> {
    let a = parse_point(&p.a, "a")?;
    let b = parse_point(&p.b, "b")?;
    if a.len() != b.len() {
        return Err(Failure::Input(format!("points have dimensions {} and {}", a.len(), b.len())));
    }
    cfg.check(a.len())?;
    Ok((SurfacePoint::from_coords(a)?, SurfacePoint::from_coords(b)?))
}

fn describe(source: Source, class: PairClass) -> String {
    let facets = match class {
        PairClass::SameFace(f) => format!("{f}"),
        PairClass::Adjacent(f, g) => format!("{f} to {g}"),
        PairClass::Opposite { axis, a_sign } => {
            let f = cube_geodesic::FaceId::new(axis, a_sign);
            format!("{f} to {}", f.opposite())
        }
    };
    let name = match source {
        Source::Segment => "segment",
        Source::Adjacent3 => "adjacent closed form",
        Source::Opposite3 => "opposite closed form",
        Source::AdjacentFamily => "adjacent candidates",
        Source::OppositeFamily => "opposite candidates",
    };
    format!("{name} ({facets})")
}

#[derive(Serialize)]
struct DistJson<'a> {
    n: usize,
    a: &'a [f64],
    b: &'a [f64],
    distance: f64,
    provenance: String,
    minimizers: &'a [String],
    conditions: &'a [String],
}

fn dist(points: &Points, json: bool, cfg: &NdConfig) -> Result<(), Failure> {
    let (a, b) = parse_points(points, cfg)?;
    let r = geodesic_distance_with(&a, &b, cfg)?;
    let provenance = describe(r.provenance.source, r.provenance.class);
    let mut out = io::stdout().lock();
    if json {
        let doc = DistJson {
            n: a.dim(),
            a: a.coords(),
            b: b.coords(),
            distance: r.distance,
            provenance,
            minimizers: &r.provenance.minimizers,
            conditions: &r.provenance.conditions,
        };
        let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Input(e.to_string()))?;
        writeln!(out, "{text}").map_err(io_err)?;
    } else {
        writeln!(out, "distance: {}", r.distance).map_err(io_err)?;
        writeln!(out, "provenance: {provenance}").map_err(io_err)?;
        writeln!(out, "minimizers: {}", r.provenance.minimizers.join(", ")).map_err(io_err)?;
        if !r.provenance.conditions.is_empty() {
            writeln!(out, "conditions: {}", r.provenance.conditions.join("; ")).map_err(io_err)?;
        }
        if r.provenance.candidates_truncated {
            writeln!(out, "(tie list truncated)").map_err(io_err)?;
        }
    }
    Ok(())
}

fn path(points: &Points, format: PathFormat, output: Option<PathBuf>, cfg: &NdConfig) -> Result<(), Failure> {
    let (a, b) = parse_points(points, cfg)?;
    if matches!(format, PathFormat::Obj) && a.dim() != 3 {
        return Err(Failure::Input(format!("obj output needs n = 3, got n = {}", a.dim())));
    }
    let r = geodesic_distance_with(&a, &b, cfg)?;
    let total = r.path.total_length();
    if (total - r.distance).abs() > PATH_TOL {
        return Err(Failure::Verify(format!("witness length {total} differs from distance {}", r.distance)));
    }
    let text = match format {
        PathFormat::Json => {
            let mut s = serde_json::to_string_pretty(&PathExport::from(&r.path))
                .map_err(|e| Failure::Input(e.to_string()))?;
            s.push('\n');
            s
        }
        PathFormat::Csv => to_csv(&r.path),
        PathFormat::Obj => to_obj(&r.path)?,
    };
    match output {
        Some(file) => fs::write(file, text).map_err(io_err),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(io_err),
    }
}

fn audit(args: AuditArgs, nd: NdConfig) -> Result<(), Failure> {
    let class = match args.class {
        ClassArg::Adjacent => SampleClass::Adjacent,
        ClassArg::Opposite => SampleClass::Opposite,
        ClassArg::SameFace => SampleClass::SameFace,
        ClassArg::Mixed => SampleClass::Mixed,
    };
    let oracle = match args.oracle {
        OracleArg::Exact => OracleChoice::Exact,
        OracleArg::Grid => OracleChoice::Grid,
        OracleArg::Both => OracleChoice::Both,
    };
    let mut cfg = AuditConfig::new(args.n, class, args.samples, args.seed, oracle);
    cfg.h = args.h;
    cfg.tol = args.tol;
    cfg.depth = args.depth;
    cfg.nd = nd;
    let report = run_audit(&cfg)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::Input(e.to_string()))? + "\n";
    if let Some(file) = &args.report {
        fs::write(file, &json).map_err(io_err)?;
    }
    let mut out = io::stdout().lock();
    if args.json {
        out.write_all(json.as_bytes()).map_err(io_err)?;
    } else {
        summary(&mut out, &report).map_err(io_err)?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verify(format!("{} violation(s)", report.violations.len())))
    }
}

fn summary(out: &mut impl Write, r: &AuditReport) -> io::Result<()> {
    writeln!(out, "n = {}, class = {}, samples = {}, seed = {}", r.n, r.class.name(), r.samples, r.seed)?;
    let show = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:e}"));
    writeln!(out, "max |delta| exact: {} (tol {:e})", show(r.max_abs_delta_exact), r.exact_tol)?;
    if let (Some(h), Some(tol)) = (r.h, r.grid_tol) {
        writeln!(out, "max |delta| grid:  {} (h {h}, tol {tol})", show(r.max_abs_delta_grid))?;
    }
    writeln!(out, "violations: {}", r.violations.len())?;
    for v in r.violations.iter().take(20) {
        writeln!(out, "  #{} {}: {}", v.index, v.check, v.detail)?;
    }
    if r.violations.len() > 20 {
        writeln!(out, "  ...")?;
    }
    Ok(())
}

fn list_candidates(n: usize, mode: Mode, count_only: bool, cfg: &NdConfig) -> Result<(), Failure> {
    let family = match mode {
        Mode::Adjacent => Family::Adjacent,
        Mode::Opposite => Family::Opposite,
    };
    cfg.check(n)?;
    let mut out = io::stdout().lock();
    if count_only {
        let sum = family_count(family, n)?;
        let streamed = if sum <= STREAM_COUNT_LIMIT {
            candidates(family, n, cfg)?.count() as u128
        } else {
            sum
        };
        let closed = closed_form_count(family, n)?;
        writeln!(out, "{streamed} = {closed}").map_err(io_err)?;
        if streamed != closed {
            return Err(Failure::Verify(format!("stream count {streamed} differs from closed form {closed}")));
        }
        return Ok(());
    }
    for c in candidates(family, n, cfg)? {
        let label = c.label3().map(|l| format!(" [{l}]")).unwrap_or_default();
        writeln!(out, "{c}{label}: max({})", c.schema(n).join(", ")).map_err(io_err)?;
    }
    Ok(())
}
