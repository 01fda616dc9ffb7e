//! The `darboux` command line.
//!
//! Exit status: 0 on success, 1 on usage errors (bad flags, malformed specs,
//! I/O), 2 on domain errors reported by the library.

mod args;
mod curve_spec;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::Parser;
use thiserror::Error;

use self::args::{Cli, Command, CurveArgs, Format, TraceArgs};
use crate::classify::{classify_report, Tolerances};
use crate::frames::{SampleGrid, UnitSpeedCurve};
use crate::output::{frame_records, write_frames_csv, write_json, write_trace_csv, write_trace_obj};
use crate::surface::{Catalog, Surface, SurfaceSpec};
use crate::trace::{find_seed, trace_isophote, Seed, TraceConfig, TraceResult, DEFAULT_EPS_SING};
use crate::vec3::Vec3;

pub use self::curve_spec::{build_curve, curve_from_specs, CurveSpec};

/// Environment variable overriding the singularity threshold ε_sing.
pub const EPS_SING_ENV: &str = "DARBOUX_EPS_SING";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Usage(_) | CliError::Io { .. } => 1,
        }
    }
}

pub(crate) fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Parse `argv` (including the program name) and run the command.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => 1,
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Frames(a) => frames(a, stdout),
        Command::Classify { curve, c } => classify(curve, c, stdout),
        Command::Trace(a) => trace(a, false, stdout),
        Command::TraceImplicit(a) => trace(a, true, stdout),
        Command::SeedFind(a) => seed_find(a, stdout),
        Command::Catalog => catalog(stdout),
    }
}

/// Write through `body` to `path`, or to `stdout` when no path is given.
fn emit(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<(), CliError> {
    fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.display().to_string();
        move |source| CliError::Io { path, source }
    }
    match path {
        Some(path) => {
            let file = File::create(path).map_err(io(path))?;
            let mut w = BufWriter::new(file);
            body(&mut w).map_err(io(path))?;
            w.flush().map_err(io(path))
        }
        None => body(stdout).map_err(io(Path::new("<stdout>"))),
    }
}

fn format_for(format: Option<Format>, out: Option<&Path>, default: Format) -> Format {
    format
        .or_else(|| {
            out.and_then(|p| p.extension())
                .and_then(|e| e.to_str())
                .and_then(|e| match e.to_ascii_lowercase().as_str() {
                    "csv" => Some(Format::Csv),
                    "json" => Some(Format::Json),
                    "obj" => Some(Format::Obj),
                    _ => None,
                })
        })
        .unwrap_or(default)
}

fn frames(a: args::FramesArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let curve = build_curve(&a.curve)?;
    let grid = SampleGrid::uniform(0.0, curve.length(), a.curve.samples)?;
    let records = frame_records(&curve, &grid)?;
    match format_for(a.format, a.curve.out.as_deref(), Format::Csv) {
        Format::Csv => emit(a.curve.out.as_deref(), stdout, |w| write_frames_csv(&records, w)),
        Format::Json => emit(a.curve.out.as_deref(), stdout, |w| write_json(&records, w)),
        Format::Obj => Err(usage("frames output supports csv and json")),
    }
}

fn classify(curve: CurveArgs, c: f64, stdout: &mut dyn Write) -> Result<(), CliError> {
    if !(c.is_finite() && c != 0.0) {
        return Err(usage(format!("--c must be a non-zero number, got {c}")));
    }
    let built = build_curve(&curve)?;
    let grid = SampleGrid::uniform(0.0, built.length(), curve.samples)?;
    let report = classify_report(&built, &grid, &Tolerances::for_curve(&built), c)?;
    emit(curve.out.as_deref(), stdout, |w| write_json(&report, w))
}

pub(crate) fn parse_reals(text: &str, what: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|t| {
            crate::surface::constant(t)
                .map_err(|e| usage(format!("{what}: cannot read '{}': {e}", t.trim())))
        })
        .collect()
}

fn parse_axis(text: &str) -> Result<Vec3, CliError> {
    let v = parse_reals(text, "--axis")?;
    let [x, y, z] = v[..] else {
        return Err(usage(format!("--axis needs three components, got {}", v.len())));
    };
    Vec3::new(x, y, z)
        .try_normalize()
        .filter(|d| d.is_finite())
        .ok_or_else(|| usage("--axis must be a non-zero finite vector"))
}

fn parse_angle(deg: f64) -> Result<f64, CliError> {
    if !(0.0..=180.0).contains(&deg) {
        return Err(usage(format!("--angle must lie in [0, 180] degrees, got {deg}")));
    }
    Ok(deg.to_radians())
}

fn parse_seed(text: &str, implicit: bool) -> Result<Seed, CliError> {
    let v = parse_reals(text, "--seed")?;
    match (implicit, &v[..]) {
        (false, &[u, v]) => Ok(Seed::Chart { u, v }),
        (true, &[x, y, z]) => Ok(Seed::Point(Vec3::new(x, y, z))),
        (false, _) => Err(usage("--seed takes chart coordinates 'u,v' for trace")),
        (true, _) => Err(usage("--seed takes a point 'x,y,z' for trace-implicit")),
    }
}

/// `a:b:n` in degrees, `n` evenly spaced angles from `a` to `b` inclusive.
fn parse_family(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(usage(format!("--family must be 'a:b:n', got '{text}'")));
    };
    let bad = || usage(format!("--family must be 'a:b:n', got '{text}'"));
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(usage("--family needs at least one angle"));
    }
    let step = if n > 1 { (b - a) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(|k| parse_angle(a + step * k as f64).map(|_| a + step * k as f64)).collect()
}

fn eps_sing(flag: Option<f64>) -> Result<f64, CliError> {
    if let Some(eps) = flag {
        return Ok(eps);
    }
    match std::env::var(EPS_SING_ENV) {
        Ok(text) => text
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|e| e.is_finite() && *e >= 0.0)
            .ok_or_else(|| usage(format!("{EPS_SING_ENV} must be a non-negative number, got '{text}'"))),
        Err(_) => Ok(DEFAULT_EPS_SING),
    }
}

fn surface_for(spec: &str, implicit: bool) -> Result<Surface, CliError> {
    let spec = SurfaceSpec::parse(spec).map_err(usage)?;
    if implicit {
        Ok(Surface::Implicit(spec.implicit().map_err(usage)?))
    } else {
        Ok(Surface::Parametric(spec.parametric().map_err(usage)?))
    }
}

fn run_one(surface: &Surface, d: Vec3, phi: f64, guess: Seed, exact: bool, cfg: &TraceConfig) -> crate::Result<TraceResult> {
    let seed = if exact { guess } else { find_seed(surface, d, phi, guess)? };
    trace_isophote(surface, d, phi, seed, cfg)
}

fn write_trace(trace: &TraceResult, format: Format, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    emit(out, stdout, |w| match format {
        Format::Csv => write_trace_csv(trace, w),
        Format::Json => write_json(trace, w),
        Format::Obj => write_trace_obj(trace, w),
    })
}

fn family_path(out: &Path, k: usize) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("trace");
    let name = match out.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_{k:03}.{ext}"),
        None => format!("{stem}_{k:03}"),
    };
    out.with_file_name(name)
}

fn trace(a: TraceArgs, implicit: bool, stdout: &mut dyn Write) -> Result<(), CliError> {
    let surface = surface_for(&a.surface, implicit)?;
    let d = parse_axis(&a.axis)?;
    let guess = parse_seed(&a.seed, implicit)?;
    let cfg = TraceConfig {
        step: a.step,
        length: a.length,
        branch: a.branch.into(),
        closure_tol: a.closure_tol,
        eps_sing: eps_sing(a.eps_sing)?,
        projection_tol: a.projection_tol,
        project_isophote: a.project_isophote,
    };
    cfg.validate().map_err(usage)?;
    let format = format_for(a.format, a.out.as_deref(), Format::Csv);

    let Some(family) = a.family.as_deref() else {
        let angle = a.angle.ok_or_else(|| usage("--angle or --family is required"))?;
        let result = run_one(&surface, d, parse_angle(angle)?, guess, a.exact_seed, &cfg)?;
        return write_trace(&result, format, a.out.as_deref(), stdout);
    };
    let angles = parse_family(family)?;
    let out = a.out.as_deref().ok_or_else(|| usage("--family writes one file per angle and needs --out"))?;
    let results: Vec<crate::Result<TraceResult>> = std::thread::scope(|scope| {
        let handles: Vec<_> = angles
            .iter()
            .map(|&deg| {
                let surface = &surface;
                let cfg = &cfg;
                scope.spawn(move || run_one(surface, d, deg.to_radians(), guess, a.exact_seed, cfg))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("trace thread panicked")).collect()
    });
    let mut first_error = None;
    writeln!(stdout, "index,angle_deg,status,samples,max_level_drift,path").map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })?;
    for (k, (deg, result)) in angles.iter().zip(results).enumerate() {
        let path = family_path(out, k);
        let line = match result {
            Ok(trace) => {
                write_trace(&trace, format, Some(&path), stdout)?;
                format!(
                    "{k},{},{},{},{},{}",
                    crate::output::format_g17(*deg),
                    trace.termination.name(),
                    trace.samples.len(),
                    crate::output::format_g17(trace.max_level_drift()),
                    path.display()
                )
            }
            Err(e) => {
                let line = format!("{k},{},failed: {e},0,,", crate::output::format_g17(*deg));
                first_error.get_or_insert(e);
                line
            }
        };
        writeln!(stdout, "{line}").map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })?;
    }
    match first_error {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn seed_find(a: args::SeedArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let implicit = parse_reals(&a.seed, "--seed")?.len() == 3;
    let surface = surface_for(&a.surface, implicit)?;
    let d = parse_axis(&a.axis)?;
    let phi = parse_angle(a.angle)?;
    let seed = find_seed(&surface, d, phi, parse_seed(&a.seed, implicit)?)?;
    let residual = match (&surface, seed) {
        (Surface::Parametric(s), Seed::Chart { u, v }) => {
            crate::surface::unit_normal(&crate::surface::chart_jet(s.as_ref(), u, v)?)?.dot(d) - phi.cos()
        }
        (Surface::Implicit(s), Seed::Point(p)) => {
            crate::surface::implicit_jet(s.as_ref(), p)?.unit_normal(s.eps_reg())?.dot(d) - phi.cos()
        }
        _ => unreachable!("find_seed keeps the seed kind"),
    };
    let value = serde_json::json!({ "seed": seed, "residual": residual });
    emit(None, stdout, |w| write_json(&value, w))
}

fn catalog(stdout: &mut dyn Write) -> Result<(), CliError> {
    emit(None, stdout, |w| {
        for name in Catalog::NAMES {
            let c = Catalog::from_name(name, &[]).expect("catalog defaults are valid");
            let (chart, implicit) = c.formulas();
            writeln!(w, "builtin:{name}\n  default: {}\n  chart:    {chart}\n  implicit: {implicit}", c.describe())?;
        }
        Ok(())
    })
}

/// Convenience for `main`: run with the process arguments and standard streams.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
