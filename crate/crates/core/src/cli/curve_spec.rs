//! Curve specifications:
//!
//! ```text
//! param:u=<expr in s>;v=<expr in s>   chart path, reparametrized by arclength
//! space:x=<expr>;y=<expr>;z=<expr>    space curve on an implicit surface
//! csv:<path>                          x, y, z columns of a trace CSV
//! ```

use std::path::PathBuf;
use std::sync::Arc;

use super::args::CurveArgs;
use super::{parse_reals, usage, CliError};
use crate::frames::{
    resample_unit_speed, ChartCurve, CurveOnSurface, EmbeddedCurve, ExpressionCurve, ExpressionPath, SampledCurve,
};
use crate::output::read_trace_points;
use crate::surface::SurfaceSpec;

#[derive(Debug, Clone, PartialEq)]
pub enum CurveSpec {
    Param { u: String, v: String },
    Space { x: String, y: String, z: String },
    Csv(PathBuf),
}

fn fields<'a>(text: &'a str, keys: &[&str]) -> Result<Vec<&'a str>, CliError> {
    let mut found = vec![None; keys.len()];
    for part in text.split(';').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| usage(format!("curve spec field '{part}' is not key=value")))?;
        let i = keys
            .iter()
            .position(|key| *key == k.trim())
            .ok_or_else(|| usage(format!("unknown curve spec key '{}', expected {keys:?}", k.trim())))?;
        found[i] = Some(v.trim());
    }
    keys.iter()
        .zip(found)
        .map(|(k, v)| v.ok_or_else(|| usage(format!("curve spec lacks '{k}='"))))
        .collect()
}

impl CurveSpec {
    pub fn parse(text: &str) -> Result<CurveSpec, CliError> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("param:") {
            let f = fields(rest, &["u", "v"])?;
            return Ok(CurveSpec::Param {
                u: f[0].into(),
                v: f[1].into(),
            });
        }
        if let Some(rest) = text.strip_prefix("space:") {
            let f = fields(rest, &["x", "y", "z"])?;
            return Ok(CurveSpec::Space {
                x: f[0].into(),
                y: f[1].into(),
                z: f[2].into(),
            });
        }
        if let Some(rest) = text.strip_prefix("csv:") {
            return Ok(CurveSpec::Csv(PathBuf::from(rest)));
        }
        Err(usage(format!("curve spec must start with param:, space: or csv:, got '{text}'")))
    }
}

/// Build the unit-speed curve described by the command's surface and curve specs.
pub fn build_curve(a: &CurveArgs) -> Result<CurveOnSurface, CliError> {
    let range = match parse_reals(&a.range, "--range")?[..] {
        [lo, hi] => (lo, hi),
        _ => return Err(usage(format!("--range must be 'a,b', got '{}'", a.range))),
    };
    if a.samples < 2 {
        return Err(usage("--samples must be at least 2"));
    }
    curve_from_specs(&a.surface, &a.curve, range, a.knots)
}

/// Build a unit-speed curve from surface and curve spec strings. `range`
/// is the parameter interval of `param:`/`space:` curves and `knots` the
/// size of their arclength table.
pub fn curve_from_specs(surface: &str, curve: &str, range: (f64, f64), knots: usize) -> Result<CurveOnSurface, CliError> {
    let surface = SurfaceSpec::parse(surface).map_err(usage)?;
    if !(range.0 < range.1) {
        return Err(usage(format!("parameter range [{}, {}] is empty", range.0, range.1)));
    }
    match CurveSpec::parse(curve)? {
        CurveSpec::Param { u, v } => {
            let chart = surface.parametric().map_err(usage)?;
            let path = ExpressionPath::new(&u, &v, range).map_err(usage)?;
            Ok(CurveOnSurface::Chart(ChartCurve::reparametrize(chart, Arc::new(path), knots)?))
        }
        CurveSpec::Space { x, y, z } => {
            let level = surface.implicit().map_err(usage)?;
            let raw = ExpressionCurve::new(&x, &y, &z, range).map_err(usage)?;
            let curve = resample_unit_speed(Arc::new(raw), knots)?;
            Ok(CurveOnSurface::Embedded(EmbeddedCurve::new(level, Arc::new(curve))?))
        }
        CurveSpec::Csv(path) => {
            let level = surface.implicit().map_err(usage)?;
            let file = std::fs::File::open(&path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let (h, points) = read_trace_points(std::io::BufReader::new(file)).map_err(usage)?;
            let curve = SampledCurve::new(h, points)?;
            Ok(CurveOnSurface::Embedded(EmbeddedCurve::new(level, Arc::new(curve))?))
        }
    }
}
