//! Textual surface specifications:
//!
//! ```text
//! builtin:<name>[?key=value&key=value]
//! param:x=<expr>;y=<expr>;z=<expr>;u=<lo>,<hi>;v=<lo>,<hi>[;periodic=u|v|u,v]
//! implicit:f=<expr>
//! ```

use std::sync::Arc;

use super::{Catalog, ExpressionChart, ExpressionLevelSet, ImplicitSurface, ParamDomain, ParametricSurface};
use crate::error::{Error, Result};
use crate::expr::parse;

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceSpec {
    Builtin(Catalog),
    Param {
        x: String,
        y: String,
        z: String,
        domain: ParamDomain,
    },
    Implicit {
        f: String,
    },
}

/// Evaluate a constant expression such as `-pi/2`.
pub(crate) fn constant(text: &str) -> Result<f64> {
    Ok(parse(text.trim(), &[])?.eval(&[])?)
}

fn range(text: &str, what: &str) -> Result<(f64, f64)> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| Error::invalid(format!("{what} range must be '<lo>,<hi>', got '{text}'")))?;
    let (lo, hi) = (constant(lo)?, constant(hi)?);
    if !(lo < hi) {
        return Err(Error::invalid(format!("{what} range [{lo}, {hi}] is empty")));
    }
    Ok((lo, hi))
}

impl SurfaceSpec {
    pub fn parse(text: &str) -> Result<SurfaceSpec> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("builtin:") {
            let (name, query) = rest.split_once('?').unwrap_or((rest, ""));
            let mut params = Vec::new();
            for pair in query.split('&').filter(|p| !p.is_empty()) {
                let (k, v) = pair
                    .split_once('=')
                    .ok_or_else(|| Error::invalid(format!("malformed parameter '{pair}'")))?;
                params.push((k.trim().to_string(), constant(v)?));
            }
            return Ok(SurfaceSpec::Builtin(Catalog::from_name(name.trim(), &params)?));
        }
        if let Some(rest) = text.strip_prefix("param:") {
            let mut fields = std::collections::BTreeMap::new();
            for part in rest.split(';').filter(|p| !p.trim().is_empty()) {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| Error::invalid(format!("malformed field '{part}'")))?;
                fields.insert(k.trim().to_string(), v.trim().to_string());
            }
            let take = |k: &str| {
                fields
                    .get(k)
                    .cloned()
                    .ok_or_else(|| Error::invalid(format!("param surface is missing '{k}='")))
            };
            for k in fields.keys() {
                if !["x", "y", "z", "u", "v", "periodic"].contains(&k.as_str()) {
                    return Err(Error::invalid(format!("unknown param surface field '{k}'")));
                }
            }
            let periodic = fields.get("periodic").cloned().unwrap_or_default();
            let flags: Vec<&str> = periodic.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            if let Some(bad) = flags.iter().find(|f| **f != "u" && **f != "v") {
                return Err(Error::invalid(format!("periodic flag must be u or v, got '{bad}'")));
            }
            let domain = ParamDomain::new(range(&take("u")?, "u")?, range(&take("v")?, "v")?)
                .periodic(flags.contains(&"u"), flags.contains(&"v"));
            return Ok(SurfaceSpec::Param {
                x: take("x")?,
                y: take("y")?,
                z: take("z")?,
                domain,
            });
        }
        if let Some(rest) = text.strip_prefix("implicit:") {
            let f = rest
                .trim()
                .strip_prefix("f=")
                .ok_or_else(|| Error::invalid("implicit surface must be 'implicit:f=<expr>'"))?;
            // Validate now so errors surface at parse time.
            ExpressionLevelSet::new(f)?;
            return Ok(SurfaceSpec::Implicit { f: f.to_string() });
        }
        Err(Error::invalid(format!(
            "surface spec must start with builtin:, param: or implicit:, got '{text}'"
        )))
    }

    pub fn parametric(&self) -> Result<Arc<dyn ParametricSurface>> {
        match self {
            SurfaceSpec::Builtin(c) => Ok(Arc::new(c.chart())),
            SurfaceSpec::Param { x, y, z, domain } => Ok(Arc::new(ExpressionChart::new(x, y, z, *domain)?)),
            SurfaceSpec::Implicit { .. } => Err(Error::invalid(
                "an implicit surface has no chart; use the implicit tracing/classification path",
            )),
        }
    }

    pub fn implicit(&self) -> Result<Arc<dyn ImplicitSurface>> {
        match self {
            SurfaceSpec::Builtin(c) => Ok(Arc::new(c.level_set())),
            SurfaceSpec::Implicit { f } => Ok(Arc::new(ExpressionLevelSet::new(f)?)),
            SurfaceSpec::Param { .. } => Err(Error::invalid(
                "a param: surface has no implicit form; use the parametric path",
            )),
        }
    }

    pub fn is_implicit_only(&self) -> bool {
        matches!(self, SurfaceSpec::Implicit { .. })
    }

    pub fn is_parametric_only(&self) -> bool {
        matches!(self, SurfaceSpec::Param { .. })
    }
}
