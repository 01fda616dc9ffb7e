//! Curves lying on a surface: a chart path `(u(s), v(s))` or a space curve on a level set.

use std::fmt;
use std::sync::Arc;

use super::arclength::{ArclengthMap, MIN_SPEED};
use super::curve::{check_arclength, third_by_stencil, CurveJet, UnitSpeedCurve};
use crate::error::{Error, Result};
use crate::expr::{parse, Expression};
use crate::numeric::STENCIL_STEP;
use crate::surface::{
    chart_jet, first_form, implicit_jet, normal_derivatives_of, unit_normal, ChartJet, ImplicitSurface,
    ParametricSurface, IMPLICIT_ORIENTATION, PARAMETRIC_ORIENTATION,
};
use crate::vec3::Vec3;

/// Tolerance for curves claimed to be unit speed or to lie on a level set.
pub const ON_SURFACE_TOL: f64 = 1e-9;

/// Samples used to validate curve claims at construction.
const VALIDATION_SAMPLES: usize = 65;

/// Chart coordinates and their first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathJet {
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
    pub ddu: f64,
    pub ddv: f64,
}

/// A path in a chart's parameter plane, in an arbitrary parametrization.
pub trait ChartPath: Send + Sync + fmt::Debug {
    fn domain(&self) -> (f64, f64);
    fn jet(&self, t: f64) -> Result<PathJet>;
    fn describe(&self) -> String;
}

/// `(u(s), v(s))` from expressions in `s`.
#[derive(Debug, Clone)]
pub struct ExpressionPath {
    u: [Expression; 3],
    v: [Expression; 3],
    domain: (f64, f64),
    source: String,
}

impl ExpressionPath {
    pub fn new(u: &str, v: &str, domain: (f64, f64)) -> Result<Self> {
        if !(domain.0 < domain.1) {
            return Err(Error::invalid(format!("empty curve range [{}, {}]", domain.0, domain.1)));
        }
        let derivs = |src: &str| -> Result<[Expression; 3]> {
            let e = parse(src, &["s"])?;
            let d1 = e.differentiate("s")?;
            let d2 = d1.differentiate("s")?;
            Ok([e, d1, d2])
        };
        Ok(ExpressionPath {
            u: derivs(u)?,
            v: derivs(v)?,
            domain,
            source: format!("param:u={u};v={v}"),
        })
    }
}

impl ChartPath for ExpressionPath {
    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn jet(&self, t: f64) -> Result<PathJet> {
        let at = [t];
        Ok(PathJet {
            u: self.u[0].eval(&at)?,
            v: self.v[0].eval(&at)?,
            du: self.u[1].eval(&at)?,
            dv: self.v[1].eval(&at)?,
            ddu: self.u[2].eval(&at)?,
            ddv: self.v[2].eval(&at)?,
        })
    }

    fn describe(&self) -> String {
        self.source.clone()
    }
}

/// Second-order state of a surface curve at one arclength value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub point: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    /// Unit normal `U` and its arclength derivative `U′`.
    pub normal: Vec3,
    pub normal_derivative: Vec3,
    /// Chart coordinates with arclength derivatives, for chart curves.
    pub chart: Option<PathJet>,
}

/// `γ(s) = σ(u(s), v(s))` parametrized by arclength.
#[derive(Debug, Clone)]
pub struct ChartCurve {
    surface: Arc<dyn ParametricSurface>,
    path: Arc<dyn ChartPath>,
    map: Option<ArclengthMap>,
}

fn path_velocity(surface: &dyn ParametricSurface, path: &dyn ChartPath, t: f64) -> Result<(ChartJet, PathJet)> {
    let p = path.jet(t)?;
    Ok((chart_jet(surface, p.u, p.v)?, p))
}

impl ChartCurve {
    /// A path already parametrized by arclength, so `E u′² + 2F u′v′ + G v′² = 1`
    /// is checked on a sample of points.
    pub fn unit_speed(surface: Arc<dyn ParametricSurface>, path: Arc<dyn ChartPath>) -> Result<Self> {
        let (t0, t1) = path.domain();
        let curve = ChartCurve {
            surface,
            path,
            map: None,
        };
        for i in 0..VALIDATION_SAMPLES {
            let s = (t1 - t0) * i as f64 / (VALIDATION_SAMPLES - 1) as f64;
            let r = curve.unit_speed_residual(s)?;
            if !(r <= ON_SURFACE_TOL) {
                return Err(Error::invalid(format!(
                    "chart path is not unit speed at s = {s} (residual {r:e}); reparametrize it"
                )));
            }
        }
        Ok(curve)
    }

    /// Reparametrize an arbitrary regular path by arclength with an `n`-knot table.
    pub fn reparametrize(surface: Arc<dyn ParametricSurface>, path: Arc<dyn ChartPath>, n: usize) -> Result<Self> {
        let speed = |t: f64| -> Result<f64> {
            let (c, p) = path_velocity(surface.as_ref(), path.as_ref(), t)?;
            Ok((c.du * p.du + c.dv * p.dv).norm())
        };
        let map = ArclengthMap::build(&speed, path.domain(), n)?;
        Ok(ChartCurve {
            surface,
            path,
            map: Some(map),
        })
    }

    pub fn surface(&self) -> &Arc<dyn ParametricSurface> {
        &self.surface
    }

    pub fn path(&self) -> &Arc<dyn ChartPath> {
        &self.path
    }

    pub fn length(&self) -> f64 {
        match &self.map {
            Some(m) => m.length(),
            None => {
                let (t0, t1) = self.path.domain();
                t1 - t0
            }
        }
    }

    /// Chart jet and arclength derivatives of `(u, v)` at `s`.
    pub fn chart_state(&self, s: f64) -> Result<(ChartJet, PathJet)> {
        check_arclength(s, self.length())?;
        let (t0, _) = self.path.domain();
        let Some(map) = &self.map else {
            return path_velocity(self.surface.as_ref(), self.path.as_ref(), t0 + s.clamp(0.0, self.length()));
        };
        let speed = |t: f64| -> Result<f64> {
            let (c, p) = path_velocity(self.surface.as_ref(), self.path.as_ref(), t)?;
            Ok((c.du * p.du + c.dv * p.dv).norm())
        };
        let t = map.param(&speed, s)?;
        let (c, p) = path_velocity(self.surface.as_ref(), self.path.as_ref(), t)?;
        let r1 = c.du * p.du + c.dv * p.dv;
        let r2 = c.duu * (p.du * p.du)
            + c.duv * (2.0 * p.du * p.dv)
            + c.dvv * (p.dv * p.dv)
            + c.du * p.ddu
            + c.dv * p.ddv;
        let sp2 = r1.norm_squared();
        let sp = sp2.sqrt();
        if !(sp > MIN_SPEED) {
            return Err(Error::VanishingSpeed { t, speed: sp });
        }
        let t1 = 1.0 / sp;
        let t2 = -r1.dot(r2) / (sp2 * sp2);
        Ok((
            c,
            PathJet {
                u: p.u,
                v: p.v,
                du: p.du * t1,
                dv: p.dv * t1,
                ddu: p.ddu * t1 * t1 + p.du * t2,
                ddv: p.ddv * t1 * t1 + p.dv * t2,
            },
        ))
    }

    fn surface_point(&self, s: f64) -> Result<SurfacePoint> {
        let (c, p) = self.chart_state(s)?;
        let (nu, nv) = normal_derivatives_of(&c)?;
        Ok(SurfacePoint {
            point: c.point,
            d1: c.du * p.du + c.dv * p.dv,
            d2: c.duu * (p.du * p.du)
                + c.duv * (2.0 * p.du * p.dv)
                + c.dvv * (p.dv * p.dv)
                + c.du * p.ddu
                + c.dv * p.ddv,
            normal: unit_normal(&c)?,
            normal_derivative: nu * p.du + nv * p.dv,
            chart: Some(p),
        })
    }

    /// `|E u′² + 2F u′v′ + G v′² − 1|`.
    pub fn unit_speed_residual(&self, s: f64) -> Result<f64> {
        let (c, p) = self.chart_state(s)?;
        Ok((first_form(&c).quadratic(p.du, p.dv) - 1.0).abs())
    }
}

/// A unit-speed space curve lying on a level set `f = 0`.
#[derive(Debug, Clone)]
pub struct EmbeddedCurve {
    surface: Arc<dyn ImplicitSurface>,
    curve: Arc<dyn UnitSpeedCurve>,
}

impl EmbeddedCurve {
    /// Checks `|f(γ(s))| ≤ 1e-9` on a sample of points.
    pub fn new(surface: Arc<dyn ImplicitSurface>, curve: Arc<dyn UnitSpeedCurve>) -> Result<Self> {
        let length = curve.length();
        for i in 0..VALIDATION_SAMPLES {
            let s = length * i as f64 / (VALIDATION_SAMPLES - 1) as f64;
            let p = curve.jet(s)?.point;
            let residual = implicit_jet(surface.as_ref(), p)?.value.abs();
            if !(residual <= ON_SURFACE_TOL) {
                return Err(Error::OffSurface {
                    at: format!("s = {s}, point {p:?}"),
                    residual,
                });
            }
        }
        Ok(EmbeddedCurve { surface, curve })
    }

    pub fn surface(&self) -> &Arc<dyn ImplicitSurface> {
        &self.surface
    }

    pub fn curve(&self) -> &Arc<dyn UnitSpeedCurve> {
        &self.curve
    }

    fn surface_point(&self, s: f64) -> Result<SurfacePoint> {
        let j = self.curve.jet(s)?;
        let f = implicit_jet(self.surface.as_ref(), j.point)?;
        Ok(SurfacePoint {
            point: j.point,
            d1: j.d1,
            d2: j.d2,
            normal: f.unit_normal(self.surface.eps_reg())?,
            normal_derivative: f.normal_derivative(j.d1),
            chart: None,
        })
    }
}

/// A unit-speed curve together with the surface it lies on.
#[derive(Debug, Clone)]
pub enum CurveOnSurface {
    Chart(ChartCurve),
    Embedded(EmbeddedCurve),
}

impl CurveOnSurface {
    /// Position, two derivatives, and the surface normal with its derivative.
    pub fn surface_point(&self, s: f64) -> Result<SurfacePoint> {
        match self {
            CurveOnSurface::Chart(c) => c.surface_point(s),
            CurveOnSurface::Embedded(c) => c.surface_point(s),
        }
    }

    /// Unit-speed residual: `E u′² + 2F u′v′ + G v′² − 1` on charts, `| |γ′| − 1 |` otherwise.
    pub fn unit_speed_residual(&self, s: f64) -> Result<f64> {
        match self {
            CurveOnSurface::Chart(c) => c.unit_speed_residual(s),
            CurveOnSurface::Embedded(c) => Ok((c.curve.jet(s)?.d1.norm() - 1.0).abs()),
        }
    }

    pub fn orientation(&self) -> &'static str {
        match self {
            CurveOnSurface::Chart(_) => PARAMETRIC_ORIENTATION,
            CurveOnSurface::Embedded(_) => IMPLICIT_ORIENTATION,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CurveOnSurface::Chart(c) => format!("{} on {}", c.path.describe(), c.surface.describe()),
            CurveOnSurface::Embedded(c) => format!("space curve on {}", c.surface.describe()),
        }
    }
}

impl UnitSpeedCurve for CurveOnSurface {
    fn length(&self) -> f64 {
        match self {
            CurveOnSurface::Chart(c) => c.length(),
            CurveOnSurface::Embedded(c) => c.curve.length(),
        }
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        match self {
            CurveOnSurface::Chart(c) => {
                let p = c.surface_point(s)?;
                let d3 = third_by_stencil(|x| Ok(c.surface_point(x)?.d2), s, c.length())?;
                Ok(CurveJet {
                    point: p.point,
                    d1: p.d1,
                    d2: p.d2,
                    d3,
                })
            }
            CurveOnSurface::Embedded(c) => c.curve.jet(s),
        }
    }

    fn is_sampled(&self) -> bool {
        match self {
            CurveOnSurface::Chart(_) => false,
            CurveOnSurface::Embedded(c) => c.curve.is_sampled(),
        }
    }

    fn stencil_step(&self) -> f64 {
        match self {
            CurveOnSurface::Embedded(c) => c.curve.stencil_step(),
            CurveOnSurface::Chart(_) => STENCIL_STEP,
        }
    }
}
