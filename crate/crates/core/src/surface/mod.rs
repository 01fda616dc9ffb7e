//! Parametric and implicit surfaces with derivatives to second order.
//!
//! Orientation: a parametric chart's unit normal is `σ_u × σ_v` normalized;
//! an implicit surface's unit normal is `∇f / |∇f|`. Every sign-sensitive
//! quantity downstream (normal curvature, geodesic torsion) inherits it.

mod catalog;
mod expression;
mod spec;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::vec3::{Sym3, Vec3};

pub use self::catalog::{Catalog, CatalogChart, CatalogLevelSet};
pub use self::expression::{ExpressionChart, ExpressionLevelSet};
pub use self::spec::SurfaceSpec;
pub(crate) use self::spec::constant;

/// Default regularity threshold for `|σ_u × σ_v|` and `|∇f|`.
pub const DEFAULT_EPS_REG: f64 = 1e-10;

/// Amount by which chart poles are cut out of the default domains.
pub const POLE_MARGIN: f64 = 1e-6;

/// Position and partial derivatives of a chart up to second order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartJet {
    pub point: Vec3,
    pub du: Vec3,
    pub dv: Vec3,
    pub duu: Vec3,
    pub duv: Vec3,
    pub dvv: Vec3,
}

/// Rectangular parameter domain with optional periodic wrap per parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamDomain {
    pub u: (f64, f64),
    pub v: (f64, f64),
    pub periodic_u: bool,
    pub periodic_v: bool,
}

fn wrap(x: f64, (lo, hi): (f64, f64)) -> f64 {
    let period = hi - lo;
    let w = lo + (x - lo).rem_euclid(period);
    // rem_euclid can round up to exactly `period`.
    if w >= hi {
        lo
    } else {
        w
    }
}

impl ParamDomain {
    pub fn new(u: (f64, f64), v: (f64, f64)) -> Self {
        ParamDomain {
            u,
            v,
            periodic_u: false,
            periodic_v: false,
        }
    }

    pub fn periodic(mut self, u: bool, v: bool) -> Self {
        self.periodic_u = u;
        self.periodic_v = v;
        self
    }

    /// Wrap periodic parameters into their fundamental interval.
    pub fn wrap(&self, u: f64, v: f64) -> (f64, f64) {
        let u = if self.periodic_u { wrap(u, self.u) } else { u };
        let v = if self.periodic_v { wrap(v, self.v) } else { v };
        (u, v)
    }

    /// Whether `(u, v)` lies in the domain once periodic parameters are wrapped.
    pub fn contains(&self, u: f64, v: f64) -> bool {
        let inside = |x: f64, (lo, hi): (f64, f64), periodic: bool| {
            x.is_finite() && (periodic || (lo..=hi).contains(&x))
        };
        inside(u, self.u, self.periodic_u) && inside(v, self.v, self.periodic_v)
    }
}

impl fmt::Display for ParamDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |b: bool| if b { " (periodic)" } else { "" };
        write!(
            f,
            "u ∈ [{}, {}]{}, v ∈ [{}, {}]{}",
            self.u.0,
            self.u.1,
            p(self.periodic_u),
            self.v.0,
            self.v.1,
            p(self.periodic_v)
        )
    }
}

/// A chart `σ(u, v)` with analytic derivatives.
pub trait ParametricSurface: Send + Sync + fmt::Debug {
    fn domain(&self) -> ParamDomain;

    /// Unchecked jet at `(u, v)`; callers normally go through [`chart_jet`].
    fn jet(&self, u: f64, v: f64) -> Result<ChartJet>;

    fn eps_reg(&self) -> f64 {
        DEFAULT_EPS_REG
    }

    fn describe(&self) -> String;
}

/// Jet at `(u, v)` after periodic wrapping, with regularity and domain checks.
pub fn chart_jet(surface: &dyn ParametricSurface, u: f64, v: f64) -> Result<ChartJet> {
    let domain = surface.domain();
    let (u, v) = domain.wrap(u, v);
    let jet = surface.jet(u, v)?;
    let measure = jet.du.cross(jet.dv).norm();
    let threshold = surface.eps_reg();
    if !(measure > threshold) {
        return Err(Error::Irregular {
            at: format!("(u, v) = ({u}, {v})"),
            measure,
            threshold,
        });
    }
    if !domain.contains(u, v) {
        return Err(Error::OutOfDomain {
            u,
            v,
            domain: domain.to_string(),
        });
    }
    Ok(jet)
}

/// First fundamental form coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FirstForm {
    /// `EG - F²`.
    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    /// `E a² + 2F a b + G b²`.
    pub fn quadratic(&self, a: f64, b: f64) -> f64 {
        self.e * a * a + 2.0 * self.f * a * b + self.g * b * b
    }
}

pub fn first_form(jet: &ChartJet) -> FirstForm {
    FirstForm {
        e: jet.du.dot(jet.du),
        f: jet.du.dot(jet.dv),
        g: jet.dv.dot(jet.dv),
    }
}

/// `σ_u × σ_v / |σ_u × σ_v|`.
pub fn unit_normal(jet: &ChartJet) -> Result<Vec3> {
    let n = jet.du.cross(jet.dv);
    let len = n.norm();
    if !(len > DEFAULT_EPS_REG) {
        return Err(Error::Irregular {
            at: format!("point {:?}", jet.point),
            measure: len,
            threshold: DEFAULT_EPS_REG,
        });
    }
    Ok(n / len)
}

/// Chart partials `(U_u, U_v)` of the unit normal, by the quotient rule on
/// `n = σ_u × σ_v`: `U_x = (n_x - U (U·n_x)) / |n|`.
pub fn normal_derivatives_of(jet: &ChartJet) -> Result<(Vec3, Vec3)> {
    let n = jet.du.cross(jet.dv);
    let len = n.norm();
    if !(len > DEFAULT_EPS_REG) {
        return Err(Error::Irregular {
            at: format!("point {:?}", jet.point),
            measure: len,
            threshold: DEFAULT_EPS_REG,
        });
    }
    let unit = n / len;
    let n_u = jet.duu.cross(jet.dv) + jet.du.cross(jet.duv);
    let n_v = jet.duv.cross(jet.dv) + jet.du.cross(jet.dvv);
    let project = |w: Vec3| (w - unit * unit.dot(w)) / len;
    Ok((project(n_u), project(n_v)))
}

pub fn normal_derivatives(surface: &dyn ParametricSurface, u: f64, v: f64) -> Result<(Vec3, Vec3)> {
    normal_derivatives_of(&chart_jet(surface, u, v)?)
}

/// Value, gradient and Hessian of a scalar field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicitJet {
    pub value: f64,
    pub gradient: Vec3,
    pub hessian: Sym3,
}

impl ImplicitJet {
    /// `∇f / |∇f|`, failing when the gradient is below `eps`.
    pub fn unit_normal(&self, eps: f64) -> Result<Vec3> {
        let len = self.gradient.norm();
        if !(len > eps) {
            return Err(Error::VanishingGradient {
                at: "queried point".into(),
                measure: len,
            });
        }
        Ok(self.gradient / len)
    }

    /// Directional derivative of the unit normal along `w`:
    /// `(H w - U (U·H w)) / |∇f|`.
    pub fn normal_derivative(&self, w: Vec3) -> Vec3 {
        let len = self.gradient.norm();
        let unit = self.gradient / len;
        let hw = self.hessian.mul_vec(w);
        (hw - unit * unit.dot(hw)) / len
    }
}

/// A level set `f(x, y, z) = 0`.
pub trait ImplicitSurface: Send + Sync + fmt::Debug {
    fn jet(&self, p: Vec3) -> Result<ImplicitJet>;

    fn eps_reg(&self) -> f64 {
        DEFAULT_EPS_REG
    }

    fn describe(&self) -> String;
}

pub fn implicit_jet(surface: &dyn ImplicitSurface, p: Vec3) -> Result<ImplicitJet> {
    if !p.is_finite() {
        return Err(Error::invalid(format!("non-finite point {p:?}")));
    }
    surface.jet(p)
}

/// Maximum Newton iterations in [`project_to_implicit`].
pub const PROJECTION_MAX_ITER: usize = 8;

/// Newton projection along the gradient onto `f = 0`:
/// `p ← p - f ∇f / |∇f|²`, at most [`PROJECTION_MAX_ITER`] iterations.
///
/// Returns the projected point and the iteration count.
pub fn project_to_implicit_counted(
    surface: &dyn ImplicitSurface,
    p: Vec3,
    tol: f64,
) -> Result<(Vec3, usize)> {
    let mut p = p;
    let mut jet = implicit_jet(surface, p)?;
    for iter in 0..=PROJECTION_MAX_ITER {
        let g2 = jet.gradient.norm_squared();
        if !(g2.sqrt() > surface.eps_reg()) {
            return Err(Error::VanishingGradient {
                at: format!("{p:?}"),
                measure: g2.sqrt(),
            });
        }
        if jet.value.abs() <= tol {
            return Ok((p, iter));
        }
        if iter == PROJECTION_MAX_ITER {
            break;
        }
        p -= jet.gradient * (jet.value / g2);
        jet = implicit_jet(surface, p)?;
    }
    Err(Error::ProjectionDiverged {
        iterations: PROJECTION_MAX_ITER,
        residual: jet.value.abs(),
    })
}

pub fn project_to_implicit(surface: &dyn ImplicitSurface, p: Vec3, tol: f64) -> Result<Vec3> {
    project_to_implicit_counted(surface, p, tol).map(|(p, _)| p)
}

/// Either surface representation.
#[derive(Debug, Clone)]
pub enum Surface {
    Parametric(Arc<dyn ParametricSurface>),
    Implicit(Arc<dyn ImplicitSurface>),
}

impl Surface {
    pub fn describe(&self) -> String {
        match self {
            Surface::Parametric(s) => s.describe(),
            Surface::Implicit(s) => s.describe(),
        }
    }

    pub fn orientation(&self) -> &'static str {
        match self {
            Surface::Parametric(_) => PARAMETRIC_ORIENTATION,
            Surface::Implicit(_) => IMPLICIT_ORIENTATION,
        }
    }
}

pub const PARAMETRIC_ORIENTATION: &str = "U = (σ_u × σ_v)/|σ_u × σ_v|";
pub const IMPLICIT_ORIENTATION: &str = "U = ∇f/|∇f|";

