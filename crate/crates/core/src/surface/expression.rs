//! Surfaces given as text expressions; jets come from symbolic differentiation.

use super::{ChartJet, ImplicitJet, ImplicitSurface, ParamDomain, ParametricSurface};
use crate::error::Result;
use crate::expr::{parse, Expression};
use crate::vec3::{Sym3, Vec3};

/// Value and the five partials up to second order of one chart coordinate.
#[derive(Debug, Clone)]
struct CoordinateJet {
    value: Expression,
    du: Expression,
    dv: Expression,
    duu: Expression,
    duv: Expression,
    dvv: Expression,
}

impl CoordinateJet {
    fn new(value: Expression) -> Result<Self> {
        let du = value.differentiate("u")?;
        let dv = value.differentiate("v")?;
        Ok(CoordinateJet {
            duu: du.differentiate("u")?,
            duv: du.differentiate("v")?,
            dvv: dv.differentiate("v")?,
            du,
            dv,
            value,
        })
    }

    fn eval(&self, at: &[f64; 2]) -> Result<[f64; 6]> {
        Ok([
            self.value.eval(at)?,
            self.du.eval(at)?,
            self.dv.eval(at)?,
            self.duu.eval(at)?,
            self.duv.eval(at)?,
            self.dvv.eval(at)?,
        ])
    }
}

/// Chart `σ(u, v) = (x(u, v), y(u, v), z(u, v))` from expressions.
#[derive(Debug, Clone)]
pub struct ExpressionChart {
    coords: [CoordinateJet; 3],
    domain: ParamDomain,
    source: String,
}

impl ExpressionChart {
    pub fn new(x: &str, y: &str, z: &str, domain: ParamDomain) -> Result<Self> {
        let vars = ["u", "v"];
        let coords = [
            CoordinateJet::new(parse(x, &vars)?)?,
            CoordinateJet::new(parse(y, &vars)?)?,
            CoordinateJet::new(parse(z, &vars)?)?,
        ];
        let source = format!(
            "param:x={x};y={y};z={z};u={},{};v={},{}",
            domain.u.0, domain.u.1, domain.v.0, domain.v.1
        );
        Ok(ExpressionChart {
            coords,
            domain,
            source,
        })
    }
}

impl ParametricSurface for ExpressionChart {
    fn domain(&self) -> ParamDomain {
        self.domain
    }

    fn jet(&self, u: f64, v: f64) -> Result<ChartJet> {
        let at = [u, v];
        let [x, y, z] = [
            self.coords[0].eval(&at)?,
            self.coords[1].eval(&at)?,
            self.coords[2].eval(&at)?,
        ];
        let col = |k: usize| Vec3::new(x[k], y[k], z[k]);
        Ok(ChartJet {
            point: col(0),
            du: col(1),
            dv: col(2),
            duu: col(3),
            duv: col(4),
            dvv: col(5),
        })
    }

    fn describe(&self) -> String {
        self.source.clone()
    }
}

/// Level set `f(x, y, z) = 0` from an expression.
#[derive(Debug, Clone)]
pub struct ExpressionLevelSet {
    value: Expression,
    gradient: [Expression; 3],
    /// xx, xy, xz, yy, yz, zz
    hessian: [Expression; 6],
    source: String,
}

impl ExpressionLevelSet {
    pub fn new(f: &str) -> Result<Self> {
        let value = parse(f, &["x", "y", "z"])?;
        let gradient = [
            value.differentiate("x")?,
            value.differentiate("y")?,
            value.differentiate("z")?,
        ];
        let hessian = [
            gradient[0].differentiate("x")?,
            gradient[0].differentiate("y")?,
            gradient[0].differentiate("z")?,
            gradient[1].differentiate("y")?,
            gradient[1].differentiate("z")?,
            gradient[2].differentiate("z")?,
        ];
        Ok(ExpressionLevelSet {
            value,
            gradient,
            hessian,
            source: format!("implicit:f={f}"),
        })
    }
}

impl ImplicitSurface for ExpressionLevelSet {
    fn jet(&self, p: Vec3) -> Result<ImplicitJet> {
        let at = p.to_array();
        let g = |k: usize| self.gradient[k].eval(&at);
        let h = |k: usize| self.hessian[k].eval(&at);
        Ok(ImplicitJet {
            value: self.value.eval(&at)?,
            gradient: Vec3::new(g(0)?, g(1)?, g(2)?),
            hessian: Sym3 {
                xx: h(0)?,
                xy: h(1)?,
                xz: h(2)?,
                yy: h(3)?,
                yz: h(4)?,
                zz: h(5)?,
            },
        })
    }

    fn describe(&self) -> String {
        self.source.clone()
    }
}
