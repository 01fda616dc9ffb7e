//! Frenet and Darboux apparatuses along unit-speed curves.
//!
//! Darboux frame `{T, V, U}` with `V = U × T`:
//!
//! ```text
//! T′ =          k_g V + k_n U
//! V′ = −k_g T         + τ_g U
//! U′ = −k_n T − τ_g V
//! ```
//!
//! The normal angle is the signed `θ = atan2(k_n, k_g)`, so that
//! `k_n = κ sin θ`, `k_g = κ cos θ` and `τ_g = τ − θ′`.

mod arclength;
mod curve;
mod onsurface;

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::derivative;
use crate::vec3::Vec3;

pub use self::arclength::{resample_unit_speed, ArclengthCurve, ArclengthMap, ARCLENGTH_TOL, MIN_SPEED};
pub use self::curve::{CurveJet, ExpressionCurve, SampleGrid, SampledCurve, SpaceCurve, UnitSpeedCurve};
pub use self::onsurface::{
    ChartCurve, ChartPath, CurveOnSurface, EmbeddedCurve, ExpressionPath, PathJet, SurfacePoint, ON_SURFACE_TOL,
};

/// Curvature below which the Frenet frame is undefined.
pub const EPS_KAPPA: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetFrame {
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
    pub kappa: f64,
    pub tau: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DarbouxFrame {
    pub t: Vec3,
    pub v: Vec3,
    pub u: Vec3,
    pub kg: f64,
    pub kn: f64,
    pub tg: f64,
}

impl DarbouxFrame {
    /// `(k_g, k_n, τ_g)` packed for stencils.
    pub fn scalars(&self) -> Vec3 {
        Vec3::new(self.kg, self.kn, self.tg)
    }
}

/// Frenet frame from a curve jet.
pub fn frenet_at(jet: &CurveJet, s: f64) -> Result<FrenetFrame> {
    let kappa = jet.d2.norm();
    if !(kappa > EPS_KAPPA) {
        return Err(Error::FrenetUndefined { s, curvature: kappa });
    }
    let t = jet.d1;
    let n = jet.d2 / kappa;
    Ok(FrenetFrame {
        t,
        n,
        b: t.cross(n),
        kappa,
        tau: t.cross(jet.d2).dot(jet.d3) / (kappa * kappa),
    })
}

pub fn frenet(c: &dyn UnitSpeedCurve, s: f64) -> Result<FrenetFrame> {
    frenet_at(&c.jet(s)?, s)
}

/// Darboux frame from a surface point; `τ_g = −U′·V`.
pub fn darboux_at(p: &SurfacePoint) -> DarbouxFrame {
    let t = p.d1;
    let u = p.normal;
    let v = u.cross(t);
    DarbouxFrame {
        t,
        v,
        u,
        kg: p.d2.dot(v),
        kn: p.d2.dot(u),
        tg: -p.normal_derivative.dot(v),
    }
}

pub fn darboux(c: &CurveOnSurface, s: f64) -> Result<DarbouxFrame> {
    Ok(darboux_at(&c.surface_point(s)?))
}

/// Arclength derivatives `(k_g′, k_n′, τ_g′)` by a 5-point stencil.
pub fn darboux_derivatives(c: &CurveOnSurface, s: f64) -> Result<Vec3> {
    let h = c.stencil_step();
    derivative(|x| Ok(darboux(c, x)?.scalars()), s, 0.0, c.length(), h)
}

/// θ(s) with the residuals of `k_n = κ sin θ`, `k_g = κ cos θ` and `τ_g = τ − θ′`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalAngleSeries {
    pub s: Vec<f64>,
    pub theta: Vec<f64>,
    pub theta_prime: Vec<f64>,
    pub r1: Vec<f64>,
    pub r2: Vec<f64>,
    pub r3: Vec<f64>,
}

/// Shift each angle by a multiple of 2π so consecutive values differ by at most π.
pub fn unwrap_angles(theta: &mut [f64]) {
    for i in 1..theta.len() {
        let jump = theta[i] - theta[i - 1];
        if jump.abs() > PI {
            theta[i] -= 2.0 * PI * (jump / (2.0 * PI)).round();
        }
    }
}

pub fn normal_angle_series(c: &CurveOnSurface, grid: &SampleGrid) -> Result<NormalAngleSeries> {
    let n = grid.len();
    let mut out = NormalAngleSeries {
        s: grid.values().to_vec(),
        theta: Vec::with_capacity(n),
        theta_prime: Vec::with_capacity(n),
        r1: Vec::with_capacity(n),
        r2: Vec::with_capacity(n),
        r3: Vec::with_capacity(n),
    };
    for &s in grid.values() {
        let fr = frenet(c, s)?;
        let d = darboux(c, s)?;
        let dd = darboux_derivatives(c, s)?;
        let theta = d.kn.atan2(d.kg);
        // θ′ from differentiating atan2(k_n, k_g).
        let theta_prime = (d.kg * dd.y - d.kn * dd.x) / (d.kg * d.kg + d.kn * d.kn);
        out.theta.push(theta);
        out.theta_prime.push(theta_prime);
        out.r1.push(d.kn - fr.kappa * theta.sin());
        out.r2.push(d.kg - fr.kappa * theta.cos());
        out.r3.push(d.tg - (fr.tau - theta_prime));
    }
    unwrap_angles(&mut out.theta);
    Ok(out)
}

