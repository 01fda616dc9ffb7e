//! Isophote direction fields and the verification coefficients Δ, Δ*, Ω.
//!
//! Along an isophote `⟨U, d⟩` is constant, so `⟨U′, d⟩ = 0`. This is linear
//! in the tangent and needs no curvature of the unknown curve:
//! in a chart `g_u u′ + g_v v′ = 0` with `g_x = ⟨U_x, d⟩`; on a level set
//! `t ⊥ ∇f` and `t ⊥ ∇g` with `g = ⟨∇f, d⟩/|∇f|`.

use crate::error::{Error, Result};
use crate::surface::{
    chart_jet, first_form, implicit_jet, normal_derivatives_of, unit_normal, ChartJet, ImplicitJet, ImplicitSurface,
    ParametricSurface,
};
use crate::vec3::Vec3;

/// Which of the two unit directions of the field to follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// Default threshold below which the field's defining gradient counts as zero.
pub const DEFAULT_EPS_SING: f64 = 1e-10;

/// Level-set residual allowed at points handed to the implicit field.
pub const IMPLICIT_POINT_TOL: f64 = 1e-9;

/// Chart jet and the `+` branch of the unit field at `(u, v)`.
pub(crate) fn chart_field(
    surface: &dyn ParametricSurface,
    d: Vec3,
    u: f64,
    v: f64,
    eps_sing: f64,
) -> Result<(ChartJet, (f64, f64))> {
    let jet = chart_jet(surface, u, v)?;
    let (nu, nv) = normal_derivatives_of(&jet)?;
    let (gu, gv) = (nu.dot(d), nv.dot(d));
    if gu.abs() <= eps_sing && gv.abs() <= eps_sing {
        return Err(Error::SingularIsophote {
            at: format!("(u, v) = ({u}, {v}), (g_u, g_v) = ({gu:e}, {gv:e})"),
        });
    }
    let w = first_form(&jet).quadratic(-gv, gu).sqrt();
    Ok((jet, (-gv / w, gu / w)))
}

/// Unit-speed chart direction `(u′, v′) = ±(−g_v, g_u)/W` with
/// `g_x = ⟨U_x, d⟩` and `W = √(E g_v² − 2F g_u g_v + G g_u²)`.
pub fn isophote_direction_parametric(
    surface: &dyn ParametricSurface,
    d: Vec3,
    u: f64,
    v: f64,
    branch: Branch,
    eps_sing: f64,
) -> Result<(f64, f64)> {
    let (_, (du, dv)) = chart_field(surface, d, u, v, eps_sing)?;
    let k = branch.sign();
    Ok((du * k, dv * k))
}

/// `∇g` for `g(p) = ⟨∇f, d⟩/|∇f|`: `H (d − (U·d) U)/|∇f|`.
pub fn level_gradient(jet: &ImplicitJet, d: Vec3) -> Vec3 {
    let len = jet.gradient.norm();
    let unit = jet.gradient / len;
    jet.hessian.mul_vec(d - unit * unit.dot(d)) / len
}

/// Field direction without the on-surface check; used at Runge–Kutta stages.
pub(crate) fn implicit_field(surface: &dyn ImplicitSurface, d: Vec3, p: Vec3, eps_sing: f64) -> Result<Vec3> {
    let jet = implicit_jet(surface, p)?;
    jet.unit_normal(surface.eps_reg())
        .map_err(|_| Error::VanishingGradient {
            at: format!("{p:?}"),
            measure: jet.gradient.norm(),
        })?;
    let c = jet.gradient.cross(level_gradient(&jet, d));
    let len = c.norm();
    if !(len > eps_sing) {
        return Err(Error::SingularIsophote {
            at: format!("{p:?}, |∇f × ∇g| = {len:e}"),
        });
    }
    Ok(c / len)
}

/// Unit tangent `t = ±(∇f × ∇g)/|∇f × ∇g|` at a point of `f = 0`.
pub fn isophote_direction_implicit(
    surface: &dyn ImplicitSurface,
    d: Vec3,
    p: Vec3,
    branch: Branch,
    eps_sing: f64,
) -> Result<Vec3> {
    let value = implicit_jet(surface, p)?.value;
    if !(value.abs() <= IMPLICIT_POINT_TOL) {
        return Err(Error::OffSurface {
            at: format!("{p:?}"),
            residual: value.abs(),
        });
    }
    Ok(implicit_field(surface, d, p, eps_sing)? * branch.sign())
}

/// Normal curvature and geodesic torsion of a unit direction `t` with normal
/// derivative `U′`: `k_n = −U′·t`, `τ_g = −U′·(U × t)`.
pub fn direction_curvatures(normal: Vec3, normal_derivative: Vec3, t: Vec3) -> (f64, f64) {
    (-normal_derivative.dot(t), -normal_derivative.dot(normal.cross(t)))
}

/// The coefficients `(Δ, Δ*)` for the chart direction `(u′, v′)`:
///
/// ```text
/// Δ  = √(EG−F²) k_n ⟨σ_u,d⟩ + E τ_g ⟨σ_v,d⟩ − F τ_g ⟨σ_u,d⟩
/// Δ* = √(EG−F²) k_n ⟨σ_v,d⟩ + F τ_g ⟨σ_v,d⟩ − G τ_g ⟨σ_u,d⟩
/// ```
///
/// with `k_n`, `τ_g` of that direction. Isophotic directions satisfy
/// `Δ u′ + Δ* v′ = 0`.
pub fn delta_coefficients(
    surface: &dyn ParametricSurface,
    d: Vec3,
    u: f64,
    v: f64,
    (du, dv): (f64, f64),
) -> Result<(f64, f64)> {
    let jet = chart_jet(surface, u, v)?;
    let (nu, nv) = normal_derivatives_of(&jet)?;
    let normal = unit_normal(&jet)?;
    let t = jet.du * du + jet.dv * dv;
    let (kn, tg) = direction_curvatures(normal, nu * du + nv * dv, t);
    let ff = first_form(&jet);
    let w0 = ff.det().sqrt();
    let (su, sv) = (jet.du.dot(d), jet.dv.dot(d));
    Ok((
        w0 * kn * su + ff.e * tg * sv - ff.f * tg * su,
        w0 * kn * sv + ff.f * tg * sv - ff.g * tg * su,
    ))
}

/// Closed-form unit direction from the coefficients: `u′ = ±Δ*/W′`,
/// `v′ = ∓Δ/W′`, `W′ = √(E Δ*² − 2F Δ Δ* + G Δ²)`.
pub fn direction_from_delta(
    surface: &dyn ParametricSurface,
    u: f64,
    v: f64,
    (delta, delta_star): (f64, f64),
) -> Result<(f64, f64)> {
    let ff = first_form(&chart_jet(surface, u, v)?);
    let w = ff.quadratic(delta_star, -delta).sqrt();
    if !(w > 0.0) {
        return Err(Error::SingularIsophote {
            at: format!("(u, v) = ({u}, {v}), Δ = Δ* = 0"),
        });
    }
    Ok((delta_star / w, -delta / w))
}

/// `Ω = k_n d + τ_g (d × ∇f)/|∇f|` for the unit direction `t`. Isophotic
/// directions satisfy `Ω·t = 0`, hence `t ∥ ∇f × Ω`.
pub fn omega_coefficients(surface: &dyn ImplicitSurface, d: Vec3, p: Vec3, t: Vec3) -> Result<Vec3> {
    let jet = implicit_jet(surface, p)?;
    let normal = jet.unit_normal(surface.eps_reg())?;
    let (kn, tg) = direction_curvatures(normal, jet.normal_derivative(t), t);
    Ok(d * kn + d.cross(normal) * tg)
}
