//! Isophotic curves: direction fields, seed search and fixed-step RK4 tracing.

mod direction;
mod seed;

use std::ops::{Add, Mul};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{central_derivative, STENCIL_STEP};
use crate::surface::{
    chart_jet, first_form, implicit_jet, normal_derivatives_of, project_to_implicit, unit_normal, ImplicitSurface,
    ParametricSurface, Surface,
};
use crate::vec3::Vec3;

pub use self::direction::{
    delta_coefficients, direction_curvatures, direction_from_delta, isophote_direction_implicit,
    isophote_direction_parametric, level_gradient, omega_coefficients, Branch, DEFAULT_EPS_SING, IMPLICIT_POINT_TOL,
};
pub use self::seed::{find_seed, find_seed_implicit, find_seed_parametric, SEED_MAX_ITER, SEED_TOL};

use self::direction::{chart_field, implicit_field};

/// Largest `|⟨U, d⟩ − cos φ|` accepted at the seed of a trace.
pub const SEED_LEVEL_TOL: f64 = 1e-9;

/// Arclength that must be travelled before closure is tested, in steps.
pub const CLOSURE_MIN_STEPS: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceConfig {
    /// Arclength step `h`.
    pub step: f64,
    /// Maximum arclength `L`.
    pub length: f64,
    pub branch: Branch,
    /// Largest gap between the seed and the end of the refined closing step.
    pub closure_tol: f64,
    pub eps_sing: f64,
    /// Residual `|f|` targeted by the per-step projection of implicit traces.
    pub projection_tol: f64,
    /// Also project implicit steps onto `⟨U, d⟩ = cos φ`.
    pub project_isophote: bool,
}

impl Default for TraceConfig {
    fn default() -> Self {
        TraceConfig {
            step: 1e-3,
            length: 10.0,
            branch: Branch::Plus,
            closure_tol: 1e-6,
            eps_sing: DEFAULT_EPS_SING,
            projection_tol: 1e-12,
            project_isophote: false,
        }
    }
}

impl TraceConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.step) || !positive(self.length) {
            return Err(Error::invalid(format!(
                "step and length must be positive, got h = {}, L = {}",
                self.step, self.length
            )));
        }
        if !positive(self.closure_tol) || !positive(self.projection_tol) || !(self.eps_sing >= 0.0) {
            return Err(Error::invalid("tolerances must be positive"));
        }
        Ok(())
    }
}

/// Where a trace starts: chart coordinates or a point of a level set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Seed {
    Chart { u: f64, v: f64 },
    Point(Vec3),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    LengthReached,
    Closed,
    LeftDomain,
    SingularPoint,
    Error,
}

impl Termination {
    pub fn name(self) -> &'static str {
        match self {
            Termination::LengthReached => "length_reached",
            Termination::Closed => "closed",
            Termination::LeftDomain => "left_domain",
            Termination::SingularPoint => "singular_point",
            Termination::Error => "error",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceSample {
    pub s: f64,
    pub point: Vec3,
    /// Chart coordinates, wrapped into the domain; absent on level sets.
    pub chart: Option<(f64, f64)>,
    pub tangent: Vec3,
    /// `⟨U, d⟩`.
    pub angle_dot: f64,
    pub kg: f64,
    pub kn: f64,
    pub tg: f64,
    /// `|Δu′ + Δ*v′|` on charts, `|Ω·t|` on level sets.
    pub res_constraint: f64,
    /// `|E u′² + 2F u′v′ + G v′² − 1|` on charts, `||t| − 1|` on level sets.
    pub res_unit_speed: f64,
    /// `|∇f·t|` on level sets.
    pub res_tangency: Option<f64>,
    /// `|f|` on level sets.
    pub res_level: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceResult {
    pub surface: String,
    pub axis: Vec3,
    pub angle: f64,
    pub config: TraceConfig,
    pub samples: Vec<TraceSample>,
    pub termination: Termination,
    pub termination_detail: Option<String>,
}

impl TraceResult {
    pub fn is_closed(&self) -> bool {
        self.termination == Termination::Closed
    }

    /// `max |⟨U, d⟩ − cos φ|` over the samples.
    pub fn max_level_drift(&self) -> f64 {
        let level = self.angle.cos();
        self.samples
            .iter()
            .map(|p| (p.angle_dot - level).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_constraint_residual(&self) -> f64 {
        self.samples.iter().map(|p| p.res_constraint).fold(0.0, f64::max)
    }

    pub fn max_unit_speed_residual(&self) -> f64 {
        self.samples.iter().map(|p| p.res_unit_speed).fold(0.0, f64::max)
    }

    /// Distance between the last and the first sample.
    pub fn end_gap(&self) -> f64 {
        match (self.samples.first(), self.samples.last()) {
            (Some(a), Some(b)) => a.point.distance(b.point),
            _ => 0.0,
        }
    }

    pub fn points(&self) -> Vec<Vec3> {
        self.samples.iter().map(|p| p.point).collect()
    }
}

pub(crate) fn check_axis(d: Vec3, phi: f64) -> Result<()> {
    if !((d.norm() - 1.0).abs() <= 1e-9) {
        return Err(Error::invalid(format!("axis must be a unit vector, |d| = {}", d.norm())));
    }
    if !(0.0..=std::f64::consts::PI).contains(&phi) {
        return Err(Error::invalid(format!("angle must lie in [0, π], got {phi}")));
    }
    Ok(())
}

/// Trace the isophote `⟨U, d⟩ = cos φ` through `seed`.
///
/// Singular or off-level seeds are errors; events met along the way end the
/// trace with the corresponding [`Termination`].
pub fn trace_isophote(surface: &Surface, d: Vec3, phi: f64, seed: Seed, config: &TraceConfig) -> Result<TraceResult> {
    check_axis(d, phi)?;
    config.validate()?;
    let (samples, termination, detail) = match (surface, seed) {
        (Surface::Parametric(s), Seed::Chart { u, v }) => {
            let field = ChartField {
                surface: s.as_ref(),
                d,
                level: phi.cos(),
                eps_sing: config.eps_sing,
            };
            integrate(&field, Uv { u, v }, config)?
        }
        (Surface::Implicit(s), Seed::Point(p)) => {
            let field = LevelField {
                surface: s.as_ref(),
                d,
                level: phi.cos(),
                config,
            };
            integrate(&field, p, config)?
        }
        _ => return Err(Error::invalid("seed kind does not match the surface representation")),
    };
    Ok(TraceResult {
        surface: surface.describe(),
        axis: d,
        angle: phi,
        config: *config,
        samples,
        termination,
        termination_detail: detail,
    })
}

/// Chart coordinates as an integration state.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Uv {
    u: f64,
    v: f64,
}

impl Add for Uv {
    type Output = Uv;
    fn add(self, o: Uv) -> Uv {
        Uv {
            u: self.u + o.u,
            v: self.v + o.v,
        }
    }
}

impl Mul<f64> for Uv {
    type Output = Uv;
    fn mul(self, k: f64) -> Uv {
        Uv {
            u: self.u * k,
            v: self.v * k,
        }
    }
}

/// A unit direction field on some state space, with its diagnostics.
trait Field {
    type State: Copy + Add<Output = Self::State> + Mul<f64, Output = Self::State>;

    /// Field value oriented to have non-negative dot with `reference`,
    /// together with the 3D unit tangent.
    fn direction(&self, at: Self::State, reference: Vec3) -> Result<(Self::State, Vec3)>;

    fn point(&self, at: Self::State) -> Result<Vec3>;

    /// Level residual `⟨U, d⟩ − cos φ` at the seed, after any on-surface checks.
    fn seed_residual(&self, at: Self::State) -> Result<f64>;

    /// Post-step correction: wrapping on charts, projection on level sets.
    fn settle(&self, at: Self::State) -> Result<Self::State>;

    fn sample(&self, at: Self::State, tangent: Vec3, s: f64) -> TraceSample;
}

fn oriented(t: Vec3, reference: Vec3) -> f64 {
    if t.dot(reference) < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// One classical RK4 step of length `h`, orienting every stage by `reference`.
fn rk4<F: Field>(field: &F, y: F::State, h: f64, reference: Vec3) -> Result<F::State> {
    let (k1, _) = field.direction(y, reference)?;
    let (k2, _) = field.direction(y + k1 * (0.5 * h), reference)?;
    let (k3, _) = field.direction(y + k2 * (0.5 * h), reference)?;
    let (k4, _) = field.direction(y + k3 * h, reference)?;
    field.settle(y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0))
}

fn classify_stop(err: &Error) -> Termination {
    match err {
        Error::OutOfDomain { .. } => Termination::LeftDomain,
        Error::SingularIsophote { .. } => Termination::SingularPoint,
        _ => Termination::Error,
    }
}

type Integrated = (Vec<TraceSample>, Termination, Option<String>);

fn integrate<F: Field>(field: &F, seed: F::State, config: &TraceConfig) -> Result<Integrated> {
    let residual = field.seed_residual(seed)?;
    if !(residual.abs() <= SEED_LEVEL_TOL) {
        return Err(Error::SeedOffLevel {
            residual: residual.abs(),
        });
    }
    let h = config.step;
    let length = config.length;
    let seed_point = field.point(seed)?;
    let (_, t_plus) = field.direction(seed, Vec3::ZERO)?;
    let t0 = t_plus * config.branch.sign();
    let (_, t0) = field.direction(seed, t0)?;

    let mut samples = vec![field.sample(seed, t0, 0.0)];
    let (mut state, mut tangent) = (seed, t0);
    let mut steps = 0usize;
    let mut s = 0.0;
    let stop = |e: Error| (classify_stop(&e), Some(e.to_string()));
    let (termination, detail) = loop {
        let remaining = length - s;
        if remaining <= 1e-12 * (1.0 + length) {
            break (Termination::LengthReached, None);
        }
        if s >= CLOSURE_MIN_STEPS * h {
            if let Some((closing, t_close, a)) = try_close(field, state, tangent, seed_point, t0, h, config) {
                samples.push(field.sample(closing, t_close, s + a));
                break (Termination::Closed, None);
            }
        }
        let step = if remaining < h * (1.0 - 1e-9) { remaining } else { h };
        let next = match rk4(field, state, step, tangent) {
            Ok(next) => next,
            Err(e) => break stop(e),
        };
        let t_next = match field.direction(next, tangent) {
            Ok((_, t)) => t,
            Err(e) => break stop(e),
        };
        steps += 1;
        s = if step == h { steps as f64 * h } else { length };
        samples.push(field.sample(next, t_next, s));
        state = next;
        tangent = t_next;
    };
    Ok((samples, termination, detail))
}

/// A refined partial step landing on the seed, if the seed lies within two
/// steps ahead with a matching tangent.
fn try_close<F: Field>(
    field: &F,
    state: F::State,
    tangent: Vec3,
    seed_point: Vec3,
    seed_tangent: Vec3,
    h: f64,
    config: &TraceConfig,
) -> Option<(F::State, Vec3, f64)> {
    let here = field.point(state).ok()?;
    let ahead = seed_point - here;
    if ahead.norm() > 2.0 * h || ahead.dot(tangent) <= 0.0 || tangent.dot(seed_tangent) < 0.5 {
        return None;
    }
    let mut a = ahead.dot(tangent);
    let mut last = None;
    for _ in 0..4 {
        let end = rk4(field, state, a, tangent).ok()?;
        let (_, t_end) = field.direction(end, tangent).ok()?;
        let gap = seed_point - field.point(end).ok()?;
        last = Some((end, t_end, a, gap.norm()));
        a += gap.dot(t_end);
    }
    let (end, t_end, a, gap) = last?;
    (gap <= config.closure_tol && a > 0.0).then_some((end, t_end, a))
}

struct ChartField<'a> {
    surface: &'a dyn ParametricSurface,
    d: Vec3,
    level: f64,
    eps_sing: f64,
}

impl ChartField<'_> {
    fn tangent3(&self, at: Uv, reference: Vec3) -> Result<(Uv, Vec3)> {
        let (jet, (du, dv)) = chart_field(self.surface, self.d, at.u, at.v, self.eps_sing)?;
        let t = jet.du * du + jet.dv * dv;
        let k = oriented(t, reference);
        Ok((Uv { u: du * k, v: dv * k }, t * k))
    }
}

impl Field for ChartField<'_> {
    type State = Uv;

    fn direction(&self, at: Uv, reference: Vec3) -> Result<(Uv, Vec3)> {
        self.tangent3(at, reference)
    }

    fn point(&self, at: Uv) -> Result<Vec3> {
        Ok(chart_jet(self.surface, at.u, at.v)?.point)
    }

    fn seed_residual(&self, at: Uv) -> Result<f64> {
        Ok(unit_normal(&chart_jet(self.surface, at.u, at.v)?)?.dot(self.d) - self.level)
    }

    fn settle(&self, at: Uv) -> Result<Uv> {
        let domain = self.surface.domain();
        let (u, v) = domain.wrap(at.u, at.v);
        if !domain.contains(u, v) {
            return Err(Error::OutOfDomain {
                u,
                v,
                domain: domain.to_string(),
            });
        }
        Ok(Uv { u, v })
    }

    fn sample(&self, at: Uv, tangent: Vec3, s: f64) -> TraceSample {
        let nan = f64::NAN;
        let mut out = TraceSample {
            s,
            point: Vec3::new(nan, nan, nan),
            chart: Some((at.u, at.v)),
            tangent,
            angle_dot: nan,
            kg: nan,
            kn: nan,
            tg: nan,
            res_constraint: nan,
            res_unit_speed: nan,
            res_tangency: None,
            res_level: None,
        };
        let Ok(jet) = chart_jet(self.surface, at.u, at.v) else {
            return out;
        };
        let (Ok(normal), Ok((nu, nv))) = (unit_normal(&jet), normal_derivatives_of(&jet)) else {
            return out;
        };
        let Ok((dir, t)) = self.tangent3(at, tangent) else {
            return out;
        };
        out.point = jet.point;
        out.tangent = t;
        out.angle_dot = normal.dot(self.d);
        (out.kn, out.tg) = direction_curvatures(normal, nu * dir.u + nv * dir.v, t);
        out.res_unit_speed = (first_form(&jet).quadratic(dir.u, dir.v) - 1.0).abs();
        if let Ok((delta, delta_star)) = delta_coefficients(self.surface, self.d, at.u, at.v, (dir.u, dir.v)) {
            out.res_constraint = (delta * dir.u + delta_star * dir.v).abs();
        }
        let along = |x: f64| self.tangent3(at + dir * x, t).map(|(_, t)| t);
        if let Ok(accel) = central_derivative(along, 0.0, STENCIL_STEP) {
            out.kg = accel.dot(normal.cross(t));
        }
        out
    }
}

struct LevelField<'a> {
    surface: &'a dyn ImplicitSurface,
    d: Vec3,
    level: f64,
    config: &'a TraceConfig,
}

impl LevelField<'_> {
    /// Newton on `{f = 0, ⟨U, d⟩ = cos φ}` with the minimum-norm update.
    fn project_both(&self, mut p: Vec3) -> Result<Vec3> {
        let tol = self.config.projection_tol;
        for _ in 0..crate::surface::PROJECTION_MAX_ITER {
            let jet = implicit_jet(self.surface, p)?;
            let normal = jet.unit_normal(self.surface.eps_reg())?;
            let r = (jet.value, normal.dot(self.d) - self.level);
            if r.0.abs() <= tol && r.1.abs() <= tol {
                return Ok(p);
            }
            let (a, b) = (jet.gradient, level_gradient(&jet, self.d));
            let (aa, ab, bb) = (a.dot(a), a.dot(b), b.dot(b));
            let det = aa * bb - ab * ab;
            if !(det.abs() > 1e-300) {
                return Err(Error::SingularIsophote { at: format!("{p:?}") });
            }
            let x = (bb * r.0 - ab * r.1) / det;
            let y = (aa * r.1 - ab * r.0) / det;
            p = p - a * x - b * y;
        }
        project_to_implicit(self.surface, p, tol)
    }
}

impl Field for LevelField<'_> {
    type State = Vec3;

    fn direction(&self, at: Vec3, reference: Vec3) -> Result<(Vec3, Vec3)> {
        let t = implicit_field(self.surface, self.d, at, self.config.eps_sing)?;
        let t = t * oriented(t, reference);
        Ok((t, t))
    }

    fn point(&self, at: Vec3) -> Result<Vec3> {
        Ok(at)
    }

    fn seed_residual(&self, at: Vec3) -> Result<f64> {
        let jet = implicit_jet(self.surface, at)?;
        if !(jet.value.abs() <= IMPLICIT_POINT_TOL) {
            return Err(Error::OffSurface {
                at: format!("{at:?}"),
                residual: jet.value.abs(),
            });
        }
        Ok(jet.unit_normal(self.surface.eps_reg())?.dot(self.d) - self.level)
    }

    fn settle(&self, at: Vec3) -> Result<Vec3> {
        let p = project_to_implicit(self.surface, at, self.config.projection_tol)?;
        if self.config.project_isophote {
            self.project_both(p)
        } else {
            Ok(p)
        }
    }

    fn sample(&self, at: Vec3, tangent: Vec3, s: f64) -> TraceSample {
        let nan = f64::NAN;
        let mut out = TraceSample {
            s,
            point: at,
            chart: None,
            tangent,
            angle_dot: nan,
            kg: nan,
            kn: nan,
            tg: nan,
            res_constraint: nan,
            res_unit_speed: (tangent.norm() - 1.0).abs(),
            res_tangency: None,
            res_level: None,
        };
        let Ok(jet) = implicit_jet(self.surface, at) else {
            return out;
        };
        let Ok(normal) = jet.unit_normal(self.surface.eps_reg()) else {
            return out;
        };
        out.angle_dot = normal.dot(self.d);
        out.res_level = Some(jet.value.abs());
        out.res_tangency = Some(jet.gradient.dot(tangent).abs());
        (out.kn, out.tg) = direction_curvatures(normal, jet.normal_derivative(tangent), tangent);
        if let Ok(omega) = omega_coefficients(self.surface, self.d, at, tangent) {
            out.res_constraint = omega.dot(tangent).abs();
        }
        let along = |x: f64| self.direction(at + tangent * x, tangent).map(|(_, t)| t);
        if let Ok(accel) = central_derivative(along, 0.0, STENCIL_STEP) {
            out.kg = accel.dot(normal.cross(tangent));
        }
        out
    }
}

