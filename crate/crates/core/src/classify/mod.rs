//! Characterization functions, constancy tests, axis recovery and
//! classification reports for curves on surfaces.

mod axis;
mod formulas;
mod report;
mod series;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{darboux, darboux_derivatives, frenet, CurveOnSurface, DarbouxFrame, SampleGrid, UnitSpeedCurve};
use crate::numeric::derivative;
use crate::vec3::Vec3;

pub use self::axis::{recover_axis, AxisEstimate, AMBIGUITY_GAP};
pub use self::formulas::{
    isophotic_prefactor, mu_u, mu_v, normal_slant_prefactor, slant_helix_value, tu_plane_lhs, tu_position_claim,
    tv_plane_lhs, tv_position_claim, Scalars,
};
pub use self::report::{classify_report, ClassificationReport, CrossCheck, Failure, Flags, Tolerances};
pub use self::series::{cumulative_simpson, is_constant, CharacterizationSeries, ConstancyVerdict, MIN_CONSTANCY_SAMPLES};

/// Threshold for vanishing divisors and pairs.
pub const EPS_DEGENERATE: f64 = 1e-9;

/// Which plane through the curve point the position vector is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Plane {
    /// `sp{T, U}`: the relatively normal-slant setting.
    #[serde(rename = "TU")]
    TU,
    /// `sp{T, V}`: the isophotic setting.
    #[serde(rename = "TV")]
    TV,
}

/// Darboux frame and scalar rates at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSample {
    pub s: f64,
    pub point: Vec3,
    pub frame: DarbouxFrame,
    pub scalars: Scalars,
}

pub fn sample_frames(c: &CurveOnSurface, grid: &SampleGrid) -> Result<Vec<FrameSample>> {
    grid.values()
        .iter()
        .map(|&s| {
            let p = c.surface_point(s)?;
            let frame = crate::frames::darboux_at(&p);
            let rates = darboux_derivatives(c, s)?;
            Ok(FrameSample {
                s,
                point: p.point,
                frame,
                scalars: Scalars::new(&frame, rates),
            })
        })
        .collect()
}

fn grid_of(samples: &[FrameSample]) -> Vec<f64> {
    samples.iter().map(|x| x.s).collect()
}

fn require_defined(series: CharacterizationSeries, what: &str, reason: &str) -> Result<CharacterizationSeries> {
    if series.defined_count() == 0 {
        return Err(Error::degenerate(what, reason));
    }
    Ok(series)
}

pub fn mu_v_from(samples: &[FrameSample]) -> Result<CharacterizationSeries> {
    let values = samples.iter().map(|x| mu_v(&x.scalars, EPS_DEGENERATE)).collect();
    require_defined(
        CharacterizationSeries::new("mu_v", grid_of(samples), values),
        "mu_v",
        "(τ_g, k_g) vanishes at every sample",
    )
}

pub fn mu_u_from(samples: &[FrameSample]) -> Result<CharacterizationSeries> {
    let values = samples.iter().map(|x| mu_u(&x.scalars, EPS_DEGENERATE)).collect();
    require_defined(
        CharacterizationSeries::new("mu_u", grid_of(samples), values),
        "mu_u",
        "(τ_g, k_n) vanishes at every sample",
    )
}

/// `μ_v`, constant exactly for relatively normal-slant helices.
pub fn mu_v_series(c: &CurveOnSurface, grid: &SampleGrid) -> Result<CharacterizationSeries> {
    mu_v_from(&sample_frames(c, grid)?)
}

/// `μ_u`, constant exactly for isophotic curves.
pub fn mu_u_series(c: &CurveOnSurface, grid: &SampleGrid) -> Result<CharacterizationSeries> {
    mu_u_from(&sample_frames(c, grid)?)
}

/// `(τ/κ)′` by a stencil on the Frenet ratio.
pub fn torsion_ratio_rate(c: &dyn UnitSpeedCurve, s: f64) -> Result<f64> {
    derivative(
        |x| {
            let f = frenet(c, x)?;
            Ok(f.tau / f.kappa)
        },
        s,
        0.0,
        c.length(),
        c.stencil_step(),
    )
}

/// `κ²/(κ² + τ²)^{3/2} · (τ/κ)′`, constant exactly for slant helices.
pub fn slant_helix_series(c: &dyn UnitSpeedCurve, grid: &SampleGrid) -> Result<CharacterizationSeries> {
    let values = grid
        .values()
        .iter()
        .map(|&s| {
            let f = frenet(c, s)?;
            Ok(Some(slant_helix_value(f.kappa, f.tau, torsion_ratio_rate(c, s)?)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterizationSeries::new("slant_helix", grid.values().to_vec(), values))
}

/// The theorem function of one plane family with its position coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremFamily {
    pub plane: Plane,
    /// Cumulative integral `∫τ_g k_n/k_g` (TU) or `∫τ_g k_g/k_n` (TV) from the grid start.
    pub integral: CharacterizationSeries,
    /// `k_g²/(k_g²+τ_g²)^{3/2} e^{∫}` (TU) or `k_n²/(k_n²+τ_g²)^{3/2} e^{−∫}` (TV).
    pub function: CharacterizationSeries,
    /// `λ₁, λ₂` (TU) or `μ₁, μ₂` (TV) for the supplied constant.
    pub first: CharacterizationSeries,
    pub second: CharacterizationSeries,
    pub c: f64,
}

fn family_name(plane: Plane) -> &'static str {
    match plane {
        Plane::TU => "normal-slant family",
        Plane::TV => "isophotic family",
    }
}

/// Divisor of the family's integrand: `k_g` for TU, `k_n` for TV.
fn divisor(plane: Plane, f: &DarbouxFrame) -> f64 {
    match plane {
        Plane::TU => f.kg,
        Plane::TV => f.kn,
    }
}

fn integrand(plane: Plane, f: &DarbouxFrame) -> f64 {
    match plane {
        Plane::TU => f.tg * f.kn / f.kg,
        Plane::TV => f.tg * f.kg / f.kn,
    }
}

fn checked_divisor(plane: Plane, f: &DarbouxFrame, s: f64) -> Result<()> {
    let d = divisor(plane, f);
    if !(d.abs() > EPS_DEGENERATE) {
        let which = if plane == Plane::TU { "k_g" } else { "k_n" };
        return Err(Error::degenerate(
            family_name(plane),
            format!("|{which}| = {:e} below {EPS_DEGENERATE:e} at s = {s}", d.abs()),
        ));
    }
    Ok(())
}

/// Cumulative integral of the family's integrand, checking the divisor on
/// nodes and Simpson midpoints.
fn family_integral(c: &CurveOnSurface, samples: &[FrameSample], plane: Plane) -> Result<Vec<f64>> {
    let s = grid_of(samples);
    let mut nodes = Vec::with_capacity(samples.len());
    for x in samples {
        checked_divisor(plane, &x.frame, x.s)?;
        nodes.push(integrand(plane, &x.frame));
    }
    cumulative_simpson(&s, &nodes, |i| {
        let m = 0.5 * (s[i] + s[i + 1]);
        let f = darboux(c, m)?;
        checked_divisor(plane, &f, m)?;
        Ok(integrand(plane, &f))
    })
}

pub fn theorem_family_from(
    c: &CurveOnSurface,
    samples: &[FrameSample],
    plane: Plane,
    c_const: f64,
) -> Result<TheoremFamily> {
    let integral = family_integral(c, samples, plane)?;
    let s = grid_of(samples);
    let mut function = Vec::new();
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (x, i) in samples.iter().zip(&integral) {
        let f = &x.frame;
        match plane {
            Plane::TU => {
                let e = (-i).exp();
                function.push(Some(normal_slant_prefactor(f.kg, f.tg) * i.exp()));
                first.push(Some(c_const * f.tg / f.kg * e));
                second.push(Some(c_const * e));
            }
            Plane::TV => {
                let e = i.exp();
                function.push(Some(isophotic_prefactor(f.kn, f.tg) * (-i).exp()));
                first.push(Some(-c_const * f.tg / f.kn * e));
                second.push(Some(c_const * e));
            }
        }
    }
    let (fname, a, b) = match plane {
        Plane::TU => ("normal_slant_function", "lambda1", "lambda2"),
        Plane::TV => ("isophotic_function", "mu1", "mu2"),
    };
    Ok(TheoremFamily {
        plane,
        integral: CharacterizationSeries::new(
            format!("{fname}_integral"),
            s.clone(),
            integral.into_iter().map(Some).collect(),
        ),
        function: CharacterizationSeries::new(fname, s.clone(), function),
        first: CharacterizationSeries::new(a, s.clone(), first),
        second: CharacterizationSeries::new(b, s, second),
        c: c_const,
    })
}

pub fn theorem_family(c: &CurveOnSurface, grid: &SampleGrid, plane: Plane, c_const: f64) -> Result<TheoremFamily> {
    theorem_family_from(c, &sample_frames(c, grid)?, plane, c_const)
}

/// `⟨γ, T⟩, ⟨γ, V⟩, ⟨γ, U⟩` along the grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PositionDecomposition {
    pub t: CharacterizationSeries,
    pub v: CharacterizationSeries,
    pub u: CharacterizationSeries,
    /// `max |⟨γ, V⟩|` small: position in `sp{T, U}`.
    pub in_tu_plane: bool,
    /// `max |⟨γ, U⟩|` small: position in `sp{T, V}`.
    pub in_tv_plane: bool,
    pub tol_plane: f64,
}

/// Default plane-membership tolerance `1e-8 · (1 + max |γ|)`.
pub fn default_plane_tol(samples: &[FrameSample]) -> f64 {
    1e-8 * (1.0 + samples.iter().map(|x| x.point.norm()).fold(0.0, f64::max))
}

pub fn position_decomposition_from(samples: &[FrameSample], tol_plane: Option<f64>) -> PositionDecomposition {
    let s = grid_of(samples);
    let series = |name: &str, f: &dyn Fn(&FrameSample) -> f64| {
        CharacterizationSeries::new(name, s.clone(), samples.iter().map(|x| Some(f(x))).collect())
    };
    let t = series("position_t", &|x| x.point.dot(x.frame.t));
    let v = series("position_v", &|x| x.point.dot(x.frame.v));
    let u = series("position_u", &|x| x.point.dot(x.frame.u));
    let tol_plane = tol_plane.unwrap_or_else(|| default_plane_tol(samples));
    PositionDecomposition {
        in_tu_plane: v.max_abs().unwrap_or(0.0) <= tol_plane,
        in_tv_plane: u.max_abs().unwrap_or(0.0) <= tol_plane,
        t,
        v,
        u,
        tol_plane,
    }
}

pub fn position_decomposition(c: &CurveOnSurface, grid: &SampleGrid) -> Result<PositionDecomposition> {
    Ok(position_decomposition_from(&sample_frames(c, grid)?, None))
}

/// `|γ − claimed combination|`, masked where the claim is degenerate.
pub fn position_theorem_residual_from(samples: &[FrameSample], plane: Plane) -> Result<CharacterizationSeries> {
    let values = samples
        .iter()
        .map(|x| {
            let claim = match plane {
                Plane::TU => tu_position_claim(&x.frame, EPS_DEGENERATE),
                Plane::TV => tv_position_claim(&x.frame, EPS_DEGENERATE),
            };
            claim.map(|c| (x.point - c).norm())
        })
        .collect();
    let (name, reason) = match plane {
        Plane::TU => ("position_residual_tu", "(τ_g, k_g) vanishes at every sample"),
        Plane::TV => ("position_residual_tv", "(τ_g, k_n) vanishes at every sample"),
    };
    require_defined(CharacterizationSeries::new(name, grid_of(samples), values), name, reason)
}

pub fn position_theorem_residual(c: &CurveOnSurface, grid: &SampleGrid, plane: Plane) -> Result<CharacterizationSeries> {
    position_theorem_residual_from(&sample_frames(c, grid)?, plane)
}

/// `|LHS − RHS|` of the plane ODE for the constant `c_const`:
/// TU: `(τ_g/k_g)′ − ((τ_g/k_g)² + 1) k_n = (1/c) e^{∫τ_g k_n/k_g}`,
/// TV: `(τ_g/k_n)′ − ((τ_g/k_n)² + 1) k_g = −(1/c) e^{−∫τ_g k_g/k_n}`.
pub fn plane_ode_residual_from(
    c: &CurveOnSurface,
    samples: &[FrameSample],
    c_const: f64,
    plane: Plane,
) -> Result<CharacterizationSeries> {
    if c_const == 0.0 || !c_const.is_finite() {
        return Err(Error::invalid(format!("the plane constant c must be a nonzero real, got {c_const}")));
    }
    let integral = family_integral(c, samples, plane)?;
    let values = samples
        .iter()
        .zip(&integral)
        .map(|(x, i)| {
            let (lhs, rhs) = match plane {
                Plane::TU => (tu_plane_lhs(&x.scalars, EPS_DEGENERATE), i.exp() / c_const),
                Plane::TV => (tv_plane_lhs(&x.scalars, EPS_DEGENERATE), -(-i).exp() / c_const),
            };
            lhs.map(|l| (l - rhs).abs())
        })
        .collect();
    let name = match plane {
        Plane::TU => "plane_ode_residual_tu",
        Plane::TV => "plane_ode_residual_tv",
    };
    Ok(CharacterizationSeries::new(name, grid_of(samples), values))
}

pub fn plane_ode_residual(c: &CurveOnSurface, grid: &SampleGrid, c_const: f64, plane: Plane) -> Result<CharacterizationSeries> {
    plane_ode_residual_from(c, &sample_frames(c, grid)?, c_const, plane)
}

/// Least-squares line `τ/κ ≈ c₁ s + c₂` and the rectifying verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RectifyingCheck {
    /// `⟨γ, N⟩`, which vanishes for rectifying curves.
    pub gamma_n: CharacterizationSeries,
    pub c1: f64,
    pub c2: f64,
    /// Largest deviation of `τ/κ` from the fitted line.
    pub fit_residual: f64,
    pub rectifying: bool,
}

/// Fit `ratio ≈ c₁ s + c₂`; returns `(c₁, c₂, max |deviation|)`.
pub fn linear_fit(s: &[f64], ratio: &[f64]) -> Result<(f64, f64, f64)> {
    if s.len() < 2 || s.len() != ratio.len() {
        return Err(Error::InsufficientSamples {
            needed: 2,
            got: s.len().min(ratio.len()),
        });
    }
    let n = s.len() as f64;
    let ms = s.iter().sum::<f64>() / n;
    let mr = ratio.iter().sum::<f64>() / n;
    let sxx: f64 = s.iter().map(|x| (x - ms).powi(2)).sum();
    let sxy: f64 = s.iter().zip(ratio).map(|(x, y)| (x - ms) * (y - mr)).sum();
    let c1 = sxy / sxx;
    let c2 = mr - c1 * ms;
    let residual = s
        .iter()
        .zip(ratio)
        .map(|(x, y)| (y - (c1 * x + c2)).abs())
        .fold(0.0, f64::max);
    Ok((c1, c2, residual))
}

/// Rectifying verdict: the fit residual is within `tol · (1 + max |τ/κ|)` and
/// both coefficients exceed `tol` in magnitude.
pub fn rectifying_verdict(c1: f64, c2: f64, fit_residual: f64, max_ratio: f64, tol: f64) -> bool {
    fit_residual <= tol * (1.0 + max_ratio) && c1.abs() > tol && c2.abs() > tol
}

pub fn rectifying_check(c: &dyn UnitSpeedCurve, grid: &SampleGrid, tol: f64) -> Result<RectifyingCheck> {
    let mut ratio = Vec::with_capacity(grid.len());
    let mut gamma_n = Vec::with_capacity(grid.len());
    for &s in grid.values() {
        let jet = c.jet(s)?;
        let f = crate::frames::frenet_at(&jet, s)?;
        ratio.push(f.tau / f.kappa);
        gamma_n.push(Some(jet.point.dot(f.n)));
    }
    let (c1, c2, fit_residual) = linear_fit(grid.values(), &ratio)?;
    let max_ratio = ratio.iter().map(|r| r.abs()).fold(0.0, f64::max);
    Ok(RectifyingCheck {
        gamma_n: CharacterizationSeries::new("gamma_n", grid.values().to_vec(), gamma_n),
        c1,
        c2,
        fit_residual,
        rectifying: rectifying_verdict(c1, c2, fit_residual, max_ratio, tol),
    })
}

