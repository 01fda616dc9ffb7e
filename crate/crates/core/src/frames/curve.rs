//! Space curves: raw parametrized curves, unit-speed curves and sample grids.

use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{parse, Expression};
use crate::numeric::{derivative, STENCIL_STEP};
use crate::vec3::Vec3;

/// Position and the first three derivatives of a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub point: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
}

/// A regular curve `r(t)` in an arbitrary parametrization.
pub trait SpaceCurve: Send + Sync + fmt::Debug {
    fn domain(&self) -> (f64, f64);
    fn jet(&self, t: f64) -> Result<CurveJet>;
    fn describe(&self) -> String;
}

/// A curve `γ(s)` parametrized by arclength on `[0, L]`.
pub trait UnitSpeedCurve: Send + Sync + fmt::Debug {
    fn length(&self) -> f64;

    /// `γ, γ′, γ″, γ‴` at `s ∈ [0, L]`.
    fn jet(&self, s: f64) -> Result<CurveJet>;

    /// Whether the jets come from sampled data rather than analytic evaluators.
    fn is_sampled(&self) -> bool {
        false
    }

    /// Step for finite differences of quantities along the curve.
    fn stencil_step(&self) -> f64 {
        STENCIL_STEP
    }
}

pub(crate) fn check_arclength(s: f64, length: f64) -> Result<()> {
    // Stencils may step a rounding error past either end.
    let slack = 1e-12 * (1.0 + length);
    if !(s >= -slack && s <= length + slack) {
        return Err(Error::ArclengthOutOfRange { s, length });
    }
    Ok(())
}

/// `γ‴` from a stencil on `γ″` when only second-order jets exist.
pub(crate) fn third_by_stencil<F>(second: F, s: f64, length: f64) -> Result<Vec3>
where
    F: Fn(f64) -> Result<Vec3>,
{
    derivative(second, s, 0.0, length, STENCIL_STEP)
}

/// `r(t) = (x(t), y(t), z(t))` from expressions in `s`, with symbolic derivatives.
#[derive(Debug, Clone)]
pub struct ExpressionCurve {
    coords: [[Expression; 4]; 3],
    domain: (f64, f64),
    source: String,
}

fn derivatives_to_third(e: Expression, var: &str) -> Result<[Expression; 4]> {
    let d1 = e.differentiate(var)?;
    let d2 = d1.differentiate(var)?;
    let d3 = d2.differentiate(var)?;
    Ok([e, d1, d2, d3])
}

impl ExpressionCurve {
    /// Expressions use the single variable `s`.
    pub fn new(x: &str, y: &str, z: &str, domain: (f64, f64)) -> Result<Self> {
        if !(domain.0 < domain.1) {
            return Err(Error::invalid(format!("empty curve range [{}, {}]", domain.0, domain.1)));
        }
        let e = |src: &str| derivatives_to_third(parse(src, &["s"])?, "s");
        Ok(ExpressionCurve {
            coords: [e(x)?, e(y)?, e(z)?],
            domain,
            source: format!("space:x={x};y={y};z={z}"),
        })
    }
}

impl SpaceCurve for ExpressionCurve {
    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn jet(&self, t: f64) -> Result<CurveJet> {
        let at = [t];
        let col = |k: usize| -> Result<Vec3> {
            Ok(Vec3::new(
                self.coords[0][k].eval(&at)?,
                self.coords[1][k].eval(&at)?,
                self.coords[2][k].eval(&at)?,
            ))
        };
        Ok(CurveJet {
            point: col(0)?,
            d1: col(1)?,
            d2: col(2)?,
            d3: col(3)?,
        })
    }

    fn describe(&self) -> String {
        self.source.clone()
    }
}

/// Points sampled at uniform arclength spacing `h`, starting at `s = 0`.
///
/// Jets come from the quartic through the five nearest samples, so at the
/// nodes the first derivative is the 5-point central stencil. The two
/// samples at each end use one-sided windows.
#[derive(Debug, Clone)]
pub struct SampledCurve {
    h: f64,
    points: Vec<Vec3>,
}

impl SampledCurve {
    pub fn new(h: f64, points: Vec<Vec3>) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::invalid("sample spacing must be positive"));
        }
        if points.len() < 5 {
            return Err(Error::InsufficientSamples {
                needed: 5,
                got: points.len(),
            });
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::invalid(format!("non-finite sample {p:?}")));
        }
        Ok(SampledCurve { h, points })
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }
}

/// Coefficients (ascending powers of ξ) of the Lagrange basis polynomials
/// on the nodes ξ = 0, 1, 2, 3, 4.
fn quartic_basis() -> [[f64; 5]; 5] {
    let mut out = [[0.0; 5]; 5];
    for (k, basis) in out.iter_mut().enumerate() {
        let mut poly = vec![1.0];
        let mut denom = 1.0;
        for j in (0..5).filter(|&j| j != k) {
            // Multiply by (ξ - j).
            let mut next = vec![0.0; poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * j as f64;
            }
            poly = next;
            denom *= k as f64 - j as f64;
        }
        for (i, c) in poly.iter().enumerate() {
            basis[i] = c / denom;
        }
    }
    out
}

/// Value and first three derivatives at ξ of a polynomial given by ascending
/// coefficients: the m-th is `Σ c_i i!/(i-m)! ξ^(i-m)`, by Horner.
fn poly_derivatives(c: &[f64; 5], xi: f64) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (m, slot) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for i in (m..5).rev() {
            let falling: f64 = (0..m).map(|q| (i - q) as f64).product();
            acc = acc * xi + c[i] * falling;
        }
        *slot = acc;
    }
    out
}

impl UnitSpeedCurve for SampledCurve {
    fn length(&self) -> f64 {
        self.h * (self.points.len() - 1) as f64
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        check_arclength(s, self.length())?;
        let n = self.points.len();
        let nearest = (s / self.h).round().clamp(0.0, (n - 1) as f64) as usize;
        let start = nearest.saturating_sub(2).min(n - 5);
        let xi = s / self.h - start as f64;
        let basis = quartic_basis();
        let mut d = [Vec3::ZERO; 4];
        for (k, b) in basis.iter().enumerate() {
            let w = poly_derivatives(b, xi);
            for m in 0..4 {
                d[m] += self.points[start + k] * w[m];
            }
        }
        let h = self.h;
        Ok(CurveJet {
            point: d[0],
            d1: d[1] / h,
            d2: d[2] / (h * h),
            d3: d[3] / (h * h * h),
        })
    }

    fn is_sampled(&self) -> bool {
        true
    }

    fn stencil_step(&self) -> f64 {
        self.h
    }
}

/// Strictly increasing arclength sample positions.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    s: Vec<f64>,
}

impl SampleGrid {
    /// `n` equally spaced samples on `[lo, hi]` including both ends.
    pub fn uniform(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 2 || !(lo < hi) {
            return Err(Error::invalid(format!("grid needs n >= 2 and lo < hi, got n = {n} on [{lo}, {hi}]")));
        }
        let step = (hi - lo) / (n - 1) as f64;
        let mut s: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
        s[n - 1] = hi;
        Ok(SampleGrid { s })
    }

    pub fn from_values(s: Vec<f64>) -> Result<Self> {
        if s.windows(2).any(|w| !(w[0] < w[1])) || s.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("grid must be finite and strictly increasing"));
        }
        Ok(SampleGrid { s })
    }

    pub fn values(&self) -> &[f64] {
        &self.s
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}
