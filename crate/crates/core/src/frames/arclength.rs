//! Arclength reparametrization.

use std::sync::Arc;

use super::curve::{check_arclength, CurveJet, SpaceCurve, UnitSpeedCurve};
use crate::error::{Error, Result};
use crate::numeric::adaptive_simpson;

/// Total quadrature tolerance of the arclength table.
pub const ARCLENGTH_TOL: f64 = 1e-10;

/// Speeds at or below this are treated as a stationary point.
pub const MIN_SPEED: f64 = 1e-9;

const POLISH_ITERATIONS: usize = 6;

/// Table `t_i ↦ s_i` with its exact slopes `ds/dt = |r′(t_i)|`, inverted by
/// monotone cubic Hermite interpolation followed by Newton polishing.
#[derive(Debug, Clone)]
pub struct ArclengthMap {
    knots: Vec<f64>,
    cumulative: Vec<f64>,
    speeds: Vec<f64>,
}

fn checked<F>(speed: &F, t: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let v = speed(t)?;
    if !(v > MIN_SPEED) {
        return Err(Error::VanishingSpeed { t, speed: v });
    }
    Ok(v)
}

impl ArclengthMap {
    /// Tabulate arclength on `n` equally spaced knots of `[t0, t1]`.
    pub fn build<F>(speed: &F, (t0, t1): (f64, f64), n: usize) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if n < 2 || !(t0 < t1) {
            return Err(Error::invalid(format!(
                "arclength table needs n >= 2 and t0 < t1, got n = {n} on [{t0}, {t1}]"
            )));
        }
        let f = |t: f64| checked(speed, t);
        let dt = (t1 - t0) / (n - 1) as f64;
        let knots: Vec<f64> = (0..n)
            .map(|i| if i == n - 1 { t1 } else { t0 + dt * i as f64 })
            .collect();
        let speeds = knots.iter().map(|&t| f(t)).collect::<Result<Vec<_>>>()?;
        let mut cumulative = vec![0.0; n];
        let tol = ARCLENGTH_TOL / (n - 1) as f64;
        for i in 1..n {
            cumulative[i] = cumulative[i - 1] + adaptive_simpson(&f, knots[i - 1], knots[i], tol)?;
        }
        Ok(ArclengthMap {
            knots,
            cumulative,
            speeds,
        })
    }

    pub fn length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.knots[0], *self.knots.last().unwrap())
    }

    /// Parameter `t` at arclength `s`.
    pub fn param<F>(&self, speed: &F, s: f64) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let length = self.length();
        check_arclength(s, length)?;
        let s = s.clamp(0.0, length);
        let n = self.knots.len();
        let i = self.cumulative.partition_point(|&c| c <= s).clamp(1, n - 1) - 1;
        let (s0, s1) = (self.cumulative[i], self.cumulative[i + 1]);
        let (a, b) = (self.knots[i], self.knots[i + 1]);
        let ds = s1 - s0;
        let secant = (b - a) / ds;
        let mut m0 = 1.0 / self.speeds[i];
        let mut m1 = 1.0 / self.speeds[i + 1];
        // Fritsch–Carlson limiter keeps the interpolant monotone.
        let (alpha, beta) = (m0 / secant, m1 / secant);
        let r = alpha.hypot(beta);
        if r > 3.0 {
            m0 *= 3.0 / r;
            m1 *= 3.0 / r;
        }
        let x = (s - s0) / ds;
        let (x2, x3) = (x * x, x * x * x);
        let h00 = 2.0 * x3 - 3.0 * x2 + 1.0;
        let h10 = x3 - 2.0 * x2 + x;
        let h01 = -2.0 * x3 + 3.0 * x2;
        let h11 = x3 - x2;
        let mut t = (h00 * a + h10 * ds * m0 + h01 * b + h11 * ds * m1).clamp(a, b);

        let f = |t: f64| checked(speed, t);
        let target = 1e-14 * (1.0 + length);
        for _ in 0..POLISH_ITERATIONS {
            let residual = s0 + adaptive_simpson(&f, a, t, 1e-15)? - s;
            if residual.abs() <= target {
                break;
            }
            t = (t - residual / f(t)?).clamp(a, b);
        }
        Ok(t)
    }
}

/// Unit-speed reparametrization of a raw curve.
#[derive(Debug, Clone)]
pub struct ArclengthCurve {
    raw: Arc<dyn SpaceCurve>,
    map: ArclengthMap,
}

impl ArclengthCurve {
    pub fn raw(&self) -> &Arc<dyn SpaceCurve> {
        &self.raw
    }

    /// Raw parameter at arclength `s`.
    pub fn param(&self, s: f64) -> Result<f64> {
        let raw = &self.raw;
        self.map.param(&|t: f64| Ok(raw.jet(t)?.d1.norm()), s)
    }
}

/// Reparametrize `raw` by arclength using an `n`-knot table.
pub fn resample_unit_speed(raw: Arc<dyn SpaceCurve>, n: usize) -> Result<ArclengthCurve> {
    let map = ArclengthMap::build(&|t: f64| Ok(raw.jet(t)?.d1.norm()), raw.domain(), n)?;
    Ok(ArclengthCurve { raw, map })
}

impl UnitSpeedCurve for ArclengthCurve {
    fn length(&self) -> f64 {
        self.map.length()
    }

    fn jet(&self, s: f64) -> Result<CurveJet> {
        let t = self.param(s)?;
        let r = self.raw.jet(t)?;
        let sp2 = r.d1.norm_squared();
        let sp = sp2.sqrt();
        if !(sp > MIN_SPEED) {
            return Err(Error::VanishingSpeed { t, speed: sp });
        }
        let a = r.d1.dot(r.d2);
        let t1 = 1.0 / sp;
        let t2 = -a / (sp2 * sp2);
        let t3 = t1 * (-(r.d2.norm_squared() + r.d1.dot(r.d3)) / (sp2 * sp2) + 4.0 * a * a / (sp2 * sp2 * sp2));
        Ok(CurveJet {
            point: r.point,
            d1: r.d1 * t1,
            d2: r.d2 * (t1 * t1) + r.d1 * t2,
            d3: r.d3 * (t1 * t1 * t1) + r.d2 * (3.0 * t1 * t2) + r.d1 * t3,
        })
    }
}
