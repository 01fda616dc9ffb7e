//! Finite-difference stencils and quadrature shared by the curve machinery.

use crate::error::Result;
use crate::vec3::Vec3;

/// Default step for derivatives of analytic quantities one order beyond the
/// available jets.
pub const STENCIL_STEP: f64 = 1e-3;

/// Values that can be combined linearly by a stencil.
pub trait Linear: Copy {
    fn zero() -> Self;
    fn axpy(self, a: f64, x: Self) -> Self;
}

impl Linear for f64 {
    fn zero() -> Self {
        0.0
    }
    fn axpy(self, a: f64, x: Self) -> Self {
        self + a * x
    }
}

impl Linear for Vec3 {
    fn zero() -> Self {
        Vec3::ZERO
    }
    fn axpy(self, a: f64, x: Self) -> Self {
        self + x * a
    }
}

const CENTRAL: [(f64, f64); 4] = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
const FORWARD: [(f64, f64); 5] = [(0.0, -25.0), (1.0, 48.0), (2.0, -36.0), (3.0, 16.0), (4.0, -3.0)];

/// Fourth-order first derivative of `f` at `s`, restricted to `[lo, hi]`.
///
/// Uses the 5-point central stencil when it fits and the 5-point one-sided
/// stencil near either end.
pub fn derivative<T, F>(f: F, s: f64, lo: f64, hi: f64, h: f64) -> Result<T>
where
    T: Linear,
    F: Fn(f64) -> Result<T>,
{
    let h = h.min((hi - lo) / 8.0);
    let mut acc = T::zero();
    if s - 2.0 * h >= lo && s + 2.0 * h <= hi {
        for (k, w) in CENTRAL {
            acc = acc.axpy(w / (12.0 * h), f(s + k * h)?);
        }
    } else if s - 2.0 * h < lo {
        for (k, w) in FORWARD {
            acc = acc.axpy(w / (12.0 * h), f(s + k * h)?);
        }
    } else {
        for (k, w) in FORWARD {
            acc = acc.axpy(-w / (12.0 * h), f(s - k * h)?);
        }
    }
    Ok(acc)
}

/// Central 5-point derivative with no domain restriction.
pub fn central_derivative<T, F>(f: F, s: f64, h: f64) -> Result<T>
where
    T: Linear,
    F: Fn(f64) -> Result<T>,
{
    let mut acc = T::zero();
    for (k, w) in CENTRAL {
        acc = acc.axpy(w / (12.0 * h), f(s + k * h)?);
    }
    Ok(acc)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    Ok(simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}
