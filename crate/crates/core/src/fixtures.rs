//! Reference curves with closed-form Darboux data.

use std::sync::Arc;

use crate::error::Result;
use crate::frames::{ChartCurve, CurveOnSurface, ExpressionPath};
use crate::surface::Catalog;

/// Circular helix of pitch `b` on the unit cylinder, `u = s/√(1+b²)`,
/// `v = b s/√(1+b²)`, over `turns` revolutions.
///
/// `k_g = 0`, `k_n = −1/(1+b²)`, `τ_g = b/(1+b²)`.
pub fn helix_on_cylinder(b: f64, turns: f64) -> Result<CurveOnSurface> {
    let w = (1.0 + b * b).sqrt();
    let length = 2.0 * std::f64::consts::PI * turns * w;
    let path = ExpressionPath::new(&format!("s/{w:e}"), &format!("{b:e}*s/{w:e}"), (0.0, length))?;
    let surface = Arc::new(Catalog::Cylinder { r: 1.0 }.chart());
    Ok(CurveOnSurface::Chart(ChartCurve::unit_speed(surface, Arc::new(path))?))
}

/// Latitude circle at height angle `v0` on the unit sphere, once around.
///
/// `k_g = tan v0`, `k_n = −1`, `τ_g = 0`.
pub fn latitude_circle(v0: f64) -> Result<CurveOnSurface> {
    let c = v0.cos();
    let length = 2.0 * std::f64::consts::PI * c;
    let path = ExpressionPath::new(&format!("s/{c:e}"), &format!("{v0:e}"), (0.0, length))?;
    let surface = Arc::new(Catalog::Sphere { r: 1.0 }.chart());
    Ok(CurveOnSurface::Chart(ChartCurve::unit_speed(surface, Arc::new(path))?))
}

/// Straight segment `u = s`, `v = v0` on the plane `z = 0`.
pub fn line_on_plane(v0: f64, length: f64) -> Result<CurveOnSurface> {
    let path = ExpressionPath::new("s", &format!("{v0:e}"), (0.0, length))?;
    let surface = Arc::new(Catalog::Plane.chart());
    Ok(CurveOnSurface::Chart(ChartCurve::unit_speed(surface, Arc::new(path))?))
}

/// Origin-centred unit circle `u = cos s`, `v = sin s` on the plane `z = 0`.
pub fn circle_on_plane() -> Result<CurveOnSurface> {
    let path = ExpressionPath::new("cos(s)", "sin(s)", (0.0, 2.0 * std::f64::consts::PI))?;
    let surface = Arc::new(Catalog::Plane.chart());
    Ok(CurveOnSurface::Chart(ChartCurve::unit_speed(surface, Arc::new(path))?))
}
