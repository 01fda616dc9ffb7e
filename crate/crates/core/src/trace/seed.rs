//! Locating a starting point on the level set `⟨U, d⟩ = cos φ`.

use super::direction::level_gradient;
use super::{check_axis, Seed};
use crate::error::{Error, Result};
use crate::surface::{
    chart_jet, implicit_jet, normal_derivatives_of, project_to_implicit, unit_normal, ImplicitSurface,
    ParametricSurface, Surface,
};
use crate::vec3::Vec3;

/// Target accuracy of `|⟨U, d⟩ − cos φ|` at a found seed.
pub const SEED_TOL: f64 = 1e-12;

/// Iteration cap for every seed search.
pub const SEED_MAX_ITER: usize = 100;

/// Scan cells per coordinate line.
const SCAN_CELLS: usize = 256;

fn no_isophote(detail: impl Into<String>) -> Error {
    Error::NoIsophote { detail: detail.into() }
}

pub fn find_seed(surface: &Surface, d: Vec3, phi: f64, guess: Seed) -> Result<Seed> {
    match (surface, guess) {
        (Surface::Parametric(s), Seed::Chart { u, v }) => {
            let (u, v) = find_seed_parametric(s.as_ref(), d, phi, (u, v))?;
            Ok(Seed::Chart { u, v })
        }
        (Surface::Implicit(s), Seed::Point(p)) => Ok(Seed::Point(find_seed_implicit(s.as_ref(), d, phi, p)?)),
        (Surface::Parametric(_), Seed::Point(_)) => Err(Error::invalid("parametric surfaces take a chart seed (u, v)")),
        (Surface::Implicit(_), Seed::Chart { .. }) => Err(Error::invalid("implicit surfaces take a point seed (x, y, z)")),
    }
}

/// Root of `g = ⟨U, d⟩ − cos φ` along the `v`-line through the guess, then
/// along the `u`-line: outward scan for the nearest sign change followed by
/// safeguarded Newton/bisection.
pub fn find_seed_parametric(
    surface: &dyn ParametricSurface,
    d: Vec3,
    phi: f64,
    (u0, v0): (f64, f64),
) -> Result<(f64, f64)> {
    check_axis(d, phi)?;
    let level = phi.cos();
    let domain = surface.domain();
    let (u0, v0) = domain.wrap(u0, v0);
    let eval = |u: f64, v: f64| -> Result<(f64, f64, f64)> {
        let jet = chart_jet(surface, u, v)?;
        let (nu, nv) = normal_derivatives_of(&jet)?;
        Ok((unit_normal(&jet)?.dot(d) - level, nu.dot(d), nv.dot(d)))
    };
    let (g0, _, _) = eval(u0, v0)?;
    if g0.abs() <= SEED_TOL {
        return Ok((u0, v0));
    }
    let lines = [
        (domain.v, domain.periodic_v, v0, true),
        (domain.u, domain.periodic_u, u0, false),
    ];
    let mut closest = f64::INFINITY;
    for (range, periodic, x0, along_v) in lines {
        let at = |x: f64| if along_v { (u0, x) } else { (x, v0) };
        let g = |x: f64| -> Result<(f64, f64)> {
            let (u, v) = at(x);
            let (g, gu, gv) = eval(u, v)?;
            Ok((g, if along_v { gv } else { gu }))
        };
        let (lo, hi) = if periodic {
            let half = 0.5 * (range.1 - range.0);
            (x0 - half, x0 + half)
        } else {
            range
        };
        if let Some((a, b)) = scan_for_bracket(&g, x0, g0, lo, hi, &mut closest) {
            let x = solve_bracketed(&g, a, b)?;
            return Ok(domain.wrap(at(x).0, at(x).1));
        }
    }
    Err(no_isophote(format!(
        "no sign change of <U,d> - cos φ along the coordinate lines through ({u0}, {v0}); closest |<U,d> - cos φ| = {closest:e}"
    )))
}

/// Nearest sign change of `g` on either side of `x0` within `[lo, hi]`.
fn scan_for_bracket(
    g: &dyn Fn(f64) -> Result<(f64, f64)>,
    x0: f64,
    g0: f64,
    lo: f64,
    hi: f64,
    closest: &mut f64,
) -> Option<(f64, f64)> {
    let step = (hi - lo) / SCAN_CELLS as f64;
    let mut sides = [(x0, g0, true), (x0, g0, true)];
    for k in 1..=SCAN_CELLS {
        for (side, dir) in sides.iter_mut().zip([1.0, -1.0]) {
            if !side.2 {
                continue;
            }
            let x = x0 + dir * step * k as f64;
            if x < lo || x > hi {
                side.2 = false;
                continue;
            }
            match g(x) {
                Ok((gx, _)) => {
                    *closest = closest.min(gx.abs());
                    if gx == 0.0 || gx.signum() != side.1.signum() {
                        return Some(if dir > 0.0 { (side.0, x) } else { (x, side.0) });
                    }
                    *side = (x, gx, true);
                }
                Err(_) => side.2 = false,
            }
        }
        if !sides[0].2 && !sides[1].2 {
            break;
        }
    }
    None
}

fn solve_bracketed(g: &dyn Fn(f64) -> Result<(f64, f64)>, mut a: f64, mut b: f64) -> Result<f64> {
    let (mut ga, _) = g(a)?;
    let mut x = 0.5 * (a + b);
    for _ in 0..SEED_MAX_ITER {
        let (gx, dgx) = g(x)?;
        if gx.abs() <= SEED_TOL {
            return Ok(x);
        }
        if gx.signum() == ga.signum() {
            a = x;
            ga = gx;
        } else {
            b = x;
        }
        if (b - a).abs() <= 4.0 * f64::EPSILON * (1.0 + x.abs()) {
            return Ok(x);
        }
        let newton = x - gx / dgx;
        x = if newton.is_finite() && newton > a.min(b) && newton < a.max(b) {
            newton
        } else {
            0.5 * (a + b)
        };
    }
    Err(no_isophote(format!("root refinement in [{a}, {b}] did not converge")))
}

/// Projected Gauss–Newton descent on `g²` over `f = 0`, each step along the
/// tangential part of `∇g` with backtracking and reprojection.
pub fn find_seed_implicit(surface: &dyn ImplicitSurface, d: Vec3, phi: f64, guess: Vec3) -> Result<Vec3> {
    check_axis(d, phi)?;
    let level = phi.cos();
    let residual = |p: Vec3| -> Result<f64> {
        let jet = implicit_jet(surface, p)?;
        Ok(jet.unit_normal(surface.eps_reg())?.dot(d) - level)
    };
    let mut p = project_to_implicit(surface, guess, SEED_TOL)?;
    let mut g = residual(p)?;
    for _ in 0..SEED_MAX_ITER {
        if g.abs() <= SEED_TOL {
            return Ok(p);
        }
        let jet = implicit_jet(surface, p)?;
        let normal = jet.unit_normal(surface.eps_reg())?;
        let grad = level_gradient(&jet, d);
        let tangential = grad - normal * grad.dot(normal);
        let slope = tangential.norm_squared();
        if !(slope > 1e-24) {
            return Err(no_isophote(format!(
                "stationary point of <U,d> at {p:?} with |<U,d> - cos φ| = {:e}",
                g.abs()
            )));
        }
        let step = tangential * (-g / slope);
        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..30 {
            if let Ok(q) = project_to_implicit(surface, p + step * alpha, SEED_TOL) {
                if let Ok(gq) = residual(q) {
                    if gq.abs() < g.abs() {
                        accepted = Some((q, gq));
                        break;
                    }
                }
            }
            alpha *= 0.5;
        }
        match accepted {
            Some((q, gq)) => (p, g) = (q, gq),
            None => {
                return Err(no_isophote(format!(
                    "descent stalled at {p:?} with |<U,d> - cos φ| = {:e}",
                    g.abs()
                )))
            }
        }
    }
    if g.abs() <= SEED_TOL {
        Ok(p)
    } else {
        Err(no_isophote(format!(
            "{SEED_MAX_ITER} iterations left |<U,d> - cos φ| = {:e}",
            g.abs()
        )))
    }
}
