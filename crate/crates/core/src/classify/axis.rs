use serde::Serialize;

use crate::error::{Error, Result};
use crate::vec3::{Sym3, Vec3};

/// Eigenvalue gap below which the fitted axis is not unique.
pub const AMBIGUITY_GAP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisEstimate {
    /// Unit axis with non-negative mean projection.
    pub d: Vec3,
    /// `arccos` of the mean projection, in `[0, π]`.
    pub phi: f64,
    /// Variance of the projections onto `d`.
    pub variance: f64,
    pub ambiguous: bool,
    /// Basis of the degenerate eigenspace when ambiguous.
    pub candidates: Vec<Vec3>,
}

/// Fixed direction making the most nearly constant angle with `vectors`: the
/// eigenvector of the smallest eigenvalue of their covariance.
pub fn recover_axis(vectors: &[Vec3]) -> Result<AxisEstimate> {
    if vectors.len() < 3 {
        return Err(Error::InsufficientSamples {
            needed: 3,
            got: vectors.len(),
        });
    }
    let n = vectors.len() as f64;
    let mean = vectors.iter().fold(Vec3::ZERO, |a, &w| a + w) / n;
    let cov = vectors
        .iter()
        .fold(Sym3::ZERO, |c, &w| c.add(&Sym3::outer(w - mean)))
        .scale(1.0 / n);
    let eig = cov.eigen();
    let [l0, l1, l2] = eig.values;

    let degenerate: &[Vec3] = if l2 - l0 < AMBIGUITY_GAP {
        &eig.vectors[..]
    } else if l1 - l0 < AMBIGUITY_GAP {
        &eig.vectors[..2]
    } else {
        &eig.vectors[..1]
    };
    let ambiguous = degenerate.len() > 1;
    let mut d = eig.vectors[0];
    if ambiguous {
        // Prefer the direction of the mean within the degenerate eigenspace.
        let projected = degenerate.iter().fold(Vec3::ZERO, |a, &e| a + e * e.dot(mean));
        if let Some(p) = projected.try_normalize() {
            d = p;
        }
    }
    if d.dot(mean) < 0.0 {
        d = -d;
    }
    let proj = d.dot(mean);
    let variance = vectors.iter().map(|w| (w.dot(d) - proj).powi(2)).sum::<f64>() / n;
    Ok(AxisEstimate {
        d,
        phi: proj.clamp(-1.0, 1.0).acos(),
        variance,
        ambiguous,
        candidates: if ambiguous { degenerate.to_vec() } else { Vec::new() },
    })
}
