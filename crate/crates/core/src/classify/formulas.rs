//! Pointwise characterization formulas in terms of the Darboux scalars.
//!
//! Each returns `None` where its divisor falls below `eps`.

use crate::frames::DarbouxFrame;
use crate::vec3::Vec3;

/// Darboux scalars and their arclength derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scalars {
    pub kg: f64,
    pub kn: f64,
    pub tg: f64,
    pub dkg: f64,
    pub dkn: f64,
    pub dtg: f64,
}

impl Scalars {
    pub fn new(frame: &DarbouxFrame, rates: Vec3) -> Self {
        Scalars {
            kg: frame.kg,
            kn: frame.kn,
            tg: frame.tg,
            dkg: rates.x,
            dkn: rates.y,
            dtg: rates.z,
        }
    }
}

/// `(k_g τ_g′ − τ_g k_g′ − k_n (k_g² + τ_g²)) / (k_g² + τ_g²)^{3/2}`.
pub fn mu_v(x: &Scalars, eps: f64) -> Option<f64> {
    let q = x.kg * x.kg + x.tg * x.tg;
    if !(q > eps * eps) {
        return None;
    }
    Some((x.kg * x.dtg - x.tg * x.dkg - x.kn * q) / q.powf(1.5))
}

/// `(k_n τ_g′ − τ_g k_n′ − k_g (k_n² + τ_g²)) / (k_n² + τ_g²)^{3/2}`.
pub fn mu_u(x: &Scalars, eps: f64) -> Option<f64> {
    let q = x.kn * x.kn + x.tg * x.tg;
    if !(q > eps * eps) {
        return None;
    }
    Some((x.kn * x.dtg - x.tg * x.dkn - x.kg * q) / q.powf(1.5))
}

/// `(τ_g/k_g)′ − ((τ_g/k_g)² + 1) k_n`.
pub fn tu_plane_lhs(x: &Scalars, eps: f64) -> Option<f64> {
    if !(x.kg.abs() > eps) {
        return None;
    }
    let ratio = x.tg / x.kg;
    let ratio_prime = (x.dtg * x.kg - x.tg * x.dkg) / (x.kg * x.kg);
    Some(ratio_prime - (ratio * ratio + 1.0) * x.kn)
}

/// `(τ_g/k_n)′ − ((τ_g/k_n)² + 1) k_g`.
pub fn tv_plane_lhs(x: &Scalars, eps: f64) -> Option<f64> {
    if !(x.kn.abs() > eps) {
        return None;
    }
    let ratio = x.tg / x.kn;
    let ratio_prime = (x.dtg * x.kn - x.tg * x.dkn) / (x.kn * x.kn);
    Some(ratio_prime - (ratio * ratio + 1.0) * x.kg)
}

/// `k_g² / (k_g² + τ_g²)^{3/2}`, the prefactor of the normal-slant function.
pub fn normal_slant_prefactor(kg: f64, tg: f64) -> f64 {
    kg * kg / (kg * kg + tg * tg).powf(1.5)
}

/// `k_n² / (k_n² + τ_g²)^{3/2}`, the prefactor of the isophotic function.
pub fn isophotic_prefactor(kn: f64, tg: f64) -> f64 {
    kn * kn / (kn * kn + tg * tg).powf(1.5)
}

/// `κ² / (κ² + τ²)^{3/2} · (τ/κ)′`.
pub fn slant_helix_value(kappa: f64, tau: f64, ratio_prime: f64) -> f64 {
    kappa * kappa / (kappa * kappa + tau * tau).powf(1.5) * ratio_prime
}

/// Position claimed for a curve in `sp{T, U}`:
/// `(k_g τ_g T + k_g² U) / (k_g² + τ_g²)^{3/2}`.
pub fn tu_position_claim(f: &DarbouxFrame, eps: f64) -> Option<Vec3> {
    let q = f.kg * f.kg + f.tg * f.tg;
    if !(q > eps * eps) {
        return None;
    }
    let d3 = q.powf(1.5);
    Some((f.t * (f.kg * f.tg) + f.u * (f.kg * f.kg)) / d3)
}

/// Position claimed for a curve in `sp{T, V}`:
/// `(k_n² V − k_n τ_g T) / (k_n² + τ_g²)^{3/2}`.
pub fn tv_position_claim(f: &DarbouxFrame, eps: f64) -> Option<Vec3> {
    let q = f.kn * f.kn + f.tg * f.tg;
    if !(q > eps * eps) {
        return None;
    }
    let d3 = q.powf(1.5);
    Some((f.v * (f.kn * f.kn) - f.t * (f.kn * f.tg)) / d3)
}
