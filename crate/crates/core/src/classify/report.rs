//! Full classification of a curve on a surface.

use std::collections::BTreeMap;

use serde::Serialize;

use super::*;
use crate::frames::{frenet_at, FrenetFrame};

/// Thresholds used by [`classify_report`]; every value is echoed in the report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative tolerance of constancy verdicts.
    pub constancy: f64,
    /// Absolute tolerance for "identically zero" flags (geodesic, asymptotic, line of curvature).
    pub zero: f64,
    /// Plane-membership tolerance; `None` selects `1e-8 · (1 + max |γ|)`.
    pub plane: Option<f64>,
    /// Vanishing divisor / pair threshold.
    pub degenerate: f64,
    /// Samples excluded at each end from verdict statistics.
    pub end_exclusion: usize,
}

impl Tolerances {
    pub fn analytic() -> Self {
        Tolerances {
            constancy: 1e-6,
            zero: 1e-8,
            plane: None,
            degenerate: EPS_DEGENERATE,
            end_exclusion: 0,
        }
    }

    pub fn sampled() -> Self {
        Tolerances {
            constancy: 1e-3,
            zero: 1e-3,
            plane: None,
            degenerate: EPS_DEGENERATE,
            end_exclusion: 2,
        }
    }

    pub fn for_curve(c: &CurveOnSurface) -> Self {
        if c.is_sampled() {
            Self::sampled()
        } else {
            Self::analytic()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Flags {
    pub geodesic: bool,
    pub asymptotic: bool,
    pub line_of_curvature: bool,
    pub in_tu_plane: bool,
    pub in_tv_plane: bool,
    pub relatively_normal_slant_helix: bool,
    pub isophotic: bool,
    pub slant_helix: bool,
    pub rectifying: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RectifyingSummary {
    pub c1: f64,
    pub c2: f64,
    pub fit_residual: f64,
    pub rectifying: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Verdicts {
    pub mu_v: Option<ConstancyVerdict>,
    pub mu_u: Option<ConstancyVerdict>,
    pub normal_slant_function: Option<ConstancyVerdict>,
    pub isophotic_function: Option<ConstancyVerdict>,
    pub slant_helix: Option<ConstancyVerdict>,
    pub kg: Option<ConstancyVerdict>,
    pub kn: Option<ConstancyVerdict>,
    pub frenet_prefactor: Option<ConstancyVerdict>,
    pub rectifying: Option<RectifyingSummary>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Axes {
    /// Fit to the `V` series: the relatively normal-slant axis.
    pub v_axis: Option<AxisEstimate>,
    /// Fit to the `U` series: the isophote axis.
    pub u_axis: Option<AxisEstimate>,
}

/// A corollary-style implication evaluated on this curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    pub name: String,
    pub hypotheses_hold: bool,
    /// Whether the conclusion agrees with the computed verdicts; `None` when
    /// the hypotheses fail or an input is unavailable.
    pub consistent: Option<bool>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub what: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportSeries {
    pub s: Vec<f64>,
    #[serde(flatten)]
    pub values: BTreeMap<String, Vec<Option<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub curve: String,
    pub orientation: String,
    pub samples: usize,
    pub c: f64,
    pub series: ReportSeries,
    pub verdicts: Verdicts,
    pub flags: Flags,
    pub axes: Axes,
    pub tolerances: Tolerances,
    pub cross_checks: Vec<CrossCheck>,
    pub failures: Vec<Failure>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Builder {
    series: BTreeMap<String, Vec<Option<f64>>>,
    failures: Vec<Failure>,
    tol: Tolerances,
}

impl Builder {
    fn add(&mut self, s: &CharacterizationSeries) {
        self.series.insert(s.name.clone(), s.values.clone());
    }

    fn fail(&mut self, what: &str, e: impl ToString) {
        self.failures.push(Failure {
            what: what.into(),
            reason: e.to_string(),
        });
    }

    fn take<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        r.map_err(|e| self.fail(what, e)).ok()
    }

    fn verdict(&mut self, s: &CharacterizationSeries) -> Option<ConstancyVerdict> {
        let trimmed = s.without_ends(self.tol.end_exclusion);
        let r = is_constant(&trimmed, self.tol.constancy);
        self.take(&format!("{} constancy", s.name), r)
    }
}

fn zero_everywhere(values: impl Iterator<Item = f64>, tol: f64) -> bool {
    values.map(f64::abs).fold(0.0, f64::max) <= tol
}

fn check(name: &str, hypotheses_hold: bool, consistent: Option<bool>, detail: String) -> CrossCheck {
    CrossCheck {
        name: name.into(),
        hypotheses_hold,
        consistent: if hypotheses_hold { consistent } else { None },
        detail,
    }
}

fn constant(v: &Option<ConstancyVerdict>) -> Option<bool> {
    v.as_ref().map(|v| v.is_constant)
}

/// Evaluate every characterization on `grid`. Sub-computations that fail are
/// recorded in `failures` rather than aborting the report; only a frame
/// failure (irregular surface point) is fatal.
pub fn classify_report(
    c: &CurveOnSurface,
    grid: &SampleGrid,
    tol: &Tolerances,
    c_const: f64,
) -> Result<ClassificationReport> {
    let samples = sample_frames(c, grid)?;
    let s = grid.values().to_vec();
    let mut b = Builder {
        series: BTreeMap::new(),
        failures: Vec::new(),
        tol: *tol,
    };
    let scalar = |f: &dyn Fn(&FrameSample) -> f64| samples.iter().map(|x| Some(f(x))).collect::<Vec<_>>();
    let kg = CharacterizationSeries::new("kg", s.clone(), scalar(&|x| x.frame.kg));
    let kn = CharacterizationSeries::new("kn", s.clone(), scalar(&|x| x.frame.kn));
    let tg = CharacterizationSeries::new("tg", s.clone(), scalar(&|x| x.frame.tg));
    for x in [&kg, &kn, &tg] {
        b.add(x);
    }
    let mut verdicts = Verdicts {
        kg: b.verdict(&kg),
        kn: b.verdict(&kn),
        ..Verdicts::default()
    };

    let mut flags = Flags {
        geodesic: zero_everywhere(kg.defined(), tol.zero),
        asymptotic: zero_everywhere(kn.defined(), tol.zero),
        line_of_curvature: zero_everywhere(tg.defined(), tol.zero),
        ..Flags::default()
    };

    // Characterization functions.
    if let Some(mv) = b.take("mu_v", mu_v_from(&samples)) {
        b.add(&mv);
        verdicts.mu_v = b.verdict(&mv);
    }
    if let Some(mu) = b.take("mu_u", mu_u_from(&samples)) {
        b.add(&mu);
        verdicts.mu_u = b.verdict(&mu);
    }
    flags.relatively_normal_slant_helix = constant(&verdicts.mu_v).unwrap_or(false);
    flags.isophotic = constant(&verdicts.mu_u).unwrap_or(false);

    for plane in [Plane::TU, Plane::TV] {
        if let Some(fam) = b.take(family_name(plane), theorem_family_from(c, &samples, plane, c_const)) {
            for x in [&fam.integral, &fam.function, &fam.first, &fam.second] {
                b.add(x);
            }
            let v = b.verdict(&fam.function);
            match plane {
                Plane::TU => verdicts.normal_slant_function = v,
                Plane::TV => verdicts.isophotic_function = v,
            }
        }
        let residual = position_theorem_residual_from(&samples, plane);
        if let Some(r) = b.take(&format!("position claim ({plane:?})"), residual) {
            b.add(&r);
        }
        let ode = plane_ode_residual_from(c, &samples, c_const, plane);
        if let Some(r) = b.take(&format!("plane ODE ({plane:?})"), ode) {
            b.add(&r);
        }
    }

    // Plane membership.
    let pos = position_decomposition_from(&samples, tol.plane);
    for x in [&pos.t, &pos.v, &pos.u] {
        b.add(x);
    }
    flags.in_tu_plane = pos.in_tu_plane;
    flags.in_tv_plane = pos.in_tv_plane;

    // Frenet-based quantities.
    let frenet: Vec<Result<FrenetFrame>> = s.iter().map(|&x| c.jet(x).and_then(|j| frenet_at(&j, x))).collect();
    b.add(&CharacterizationSeries::new(
        "kappa",
        s.clone(),
        frenet.iter().map(|f| f.as_ref().ok().map(|f| f.kappa)).collect(),
    ));
    b.add(&CharacterizationSeries::new(
        "tau",
        s.clone(),
        frenet.iter().map(|f| f.as_ref().ok().map(|f| f.tau)).collect(),
    ));
    let prefactor = CharacterizationSeries::new(
        "frenet_prefactor",
        s.clone(),
        frenet
            .iter()
            .map(|f| f.as_ref().ok().map(|f| f.kappa * f.kappa / (f.kappa.powi(2) + f.tau.powi(2)).powf(1.5)))
            .collect(),
    );
    b.add(&prefactor);
    if prefactor.defined_count() > 0 {
        verdicts.frenet_prefactor = b.verdict(&prefactor);
    }
    if let Some(e) = frenet.iter().find_map(|f| f.as_ref().err()) {
        b.fail("Frenet frame", e);
    } else {
        if let Some(sh) = b.take("slant_helix", slant_helix_series(c, grid)) {
            b.add(&sh);
            verdicts.slant_helix = b.verdict(&sh);
        }
        if let Some(r) = b.take("rectifying", rectifying_check(c, grid, tol.constancy)) {
            b.add(&r.gamma_n);
            verdicts.rectifying = Some(RectifyingSummary {
                c1: r.c1,
                c2: r.c2,
                fit_residual: r.fit_residual,
                rectifying: r.rectifying,
            });
        }
    }
    flags.slant_helix = constant(&verdicts.slant_helix).unwrap_or(false);
    flags.rectifying = verdicts.rectifying.as_ref().is_some_and(|r| r.rectifying);

    // Axes.
    let v_vectors: Vec<Vec3> = samples.iter().map(|x| x.frame.v).collect();
    let u_vectors: Vec<Vec3> = samples.iter().map(|x| x.frame.u).collect();
    let axes = Axes {
        v_axis: b.take("V axis", recover_axis(&v_vectors)),
        u_axis: b.take("U axis", recover_axis(&u_vectors)),
    };

    let cross_checks = cross_checks(&flags, &verdicts, &axes, &b.series, tol);
    Ok(ClassificationReport {
        curve: c.describe(),
        orientation: c.orientation().into(),
        samples: grid.len(),
        c: c_const,
        series: ReportSeries { s, values: b.series },
        verdicts,
        flags,
        axes,
        tolerances: Tolerances {
            plane: Some(pos.tol_plane),
            ..*tol
        },
        cross_checks,
        failures: b.failures,
    })
}

fn max_abs(series: &BTreeMap<String, Vec<Option<f64>>>, name: &str) -> Option<f64> {
    let v = series.get(name)?;
    v.iter().flatten().map(|x| x.abs()).reduce(f64::max)
}

/// `max |a_i − g(b_i)|` over samples where both are defined.
fn max_dev(
    series: &BTreeMap<String, Vec<Option<f64>>>,
    a: &str,
    b: &str,
    g: impl Fn(f64) -> f64,
) -> Option<f64> {
    let (a, b) = (series.get(a)?, series.get(b)?);
    a.iter()
        .zip(b)
        .filter_map(|(x, y)| Some((x.as_ref()? - g(*y.as_ref()?)).abs()))
        .reduce(f64::max)
}

fn cross_checks(
    flags: &Flags,
    verdicts: &Verdicts,
    axes: &Axes,
    series: &BTreeMap<String, Vec<Option<f64>>>,
    tol: &Tolerances,
) -> Vec<CrossCheck> {
    let rns = flags.relatively_normal_slant_helix;
    let iso = flags.isophotic;
    let iff = |a: bool, b: Option<bool>| b.map(|b| a == b);
    let pos_scale = 1.0 + max_abs(series, "position_t").unwrap_or(0.0) + max_abs(series, "position_u").unwrap_or(0.0);
    let small = |x: Option<f64>| x.map(|x| x <= tol.constancy * pos_scale);

    let mut out = vec![
        check(
            "asymptotic curve in sp{T,U}: relatively normal-slant iff κ²/(κ²+τ²)^{3/2} is constant",
            flags.asymptotic && flags.in_tu_plane,
            iff(rns, constant(&verdicts.frenet_prefactor)),
            format!("relatively normal-slant = {rns}"),
        ),
        check(
            "line of curvature in sp{T,U}: relatively normal-slant iff k_g is constant",
            flags.line_of_curvature && flags.in_tu_plane,
            iff(rns, constant(&verdicts.kg)),
            format!("relatively normal-slant = {rns}, k_g constant = {:?}", constant(&verdicts.kg)),
        ),
        check(
            "geodesic in sp{T,V}: isophotic iff κ²/(κ²+τ²)^{3/2} is constant",
            flags.geodesic && flags.in_tv_plane,
            iff(iso, constant(&verdicts.frenet_prefactor)),
            format!("isophotic = {iso}"),
        ),
        check(
            "line of curvature in sp{T,V}: isophotic iff k_n is constant",
            flags.line_of_curvature && flags.in_tv_plane,
            iff(iso, constant(&verdicts.kn)),
            format!("isophotic = {iso}, k_n constant = {:?}", constant(&verdicts.kn)),
        ),
    ];

    let r = max_abs(series, "position_residual_tu");
    out.push(check(
        "relatively normal-slant helix in sp{T,U}: γ = (k_gτ_g T + k_g² U)/(k_g²+τ_g²)^{3/2}",
        rns && flags.in_tu_plane,
        small(r),
        format!("max residual = {r:?}"),
    ));
    let r = max_abs(series, "position_residual_tv");
    out.push(check(
        "isophotic curve in sp{T,V}: γ = (k_n² V − k_nτ_g T)/(k_n²+τ_g²)^{3/2}",
        iso && flags.in_tv_plane,
        small(r),
        format!("max residual = {r:?}"),
    ));
    let (t, u) = (max_abs(series, "position_t"), max_dev(series, "position_u", "kg", |k| 1.0 / k));
    out.push(check(
        "line of curvature, relatively normal-slant, in sp{T,U}: ⟨γ,T⟩ = 0 and ⟨γ,U⟩ = 1/k_g",
        flags.line_of_curvature && rns && flags.in_tu_plane,
        small(t).zip(small(u)).map(|(a, b)| a && b),
        format!("max |⟨γ,T⟩| = {t:?}, max |⟨γ,U⟩ − 1/k_g| = {u:?}"),
    ));
    let (t, v) = (max_abs(series, "position_t"), max_dev(series, "position_v", "kn", |k| 1.0 / k));
    out.push(check(
        "line of curvature, isophotic, in sp{T,V}: ⟨γ,T⟩ = 0 and ⟨γ,V⟩ = 1/k_n",
        flags.line_of_curvature && iso && flags.in_tv_plane,
        small(t).zip(small(v)).map(|(a, b)| a && b),
        format!("max |⟨γ,T⟩| = {t:?}, max |⟨γ,V⟩ − 1/k_n| = {v:?}"),
    ));
    let rect = verdicts.rectifying.as_ref().map(|r| r.rectifying);
    out.push(check(
        "relatively normal-slant helix with k_n = 0 in sp{T,U}: slant helix iff rectifying",
        rns && flags.asymptotic && flags.in_tu_plane,
        iff(flags.slant_helix, rect),
        format!("slant helix = {}, rectifying = {rect:?}", flags.slant_helix),
    ));
    out.push(check(
        "isophotic curve with k_g = 0 in sp{T,V}: slant helix iff rectifying",
        iso && flags.geodesic && flags.in_tv_plane,
        iff(flags.slant_helix, rect),
        format!("slant helix = {}, rectifying = {rect:?}", flags.slant_helix),
    ));

    // The characterization functions against direct axis fits.
    let fits = |a: &Option<AxisEstimate>| a.as_ref().map(|a| a.variance.sqrt() <= tol.constancy);
    out.push(check(
        "μ_v constant iff ⟨V,d⟩ is constant for the fitted axis",
        verdicts.mu_v.is_some() && axes.v_axis.is_some(),
        iff(rns, fits(&axes.v_axis)),
        format!("axis spread = {:?}", axes.v_axis.as_ref().map(|a| a.variance.sqrt())),
    ));
    out.push(check(
        "μ_u constant iff ⟨U,d⟩ is constant for the fitted axis",
        verdicts.mu_u.is_some() && axes.u_axis.is_some(),
        iff(iso, fits(&axes.u_axis)),
        format!("axis spread = {:?}", axes.u_axis.as_ref().map(|a| a.variance.sqrt())),
    ));
    out
}
