use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI, SQRT_2};
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use darboux::trace::*;
use darboux::{Error, Vec3};
use darboux::frames::darboux;
use darboux::surface::{chart_jet, implicit_jet, Catalog, ParametricSurface, Surface};

fn chart(c: Catalog) -> Surface {
    Surface::Parametric(Arc::new(c.chart()))
}

fn level(c: Catalog) -> Surface {
    Surface::Implicit(Arc::new(c.level_set()))
}

const SPHERE: Catalog = Catalog::Sphere { r: 1.0 };
const TORUS: Catalog = Catalog::Torus { major: 2.0, minor: 0.5 };

fn tilted(angle: f64) -> Vec3 {
    Vec3::new(angle.sin(), 0.0, angle.cos())
}

fn config(step: f64, length: f64) -> TraceConfig {
    TraceConfig {
        step,
        length,
        ..TraceConfig::default()
    }
}

fn dist_to_segment(p: Vec3, a: Vec3, b: Vec3) -> f64 {
    let ab = b - a;
    let t = ((p - a).dot(ab) / ab.norm_squared()).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Largest distance from a point of `a` to the polyline `b`, and vice versa.
fn hausdorff(a: &[Vec3], b: &[Vec3]) -> f64 {
    let one_way = |a: &[Vec3], b: &[Vec3]| {
        a.iter()
            .map(|&p| {
                b.windows(2)
                    .map(|w| dist_to_segment(p, w[0], w[1]))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

fn sphere_circle(branch: Branch) -> TraceResult {
    let cfg = TraceConfig {
        branch,
        ..config(1e-3, 2.0 * PI * FRAC_PI_4.cos())
    };
    trace_isophote(&chart(SPHERE), Vec3::Z, FRAC_PI_4, Seed::Chart { u: 0.0, v: FRAC_PI_4 }, &cfg).unwrap()
}

#[test]
fn parametric_direction_on_sphere_is_the_latitude() {
    let s = SPHERE.chart();
    for (branch, sign) in [(Branch::Plus, 1.0), (Branch::Minus, -1.0)] {
        let (du, dv) = isophote_direction_parametric(&s, Vec3::Z, 0.0, FRAC_PI_4, branch, DEFAULT_EPS_SING).unwrap();
        assert!((du.abs() - SQRT_2).abs() < 1e-12);
        assert!(dv.abs() < 1e-15);
        let (du2, _) = isophote_direction_parametric(&s, Vec3::Z, 0.0, FRAC_PI_4, Branch::Plus, 1e-10).unwrap();
        assert_eq!(du, du2 * sign);
    }
}

#[test]
fn constant_normal_directions_are_singular() {
    let cyl = Catalog::Cylinder { r: 1.0 }.chart();
    let plane = Catalog::Plane.chart();
    for (u, v) in [(0.0, 0.0), (1.0, 2.0), (-2.5, -3.0)] {
        let err = isophote_direction_parametric(&cyl, Vec3::Z, u, v, Branch::Plus, DEFAULT_EPS_SING).unwrap_err();
        assert!(matches!(err, Error::SingularIsophote { .. }));
        let d = Vec3::new(0.3, -0.4, 0.5).try_normalize().unwrap();
        let err = isophote_direction_parametric(&plane, d, u, v, Branch::Plus, DEFAULT_EPS_SING).unwrap_err();
        assert!(matches!(err, Error::SingularIsophote { .. }));
    }
}

#[test]
fn delta_coefficients_on_sphere_and_plane() {
    let (delta, delta_star) = delta_coefficients(&SPHERE.chart(), Vec3::Z, 0.0, FRAC_PI_4, (SQRT_2, 0.0)).unwrap();
    assert!(delta.abs() < 1e-15);
    assert!((delta_star + 0.5).abs() < 1e-15);
    let (delta, delta_star) = delta_coefficients(&Catalog::Plane.chart(), tilted(0.4), 0.3, -0.2, (0.6, 0.8)).unwrap();
    assert_eq!((delta, delta_star), (0.0, 0.0));
}

#[test]
fn delta_residual_vanishes_only_for_isophotic_helix_direction() {
    let cyl = Catalog::Cylinder { r: 1.0 }.chart();
    let dir = (1.0 / SQRT_2, 1.0 / SQRT_2);
    let jet = chart_jet(&cyl, 0.0, 0.0).unwrap();
    let (nu, nv) = darboux::surface::normal_derivatives_of(&jet).unwrap();
    let t = jet.du * dir.0 + jet.dv * dir.1;
    let (kn, tg) = direction_curvatures(darboux::surface::unit_normal(&jet).unwrap(), nu * dir.0 + nv * dir.1, t);
    let helix = darboux(&darboux::fixtures::helix_on_cylinder(1.0, 1.0).unwrap(), 0.0).unwrap();
    assert!((kn - helix.kn).abs() < 1e-12 && (tg - helix.tg).abs() < 1e-12);

    // ⟨U′, ẑ⟩ ≡ 0 on the cylinder: every direction is isophotic.
    let (delta, delta_star) = delta_coefficients(&cyl, Vec3::Z, 0.0, 0.0, dir).unwrap();
    assert!((delta - 0.5).abs() < 1e-12 && (delta_star + 0.5).abs() < 1e-12);
    assert!((delta * dir.0 + delta_star * dir.1).abs() < 1e-12);

    // For d = ŷ the helix direction has ⟨U′, d⟩ = u′ ≠ 0; the field direction is v-ward.
    let (delta, delta_star) = delta_coefficients(&cyl, Vec3::Y, 0.0, 0.0, dir).unwrap();
    assert!((delta * dir.0 + delta_star * dir.1).abs() > 0.1);
    let field = isophote_direction_parametric(&cyl, Vec3::Y, 0.0, 0.0, Branch::Plus, DEFAULT_EPS_SING).unwrap();
    let (delta, delta_star) = delta_coefficients(&cyl, Vec3::Y, 0.0, 0.0, field).unwrap();
    assert!((delta * field.0 + delta_star * field.1).abs() < 1e-12);
}

#[test]
fn implicit_direction_examples() {
    let sphere = SPHERE.level_set();
    let p = Vec3::new(FRAC_PI_4.cos(), 0.0, FRAC_PI_4.sin());
    let t = isophote_direction_implicit(&sphere, Vec3::Z, p, Branch::Plus, DEFAULT_EPS_SING).unwrap();
    assert!(t.distance(Vec3::Y) < 1e-15 || t.distance(-Vec3::Y) < 1e-15);
    let t2 = isophote_direction_implicit(&sphere, Vec3::Z, p, Branch::Minus, DEFAULT_EPS_SING).unwrap();
    assert_eq!(t2, -t);

    let plane = Catalog::Plane.level_set();
    let err = isophote_direction_implicit(&plane, tilted(0.7), Vec3::new(0.2, 0.3, 0.0), Branch::Plus, 1e-10);
    assert!(matches!(err, Err(Error::SingularIsophote { .. })));

    let err = isophote_direction_implicit(&sphere, Vec3::Z, Vec3::Z, Branch::Plus, DEFAULT_EPS_SING);
    assert!(matches!(err, Err(Error::SingularIsophote { .. })));

    let err = isophote_direction_implicit(&sphere, Vec3::Z, Vec3::new(0.0, 0.0, 1.1), Branch::Plus, 1e-10);
    assert!(matches!(err, Err(Error::OffSurface { .. })));
}

#[test]
fn omega_examples() {
    let sphere = SPHERE.level_set();
    let p = Vec3::new(FRAC_PI_4.cos(), 0.0, FRAC_PI_4.sin());
    let omega = omega_coefficients(&sphere, Vec3::Z, p, Vec3::Y).unwrap();
    assert!(omega.distance(-Vec3::Z) < 1e-15);
    assert!(omega.dot(Vec3::Y).abs() < 1e-15);
    let grad = p * 2.0;
    assert!(grad.cross(omega).try_normalize().unwrap().distance(Vec3::Y) < 1e-15);

    // A parallel circle of the torus is a line of curvature: Ω = k_n d.
    let torus = TORUS.level_set();
    let q = Vec3::new(2.0 + 0.5 * 0.3f64.cos(), 0.0, 0.5 * 0.3f64.sin());
    let d = tilted(0.5);
    let (kn, tg) = {
        let jet = implicit_jet(&torus, q).unwrap();
        direction_curvatures(jet.unit_normal(1e-10).unwrap(), jet.normal_derivative(Vec3::Y), Vec3::Y)
    };
    assert!(tg.abs() < 1e-14);
    let omega = omega_coefficients(&torus, d, q, Vec3::Y).unwrap();
    assert!(omega.distance(d * kn) < 1e-14);
}

#[test]
fn find_seed_examples() {
    let (u, v) = find_seed_parametric(&SPHERE.chart(), Vec3::Z, FRAC_PI_3, (0.0, 0.4)).unwrap();
    assert_eq!(u, 0.0);
    assert!((v - FRAC_PI_6).abs() < 1e-12);

    let err = find_seed_parametric(&Catalog::Plane.chart(), Vec3::Z, FRAC_PI_6, (0.0, 0.0)).unwrap_err();
    assert!(matches!(err, Error::NoIsophote { .. }));
    assert!(err.to_string().contains("no isophote at this level near guess"));

    let p = find_seed_implicit(&SPHERE.level_set(), Vec3::Z, FRAC_PI_4, Vec3::new(0.6, 0.0, 0.8)).unwrap();
    assert!((p.z - FRAC_PI_4.cos()).abs() <= 1e-12);
    assert!((p.norm() - 1.0).abs() <= 1e-12);
}

#[test]
fn find_seed_on_the_torus_both_forms() {
    let d = tilted(0.4);
    let (u, v) = find_seed_parametric(&TORUS.chart(), d, 1.0, (0.3, 0.2)).unwrap();
    let jet = chart_jet(&TORUS.chart(), u, v).unwrap();
    assert!((darboux::surface::unit_normal(&jet).unwrap().dot(d) - 1f64.cos()).abs() <= SEED_TOL);

    let p = find_seed_implicit(&TORUS.level_set(), d, 1.0, Vec3::new(2.3, 0.4, 0.3)).unwrap();
    let jet = implicit_jet(&TORUS.level_set(), p).unwrap();
    assert!(jet.value.abs() <= 1e-12);
    assert!((jet.unit_normal(1e-10).unwrap().dot(d) - 1f64.cos()).abs() <= SEED_TOL);
}

#[test]
fn sphere_latitude_trace_closes() {
    let r = sphere_circle(Branch::Plus);
    assert_eq!(r.termination, Termination::Closed);
    assert!(r.max_level_drift() <= 1e-8, "drift {}", r.max_level_drift());
    assert!(r.end_gap() <= 1e-5, "gap {}", r.end_gap());
    assert!(r.max_constraint_residual() <= 1e-6);
    let circumference = 2.0 * PI * FRAC_PI_4.cos();
    assert!((r.samples.last().unwrap().s - circumference).abs() < 1e-6);
    for p in &r.samples {
        assert!((p.point.z - FRAC_PI_4.sin()).abs() < 1e-12);
        assert!((p.tangent.norm() - 1.0).abs() <= 1e-9);
        assert!(p.tg.abs() <= 1e-8 && (p.kn + 1.0).abs() <= 1e-8);
        // The plus branch runs toward decreasing u, so k_g = −tan v₀.
        assert!((p.kg + 1.0).abs() <= 1e-8, "k_g = {}", p.kg);
        assert!(p.res_unit_speed <= 1e-12);
    }
    let n = r.samples.len();
    for w in r.samples[..n - 1].windows(2) {
        assert!((w[1].s - w[0].s - 1e-3).abs() <= 1e-12);
    }
}

#[test]
fn branches_trace_the_same_circle_in_opposite_senses() {
    let plus = sphere_circle(Branch::Plus);
    let minus = sphere_circle(Branch::Minus);
    assert!(plus.samples[1].tangent.dot(minus.samples[1].tangent) < -0.99);
    assert!(hausdorff(&plus.points(), &minus.points()) <= 1e-6);
}

#[test]
fn implicit_torus_trace_keeps_every_constraint() {
    let torus = level(TORUS);
    let phi = FRAC_PI_3;
    let seed = find_seed(&torus, Vec3::Z, phi, Seed::Point(Vec3::new(2.4, 0.0, 0.3))).unwrap();
    let r = trace_isophote(&torus, Vec3::Z, phi, seed, &config(1e-3, 5.0)).unwrap();
    assert_eq!(r.termination, Termination::LengthReached);
    assert_eq!(r.samples.len(), 5001);
    assert!(r.max_level_drift() <= 1e-7);
    for p in &r.samples {
        assert!(p.res_level.unwrap() <= 1e-9);
        assert!(p.res_tangency.unwrap() <= 1e-9);
        assert!(p.res_constraint <= 1e-6);
        assert!(p.res_unit_speed <= 1e-9);
    }
}

#[test]
fn tilted_torus_traces_in_both_forms() {
    let d = tilted(0.6);
    let phi = 1.2;
    let seed = find_seed(&chart(TORUS), d, phi, Seed::Chart { u: 0.0, v: 0.5 }).unwrap();
    let r = trace_isophote(&chart(TORUS), d, phi, seed, &config(1e-3, 3.0)).unwrap();
    assert!(r.max_level_drift() <= 1e-9);
    assert!(r.max_constraint_residual() <= 1e-6);
    assert!(r.max_unit_speed_residual() <= 1e-12);

    let start = r.samples[0].point;
    let seed = find_seed(&level(TORUS), d, phi, Seed::Point(start)).unwrap();
    let Seed::Point(p) = seed else { unreachable!() };
    assert!(p.distance(start) < 1e-9);
    let cfg = TraceConfig {
        branch: if r.samples[0].tangent.dot(implicit_direction(p, d)) > 0.0 {
            Branch::Plus
        } else {
            Branch::Minus
        },
        ..config(1e-3, 3.0)
    };
    let imp = trace_isophote(&level(TORUS), d, phi, seed, &cfg).unwrap();
    assert!(hausdorff(&r.points(), &imp.points()) <= 1e-6);
    for (a, b) in r.samples.iter().zip(&imp.samples) {
        assert!((a.kg - b.kg).abs() < 1e-6 && (a.kn - b.kn).abs() < 1e-9 && (a.tg - b.tg).abs() < 1e-9);
    }
}

fn implicit_direction(p: Vec3, d: Vec3) -> Vec3 {
    isophote_direction_implicit(&TORUS.level_set(), d, p, Branch::Plus, DEFAULT_EPS_SING).unwrap()
}

#[test]
fn implicit_sphere_reproduces_the_latitude_circle() {
    let param = sphere_circle(Branch::Plus);
    let seed = Seed::Point(param.samples[0].point);
    let cfg = config(1e-3, 2.0 * PI * FRAC_PI_4.cos());
    let mut best = f64::INFINITY;
    for branch in [Branch::Plus, Branch::Minus] {
        let r = trace_isophote(&level(SPHERE), Vec3::Z, FRAC_PI_4, seed, &TraceConfig { branch, ..cfg }).unwrap();
        assert_eq!(r.termination, Termination::Closed);
        best = best.min(hausdorff(&param.points(), &r.points()));
    }
    assert!(best <= 1e-6);
}

#[test]
fn project_isophote_flag_pins_the_level() {
    let torus = level(TORUS);
    let d = tilted(0.6);
    let seed = find_seed(&torus, d, 1.2, Seed::Point(Vec3::new(2.4, 0.1, 0.3))).unwrap();
    let cfg = TraceConfig {
        project_isophote: true,
        ..config(2e-2, 2.0)
    };
    let r = trace_isophote(&torus, d, 1.2, seed, &cfg).unwrap();
    assert!(r.max_level_drift() <= 1e-12);
    assert!(r.samples.iter().all(|p| p.res_level.unwrap() <= 1e-12));
}

fn drift_ratio(surface: &Surface, d: Vec3, phi: f64, guess: Seed, h: f64, length: f64) -> f64 {
    let seed = find_seed(surface, d, phi, guess).unwrap();
    let coarse = trace_isophote(surface, d, phi, seed, &config(h, length)).unwrap();
    let fine = trace_isophote(surface, d, phi, seed, &config(h / 2.0, length)).unwrap();
    assert_eq!(coarse.termination, Termination::LengthReached);
    coarse.max_level_drift() / fine.max_level_drift()
}

#[test]
fn halving_the_step_shrinks_drift_at_fourth_order() {
    let d = tilted(0.5);
    let ratio = drift_ratio(&chart(SPHERE), d, 1.0, Seed::Chart { u: 0.0, v: 0.2 }, 0.1, 4.0);
    assert!(ratio >= 11.0, "sphere ratio {ratio}");
    let ratio = drift_ratio(&chart(TORUS), d, 1.2, Seed::Chart { u: 0.0, v: 0.5 }, 0.1, 4.0);
    assert!(ratio >= 11.0, "torus chart ratio {ratio}");
    let ratio = drift_ratio(&level(TORUS), d, 1.2, Seed::Point(Vec3::new(2.4, 0.1, 0.3)), 0.1, 4.0);
    assert!(ratio >= 11.0, "torus level-set ratio {ratio}");
}

#[test]
fn constant_normal_traces_fail_as_singular() {
    let cases = [
        (chart(Catalog::Plane), Seed::Chart { u: 0.0, v: 0.0 }, 0.0),
        (level(Catalog::Plane), Seed::Point(Vec3::ZERO), 0.0),
        (chart(Catalog::Cylinder { r: 1.0 }), Seed::Chart { u: 0.0, v: 0.0 }, PI / 2.0),
        (level(Catalog::Cylinder { r: 1.0 }), Seed::Point(Vec3::X), PI / 2.0),
    ];
    for (surface, seed, phi) in cases {
        let err = trace_isophote(&surface, Vec3::Z, phi, seed, &TraceConfig::default()).unwrap_err();
        assert!(matches!(err, Error::SingularIsophote { .. }), "{err}");
    }
}

#[test]
fn seed_must_lie_on_the_level() {
    let err = trace_isophote(
        &chart(SPHERE),
        Vec3::Z,
        FRAC_PI_4,
        Seed::Chart { u: 0.0, v: FRAC_PI_4 - 1e-6 },
        &TraceConfig::default(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::SeedOffLevel { .. }));
    assert!(err.to_string().contains("find_seed"));

    let err = trace_isophote(&level(SPHERE), Vec3::Z, 0.5, Seed::Point(Vec3::X * 1.01), &TraceConfig::default());
    assert!(matches!(err, Err(Error::OffSurface { .. })));
    let err = trace_isophote(&level(SPHERE), Vec3::Z, 0.5, Seed::Chart { u: 0.0, v: 0.0 }, &TraceConfig::default());
    assert!(matches!(err, Err(Error::Invalid(_))));
    let err = trace_isophote(&chart(SPHERE), Vec3::Z * 2.0, 0.5, Seed::Chart { u: 0.0, v: 0.0 }, &TraceConfig::default());
    assert!(matches!(err, Err(Error::Invalid(_))));
    let bad = TraceConfig {
        step: 0.0,
        ..TraceConfig::default()
    };
    let err = trace_isophote(&chart(SPHERE), Vec3::Z, FRAC_PI_4, Seed::Chart { u: 0.0, v: FRAC_PI_4 }, &bad);
    assert!(matches!(err, Err(Error::Invalid(_))));
}

#[test]
fn cylinder_rulings_leave_the_domain() {
    let cyl = chart(Catalog::Cylinder { r: 1.0 });
    let d = Vec3::new(1.0, 0.0, 1.0).try_normalize().unwrap();
    let seed = find_seed(&cyl, d, 1.2, Seed::Chart { u: 0.5, v: 95.0 }).unwrap();
    let mut ends = Vec::new();
    for branch in [Branch::Plus, Branch::Minus] {
        let cfg = TraceConfig { branch, ..config(1e-2, 300.0) };
        let r = trace_isophote(&cyl, d, 1.2, seed, &cfg).unwrap();
        assert_eq!(r.termination, Termination::LeftDomain);
        assert!(r.termination_detail.as_deref().unwrap().contains("outside chart domain"));
        ends.push(r.samples.last().unwrap().s);
    }
    ends.sort_by(f64::total_cmp);
    assert!(ends[0] <= 5.0 && ends[0] > 5.0 - 2e-2, "{ends:?}");
    assert!(ends[1] <= 195.0 && ends[1] > 195.0 - 2e-2, "{ends:?}");
}

#[test]
fn final_partial_step_lands_on_the_length() {
    let d = tilted(0.5);
    let seed = find_seed(&chart(TORUS), d, 1.2, Seed::Chart { u: 0.0, v: 0.5 }).unwrap();
    let r = trace_isophote(&chart(TORUS), d, 1.2, seed, &config(0.3, 1.0)).unwrap();
    let s: Vec<f64> = r.samples.iter().map(|p| p.s).collect();
    assert_eq!(s.len(), 5);
    assert!((s[3] - 0.9).abs() < 1e-15 && s[4] == 1.0);
}

#[test]
fn closed_form_matches_field_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let surfaces = [
        TORUS.chart(),
        Catalog::Ellipsoid { a: 1.0, b: 2.0, c: 3.0 }.chart(),
        Catalog::MonkeySaddle.chart(),
        Catalog::Helicoid { a: 0.5 }.chart(),
    ];
    let mut checked = 0;
    while checked < 100 {
        let s = &surfaces[checked % surfaces.len()];
        let dom = s.domain();
        let (u, v) = (
            rng.gen_range(dom.u.0 * 0.9..dom.u.1 * 0.9),
            rng.gen_range(dom.v.0 * 0.9..dom.v.1 * 0.9),
        );
        let (u, v) = if matches!(s.0, Catalog::MonkeySaddle) { (u / 10.0, v / 10.0) } else { (u, v) };
        let d = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let Some(d) = d.try_normalize() else { continue };
        let Ok(field) = isophote_direction_parametric(s, d, u, v, Branch::Plus, 1e-6) else { continue };
        let coeffs = delta_coefficients(s, d, u, v, field).unwrap();
        assert!((coeffs.0 * field.0 + coeffs.1 * field.1).abs() <= 1e-9 * (1.0 + coeffs.0.abs() + coeffs.1.abs()));
        let closed = direction_from_delta(s, u, v, coeffs).unwrap();
        let same = (closed.0 - field.0).abs().max((closed.1 - field.1).abs());
        let flipped = (closed.0 + field.0).abs().max((closed.1 + field.1).abs());
        assert!(same.min(flipped) <= 1e-8, "{s:?} at ({u}, {v}): {closed:?} vs {field:?}");
        checked += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sphere_isophotes_are_lines_of_curvature(tilt in 0.0f64..1.0, phi in 0.3f64..1.2, u0 in -3.0f64..3.0) {
        let d = tilted(tilt);
        let Ok(seed) = find_seed(&chart(SPHERE), d, phi, Seed::Chart { u: u0, v: 0.0 }) else { return Ok(()) };
        let r = trace_isophote(&chart(SPHERE), d, phi, seed, &config(1e-2, 1.0)).unwrap();
        for p in &r.samples {
            prop_assert!(p.tg.abs() <= 1e-8 && (p.kn + 1.0).abs() <= 1e-8);
        }
    }

    #[test]
    fn parametric_traces_satisfy_the_delta_constraint(tilt in 0.0f64..1.5, phi in 0.5f64..2.5, u0 in -3.0f64..3.0) {
        let d = tilted(tilt);
        let Ok(seed) = find_seed(&chart(TORUS), d, phi, Seed::Chart { u: u0, v: 0.0 }) else { return Ok(()) };
        let Ok(r) = trace_isophote(&chart(TORUS), d, phi, seed, &config(1e-2, 2.0)) else { return Ok(()) };
        for p in &r.samples {
            prop_assert!(p.res_constraint <= 1e-6);
            prop_assert!(p.res_unit_speed <= 1e-9);
        }
    }

    #[test]
    fn implicit_traces_satisfy_tangency_and_omega(tilt in 0.0f64..1.5, phi in 0.5f64..2.5, x in 1.6f64..2.4) {
        let d = tilted(tilt);
        let torus = level(TORUS);
        let Ok(seed) = find_seed(&torus, d, phi, Seed::Point(Vec3::new(x, 0.2, 0.3))) else { return Ok(()) };
        let Ok(r) = trace_isophote(&torus, d, phi, seed, &config(1e-2, 2.0)) else { return Ok(()) };
        for p in &r.samples {
            prop_assert!(p.res_level.unwrap() <= 1e-9);
            prop_assert!(p.res_tangency.unwrap() <= 1e-9);
            prop_assert!(p.res_constraint <= 1e-6);
            prop_assert!(p.res_unit_speed <= 1e-9);
        }
    }
}
