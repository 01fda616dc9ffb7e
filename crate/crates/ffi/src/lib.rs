//! C ABI over the `darboux` library.
//!
//! Every entry point returns a [`DarbouxStatus`]. On failure the message is
//! kept per thread and read with [`darboux_last_error_message`]. Handles are
//! opaque and released with their matching `_free` function. No function
//! unwinds across the boundary; panics become [`DarbouxStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use darboux::cli::{curve_from_specs, CliError};
use darboux::classify::{classify_report, Tolerances};
use darboux::frames::{SampleGrid, UnitSpeedCurve};
use darboux::surface::{Surface, SurfaceSpec};
use darboux::trace::{find_seed, trace_isophote, Branch, Seed, Termination, TraceConfig, TraceResult};
use darboux::{Error, Vec3};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DarbouxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    /// The point lies outside a chart domain or off a level set, or the
    /// surface is not regular there.
    DomainError = 4,
    /// Singular point of the isophote field.
    Singular = 5,
    NoIsophote = 6,
    Degenerate = 7,
    /// Index past the end of a trace.
    OutOfRange = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DarbouxTermination {
    LengthReached = 0,
    Closed = 1,
    LeftDomain = 2,
    SingularPoint = 3,
    Error = 4,
}

/// Trace settings; obtain defaults from [`darboux_trace_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarbouxTraceConfig {
    pub step: f64,
    pub length: f64,
    /// `+1` or `-1`.
    pub branch: i32,
    pub closure_tol: f64,
    pub eps_sing: f64,
    pub projection_tol: f64,
    pub project_isophote: bool,
}

/// One trace sample. `has_chart` tells whether `u`, `v` are meaningful;
/// `res_tangency` and `res_level` are NaN on chart traces.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarbouxTraceSample {
    pub s: f64,
    pub point: [f64; 3],
    pub has_chart: bool,
    pub u: f64,
    pub v: f64,
    pub tangent: [f64; 3],
    pub angle_dot: f64,
    pub kg: f64,
    pub kn: f64,
    pub tg: f64,
    pub res_constraint: f64,
    pub res_unit_speed: f64,
    pub res_tangency: f64,
    pub res_level: f64,
}

/// Opaque surface handle holding both representations where available.
pub struct DarbouxSurface {
    spec: SurfaceSpec,
}

/// Opaque trace handle.
pub struct DarbouxTrace {
    result: TraceResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> DarbouxStatus {
    match e {
        Error::Expr(_) => DarbouxStatus::ParseError,
        Error::Invalid(_) => DarbouxStatus::InvalidArgument,
        Error::SingularIsophote { .. } => DarbouxStatus::Singular,
        Error::NoIsophote { .. } => DarbouxStatus::NoIsophote,
        Error::Degenerate { .. } | Error::FrenetUndefined { .. } | Error::InsufficientSamples { .. } => {
            DarbouxStatus::Degenerate
        }
        _ => DarbouxStatus::DomainError,
    }
}

fn fail(status: DarbouxStatus, msg: impl Into<String>) -> DarbouxStatus {
    set_error(msg);
    status
}

fn fail_with(e: Error) -> DarbouxStatus {
    fail(status_of(&e), e.to_string())
}

/// Run `body`, turning panics into [`DarbouxStatus::Panic`].
fn guard(body: impl FnOnce() -> DarbouxStatus) -> DarbouxStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(DarbouxStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, DarbouxStatus> {
    if p.is_null() {
        return Err(fail(DarbouxStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(DarbouxStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn read_vec(p: *const f64, what: &str) -> Result<Vec3, DarbouxStatus> {
    if p.is_null() {
        return Err(fail(DarbouxStatus::NullPointer, format!("{what} is null")));
    }
    let a = std::slice::from_raw_parts(p, 3);
    Ok(Vec3::new(a[0], a[1], a[2]))
}

unsafe fn read_axis(p: *const f64) -> Result<Vec3, DarbouxStatus> {
    read_vec(p, "axis")?
        .try_normalize()
        .ok_or_else(|| fail(DarbouxStatus::InvalidArgument, "axis must be non-zero"))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn darboux_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parse a surface spec such as `builtin:torus?R=2&r=0.5`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn darboux_surface_parse(spec: *const c_char, out: *mut *mut DarbouxSurface) -> DarbouxStatus {
    guard(|| {
        if out.is_null() {
            return fail(DarbouxStatus::NullPointer, "out is null");
        }
        let text = tri!(read_str(spec, "spec"));
        match SurfaceSpec::parse(text) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(DarbouxSurface { spec }));
                DarbouxStatus::Ok
            }
            Err(e) => fail(DarbouxStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `surface` must come from [`darboux_surface_parse`] or be null.
#[no_mangle]
pub unsafe extern "C" fn darboux_surface_free(surface: *mut DarbouxSurface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

unsafe fn surface_ref<'a>(p: *const DarbouxSurface) -> Result<&'a DarbouxSurface, DarbouxStatus> {
    p.as_ref().ok_or_else(|| fail(DarbouxStatus::NullPointer, "surface is null"))
}

fn chart_of(s: &DarbouxSurface) -> Result<Surface, DarbouxStatus> {
    s.spec.parametric().map(Surface::Parametric).map_err(fail_with)
}

fn level_of(s: &DarbouxSurface) -> Result<Surface, DarbouxStatus> {
    s.spec.implicit().map(Surface::Implicit).map_err(fail_with)
}

/// Defaults: `h = 1e-3`, `L = 10`, plus branch, closure tolerance `1e-6`,
/// `ε_sing = 1e-10`, projection tolerance `1e-12`, no level projection.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn darboux_trace_config_default(out: *mut DarbouxTraceConfig) -> DarbouxStatus {
    let Some(out) = out.as_mut() else {
        return fail(DarbouxStatus::NullPointer, "out is null");
    };
    let c = TraceConfig::default();
    *out = DarbouxTraceConfig {
        step: c.step,
        length: c.length,
        branch: 1,
        closure_tol: c.closure_tol,
        eps_sing: c.eps_sing,
        projection_tol: c.projection_tol,
        project_isophote: c.project_isophote,
    };
    DarbouxStatus::Ok
}

unsafe fn read_config(p: *const DarbouxTraceConfig) -> Result<TraceConfig, DarbouxStatus> {
    let Some(c) = p.as_ref() else {
        return Ok(TraceConfig::default());
    };
    let branch = match c.branch {
        1 => Branch::Plus,
        -1 => Branch::Minus,
        b => return Err(fail(DarbouxStatus::InvalidArgument, format!("branch must be +1 or -1, got {b}"))),
    };
    let cfg = TraceConfig {
        step: c.step,
        length: c.length,
        branch,
        closure_tol: c.closure_tol,
        eps_sing: c.eps_sing,
        projection_tol: c.projection_tol,
        project_isophote: c.project_isophote,
    };
    cfg.validate().map_err(fail_with)?;
    Ok(cfg)
}

/// Refine a chart guess `(u, v)` onto the isophote `⟨U, d⟩ = cos phi`.
///
/// # Safety
/// `axis` must point to three doubles; `out_u`, `out_v` must be valid.
#[no_mangle]
pub unsafe extern "C" fn darboux_find_seed_chart(
    surface: *const DarbouxSurface,
    axis: *const f64,
    phi: f64,
    u: f64,
    v: f64,
    out_u: *mut f64,
    out_v: *mut f64,
) -> DarbouxStatus {
    guard(|| {
        if out_u.is_null() || out_v.is_null() {
            return fail(DarbouxStatus::NullPointer, "output pointer is null");
        }
        let s = tri!(chart_of(tri!(surface_ref(surface))));
        let d = tri!(read_axis(axis));
        match find_seed(&s, d, phi, Seed::Chart { u, v }) {
            Ok(Seed::Chart { u, v }) => {
                (*out_u, *out_v) = (u, v);
                DarbouxStatus::Ok
            }
            Ok(Seed::Point(_)) => unreachable!("chart search returns chart seeds"),
            Err(e) => fail_with(e),
        }
    })
}

/// Refine a point guess onto the level set and the isophote.
///
/// # Safety
/// `axis`, `guess` must point to three doubles; `out` to room for three.
#[no_mangle]
pub unsafe extern "C" fn darboux_find_seed_point(
    surface: *const DarbouxSurface,
    axis: *const f64,
    phi: f64,
    guess: *const f64,
    out: *mut f64,
) -> DarbouxStatus {
    guard(|| {
        if out.is_null() {
            return fail(DarbouxStatus::NullPointer, "out is null");
        }
        let s = tri!(level_of(tri!(surface_ref(surface))));
        let d = tri!(read_axis(axis));
        let p = tri!(read_vec(guess, "guess"));
        match find_seed(&s, d, phi, Seed::Point(p)) {
            Ok(Seed::Point(q)) => {
                std::slice::from_raw_parts_mut(out, 3).copy_from_slice(&q.to_array());
                DarbouxStatus::Ok
            }
            Ok(Seed::Chart { .. }) => unreachable!("point search returns point seeds"),
            Err(e) => fail_with(e),
        }
    })
}

unsafe fn finish_trace(
    s: &Surface,
    d: Vec3,
    phi: f64,
    seed: Seed,
    config: *const DarbouxTraceConfig,
    out: *mut *mut DarbouxTrace,
) -> DarbouxStatus {
    if out.is_null() {
        return fail(DarbouxStatus::NullPointer, "out is null");
    }
    let cfg = tri!(read_config(config));
    match trace_isophote(s, d, phi, seed, &cfg) {
        Ok(result) => {
            *out = Box::into_raw(Box::new(DarbouxTrace { result }));
            DarbouxStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Trace from a chart seed already on the isophote. A null `config` means defaults.
///
/// # Safety
/// `axis` must point to three doubles; `config` is null or valid; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn darboux_trace_chart(
    surface: *const DarbouxSurface,
    axis: *const f64,
    phi: f64,
    u: f64,
    v: f64,
    config: *const DarbouxTraceConfig,
    out: *mut *mut DarbouxTrace,
) -> DarbouxStatus {
    guard(|| {
        let s = tri!(chart_of(tri!(surface_ref(surface))));
        let d = tri!(read_axis(axis));
        finish_trace(&s, d, phi, Seed::Chart { u, v }, config, out)
    })
}

/// Trace from a point seed on the level set and the isophote.
///
/// # Safety
/// `axis`, `seed` must point to three doubles; `config` is null or valid; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn darboux_trace_point(
    surface: *const DarbouxSurface,
    axis: *const f64,
    phi: f64,
    seed: *const f64,
    config: *const DarbouxTraceConfig,
    out: *mut *mut DarbouxTrace,
) -> DarbouxStatus {
    guard(|| {
        let s = tri!(level_of(tri!(surface_ref(surface))));
        let d = tri!(read_axis(axis));
        let p = tri!(read_vec(seed, "seed"));
        finish_trace(&s, d, phi, Seed::Point(p), config, out)
    })
}

/// # Safety
/// `trace` must come from a trace function or be null.
#[no_mangle]
pub unsafe extern "C" fn darboux_trace_free(trace: *mut DarbouxTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// Number of samples, or 0 for a null handle.
///
/// # Safety
/// `trace` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn darboux_trace_len(trace: *const DarbouxTrace) -> usize {
    trace.as_ref().map_or(0, |t| t.result.samples.len())
}

/// # Safety
/// `trace` must be valid; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn darboux_trace_termination(
    trace: *const DarbouxTrace,
    out: *mut DarbouxTermination,
) -> DarbouxStatus {
    let (Some(t), Some(out)) = (trace.as_ref(), out.as_mut()) else {
        return fail(DarbouxStatus::NullPointer, "trace or out is null");
    };
    *out = match t.result.termination {
        Termination::LengthReached => DarbouxTermination::LengthReached,
        Termination::Closed => DarbouxTermination::Closed,
        Termination::LeftDomain => DarbouxTermination::LeftDomain,
        Termination::SingularPoint => DarbouxTermination::SingularPoint,
        Termination::Error => DarbouxTermination::Error,
    };
    DarbouxStatus::Ok
}

/// # Safety
/// `trace` must be valid; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn darboux_trace_sample(
    trace: *const DarbouxTrace,
    index: usize,
    out: *mut DarbouxTraceSample,
) -> DarbouxStatus {
    let (Some(t), Some(out)) = (trace.as_ref(), out.as_mut()) else {
        return fail(DarbouxStatus::NullPointer, "trace or out is null");
    };
    let Some(p) = t.result.samples.get(index) else {
        return fail(
            DarbouxStatus::OutOfRange,
            format!("sample {index} of {}", t.result.samples.len()),
        );
    };
    let (u, v) = p.chart.unwrap_or((f64::NAN, f64::NAN));
    *out = DarbouxTraceSample {
        s: p.s,
        point: p.point.to_array(),
        has_chart: p.chart.is_some(),
        u,
        v,
        tangent: p.tangent.to_array(),
        angle_dot: p.angle_dot,
        kg: p.kg,
        kn: p.kn,
        tg: p.tg,
        res_constraint: p.res_constraint,
        res_unit_speed: p.res_unit_speed,
        res_tangency: p.res_tangency.unwrap_or(f64::NAN),
        res_level: p.res_level.unwrap_or(f64::NAN),
    };
    DarbouxStatus::Ok
}

/// Classify a curve and return the JSON report in `*json_out`, to be
/// released with [`darboux_string_free`]. `curve` uses the CLI's curve
/// spec syntax over the parameter range `[t0, t1]`.
///
/// # Safety
/// `surface`, `curve` must be NUL-terminated strings; `json_out` valid.
#[no_mangle]
pub unsafe extern "C" fn darboux_classify(
    surface: *const c_char,
    curve: *const c_char,
    t0: f64,
    t1: f64,
    samples: usize,
    c: f64,
    json_out: *mut *mut c_char,
) -> DarbouxStatus {
    guard(|| {
        if json_out.is_null() {
            return fail(DarbouxStatus::NullPointer, "json_out is null");
        }
        let surface = tri!(read_str(surface, "surface"));
        let curve = tri!(read_str(curve, "curve"));
        if samples < 2 {
            return fail(DarbouxStatus::InvalidArgument, "samples must be at least 2");
        }
        let built = match curve_from_specs(surface, curve, (t0, t1), 257) {
            Ok(b) => b,
            Err(CliError::Domain(e)) => return fail_with(e),
            Err(e) => return fail(DarbouxStatus::ParseError, e.to_string()),
        };
        let grid = match SampleGrid::uniform(0.0, built.length(), samples) {
            Ok(g) => g,
            Err(e) => return fail_with(e),
        };
        match classify_report(&built, &grid, &Tolerances::for_curve(&built), c) {
            Ok(report) => match CString::new(report.to_json()) {
                Ok(s) => {
                    *json_out = s.into_raw();
                    DarbouxStatus::Ok
                }
                Err(_) => fail(DarbouxStatus::Panic, "report contains NUL"),
            },
            Err(e) => fail_with(e),
        }
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn darboux_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
