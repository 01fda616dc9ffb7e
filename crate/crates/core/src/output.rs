//! Bit-stable text encodings of traces and frame samples.
//!
//! Every float goes through [`format_g17`], which reproduces C's `%.17g`.

use std::io::Write;

use serde::Serialize;

use crate::classify::EPS_DEGENERATE;
use crate::error::Result;
use crate::frames::{darboux, frenet, CurveOnSurface, DarbouxFrame, FrenetFrame, SampleGrid};
use crate::trace::TraceResult;
use crate::vec3::Vec3;

/// Column order of trace CSV files.
pub const TRACE_COLUMNS: [&str; 15] = [
    "s",
    "x",
    "y",
    "z",
    "u",
    "v",
    "tx",
    "ty",
    "tz",
    "kg",
    "kn",
    "tg",
    "angle_dot",
    "res_constraint",
    "res_unit_speed",
];

/// Column order of frame CSV files.
pub const FRAME_COLUMNS: [&str; 21] = [
    "s",
    "x",
    "y",
    "z",
    "tx",
    "ty",
    "tz",
    "vx",
    "vy",
    "vz",
    "ux",
    "uy",
    "uz",
    "kg",
    "kn",
    "tg",
    "kappa",
    "tau",
    "theta",
    "res_unit_speed",
    "res_orthonormal",
];

/// `printf("%.17g", x)`: 17 significant digits, trailing zeros removed,
/// exponent form when the decimal exponent is below −4 or at least 17.
pub fn format_g17(x: f64) -> String {
    const P: i32 = 17;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        strip_zeros(&format!("{:.*}", (P - 1 - exp) as usize, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn push_vec(row: &mut Vec<String>, v: Vec3) {
    row.extend([v.x, v.y, v.z].map(format_g17));
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn csv_error(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => std::io::Error::other(format!("{other:?}")),
    }
}

/// Trace samples as CSV, one row per sample; `u`, `v` empty on level sets.
pub fn write_trace_csv<W: Write>(trace: &TraceResult, out: W) -> std::io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(TRACE_COLUMNS).map_err(csv_error)?;
    for p in &trace.samples {
        let mut row = Vec::with_capacity(TRACE_COLUMNS.len());
        row.push(format_g17(p.s));
        push_vec(&mut row, p.point);
        match p.chart {
            Some((u, v)) => row.extend([format_g17(u), format_g17(v)]),
            None => row.extend([String::new(), String::new()]),
        }
        push_vec(&mut row, p.tangent);
        row.extend([p.kg, p.kn, p.tg, p.angle_dot, p.res_constraint, p.res_unit_speed].map(format_g17));
        w.write_record(&row).map_err(csv_error)?;
    }
    w.flush()
}

/// Wavefront OBJ polyline. A closed trace drops its final sample, which
/// coincides with the seed, and repeats index 1 instead.
pub fn write_trace_obj<W: Write>(trace: &TraceResult, mut out: W) -> std::io::Result<()> {
    let mut points = trace.points();
    if trace.is_closed() && points.len() > 2 {
        points.pop();
    }
    writeln!(out, "# {}", trace.surface)?;
    for p in &points {
        writeln!(out, "v {} {} {}", format_g17(p.x), format_g17(p.y), format_g17(p.z))?;
    }
    write!(out, "l")?;
    for i in 1..=points.len() {
        write!(out, " {i}")?;
    }
    if trace.is_closed() {
        write!(out, " 1")?;
    }
    writeln!(out)
}

pub fn write_json<W: Write, T: Serialize>(value: &T, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)
}

/// Darboux (and, where defined, Frenet) data at one arclength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameRecord {
    pub s: f64,
    pub point: Vec3,
    pub darboux: DarbouxFrame,
    pub frenet: Option<FrenetFrame>,
    /// `atan2(k_n, k_g)`, unwrapped along the record list.
    pub theta: Option<f64>,
    pub res_unit_speed: f64,
    /// Largest deviation of the Darboux frame's Gram matrix from the identity.
    pub res_orthonormal: f64,
}

pub fn frame_records(curve: &CurveOnSurface, grid: &SampleGrid) -> Result<Vec<FrameRecord>> {
    let mut out = Vec::with_capacity(grid.len());
    for &s in grid.values() {
        let frame = darboux(curve, s)?;
        let point = curve.surface_point(s)?.point;
        let (t, v, u) = (frame.t, frame.v, frame.u);
        let res_orthonormal = [
            t.dot(t) - 1.0,
            v.dot(v) - 1.0,
            u.dot(u) - 1.0,
            t.dot(v),
            t.dot(u),
            v.dot(u),
        ]
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max);
        let defined = frame.kg.hypot(frame.kn) > EPS_DEGENERATE;
        out.push(FrameRecord {
            s,
            point,
            darboux: frame,
            frenet: frenet(curve, s).ok(),
            theta: defined.then(|| frame.kn.atan2(frame.kg)),
            res_unit_speed: curve.unit_speed_residual(s)?,
            res_orthonormal,
        });
    }
    let mut thetas: Vec<f64> = out.iter().filter_map(|r| r.theta).collect();
    if thetas.len() == out.len() {
        crate::frames::unwrap_angles(&mut thetas);
        for (r, th) in out.iter_mut().zip(thetas) {
            r.theta = Some(th);
        }
    }
    Ok(out)
}

/// Frame records as CSV; Frenet columns and `theta` empty where undefined.
pub fn write_frames_csv<W: Write>(records: &[FrameRecord], out: W) -> std::io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(FRAME_COLUMNS).map_err(csv_error)?;
    let opt = |x: Option<f64>| x.map(format_g17).unwrap_or_default();
    for r in records {
        let mut row = Vec::with_capacity(FRAME_COLUMNS.len());
        row.push(format_g17(r.s));
        push_vec(&mut row, r.point);
        push_vec(&mut row, r.darboux.t);
        push_vec(&mut row, r.darboux.v);
        push_vec(&mut row, r.darboux.u);
        row.extend([r.darboux.kg, r.darboux.kn, r.darboux.tg].map(format_g17));
        row.push(opt(r.frenet.map(|f| f.kappa)));
        row.push(opt(r.frenet.map(|f| f.tau)));
        row.push(opt(r.theta));
        row.push(format_g17(r.res_unit_speed));
        row.push(format_g17(r.res_orthonormal));
        w.write_record(&row).map_err(csv_error)?;
    }
    w.flush()
}

/// Points and arclength spacing of a trace CSV; rows after the last one at
/// uniform spacing (a closing partial step) are dropped.
pub fn read_trace_points<R: std::io::Read>(input: R) -> Result<(f64, Vec<Vec3>)> {
    use crate::error::Error;
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| Error::invalid(format!("trace CSV: {e}")))?
        .clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::invalid(format!("trace CSV lacks column '{name}'")))
    };
    let (cs, cx, cy, cz) = (col("s")?, col("x")?, col("y")?, col("z")?);
    let mut s = Vec::new();
    let mut points = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::invalid(format!("trace CSV: {e}")))?;
        let num = |i: usize| -> Result<f64> {
            record
                .get(i)
                .and_then(|t| t.trim().parse().ok())
                .ok_or_else(|| Error::invalid(format!("trace CSV row {}: bad number in column {i}", line + 2)))
        };
        s.push(num(cs)?);
        points.push(Vec3::new(num(cx)?, num(cy)?, num(cz)?));
    }
    if s.len() < 2 {
        return Err(Error::InsufficientSamples { needed: 5, got: s.len() });
    }
    let h = s[1] - s[0];
    let uniform = s.windows(2).take_while(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * (1.0 + h)).count();
    points.truncate(uniform + 1);
    Ok((h, points))
}
