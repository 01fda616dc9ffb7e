use std::fs;
use std::path::Path;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn darboux(args: &[&str]) -> Run {
    darboux_env(args, &[])
}

fn darboux_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_darboux"));
    cmd.args(args).env_remove("DARBOUX_EPS_SING");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("UTF-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("UTF-8 stderr"),
    }
}

const SPHERE_TRACE: [&str; 9] = [
    "trace",
    "--surface",
    "builtin:sphere",
    "--axis",
    "0,0,1",
    "--angle",
    "45",
    "--seed",
    "0,pi/4",
];

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs").join(name);
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

/// Checks `value` against the JSON Schema keywords used by the schemas
/// under docs/, collecting one message per violation.
fn validate(root: &Value, schema: &Value, value: &Value, at: &str, errors: &mut Vec<String>) {
    let Some(schema) = schema.as_object() else { return };
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let target = r.strip_prefix("#/$defs/").and_then(|name| root["$defs"].get(name));
        match target {
            Some(t) => validate(root, t, value, at, errors),
            None => errors.push(format!("{at}: unresolved $ref {r}")),
        }
    }
    if let Some(ty) = schema.get("type") {
        let allowed: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let matches = |t: &str| match t {
            "null" => value.is_null(),
            "boolean" => value.is_boolean(),
            "string" => value.is_string(),
            "number" => value.is_number(),
            "integer" => value.is_i64() || value.is_u64(),
            "array" => value.is_array(),
            "object" => value.is_object(),
            _ => false,
        };
        if !allowed.iter().any(|t| matches(t)) {
            errors.push(format!("{at}: expected {allowed:?}, got {value}"));
            return;
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            errors.push(format!("{at}: {value} not in {options:?}"));
        }
    }
    if let Some(x) = value.as_f64() {
        let bound = |k: &str| schema.get(k).and_then(Value::as_f64);
        if bound("minimum").is_some_and(|m| x < m)
            || bound("maximum").is_some_and(|m| x > m)
            || bound("exclusiveMinimum").is_some_and(|m| x <= m)
        {
            errors.push(format!("{at}: {x} out of bounds"));
        }
    }
    if let Some(obj) = value.as_object() {
        let props = schema.get("properties").and_then(Value::as_object);
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                errors.push(format!("{at}: missing {key}"));
            }
        }
        for (k, v) in obj {
            match (props.and_then(|p| p.get(k)), schema.get("additionalProperties")) {
                (Some(s), _) => validate(root, s, v, &format!("{at}/{k}"), errors),
                (None, Some(Value::Bool(false))) => errors.push(format!("{at}: unexpected key {k}")),
                (None, Some(extra)) => validate(root, extra, v, &format!("{at}/{k}"), errors),
                (None, None) => {}
            }
        }
    }
    if let Some(items) = value.as_array() {
        let count = |k: &str| schema.get(k).and_then(Value::as_u64).map(|n| n as usize);
        if count("minItems").is_some_and(|n| items.len() < n) || count("maxItems").is_some_and(|n| items.len() > n) {
            errors.push(format!("{at}: {} items", items.len()));
        }
        let prefix = schema.get("prefixItems").and_then(Value::as_array).map_or(&[][..], Vec::as_slice);
        for (i, v) in items.iter().enumerate() {
            let s = prefix.get(i).or_else(|| schema.get("items"));
            if let Some(s) = s {
                validate(root, s, v, &format!("{at}/{i}"), errors);
            }
        }
    }
    if let Some(options) = schema.get("oneOf").and_then(Value::as_array) {
        let passing = options
            .iter()
            .filter(|s| {
                let mut e = Vec::new();
                validate(root, s, value, at, &mut e);
                e.is_empty()
            })
            .count();
        if passing != 1 {
            errors.push(format!("{at}: {passing} oneOf branches match"));
        }
    }
}

fn assert_conforms(schema_name: &str, json: &str) {
    let root = schema(schema_name);
    let value: Value = serde_json::from_str(json).unwrap();
    let mut errors = Vec::new();
    validate(&root, &root, &value, "", &mut errors);
    assert!(errors.is_empty(), "{schema_name}: {:#?}", &errors[..errors.len().min(10)]);
}

#[test]
fn validator_rejects_bad_documents() {
    let root = schema("trace.schema.json");
    let mut errors = Vec::new();
    let bad = serde_json::json!({"surface": 1, "extra": true});
    validate(&root, &root, &bad, "", &mut errors);
    assert!(errors.iter().any(|e| e.contains("missing")));
    assert!(errors.iter().any(|e| e.contains("unexpected key extra")));
    assert!(errors.iter().any(|e| e.contains("/surface")));
}

#[test]
fn sphere_trace_csv_closes_on_its_seed() {
    let r = darboux(&SPHERE_TRACE);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let mut lines = r.stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "s,x,y,z,u,v,tx,ty,tz,kg,kn,tg,angle_dot,res_constraint,res_unit_speed"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4443);
    let (first, last) = (&rows[0], &rows[rows.len() - 1]);
    let gap = (1..4).map(|i| (first[i] - last[i]).powi(2)).sum::<f64>().sqrt();
    assert!(gap <= 1e-5, "closure gap {gap}");
    let circumference = 2.0 * std::f64::consts::PI * std::f64::consts::FRAC_1_SQRT_2;
    assert!((last[0] - circumference).abs() <= 1e-5);
    for row in &rows {
        assert!((row[12] - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-8);
    }
}

#[test]
fn trace_json_and_obj_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("t.json");
    let r = darboux(&[&SPHERE_TRACE[..], &["--out", json.to_str().unwrap()]].concat());
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read_to_string(&json).unwrap();
    assert!(text.ends_with("}\n"));
    assert_conforms("trace.schema.json", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["termination"], "closed");

    let obj = dir.path().join("t.obj");
    let r = darboux(&[
        "trace-implicit",
        "--surface",
        "builtin:torus",
        "--axis",
        "0,0,1",
        "--angle",
        "60",
        "--seed",
        "2.4,0,0.3",
        "--length",
        "1",
        "--step",
        "0.01",
        "--out",
        obj.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read_to_string(&obj).unwrap();
    assert!(text.starts_with("# "));
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 101);
    let polyline = text.lines().find(|l| l.starts_with("l ")).unwrap();
    assert_eq!(polyline.split(' ').count(), 102);
}

#[test]
fn implicit_trace_csv_has_empty_chart_columns() {
    let r = darboux(&[
        "trace-implicit",
        "--surface",
        "builtin:sphere",
        "--axis",
        "0,0,1",
        "--angle",
        "45",
        "--seed",
        "0.7,0,0.7",
        "--length",
        "0.1",
        "--step",
        "0.01",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let row: Vec<&str> = r.stdout.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row.len(), 15);
    assert_eq!((row[4], row[5]), ("", ""));
}

#[test]
fn classify_reports_conform_to_the_schema() {
    let r = darboux(&[
        "classify",
        "--surface",
        "builtin:cylinder",
        "--curve",
        "param:u=s;v=s",
        "--range",
        "0,6",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_conforms("report.schema.json", &r.stdout);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["flags"]["geodesic"], true);
    assert_eq!(v["flags"]["relatively_normal_slant_helix"], true);
    assert_eq!(v["flags"]["isophotic"], true);
    assert_eq!(v["flags"]["line_of_curvature"], false);
}

#[test]
fn frames_csv_and_json() {
    let args = [
        "frames",
        "--surface",
        "builtin:sphere",
        "--curve",
        "param:u=s;v=pi/4",
        "--samples",
        "50",
    ];
    let r = darboux(&args);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let mut lines = r.stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "s,x,y,z,tx,ty,tz,vx,vy,vz,ux,uy,uz,kg,kn,tg,kappa,tau,theta,res_unit_speed,res_orthonormal"
    );
    assert_eq!(lines.count(), 50);

    let r = darboux(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_conforms("frames.schema.json", &r.stdout);
}

#[test]
fn traced_csv_feeds_back_into_classify() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("circle.csv");
    let r = darboux(&[&SPHERE_TRACE[..], &["--out", csv.to_str().unwrap()]].concat());
    assert_eq!(r.code, 0, "{}", r.stderr);
    let curve = format!("csv:{}", csv.display());
    let r = darboux(&["classify", "--surface", "builtin:sphere", "--curve", &curve]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["flags"]["line_of_curvature"], true);
    assert_eq!(v["flags"]["isophotic"], true);
}

#[test]
fn family_writes_one_file_per_angle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fam.csv");
    let r = darboux(&[
        "trace",
        "--surface",
        "builtin:sphere",
        "--axis",
        "0,0,1",
        "--seed",
        "0,0.5",
        "--family",
        "30:60:3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let mut lines = r.stdout.lines();
    assert_eq!(lines.next().unwrap(), "index,angle_deg,status,samples,max_level_drift,path");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    for (k, row) in rows.iter().enumerate() {
        assert!(row.contains(",closed,"), "{row}");
        assert!(dir.path().join(format!("fam_{k:03}.csv")).exists());
    }

    let r = darboux(&["trace", "--surface", "builtin:sphere", "--axis", "0,0,1", "--seed", "0,0", "--family", "1:2:2"]);
    assert_eq!(r.code, 1);
}

#[test]
fn seed_find_and_catalog() {
    let r = darboux(&[
        "seed-find",
        "--surface",
        "builtin:sphere",
        "--axis",
        "0,0,1",
        "--angle",
        "45",
        "--seed",
        "0.3,0.2",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let seed_v = v["seed"]["chart"]["v"].as_f64().unwrap();
    assert!((seed_v - std::f64::consts::FRAC_PI_4).abs() <= 1e-12);
    assert!(v["residual"].as_f64().unwrap().abs() <= 1e-12);

    let r = darboux(&["catalog"]);
    assert_eq!(r.code, 0);
    for name in ["sphere", "cylinder", "plane", "torus", "helicoid", "ellipsoid", "monkey_saddle"] {
        assert!(r.stdout.contains(&format!("builtin:{name}")), "{name}");
    }
}

#[test]
fn exit_codes_separate_usage_from_domain_errors() {
    let plane = darboux(&[
        "trace",
        "--surface",
        "builtin:plane",
        "--axis",
        "0,0,1",
        "--angle",
        "30",
        "--seed",
        "0,0",
    ]);
    assert_eq!(plane.code, 2);
    assert!(plane.stderr.starts_with("error: no isophote"), "{}", plane.stderr);

    let singular = darboux(&[
        "trace",
        "--surface",
        "builtin:cylinder",
        "--axis",
        "0,0,1",
        "--angle",
        "90",
        "--seed",
        "0,0",
        "--exact-seed",
    ]);
    assert_eq!(singular.code, 2);
    assert!(singular.stderr.contains("singular point"), "{}", singular.stderr);

    let usage = [
        vec!["trace", "--surface", "builtin:sphere"],
        vec!["frobnicate"],
        vec!["trace", "--surface", "builtin:blob", "--axis", "0,0,1", "--angle", "45", "--seed", "0,0"],
        vec!["trace", "--surface", "builtin:sphere", "--axis", "0,0,0", "--angle", "45", "--seed", "0,0"],
        vec!["trace", "--surface", "builtin:sphere", "--axis", "0,0,1", "--angle", "200", "--seed", "0,0"],
        vec!["classify", "--surface", "builtin:sphere", "--curve", "param:u=s*;v=0"],
        vec!["classify", "--surface", "builtin:sphere", "--curve", "csv:/nonexistent/trace.csv"],
    ];
    for args in usage {
        let r = darboux(&args);
        assert_eq!(r.code, 1, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty());
    }
    assert_eq!(darboux(&["--help"]).code, 0);
    assert_eq!(darboux(&["--version"]).code, 0);
}

#[test]
fn eps_sing_comes_from_flag_then_environment() {
    let args = [
        "trace",
        "--surface",
        "builtin:sphere",
        "--axis",
        "0,0,1",
        "--angle",
        "45",
        "--seed",
        "0,pi/4",
        "--length",
        "0.01",
        "--format",
        "json",
    ];
    let eps = |r: &Run| serde_json::from_str::<Value>(&r.stdout).unwrap()["config"]["eps_sing"].as_f64().unwrap();
    assert_eq!(eps(&darboux(&args)), 1e-10);
    assert_eq!(eps(&darboux_env(&args, &[("DARBOUX_EPS_SING", "1e-7")])), 1e-7);
    let flagged = [&args[..], &["--eps-sing", "1e-5"]].concat();
    assert_eq!(eps(&darboux_env(&flagged, &[("DARBOUX_EPS_SING", "1e-7")])), 1e-5);
    assert_eq!(darboux_env(&args, &[("DARBOUX_EPS_SING", "tiny")]).code, 1);
}
