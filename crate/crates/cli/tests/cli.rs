use std::path::PathBuf;
use std::process::{Command, Output};

use wantzel::census::enumerate;
use wantzel::quadratic::parse_elem;
use wantzel::rational::{int, parse_rational};
use wantzel::{FieldDesc, IntPoly, QuadPoly, Rational};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wantzel")).args(args).output().expect("binary runs")
}

fn run_with_shards(shards: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wantzel"))
        .env("WANTZEL_SHARDS", shards)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn chebyshev_listing() {
    let listed = [
        "1",
        "x",
        "2*x^2-1",
        "4*x^3-3*x",
        "8*x^4-8*x^2+1",
        "16*x^5-20*x^3+5*x",
        "32*x^6-48*x^4+18*x^2-1",
        "64*x^7-112*x^5+56*x^3-7*x",
    ];
    for (k, want) in listed.iter().enumerate() {
        assert_eq!(stdout(&["chebyshev", "--m", &k.to_string()]).trim(), *want);
    }
    let j = json(&["chebyshev", "--m", "3", "--json"]);
    assert_eq!(j["t_coeffs"], serde_json::json!(["0", "-3", "0", "4"]));
    assert_eq!(j["u"], "4*x^2-1");
}

#[test]
fn decide_json() {
    let j = json(&["decide", "--a", "1/2", "--m", "3"]);
    assert_eq!(j["sectable"], false);
    assert_eq!(j["m_odd"], 3);
    assert_eq!(j["certificate"]["polynomial"], "8*x^3-6*x-1");
    assert!(j.get("witness").is_none());

    let j = json(&["decide", "--a", "-23/27", "--m", "6"]);
    assert_eq!(j["sectable"], true);
    assert_eq!(j["witness"], "1/3");

    let j = json(&["decide", "--a", "1/2*sqrt(2)", "--m", "3", "--field", "Q(sqrt 2)"]);
    assert_eq!(j["sectable"], true);
    assert_eq!(j["field"], "Q(sqrt 2)");
}

#[test]
fn census_row() {
    let out = stdout(&["census", "--field", "Q", "--B", "3"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("field,B,total,in_unit"));
    assert_eq!(lines.next(), Some("Q,3/1,15,9"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["decide", "--a", "1/2"]).status.code(), Some(2));
    assert_eq!(run(&["decide", "--a", "3", "--m", "3"]).status.code(), Some(2));
    assert_eq!(run(&["decide", "--a", "1/0", "--m", "3"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--B", "1/2"]).status.code(), Some(2));
    assert_eq!(run(&["witness", "--m", "8"]).status.code(), Some(2));
    assert_eq!(run(&["density", "--field", "Q(sqrt 2)", "--m", "3", "--grid", "64:256:x2"]).status.code(), Some(2));
    assert_eq!(run(&["--shards", "0", "census", "--B", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn shard_count_does_not_change_output() {
    let cases: [&[&str]; 4] = [
        &["census", "--field", "Q", "--B", "40", "97/2"],
        &["census", "--field", "Q(sqrt 5)", "--B", "9"],
        &["enumerate", "--field", "Q(sqrt 2)", "--B", "6", "--emit", "heights"],
        &["density", "--field", "Q", "--m", "3", "--grid", "4:64:x2", "--method", "cross-check"],
    ];
    for args in cases {
        let base = run_with_shards("1", args);
        assert!(base.status.success());
        for shards in ["2", "3", "8"] {
            assert_eq!(run_with_shards(shards, args).stdout, base.stdout, "{args:?} with {shards} shards");
        }
    }
}

#[test]
fn enumerated_elements_round_trip() {
    let field = FieldDesc::quad(2).unwrap();
    let out = stdout(&["enumerate", "--field", "Q(sqrt 2)", "--B", "5"]);
    let parsed: Vec<_> = out.lines().map(|l| parse_elem(l, field).unwrap()).collect();
    assert_eq!(parsed, enumerate(field, &int(5), 1).unwrap());
    for (line, x) in out.lines().zip(&parsed) {
        assert_eq!(line, x.to_string());
    }
}

#[test]
fn polynomial_text_round_trips() {
    for m in 0..=12 {
        let text = stdout(&["chebyshev", "--m", &m.to_string()]);
        let p = IntPoly::parse(text.trim(), FieldDesc::Rational).unwrap();
        assert_eq!(p.to_string(), text.trim());
    }
    let j = json(&["decide", "--a", "1/2*sqrt(2)", "--m", "3", "--field", "Q(sqrt 2)"]);
    let text = j["certificate"]["polynomial"].as_str().unwrap();
    let field = FieldDesc::quad(2).unwrap();
    assert_eq!(QuadPoly::parse(text, field).unwrap().to_string(), text);
}

#[test]
fn roots_command() {
    let j = json(&["roots", "--poly", "6*x^3-5*x^2-2*x+1"]);
    assert_eq!(j["roots"], serde_json::json!(["-1/2", "1/3", "1"]));
    let j = json(&["roots", "--field", "Q(sqrt 5)", "--poly", "x^2-x-1"]);
    assert_eq!(j["roots"], serde_json::json!(["1/2-1/2*sqrt(5)", "1/2+1/2*sqrt(5)"]));
}

#[test]
fn witness_command() {
    let j = json(&["witness", "--m", "6"]);
    assert_eq!(j["a"], "-23/27");
    assert_eq!(j["abs_3"], "27");
    assert_eq!(j["sectable"], true);
    assert_eq!(json(&["witness", "--m", "12"])["a"], "329/729");
}

#[test]
fn density_then_fit() {
    let csv_path = scratch("density_m3.csv");
    let svg_path = scratch("density_m3.svg");
    let csv_arg = csv_path.to_str().unwrap();
    stdout(&["density", "--field", "Q", "--m", "3", "--grid", "32:1024:x2", "--out", csv_arg]);
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("field,m,m_odd,B,numerator,denominator,delta,delta_float"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        let delta = parse_rational(r[6]).unwrap();
        let ratio = Rational::new(r[4].parse::<i64>().unwrap().into(), r[5].parse::<i64>().unwrap().into());
        assert_eq!(delta, ratio);
    }
    let fit = json(&["fit", "--in", csv_arg, "--plot", svg_path.to_str().unwrap()]);
    let slope = fit["fitted_slope"].as_f64().unwrap();
    assert!((slope + 4.0 / 3.0).abs() <= 0.25, "{slope}");
    assert_eq!(fit["points_used"], 6);
    assert!((fit["theoretical_slope"].as_f64().unwrap() + 4.0 / 3.0).abs() < 1e-12);
    assert!(std::fs::read_to_string(&svg_path).unwrap().starts_with("<svg"));
}

#[test]
fn verify_passes() {
    let out = run(&["verify", "--seed", "7"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
