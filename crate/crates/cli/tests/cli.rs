use std::process::{Command, Output};

use serde_json::Value;

fn qka(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qka"))
        .args(args)
        .env_remove("QKA_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn num(v: &Value) -> f64 {
    v.as_str().expect("numbers are emitted as strings").parse().unwrap()
}

#[test]
fn jones_emits_one_row_per_n() {
    let v = json(&qka(&["jones", "--knot", "torus", "--a", "1", "--N", "3,5"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["N"], 3);
    assert_eq!(rows[0]["knot"], "T(2,3)");
    assert_eq!(rows[0]["xi"], "1+1i");
    for key in ["value_re", "value_im", "err_bound"] {
        assert!(num(&rows[1][key]).is_finite(), "{key}");
    }
    assert!(rows[0]["precision_bits"].as_u64().unwrap() >= 256);
}

#[test]
fn single_n_gives_a_single_object() {
    let v = json(&qka(&["jones", "--knot", "iterated", "--a", "1", "--b", "6", "--N", "4"]));
    assert!(v.is_object());
    assert_eq!(v["N"], 4);
}

#[test]
fn exact_torus_polynomial() {
    let v = json(&qka(&["jones", "--knot", "torus", "--a", "1", "--N", "2", "--exact"]));
    assert_eq!(v["polynomial"], "t^-1+t^-3-t^-4");
    assert_eq!(v["exponent_denominator"], 2);
}

#[test]
fn exact_mode_is_limited_to_torus_knots() {
    let out = qka(&["jones", "--knot", "fig8", "--N", "2", "--exact"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precision_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qka"))
        .args(["jones", "--knot", "torus", "--a", "1", "--N", "3"])
        .env("QKA_PRECISION_BITS", "100")
        .output()
        .unwrap();
    let v = json(&out);
    let env_bits = v["precision_bits"].as_u64().unwrap();
    let default_bits = json(&qka(&["jones", "--knot", "torus", "--a", "1", "--N", "3"]))["precision_bits"].as_u64().unwrap();
    assert!(env_bits < default_bits);

    let flag = json(&qka(&["--precision", "100", "jones", "--knot", "torus", "--a", "1", "--N", "3"]));
    assert_eq!(flag["precision_bits"].as_u64().unwrap(), env_bits);
}

#[test]
fn low_precision_is_rejected() {
    assert_eq!(qka(&["--precision", "32", "jones", "--knot", "torus", "--a", "1", "--N", "3"]).status.code(), Some(2));
}

#[test]
fn hypothesis_violations_exit_with_two() {
    let cases: &[&[&str]] = &[
        &["jones", "--knot", "iterated", "--a", "1", "--b", "5", "--N", "3"],
        &["jones", "--knot", "torus", "--a", "1", "--N", "3", "--xi", "2i"],
        &["cs", "--knot", "fig8", "--u", "0.5"],
        &["torsion", "--knot", "iterated", "--a", "1", "--b", "6", "--family", "nn"],
        &["jones", "--knot", "torus", "--a", "1", "--N", "3", "--xi", "1+"],
    ];
    for args in cases {
        let out = qka(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn usage_errors_do_not_exit_cleanly() {
    assert!(!qka(&["jones", "--knot", "torus"]).status.success());
    assert!(!qka(&["nonsense"]).status.success());
}

#[test]
fn compare_writes_csv_and_reports_monotonicity() {
    let out = qka(&["--format", "csv", "compare", "--knot", "torus", "--a", "1", "--N", "20,40"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    for col in ["N", "exact_re", "approx_re", "rel_err", "dominant_family", "precision_bits"] {
        assert!(headers.iter().any(|h| h == col), "{col}");
    }
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 2);
    let col = headers.iter().position(|h| h == "rel_err").unwrap();
    let e: Vec<f64> = rows.iter().map(|r| r[col].parse().unwrap()).collect();
    assert!(e[1] < e[0]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("strictly decreasing: yes"));
}

#[test]
fn compare_needs_two_points() {
    assert_eq!(qka(&["compare", "--knot", "torus", "--a", "1", "--N", "20"]).status.code(), Some(2));
}

#[test]
fn torsion_routes_agree_for_the_figure_eight() {
    let abs_of = |route: &str| {
        let v = json(&qka(&["torsion", "--knot", "fig8", "--u", "0.2", "--route", route]));
        num(&v["torsion_abs"])
    };
    let fox = abs_of("fox");
    let chain = abs_of("chain-complex");
    let closed = abs_of("closed-form");
    assert!((fox - closed).abs() < 1e-12 && (chain - closed).abs() < 1e-12);
}

#[test]
fn cs_reports_a_small_residual() {
    let v = json(&qka(&["cs", "--knot", "iterated", "--a", "1", "--b", "6", "--family", "an", "--j", "2", "--u", "0.15"]));
    assert!(num(&v["residual_mod_pi2"]) < 1e-20);
    assert_eq!(v["family"], "AN");
}

#[test]
fn reps_writes_to_a_file() {
    let dir = std::env::temp_dir().join(format!("qka-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("reps.json");
    let out = qka(&["-o", path.to_str().unwrap(), "reps", "--knot", "torus", "--a", "2", "--k", "1"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v.is_object() || v.is_array());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_subsets_pass() {
    for check in ["structure", "tau", "d-table"] {
        let out = qka(&["verify", "--check", check]);
        let text = String::from_utf8_lossy(&out.stdout);
        assert_eq!(out.status.code(), Some(0), "{check}: {text}");
        assert!(text.contains("SUMMARY failures=0"));
    }
    let nn = qka(&["verify", "--check", "nn-torsion"]);
    let text = String::from_utf8_lossy(&nn.stdout);
    assert!(text.lines().any(|l| l.starts_with("WARN nn-torsion")));
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
}
