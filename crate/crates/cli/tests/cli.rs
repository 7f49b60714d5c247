use std::process::{Command, Output};

use serde_json::Value;

fn apw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apw"))
        .args(args)
        .env_remove("APW_LOG")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON document per line"))
        .collect()
}

fn keys(v: &Value) -> Vec<String> {
    v.as_object().expect("object").keys().cloned().collect()
}

#[test]
fn perp_reports_generators_and_hf() {
    let out = apw(&["perp", "x0^4+x1^4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = &json_lines(&out)[0];
    assert_eq!(v["hilbert_function"], serde_json::json!([1, 2, 2, 2, 1]));
    assert_eq!(v["generator_counts"], serde_json::json!({"2": 1, "4": 1}));

    let v = &json_lines(&apw(&["perp", "x0^3", "--format", "json"]))[0];
    assert_eq!(v["hilbert_function"], serde_json::json!([1, 1, 1, 1]));

    let v = &json_lines(&apw(&["perp", "x0^3*x1", "--format", "json"]))[0];
    assert_eq!(v["hilbert_function"], serde_json::json!([1, 2, 2, 2, 1]));
    assert_eq!(v["generator_counts"], serde_json::json!({"2": 1, "4": 1}));
    assert_eq!(v["minimal_generators"]["4"], serde_json::json!(["d0^4"]));
}

#[test]
fn fermat_exit_codes() {
    let out = apw(&["fermat", "x0^4+x1^4+x2^4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("CertifiedFermat"));

    let out = apw(&["fermat", "x0^3*x1", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v = &json_lines(&out)[0]["fermat_verdict"];
    assert_eq!(v["tag"], "CertifiedNot");
    assert_eq!(v["witness"]["kind"], "non-reduced");

    let out = apw(&["fermat", "x0^2*x1^2", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let w = &json_lines(&out)[0]["fermat_verdict"]["witness"];
    assert_eq!(keys(w), ["kind", "found", "expected"]);
    assert_eq!(w["kind"], "quadric-count");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["fermat", "x0^4+"][..],
        &["fermat", "x0^2+x1^2"],
        &["perp", "x0^2+x1"],
        &["hf", "d0^2"],
        &["verify", "scroll-fermat", "--s", "2"],
        &["apolar", "x0^3", "--points", "1,2"],
        &["no-such-command"],
        &["fermat", "x0^3", "--format", "yaml"],
    ] {
        assert_eq!(code(&apw(args)), 2, "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_apw"))
        .args(["hf", "x0^2"])
        .env("APW_LOG", "loud")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn window_violation_names_the_inequality() {
    let out = apw(&[
        "verify",
        "scroll-fermat",
        "--s",
        "2",
        "--a1",
        "6",
        "--a2",
        "1",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires a1 <= (s+1)a2+2"));
}

#[test]
fn dual_recovers_the_fermat_quartic_and_reports_undetermined_caps() {
    let out = apw(&["dual", "d0*d1", "d0^4-d1^4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("F = x0^4 + x1^4"));
    assert_eq!(
        code(&apw(&["dual", "d0*d1", "d0^4-d1^4", "--degree-cap", "4"])),
        3
    );
    assert_eq!(code(&apw(&["dual", "d0*d1"])), 3);
    assert_eq!(code(&apw(&["dual", "d0*d1", "d0^3", "d1^4"])), 2);
}

#[test]
fn apolar_subcommand() {
    assert_eq!(
        code(&apw(&["apolar", "x0^3+x1^3", "--points", "1,0;0,1"])),
        0
    );
    assert_eq!(code(&apw(&["apolar", "x0^2*x1", "--points", "1,0;0,1"])), 1);
}

#[test]
fn invariants_table() {
    let v = &json_lines(&apw(&[
        "invariants",
        "--s",
        "2",
        "--a1",
        "1",
        "--a2",
        "1",
        "--format",
        "json",
    ]))[0];
    assert_eq!(
        (
            v["genus"].as_i64(),
            v["degree"].as_i64(),
            v["ambient_dim"].as_i64()
        ),
        (Some(9), Some(8), Some(3))
    );
    assert_eq!(v["gonality_pencil_degree"], 4);
    let v = &json_lines(&apw(&[
        "invariants",
        "--s",
        "3",
        "--a1",
        "1",
        "--a2",
        "1",
        "--format",
        "json",
    ]))[0];
    assert_eq!(
        (v["genus"].as_i64(), v["degree"].as_i64()),
        (Some(16), Some(10))
    );
    let out = apw(&["invariants", "--s", "2", "--a1", "6", "--a2", "1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("smooth     false"));
}

#[test]
fn verify_scroll_fermat_json_contract() {
    let args = [
        "verify",
        "scroll-fermat",
        "--s",
        "2",
        "--a1",
        "1",
        "--a2",
        "1",
        "--trials",
        "5",
        "--format",
        "json",
    ];
    let out = apw(&args);
    assert_eq!(code(&out), 0);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 6);
    for (t, r) in lines[..5].iter().enumerate() {
        assert_eq!(
            keys(r),
            [
                "params",
                "seed",
                "trial",
                "normality",
                "hilbert_function",
                "dual_form",
                "fermat_verdict",
                "gamma",
                "timings_ms"
            ]
        );
        assert_eq!(keys(&r["params"]), ["kind", "s", "a1", "a2", "eta"]);
        assert_eq!(r["trial"], t);
        assert_eq!(r["fermat_verdict"]["tag"], "CertifiedFermat");
        assert_eq!(keys(&r["fermat_verdict"]), ["tag", "points", "lambdas"]);
        assert_eq!(keys(&r["gamma"]), ["length", "points", "apolar"]);
        assert_eq!(r["gamma"]["apolar"], true);
        assert!(r["timings_ms"].is_null());
        assert!(r["dual_form"].is_string());
    }
    assert_eq!(lines[5]["summary"]["confirmed"], 5);

    // Byte-stable across runs and independent of scheduling.
    assert_eq!(apw(&args).stdout, out.stdout);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(apw(&seq).stdout, out.stdout);
    let mut other = args.to_vec();
    other.extend(["--seed", "9"]);
    assert_ne!(apw(&other).stdout, out.stdout);
}

#[test]
fn verify_plane_waring() {
    let out = apw(&[
        "verify",
        "plane-waring",
        "--m",
        "2",
        "--s",
        "2",
        "--trials",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let lines = json_lines(&out);
    for r in &lines[..3] {
        assert_eq!(keys(&r["params"]), ["kind", "s", "m", "eta"]);
        assert_eq!(r["gamma"]["length"], 4);
        assert_eq!(r["gamma"]["apolar"], true);
        assert_eq!(r["hilbert_function"], serde_json::json!([1, 4, 4, 4, 1]));
    }
}

#[test]
fn generic_eta_and_timings() {
    let out = apw(&[
        "verify",
        "scroll-fermat",
        "--s",
        "2",
        "--a1",
        "2",
        "--a2",
        "1",
        "--eta",
        "generic",
        "--timings",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let r = &json_lines(&out)[0];
    assert_eq!(r["params"]["eta"], "generic");
    assert!(r["gamma"].get("points").is_none());
    assert!(r["timings_ms"]["total"].is_number());
}

#[test]
fn scroll_with_explicit_equation() {
    let out = apw(&[
        "scroll",
        "--s",
        "2",
        "--a1",
        "1",
        "--a2",
        "1",
        "--equation",
        "x0^4*x2^4 + x1^4*x3^4",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("HF: 1,2,2,2,1"));
    let out = apw(&[
        "scroll",
        "--s",
        "2",
        "--a1",
        "1",
        "--a2",
        "1",
        "--equation",
        "x0^3*x2^4",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn cut_subcommand() {
    let v = &json_lines(&apw(&[
        "cut", "scroll", "--a1", "2", "--a2", "1", "--format", "json",
    ]))[0];
    assert_eq!(v["length"], 3);
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
    let v = &json_lines(&apw(&[
        "cut", "veronese", "--m", "2", "--eta", "generic", "--format", "json",
    ]))[0];
    assert_eq!(v["length"], 4);
    assert_eq!(code(&apw(&["cut", "veronese", "--m", "3"])), 2);
}
