use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qgp_core::quasigalois::CensusSummary;
use serde_json::Value;

fn qgp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qgp-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn exported(family: &str, params: &[&str], name: &str) -> PathBuf {
    let mut args = vec!["export", family];
    for p in params {
        args.extend(["--param", p]);
    }
    let o = qgp(&args);
    assert!(o.status.success());
    let path = scratch(name);
    std::fs::write(&path, &o.stdout).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fermat_vertex_is_outer_of_order_four() {
    let f = exported("fermat_quartic", &[], "fermat4.json");
    let o = qgp(&["point", "--curve", s(&f), "--point", "1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("order 4 outer"), "{}", stdout(&o));
    let o = qgp(&[
        "--format",
        "json",
        "point",
        "--curve",
        s(&f),
        "--point",
        "1,0,0",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 4);
    assert_eq!(v["locus"], "outer");
}

#[test]
fn singular_member_exits_one() {
    let f = exported("quartic_xy", &["a=1"], "xy1.json");
    let text = std::fs::read_to_string(&f).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    for t in v["terms"].as_array_mut().unwrap() {
        if t["exps"] == serde_json::json!([2, 2, 0]) {
            t["coeff"] = Value::String("2".into());
        }
    }
    let a2 = scratch("quartic_a2.json");
    std::fs::write(&a2, v.to_string()).unwrap();
    let o = qgp(&["smooth", "--curve", s(&a2)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "singular");
    let o = qgp(&["smooth", "--curve", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "smooth");
}

#[test]
fn input_errors_exit_two_with_location() {
    let bad = scratch("truncated.json");
    std::fs::write(
        &bad,
        "{\"field\": {\"conductor\": 8},\n \"degree\": 4,\n \"terms\": [",
    )
    .unwrap();
    let o = qgp(&["--format", "json", "analyze", "--curve", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "input");
    assert_eq!(v["error"]["line"], 3);

    let wrong = scratch("wrong_exps.json");
    std::fs::write(
        &wrong,
        r#"{"field": {"conductor": 8}, "degree": 4, "terms": [{"exps": [4, 0, 1], "coeff": "1"}]}"#,
    )
    .unwrap();
    let o = qgp(&["--format", "json", "smooth", "--curve", s(&wrong)]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"]["field"], "terms[0].exps");

    let f = exported("fermat_quartic", &[], "fermat4_guard.json");
    let o = Command::new(env!("CARGO_BIN_EXE_qgp"))
        .args(["smooth", "--curve", s(&f)])
        .env("QGP_MAX_CONDUCTOR", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));

    let o = qgp(&["point", "--curve", s(&f), "--point", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qgp(&["verify-paper", "--case", "no_such_case"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn analyze_json_round_trips_and_matches_text() {
    let f = exported("fermat_quartic", &[], "fermat4_analyze.json");
    let o = qgp(&["--format", "json", "analyze", "--curve", s(&f)]);
    assert!(o.status.success());
    let summary: CensusSummary = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(summary.delta_prime.get(&2), Some(&12));
    assert_eq!(summary.delta_prime.get(&4), Some(&3));
    let again = serde_json::to_value(&summary).unwrap();
    assert_eq!(again, serde_json::from_slice::<Value>(&o.stdout).unwrap());

    let text = stdout(&qgp(&["analyze", "--curve", s(&f)]));
    assert!(text.contains("delta_prime 2:12 4:3"), "{text}");
    assert!(text.contains(&format!(
        "pairs {} triples {}",
        summary.pairs.len(),
        summary.triples.len()
    )));
}

#[test]
fn seeds_file_drives_the_census() {
    let f = exported("hessian_sextic", &[], "hessian.json");
    let seeds = scratch("hessian_seeds.json");
    std::fs::write(&seeds, r#"{"seeds": ["1,0,0", ["0", "1", "0"], "1,1,1"]}"#).unwrap();
    let o = qgp(&[
        "--format",
        "json",
        "analyze",
        "--curve",
        s(&f),
        "--seeds",
        s(&seeds),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: CensusSummary = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(summary.delta_prime.get(&3), Some(&12));
    assert_eq!(
        serde_json::to_value(summary.certification).unwrap(),
        "certified"
    );
}

#[test]
fn profile_of_a_transversal_line() {
    let f = exported("fermat_quartic", &[], "fermat4_profile.json");
    let o = qgp(&[
        "--format",
        "json",
        "profile",
        "--curve",
        s(&f),
        "--line",
        "1,0,0",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["profile"], serde_json::json!([1, 1, 1, 1]));
}

#[test]
fn closure_of_fermat_symmetries() {
    let f = exported("fermat_quartic", &[], "fermat4_closure.json");
    let g = scratch("fermat_gens.json");
    std::fs::write(
        &g,
        r#"[[["z^2","0","0"],["0","1","0"],["0","0","1"]],
            [["0","1","0"],["1","0","0"],["0","0","1"]],
            [["0","1","0"],["0","0","1"],["1","0","0"]]]"#,
    )
    .unwrap();
    let o = qgp(&[
        "--format",
        "json",
        "closure",
        "--curve",
        s(&f),
        "--generators",
        s(&g),
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 96);

    let not = scratch("not_symmetric.json");
    std::fs::write(&not, r#"[[["2","0","0"],["0","1","0"],["0","0","1"]]]"#).unwrap();
    let o = qgp(&[
        "closure",
        "--curve",
        s(&f),
        "--generators",
        s(&not),
        "--cap",
        "8",
    ]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn verify_paper_case_passes_and_is_deterministic() {
    let o = qgp(&[
        "verify-paper",
        "--case",
        "hessian_sextic",
        "--starts",
        "500",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("PASS hessian_sextic"), "{text}");
    assert!(
        text.contains("delta_prime: {3: 12}") && text.contains("closure: 216"),
        "{text}"
    );

    let args = [
        "--format",
        "json",
        "verify-paper",
        "--case",
        "fermat_quartic",
        "--case",
        "identities",
        "--seed",
        "7",
        "--starts",
        "500",
    ];
    let a = qgp(&args);
    let b = qgp(&[&args[..], &["--threads", "1"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let cases: Vec<&str> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["case"].as_str().unwrap())
        .collect();
    assert_eq!(cases, ["fermat_quartic", "identities"]);
}

#[test]
fn list_names_every_case() {
    let o = qgp(&["verify-paper", "--list"]);
    let text = stdout(&o);
    for case in [
        "hessian_sextic",
        "quartic_klein",
        "quartic_xy[a=6]",
        "identities",
        "smoothness_gate",
    ] {
        assert!(text.lines().any(|l| l == case), "{case}");
    }
}

#[test]
fn oracle_census_counts_galois_points() {
    let f = exported("fermat_quartic", &[], "fermat4_oracle.json");
    let o = qgp(&[
        "--format",
        "json",
        "oracle-census",
        "--curve",
        s(&f),
        "--order",
        "4",
        "--starts",
        "600",
        "--seed",
        "3",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 3);
    let o = qgp(&["oracle-census", "--curve", s(&f), "--order", "1"]);
    assert_eq!(o.status.code(), Some(2));
}
