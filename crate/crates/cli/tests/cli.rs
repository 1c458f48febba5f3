use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gpla(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpla"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

/// A scratch directory unique to this test process and name.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gpla-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, file: &str, text: &str) -> String {
    let p = dir.join(file);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn ray(a: &str, b: &str) -> String {
    format!(r#"[{{"coeffs": ["{a}"], "const": "{b}", "rel": "ge"}}]"#)
}

fn doc(polys: &[String]) -> String {
    format!(
        r#"{{"left": 1, "right": 0, "polyhedra": [{}]}}"#,
        polys.join(", ")
    )
}

#[test]
fn eval_geq_prints_one_ge_row() {
    let dir = scratch("eval");
    let f = write(&dir, "geq.gpla", "geq\n");
    let o = gpla(&["eval", &f]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let polys = v["polyhedra"].as_array().unwrap();
    assert_eq!(polys.len(), 1);
    let rows = polys[0].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["rel"], "ge");
}

#[test]
fn eval_output_round_trips() {
    let dir = scratch("roundtrip");
    for (i, src) in ["geq | leq", "dup ; (scl(1/2) & scl(-3))", "max", "L"]
        .iter()
        .enumerate()
    {
        let first = gpla(&["eval", src]);
        assert_eq!(first.status.code(), Some(0), "{src}");
        let f = write(&dir, &format!("r{i}.json"), &stdout(&first));
        assert_eq!(gpla(&["eq", &f, src]).status.code(), Some(0), "{src}");
        let again = gpla(&["eval", &f]);
        assert_eq!(stdout(&again), stdout(&first), "{src}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["nf", "max"][..],
        &["eval", "abs | relu"],
        &["leq", "geq", "leq"],
        &["circuit-solve", "diode", "--nf"],
    ] {
        assert_eq!(stdout(&gpla(args)), stdout(&gpla(args)));
    }
}

#[test]
fn total_axiom_sides_are_equal() {
    let o = gpla(&["eq", "geq | leq", "del ; codel"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "holds");
}

#[test]
fn gap_counterexample_verifies_by_member() {
    let dir = scratch("gap");
    let d = write(&dir, "d.json", &doc(&[ray("1", "1")]));
    let c = write(&dir, "c.json", &doc(&[ray("1", "0"), ray("-1", "-2")]));
    let o = gpla(&["leq", &d, &c]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let inner = out
        .trim()
        .strip_prefix("fails at (")
        .and_then(|s| s.strip_suffix(')'))
        .expect("verdict with a point");
    assert!(!inner.contains('.'), "exact rationals only: {inner}");
    assert_eq!(gpla(&["member", &d, "--", inner]).status.code(), Some(0));
    assert_eq!(gpla(&["member", &c, "--", inner]).status.code(), Some(1));
}

#[test]
fn member_accepts_negative_fractions() {
    let o = gpla(&["member", "geq", "--", "1", "-1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "member");
    assert_eq!(
        gpla(&["member", "geq", "--", "-1/3", "0"]).status.code(),
        Some(1)
    );
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(gpla(&["eval", "nonsense"]).status.code(), Some(2));
    assert_eq!(gpla(&["eval", "add ; add"]).status.code(), Some(2));
    assert_eq!(gpla(&["leq", "geq", "add"]).status.code(), Some(2));
    assert_eq!(gpla(&["member", "geq", "--", "1"]).status.code(), Some(2));
    assert_eq!(
        gpla(&["member", "geq", "--", "1", "0.5"]).status.code(),
        Some(2)
    );
    assert_eq!(gpla(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gpla(&[]).status.code(), Some(2));
}

#[test]
fn nf_lists_hyperplanes_and_cells() {
    let o = gpla(&["nf", "geq | leq"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("hyperplanes 1"));
    assert!(out.contains("cells 2"));
}

#[test]
fn axioms_check_passes() {
    let o = gpla(&["axioms-check"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.trim_end().ends_with("0 failures"));
    assert!(!out
        .lines()
        .any(|l| l.contains(": fails") || l.contains(": violated")));
    assert!(out.lines().any(|l| l.starts_with("snake")));
    let o = gpla(&["axioms-check", "--scalars", "3,-2/7"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn circuit_solve_reads_files() {
    let dir = scratch("circuit");
    let f = write(&dir, "divider.circ", "res(1)\n");
    let o = gpla(&["circuit-solve", &f]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["left"], 2);
    assert_eq!(
        gpla(&["circuit-solve", "res(1) ; swire"]).status.code(),
        Some(2)
    );
}
