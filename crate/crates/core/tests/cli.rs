use std::path::PathBuf;
use std::process::{Command, Output};

use bhqc::syntax::parse_ket;
use bhqc::SymbolTable;
use serde_json::Value;

fn bhqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bhqc")).args(args).output().expect("binary runs")
}

fn demo_path(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("demos").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn run_teleport_demo_file() {
    let o = bhqc(&["run", &demo_path("teleport.bhqc")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("modes: a b1 b2"), "{text}");
    assert!(text.ends_with("final: (alpha)|000> + (beta)|001>\n"), "{text}");
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn run_reports_mismatches_without_failing() {
    let o = bhqc(&["--trace", "run", &demo_path("bell_chain.bhqc")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.matches(": MISMATCH").count(), 2, "{text}");
    assert!(text.contains("computed -|11>"), "{text}");
}

#[test]
fn json_states_parse_back() {
    let o = bhqc(&["--json", "run", &demo_path("teleport.bhqc")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let symbols = SymbolTable::with_names(&["alpha", "beta"]).unwrap();
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps[0]["instruction"], "init");
    for step in steps {
        let text = step["state"].as_str().unwrap();
        let k = parse_ket(text, &symbols, Some(3)).unwrap();
        assert_eq!(k.to_string(), text);
    }
    assert!(v["claims"].as_array().unwrap().iter().all(|c| c["verdict"] == "MATCH"));
}

#[test]
fn demos_run_and_are_deterministic() {
    for name in ["bell", "teleport", "ghz", "class-change"] {
        let a = bhqc(&["demo", name]);
        let b = bhqc(&["demo", name]);
        assert_eq!(a.status.code(), Some(0), "{name}");
        assert_eq!(a.stdout, b.stdout, "{name}");
        let j = bhqc(&["--json", "demo", name]);
        assert_eq!(json(&j)["demo"], name);
    }
}

#[test]
fn ghz_demo_reports_black_hole() {
    let text = stdout(&bhqc(&["demo", "ghz"]));
    assert!(text.contains("four D3-branes intersecting over a string"), "{text}");
    assert!(text.contains("LARGE"), "{text}");
}

#[test]
fn class_change_demo_reports_transition() {
    let text = stdout(&bhqc(&["demo", "class-change"]));
    assert!(text.contains("SUSY: 1/2 → 1/4 preserved"), "{text}");
    assert!(text.contains("MISMATCH"), "{text}");
}

#[test]
fn classify_json() {
    let o = bhqc(&["--json", "classify", "|000> + |111>"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["state"], "|000> + |111>");
    assert_eq!(v["class"], "GHZ");
    assert_eq!(v["fts_rank"], "4");
    assert_eq!(v["size"], "LARGE");
    assert_eq!(v["attractor"], true);
    assert_eq!(v["det"]["re"], "1");

    let v = json(&bhqc(&["--json", "classify", "|000> + |011>", "|001> + |010> + |100>"]));
    assert_eq!(v[0]["class"], "BISEPARABLE(A-BC)");
    assert_eq!(v[1]["class"], "W");
    assert_eq!(v[1]["susy"], "1/8");
}

#[test]
fn classify_rejects_symbols() {
    let o = bhqc(&["classify", "(alpha)|000>"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("symbolic amplitudes not classifiable"));
}

#[test]
fn verify_paper_exit_code_and_summary() {
    let o = bhqc(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 103);
    assert!(text.ends_with("102 claims: 94 MATCH, 1 MATCH_UP_TO_SCALAR, 7 MISMATCH\n"));
    assert!(text.contains("Eq.(24) B3: MISMATCH (computed -|11>)"), "{text}");

    let v = json(&bhqc(&["--json", "verify-paper"]));
    assert_eq!(v["summary"]["total"], 102);
    assert_eq!(v["summary"]["mismatch"], 7);
    assert_eq!(v["claims"].as_array().unwrap().len(), 102);
}

#[test]
fn parse_errors_are_positioned() {
    let dir = std::env::temp_dir().join(format!("bhqc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.bhqc");
    std::fs::write(&path, "qubits 2\nstate |00>\napply LX 0\n").unwrap();
    let o = bhqc(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr).into_owned();
    assert!(err.ends_with("line 3, column 7: unknown gate 'LX'\n"), "{err}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors() {
    assert_eq!(bhqc(&["demo", "nope"]).status.code(), Some(1));
    assert_eq!(bhqc(&["run"]).status.code(), Some(1));
    assert_eq!(bhqc(&["run", "/nonexistent/file.bhqc"]).status.code(), Some(1));
    assert_eq!(bhqc(&["--help"]).status.code(), Some(0));
}
