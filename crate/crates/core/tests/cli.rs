mod support;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ecosite::fixture::{worked_scenario, worked_tensor, SCENARIO_FILE, TENSOR_FILE};
use ecosite::report::SolveReport;
use ecosite::solvers::DEFAULT_TOLERANCE;
use ecosite::{PayoffTensor, Profile, Scenario, TensorDocument};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn ecosite(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecosite")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn committed_fixtures_match_emitted_ones() {
    let dir = tempfile::tempdir().unwrap();
    let out = ecosite(&["fixtures", "emit", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for name in [SCENARIO_FILE, TENSOR_FILE] {
        let emitted = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let committed = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(emitted, committed, "{name}");
    }
    let s: Scenario = serde_json::from_str(&std::fs::read_to_string(fixture(SCENARIO_FILE)).unwrap()).unwrap();
    assert_eq!(s, worked_scenario());
}

#[test]
fn validate_exit_codes() {
    let out = ecosite(&["validate", &fixture(SCENARIO_FILE)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let dir = tempfile::tempdir().unwrap();
    let mut s = worked_scenario();
    s.players[1].emission = -15.0;
    let bad = write(dir.path(), "bad.json", &s.to_json_pretty());
    let out = ecosite(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let lines: Vec<_> = stdout(&out).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 1);
    assert!(lines[0].starts_with("players[1].emission:"));

    let broken = write(dir.path(), "broken.json", "{\n  \"region\": {\"x_max\": 15,\n  oops\n}");
    let out = ecosite(&["validate", &broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn tensor_from_fixture_scenario() {
    let out = ecosite(&["tensor", &fixture(SCENARIO_FILE)]);
    assert_eq!(out.status.code(), Some(0));
    let doc: TensorDocument = serde_json::from_slice(&out.stdout).unwrap();
    let t = doc.into_tensor().unwrap();
    assert_eq!(t.shape(), &[3, 4, 2]);
    for c in 0..4 {
        for d in 0..2 {
            assert!((t.payoff(&Profile::from([0, c, d]))[0] - 2.6138).abs() < 1e-4);
        }
    }
}

#[test]
fn tensor_explain_lists_breakdowns() {
    let out = ecosite(&["tensor", &fixture(SCENARIO_FILE), "--explain"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let explain = v["explain"].as_array().unwrap();
    assert_eq!(explain.len(), 24);
    let first = &explain[0]["players"][0];
    assert_eq!(first["player"], "P1");
    assert_eq!(first["site"], "B1");
    assert_eq!(first["income"].as_array().unwrap().len(), 5);
    assert_eq!(first["total"], v["payoffs"][0][0]);
}

#[test]
fn single_cell_and_singular_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let one = r#"{"region":{"x_max":5,"y_max":5,"rho_min":0.5,"rho_max":10,"pi":3},
                  "objects":[{"id":"A","x":1,"y":1}],
                  "players":[{"id":"P","emission":2,"sites":[{"id":"S","x":2,"y":1}],
                              "loss":[[1]],"damage_weight":[[0]]}]}"#;
    let path = write(dir.path(), "one.json", one);
    let out = ecosite(&["tensor", &path]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payoffs"], serde_json::json!([[1.0]]));

    let out = ecosite(&["solve", &path, "--format", "json"]);
    let r: SolveReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.nash.unwrap().equilibria.len(), 1);
    let c = r.compromise.unwrap();
    assert_eq!(c.min_residual, 0.0);
    assert_eq!(c.minimizers[0].indices, Profile::from([0]));

    let singular = one.replace(r#""x":2,"y":1"#, r#""x":1,"y":1"#);
    let path = write(dir.path(), "singular.json", &singular);
    for cmd in ["tensor", "solve"] {
        let out = ecosite(&[cmd, &path]);
        assert_eq!(out.status.code(), Some(1), "{cmd}");
        let err = stderr(&out);
        assert!(err.contains("player P site S coincides with natural object A"), "{err}");
    }
}

#[test]
fn solve_worked_tensor_text_and_json_agree() {
    let json = ecosite(&["solve", &fixture(TENSOR_FILE), "--format", "json"]);
    assert_eq!(json.status.code(), Some(0));
    let r: SolveReport = serde_json::from_slice(&json.stdout).unwrap();
    let nash = r.nash.as_ref().unwrap();
    assert_eq!(nash.equilibria.len(), 1);
    assert_eq!(nash.equilibria[0].labels, ["B1", "C4", "D2"]);
    let c = r.compromise.as_ref().unwrap();
    assert_eq!(r.ideal, [6.564, 7.845, 4.537]);
    assert!((c.min_residual - 1.964).abs() < 1e-9);
    assert!(r.feasibility.is_none());

    let text = stdout(&ecosite(&["solve", &fixture(TENSOR_FILE)]));
    assert!(text.contains("Pure Nash equilibria (1):\n  (B1, C4, D2) [0,3,1]"));
    assert!(text.contains("Compromise set (1), min residual 1.96400:\n  (B1, C4, D2) [0,3,1]"));
    assert!(text.contains("Ideal vector: (6.56400, 7.84500, 4.53700)"));
    let residual_lines: Vec<_> = text.lines().filter(|l| l.contains("  residual ")).collect();
    assert_eq!(residual_lines.len(), 24);
    for (line, row) in residual_lines.iter().zip(&r.residual_table) {
        let printed: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
        assert!((printed - row.residual).abs() < 1e-5 * row.residual.abs().max(1.0));
        assert!(line.contains(&format!("({})", row.labels.join(", "))));
    }
}

#[test]
fn solver_flags_select_sections() {
    let out = ecosite(&["solve", &fixture(TENSOR_FILE), "--nash", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.get("nash").is_some() && v.get("compromise").is_none());
    assert_eq!(v["residual_table"].as_array().unwrap().len(), 24);

    let out = ecosite(&["solve", &fixture(TENSOR_FILE), "--compromise", "--tolerance", "0.2", "--format", "json"]);
    let r: SolveReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r.nash.is_none());
    // residual 2.921 at (B3, C4, D2) is the runner-up
    assert_eq!(r.compromise.unwrap().minimizers.len(), 1);
    let out = ecosite(&["solve", &fixture(TENSOR_FILE), "--compromise", "--tolerance", "1.0", "--format", "json"]);
    let r: SolveReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.compromise.unwrap().minimizers.len(), 2);

    let out = ecosite(&["solve", &fixture(TENSOR_FILE), "--tolerance=-1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn solve_scenario_reports_feasibility() {
    let out = ecosite(&["solve", &fixture(SCENARIO_FILE), "--format", "json", "--pairwise-band"]);
    assert_eq!(out.status.code(), Some(0));
    let r: SolveReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.provenance, ecosite::Provenance::ComputedFromEquation);
    let f = r.feasibility.unwrap();
    assert_eq!(f.sites.len(), 9);
    assert!(f.sites.iter().all(|s| s.feasible));
    assert_eq!(f.pairwise, Some(vec![]));
    assert_eq!(r.nash.unwrap().equilibria[0].labels, ["B3", "C1", "D2"]);
}

#[test]
fn unrecognised_and_invalid_documents() {
    let dir = tempfile::tempdir().unwrap();
    let other = write(dir.path(), "other.json", r#"{"hello": 1}"#);
    assert_eq!(ecosite(&["solve", &other]).status.code(), Some(2));

    let ragged = write(
        dir.path(),
        "ragged.json",
        r#"{"shape":[2],"players":["A"],"strategy_labels":[["x","y"]],"payoffs":[[1.0]]}"#,
    );
    let out = ecosite(&["solve", &ragged]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("expected 2 payoff vectors"));

    let mut s = worked_scenario();
    s.players[0].loss[0][0] = -1.0;
    let bad = write(dir.path(), "bad.json", &s.to_json_pretty());
    let out = ecosite(&["solve", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("players[0].loss[0][0]"));
}

#[test]
fn random_three_player_tensor_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let dir = tempfile::tempdir().unwrap();
    for trial in 0..10 {
        let payoffs = (0..27).map(|_| (0..3).map(|_| rng.gen_range(-10.0..10.0)).collect()).collect();
        let t = PayoffTensor::from_payoffs(vec![3, 3, 3], payoffs).unwrap();
        let path = write(dir.path(), &format!("t{trial}.json"), &t.to_json_pretty());
        let out = ecosite(&["solve", &path, "--format", "json"]);
        let r: SolveReport = serde_json::from_slice(&out.stdout).unwrap();

        let nash: Vec<usize> = r.nash.unwrap().equilibria.iter().map(|e| t.linear_index(&e.indices)).collect();
        assert_eq!(nash, support::nash_oracle(&t, DEFAULT_TOLERANCE));
        let o = support::compromise_oracle(&t, DEFAULT_TOLERANCE);
        let mins: Vec<usize> = r.compromise.unwrap().minimizers.iter().map(|e| t.linear_index(&e.indices)).collect();
        assert_eq!(mins, o.minimizers);
        let residuals: Vec<f64> = r.residual_table.iter().map(|row| row.residual).collect();
        assert_eq!(residuals, o.residuals);
    }
}

#[test]
fn library_fixture_matches_file_fixture() {
    let doc: TensorDocument = serde_json::from_str(&std::fs::read_to_string(fixture(TENSOR_FILE)).unwrap()).unwrap();
    assert_eq!(doc.into_tensor().unwrap(), worked_tensor());
}
