//! End-to-end tests of the `hb` binary: JSON contracts, stdin/file input,
//! pipe composability between subcommands, exit codes, and determinism.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const COMPLETE_GRAPH_5: &str =
    r#"{"maximal_simplices":[[0,1],[0,2],[0,3],[0,4],[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#;
const TWO_EDGE_PATH: &str = r#"{"maximal_simplices":[[0,1],[1,2]]}"#;

/// A fresh invocation of the binary with a clean budget environment, so
/// results do not depend on the caller's `HB_BUDGET`.
fn hb() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hb"));
    cmd.env_remove("HB_BUDGET");
    cmd
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = hb()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn hb");
    child
        .stdin
        .as_mut()
        .expect("stdin handle")
        .write_all(input.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("wait for hb")
}

fn run(args: &[&str]) -> Output {
    run_with_stdin(args, "")
}

fn stdout_str(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_str(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_str(&stdout_str(output)).expect("stdout is one JSON payload")
}

/// Path for a scratch file unique to this test process and label.
fn scratch_path(label: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("hb-cli-test-{}-{label}.json", std::process::id()))
}

#[test]
fn betti_of_complete_graph_from_stdin() {
    let plain = run_with_stdin(&["betti"], COMPLETE_GRAPH_5);
    assert_eq!(
        plain.status.code(),
        Some(0),
        "stderr: {}",
        stderr_str(&plain)
    );
    assert_eq!(stdout_str(&plain), "{\"betti\":[1,6]}\n");

    let reduced = run_with_stdin(&["betti", "--reduced"], COMPLETE_GRAPH_5);
    assert_eq!(stdout_str(&reduced), "{\"betti\":[0,6]}\n");
}

#[test]
fn dash_flag_reads_stdin_like_an_omitted_flag() {
    let omitted = run_with_stdin(&["betti"], COMPLETE_GRAPH_5);
    let dashed = run_with_stdin(&["betti", "--complex", "-"], COMPLETE_GRAPH_5);
    assert_eq!(omitted.status.code(), Some(0));
    assert_eq!(dashed.status.code(), Some(0));
    assert_eq!(stdout_str(&omitted), stdout_str(&dashed));
}

#[test]
fn reduced_flag_lowers_the_count_of_components_by_one() {
    let two_edges = r#"{"maximal_simplices":[[0,1],[2,3]]}"#;
    let plain = run_with_stdin(&["betti"], two_edges);
    let reduced = run_with_stdin(&["betti", "--reduced"], two_edges);
    assert_eq!(stdout_str(&plain), "{\"betti\":[2,0]}\n");
    assert_eq!(stdout_str(&reduced), "{\"betti\":[1,0]}\n");
}

#[test]
fn generated_gamma_family_pipes_into_helly() {
    let family = run(&["examples", "gen", "gamma", "--b", "1", "--d", "2"]);
    assert_eq!(family.status.code(), Some(0));
    let helly = run_with_stdin(&["helly"], &stdout_str(&family));
    assert_eq!(helly.status.code(), Some(0));
    assert_eq!(stdout_str(&helly), "{\"helly\":4}\n");
}

#[test]
fn eight_tetrahedron_family_pipes_into_helly() {
    let family = run(&["examples", "gen", "gamma3prime"]);
    assert_eq!(family.status.code(), Some(0));
    let helly = run_with_stdin(&["helly"], &stdout_str(&family));
    assert_eq!(helly.status.code(), Some(0));
    assert_eq!(stdout_str(&helly), "{\"helly\":6}\n");
}

#[test]
fn certified_tight_family_pipes_into_helly() {
    let family = run(&[
        "examples", "gen", "tight", "--d", "2", "--k", "2", "--n", "3",
    ]);
    assert_eq!(family.status.code(), Some(0));
    let helly = run_with_stdin(&["helly"], &stdout_str(&family));
    assert_eq!(stdout_str(&helly), "{\"helly\":3}\n");
}

#[test]
fn audit_reports_rows_and_enforces_an_optional_bound() {
    // Degree 0 is the only audited degree at dim 2, and every subfamily
    // intersection of this family is connected.
    let family = run(&["examples", "gen", "gamma", "--b", "1", "--d", "2"]);
    let within = run_with_stdin(
        &["audit", "--dim", "2", "--bound", "0"],
        &stdout_str(&family),
    );
    assert_eq!(within.status.code(), Some(0), "bound 0 should hold");
    let report = stdout_json(&within);
    assert_eq!(report["d"], 2);
    assert_eq!(report["max_i"], 0);
    assert_eq!(report["max_betti"], 0);
    assert_eq!(report["helly_number"], 4);

    // At dim 3 the audit covers degrees 0 and 1, and this family has a
    // three-member intersection that is a hollow triangle.
    let family = run(&["examples", "gen", "gamma3prime"]);
    let family_json = stdout_str(&family);
    let within = run_with_stdin(&["audit", "--dim", "3", "--bound", "1"], &family_json);
    assert_eq!(within.status.code(), Some(0), "bound 1 should hold");
    assert_eq!(stdout_json(&within)["max_betti"], 1);

    let exceeded = run_with_stdin(&["audit", "--dim", "3", "--bound", "0"], &family_json);
    assert_eq!(exceeded.status.code(), Some(1), "bound 0 must be exceeded");
    assert!(stderr_str(&exceeded).contains("bound 0 exceeded"));
    // The report itself is still emitted before the failing exit.
    assert_eq!(stdout_json(&exceeded)["max_betti"], 1);
}

#[test]
fn obstruction_verdicts_and_witness_file() {
    let witness_path = scratch_path("witness");
    let out = run_with_stdin(
        &[
            "obstruction",
            "--dim",
            "2",
            "--witness",
            witness_path.to_str().unwrap(),
        ],
        COMPLETE_GRAPH_5,
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    assert_eq!(stdout_str(&out), "{\"nonzero\":true}\n");

    let witness: Value =
        serde_json::from_str(&std::fs::read_to_string(&witness_path).expect("witness file"))
            .expect("witness JSON");
    assert_eq!(witness["d"], 2);
    assert_eq!(witness["nonzero"], true);
    assert_eq!(witness["witness"]["kind"], "certificate-cycle");
    assert!(witness["witness"]["support"]
        .as_array()
        .is_some_and(|s| !s.is_empty()));
    let _ = std::fs::remove_file(&witness_path);

    let solid = run_with_stdin(
        &["obstruction", "--dim", "1"],
        r#"{"maximal_simplices":[[0,1]]}"#,
    );
    assert_eq!(stdout_str(&solid), "{\"nonzero\":false}\n");
}

#[test]
fn subdivide_output_pipes_back_into_betti() {
    let subdivided = run_with_stdin(&["subdivide"], r#"{"maximal_simplices":[[0,1,2]]}"#);
    assert_eq!(subdivided.status.code(), Some(0));
    let wire = stdout_json(&subdivided);
    assert_eq!(wire["vertices"].as_array().map(Vec::len), Some(7));
    assert_eq!(wire["maximal_simplices"].as_array().map(Vec::len), Some(6));

    let betti = run_with_stdin(&["betti"], &stdout_str(&subdivided));
    assert_eq!(stdout_str(&betti), "{\"betti\":[1,0,0]}\n");
}

#[test]
fn deleted_product_of_complete_graph_is_an_orientable_surface() {
    let out = run_with_stdin(&["deleted-product"], COMPLETE_GRAPH_5);
    assert_eq!(out.status.code(), Some(0));
    let payload = stdout_json(&out);
    assert_eq!(payload["dim"], 2);
    assert_eq!(payload["betti"], serde_json::json!([1, 12, 1]));
}

#[test]
fn eml_reports_count_and_structure_checks() {
    let out = run(&["eml", "--p", "2", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let payload = stdout_json(&out);
    assert_eq!(payload["count"], 6);
    assert_eq!(payload["flip_equivariant"], true);
    assert_eq!(payload["tiles_grid_chains"], true);
    assert_eq!(payload["staircases"].as_array().map(Vec::len), Some(6));
}

#[test]
fn build_verify_round_trip_and_tamper_detection() {
    let complex_path = scratch_path("path-complex");
    std::fs::write(&complex_path, TWO_EDGE_PATH).expect("write complex");

    let family = run(&["examples", "gen", "skeleton", "--n", "5", "--k", "1"]);
    assert_eq!(family.status.code(), Some(0));

    let built = run_with_stdin(
        &[
            "build-ccm",
            "--complex",
            complex_path.to_str().unwrap(),
            "--family",
            "-",
            "--b",
            "1",
        ],
        &stdout_str(&family),
    );
    assert_eq!(
        built.status.code(),
        Some(0),
        "stderr: {}",
        stderr_str(&built)
    );
    let payload = stdout_json(&built);
    assert_eq!(payload["outcome"], "built");
    assert_eq!(payload["almost_embedding"], true);
    assert_eq!(payload["report"]["violations"], serde_json::json!([]));

    // The emitted bundle re-verifies cleanly on its own.
    let bundle = payload["bundle"].clone();
    let verified = run_with_stdin(&["verify", "constrained"], &bundle.to_string());
    assert_eq!(verified.status.code(), Some(0));
    let verdict = stdout_json(&verified);
    assert_eq!(verdict["ok"], true);
    assert_eq!(verdict["almost_embedding"], true);

    // Blanking one edge image breaks the chain-map law, and verification
    // must say so with a non-zero exit.
    let mut tampered = bundle;
    let assignment = tampered["gamma"]["assignment"]
        .as_object_mut()
        .expect("assignment object");
    let edge_key = assignment
        .keys()
        .find(|k| k.contains(','))
        .expect("an edge key")
        .clone();
    assignment.insert(edge_key, serde_json::json!([]));
    let rejected = run_with_stdin(&["verify", "constrained"], &tampered.to_string());
    assert_eq!(rejected.status.code(), Some(1));
    let verdict = stdout_json(&rejected);
    assert_eq!(verdict["ok"], false);
    assert!(verdict["violations"]
        .as_array()
        .is_some_and(|v| !v.is_empty()));
    assert_eq!(verdict["almost_embedding"], Value::Null);

    let _ = std::fs::remove_file(&complex_path);
}

#[test]
fn build_reports_insufficient_families_as_data_not_errors() {
    let complex_path = scratch_path("complete-graph");
    std::fs::write(&complex_path, COMPLETE_GRAPH_5).expect("write complex");

    let family = run(&["examples", "gen", "skeleton", "--n", "5", "--k", "1"]);
    let out = run_with_stdin(
        &[
            "build-ccm",
            "--complex",
            complex_path.to_str().unwrap(),
            "--family",
            "-",
            "--b",
            "1",
        ],
        &stdout_str(&family),
    );
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let payload = stdout_json(&out);
    assert_eq!(payload["outcome"], "insufficient");
    assert_eq!(payload["stage"], "uniform pair selection");

    let _ = std::fs::remove_file(&complex_path);
}

#[test]
fn malformed_json_exits_with_input_error() {
    let out = run_with_stdin(&["betti"], "{ this is not json");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).starts_with("hb: "));
    assert!(stdout_str(&out).is_empty());
}

#[test]
fn unknown_fields_are_rejected() {
    let out = run_with_stdin(&["betti"], r#"{"maximal_simplices":[[0]],"extra_field":1}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_flag_caps_work_with_exit_code_three() {
    let out = run_with_stdin(&["deleted-product", "--budget", "5"], COMPLETE_GRAPH_5);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_str(&out).contains("budget"));
}

#[test]
fn default_family_budget_guards_large_inputs() {
    let family = run(&["examples", "gen", "skeleton", "--n", "25", "--k", "1"]);
    assert_eq!(family.status.code(), Some(0));
    let out = run_with_stdin(&["helly"], &stdout_str(&family));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn selftest_is_deterministic_and_exit_code_tracks_the_report() {
    let first = run(&["selftest"]);
    let second = run(&["selftest"]);
    assert_eq!(first.stdout, second.stdout, "selftest output must not vary");

    let report = stdout_json(&first);
    let criteria = report["criteria"].as_array().expect("criteria array");
    assert_eq!(criteria.len(), 9);
    let all_passed = report["all_passed"].as_bool().expect("all_passed flag");
    let expected = if all_passed { Some(0) } else { Some(1) };
    assert_eq!(first.status.code(), expected);
    assert_eq!(second.status.code(), expected);
}
