//! End-to-end tests of the `guide` binary: exit codes, output files,
//! replay semantics, and byte-level determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_guide"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn run_ok(cmd: &mut Command) -> Output {
    cmd.output().expect("binary should spawn")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr should be UTF-8")
}

/// Decision lines are the even lines of a replay stream; parses them.
fn decision_lines(stream: &str) -> Vec<Value> {
    stream
        .lines()
        .step_by(2)
        .map(|l| serde_json::from_str(l).expect("decision line should be JSON"))
        .collect()
}

/// Cue lines are the odd lines of a replay stream; parses them.
fn cue_lines(stream: &str) -> Vec<Value> {
    stream
        .lines()
        .skip(1)
        .step_by(2)
        .map(|l| serde_json::from_str(l).expect("cue line should be JSON"))
        .collect()
}

fn csv_row(cell_mm: &str, cols: usize) -> String {
    vec![cell_mm; cols].join(",")
}

#[test]
fn run_reaches_the_goal_and_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().expect("tempdir");
    let out1 = dir.path().join("a");
    let out2 = dir.path().join("b");
    for out in [&out1, &out2] {
        let result = run_ok(bin()
            .arg("run")
            .arg(scenario("empty-corridor.json"))
            .arg("--out")
            .arg(out));
        assert_eq!(result.status.code(), Some(0), "stderr: {}", stderr_str(&result));
        assert!(stdout_str(&result).contains("reached_goal=true"));
    }
    let report1 = std::fs::read(out1.join("report.json")).expect("report.json");
    let report2 = std::fs::read(out2.join("report.json")).expect("report.json");
    assert_eq!(report1, report2, "reruns must be byte-identical");
    let frames1 = std::fs::read(out1.join("frames.jsonl")).expect("frames.jsonl");
    let frames2 = std::fs::read(out2.join("frames.jsonl")).expect("frames.jsonl");
    assert_eq!(frames1, frames2);

    let report: Value = serde_json::from_slice(&report1).expect("report should parse");
    assert_eq!(report["reached_goal"], Value::Bool(true));
    assert_eq!(report["collisions"], Value::from(0));
    assert_eq!(
        report["frames"].as_array().map(Vec::len),
        Some(report["steps"].as_u64().expect("steps") as usize)
    );
}

#[test]
fn run_exits_two_when_depth_alone_faces_the_glass_door() {
    let dir = tempfile::tempdir().expect("tempdir");
    let result = run_ok(bin()
        .arg("run")
        .arg(scenario("glass-door.json"))
        .arg("--no-ultrasonic")
        .arg("--out")
        .arg(dir.path()));
    assert_eq!(result.status.code(), Some(2), "stderr: {}", stderr_str(&result));
    let report: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("report.json")).expect("report"))
            .expect("report should parse");
    assert_eq!(report["reached_goal"], Value::Bool(false));
    assert!(report["collisions"].as_u64().expect("collisions") >= 1);
}

#[test]
fn run_crosses_the_home_course_without_collisions() {
    let dir = tempfile::tempdir().expect("tempdir");
    let result = run_ok(bin()
        .arg("run")
        .arg(scenario("home.json"))
        .arg("--out")
        .arg(dir.path()));
    assert_eq!(result.status.code(), Some(0), "stderr: {}", stderr_str(&result));
    let report: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("report.json")).expect("report"))
            .expect("report should parse");
    assert_eq!(report["reached_goal"], Value::Bool(true));
    assert_eq!(report["collisions"], Value::from(0));
}

#[test]
fn run_rejects_malformed_scenarios_with_a_diagnostic() {
    let dir = tempfile::tempdir().expect("tempdir");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "this is not json").expect("write");
    let result = run_ok(bin().arg("run").arg(&bad));
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr_str(&result).contains("malformed scenario"));

    let outside = dir.path().join("outside.json");
    std::fs::write(
        &outside,
        r#"{
            "bounds": {"min": {"x": 0.0, "y": 0.0}, "max": {"x": 5.0, "y": 5.0}},
            "obstacles": [],
            "start": {"position": {"x": 9.0, "y": 2.5}},
            "goal": {"x": 4.0, "y": 2.5}
        }"#,
    )
    .expect("write");
    let result = run_ok(bin().arg("run").arg(&outside));
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr_str(&result).contains("invalid scene"));

    let result = run_ok(bin().arg("run").arg(dir.path().join("missing.json")));
    assert_eq!(result.status.code(), Some(1));
    assert!(!stderr_str(&result).is_empty());
}

#[test]
fn run_applies_dotted_config_overrides() {
    let dir = tempfile::tempdir().expect("tempdir");
    let result = run_ok(bin()
        .arg("run")
        .arg(scenario("empty-corridor.json"))
        .arg("--set")
        .arg("agent.step_len_m=0.2")
        .arg("--out")
        .arg(dir.path()));
    assert_eq!(result.status.code(), Some(0), "stderr: {}", stderr_str(&result));
    let report: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("report.json")).expect("report"))
            .expect("report should parse");
    let steps = report["steps"].as_u64().expect("steps");
    assert!(steps < 60, "double stride should cross in under 60 steps, took {steps}");

    let result = run_ok(bin()
        .arg("run")
        .arg(scenario("empty-corridor.json"))
        .arg("--set")
        .arg("wayfinding.bogus=1"));
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr_str(&result).contains("unknown config key `wayfinding.bogus`"));

    let result = run_ok(bin()
        .arg("run")
        .arg(scenario("empty-corridor.json"))
        .arg("--set")
        .arg("wayfinding.delta=fast"));
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr_str(&result).contains("invalid configuration"));
}

#[test]
fn usage_and_help_follow_the_exit_code_contract() {
    let result = run_ok(bin().arg("--bogus"));
    assert_eq!(result.status.code(), Some(1));

    let result = run_ok(&mut bin());
    assert_eq!(result.status.code(), Some(1), "missing subcommand is a usage error");

    let result = run_ok(bin().arg("--help"));
    assert_eq!(result.status.code(), Some(0));
    assert!(stdout_str(&result).contains("sweep-glass"));

    let result = run_ok(bin().arg("--version"));
    assert_eq!(result.status.code(), Some(0));
}

#[test]
fn replay_goes_straight_over_a_uniform_floor() {
    let dir = tempfile::tempdir().expect("tempdir");
    let depth = dir.path().join("depth.csv");
    let echo = dir.path().join("echo.csv");
    std::fs::write(&depth, format!("{}\n", csv_row("2026", 640)).repeat(3)).expect("write");
    std::fs::write(&echo, "5.25\n".repeat(3)).expect("write");

    let result = run_ok(bin()
        .arg("replay")
        .arg("--depth")
        .arg(&depth)
        .arg("--ultrasonic")
        .arg(&echo));
    assert_eq!(result.status.code(), Some(0), "stderr: {}", stderr_str(&result));
    let stream = stdout_str(&result);
    let decisions = decision_lines(&stream);
    let cues = cue_lines(&stream);
    assert_eq!(decisions.len(), 3);
    assert_eq!(cues.len(), 3);
    for (frame, decision) in decisions.iter().enumerate() {
        assert_eq!(decision["frame"], Value::from(frame));
        assert_eq!(decision["alpha_deg"], Value::from(0.0));
        assert_eq!(decision["gated_by_ultrasonic"], Value::Bool(false));
    }
    for cue in &cues {
        assert_eq!(cue["cue"], Value::from("speech"));
        assert_eq!(cue["text"], Value::from("Go straight"));
    }
}

#[test]
fn replay_steers_away_from_a_center_block_with_a_consistent_sign() {
    let dir = tempfile::tempdir().expect("tempdir");
    let mut cells = vec!["2026"; 640];
    for cell in cells.iter_mut().take(427).skip(213) {
        *cell = "1000";
    }
    let row = cells.join(",");
    let depth = dir.path().join("depth.csv");
    let echo = dir.path().join("echo.csv");
    std::fs::write(&depth, format!("{row}\n").repeat(4)).expect("write");
    std::fs::write(&echo, "5.25\n".repeat(4)).expect("write");

    let result = run_ok(bin()
        .arg("replay")
        .arg("--depth")
        .arg(&depth)
        .arg("--ultrasonic")
        .arg(&echo)
        .arg("--cue")
        .arg("visual"));
    assert_eq!(result.status.code(), Some(0), "stderr: {}", stderr_str(&result));
    let stream = stdout_str(&result);
    let decisions = decision_lines(&stream);
    assert_eq!(decisions.len(), 4);
    let first = decisions[0]["alpha_deg"].as_f64().expect("alpha");
    assert!(first.abs() > 7.5, "block should force a real turn, got {first}");
    for decision in &decisions {
        let alpha = decision["alpha_deg"].as_f64().expect("alpha");
        assert_eq!(alpha, first, "same frame data must give the same answer");
    }
    let expected_state = if first < 0.0 { "turn_left" } else { "turn_right" };
    for cue in cue_lines(&stream) {
        assert_eq!(cue["cue"], Value::from("visual"));
        assert_eq!(cue["state"], Value::from(expected_state));
    }
}

#[test]
fn replay_reports_null_when_no_column_returns() {
    let dir = tempfile::tempdir().expect("tempdir");
    let depth = dir.path().join("depth.csv");
    let echo = dir.path().join("echo.csv");
    std::fs::write(&depth, format!("{}\n", csv_row("0", 640)).repeat(3)).expect("write");
    std::fs::write(&echo, "5.25\n".repeat(3)).expect("write");

    let result = run_ok(bin()
        .arg("replay")
        .arg("--depth")
        .arg(&depth)
        .arg("--ultrasonic")
        .arg(&echo)
        .arg("--cue")
        .arg("beep"));
    assert_eq!(result.status.code(), Some(0), "stderr: {}", stderr_str(&result));
    let stream = stdout_str(&result);
    for decision in decision_lines(&stream) {
        assert_eq!(decision["alpha_deg"], Value::Null);
        assert_eq!(decision["width_m"], Value::Null);
    }
    for cue in cue_lines(&stream) {
        assert_eq!(cue["channel"], Value::from("alternating"));
    }
}

#[test]
fn replay_rejects_misaligned_logs() {
    let dir = tempfile::tempdir().expect("tempdir");
    let depth = dir.path().join("depth.csv");
    let echo = dir.path().join("echo.csv");
    std::fs::write(&depth, format!("{}\n", csv_row("2026", 640)).repeat(2)).expect("write");
    std::fs::write(&echo, "5.25\n".repeat(3)).expect("write");

    let result = run_ok(bin()
        .arg("replay")
        .arg("--depth")
        .arg(&depth)
        .arg("--ultrasonic")
        .arg(&echo));
    assert_eq!(result.status.code(), Some(1));
    assert!(
        stderr_str(&result).contains("depth log has 2 frames but ultrasonic log has 3"),
        "stderr: {}",
        stderr_str(&result)
    );
}

#[test]
fn replay_writes_the_stream_to_a_file_when_asked() {
    let dir = tempfile::tempdir().expect("tempdir");
    let depth = dir.path().join("depth.csv");
    let echo = dir.path().join("echo.csv");
    let out = dir.path().join("stream.jsonl");
    std::fs::write(&depth, format!("{}\n", csv_row("2026", 640))).expect("write");
    std::fs::write(&echo, "0.8\n").expect("write");

    let result = run_ok(bin()
        .arg("replay")
        .arg("--depth")
        .arg(&depth)
        .arg("--ultrasonic")
        .arg(&echo)
        .arg("--out")
        .arg(&out));
    assert_eq!(result.status.code(), Some(0), "stderr: {}", stderr_str(&result));
    assert!(stdout_str(&result).is_empty());
    let stream = std::fs::read_to_string(&out).expect("stream file");
    let decisions = decision_lines(&stream);
    assert_eq!(decisions.len(), 1);
    assert_eq!(decisions[0]["gated_by_ultrasonic"], Value::Bool(true));
    assert_eq!(decisions[0]["ultrasonic_m"], Value::from(0.8));
}

#[test]
fn sweep_height_prints_the_grid_and_validates_its_axes() {
    let result = run_ok(bin()
        .arg("sweep-height")
        .arg("--heights")
        .arg("1.65")
        .arg("--distances")
        .arg("1.2,1.6"));
    assert_eq!(result.status.code(), Some(0), "stderr: {}", stderr_str(&result));
    let csv = stdout_str(&result);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("camera_height_m,1.2,1.6"));
    assert_eq!(lines.next(), Some("1.65,0.035,0.035"));
    assert_eq!(lines.next(), None);

    let result = run_ok(bin().arg("sweep-height").arg("--heights").arg("1.3"));
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr_str(&result).contains("outside"));

    let result = run_ok(bin().arg("sweep-height").arg("--distances").arg("2.5"));
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr_str(&result).contains("outside"));
}

#[test]
fn sweep_glass_is_deterministic_and_shows_the_gate_rescue() {
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let result = run_ok(bin().arg("sweep-glass").arg("--scenes").arg("5"));
        assert_eq!(result.status.code(), Some(0), "stderr: {}", stderr_str(&result));
        outputs.push(stdout_str(&result));
    }
    assert_eq!(outputs[0], outputs[1], "same seed must give identical CSV");

    let csv = &outputs[0];
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("material,fused,scenes,accuracy"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    let accuracy = |material: &str, fused: &str| -> f64 {
        rows.iter()
            .find(|r| r[0] == material && r[1] == fused)
            .unwrap_or_else(|| panic!("missing row {material},{fused}"))[3]
            .parse()
            .expect("accuracy")
    };
    assert_eq!(accuracy("frosted", "false"), 1.0);
    assert_eq!(accuracy("ir_transparent", "false"), 0.0);
    assert_eq!(accuracy("ir_transparent", "true"), 1.0);

    let result = run_ok(bin().arg("sweep-glass").arg("--scenes").arg("0"));
    assert_eq!(result.status.code(), Some(1));
}
