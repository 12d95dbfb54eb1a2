//! The shipped scenario files stay loadable and keep their headline
//! outcomes: the corridor is walked, the glass door defeats the
//! depth-only stack, and the cluttered room is crossed clean.

use guidance_sim::scenario::{run_scenario, ScenarioSpec};
use std::path::PathBuf;

fn load(name: &str) -> ScenarioSpec {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
    ScenarioSpec::from_json(&text).unwrap()
}

#[test]
fn empty_corridor_fixture_reaches_the_goal() {
    let spec = load("empty-corridor.json");
    let report = run_scenario(&spec.scene, &spec.engine, &spec.limits).unwrap();
    assert!(report.reached_goal);
    assert_eq!(report.collisions, 0);
}

#[test]
fn glass_door_fixture_defeats_the_depth_only_stack() {
    let spec = load("glass-door.json");
    let mut engine = spec.engine.clone();
    engine.use_ultrasonic = false;
    let report = run_scenario(&spec.scene, &engine, &spec.limits).unwrap();
    assert!(!report.reached_goal, "depth alone cannot see the glass");
    assert!(report.collisions >= 1, "the walker presses into the panel");
}

#[test]
fn home_fixture_is_crossed_clean_when_guided() {
    let spec = load("home.json");
    let report = run_scenario(&spec.scene, &spec.engine, &spec.limits).unwrap();
    assert!(report.reached_goal, "stopped after {} steps", report.steps);
    assert_eq!(report.collisions, 0);
}

#[test]
fn home_fixture_straight_line_baseline_collides() {
    let spec = load("home.json");
    let mut engine = spec.engine.clone();
    engine.guided = false;
    let report = run_scenario(&spec.scene, &engine, &spec.limits).unwrap();
    assert!(!report.reached_goal);
    assert!(report.collisions >= 1);
}
