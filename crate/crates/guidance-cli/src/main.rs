//! Command-line front end for the guidance engine and simulator.
//!
//! Four subcommands cover the whole pipeline:
//!
//! * `run` walks a scenario file to its goal and writes a JSON report
//!   plus a JSON-lines frame log.
//! * `replay` re-runs the decision pipeline over recorded depth and
//!   ultrasonic logs, emitting one decision record and one cue record
//!   per frame.
//! * `sweep-height` measures the minimum detectable obstacle height
//!   over a camera-height by distance grid and emits a CSV matrix.
//! * `sweep-glass` measures one-frame decision accuracy against glass
//!   walls per material and fusion mode and emits a CSV table.
//!
//! Exit codes: 0 on success, 1 on usage or configuration errors, 2
//! when a run ends without reaching its goal. Output floats carry six
//! significant digits, and the same inputs with the same seed always
//! produce byte-identical output.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use guidance_core::cueing::{beep_cue, speech_cue, stereo_cue, visual_cue, CueRecord};
use guidance_core::fusion::{fuse_ultrasonic, select_direction, DecisionRecord};
use guidance_core::sensors::UltrasonicReading;
use guidance_core::wayfinding::{extract_candidates, DepthScanLine};
use guidance_sim::experiments::{glass_csv, sweep_glass, sweep_height, HeightProbe};
use guidance_sim::fmt::{fmt_sig6, sig6};
use guidance_sim::scenario::{infer_region_from_line, run_scenario, EngineConfig, ScenarioSpec};
use guidance_sim::SimError;
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "guide",
    version,
    about = "Obstacle-avoidance guidance: scenario runs, log replay, and experiment sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Walk a scenario to its goal and write report.json + frames.jsonl.
    Run(RunArgs),
    /// Re-run the decision pipeline over recorded sensor logs.
    Replay(ReplayArgs),
    /// Measure minimum detectable obstacle height over a grid.
    SweepHeight(SweepHeightArgs),
    /// Measure decision accuracy against glass walls.
    SweepGlass(SweepGlassArgs),
}

/// Engine adjustments shared by every subcommand.
#[derive(Args)]
struct Overrides {
    /// Config override as a dotted key, e.g. --set wayfinding.delta=1.2
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Seed for the depth-noise and scene-randomization streams.
    #[arg(long)]
    seed: Option<u64>,

    /// Drop the ultrasonic gate; the depth scan decides alone.
    #[arg(long)]
    no_ultrasonic: bool,

    /// Disable depth sensor noise.
    #[arg(long)]
    no_noise: bool,
}

impl Overrides {
    /// Applies dotted-key assignments and flags on top of `engine`.
    /// Unknown keys and values of the wrong shape are usage errors.
    fn apply(&self, engine: EngineConfig) -> Result<EngineConfig, String> {
        let mut engine = if self.set.is_empty() {
            engine
        } else {
            let mut root =
                serde_json::to_value(&engine).map_err(|e| format!("config serialization: {e}"))?;
            for assignment in &self.set {
                let (key, raw) = assignment
                    .split_once('=')
                    .ok_or_else(|| format!("override `{assignment}` is not KEY=VALUE"))?;
                let value: Value = serde_json::from_str(raw)
                    .unwrap_or_else(|_| Value::String(raw.to_string()));
                set_dotted(&mut root, key, value)?;
            }
            serde_json::from_value(root).map_err(|e| format!("invalid configuration: {e}"))?
        };
        if let Some(seed) = self.seed {
            engine.seed = seed;
        }
        if self.no_ultrasonic {
            engine.use_ultrasonic = false;
        }
        if self.no_noise {
            engine.depth.noise_enabled = false;
        }
        Ok(engine)
    }
}

/// Replaces the value at a dotted key inside a JSON object tree. The
/// key must already exist: overrides adjust known knobs, never invent
/// new ones.
fn set_dotted(root: &mut Value, key: &str, value: Value) -> Result<(), String> {
    let unknown = || format!("unknown config key `{key}`");
    let mut parts = key.split('.').collect::<Vec<_>>();
    let last = parts.pop().ok_or_else(unknown)?;
    let mut node = root;
    for part in parts {
        node = node
            .as_object_mut()
            .and_then(|o| o.get_mut(part))
            .ok_or_else(unknown)?;
    }
    let slot = node
        .as_object_mut()
        .and_then(|o| o.get_mut(last))
        .ok_or_else(unknown)?;
    *slot = value;
    Ok(())
}

#[derive(Args)]
struct RunArgs {
    /// Scenario JSON file.
    scenario: PathBuf,

    /// Directory for report.json and frames.jsonl; default is the
    /// working directory.
    #[arg(long)]
    out: Option<PathBuf>,

    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct ReplayArgs {
    /// Depth log: one CSV row of millimeter integers per frame, zero
    /// for a missing return.
    #[arg(long, value_name = "CSV")]
    depth: PathBuf,

    /// Ultrasonic log: one distance in meters per line; values past
    /// the working range mean no echo.
    #[arg(long, value_name = "CSV")]
    ultrasonic: PathBuf,

    /// Cue channel to include next to each decision.
    #[arg(long, value_enum, default_value_t = CueKind::Speech)]
    cue: CueKind,

    /// Output JSON-lines path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct SweepHeightArgs {
    /// Camera heights in meters, comma separated, each within
    /// [1.4, 1.8].
    #[arg(long, value_delimiter = ',', default_value = "1.4,1.5,1.6,1.7,1.8")]
    heights: Vec<f64>,

    /// Obstacle distances in meters, comma separated, each within
    /// [1.0, 2.0].
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1.0,1.1,1.2,1.3,1.4,1.5,1.6,1.7,1.8,1.9,2.0"
    )]
    distances: Vec<f64>,

    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct SweepGlassArgs {
    /// Randomized scenes per (material, fusion-mode) cell; at least 1.
    #[arg(long, default_value_t = 200)]
    scenes: u32,

    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    #[command(flatten)]
    overrides: Overrides,
}

/// Cue channel selectable for replay output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CueKind {
    Stereo,
    Speech,
    Beep,
    Visual,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Replay(args) => cmd_replay(args),
        Command::SweepHeight(args) => cmd_sweep_height(args),
        Command::SweepGlass(args) => cmd_sweep_glass(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn cmd_run(args: &RunArgs) -> Result<u8, String> {
    let text = fs::read_to_string(&args.scenario)
        .map_err(|e| format!("{}: {e}", args.scenario.display()))?;
    let mut spec = ScenarioSpec::from_json(&text).map_err(|e| e.to_string())?;
    spec.engine = args.overrides.apply(spec.engine)?;
    let report =
        run_scenario(&spec.scene, &spec.engine, &spec.limits).map_err(|e| e.to_string())?;

    let out_dir = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&out_dir).map_err(|e| format!("{}: {e}", out_dir.display()))?;
    let report_path = out_dir.join("report.json");
    let mut value =
        serde_json::to_value(&report).map_err(|e| format!("report serialization: {e}"))?;
    round_floats(&mut value);
    let pretty =
        serde_json::to_string_pretty(&value).map_err(|e| format!("report serialization: {e}"))?;
    fs::write(&report_path, pretty + "\n").map_err(|e| format!("{}: {e}", report_path.display()))?;

    let frames_path = out_dir.join("frames.jsonl");
    let mut lines = String::new();
    for frame in &report.frames {
        lines.push_str(&json_line(frame)?);
        lines.push('\n');
    }
    fs::write(&frames_path, lines).map_err(|e| format!("{}: {e}", frames_path.display()))?;

    println!(
        "reached_goal={} steps={} collisions={} sim_time_s={} report={}",
        report.reached_goal,
        report.steps,
        report.collisions,
        fmt_sig6(report.sim_time_s),
        report_path.display()
    );
    Ok(if report.reached_goal { 0 } else { 2 })
}

fn cmd_replay(args: &ReplayArgs) -> Result<u8, String> {
    let engine = args.overrides.apply(EngineConfig::default())?;
    let row = engine
        .depth
        .scan_row
        .unwrap_or(engine.intrinsics.height - 1);

    let depth_text =
        fs::read_to_string(&args.depth).map_err(|e| format!("{}: {e}", args.depth.display()))?;
    let lines = depth_text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            DepthScanLine::from_csv_row(l, row).map_err(|e| format!("{}: {e}", args.depth.display()))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let echo_text = fs::read_to_string(&args.ultrasonic)
        .map_err(|e| format!("{}: {e}", args.ultrasonic.display()))?;
    let readings = echo_text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_echo(l, &engine))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("{}: {e}", args.ultrasonic.display()))?;

    if lines.len() != readings.len() {
        return Err(SimError::MisalignedLogs {
            depth_frames: lines.len(),
            ultrasonic_frames: readings.len(),
        }
        .to_string());
    }

    let mut out = String::new();
    for (i, line) in lines.iter().enumerate() {
        let frame = i as u64;
        let reading = if engine.use_ultrasonic {
            readings[i]
        } else {
            UltrasonicReading::MaxRange
        };
        let candidates =
            extract_candidates(line, &engine.wayfinding, &engine.intrinsics).map_err(|e| {
                format!("{} frame {frame}: {e}", args.depth.display())
            })?;
        let selected = select_direction(&candidates, &engine.fusion).map_err(|e| e.to_string())?;
        let decision = fuse_ultrasonic(selected.as_ref(), reading, &engine.fusion);
        let region = infer_region_from_line(line, &engine);
        let cue = match args.cue {
            CueKind::Stereo => CueRecord::stereo(frame, stereo_cue(&decision, &engine.cues).as_ref()),
            CueKind::Speech => CueRecord::speech(frame, &speech_cue(&decision, region)),
            CueKind::Beep => CueRecord::beep(frame, &beep_cue(&decision, &engine.cues)),
            CueKind::Visual => CueRecord::visual(frame, &visual_cue(&decision, &engine.cues)),
        };
        out.push_str(&json_line(&DecisionRecord::new(
            frame,
            &decision,
            reading,
            &engine.ultrasonic,
        ))?);
        out.push('\n');
        out.push_str(&json_line(&cue)?);
        out.push('\n');
    }
    write_or_print(args.out.as_deref(), &out)?;
    Ok(0)
}

/// Parses one recorded ultrasonic line. Distances past the working
/// range stand for "no echo", matching how readings are logged.
fn parse_echo(line: &str, engine: &EngineConfig) -> Result<UltrasonicReading, String> {
    let v: f64 = line
        .trim()
        .parse()
        .map_err(|_| format!("`{}` is not a distance in meters", line.trim()))?;
    if !v.is_finite() || v < 0.0 {
        return Err(format!("`{}` is not a distance in meters", line.trim()));
    }
    if v > engine.ultrasonic.max_range_m {
        Ok(UltrasonicReading::MaxRange)
    } else {
        Ok(UltrasonicReading::Distance(v))
    }
}

fn cmd_sweep_height(args: &SweepHeightArgs) -> Result<u8, String> {
    check_grid_axis("height", &args.heights, 1.4, 1.8)?;
    check_grid_axis("distance", &args.distances, 1.0, 2.0)?;
    let engine = args.overrides.apply(EngineConfig::default())?;
    let grid = sweep_height(&args.heights, &args.distances, &engine, &HeightProbe::default())
        .map_err(|e| e.to_string())?;
    write_or_print(args.out.as_deref(), &grid.to_csv())?;
    Ok(0)
}

/// Checks one sweep axis: nonempty, finite, and inside the range the
/// measurement model is built for.
fn check_grid_axis(name: &str, values: &[f64], lo: f64, hi: f64) -> Result<(), String> {
    if values.is_empty() {
        return Err(format!("at least one {name} is required"));
    }
    for &v in values {
        if !v.is_finite() || v < lo - 1e-9 || v > hi + 1e-9 {
            return Err(format!("{name} {v} is outside [{lo}, {hi}]"));
        }
    }
    Ok(())
}

fn cmd_sweep_glass(args: &SweepGlassArgs) -> Result<u8, String> {
    if args.scenes == 0 {
        return Err("at least one scene per cell is required".to_string());
    }
    let engine = args.overrides.apply(EngineConfig::default())?;
    let cells = sweep_glass(args.scenes, &engine, engine.seed).map_err(|e| e.to_string())?;
    write_or_print(args.out.as_deref(), &glass_csv(&cells))?;
    Ok(0)
}

/// Serializes one record as a compact JSON line with six significant
/// digits on every float.
fn json_line<T: serde::Serialize>(record: &T) -> Result<String, String> {
    let mut value = serde_json::to_value(record).map_err(|e| format!("serialization: {e}"))?;
    round_floats(&mut value);
    serde_json::to_string(&value).map_err(|e| format!("serialization: {e}"))
}

/// Rounds every fractional number in a JSON tree to six significant
/// digits; integers pass through untouched.
fn round_floats(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                if let Some(rounded) = n.as_f64().and_then(|f| serde_json::Number::from_f64(sig6(f)))
                {
                    *n = rounded;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn write_or_print(path: Option<&std::path::Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
