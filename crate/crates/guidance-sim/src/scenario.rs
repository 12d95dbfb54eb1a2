//! Closed-loop scenario runner.
//!
//! One frame of the loop: render the depth scan line at the walker's
//! pose, take an echo reading, extract traversable directions, pick
//! one, gate it with the echo, synthesize all four cues, and step the
//! walker. The run ends at the goal or at a step or time cap, and the
//! report carries a full frame-by-frame log so two runs with the same
//! seed can be compared byte for byte.

use guidance_core::cueing::{
    beep_cue, speech_cue, stereo_cue, visual_cue, CueRecord, CueRegions, ObstacleRegion,
};
use guidance_core::fusion::{
    fuse_ultrasonic, select_direction, DecisionRecord, FusionConfig, GuidanceDecision,
};
use guidance_core::geometry::CameraIntrinsics;
use guidance_core::sensors::{UltrasonicConfig, UltrasonicReading};
use guidance_core::wayfinding::{extract_candidates, DepthScanLine, WayfindingConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::agent::{step_agent, AgentConfig, AgentState};
use crate::error::{Result, SimError};
use crate::raycast::render_depth_scanline;
use crate::scene::{DepthSensorConfig, Pose, Scene};
use crate::ultrasound::{min_wedge_distance, simulate_ultrasonic};

/// Every tunable of the guidance loop in one place.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EngineConfig {
    pub intrinsics: CameraIntrinsics,
    pub depth: DepthSensorConfig,
    pub ultrasonic: UltrasonicConfig,
    pub wayfinding: WayfindingConfig,
    pub fusion: FusionConfig,
    pub cues: CueRegions,
    pub agent: AgentConfig,
    /// When false the echo is ignored and decisions come from depth
    /// alone, as when the forward sensor is unplugged.
    pub use_ultrasonic: bool,
    /// When false the walker ignores guidance and marches straight
    /// ahead; the unguided baseline for collision comparisons.
    pub guided: bool,
    /// Wall-clock duration of one frame, seconds.
    pub frame_period_s: f64,
    /// Seed for the depth-noise stream.
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            intrinsics: CameraIntrinsics::default(),
            depth: DepthSensorConfig::default(),
            ultrasonic: UltrasonicConfig::default(),
            wayfinding: WayfindingConfig::default(),
            fusion: FusionConfig::default(),
            cues: CueRegions::default(),
            agent: AgentConfig::default(),
            use_ultrasonic: true,
            guided: true,
            frame_period_s: 0.0302,
            seed: 0,
        }
    }
}

/// Run caps. A run that hits a cap simply stops; `reached_goal`
/// reports whether the goal was reached first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Largest number of walker steps.
    pub max_steps: u64,
    /// Optional cap on simulated time, seconds.
    pub max_sim_time_s: Option<f64>,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_steps: 2000,
            max_sim_time_s: None,
        }
    }
}

/// A scene plus the engine and caps to run it with; the on-disk
/// scenario format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    #[serde(flatten)]
    pub scene: Scene,
    #[serde(default)]
    pub engine: EngineConfig,
    #[serde(default)]
    pub limits: Limits,
}

impl ScenarioSpec {
    /// Parses and validates a scenario from JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self =
            serde_json::from_str(text).map_err(|e| SimError::MalformedScenario(e.to_string()))?;
        spec.scene.validate()?;
        Ok(spec)
    }
}

/// One frame of the run log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameRecord {
    pub frame: u64,
    /// Walker position when the frame was sensed.
    pub x_m: f64,
    pub y_m: f64,
    pub yaw_deg: f64,
    pub decision: DecisionRecord,
    /// Where the nearest obstruction actually was.
    pub obstacle_region: ObstacleRegion,
    pub cues: Vec<CueRecord>,
    /// Whether acting on this frame's decision hit an obstacle.
    pub collided: bool,
}

/// Outcome of a whole run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub reached_goal: bool,
    /// Walker steps taken.
    pub steps: u64,
    /// Simulated time: steps times the frame period, seconds.
    pub sim_time_s: f64,
    /// Collision episodes: maximal runs of consecutive blocked frames
    /// count once each.
    pub collisions: u64,
    pub frames: Vec<FrameRecord>,
}

/// Where the nearest obstruction within reaction range actually sits,
/// judged with the same wedge geometry the cue field uses: a middle
/// wedge the width of the straight-ahead cone and two side wedges
/// filling the rest of the field. Obstacles low enough to step over
/// are ignored. The front wedge wins ties.
pub fn ground_truth_region(
    scene: &Scene,
    pose: &Pose,
    engine: &EngineConfig,
) -> ObstacleRegion {
    let origin = pose.position;
    let mid_half = engine.cues.mid_half_rad;
    let fov_half = engine.cues.fov_rad / 2.0;
    let side_half = (fov_half - mid_half) / 2.0;
    let side_center = (fov_half + mid_half) / 2.0;
    let min_height = engine.agent.step_over_height_m;
    let wedges = [
        (ObstacleRegion::Front, pose.yaw_rad, mid_half),
        (ObstacleRegion::Left, pose.yaw_rad - side_center, side_half),
        (ObstacleRegion::Right, pose.yaw_rad + side_center, side_half),
    ];
    let mut best: Option<(ObstacleRegion, f64)> = None;
    for (region, center, half) in wedges {
        let Some(d) = min_wedge_distance(&scene.obstacles, origin, center, half, min_height)
        else {
            continue;
        };
        if d <= engine.wayfinding.min_clear_depth_m && best.is_none_or(|(_, b)| d < b) {
            best = Some((region, d));
        }
    }
    best.map_or(ObstacleRegion::NoObstacle, |(r, _)| r)
}

/// Infers the obstruction region from a depth scan line alone, for
/// replaying recorded logs where the true scene is unknown. A column
/// counts as blocked when it has no return or reads within reaction
/// range; the nearest blocked column (no return counts as nearest)
/// names the region through its viewing direction.
pub fn infer_region_from_line(
    line: &DepthScanLine,
    engine: &EngineConfig,
) -> ObstacleRegion {
    let mut nearest: Option<(usize, f64)> = None;
    for col in 0..line.len() {
        let effective = match line.get(col) {
            Some(d) if d <= engine.wayfinding.min_clear_depth_m => d,
            Some(_) => continue,
            None => 0.0,
        };
        if nearest.is_none_or(|(_, b)| effective < b) {
            nearest = Some((col, effective));
        }
    }
    let Some((col, _)) = nearest else {
        return ObstacleRegion::NoObstacle;
    };
    let az = engine.intrinsics.column_azimuth(col as f64);
    if az.abs() <= engine.cues.mid_half_rad {
        ObstacleRegion::Front
    } else if az < 0.0 {
        ObstacleRegion::Left
    } else {
        ObstacleRegion::Right
    }
}

/// Synthesizes the four cue channels for one frame.
pub fn frame_cues(
    frame: u64,
    decision: &GuidanceDecision,
    region: ObstacleRegion,
    cues: &CueRegions,
) -> Vec<CueRecord> {
    vec![
        CueRecord::stereo(frame, stereo_cue(decision, cues).as_ref()),
        CueRecord::speech(frame, &speech_cue(decision, region)),
        CueRecord::beep(frame, &beep_cue(decision, cues)),
        CueRecord::visual(frame, &visual_cue(decision, cues)),
    ]
}

/// Runs one scenario to the goal or a cap and returns the full log.
///
/// The run is deterministic: the same scene, engine, and caps produce
/// a byte-identical report.
pub fn run_scenario(scene: &Scene, engine: &EngineConfig, limits: &Limits) -> Result<ScenarioReport> {
    scene.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(engine.seed);
    let mut agent = AgentState::new(scene.start, &engine.agent);
    let mut frames: Vec<FrameRecord> = Vec::new();
    let mut collisions: u64 = 0;
    let mut reached_goal = false;

    loop {
        if agent.reached(scene.goal, &engine.agent) {
            reached_goal = true;
            break;
        }
        if agent.steps >= limits.max_steps {
            break;
        }
        if let Some(cap) = limits.max_sim_time_s {
            if agent.steps as f64 * engine.frame_period_s >= cap {
                break;
            }
        }

        let frame = agent.steps;
        let line =
            render_depth_scanline(scene, &agent.pose, &engine.intrinsics, &engine.depth, &mut rng)?;
        let reading = if engine.use_ultrasonic {
            simulate_ultrasonic(scene, &agent.pose, &engine.ultrasonic)
        } else {
            UltrasonicReading::MaxRange
        };
        let candidates = extract_candidates(&line, &engine.wayfinding, &engine.intrinsics)?;
        let selected = select_direction(&candidates, &engine.fusion)?;
        let decision = if engine.guided {
            fuse_ultrasonic(selected.as_ref(), reading, &engine.fusion)
        } else {
            GuidanceDecision {
                angle_rad: Some(0.0),
                width_m: None,
                gated_by_ultrasonic: false,
            }
        };
        let region = ground_truth_region(scene, &agent.pose, engine);
        let cues = frame_cues(frame, &decision, region, &engine.cues);

        let next = step_agent(&agent, &decision, scene, &engine.agent);
        if next.collided && !agent.collided {
            collisions += 1;
        }
        frames.push(FrameRecord {
            frame,
            x_m: agent.pose.position.x,
            y_m: agent.pose.position.y,
            yaw_deg: agent.pose.yaw_rad.to_degrees(),
            decision: DecisionRecord::new(frame, &decision, reading, &engine.ultrasonic),
            obstacle_region: region,
            cues,
            collided: next.collided,
        });
        agent = next;
    }

    Ok(ScenarioReport {
        reached_goal,
        steps: agent.steps,
        sim_time_s: agent.steps as f64 * engine.frame_period_s,
        collisions,
        frames,
    })
}
