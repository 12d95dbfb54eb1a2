//! Closed-loop walker that obeys guidance decisions.
//!
//! The agent is a body disc on the floor. A forward decision advances
//! it one step along its yaw; a turn decision rotates it toward the
//! commanded direction at a capped rate without moving; a stop makes
//! it scan in place, sweeping one way through the whole episode and
//! the other way on the next one. A forward step that would press the
//! disc into an obstacle is blocked and flagged as a collision.

use guidance_core::fusion::GuidanceDecision;
use guidance_core::units;
use serde::{Deserialize, Serialize};

use crate::scene::{heading, wrap_angle, Pose, Scene, Vec2};

/// Walker tuning.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AgentConfig {
    /// Distance covered by one forward step, meters.
    pub step_len_m: f64,
    /// Largest yaw change a turn decision applies per step, radians.
    #[serde(rename = "turn_rate_deg", with = "units::degrees")]
    pub turn_rate_rad: f64,
    /// Yaw change per step while scanning after a stop, radians.
    #[serde(rename = "scan_rate_deg", with = "units::degrees")]
    pub scan_rate_rad: f64,
    /// Obstacles no taller than this are stepped over, not hit.
    pub step_over_height_m: f64,
    /// Decisions within this angle of straight ahead walk forward;
    /// larger ones turn in place first.
    #[serde(rename = "forward_half_deg", with = "units::degrees")]
    pub forward_half_rad: f64,
    /// A run succeeds when the agent is this close to the goal.
    pub goal_radius_m: f64,
    /// Body disc radius, meters.
    pub body_radius_m: f64,
}

impl Default for AgentConfig {
    fn default() -> Self {
        Self {
            step_len_m: 0.1,
            turn_rate_rad: 10f64.to_radians(),
            scan_rate_rad: 15f64.to_radians(),
            step_over_height_m: 0.02,
            forward_half_rad: 7.5f64.to_radians(),
            goal_radius_m: 0.4,
            body_radius_m: 0.3,
        }
    }
}

/// Walker state between steps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentState {
    pub pose: Pose,
    /// Body disc radius, meters.
    pub radius: f64,
    /// Whether the last step pressed into an obstacle.
    pub collided: bool,
    /// Steps taken so far.
    pub steps: u64,
    /// Whether the agent is mid-scan after a stop decision.
    pub scanning: bool,
    /// Scan sweep direction, `+1` right or `-1` left; alternates
    /// between scan episodes so the agent never favors one side.
    pub scan_dir: f64,
}

impl AgentState {
    pub fn new(pose: Pose, cfg: &AgentConfig) -> Self {
        Self {
            pose,
            radius: cfg.body_radius_m,
            collided: false,
            steps: 0,
            scanning: false,
            scan_dir: 1.0,
        }
    }

    pub fn reached(&self, goal: Vec2, cfg: &AgentConfig) -> bool {
        self.pose.position.distance_to(goal) <= cfg.goal_radius_m
    }
}

/// Whether a body disc at `center` presses into any obstacle tall
/// enough to matter.
fn disc_hits_obstacle(scene: &Scene, center: Vec2, radius: f64, step_over: f64) -> bool {
    scene.obstacles.iter().any(|ob| {
        ob.height > step_over && ob.footprint.closest_point(center).distance_to(center) < radius
    })
}

/// Whether a body disc at `center` fits inside the walkable bounds.
fn disc_inside_bounds(scene: &Scene, center: Vec2, radius: f64) -> bool {
    center.x - radius >= scene.bounds.min.x
        && center.x + radius <= scene.bounds.max.x
        && center.y - radius >= scene.bounds.min.y
        && center.y + radius <= scene.bounds.max.y
}

/// Advances the walker by one decision.
///
/// A blocked forward step leaves the position unchanged and raises
/// `collided`; a step that would leave the bounds is blocked silently.
pub fn step_agent(
    state: &AgentState,
    decision: &GuidanceDecision,
    scene: &Scene,
    cfg: &AgentConfig,
) -> AgentState {
    let mut next = *state;
    next.steps += 1;
    next.collided = false;

    let Some(angle) = decision.angle_rad else {
        next.scanning = true;
        next.pose.yaw_rad = wrap_angle(state.pose.yaw_rad + state.scan_dir * cfg.scan_rate_rad);
        return next;
    };
    if state.scanning {
        // The scan found a way out; sweep the other way next time.
        next.scanning = false;
        next.scan_dir = -state.scan_dir;
    }

    if angle.abs() <= cfg.forward_half_rad {
        let dir = heading(state.pose.yaw_rad);
        let target = Vec2::new(
            state.pose.position.x + cfg.step_len_m * dir.x,
            state.pose.position.y + cfg.step_len_m * dir.y,
        );
        if disc_hits_obstacle(scene, target, state.radius, cfg.step_over_height_m) {
            next.collided = true;
        } else if disc_inside_bounds(scene, target, state.radius) {
            next.pose.position = target;
        }
    } else {
        let turn = angle.clamp(-cfg.turn_rate_rad, cfg.turn_rate_rad);
        next.pose.yaw_rad = wrap_angle(state.pose.yaw_rad + turn);
    }
    next
}
