//! Direction selection and ultrasonic gating.
//!
//! Depth proposes, the echo disposes: way-finding candidates come from
//! the depth line alone, the cheapest one by a steering-versus-width
//! cost is selected, and an ultrasonic range gate then vetoes
//! straight-ahead motion when the echo distance contradicts the depth
//! picture. The veto only applies inside the ranger's cone; a candidate
//! pointing outside the cone is out of the ranger's sight and passes
//! on depth evidence alone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sensors::{UltrasonicConfig, UltrasonicReading};
use crate::wayfinding::Candidate;

/// Selection and gating parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FusionConfig {
    /// Cost per radian of steering correction.
    #[serde(rename = "lambda")]
    pub angle_weight: f64,
    /// Cost per inverse meter of corridor width.
    #[serde(rename = "mu")]
    pub width_weight: f64,
    /// Half-angle of the ultrasonic cone; straight-ahead means within
    /// this of the heading.
    #[serde(rename = "cone_half_deg", with = "crate::units::degrees")]
    pub cone_half_rad: f64,
    /// Clearance the echo must exceed for straight-ahead motion,
    /// meters. Matches the way-finding clearance threshold.
    #[serde(rename = "delta")]
    pub min_clear_depth_m: f64,
}

impl Default for FusionConfig {
    fn default() -> Self {
        Self {
            angle_weight: 1.0,
            width_weight: 0.5,
            cone_half_rad: 7.5_f64.to_radians(),
            min_clear_depth_m: 1.5,
        }
    }
}

impl FusionConfig {
    /// Candidate cost: small steering corrections and wide corridors
    /// win. `cost = lambda * |angle| + mu / width`.
    pub fn cost(&self, c: &Candidate) -> f64 {
        self.angle_weight * c.angle_rad.abs() + self.width_weight / c.width_m
    }
}

/// Outcome of one guidance frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GuidanceDecision {
    /// Steering angle to follow, radians, positive right. `None` means
    /// stop and scan: no safe direction exists this frame.
    pub angle_rad: Option<f64>,
    /// Width of the chosen corridor, meters. `None` when stopped.
    pub width_m: Option<f64>,
    /// True when depth alone proposed a direction and the echo vetoed
    /// it. Distinguishes "nothing traversable" from "glass ahead".
    pub gated_by_ultrasonic: bool,
}

impl GuidanceDecision {
    pub fn stop(gated_by_ultrasonic: bool) -> Self {
        Self {
            angle_rad: None,
            width_m: None,
            gated_by_ultrasonic,
        }
    }

    pub fn go(candidate: &Candidate) -> Self {
        Self {
            angle_rad: Some(candidate.angle_rad),
            width_m: Some(candidate.width_m),
            gated_by_ultrasonic: false,
        }
    }

    pub fn is_stop(&self) -> bool {
        self.angle_rad.is_none()
    }
}

/// Picks the cheapest candidate, or `None` when nothing is
/// traversable. Exact cost ties break toward the smaller steering
/// correction, then toward the leftmost run, so selection is a total
/// deterministic order.
pub fn select_direction(
    candidates: &[Candidate],
    cfg: &FusionConfig,
) -> Result<Option<Candidate>> {
    for c in candidates {
        if !(c.width_m.is_finite() && c.width_m > 0.0) {
            return Err(Error::NonPositiveCandidateWidth(c.width_m));
        }
    }
    Ok(candidates
        .iter()
        .min_by(|a, b| {
            cfg.cost(a)
                .total_cmp(&cfg.cost(b))
                .then(a.angle_rad.abs().total_cmp(&b.angle_rad.abs()))
                .then(a.col_start.cmp(&b.col_start))
        })
        .copied())
}

/// Applies the ultrasonic gate to the selected direction.
///
/// A stop stays a stop. A direction outside the cone passes untouched.
/// A direction inside the cone passes only when the echo clears the
/// clearance threshold; otherwise the frame degrades to a gated stop.
pub fn fuse_ultrasonic(
    selected: Option<&Candidate>,
    reading: UltrasonicReading,
    cfg: &FusionConfig,
) -> GuidanceDecision {
    let Some(c) = selected else {
        return GuidanceDecision::stop(false);
    };
    let straight_ahead = c.angle_rad.abs() <= cfg.cone_half_rad;
    if straight_ahead && !reading.clears(cfg.min_clear_depth_m) {
        GuidanceDecision::stop(true)
    } else {
        GuidanceDecision::go(c)
    }
}

/// One line of the frame-by-frame decision log.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecisionRecord {
    pub frame: u64,
    /// Steering angle in degrees, `null` for a stop.
    pub alpha_deg: Option<f64>,
    pub width_m: Option<f64>,
    pub gated_by_ultrasonic: bool,
    /// Echo distance in meters; a miss logs as `max_range + 1`.
    pub ultrasonic_m: f64,
}

impl DecisionRecord {
    pub fn new(
        frame: u64,
        decision: &GuidanceDecision,
        reading: UltrasonicReading,
        ucfg: &UltrasonicConfig,
    ) -> Self {
        Self {
            frame,
            alpha_deg: decision.angle_rad.map(f64::to_degrees),
            width_m: decision.width_m,
            gated_by_ultrasonic: decision.gated_by_ultrasonic,
            ultrasonic_m: reading.serialized_m(ucfg),
        }
    }
}
