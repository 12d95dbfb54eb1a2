//! Cue synthesis.
//!
//! A guidance decision reaches the wearer through one of four channels:
//! a stereo tone panned toward the walking direction, a spoken
//! instruction, a frequency-coded beep, and an on-screen marker for
//! sighted debugging. The horizontal field splits into a 15 degree
//! middle region and two equal side regions of a 60 degree field of
//! view; "go straight" means the decision falls inside the middle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::GuidanceDecision;

/// Lowest beep frequency, at the middle-region edge.
pub const BEEP_MIN_HZ: f64 = 400.0;
/// Highest beep frequency, at the edge of the field of view.
pub const BEEP_MAX_HZ: f64 = 1200.0;

/// Angular layout of the cue field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CueRegions {
    /// Full field of view of the cue mapping.
    #[serde(rename = "fov_deg", with = "crate::units::degrees")]
    pub fov_rad: f64,
    /// Half-width of the middle ("go straight") region.
    #[serde(rename = "mid_half_deg", with = "crate::units::degrees")]
    pub mid_half_rad: f64,
}

impl Default for CueRegions {
    fn default() -> Self {
        Self {
            fov_rad: 60.0_f64.to_radians(),
            mid_half_rad: 7.5_f64.to_radians(),
        }
    }
}

/// Region of the cue field an angle falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Left,
    Middle,
    Right,
}

/// Classifies an angle into left, middle, or right. Both region
/// boundaries are inclusive toward the middle, and the field edges are
/// inclusive too; anything beyond them is out of the cue field.
pub fn classify_region(angle_rad: f64, regions: &CueRegions) -> Result<Region> {
    let half_fov = regions.fov_rad / 2.0;
    if !angle_rad.is_finite() || angle_rad.abs() > half_fov {
        return Err(Error::AngleOutsideFov {
            angle_rad,
            fov_rad: regions.fov_rad,
        });
    }
    Ok(if angle_rad.abs() <= regions.mid_half_rad {
        Region::Middle
    } else if angle_rad < 0.0 {
        Region::Left
    } else {
        Region::Right
    })
}

/// Clamps a steering angle into the cue field. The depth sensor sees
/// slightly wider than the 60 degree cue field, so a decision can
/// overshoot the field edge by a degree or two; cues saturate there.
fn clamp_to_field(angle_rad: f64, regions: &CueRegions) -> f64 {
    let half_fov = regions.fov_rad / 2.0;
    angle_rad.clamp(-half_fov, half_fov)
}

// ---------------------------------------------------------------------------
// Stereo tone

/// Constant-power stereo panning of the walking direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StereoToneCue {
    /// Direction being rendered, radians, positive right.
    pub angle_rad: f64,
    pub gain_left: f64,
    pub gain_right: f64,
}

/// Pans the decision across the stereo field: the field maps linearly
/// onto a quarter turn, and the gains are `cos` and `sin` of it, so
/// `gain_left^2 + gain_right^2 = 1` at every angle. A stop renders as
/// silence (`None`).
pub fn stereo_cue(decision: &GuidanceDecision, regions: &CueRegions) -> Option<StereoToneCue> {
    let angle = decision.angle_rad?;
    let clamped = clamp_to_field(angle, regions);
    let theta = (clamped + regions.fov_rad / 2.0) / regions.fov_rad
        * std::f64::consts::FRAC_PI_2;
    Some(StereoToneCue {
        angle_rad: angle,
        gain_left: theta.cos(),
        gain_right: theta.sin(),
    })
}

// ---------------------------------------------------------------------------
// Speech

/// Where the nearest obstruction sits relative to the wearer, as
/// supplied by the caller (the simulator knows it exactly; replay
/// infers it from the blocked part of the scan line).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstacleRegion {
    Left,
    Front,
    Right,
    #[serde(rename = "none")]
    NoObstacle,
}

/// A spoken instruction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeechInstruction {
    /// Exact sentence to speak.
    pub text: String,
    /// Turn magnitude in whole degrees when the sentence names one.
    pub turn_deg: Option<u32>,
}

impl SpeechInstruction {
    fn plain(text: &str) -> Self {
        Self {
            text: text.to_string(),
            turn_deg: None,
        }
    }

    fn turn(prefix: &str, side: &str, deg: u32) -> Self {
        Self {
            text: format!("{prefix}, turn {side} {deg} degrees"),
            turn_deg: Some(deg),
        }
    }
}

/// Renders the decision as one of the recorded instruction templates.
///
/// The pairing of obstacle region and decision selects the sentence;
/// any pairing the table does not cover (for example an obstacle-free
/// frame that still stopped) falls back to the cautious "turn left or
/// right slowly" row. The turn magnitude is the steering angle rounded
/// to whole degrees.
pub fn speech_cue(decision: &GuidanceDecision, obstacle: ObstacleRegion) -> SpeechInstruction {
    const FRONT: &str = "Attention, obstacle in front of you";
    const LEFT: &str = "Attention, obstacle in left of you";
    const RIGHT: &str = "Attention, obstacle in right of you";
    const FALLBACK: &str = "Attention, obstacle in front of you, turn left or right slowly";

    let regions = CueRegions::default();
    let Some(angle) = decision.angle_rad else {
        // Stop: no feasible direction. The cautious row covers every
        // obstacle placement, consistent or not.
        return SpeechInstruction::plain(FALLBACK);
    };
    let region = classify_region(clamp_to_field(angle, &regions), &regions)
        .expect("clamped angle is inside the field");
    let deg = angle.abs().to_degrees().round() as u32;
    match (obstacle, region) {
        (ObstacleRegion::NoObstacle, Region::Middle) => SpeechInstruction::plain("Go straight"),
        (ObstacleRegion::Left, Region::Middle) => {
            SpeechInstruction::plain("Attention, obstacle in left of you, go straight")
        }
        (ObstacleRegion::Right, Region::Middle) => {
            SpeechInstruction::plain("Attention, obstacle in right of you, go straight")
        }
        (ObstacleRegion::Front, Region::Left) => SpeechInstruction::turn(FRONT, "left", deg),
        (ObstacleRegion::Front, Region::Right) => SpeechInstruction::turn(FRONT, "right", deg),
        (ObstacleRegion::Left, Region::Right) => SpeechInstruction::turn(LEFT, "right", deg),
        (ObstacleRegion::Right, Region::Left) => SpeechInstruction::turn(RIGHT, "left", deg),
        // Inconsistent pairings: obstacle ahead yet steering straight,
        // or a turn toward the side the obstacle is on, or a turn with
        // nothing blocked. Stay cautious.
        (ObstacleRegion::Front, Region::Middle)
        | (ObstacleRegion::Left, Region::Left)
        | (ObstacleRegion::Right, Region::Right)
        | (ObstacleRegion::NoObstacle, Region::Left)
        | (ObstacleRegion::NoObstacle, Region::Right) => SpeechInstruction::plain(FALLBACK),
    }
}

// ---------------------------------------------------------------------------
// Beep

/// Which earpiece carries the beep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BeepChannel {
    Left,
    Right,
    /// Go straight: no beep at all.
    Silent,
    /// Stop and scan: the tone bounces between both ears.
    Alternating,
}

/// A frequency-coded beep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeepCue {
    pub channel: BeepChannel,
    /// Tone frequency in Hz; zero when silent.
    pub frequency_hz: f64,
}

/// Renders the decision as a beep. The side holding the turn carries
/// the tone, and the frequency grows linearly with the turn magnitude
/// from [`BEEP_MIN_HZ`] at the middle-region edge to [`BEEP_MAX_HZ`]
/// at the field edge. A middle decision is silent; a stop alternates
/// ears at the top frequency so it cannot be mistaken for guidance.
pub fn beep_cue(decision: &GuidanceDecision, regions: &CueRegions) -> BeepCue {
    let Some(angle) = decision.angle_rad else {
        return BeepCue {
            channel: BeepChannel::Alternating,
            frequency_hz: BEEP_MAX_HZ,
        };
    };
    if angle.abs() <= regions.mid_half_rad {
        return BeepCue {
            channel: BeepChannel::Silent,
            frequency_hz: 0.0,
        };
    }
    let half_fov = regions.fov_rad / 2.0;
    let frequency_hz = BEEP_MIN_HZ
        + (BEEP_MAX_HZ - BEEP_MIN_HZ) * (angle.abs() - regions.mid_half_rad)
            / (half_fov - regions.mid_half_rad);
    BeepCue {
        channel: if angle < 0.0 {
            BeepChannel::Left
        } else {
            BeepChannel::Right
        },
        frequency_hz,
    }
}

// ---------------------------------------------------------------------------
// Visual marker

/// Debug rendering state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VisualState {
    Forward,
    TurnLeft,
    TurnRight,
    Stop,
}

/// On-screen marker for sighted debugging.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VisualCue {
    pub state: VisualState,
    /// Marker direction, radians; absent for a stop.
    #[serde(with = "crate::units::degrees_opt", rename = "marker_azimuth_deg")]
    pub marker_azimuth_rad: Option<f64>,
}

/// Renders the decision as the debug marker. Forward if the decision
/// falls in the middle region, stop if there is none.
pub fn visual_cue(decision: &GuidanceDecision, regions: &CueRegions) -> VisualCue {
    let Some(angle) = decision.angle_rad else {
        return VisualCue {
            state: VisualState::Stop,
            marker_azimuth_rad: None,
        };
    };
    let state = if angle.abs() <= regions.mid_half_rad {
        VisualState::Forward
    } else if angle < 0.0 {
        VisualState::TurnLeft
    } else {
        VisualState::TurnRight
    };
    VisualCue {
        state,
        marker_azimuth_rad: Some(angle),
    }
}

// ---------------------------------------------------------------------------
// Frame log records

/// One line of the frame-by-frame cue log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "cue", rename_all = "snake_case")]
pub enum CueRecord {
    Stereo {
        frame: u64,
        #[serde(rename = "angle_deg", with = "crate::units::degrees_opt")]
        angle_rad: Option<f64>,
        gain_left: f64,
        gain_right: f64,
    },
    Speech {
        frame: u64,
        text: String,
        turn_deg: Option<u32>,
    },
    Beep {
        frame: u64,
        channel: BeepChannel,
        frequency_hz: f64,
    },
    Visual {
        frame: u64,
        state: VisualState,
        #[serde(rename = "marker_azimuth_deg", with = "crate::units::degrees_opt")]
        marker_azimuth_rad: Option<f64>,
    },
}

impl CueRecord {
    pub fn stereo(frame: u64, cue: Option<&StereoToneCue>) -> Self {
        match cue {
            Some(c) => Self::Stereo {
                frame,
                angle_rad: Some(c.angle_rad),
                gain_left: c.gain_left,
                gain_right: c.gain_right,
            },
            None => Self::Stereo {
                frame,
                angle_rad: None,
                gain_left: 0.0,
                gain_right: 0.0,
            },
        }
    }

    pub fn speech(frame: u64, cue: &SpeechInstruction) -> Self {
        Self::Speech {
            frame,
            text: cue.text.clone(),
            turn_deg: cue.turn_deg,
        }
    }

    pub fn beep(frame: u64, cue: &BeepCue) -> Self {
        Self::Beep {
            frame,
            channel: cue.channel,
            frequency_hz: cue.frequency_hz,
        }
    }

    pub fn visual(frame: u64, cue: &VisualCue) -> Self {
        Self::Visual {
            frame,
            state: cue.state,
            marker_azimuth_rad: cue.marker_azimuth_rad,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn regions() -> CueRegions {
        CueRegions::default()
    }

    fn go(deg: f64) -> GuidanceDecision {
        GuidanceDecision {
            angle_rad: Some(deg.to_radians()),
            width_m: Some(1.0),
            gated_by_ultrasonic: false,
        }
    }

    fn stop() -> GuidanceDecision {
        GuidanceDecision::stop(false)
    }

    #[test]
    fn region_boundaries() {
        let r = regions();
        assert_eq!(classify_region(0.0, &r).unwrap(), Region::Middle);
        assert_eq!(
            classify_region(7.5_f64.to_radians(), &r).unwrap(),
            Region::Middle
        );
        assert_eq!(
            classify_region(-7.5_f64.to_radians(), &r).unwrap(),
            Region::Middle
        );
        assert_eq!(
            classify_region(-7.6_f64.to_radians(), &r).unwrap(),
            Region::Left
        );
        assert_eq!(
            classify_region(30.0_f64.to_radians(), &r).unwrap(),
            Region::Right
        );
        assert!(classify_region(30.1_f64.to_radians(), &r).is_err());
        assert!(classify_region(f64::NAN, &r).is_err());
    }

    #[test]
    fn stereo_pan_is_constant_power() {
        let r = regions();
        let centered = stereo_cue(&go(0.0), &r).unwrap();
        let equal_power = std::f64::consts::FRAC_1_SQRT_2;
        assert_relative_eq!(centered.gain_left, equal_power, epsilon = 1e-12);
        assert_relative_eq!(centered.gain_right, equal_power, epsilon = 1e-12);

        let hard_right = stereo_cue(&go(30.0), &r).unwrap();
        assert_relative_eq!(hard_right.gain_left, 0.0, epsilon = 1e-12);
        assert_relative_eq!(hard_right.gain_right, 1.0, epsilon = 1e-12);

        let hard_left = stereo_cue(&go(-30.0), &r).unwrap();
        assert_relative_eq!(hard_left.gain_left, 1.0, epsilon = 1e-12);
        assert_relative_eq!(hard_left.gain_right, 0.0, epsilon = 1e-12);

        for deg in -30..=30 {
            let c = stereo_cue(&go(f64::from(deg)), &r).unwrap();
            assert_relative_eq!(
                c.gain_left * c.gain_left + c.gain_right * c.gain_right,
                1.0,
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn stereo_stop_is_silent() {
        assert_eq!(stereo_cue(&stop(), &regions()), None);
    }

    #[test]
    fn stereo_clamps_past_the_field_edge() {
        // The sensor can steer ~31.4 degrees; gains must stay in [0, 1].
        let c = stereo_cue(&go(31.4), &regions()).unwrap();
        assert_relative_eq!(c.gain_right, 1.0, epsilon = 1e-12);
        assert_relative_eq!(c.gain_left, 0.0, epsilon = 1e-12);
        assert_relative_eq!(c.angle_rad.to_degrees(), 31.4, epsilon = 1e-9);
    }

    #[test]
    fn speech_templates() {
        let s = speech_cue(&stop(), ObstacleRegion::Front);
        assert_eq!(
            s.text,
            "Attention, obstacle in front of you, turn left or right slowly"
        );
        assert_eq!(s.turn_deg, None);

        let s = speech_cue(&go(-20.0), ObstacleRegion::Front);
        assert_eq!(
            s.text,
            "Attention, obstacle in front of you, turn left 20 degrees"
        );
        assert_eq!(s.turn_deg, Some(20));

        let s = speech_cue(&go(12.6), ObstacleRegion::Front);
        assert_eq!(
            s.text,
            "Attention, obstacle in front of you, turn right 13 degrees"
        );

        let s = speech_cue(&go(0.0), ObstacleRegion::Left);
        assert_eq!(s.text, "Attention, obstacle in left of you, go straight");
        let s = speech_cue(&go(0.0), ObstacleRegion::Right);
        assert_eq!(s.text, "Attention, obstacle in right of you, go straight");

        let s = speech_cue(&go(15.0), ObstacleRegion::Left);
        assert_eq!(
            s.text,
            "Attention, obstacle in left of you, turn right 15 degrees"
        );
        let s = speech_cue(&go(-15.0), ObstacleRegion::Right);
        assert_eq!(
            s.text,
            "Attention, obstacle in right of you, turn left 15 degrees"
        );

        let s = speech_cue(&go(0.0), ObstacleRegion::NoObstacle);
        assert_eq!(s.text, "Go straight");
    }

    #[test]
    fn speech_inconsistent_pairs_fall_back() {
        let fallback = "Attention, obstacle in front of you, turn left or right slowly";
        assert_eq!(speech_cue(&stop(), ObstacleRegion::NoObstacle).text, fallback);
        assert_eq!(speech_cue(&go(0.0), ObstacleRegion::Front).text, fallback);
        assert_eq!(speech_cue(&go(-15.0), ObstacleRegion::Left).text, fallback);
        assert_eq!(speech_cue(&go(15.0), ObstacleRegion::Right).text, fallback);
        assert_eq!(
            speech_cue(&go(15.0), ObstacleRegion::NoObstacle).text,
            fallback
        );
    }

    #[test]
    fn beep_frequency_grows_with_turn_magnitude() {
        let r = regions();
        let b = beep_cue(&go(-30.0), &r);
        assert_eq!(b.channel, BeepChannel::Left);
        assert_relative_eq!(b.frequency_hz, 1200.0);

        let b = beep_cue(&go(30.0), &r);
        assert_eq!(b.channel, BeepChannel::Right);
        assert_relative_eq!(b.frequency_hz, 1200.0);

        // Just past the middle edge the tone starts at the bottom.
        let b = beep_cue(&go(7.5000001), &r);
        assert_eq!(b.channel, BeepChannel::Right);
        assert_relative_eq!(b.frequency_hz, 400.0, epsilon = 1e-3);

        // Halfway across a side region.
        let b = beep_cue(&go(18.75), &r);
        assert_relative_eq!(b.frequency_hz, 800.0, epsilon = 1e-9);

        let mut last = 0.0;
        for tenth in 76..=300 {
            let b = beep_cue(&go(f64::from(tenth) / 10.0), &r);
            assert!(b.frequency_hz > last, "monotone at {tenth}");
            last = b.frequency_hz;
        }
    }

    #[test]
    fn beep_middle_is_silent_and_stop_alternates() {
        let r = regions();
        let b = beep_cue(&go(0.0), &r);
        assert_eq!(b.channel, BeepChannel::Silent);
        assert_relative_eq!(b.frequency_hz, 0.0);
        let b = beep_cue(&go(7.5), &r);
        assert_eq!(b.channel, BeepChannel::Silent);

        let b = beep_cue(&stop(), &r);
        assert_eq!(b.channel, BeepChannel::Alternating);
        assert_relative_eq!(b.frequency_hz, 1200.0);
    }

    #[test]
    fn visual_states() {
        let r = regions();
        let v = visual_cue(&go(0.0), &r);
        assert_eq!(v.state, VisualState::Forward);
        assert_relative_eq!(v.marker_azimuth_rad.unwrap(), 0.0);

        let v = visual_cue(&go(7.5), &r);
        assert_eq!(v.state, VisualState::Forward);

        let v = visual_cue(&go(-10.0), &r);
        assert_eq!(v.state, VisualState::TurnLeft);

        let v = visual_cue(&go(10.0), &r);
        assert_eq!(v.state, VisualState::TurnRight);

        let v = visual_cue(&stop(), &r);
        assert_eq!(v.state, VisualState::Stop);
        assert_eq!(v.marker_azimuth_rad, None);
    }

    #[test]
    fn cue_records_serialize_tagged() {
        let r = regions();
        let rec = CueRecord::beep(3, &beep_cue(&go(20.0), &r));
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"cue\":\"beep\""));
        assert!(json.contains("\"channel\":\"right\""));

        let rec = CueRecord::visual(4, &visual_cue(&stop(), &r));
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"state\":\"stop\""));
        assert!(json.contains("\"marker_azimuth_deg\":null"));
    }
}
