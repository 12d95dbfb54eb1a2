//! Ultrasonic ranging model.
//!
//! The ranger reports half the round-trip distance of an echo,
//! `d = v * t / 2` at 340 m/s. An echo that never arrives within the
//! listening window means nothing reflected inside the working range;
//! that case is kept as a distinct [`UltrasonicReading::MaxRange`]
//! value rather than a fake distance, because "no obstacle" and
//! "obstacle at 4.25 m" gate the fusion differently.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ranger characteristics. Defaults model a narrow-beam transducer
/// carried on the glasses frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct UltrasonicConfig {
    /// Speed of sound used for the round-trip conversion, m/s.
    pub speed_of_sound_m_s: f64,
    /// Shortest distance the transducer resolves, meters.
    pub min_range_m: f64,
    /// Longest distance the transducer resolves, meters.
    pub max_range_m: f64,
    /// Half-angle of the sensing cone.
    #[serde(rename = "half_fov_deg", with = "crate::units::degrees")]
    pub half_fov_rad: f64,
    /// Echo wait before the measurement is abandoned, seconds.
    pub echo_timeout_s: f64,
}

impl Default for UltrasonicConfig {
    fn default() -> Self {
        Self {
            speed_of_sound_m_s: 340.0,
            min_range_m: 0.03,
            max_range_m: 4.25,
            half_fov_rad: 7.5_f64.to_radians(),
            echo_timeout_s: 0.030,
        }
    }
}

/// One ranger measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UltrasonicReading {
    /// Echo distance in meters, clamped into the working range.
    Distance(f64),
    /// No echo inside the working range.
    MaxRange,
}

impl UltrasonicReading {
    /// True when the reading does not contradict a clear path of
    /// `threshold_m` meters. A missing echo clears any threshold.
    pub fn clears(&self, threshold_m: f64) -> bool {
        match self {
            Self::Distance(d) => *d > threshold_m,
            Self::MaxRange => true,
        }
    }

    /// Log representation: `MaxRange` serializes as one meter past the
    /// working range so that plain floats stay sortable while staying
    /// distinguishable from any real reading.
    pub fn serialized_m(&self, cfg: &UltrasonicConfig) -> f64 {
        match self {
            Self::Distance(d) => *d,
            Self::MaxRange => cfg.max_range_m + 1.0,
        }
    }
}

/// Converts a round-trip time of flight to a one-way distance.
pub fn tof_to_distance(tof_s: f64, cfg: &UltrasonicConfig) -> Result<f64> {
    if !(tof_s.is_finite() && tof_s >= 0.0) {
        return Err(Error::InvalidTimeOfFlight(tof_s));
    }
    Ok(cfg.speed_of_sound_m_s * tof_s / 2.0)
}

/// Interprets a raw echo. `None` or anything at or past the timeout is
/// a miss; distances past `max_range_m` are misses as well; distances
/// under `min_range_m` clamp up to it, because an object pressed
/// against the transducer must still read as "very close", never as
/// "nothing there".
pub fn echo_to_reading(echo_s: Option<f64>, cfg: &UltrasonicConfig) -> UltrasonicReading {
    let Some(t) = echo_s else {
        return UltrasonicReading::MaxRange;
    };
    if !t.is_finite() || t >= cfg.echo_timeout_s {
        return UltrasonicReading::MaxRange;
    }
    let d = cfg.speed_of_sound_m_s * t.max(0.0) / 2.0;
    if d > cfg.max_range_m {
        UltrasonicReading::MaxRange
    } else {
        UltrasonicReading::Distance(d.max(cfg.min_range_m))
    }
}
