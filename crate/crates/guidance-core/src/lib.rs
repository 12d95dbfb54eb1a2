//! Guidance engine for a wearable obstacle-avoidance aid.
//!
//! The engine turns one depth scan line and one ultrasonic echo into a
//! walking decision and a set of user cues:
//!
//! 1. [`geometry`] maps between pixels, camera-frame points, and steering
//!    angles for a pinhole depth sensor.
//! 2. [`wayfinding`] slides a depth-adaptive window across the scan line
//!    and extracts traversable corridor candidates.
//! 3. [`fusion`] scores the candidates, picks a direction, and lets an
//!    ultrasonic range gate veto straight-ahead motion so that material
//!    invisible to the depth sensor (plain glass) still stops the user.
//! 4. [`cueing`] renders the decision as stereo panning, a spoken
//!    instruction, a frequency-coded beep, or a debug marker.
//!
//! Angles are radians and distances are meters everywhere inside the
//! crate; degrees appear only in serialized records and spoken text.
//! Positive steering angles point to the wearer's right.

pub mod cueing;
pub mod error;
pub mod fusion;
pub mod geometry;
pub mod oracle;
pub mod sensors;
pub mod units;
pub mod wayfinding;

pub use error::{Error, Result};
