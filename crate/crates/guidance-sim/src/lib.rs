//! Desk-scale scene simulator for the guidance engine.
//!
//! The world is 2.5D: axis-aligned rectangular footprints extruded to a
//! height, standing on an infinite flat floor. That is enough to
//! synthesize both sensors the engine consumes:
//!
//! * [`raycast`] renders the single-row depth scan line, honoring the
//!   per-material infrared response (pure glass is invisible to the
//!   depth sensor, frosted glass is not),
//! * [`ultrasound`] models the forward-facing ultrasonic cone, which
//!   reflects off every material.
//!
//! [`agent`] closes the loop with a small walker that obeys guidance
//! decisions, and [`scenario`] runs the full sense-decide-step loop
//! deterministically from a seed. [`experiments`] builds the two sweep
//! studies (minimum detectable obstacle height, glass accuracy) on top
//! of it. [`oracle`] holds brute-force reference implementations of
//! both sensors used only by tests.
//!
//! World frame: `x`/`y` in meters on the floor plane, `z` up. A yaw of
//! zero faces `+x`, and positive yaw turns toward `-y`, matching the
//! engine's "positive steering angle means right" convention.

pub mod agent;
pub mod error;
pub mod experiments;
pub mod fmt;
pub mod oracle;
pub mod raycast;
pub mod scenario;
pub mod scene;
pub mod ultrasound;

pub use error::{Result, SimError};
