//! Simulator error type.

use thiserror::Error;

/// Errors raised by scene validation and sensor synthesis.
#[derive(Debug, Error)]
pub enum SimError {
    /// The agent or camera pose left the scene bounds.
    #[error("pose ({x:.3}, {y:.3}) is outside the scene bounds")]
    PoseOutsideBounds { x: f64, y: f64 },

    /// A scene failed validation; the message names the offending part.
    #[error("invalid scene: {0}")]
    InvalidScene(String),

    /// A scenario or config file did not parse.
    #[error("malformed scenario: {0}")]
    MalformedScenario(String),

    /// Recorded sensor logs disagree on frame count.
    #[error("depth log has {depth_frames} frames but ultrasonic log has {ultrasonic_frames}")]
    MisalignedLogs {
        depth_frames: usize,
        ultrasonic_frames: usize,
    },

    /// An error bubbled up from the guidance engine.
    #[error(transparent)]
    Engine(#[from] guidance_core::Error),
}

/// Convenience alias used throughout the simulator.
pub type Result<T> = std::result::Result<T, SimError>;
