//! Error type shared by the engine modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Returned when an operation is called outside its contract.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("depth must be positive and finite, got {0} m")]
    NonPositiveDepth(f64),
    #[error("width must be positive and finite, got {0} m")]
    NonPositiveWidth(f64),
    #[error("invalid camera intrinsics: {0}")]
    InvalidIntrinsics(String),
    #[error("time of flight must be non-negative and finite, got {0} s")]
    InvalidTimeOfFlight(f64),
    #[error("angle {angle_rad} rad lies outside the cue field of view of {fov_rad} rad")]
    AngleOutsideFov { angle_rad: f64, fov_rad: f64 },
    #[error("candidate width must be positive and finite, got {0} m")]
    NonPositiveCandidateWidth(f64),
    #[error("scan line has {len} samples but the intrinsics expect {width}")]
    ScanLineLengthMismatch { len: usize, width: u32 },
    #[error("malformed scan line row: {0}")]
    MalformedScanLineRow(String),
}
