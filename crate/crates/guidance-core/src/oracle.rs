//! Brute-force reference implementations.
//!
//! The property and acceptance suites check the production path
//! against these deliberately naive evaluations. They recompute every
//! quantity from first principles and share nothing with the
//! production modules except data types, so a bug has to appear in two
//! independent derivations before it can hide.

use crate::wayfinding::{DepthScanLine, WayfindingConfig};

/// Literal consistency-group evaluation of one window.
///
/// The window anchored at `start` spans `ceil(f * w / z)` columns. It
/// is traversable when every consecutive group of `group_len` samples
/// inside it (the whole window when it is shorter than a group) holds
/// only valid samples within `epsilon` of the anchor depth and beyond
/// the clearance threshold.
pub fn window_traversable_brute(
    samples: &[Option<f64>],
    start: usize,
    cfg: &WayfindingConfig,
    focal_px: f64,
) -> bool {
    let anchor = match samples.get(start) {
        Some(Some(z)) if z.is_finite() && *z > 0.0 => *z,
        _ => return false,
    };
    let span_px = focal_px * cfg.corridor_width_m / anchor;
    let end = start + span_px.ceil() as usize;
    if end >= samples.len() {
        return false;
    }
    let window = &samples[start..=end];
    let group = cfg.group_len.max(1).min(window.len());
    (0..=window.len() - group).all(|g| {
        window[g..g + group].iter().all(|s| match s {
            Some(z) => {
                (*z - anchor).abs() <= cfg.band_half_width_m && *z > cfg.min_clear_depth_m
            }
            None => false,
        })
    })
}

/// Traversability of every window start, evaluated by
/// [`window_traversable_brute`].
pub fn traversability_mask_brute(
    line: &DepthScanLine,
    cfg: &WayfindingConfig,
    focal_px: f64,
) -> Vec<bool> {
    (0..line.len())
        .map(|s| window_traversable_brute(line.samples(), s, cfg, focal_px))
        .collect()
}
