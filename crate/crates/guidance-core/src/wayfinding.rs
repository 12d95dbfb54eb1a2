//! Scan-line way-finding.
//!
//! One row of the depth image, taken near the image bottom so that it
//! looks at the ground roughly 1.2 m ahead, is searched for corridors
//! wide enough to walk through. A window anchored at column `n` with
//! anchor depth `z` spans `f * w / z` pixels, the image of a corridor
//! `w` meters wide at that depth. The window is traversable when every
//! sample inside it stays within `epsilon` of the anchor depth and
//! beyond the clearance threshold `delta`; a missing sample fails it.
//! Overlapping traversable windows merge into maximal runs, and each
//! run becomes one steering candidate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{steering_angle, window_width_px, CameraIntrinsics};

/// Serialized sentinel for a sample with no depth return.
pub const NO_RETURN_MM: i64 = 0;

/// One row of depth samples, meters. `None` marks a sample the sensor
/// could not resolve (out of range, absorbing or transparent surface).
#[derive(Debug, Clone, PartialEq)]
pub struct DepthScanLine {
    samples: Vec<Option<f64>>,
    /// Image row the samples were taken from.
    pub row: u32,
}

impl DepthScanLine {
    pub fn new(samples: Vec<Option<f64>>, row: u32) -> Self {
        Self { samples, row }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Option<f64>] {
        &self.samples
    }

    pub fn get(&self, col: usize) -> Option<f64> {
        self.samples.get(col).copied().flatten()
    }

    /// One CSV row of millimeter integers, `0` for missing samples.
    /// Valid samples round to the nearest millimeter.
    pub fn to_csv_row(&self) -> String {
        let cells: Vec<String> = self
            .samples
            .iter()
            .map(|s| match s {
                Some(z) => ((z * 1000.0).round() as i64).max(1).to_string(),
                None => NO_RETURN_MM.to_string(),
            })
            .collect();
        cells.join(",")
    }

    /// Parses a CSV row written by [`Self::to_csv_row`].
    pub fn from_csv_row(line: &str, row: u32) -> Result<Self> {
        let mut samples = Vec::new();
        for cell in line.split(',') {
            let cell = cell.trim();
            let mm: i64 = cell
                .parse()
                .map_err(|_| Error::MalformedScanLineRow(format!("bad cell {cell:?}")))?;
            if mm < 0 {
                return Err(Error::MalformedScanLineRow(format!(
                    "negative depth {mm} mm"
                )));
            }
            samples.push((mm != NO_RETURN_MM).then(|| mm as f64 / 1000.0));
        }
        Ok(Self::new(samples, row))
    }
}

/// Way-finding parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct WayfindingConfig {
    /// Required clear corridor width, meters.
    #[serde(rename = "w")]
    pub corridor_width_m: f64,
    /// Half-width of the depth consistency band around the window
    /// anchor, meters. Sized to swallow sensor noise at range.
    #[serde(rename = "epsilon")]
    pub band_half_width_m: f64,
    /// Depth every traversable sample must exceed, meters. This is the
    /// reaction distance: anything closer is an obstruction.
    #[serde(rename = "delta")]
    pub min_clear_depth_m: f64,
    /// Consistency group length used by the reference evaluation; the
    /// sliding reading makes every group constraint equivalent to a
    /// per-sample constraint once a window holds at least this many
    /// samples.
    pub group_len: usize,
}

impl Default for WayfindingConfig {
    fn default() -> Self {
        Self {
            corridor_width_m: 0.6,
            band_half_width_m: 0.04,
            min_clear_depth_m: 1.5,
            group_len: 5,
        }
    }
}

/// One traversable corridor found on the scan line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    /// Steering angle toward the run center, radians, positive right.
    pub angle_rad: f64,
    /// Corridor width at the run's minimum depth, meters. Using the
    /// minimum depth keeps the estimate conservative.
    pub width_m: f64,
    /// First pixel column of the run, inclusive.
    pub col_start: usize,
    /// Last pixel column of the run, inclusive.
    pub col_end: usize,
    /// Minimum valid depth inside the run, meters.
    pub min_depth_m: f64,
}

/// Inclusive column span `[start, end]` of the window anchored at
/// `start`, or `None` when the anchor is missing or the window does
/// not fit on the line. The span is rounded up so the window never
/// represents less than the configured corridor width.
fn window_span(
    line: &DepthScanLine,
    start: usize,
    cfg: &WayfindingConfig,
    k: &CameraIntrinsics,
) -> Option<(usize, usize, f64)> {
    let anchor = line.get(start)?;
    let width_px = window_width_px(anchor, cfg.corridor_width_m, k).ok()?;
    let end = start + width_px.ceil() as usize;
    (end < line.len()).then_some((start, end, anchor))
}

/// Single-window traversability test: the window anchored at
/// `start_col` must fit on the line, and every sample in it must be
/// valid, within the anchor's consistency band, and beyond the
/// clearance threshold.
pub fn window_traversable(
    line: &DepthScanLine,
    start_col: usize,
    cfg: &WayfindingConfig,
    k: &CameraIntrinsics,
) -> bool {
    let Some((start, end, anchor)) = window_span(line, start_col, cfg, k) else {
        return false;
    };
    line.samples()[start..=end].iter().all(|s| match s {
        Some(z) => {
            *z > cfg.min_clear_depth_m && (*z - anchor).abs() <= cfg.band_half_width_m
        }
        None => false,
    })
}

/// Traversability of every window start on the line.
pub fn traversability_mask(
    line: &DepthScanLine,
    cfg: &WayfindingConfig,
    k: &CameraIntrinsics,
) -> Vec<bool> {
    (0..line.len())
        .map(|s| window_traversable(line, s, cfg, k))
        .collect()
}

/// Extracts all steering candidates from a scan line.
///
/// Overlapping or touching traversable windows merge into maximal
/// pixel runs; each run yields one candidate whose width is evaluated
/// at the run's minimum depth. Runs whose conservative width falls
/// under the configured corridor width are dropped.
pub fn extract_candidates(
    line: &DepthScanLine,
    cfg: &WayfindingConfig,
    k: &CameraIntrinsics,
) -> Result<Vec<Candidate>> {
    if line.len() != k.width as usize {
        return Err(Error::ScanLineLengthMismatch {
            len: line.len(),
            width: k.width,
        });
    }

    // Collect traversable window spans in start order; they are
    // emitted sorted, so merging is a single pass.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for start in 0..line.len() {
        if !window_traversable(line, start, cfg, k) {
            continue;
        }
        let (s, e, _) = window_span(line, start, cfg, k).expect("traversable window fits");
        match runs.last_mut() {
            Some((_, last_end)) if s <= *last_end + 1 => *last_end = e.max(*last_end),
            _ => runs.push((s, e)),
        }
    }

    let mut candidates = Vec::with_capacity(runs.len());
    for (s, e) in runs {
        let min_depth = line.samples()[s..=e]
            .iter()
            .flatten()
            .fold(f64::INFINITY, |m, z| m.min(*z));
        let width_m = min_depth * (e - s) as f64 / k.f;
        if width_m < cfg.corridor_width_m {
            continue;
        }
        candidates.push(Candidate {
            angle_rad: steering_angle(s as f64, e as f64, k),
            width_m,
            col_start: s,
            col_end: e,
            min_depth_m: min_depth,
        });
    }
    Ok(candidates)
}
