//! Desk-scale bench experiments.
//!
//! Two batch measurements: the smallest obstacle height the
//! way-finding mask can see, swept over camera heights and obstacle
//! distances, and the fraction of safe decisions in front of glass
//! walls of each material, with and without the echo gate.

use guidance_core::fusion::{fuse_ultrasonic, select_direction};
use guidance_core::geometry::window_width_px;
use guidance_core::sensors::UltrasonicReading;
use guidance_core::wayfinding::{extract_candidates, traversability_mask, DepthScanLine};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fmt::fmt_sig6;
use crate::raycast::render_depth_scanline;
use crate::scenario::EngineConfig;
use crate::scene::{Material, Obstacle, Pose, Rect, Scene, Vec2};
use crate::ultrasound::{min_wedge_distance, simulate_ultrasonic};

/// The probe obstacle and march schedule of the minimum-height
/// measurement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HeightProbe {
    /// Probe box width across the walking direction, meters.
    pub box_width_m: f64,
    /// Probe box extent along the walking direction, meters.
    pub box_extent_m: f64,
    /// Camera march step toward the box, meters.
    pub march_step_m: f64,
    /// March stops when the box face gets this close, meters.
    pub min_standoff_m: f64,
    /// Height search resolution, meters.
    pub resolution_m: f64,
    /// Tallest height tried before giving up, meters.
    pub max_height_m: f64,
}

impl Default for HeightProbe {
    fn default() -> Self {
        Self {
            box_width_m: 2.0,
            box_extent_m: 0.3,
            march_step_m: 0.02,
            min_standoff_m: 0.4,
            resolution_m: 0.005,
            max_height_m: 0.5,
        }
    }
}

/// Smallest probe height whose presence changes the traversability
/// mask versus the empty floor at any pose of a straight march toward
/// the box, or `None` when even the tallest probe goes unseen.
///
/// The camera starts `obstacle_distance_m` from the box face and
/// walks straight at it until the standoff. Measurement noise is
/// disabled for the measurement: the mask comparison must be
/// deterministic. The height is found by bisection over the
/// resolution grid; a taller box subsumes a shorter one on every ray,
/// so detection is monotone in height.
///
/// A mask difference counts only at starts whose window fits on both
/// lines. The fit boundary at the image edge moves with the anchor
/// depth alone (one pixel of rounding), so a difference there says
/// nothing about the obstacle.
pub fn min_detectable_height(
    camera_height_m: f64,
    obstacle_distance_m: f64,
    engine: &EngineConfig,
    probe: &HeightProbe,
) -> Result<Option<f64>> {
    let mut engine = engine.clone();
    engine.depth.noise_enabled = false;
    let half_w = probe.box_width_m / 2.0;
    let d = obstacle_distance_m;
    let bounds = Rect::new(
        -1.0,
        -(half_w + 1.0),
        d + probe.box_extent_m + 1.0,
        half_w + 1.0,
    );
    let pose_at = |x: f64| Pose {
        position: Vec2::new(x, 0.0),
        yaw_rad: 0.0,
        camera_height_m,
        ..Pose::default()
    };
    let mut march = Vec::new();
    let mut x = 0.0;
    while d - x >= probe.min_standoff_m - 1e-12 {
        march.push(x);
        x += probe.march_step_m;
    }

    // The empty-floor scan line is the same at every pose, so one
    // render gives the reference mask for the whole march.
    let mut rng = ChaCha8Rng::seed_from_u64(engine.seed);
    let empty = Scene {
        bounds,
        obstacles: vec![],
        start: pose_at(0.0),
        goal: Vec2::new(d, 0.0),
    };
    let empty_line =
        render_depth_scanline(&empty, &pose_at(0.0), &engine.intrinsics, &engine.depth, &mut rng)?;
    let empty_mask = traversability_mask(&empty_line, &engine.wayfinding, &engine.intrinsics);
    let fits = |line: &DepthScanLine, s: usize| -> bool {
        line.get(s)
            .and_then(|anchor| {
                window_width_px(anchor, engine.wayfinding.corridor_width_m, &engine.intrinsics)
                    .ok()
            })
            .is_some_and(|px| s + (px.ceil() as usize) < line.len())
    };

    let mut detected = |height: f64| -> Result<bool> {
        let scene = Scene {
            bounds,
            obstacles: vec![Obstacle {
                footprint: Rect::new(d, -half_w, d + probe.box_extent_m, half_w),
                height,
                material: Material::Opaque,
            }],
            start: pose_at(0.0),
            goal: Vec2::new(d, 0.0),
        };
        for &x in &march {
            let line = render_depth_scanline(
                &scene,
                &pose_at(x),
                &engine.intrinsics,
                &engine.depth,
                &mut rng,
            )?;
            let mask = traversability_mask(&line, &engine.wayfinding, &engine.intrinsics);
            if mask
                .iter()
                .zip(&empty_mask)
                .enumerate()
                .any(|(s, (&b, &e))| b != e && fits(&line, s))
            {
                return Ok(true);
            }
        }
        Ok(false)
    };

    let rungs = (probe.max_height_m / probe.resolution_m).round() as u32;
    if rungs == 0 || !detected(f64::from(rungs) * probe.resolution_m)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (1u32, rungs);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if detected(f64::from(mid) * probe.resolution_m)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(Some(f64::from(lo) * probe.resolution_m))
}

/// Minimum detectable heights over a camera-height by distance grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightGrid {
    pub camera_heights_m: Vec<f64>,
    pub distances_m: Vec<f64>,
    /// `cells[i][j]` pairs `camera_heights_m[i]` with `distances_m[j]`;
    /// `None` marks an undetectable cell.
    pub cells: Vec<Vec<Option<f64>>>,
}

impl HeightGrid {
    /// CSV matrix: header row of distances, one row per camera height.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("camera_height_m");
        for d in &self.distances_m {
            out.push(',');
            out.push_str(&fmt_sig6(*d));
        }
        out.push('\n');
        for (height, row) in self.camera_heights_m.iter().zip(&self.cells) {
            out.push_str(&fmt_sig6(*height));
            for cell in row {
                out.push(',');
                match cell {
                    Some(v) => out.push_str(&fmt_sig6(*v)),
                    None => out.push_str("none"),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Runs the minimum-height measurement over a grid.
pub fn sweep_height(
    camera_heights_m: &[f64],
    distances_m: &[f64],
    engine: &EngineConfig,
    probe: &HeightProbe,
) -> Result<HeightGrid> {
    let mut cells = Vec::with_capacity(camera_heights_m.len());
    for &h in camera_heights_m {
        let mut row = Vec::with_capacity(distances_m.len());
        for &d in distances_m {
            row.push(min_detectable_height(h, d, engine, probe)?);
        }
        cells.push(row);
    }
    Ok(HeightGrid {
        camera_heights_m: camera_heights_m.to_vec(),
        distances_m: distances_m.to_vec(),
        cells,
    })
}

/// One (material, fusion-mode) cell of the glass accuracy sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlassSweepCell {
    pub material: Material,
    /// Whether the echo gate was active.
    pub fused: bool,
    /// Randomized scenes judged.
    pub scenes: u32,
    /// Fraction of scenes with a safe decision: anything but walking
    /// straight at a wall inside reaction range.
    pub accuracy: f64,
}

/// Measures decision accuracy against randomized glass walls.
///
/// Each scene drops one wall of the given material 0.5 to 0.85 m in
/// front of a standing camera, wide and tall enough to fill the view,
/// then runs one frame of the pipeline. The decision is unsafe when
/// it steers inside the straight-ahead cone while the wall sits
/// within reaction range of that cone; sound reflects off every
/// material, so the true blockage ignores the material.
pub fn glass_accuracy(
    material: Material,
    fused: bool,
    n_scenes: u32,
    engine: &EngineConfig,
    seed: u64,
) -> Result<GlassSweepCell> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pose = Pose::default();
    let mut safe = 0u32;
    for _ in 0..n_scenes {
        let face = rng.random_range(0.5..0.85);
        let width = rng.random_range(3.0..6.0);
        let offset = rng.random_range(-0.2..0.2);
        let extent = rng.random_range(0.08..0.3);
        let height = rng.random_range(1.8..2.2);
        let scene = Scene {
            bounds: Rect::new(-1.0, -4.5, 3.0, 4.5),
            obstacles: vec![Obstacle {
                footprint: Rect::new(
                    face,
                    offset - width / 2.0,
                    face + extent,
                    offset + width / 2.0,
                ),
                height,
                material,
            }],
            start: pose,
            goal: Vec2::new(2.0, 0.0),
        };
        let line =
            render_depth_scanline(&scene, &pose, &engine.intrinsics, &engine.depth, &mut rng)?;
        let reading = if fused {
            simulate_ultrasonic(&scene, &pose, &engine.ultrasonic)
        } else {
            UltrasonicReading::MaxRange
        };
        let candidates = extract_candidates(&line, &engine.wayfinding, &engine.intrinsics)?;
        let selected = select_direction(&candidates, &engine.fusion)?;
        let decision = fuse_ultrasonic(selected.as_ref(), reading, &engine.fusion);

        let blocked_ahead = min_wedge_distance(
            &scene.obstacles,
            pose.position,
            pose.yaw_rad,
            engine.fusion.cone_half_rad,
            engine.agent.step_over_height_m,
        )
        .is_some_and(|d| d <= engine.fusion.min_clear_depth_m);
        let walks_ahead = decision
            .angle_rad
            .is_some_and(|a| a.abs() <= engine.fusion.cone_half_rad);
        if !(blocked_ahead && walks_ahead) {
            safe += 1;
        }
    }
    Ok(GlassSweepCell {
        material,
        fused,
        scenes: n_scenes,
        accuracy: f64::from(safe) / f64::from(n_scenes),
    })
}

/// Runs the glass sweep over both glass materials, without and with
/// the echo gate.
pub fn sweep_glass(n_scenes: u32, engine: &EngineConfig, seed: u64) -> Result<Vec<GlassSweepCell>> {
    let mut cells = Vec::new();
    for material in [Material::Frosted, Material::IrTransparent] {
        for fused in [false, true] {
            cells.push(glass_accuracy(material, fused, n_scenes, engine, seed)?);
        }
    }
    Ok(cells)
}

/// CSV form of a glass sweep: one row per (material, fusion) cell.
pub fn glass_csv(cells: &[GlassSweepCell]) -> String {
    let mut out = String::from("material,fused,scenes,accuracy\n");
    for c in cells {
        let material = match c.material {
            Material::Opaque => "opaque",
            Material::IrTransparent => "ir_transparent",
            Material::Frosted => "frosted",
        };
        out.push_str(&format!(
            "{material},{},{},{}\n",
            c.fused,
            c.scenes,
            fmt_sig6(c.accuracy)
        ));
    }
    out
}
