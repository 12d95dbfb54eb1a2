//! Depth scan-line renderer.
//!
//! Each pixel column of the scan row casts one 3D ray from the camera:
//! the column sets the azimuth offset from the yaw, the scan row sets
//! a single depression shared by all columns. The sample is the slant
//! distance to the first surface the infrared light can see (floor,
//! opaque, or frosted; pure glass is skipped), gated to the sensor
//! range and optionally dithered with uniform noise.

use guidance_core::geometry::CameraIntrinsics;
use guidance_core::wayfinding::DepthScanLine;
use rand::Rng;

use crate::error::{Result, SimError};
use crate::scene::{heading, DepthSensorConfig, Obstacle, Pose, Scene};

/// Slant distance at which a ray first touches the extruded box, if it
/// does. An origin inside the volume reports zero.
fn ray_box_entry(
    origin: [f64; 3],
    dir: [f64; 3],
    ob: &Obstacle,
) -> Option<f64> {
    let lo = [ob.footprint.min.x, ob.footprint.min.y, 0.0];
    let hi = [ob.footprint.max.x, ob.footprint.max.y, ob.height];
    let mut t_enter = 0.0_f64;
    let mut t_exit = f64::INFINITY;
    for axis in 0..3 {
        if dir[axis].abs() < 1e-300 {
            if origin[axis] < lo[axis] || origin[axis] > hi[axis] {
                return None;
            }
            continue;
        }
        let a = (lo[axis] - origin[axis]) / dir[axis];
        let b = (hi[axis] - origin[axis]) / dir[axis];
        let (near, far) = if a <= b { (a, b) } else { (b, a) };
        t_enter = t_enter.max(near);
        t_exit = t_exit.min(far);
        if t_enter > t_exit {
            return None;
        }
    }
    Some(t_enter)
}

/// Renders one depth scan line from `pose`.
///
/// Readings outside the sensor's slant range come back as missing
/// samples, exactly like absorbing or out-of-range surfaces on the
/// real sensor. Noise draws one value per column from
/// `[-noise_amp_m, noise_amp_m)` when enabled.
pub fn render_depth_scanline<R: Rng + ?Sized>(
    scene: &Scene,
    pose: &Pose,
    k: &CameraIntrinsics,
    cfg: &DepthSensorConfig,
    rng: &mut R,
) -> Result<DepthScanLine> {
    if !scene.bounds.contains(pose.position) {
        return Err(SimError::PoseOutsideBounds {
            x: pose.position.x,
            y: pose.position.y,
        });
    }
    let row = cfg.scan_row.unwrap_or(k.height - 1);
    let depression = pose.camera_pitch_rad + k.row_elevation(f64::from(row));
    let origin = [pose.position.x, pose.position.y, pose.camera_height_m];
    let floor_t = if depression > 0.0 {
        pose.camera_height_m / depression.sin()
    } else {
        f64::INFINITY
    };

    let mut samples = Vec::with_capacity(k.width as usize);
    for col in 0..k.width {
        let azimuth = pose.yaw_rad + k.column_azimuth(f64::from(col));
        let flat = heading(azimuth);
        let dir = [
            depression.cos() * flat.x,
            depression.cos() * flat.y,
            -depression.sin(),
        ];
        let mut t = floor_t;
        for ob in &scene.obstacles {
            if !ob.material.visible_to_depth() {
                continue;
            }
            if let Some(hit) = ray_box_entry(origin, dir, ob) {
                t = t.min(hit);
            }
        }
        if cfg.noise_enabled {
            t += rng.random_range(-cfg.noise_amp_m..cfg.noise_amp_m);
        }
        samples.push((cfg.min_range_m..=cfg.max_range_m).contains(&t).then_some(t));
    }
    Ok(DepthScanLine::new(samples, row))
}
