//! Ultrasonic rangefinder model.
//!
//! The sensor reports the horizontal distance to the nearest obstacle
//! surface inside a narrow cone about the facing direction. Sound
//! reflects off every material, including the glass that the depth
//! sensor cannot see, which is the whole reason the engine fuses the
//! two sensors.

use guidance_core::sensors::{UltrasonicConfig, UltrasonicReading};

use crate::scene::{azimuth_of, heading, wrap_angle, Obstacle, Pose, Rect, Scene, Vec2};

fn in_wedge(origin: Vec2, center_az: f64, half_angle: f64, p: Vec2) -> bool {
    let v = Vec2::new(p.x - origin.x, p.y - origin.y);
    if v.x == 0.0 && v.y == 0.0 {
        return true;
    }
    wrap_angle(azimuth_of(v) - center_az).abs() <= half_angle
}

/// First hit of a horizontal 2D ray against a footprint, as a distance
/// from the origin. An origin inside the footprint reports zero.
fn ray_rect_entry(origin: Vec2, dir: Vec2, rect: &Rect) -> Option<f64> {
    let lo = [rect.min.x, rect.min.y];
    let hi = [rect.max.x, rect.max.y];
    let o = [origin.x, origin.y];
    let d = [dir.x, dir.y];
    let mut t_enter = 0.0_f64;
    let mut t_exit = f64::INFINITY;
    for axis in 0..2 {
        if d[axis].abs() < 1e-300 {
            if o[axis] < lo[axis] || o[axis] > hi[axis] {
                return None;
            }
            continue;
        }
        let a = (lo[axis] - o[axis]) / d[axis];
        let b = (hi[axis] - o[axis]) / d[axis];
        let (near, far) = if a <= b { (a, b) } else { (b, a) };
        t_enter = t_enter.max(near);
        t_exit = t_exit.min(far);
        if t_enter > t_exit {
            return None;
        }
    }
    Some(t_enter)
}

/// Minimum horizontal distance from `origin` to any obstacle footprint
/// taller than `min_height`, restricted to directions within
/// `half_angle` of `center_az`. `None` means the wedge is empty.
///
/// The minimum over the wedge-clipped footprint is attained at one of
/// a closed set of candidates: the per-edge perpendicular feet, the
/// corners, or the points where the wedge's two boundary rays enter
/// the footprint. Checking all of them makes the result exact.
pub fn min_wedge_distance(
    obstacles: &[Obstacle],
    origin: Vec2,
    center_az: f64,
    half_angle: f64,
    min_height: f64,
) -> Option<f64> {
    let mut best: Option<f64> = None;
    let mut consider = |d: f64| {
        if best.is_none_or(|b| d < b) {
            best = Some(d);
        }
    };
    let rays = [
        heading(center_az - half_angle),
        heading(center_az + half_angle),
    ];
    for ob in obstacles {
        if ob.height <= min_height {
            continue;
        }
        let fp = &ob.footprint;
        if fp.contains(origin) {
            return Some(0.0);
        }
        // Perpendicular feet, one per edge, clamped into the edge.
        let feet = [
            Vec2::new(origin.x.clamp(fp.min.x, fp.max.x), fp.min.y),
            Vec2::new(origin.x.clamp(fp.min.x, fp.max.x), fp.max.y),
            Vec2::new(fp.min.x, origin.y.clamp(fp.min.y, fp.max.y)),
            Vec2::new(fp.max.x, origin.y.clamp(fp.min.y, fp.max.y)),
        ];
        for p in feet.iter().chain(fp.corners().iter()) {
            if in_wedge(origin, center_az, half_angle, *p) {
                consider(origin.distance_to(*p));
            }
        }
        for dir in &rays {
            if let Some(t) = ray_rect_entry(origin, *dir, fp) {
                consider(t);
            }
        }
    }
    best
}

/// One ultrasonic ping from `pose` into `scene`.
///
/// Every material reflects. Surfaces beyond the range limit read as
/// `MaxRange`; anything nearer than the minimum range saturates at the
/// minimum rather than vanishing, so a nearly touching obstacle still
/// gates the fusion rule.
pub fn simulate_ultrasonic(scene: &Scene, pose: &Pose, ucfg: &UltrasonicConfig) -> UltrasonicReading {
    match min_wedge_distance(
        &scene.obstacles,
        pose.position,
        pose.yaw_rad,
        ucfg.half_fov_rad,
        0.0,
    ) {
        Some(d) if d <= ucfg.max_range_m => {
            UltrasonicReading::Distance(d.max(ucfg.min_range_m))
        }
        _ => UltrasonicReading::MaxRange,
    }
}
