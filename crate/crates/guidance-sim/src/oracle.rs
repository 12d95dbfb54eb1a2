//! Independent reference implementations for cross-checking the
//! sensor models.
//!
//! The production raycaster works in 3D with slab intersections; the
//! reference scanline here instead walks each ray in the horizontal
//! plane, intersects footprint edges one segment at a time, and
//! converts blocking intervals to slant distances analytically. The
//! reference wedge distance solves each footprint edge in closed form
//! instead of assembling candidate points. Agreement between the two
//! styles is checked to tight tolerances in the test suites.

use guidance_core::geometry::CameraIntrinsics;

use crate::scene::{DepthSensorConfig, Obstacle, Pose, Rect, Scene, Vec2};

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    Vec2::new(a.x - b.x, a.y - b.y)
}

fn dot(a: Vec2, b: Vec2) -> f64 {
    a.x * b.x + a.y * b.y
}

fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

fn norm(a: Vec2) -> f64 {
    dot(a, a).sqrt()
}

/// Horizontal-travel interval over which a flat ray overlaps a
/// footprint, found edge by edge.
fn footprint_interval(origin: Vec2, dir: Vec2, rect: &Rect) -> Option<(f64, f64)> {
    let mut params: Vec<f64> = Vec::new();
    if rect.contains(origin) {
        params.push(0.0);
    }
    // Vertical edges: x fixed, y spans the rectangle.
    for x in [rect.min.x, rect.max.x] {
        if dir.x != 0.0 {
            let rho = (x - origin.x) / dir.x;
            let y = origin.y + rho * dir.y;
            if rho >= 0.0 && (rect.min.y..=rect.max.y).contains(&y) {
                params.push(rho);
            }
        }
    }
    // Horizontal edges: y fixed, x spans the rectangle.
    for y in [rect.min.y, rect.max.y] {
        if dir.y != 0.0 {
            let rho = (y - origin.y) / dir.y;
            let x = origin.x + rho * dir.x;
            if rho >= 0.0 && (rect.min.x..=rect.max.x).contains(&x) {
                params.push(rho);
            }
        }
    }
    let lo = params.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = params.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo <= hi).then_some((lo, hi))
}

/// Earliest horizontal travel at which a descending (or level, or
/// ascending) ray of slope `tan_down` below the horizon is inside the
/// obstacle's height extent, given the footprint overlap interval.
fn earliest_blocking(
    rho_in: f64,
    rho_out: f64,
    cam_height: f64,
    ob_height: f64,
    tan_down: f64,
) -> Option<f64> {
    if tan_down > 0.0 {
        // Height falls with travel: inside [0, ob_height] between the
        // crossing of the top plane and the floor.
        let rho_top = (cam_height - ob_height) / tan_down;
        let rho_floor = cam_height / tan_down;
        let lo = rho_in.max(rho_top);
        let hi = rho_out.min(rho_floor);
        (lo <= hi).then_some(lo)
    } else if tan_down == 0.0 {
        (cam_height <= ob_height).then_some(rho_in)
    } else {
        // Height climbs with travel; only the entry point can block.
        (cam_height - rho_in * tan_down <= ob_height).then_some(rho_in)
    }
}

/// Reference depth scan line, noise-free: per-column slant distance to
/// the first depth-visible surface, range-gated like the sensor.
pub fn scanline_brute(
    scene: &Scene,
    pose: &Pose,
    k: &CameraIntrinsics,
    cfg: &DepthSensorConfig,
) -> Vec<Option<f64>> {
    let row = cfg.scan_row.unwrap_or(k.height - 1);
    let theta = pose.camera_pitch_rad + k.row_elevation(f64::from(row));
    let (tan_down, cos_down) = (theta.tan(), theta.cos());
    let mut out = Vec::with_capacity(k.width as usize);
    for col in 0..k.width {
        let az = pose.yaw_rad + k.column_azimuth(f64::from(col));
        let dir = Vec2::new(az.cos(), -az.sin());
        let mut rho_best = if tan_down > 0.0 {
            pose.camera_height_m / tan_down
        } else {
            f64::INFINITY
        };
        for ob in &scene.obstacles {
            if !ob.material.visible_to_depth() {
                continue;
            }
            if let Some((rho_in, rho_out)) = footprint_interval(pose.position, dir, &ob.footprint)
            {
                if let Some(rho) = earliest_blocking(
                    rho_in,
                    rho_out,
                    pose.camera_height_m,
                    ob.height,
                    tan_down,
                ) {
                    rho_best = rho_best.min(rho);
                }
            }
        }
        let slant = rho_best / cos_down;
        out.push((cfg.min_range_m..=cfg.max_range_m).contains(&slant).then_some(slant));
    }
    out
}

/// Wedge membership without angle arithmetic: within `half_angle` of
/// `axis` means the projection onto the axis carries at least
/// `cos(half_angle)` of the length. The apex itself is a member.
fn in_wedge_dot(v: Vec2, axis: Vec2, cos_half: f64) -> bool {
    dot(v, axis) >= norm(v) * cos_half - 1e-12
}

/// Where the segment `a + s * ab` crosses the boundary line through
/// the apex along `dir`, in segment parameter.
fn boundary_crossing(origin: Vec2, dir: Vec2, a: Vec2, ab: Vec2) -> Option<f64> {
    let denom = cross(ab, dir);
    if denom == 0.0 {
        return None;
    }
    Some(-cross(sub(a, origin), dir) / denom)
}

/// Closest point of one segment inside the wedge, exactly: the
/// feasible part of the segment is a single interval (both sets are
/// convex), whose ends sit on segment endpoints or boundary
/// crossings, and point-to-apex distance is convex along the segment,
/// so the clamped perpendicular foot is the minimizer.
fn segment_min_in_wedge(
    origin: Vec2,
    axis: Vec2,
    cos_half: f64,
    dirs: [Vec2; 2],
    a: Vec2,
    b: Vec2,
) -> Option<f64> {
    let ab = sub(b, a);
    let mut cands = vec![0.0, 1.0];
    for dir in dirs {
        if let Some(s) = boundary_crossing(origin, dir, a, ab) {
            if (0.0..=1.0).contains(&s) {
                cands.push(s);
            }
        }
    }
    let at = |s: f64| Vec2::new(a.x + s * ab.x, a.y + s * ab.y);
    let feasible: Vec<f64> = cands
        .into_iter()
        .filter(|&s| in_wedge_dot(sub(at(s), origin), axis, cos_half))
        .collect();
    let lo = feasible.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = feasible.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo > hi {
        return None;
    }
    let len2 = dot(ab, ab);
    let foot = if len2 == 0.0 {
        0.0
    } else {
        (dot(sub(origin, a), ab) / len2).clamp(0.0, 1.0)
    };
    Some(norm(sub(at(foot.clamp(lo, hi)), origin)))
}

/// Reference minimum horizontal distance to any footprint tall enough
/// to matter within the wedge, in closed form per edge.
pub fn wedge_distance_brute(
    obstacles: &[Obstacle],
    origin: Vec2,
    center_az: f64,
    half_angle: f64,
    min_height: f64,
) -> Option<f64> {
    let axis = Vec2::new(center_az.cos(), -center_az.sin());
    let cos_half = half_angle.cos();
    let dirs = [center_az - half_angle, center_az + half_angle]
        .map(|az| Vec2::new(az.cos(), -az.sin()));
    let mut best: Option<f64> = None;
    for ob in obstacles {
        if ob.height <= min_height {
            continue;
        }
        if ob.footprint.contains(origin) {
            return Some(0.0);
        }
        let c = ob.footprint.corners();
        for (a, b) in [(c[0], c[1]), (c[1], c[2]), (c[2], c[3]), (c[3], c[0])] {
            if let Some(d) = segment_min_in_wedge(origin, axis, cos_half, dirs, a, b) {
                if best.is_none_or(|bst| d < bst) {
                    best = Some(d);
                }
            }
        }
    }
    best
}
