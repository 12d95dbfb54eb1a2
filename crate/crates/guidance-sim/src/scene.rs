//! 2.5D world model: extruded rectangular obstacles on a flat floor.

use guidance_core::units;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// 2D point or vector in world meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance_to(self, other: Vec2) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// Unit vector for a world azimuth. Yaw zero faces `+x`; positive yaw
/// turns right, which in this frame is toward `-y`.
pub fn heading(azimuth_rad: f64) -> Vec2 {
    Vec2::new(azimuth_rad.cos(), -azimuth_rad.sin())
}

/// World azimuth of a vector, inverse of [`heading`].
pub fn azimuth_of(v: Vec2) -> f64 {
    (-v.y).atan2(v.x)
}

/// Normalizes an angle difference into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut a = a % std::f64::consts::TAU;
    if a <= -std::f64::consts::PI {
        a += std::f64::consts::TAU;
    } else if a > std::f64::consts::PI {
        a -= std::f64::consts::TAU;
    }
    a
}

/// Axis-aligned rectangle in floor coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min: Vec2,
    pub max: Vec2,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self {
            min: Vec2::new(x0, y0),
            max: Vec2::new(x1, y1),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.min.x < self.max.x && self.min.y < self.max.y)
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.contains(other.min) && self.contains(other.max)
    }

    /// Nearest point of the (solid) rectangle to `p`.
    pub fn closest_point(&self, p: Vec2) -> Vec2 {
        Vec2::new(
            p.x.clamp(self.min.x, self.max.x),
            p.y.clamp(self.min.y, self.max.y),
        )
    }

    pub fn corners(&self) -> [Vec2; 4] {
        [
            self.min,
            Vec2::new(self.max.x, self.min.y),
            self.max,
            Vec2::new(self.min.x, self.max.y),
        ]
    }
}

/// Infrared response of an obstacle's surface.
///
/// The depth sensor projects infrared light, so `IrTransparent` (pure
/// glass) never appears in the depth scan line. Ultrasound reflects
/// off all three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Material {
    Opaque,
    IrTransparent,
    Frosted,
}

impl Material {
    /// Whether the depth sensor can see this surface.
    pub fn visible_to_depth(self) -> bool {
        !matches!(self, Material::IrTransparent)
    }
}

/// One extruded box standing on the floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Obstacle {
    pub footprint: Rect,
    /// Extrusion height above the floor, meters.
    pub height: f64,
    #[serde(default = "default_material")]
    pub material: Material,
}

fn default_material() -> Material {
    Material::Opaque
}

/// Camera / agent pose on the floor plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Pose {
    pub position: Vec2,
    /// Facing direction, radians; zero faces `+x`, positive is right.
    #[serde(rename = "yaw_deg", with = "units::degrees")]
    pub yaw_rad: f64,
    /// Camera height above the floor, meters.
    pub camera_height_m: f64,
    /// Downward camera tilt, radians.
    #[serde(rename = "camera_pitch_deg", with = "units::degrees")]
    pub camera_pitch_rad: f64,
}

impl Default for Pose {
    fn default() -> Self {
        Self {
            position: Vec2::new(0.0, 0.0),
            yaw_rad: 0.0,
            camera_height_m: 1.65,
            camera_pitch_rad: 30f64.to_radians(),
        }
    }
}

/// A complete test environment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    /// Walkable area; the agent cannot leave it.
    pub bounds: Rect,
    #[serde(default)]
    pub obstacles: Vec<Obstacle>,
    /// Where a run starts.
    pub start: Pose,
    /// Where a run succeeds.
    pub goal: Vec2,
}

impl Scene {
    /// Checks every structural invariant, returning the first failure.
    pub fn validate(&self) -> Result<()> {
        if self.bounds.is_degenerate() {
            return Err(SimError::InvalidScene("bounds are degenerate".into()));
        }
        if !self.bounds.contains(self.start.position) {
            return Err(SimError::InvalidScene("start is outside bounds".into()));
        }
        if !self.bounds.contains(self.goal) {
            return Err(SimError::InvalidScene("goal is outside bounds".into()));
        }
        if self.start.camera_height_m.is_nan() || self.start.camera_height_m <= 0.0 {
            return Err(SimError::InvalidScene(
                "camera height must be positive".into(),
            ));
        }
        for (i, ob) in self.obstacles.iter().enumerate() {
            if ob.footprint.is_degenerate() {
                return Err(SimError::InvalidScene(format!(
                    "obstacle {i} has a degenerate footprint"
                )));
            }
            if ob.height.is_nan() || ob.height <= 0.0 {
                return Err(SimError::InvalidScene(format!(
                    "obstacle {i} has non-positive height"
                )));
            }
            if !self.bounds.contains_rect(&ob.footprint) {
                return Err(SimError::InvalidScene(format!(
                    "obstacle {i} leaves the bounds"
                )));
            }
        }
        Ok(())
    }
}

/// Depth sensor envelope and noise model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DepthSensorConfig {
    /// Closest resolvable slant distance, meters.
    pub min_range_m: f64,
    /// Farthest resolvable slant distance, meters.
    pub max_range_m: f64,
    /// Whether additive measurement noise is applied.
    pub noise_enabled: bool,
    /// Noise amplitude, meters: samples draw from `[-amp, amp)`.
    /// Held at half the way-finding consistency band so noise alone
    /// can never make flat ground look blocked.
    pub noise_amp_m: f64,
    /// Image row to scan; `None` means the bottom row.
    pub scan_row: Option<u32>,
}

impl Default for DepthSensorConfig {
    fn default() -> Self {
        Self {
            min_range_m: 0.4,
            max_range_m: 4.0,
            noise_enabled: true,
            noise_amp_m: 0.02,
            scan_row: None,
        }
    }
}
