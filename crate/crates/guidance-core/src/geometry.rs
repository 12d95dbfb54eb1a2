//! Pinhole geometry for the depth sensor.
//!
//! Pixel coordinates follow image convention: `u` grows to the right,
//! `v` grows downward, both may be fractional. Camera-frame coordinates
//! are meters with `x` to the right, `y` downward, and `z` along the
//! optical axis. A steering angle is the horizontal angle from the
//! optical axis to a target direction, positive to the right.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Pinhole intrinsics of the depth sensor. Square pixels are assumed,
/// so one focal length serves both axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CameraIntrinsics {
    /// Focal length in pixels.
    pub f: f64,
    /// Principal point column in pixels.
    pub u0: f64,
    /// Principal point row in pixels.
    pub v0: f64,
    /// Image width in pixels.
    pub width: u32,
    /// Image height in pixels.
    pub height: u32,
}

impl Default for CameraIntrinsics {
    /// VGA structured-light defaults: 640x480 at 525 px focal length
    /// with the principal point at the image center.
    fn default() -> Self {
        Self {
            f: 525.0,
            u0: 319.5,
            v0: 239.5,
            width: 640,
            height: 480,
        }
    }
}

impl CameraIntrinsics {
    /// Builds validated intrinsics. The focal length must be positive
    /// and the principal point must lie inside the image.
    pub fn new(f: f64, u0: f64, v0: f64, width: u32, height: u32) -> Result<Self> {
        let k = Self {
            f,
            u0,
            v0,
            width,
            height,
        };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.f.is_finite() && self.f > 0.0) {
            return Err(Error::InvalidIntrinsics(format!(
                "focal length {} px",
                self.f
            )));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidIntrinsics(format!(
                "empty image {}x{}",
                self.width, self.height
            )));
        }
        if !(self.u0.is_finite() && self.u0 > 0.0 && self.u0 < f64::from(self.width)) {
            return Err(Error::InvalidIntrinsics(format!(
                "principal point column {} outside 0..{}",
                self.u0, self.width
            )));
        }
        if !(self.v0.is_finite() && self.v0 > 0.0 && self.v0 < f64::from(self.height)) {
            return Err(Error::InvalidIntrinsics(format!(
                "principal point row {} outside 0..{}",
                self.v0, self.height
            )));
        }
        Ok(())
    }

    /// Horizontal angle of the ray through column `u`, radians,
    /// positive to the right of the optical axis.
    pub fn column_azimuth(&self, u: f64) -> f64 {
        ((u - self.u0) / self.f).atan()
    }

    /// Vertical angle of the ray through row `v`, radians, positive
    /// below the optical axis.
    pub fn row_elevation(&self, v: f64) -> f64 {
        ((v - self.v0) / self.f).atan()
    }
}

/// A point in the camera frame, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CameraPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// A pixel location, possibly fractional.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PixelPoint {
    pub u: f64,
    pub v: f64,
}

/// Lifts a pixel at a known depth into the camera frame:
/// `(x, y, z) = z * ((u - u0) / f, (v - v0) / f, 1)`.
pub fn backproject(px: PixelPoint, depth_m: f64, k: &CameraIntrinsics) -> Result<CameraPoint> {
    if !(depth_m.is_finite() && depth_m > 0.0) {
        return Err(Error::NonPositiveDepth(depth_m));
    }
    Ok(CameraPoint {
        x: depth_m * (px.u - k.u0) / k.f,
        y: depth_m * (px.v - k.v0) / k.f,
        z: depth_m,
    })
}

/// Projects a camera-frame point back onto the image plane:
/// `(u, v) = (f x / z + u0, f y / z + v0)`.
pub fn project(p: CameraPoint, k: &CameraIntrinsics) -> Result<PixelPoint> {
    if !(p.z.is_finite() && p.z > 0.0) {
        return Err(Error::NonPositiveDepth(p.z));
    }
    Ok(PixelPoint {
        u: k.f * p.x / p.z + k.u0,
        v: k.f * p.y / p.z + k.v0,
    })
}

/// Width in pixels that a corridor of `clear_width_m` meters spans at
/// depth `depth_m`: the two corridor edges projected at equal depth are
/// exactly `f * w / z` pixels apart, so the sliding window shrinks as
/// the anchor depth grows.
pub fn window_width_px(depth_m: f64, clear_width_m: f64, k: &CameraIntrinsics) -> Result<f64> {
    if !(depth_m.is_finite() && depth_m > 0.0) {
        return Err(Error::NonPositiveDepth(depth_m));
    }
    if !(clear_width_m.is_finite() && clear_width_m > 0.0) {
        return Err(Error::NonPositiveWidth(clear_width_m));
    }
    Ok(k.f * clear_width_m / depth_m)
}

/// Steering angle toward the midpoint of the pixel span `[u1, u2]`:
/// `atan((u1 + u2 - 2 u0) / (2 f))`. Antisymmetric around the principal
/// point and bounded by the horizontal field of view.
pub fn steering_angle(u1: f64, u2: f64, k: &CameraIntrinsics) -> f64 {
    ((u1 + u2 - 2.0 * k.u0) / (2.0 * k.f)).atan()
}
