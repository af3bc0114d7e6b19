use serde::{Deserialize, Serialize};
use trigonlab_core::geom::Point;
use trigonlab_core::scene::Scene;

use crate::RenderError;

/// Smallest half-extent used when a scene's bounding box has no area.
pub const MIN_HALF_EXTENT: f64 = 1.0;

/// A region of the plane: `half_extent` is half the height, the width is
/// `2 * half_extent * aspect`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub center: Point,
    pub half_extent: f64,
    pub aspect: f64,
}

impl Viewport {
    pub fn new(center: Point, half_extent: f64, aspect: f64) -> Result<Viewport, RenderError> {
        let vp = Viewport {
            center,
            half_extent,
            aspect,
        };
        vp.validate()?;
        Ok(vp)
    }

    pub fn validate(&self) -> Result<(), RenderError> {
        let ok = self.center.is_finite()
            && self.half_extent.is_finite()
            && self.half_extent > 0.0
            && self.aspect.is_finite()
            && self.aspect > 0.0;
        if ok {
            Ok(())
        } else {
            Err(RenderError::InvalidViewport)
        }
    }

    pub fn half_width(&self) -> f64 {
        self.half_extent * self.aspect
    }

    /// Same center and aspect, half-extent multiplied by `factor`.
    pub fn scaled_about(&self, anchor: Point, factor: f64) -> Viewport {
        Viewport {
            center: anchor + (self.center - anchor) * factor,
            half_extent: self.half_extent * factor,
            aspect: self.aspect,
        }
    }
}

/// Fits every primitive's bounding box, then pads by `padding` of the
/// half-extent. A box with no extent gets [`MIN_HALF_EXTENT`].
pub fn fit_viewport(scene: &Scene, aspect: f64, padding: f64) -> Result<Viewport, RenderError> {
    if !(aspect.is_finite() && aspect > 0.0 && padding.is_finite() && padding >= 0.0) {
        return Err(RenderError::InvalidViewport);
    }
    let (lo, hi) = scene.bounds().ok_or(RenderError::EmptyScene)?;
    let center = lo.lerp(hi, 0.5);
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let mut half = (h / 2.0).max(w / (2.0 * aspect));
    if half <= 0.0 {
        half = MIN_HALF_EXTENT;
    }
    Viewport::new(center, half * (1.0 + padding), aspect)
}
