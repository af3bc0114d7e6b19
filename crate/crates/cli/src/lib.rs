//! Rendering, zoom frames, check reports and the evaluate endpoint behind the
//! `trigonlab` command.

pub mod protocol;
pub mod report;
pub mod serve;
pub mod svg;
pub mod viewport;

use thiserror::Error;

pub use protocol::{handle_evaluate, handle_evaluate_json, EvaluateRequest, EvaluateResponse};
pub use svg::{render_frames, render_svg, zoom_viewports, RenderStyle};
pub use viewport::{fit_viewport, Viewport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("scene has no primitives")]
    EmptyScene,
    #[error("viewport needs a finite center and positive half-extent and aspect")]
    InvalidViewport,
    #[error("zoom factor must be positive and not 1, got {0}")]
    InvalidZoom(f64),
    #[error("at least one frame is required")]
    NoFrames,
    #[error("style: {0}")]
    Style(String),
}
