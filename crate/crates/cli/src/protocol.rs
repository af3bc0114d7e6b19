//! The stateless evaluate exchange, as JSON bodies tagged `"schema": 1`.
//!
//! Request:
//!
//! ```json
//! {"schema": 1, "source": "A = point(0,0) ...", "overrides": {"A": [0.0, 1.0]},
//!  "viewport": {"center": {"x": 0.0, "y": 0.0}, "half_extent": 5.0, "aspect": 1.5}}
//! ```
//!
//! `overrides` and `viewport` may be omitted. A body that does not match
//! this shape gets `{"schema": 1, "error": "..."}` instead of a response.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use trigonlab_core::dsl::{self, DslError, Overrides};
use trigonlab_core::geom::Point;
use trigonlab_core::scene::Scene;

use crate::viewport::{fit_viewport, Viewport};

pub const SCHEMA_VERSION: u32 = 1;

/// Padding applied when the response fits its own viewport.
pub const FIT_PADDING: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluateRequest {
    pub schema: u32,
    pub source: String,
    #[serde(default)]
    pub overrides: BTreeMap<String, [f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub viewport: Option<Viewport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl Diagnostic {
    pub fn from_error(e: &DslError) -> Diagnostic {
        Diagnostic {
            severity: Severity::Error,
            line: e.pos().map(|p| p.line),
            column: e.pos().map(|p| p.column),
            message: e.message(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreePoint {
    pub name: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluateResponse {
    pub schema: u32,
    pub scene: Scene,
    pub free_points: Vec<FreePoint>,
    pub diagnostics: Vec<Diagnostic>,
    pub fitted_viewport: Viewport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorResponse {
    pub schema: u32,
    pub error: String,
}

fn default_viewport() -> Viewport {
    Viewport {
        center: Point::ORIGIN,
        half_extent: 1.0,
        aspect: 1.0,
    }
}

/// Evaluates one request. Geometry and language problems become diagnostics.
pub fn handle_evaluate(req: &EvaluateRequest) -> EvaluateResponse {
    let overrides: Overrides = req
        .overrides
        .iter()
        .map(|(k, [x, y])| (k.clone(), Point::new(*x, *y)))
        .collect();
    let mut diagnostics = Vec::new();
    let mut free_points = Vec::new();
    let mut scene = Scene::default();

    let parsed = dsl::tokenize(&req.source).and_then(|t| dsl::parse(&t));
    match parsed {
        Err(e) => diagnostics.push(Diagnostic::from_error(&e)),
        Ok(program) => {
            free_points = program
                .free_points()
                .into_iter()
                .map(|(name, x, y)| {
                    let p = overrides.get(&name).copied().unwrap_or(Point::new(x, y));
                    FreePoint { name, x: p.x, y: p.y }
                })
                .collect();
            match dsl::resolve(program) {
                Err(e) => diagnostics.push(Diagnostic::from_error(&e)),
                Ok(valid) => match dsl::evaluate(&valid, &overrides) {
                    Ok(s) => scene = s,
                    Err(failure) => {
                        diagnostics.push(Diagnostic::from_error(&failure.error));
                        scene = failure.scene;
                    }
                },
            }
        }
    }
    if diagnostics.is_empty() && scene.is_empty() {
        diagnostics.push(Diagnostic {
            severity: Severity::Warning,
            line: None,
            column: None,
            message: "program draws nothing".into(),
        });
    }
    let fitted_viewport = req
        .viewport
        .or_else(|| fit_viewport(&scene, 1.0, FIT_PADDING).ok())
        .unwrap_or_else(default_viewport);
    EvaluateResponse {
        schema: SCHEMA_VERSION,
        scene,
        free_points,
        diagnostics,
        fitted_viewport,
    }
}

fn schema_error(message: String) -> (u16, String) {
    let body = ErrorResponse {
        schema: SCHEMA_VERSION,
        error: message,
    };
    (400, serde_json::to_string(&body).expect("error serializes"))
}

/// Decodes a JSON request body, evaluates it and encodes the reply with its
/// HTTP status.
pub fn handle_evaluate_json(body: &str) -> (u16, String) {
    let req: EvaluateRequest = match serde_json::from_str(body) {
        Ok(r) => r,
        Err(e) => return schema_error(format!("malformed request: {e}")),
    };
    if req.schema != SCHEMA_VERSION {
        return schema_error(format!(
            "unsupported schema {}, expected {SCHEMA_VERSION}",
            req.schema
        ));
    }
    if let Some(vp) = &req.viewport {
        if vp.validate().is_err() {
            return schema_error("viewport needs a finite center and positive half_extent and aspect".into());
        }
    }
    let response = handle_evaluate(&req);
    (200, serde_json::to_string(&response).expect("response serializes"))
}
