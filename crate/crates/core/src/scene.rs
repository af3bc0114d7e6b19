//! Styled drawable primitives produced by evaluating a construction program.

use serde::{Deserialize, Serialize};

use crate::geom::Point;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Point { at: Point },
    Segment { p: Point, q: Point },
    Line { anchor: Point, direction: Point },
    Circle { center: Point, radius: f64 },
    Polygon { vertices: Vec<Point> },
    Label { at: Point, text: String },
}

impl Shape {
    pub fn kind(&self) -> &'static str {
        match self {
            Shape::Point { .. } => "point",
            Shape::Segment { .. } => "segment",
            Shape::Line { .. } => "line",
            Shape::Circle { .. } => "circle",
            Shape::Polygon { .. } => "polygon",
            Shape::Label { .. } => "label",
        }
    }

    /// Axis-aligned bounds `(min, max)`. Lines contribute only their anchor.
    pub fn bounds(&self) -> (Point, Point) {
        let span = |pts: &[Point]| {
            let mut lo = pts[0];
            let mut hi = pts[0];
            for p in &pts[1..] {
                lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
                hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
            }
            (lo, hi)
        };
        match self {
            Shape::Point { at } | Shape::Label { at, .. } => (*at, *at),
            Shape::Segment { p, q } => span(&[*p, *q]),
            Shape::Line { anchor, .. } => (*anchor, *anchor),
            Shape::Circle { center, radius } => (
                *center - Point::new(*radius, *radius),
                *center + Point::new(*radius, *radius),
            ),
            Shape::Polygon { vertices } => span(vertices),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Primitive {
    #[serde(flatten)]
    pub shape: Shape,
    /// Palette name or `#rrggbb`.
    pub color: String,
    /// Stroke width in device pixels; `None` uses the renderer default.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stroke: Option<f64>,
    pub layer: i32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Scene {
    pub primitives: Vec<Primitive>,
    /// Zoom center: the Brocard point of the first circumscribed triangle.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub focus: Option<Point>,
}

impl Scene {
    pub fn is_empty(&self) -> bool {
        self.primitives.is_empty()
    }

    pub fn len(&self) -> usize {
        self.primitives.len()
    }

    pub fn count_kind(&self, kind: &str) -> usize {
        self.primitives.iter().filter(|p| p.shape.kind() == kind).count()
    }

    /// Primitives sorted by layer; draw order is kept within a layer.
    pub fn layered(&self) -> Vec<&Primitive> {
        let mut out: Vec<&Primitive> = self.primitives.iter().collect();
        out.sort_by_key(|p| p.layer);
        out
    }

    /// Union of all primitive bounds, or `None` for an empty scene.
    pub fn bounds(&self) -> Option<(Point, Point)> {
        self.primitives.iter().map(|p| p.shape.bounds()).reduce(|(lo, hi), (a, b)| {
            (
                Point::new(lo.x.min(a.x), lo.y.min(a.y)),
                Point::new(hi.x.max(b.x), hi.y.max(b.y)),
            )
        })
    }
}

/// Color names a program may use; renderers map each to an RGB value.
pub const PALETTE_NAMES: [&str; 11] = [
    "black", "red", "green", "blue", "orange", "purple", "gray", "yellow", "cyan", "magenta", "brown",
];

/// Colors stepped through by `color=cycle`, one per iteration pass.
pub const CYCLE_COLORS: [&str; 6] = ["red", "orange", "yellow", "green", "blue", "purple"];

pub const DEFAULT_COLOR: &str = "black";
