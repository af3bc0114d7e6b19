//! Planar geometry kernel: primitives, intersections, circles, angles,
//! direct similarities and the classic triangle centers.
//!
//! Everything is plain binary64 arithmetic with dimensionless degeneracy
//! thresholds; no exact predicates.

mod centers;
mod ops;
mod primitives;
mod similarity;

pub use centers::{centroid, circumcenter, orthocenter};
pub use ops::{
    angle_at, circle_through, intersect_circles, intersect_lines, line_through, midpoint,
    perpendicular_bisector, perpendicular_through, point_on_circle, rotate_about, signed_angle,
};
pub use primitives::{Angle, Circle, Line, Orientation, Point, Segment, Triangle};
pub use similarity::{similarity_between, similarity_fixed_point, Similarity};

use thiserror::Error;

/// Relative threshold for degenerate triangles and segments.
pub const DEGENERACY_EPS: f64 = 1e-12;

/// Two unit directions are parallel when their cross product is below this.
pub const PARALLEL_EPS: f64 = 1e-12;

/// Default iteration cap for chained constructions.
pub const ITERATION_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("points coincide")]
    CoincidentPoints,
    #[error("lines are parallel")]
    ParallelLines,
    #[error("points are collinear")]
    CollinearPoints,
    #[error("circles are identical")]
    IdenticalCircles,
    #[error("segment is degenerate")]
    DegenerateSegment,
    #[error("similarity is a pure translation and has no fixed point")]
    NoFixedPoint,
    #[error("triangle is degenerate")]
    DegenerateTriangle,
    #[error("circle radius must be positive")]
    NonPositiveRadius,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("circumscribed triangle is degenerate for this angle")]
    DegenerateCircumscription,
    #[error("angle {0} rad is outside (-pi, pi]")]
    InvalidAngle(f64),
    #[error("iteration count {requested} exceeds the cap of {cap}")]
    IterationCapExceeded { requested: usize, cap: usize },
    #[error("side index {0} is not 0, 1 or 2")]
    InvalidSideIndex(usize),
    #[error("triangle is equilateral; circumcenter and orthocenter coincide at ({}, {})", .center.x, .center.y)]
    EquilateralDegenerate { center: Point },
}

/// Largest pairwise distance among `points`, floored at 1.0.
pub fn scene_scale(points: &[Point]) -> f64 {
    let mut best: f64 = 1.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(p.distance(*q));
        }
    }
    best
}
