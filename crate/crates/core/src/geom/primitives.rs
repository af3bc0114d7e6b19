use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{GeomError, DEGENERACY_EPS};

/// A point (or free vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn rotated(self, theta: Angle) -> Point {
        let (s, c) = theta.radians().sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }

    pub(crate) fn ensure_finite(self) -> Result<Point, GeomError> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(GeomError::NonFinite)
        }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// An angle in radians.
///
/// Unsigned angles produced by [`angle_at`](super::angle_at) lie in `[0, π]`,
/// signed ones from [`signed_angle`](super::signed_angle) in `(−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub const fn from_radians(radians: f64) -> Self {
        Angle(radians)
    }

    pub fn from_degrees(degrees: f64) -> Self {
        Angle(degrees.to_radians())
    }

    pub const fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    /// The same direction expressed in `(−π, π]`.
    pub fn normalized_signed(self) -> Angle {
        let mut r = self.0 % (2.0 * PI);
        if r <= -PI {
            r += 2.0 * PI;
        } else if r > PI {
            r -= 2.0 * PI;
        }
        Angle(r)
    }

    pub fn is_signed_range(self) -> bool {
        self.0 > -PI && self.0 <= PI
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle(-self.0)
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle(self.0 + rhs.0)
    }
}

/// An infinite line: an anchor point and a unit direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    anchor: Point,
    direction: Point,
}

impl Line {
    /// Builds a line from any non-zero direction, normalizing it.
    pub fn new(anchor: Point, direction: Point) -> Result<Line, GeomError> {
        let len = direction.norm();
        if !anchor.is_finite() || !len.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if len == 0.0 {
            return Err(GeomError::CoincidentPoints);
        }
        Ok(Line {
            anchor,
            direction: direction * (1.0 / len),
        })
    }

    pub fn anchor(&self) -> Point {
        self.anchor
    }

    pub fn direction(&self) -> Point {
        self.direction
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.anchor + self.direction * t
    }

    /// Unsigned distance from `p` to the line.
    pub fn distance_to(&self, p: Point) -> f64 {
        self.direction.cross(p - self.anchor).abs()
    }

    /// Signed offset of `p`: positive on the left of the direction.
    pub fn side_of(&self, p: Point) -> f64 {
        self.direction.cross(p - self.anchor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub p: Point,
    pub q: Point,
}

impl Segment {
    pub const fn new(p: Point, q: Point) -> Self {
        Segment { p, q }
    }

    pub fn length(&self) -> f64 {
        self.p.distance(self.q)
    }

    pub fn vector(&self) -> Point {
        self.q - self.p
    }

    pub fn is_finite(&self) -> bool {
        self.p.is_finite() && self.q.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    center: Point,
    radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Circle, GeomError> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(GeomError::NonFinite);
        }
        if radius <= 0.0 {
            return Err(GeomError::NonPositiveRadius);
        }
        Ok(Circle { center, radius })
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Orientation of a vertex triple or a rotation sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
}

impl Orientation {
    pub fn flipped(self) -> Orientation {
        match self {
            Orientation::Clockwise => Orientation::Counterclockwise,
            Orientation::Counterclockwise => Orientation::Clockwise,
        }
    }

    /// `+1` for counterclockwise, `-1` for clockwise.
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Clockwise => -1.0,
            Orientation::Counterclockwise => 1.0,
        }
    }
}

/// A non-degenerate triangle with vertices indexed 0, 1, 2 (`a`, `b`, `c`).
///
/// Side `k` is the side opposite vertex `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Triangle {
    vertices: [Point; 3],
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Triangle, GeomError> {
        Triangle::from_vertices([a, b, c])
    }

    pub fn from_vertices(vertices: [Point; 3]) -> Result<Triangle, GeomError> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let t = Triangle { vertices };
        if t.degeneracy_margin() < DEGENERACY_EPS || !t.degeneracy_margin().is_finite() {
            return Err(GeomError::DegenerateTriangle);
        }
        Ok(t)
    }

    pub fn a(&self) -> Point {
        self.vertices[0]
    }

    pub fn b(&self) -> Point {
        self.vertices[1]
    }

    pub fn c(&self) -> Point {
        self.vertices[2]
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % 3]
    }

    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    /// Directed edge from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> Segment {
        Segment::new(self.vertex(i), self.vertex(i + 1))
    }

    /// Side opposite vertex `k`, oriented from `k + 1` to `k + 2`.
    pub fn side(&self, k: usize) -> Segment {
        Segment::new(self.vertex(k + 1), self.vertex(k + 2))
    }

    pub fn side_lengths(&self) -> [f64; 3] {
        [0, 1, 2].map(|k| self.side(k).length())
    }

    pub fn longest_side(&self) -> f64 {
        let [x, y, z] = self.side_lengths();
        x.max(y).max(z)
    }

    /// Twice the signed area; positive for counterclockwise vertex order.
    pub fn twice_signed_area(&self) -> f64 {
        let [a, b, c] = self.vertices;
        (b - a).cross(c - a)
    }

    /// |2·area| / (longest side)², a dimensionless shape measure.
    pub fn degeneracy_margin(&self) -> f64 {
        let l = self.longest_side();
        self.twice_signed_area().abs() / (l * l)
    }

    pub fn orientation(&self) -> Orientation {
        if self.twice_signed_area() > 0.0 {
            Orientation::Counterclockwise
        } else {
            Orientation::Clockwise
        }
    }

    /// Unsigned interior angle at vertex `i`.
    pub fn angle(&self, i: usize) -> Angle {
        let v = self.vertex(i);
        let (p, q) = (self.vertex(i + 1) - v, self.vertex(i + 2) - v);
        Angle(p.cross(q).abs().atan2(p.dot(q)))
    }

    pub fn angles(&self) -> [Angle; 3] {
        [0, 1, 2].map(|i| self.angle(i))
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> Result<Triangle, GeomError> {
        Triangle::from_vertices(self.vertices.map(f))
    }

    /// Largest pairwise vertex distance, floored at 1.
    pub fn scene_scale(&self) -> f64 {
        super::scene_scale(&self.vertices)
    }
}
