use super::{circle_through, intersect_lines, line_through, perpendicular_through, GeomError, Point, Triangle};

pub fn centroid(t: &Triangle) -> Point {
    let [a, b, c] = t.vertices();
    Point::new((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0)
}

/// Center of the circle through the three vertices.
pub fn circumcenter(t: &Triangle) -> Result<Point, GeomError> {
    let [a, b, c] = t.vertices();
    Ok(circle_through(a, b, c)?.center())
}

/// Intersection of the altitudes from vertices 0 and 1.
///
/// Computed in a frame anchored at vertex 0 so the result does not lose
/// digits to a large common offset.
pub fn orthocenter(t: &Triangle) -> Result<Point, GeomError> {
    let [a, b, c] = t.vertices();
    let (b, c) = (b - a, c - a);
    let o = Point::ORIGIN;
    let from_a = perpendicular_through(o, &line_through(b, c)?)?;
    let from_b = perpendicular_through(b, &line_through(c, o)?)?;
    Ok(intersect_lines(&from_a, &from_b)? + a)
}
