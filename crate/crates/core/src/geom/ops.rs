use std::f64::consts::PI;

use super::{scene_scale, Angle, Circle, GeomError, Line, Point, DEGENERACY_EPS, PARALLEL_EPS};

/// Tangency band for circle intersections, relative to the larger radius.
const TANGENCY_EPS: f64 = 1e-9;

pub fn midpoint(p: Point, q: Point) -> Point {
    Point::new((p.x + q.x) / 2.0, (p.y + q.y) / 2.0)
}

fn ensure_distinct(p: Point, q: Point) -> Result<(), GeomError> {
    p.ensure_finite()?;
    q.ensure_finite()?;
    if p.distance(q) < DEGENERACY_EPS * scene_scale(&[p, q]) {
        return Err(GeomError::CoincidentPoints);
    }
    Ok(())
}

pub fn line_through(p: Point, q: Point) -> Result<Line, GeomError> {
    ensure_distinct(p, q)?;
    Line::new(p, q - p)
}

pub fn intersect_lines(l1: &Line, l2: &Line) -> Result<Point, GeomError> {
    let (d1, d2) = (l1.direction(), l2.direction());
    let denom = d1.cross(d2);
    if denom.abs() < PARALLEL_EPS {
        return Err(GeomError::ParallelLines);
    }
    let t = (l2.anchor() - l1.anchor()).cross(d2) / denom;
    l1.point_at(t).ensure_finite()
}

pub fn perpendicular_bisector(p: Point, q: Point) -> Result<Line, GeomError> {
    ensure_distinct(p, q)?;
    Line::new(midpoint(p, q), (q - p).perp())
}

pub fn perpendicular_through(p: Point, l: &Line) -> Result<Line, GeomError> {
    Line::new(p, l.direction().perp())
}

pub fn circle_through(p: Point, q: Point, r: Point) -> Result<Circle, GeomError> {
    for v in [p, q, r] {
        v.ensure_finite()?;
    }
    let (u, w) = (q - p, r - p);
    let longest = u.norm().max(w.norm()).max(q.distance(r));
    let twice_area = u.cross(w);
    let proper = twice_area.abs() >= DEGENERACY_EPS * longest * longest;
    if !proper || longest == 0.0 {
        return Err(GeomError::CollinearPoints);
    }
    let d = 2.0 * twice_area;
    let (uu, ww) = (u.dot(u), w.dot(w));
    let offset = Point::new((w.y * uu - u.y * ww) / d, (u.x * ww - w.x * uu) / d);
    Circle::new(p + offset, offset.norm())
}

/// Common points of two circles, ordered with the point left of the
/// `c1 → c2` center line first.
pub fn intersect_circles(c1: &Circle, c2: &Circle) -> Result<Vec<Point>, GeomError> {
    let (r1, r2) = (c1.radius(), c2.radius());
    let rmax = r1.max(r2);
    let delta = c2.center() - c1.center();
    let d = delta.norm();
    if d <= DEGENERACY_EPS * rmax {
        if (r1 - r2).abs() <= DEGENERACY_EPS * rmax {
            return Err(GeomError::IdenticalCircles);
        }
        return Ok(Vec::new());
    }
    let along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h2 = r1 * r1 - along * along;
    let band = TANGENCY_EPS * rmax;
    if h2 < -(band * band) {
        return Ok(Vec::new());
    }
    let unit = delta * (1.0 / d);
    let base = c1.center() + unit * along;
    if h2 <= band * band {
        return Ok(vec![base]);
    }
    let offset = unit.perp() * h2.sqrt();
    Ok(vec![base + offset, base - offset])
}

/// Unsigned angle at `vertex` between the rays towards `p` and `q`.
pub fn angle_at(vertex: Point, p: Point, q: Point) -> Result<Angle, GeomError> {
    ensure_distinct(vertex, p)?;
    ensure_distinct(vertex, q)?;
    let (u, w) = (p - vertex, q - vertex);
    Ok(Angle::from_radians(u.cross(w).abs().atan2(u.dot(w))))
}

/// Counterclockwise angle in `(−π, π]` turning `from_dir` onto `to_dir`.
pub fn signed_angle(from_dir: Point, to_dir: Point) -> Angle {
    let r = from_dir.cross(to_dir).atan2(from_dir.dot(to_dir));
    Angle::from_radians(if r <= -PI { PI } else { r })
}

pub fn rotate_about(p: Point, center: Point, theta: Angle) -> Point {
    center + (p - center).rotated(theta)
}

pub fn point_on_circle(c: &Circle, p: Point, tol: f64) -> bool {
    (p.distance(c.center()) - c.radius()).abs() <= tol * c.radius()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn close(a: Point, b: Point, tol: f64) -> bool {
        a.distance(b) <= tol
    }

    #[test]
    fn midpoint_examples() {
        assert_eq!(midpoint(pt(0., 0.), pt(2., 0.)), pt(1., 0.));
        assert_eq!(midpoint(pt(1., 1.), pt(1., 1.)), pt(1., 1.));
        assert_eq!(midpoint(pt(-3., 4.), pt(5., -2.)), pt(1., 1.));
    }

    #[test]
    fn line_through_examples() {
        let l = line_through(pt(0., 0.), pt(1., 0.)).unwrap();
        assert_eq!((l.anchor(), l.direction()), (pt(0., 0.), pt(1., 0.)));
        let l = line_through(pt(0., 0.), pt(0., 5.)).unwrap();
        assert_eq!(l.direction(), pt(0., 1.));
        assert_eq!(
            line_through(pt(2., 2.), pt(2., 2.)),
            Err(GeomError::CoincidentPoints)
        );
    }

    #[test]
    fn intersect_lines_examples() {
        let xa = Line::new(pt(0., 0.), pt(1., 0.)).unwrap();
        let ya = Line::new(pt(0., 0.), pt(0., 1.)).unwrap();
        assert!(close(intersect_lines(&xa, &ya).unwrap(), pt(0., 0.), 1e-15));

        let diag = line_through(pt(0., 0.), pt(1., 1.)).unwrap();
        let anti = line_through(pt(0., 2.), pt(2., 0.)).unwrap();
        assert!(close(intersect_lines(&diag, &anti).unwrap(), pt(1., 1.), 1e-15));

        let y1 = Line::new(pt(0., 1.), pt(1., 0.)).unwrap();
        assert_eq!(intersect_lines(&xa, &y1), Err(GeomError::ParallelLines));
    }

    #[test]
    fn perpendicular_bisector_examples() {
        let l = perpendicular_bisector(pt(0., 0.), pt(2., 0.)).unwrap();
        assert_eq!(l.anchor(), pt(1., 0.));
        assert!(l.direction().x.abs() < 1e-15);
        let l = perpendicular_bisector(pt(0., 0.), pt(0., 2.)).unwrap();
        assert_eq!(l.anchor(), pt(0., 1.));
        assert!(l.direction().y.abs() < 1e-15);
        assert_eq!(
            perpendicular_bisector(pt(1., 1.), pt(1., 1.)),
            Err(GeomError::CoincidentPoints)
        );
    }

    #[test]
    fn perpendicular_through_examples() {
        let xa = Line::new(pt(0., 0.), pt(1., 0.)).unwrap();
        let l = perpendicular_through(pt(3., 4.), &xa).unwrap();
        assert_eq!(l.anchor(), pt(3., 4.));
        assert_eq!(l.direction(), pt(0., 1.));

        let on = perpendicular_through(pt(5., 0.), &xa).unwrap();
        assert_eq!(on.anchor(), pt(5., 0.));

        let slanted = Line::new(pt(1., 0.), pt(1., 1.)).unwrap();
        let l = perpendicular_through(pt(0., 0.), &slanted).unwrap();
        assert!(close(l.direction(), pt(-1., 1.) * (1.0 / SQRT_2), 1e-15));
    }

    #[test]
    fn circle_through_examples() {
        let c = circle_through(pt(1., 0.), pt(0., 1.), pt(-1., 0.)).unwrap();
        assert!(close(c.center(), pt(0., 0.), 1e-15));
        assert!((c.radius() - 1.0).abs() < 1e-15);

        let c = circle_through(pt(0., 0.), pt(2., 0.), pt(0., 2.)).unwrap();
        assert!(close(c.center(), pt(1., 1.), 1e-15));
        assert!((c.radius() - SQRT_2).abs() < 1e-15);

        assert_eq!(
            circle_through(pt(0., 0.), pt(1., 0.), pt(2., 0.)),
            Err(GeomError::CollinearPoints)
        );
        assert_eq!(
            circle_through(pt(0., 0.), pt(0., 0.), pt(0., 0.)),
            Err(GeomError::CollinearPoints)
        );
    }

    #[test]
    fn intersect_circles_examples() {
        let unit = |x: f64| Circle::new(pt(x, 0.), 1.0).unwrap();
        assert_eq!(intersect_circles(&unit(0.), &unit(2.)).unwrap(), vec![pt(1., 0.)]);

        let lens = intersect_circles(&unit(0.), &unit(1.)).unwrap();
        assert_eq!(lens.len(), 2);
        let h = 3f64.sqrt() / 2.0;
        assert!(close(lens[0], pt(0.5, h), 1e-15));
        assert!(close(lens[1], pt(0.5, -h), 1e-15));

        assert!(intersect_circles(&unit(0.), &unit(5.)).unwrap().is_empty());
        assert_eq!(
            intersect_circles(&unit(0.), &unit(0.)),
            Err(GeomError::IdenticalCircles)
        );
        let inner = Circle::new(pt(0., 0.), 0.5).unwrap();
        assert!(intersect_circles(&unit(0.), &inner).unwrap().is_empty());
    }

    #[test]
    fn angle_examples() {
        let o = pt(0., 0.);
        let a = angle_at(o, pt(1., 0.), pt(0., 1.)).unwrap().radians();
        assert!((a - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(angle_at(o, pt(1., 0.), pt(2., 0.)).unwrap().radians(), 0.0);
        assert_eq!(angle_at(o, pt(1., 0.), pt(-1., 0.)).unwrap().radians(), PI);
        assert_eq!(angle_at(o, o, pt(1., 0.)), Err(GeomError::CoincidentPoints));
    }

    #[test]
    fn signed_angle_examples() {
        assert_eq!(signed_angle(pt(1., 0.), pt(0., 1.)).radians(), FRAC_PI_2);
        assert_eq!(signed_angle(pt(1., 0.), pt(0., -1.)).radians(), -FRAC_PI_2);
        assert_eq!(signed_angle(pt(1., 0.), pt(1., 0.)).radians(), 0.0);
        assert_eq!(signed_angle(pt(1., 0.), pt(-1., -0.0)).radians(), PI);
    }

    #[test]
    fn rotate_about_examples() {
        let r = rotate_about(pt(1., 0.), pt(0., 0.), Angle::from_radians(FRAC_PI_2));
        assert!(close(r, pt(0., 1.), 1e-15));
        assert_eq!(rotate_about(pt(3., -7.), pt(2., 2.), Angle::ZERO), pt(3., -7.));
        let r = rotate_about(pt(2., 0.), pt(1., 0.), Angle::from_radians(PI));
        assert!(close(r, pt(0., 0.), 1e-15));
    }

    #[test]
    fn point_on_circle_examples() {
        let c = Circle::new(pt(0., 0.), 1.0).unwrap();
        assert!(point_on_circle(&c, pt(1., 0.), 1e-9));
        assert!(!point_on_circle(&c, pt(0., 0.), 1e-9));
        assert!(point_on_circle(&c, pt(1. + 5e-10, 0.), 1e-9));
    }
}
