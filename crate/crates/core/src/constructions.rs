//! The iterated similar-triangle constructions: medial triangles and their
//! medians, circumscription at a given rotation angle, vertex circles, the
//! Brocard point, and Euler-line data.
//!
//! Vertex and side conventions follow [`Triangle`]: vertices 0, 1, 2; side
//! `k` is opposite vertex `k`; edge `i` runs from vertex `i` to `i + 1`.
//!
//! # Circumscription
//!
//! Every edge line `i` is turned by the requested angle about one of its
//! endpoints (the *pivot*), and vertex `j` of the new triangle is the
//! intersection of turned lines `j − 1` and `j`. With a zero angle the lines
//! are the sides themselves and the triangle is reproduced.
//!
//! The pivot is chosen so that turning in the requested sense moves every
//! line away from the triangle, i.e. the result encloses it:
//!
//! | vertex order | sense            | pivot       |
//! |--------------|------------------|-------------|
//! | ccw          | clockwise        | start (`i`) |
//! | ccw          | counterclockwise | end (`i+1`) |
//! | cw           | clockwise        | end (`i+1`) |
//! | cw           | counterclockwise | start (`i`) |
//!
//! The two senses are mirror images of each other and converge to the two
//! different Brocard points. [`brocard_point`] is the clockwise one.

use crate::geom::{
    angle_at, centroid, circle_through, circumcenter, intersect_circles, intersect_lines,
    line_through, midpoint, orthocenter, Angle, Circle, GeomError, Line, Orientation, Point,
    Segment, Triangle, ITERATION_CAP,
};

/// Colors assigned to the medians by vertex index.
pub const MEDIAN_COLORS: [&str; 3] = ["red", "green", "blue"];

/// Probe angle used to locate the Brocard point from two vertex circles.
pub const BROCARD_PROBE_ANGLE: f64 = 0.3;

const BROCARD_PROBE_RETRIES: usize = 4;

/// Scale ratio below which a circumscribed triangle is considered collapsed.
const COLLAPSE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainStep {
    Medial,
    Circumscribe { theta: Angle, orientation: Orientation },
}

/// Triangles produced by repeating one construction; index 0 is the input.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleChain {
    triangles: Vec<Triangle>,
    step: ChainStep,
}

impl TriangleChain {
    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn step(&self) -> ChainStep {
        self.step
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn first(&self) -> &Triangle {
        &self.triangles[0]
    }

    pub fn last(&self) -> &Triangle {
        self.triangles.last().expect("chain is never empty")
    }

    fn build(
        t: &Triangle,
        n: usize,
        step: ChainStep,
        next: impl Fn(&Triangle) -> Result<Triangle, GeomError>,
    ) -> Result<TriangleChain, GeomError> {
        if n > ITERATION_CAP {
            return Err(GeomError::IterationCapExceeded {
                requested: n,
                cap: ITERATION_CAP,
            });
        }
        let mut triangles = Vec::with_capacity(n + 1);
        triangles.push(*t);
        for _ in 0..n {
            let prev = triangles.last().expect("non-empty");
            triangles.push(next(prev)?);
        }
        Ok(TriangleChain { triangles, step })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerData {
    pub centroid: Point,
    pub circumcenter: Point,
    pub orthocenter: Point,
    pub line: Line,
}

/// Triangle joining the side midpoints; vertex `k` is the midpoint of side `k`.
pub fn medial_triangle(t: &Triangle) -> Triangle {
    let [a, b, c] = t.vertices();
    Triangle::new(midpoint(b, c), midpoint(c, a), midpoint(a, b))
        .expect("medial triangle of a valid triangle is valid")
}

/// Median `i` joins vertex `i` to the midpoint of side `i`.
pub fn median_segments(t: &Triangle) -> [Segment; 3] {
    [0, 1, 2].map(|i| {
        let s = t.side(i);
        Segment::new(t.vertex(i), midpoint(s.p, s.q))
    })
}

pub fn iterate_medial(t: &Triangle, n: usize) -> Result<TriangleChain, GeomError> {
    TriangleChain::build(t, n, ChainStep::Medial, |prev| Ok(medial_triangle(prev)))
}

fn pivots_at_start(t: &Triangle, orient: Orientation) -> bool {
    (orient == Orientation::Clockwise) == (t.orientation() == Orientation::Counterclockwise)
}

fn check_angle(theta: Angle) -> Result<(), GeomError> {
    if theta.radians().is_finite() && theta.is_signed_range() {
        Ok(())
    } else {
        Err(GeomError::InvalidAngle(theta.radians()))
    }
}

/// The three turned edge lines of the circumscription.
fn turned_lines(t: &Triangle, theta: Angle, orient: Orientation) -> Result<[Line; 3], GeomError> {
    let turn = Angle::from_radians(orient.sign() * theta.radians());
    let start = pivots_at_start(t, orient);
    let mut lines = Vec::with_capacity(3);
    for i in 0..3 {
        let edge = t.edge(i);
        let pivot = if start { edge.p } else { edge.q };
        lines.push(Line::new(pivot, edge.vector().rotated(turn))?);
    }
    Ok([lines[0], lines[1], lines[2]])
}

/// Similar triangle around `t` whose sides pass through the vertices of `t`,
/// turned by `theta` in the sense given by `orient`.
///
/// Vertex `j` of the result corresponds to vertex `j` of `t`.
pub fn circumscribe_similar(
    t: &Triangle,
    theta: Angle,
    orient: Orientation,
) -> Result<Triangle, GeomError> {
    check_angle(theta)?;
    if theta.radians() == 0.0 {
        return Ok(*t);
    }
    let lines = turned_lines(t, theta, orient)?;
    let mut vertices = [Point::ORIGIN; 3];
    for (j, v) in vertices.iter_mut().enumerate() {
        *v = intersect_lines(&lines[(j + 2) % 3], &lines[j])
            .map_err(|_| GeomError::DegenerateCircumscription)?;
    }
    let out = Triangle::from_vertices(vertices).map_err(|_| GeomError::DegenerateCircumscription)?;
    if out.longest_side() < COLLAPSE_EPS * t.longest_side() {
        return Err(GeomError::DegenerateCircumscription);
    }
    Ok(out)
}

pub fn iterate_circumscribe(
    t: &Triangle,
    theta: Angle,
    orient: Orientation,
    n: usize,
) -> Result<TriangleChain, GeomError> {
    check_angle(theta)?;
    let step = ChainStep::Circumscribe {
        theta,
        orientation: orient,
    };
    TriangleChain::build(t, n, step, |prev| circumscribe_similar(prev, theta, orient))
}

/// Index of the circumscribed vertex that lies on the circle through the
/// endpoints of side `k`.
fn circle_vertex_index(t: &Triangle, side: usize, orient: Orientation) -> usize {
    if pivots_at_start(t, orient) {
        (side + 2) % 3
    } else {
        (side + 1) % 3
    }
}

/// Circle through the endpoints of side `side_index` and the matching vertex
/// of the clockwise circumscribed triangle.
pub fn vertex_circle(t: &Triangle, side_index: usize, theta: Angle) -> Result<Circle, GeomError> {
    vertex_circle_oriented(t, side_index, theta, Orientation::Clockwise)
}

pub fn vertex_circle_oriented(
    t: &Triangle,
    side_index: usize,
    theta: Angle,
    orient: Orientation,
) -> Result<Circle, GeomError> {
    if side_index > 2 {
        return Err(GeomError::InvalidSideIndex(side_index));
    }
    let outer = circumscribe_similar(t, theta, orient)?;
    let side = t.side(side_index);
    let corner = outer.vertex(circle_vertex_index(t, side_index, orient));
    circle_through(side.p, side.q, corner)
}

/// The three angles that coincide at the Brocard point of the given sense.
///
/// For the clockwise sense on a counterclockwise triangle these are
/// `∠(p, v0, v1)`, `∠(p, v1, v2)`, `∠(p, v2, v0)`.
pub(crate) fn equal_angle_triple(
    t: &Triangle,
    p: Point,
    orient: Orientation,
) -> Result<[Angle; 3], GeomError> {
    let start = pivots_at_start(t, orient);
    let mut out = [Angle::ZERO; 3];
    for (i, a) in out.iter_mut().enumerate() {
        let (here, next) = (t.vertex(i), t.vertex(i + 1));
        *a = if start {
            angle_at(here, p, next)?
        } else {
            angle_at(next, p, here)?
        };
    }
    Ok(out)
}

/// Angles `∠(p, v, w)` at the clockwise Brocard point's sides.
pub fn brocard_angles_at(t: &Triangle, p: Point) -> Result<[Angle; 3], GeomError> {
    equal_angle_triple(t, p, Orientation::Clockwise)
}

fn spread(angles: &[Angle; 3]) -> f64 {
    let r = angles.map(|a| a.radians());
    r.iter().cloned().fold(f64::MIN, f64::max) - r.iter().cloned().fold(f64::MAX, f64::min)
}

/// Two circles through a known common point `shared` meet again at its mirror
/// image across the line of centers. That reflection is better conditioned
/// than the generic intersection when the circles are large or meet at a
/// shallow angle, so `rough` is replaced by it when the two agree.
pub(crate) fn refine_second_intersection(c0: &Circle, c1: &Circle, shared: Point, rough: Point) -> Point {
    let Ok(axis) = line_through(c0.center(), c1.center()) else {
        return rough;
    };
    let foot = axis.point_at((shared - axis.anchor()).dot(axis.direction()));
    let mirrored = foot * 2.0 - shared;
    let tol = 1e-6 * c0.radius().max(c1.radius());
    if mirrored.is_finite() && mirrored.distance(rough) <= tol {
        mirrored
    } else {
        rough
    }
}

pub(crate) fn brocard_point_oriented(t: &Triangle, orient: Orientation) -> Result<Point, GeomError> {
    let circumradius = circle_through(t.a(), t.b(), t.c())?.radius();
    let shared = t.vertex(2);
    let mut probe = BROCARD_PROBE_ANGLE;
    let mut last_err = GeomError::DegenerateTriangle;
    for _ in 0..=BROCARD_PROBE_RETRIES {
        let theta = Angle::from_radians(probe);
        probe /= 2.0;
        let circles = vertex_circle_oriented(t, 0, theta, orient)
            .and_then(|c0| Ok((c0, vertex_circle_oriented(t, 1, theta, orient)?)));
        let (c0, c1) = match circles {
            Ok(c) => c,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let candidates: Vec<Point> = match intersect_circles(&c0, &c1) {
            Ok(pts) => pts
                .into_iter()
                .filter(|p| p.distance(shared) > 1e-9 * circumradius)
                .collect(),
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let best = candidates
            .into_iter()
            .map(|p| refine_second_intersection(&c0, &c1, shared, p))
            .filter_map(|p| equal_angle_triple(t, p, orient).ok().map(|a| (p, spread(&a))))
            .min_by(|x, y| x.1.total_cmp(&y.1));
        match best {
            Some((p, _)) => return Ok(p),
            None => last_err = GeomError::DegenerateTriangle,
        }
    }
    Err(last_err)
}

/// Common point of the vertex circles, where the clockwise circumscription
/// spiral converges.
pub fn brocard_point(t: &Triangle) -> Result<Point, GeomError> {
    brocard_point_oriented(t, Orientation::Clockwise)
}

/// Mean of the three equal angles at [`brocard_point`].
pub fn brocard_angle(t: &Triangle) -> Result<Angle, GeomError> {
    let p = brocard_point(t)?;
    let angles = brocard_angles_at(t, p)?;
    Ok(Angle::from_radians(
        angles.iter().map(|a| a.radians()).sum::<f64>() / 3.0,
    ))
}

pub fn euler_data(t: &Triangle) -> Result<EulerData, GeomError> {
    let g = centroid(t);
    let o = circumcenter(t)?;
    let h = orthocenter(t)?;
    let circumradius = o.distance(t.a());
    if o.distance(h) <= 1e-9 * circumradius {
        return Err(GeomError::EquilateralDegenerate { center: g });
    }
    Ok(EulerData {
        centroid: g,
        circumcenter: o,
        orthocenter: h,
        line: line_through(o, h)?,
    })
}

/// Euler data for every triangle of `iterate_medial(t, n)`.
pub fn euler_iteration_chain(t: &Triangle, n: usize) -> Result<Vec<EulerData>, GeomError> {
    iterate_medial(t, n)?.triangles().iter().map(euler_data).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::similarity_between;
    use std::f64::consts::PI;

    fn tri(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Triangle {
        Triangle::new(Point::new(a.0, a.1), Point::new(b.0, b.1), Point::new(c.0, c.1)).unwrap()
    }

    fn equilateral(side: f64) -> Triangle {
        tri((0., 0.), (side, 0.), (side / 2.0, side * 3f64.sqrt() / 2.0))
    }

    fn scalene() -> Triangle {
        tri((0.3, -0.2), (5.1, 0.4), (1.7, 3.9))
    }

    fn deg(d: f64) -> Angle {
        Angle::from_degrees(d)
    }

    #[test]
    fn medial_examples() {
        let m = medial_triangle(&tri((0., 0.), (4., 0.), (0., 4.)));
        assert_eq!(m.vertices(), [Point::new(2., 2.), Point::new(0., 2.), Point::new(2., 0.)]);

        let t = scalene();
        assert!((medial_triangle(&t).longest_side() - t.longest_side() / 2.0).abs() < 1e-15);

        let e = equilateral(2.0);
        let m = medial_triangle(&e);
        for l in m.side_lengths() {
            assert!((l - 1.0).abs() < 1e-15);
        }
        let s = similarity_between(&e.side(0), &m.side(0)).unwrap();
        assert!((s.rotation().radians().abs() - PI).abs() < 1e-12);
    }

    #[test]
    fn median_examples() {
        let t = tri((0., 0.), (3., 0.), (0., 3.));
        let ms = median_segments(&t);
        assert_eq!(ms[0], Segment::new(Point::new(0., 0.), Point::new(1.5, 1.5)));
        let g = Point::new(1., 1.);
        for m in ms {
            let l = line_through(m.p, m.q).unwrap();
            assert!(l.distance_to(g) < 1e-15);
            let ratio = m.p.distance(g) / g.distance(m.q);
            assert!((ratio - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn iterate_medial_examples() {
        let t = scalene();
        assert_eq!(iterate_medial(&t, 0).unwrap().triangles(), &[t]);

        let big = equilateral(8.0);
        let chain = iterate_medial(&big, 3).unwrap();
        assert_eq!(chain.len(), 4);
        assert!((chain.last().longest_side() - 1.0).abs() < 1e-14);

        let g = centroid(&t);
        for k in iterate_medial(&t, 10).unwrap().triangles() {
            assert!(centroid(k).distance(g) < 1e-9);
        }
        assert!(matches!(
            iterate_medial(&t, 65),
            Err(GeomError::IterationCapExceeded { requested: 65, cap: 64 })
        ));
    }

    #[test]
    fn zero_angle_reproduces_triangle() {
        let t = scalene();
        for o in [Orientation::Clockwise, Orientation::Counterclockwise] {
            assert_eq!(circumscribe_similar(&t, Angle::ZERO, o).unwrap(), t);
        }
    }

    #[test]
    fn circumscribed_sides_pass_through_vertices() {
        for t in [scalene(), tri((0.3, -0.2), (1.7, 3.9), (5.1, 0.4))] {
            for o in [Orientation::Clockwise, Orientation::Counterclockwise] {
                let out = circumscribe_similar(&t, deg(23.0), o).unwrap();
                assert!(out.longest_side() > t.longest_side());
                for v in t.vertices() {
                    let hits = (0..3)
                        .filter(|&k| {
                            let s = out.side(k);
                            line_through(s.p, s.q).unwrap().distance_to(v) < 1e-12 * 10.0
                        })
                        .count();
                    assert_eq!(hits, 1);
                }
            }
        }
    }

    #[test]
    fn measured_rotation_sign_follows_orientation() {
        let t = scalene();
        let cw = circumscribe_similar(&t, deg(20.0), Orientation::Clockwise).unwrap();
        let ccw = circumscribe_similar(&t, deg(20.0), Orientation::Counterclockwise).unwrap();
        let r_cw = similarity_between(&t.side(0), &cw.side(0)).unwrap().rotation();
        let r_ccw = similarity_between(&t.side(0), &ccw.side(0)).unwrap().rotation();
        assert!((r_cw.radians() + deg(20.0).radians()).abs() < 1e-12);
        assert!((r_ccw.radians() - deg(20.0).radians()).abs() < 1e-12);
    }

    #[test]
    fn invalid_angle_rejected() {
        let t = scalene();
        assert_eq!(
            circumscribe_similar(&t, Angle::from_radians(4.0), Orientation::Clockwise),
            Err(GeomError::InvalidAngle(4.0))
        );
        assert!(circumscribe_similar(&t, Angle::from_radians(-PI), Orientation::Clockwise).is_err());
    }

    #[test]
    fn collapse_angle_is_degenerate() {
        // Turning by π − ω sends every line through the Brocard point.
        let t = equilateral(1.0);
        let theta = Angle::from_radians(PI - PI / 6.0);
        assert_eq!(
            circumscribe_similar(&t, theta, Orientation::Clockwise),
            Err(GeomError::DegenerateCircumscription)
        );
    }

    #[test]
    fn vertex_circle_examples() {
        let t = scalene();
        for k in 0..3 {
            let c = vertex_circle(&t, k, deg(15.0)).unwrap();
            let s = t.side(k);
            assert!(crate::geom::point_on_circle(&c, s.p, 1e-12));
            assert!(crate::geom::point_on_circle(&c, s.q, 1e-12));
            let d = vertex_circle(&t, k, deg(40.0)).unwrap();
            assert!(c.center().distance(d.center()) < 1e-9 * c.radius());
            assert!((c.radius() - d.radius()).abs() < 1e-9 * c.radius());
        }
        assert_eq!(vertex_circle(&t, 0, Angle::ZERO), Err(GeomError::CollinearPoints));
        assert_eq!(vertex_circle(&t, 3, deg(10.0)), Err(GeomError::InvalidSideIndex(3)));
    }

    #[test]
    fn brocard_equilateral_is_centroid() {
        let e = equilateral(1.0);
        let p = brocard_point(&e).unwrap();
        assert!(p.distance(Point::new(0.5, 3f64.sqrt() / 6.0)) < 1e-12);
        assert!((brocard_angle(&e).unwrap().radians() - PI / 6.0).abs() < 1e-12);
    }

    #[test]
    fn brocard_right_isoceles_golden() {
        // Rays from (0,0) along (2,1) and from (1,0) along (-3,1) meet at (0.4, 0.2);
        // each makes the angle arccot 2 with its side.
        let t = tri((0., 0.), (1., 0.), (0., 1.));
        let p = brocard_point(&t).unwrap();
        assert!(p.distance(Point::new(0.4, 0.2)) < 1e-12, "{p:?}");
        let omega = 0.5f64.atan();
        for a in brocard_angles_at(&t, p).unwrap() {
            assert!((a.radians() - omega).abs() < 1e-12);
        }
    }

    #[test]
    fn brocard_angle_345() {
        let t = tri((0., 0.), (4., 0.), (0., 3.));
        let expected = (12.0f64 / 25.0).atan();
        assert!((brocard_angle(&t).unwrap().radians() - expected).abs() < 1e-12);
        let scaled = t.map(|p| p * 7.5).unwrap();
        assert!(
            (brocard_angle(&scaled).unwrap().radians() - brocard_angle(&t).unwrap().radians()).abs()
                < 1e-13
        );
    }

    #[test]
    fn brocard_translates_with_triangle() {
        let t = scalene();
        let shift = Point::new(-12.0, 7.5);
        let moved = t.map(|p| p + shift).unwrap();
        let p = brocard_point(&t).unwrap();
        assert!(brocard_point(&moved).unwrap().distance(p + shift) < 1e-11);
    }

    #[test]
    fn brocard_ignores_vertex_order_orientation() {
        // Same geometric triangle listed clockwise: the clockwise Brocard point
        // is a property of the shape, not of the labelling.
        let t = scalene();
        let [a, b, c] = t.vertices();
        let flipped = Triangle::new(a, c, b).unwrap();
        let p = brocard_point(&t).unwrap();
        let q = brocard_point(&flipped).unwrap();
        assert!(p.distance(q) < 1e-11, "{p:?} vs {q:?}");
    }

    #[test]
    fn euler_examples() {
        let d = euler_data(&tri((0., 0.), (2., 0.), (0., 2.))).unwrap();
        assert!(d.circumcenter.distance(Point::new(1., 1.)) < 1e-15);
        assert!(d.orthocenter.norm() < 1e-15);
        assert!(d.centroid.distance(Point::new(2. / 3., 2. / 3.)) < 1e-15);
        let ratio = d.centroid.distance(d.orthocenter) / d.centroid.distance(d.circumcenter);
        assert!((ratio - 2.0).abs() < 1e-12);

        assert!(matches!(
            euler_data(&equilateral(1.0)),
            Err(GeomError::EquilateralDegenerate { .. })
        ));
    }

    #[test]
    fn euler_chain_examples() {
        let t = scalene();
        let single = euler_iteration_chain(&t, 0).unwrap();
        assert_eq!(single, vec![euler_data(&t).unwrap()]);

        let chain = euler_iteration_chain(&t, 4).unwrap();
        for w in chain.windows(2) {
            assert!(w[1].orthocenter.distance(w[0].circumcenter) < 1e-9);
            let d0 = w[0].circumcenter.distance(w[0].orthocenter);
            let d1 = w[1].circumcenter.distance(w[1].orthocenter);
            assert!((d0 / d1 - 2.0).abs() < 1e-9);
        }
    }
}
