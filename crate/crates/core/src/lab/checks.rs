use std::f64::consts::PI;

use super::{CheckError, CheckReport};
use crate::constructions::{
    brocard_angles_at, brocard_point, circumscribe_similar, euler_data, euler_iteration_chain,
    iterate_circumscribe, median_segments, refine_second_intersection, vertex_circle,
};
use crate::geom::{
    angle_at, circle_through, intersect_circles, intersect_lines, line_through,
    similarity_between, similarity_fixed_point, Angle, Circle, Orientation, Point,
    Segment, Triangle,
};

fn max_pairwise(points: &[Point]) -> f64 {
    let mut m: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            m = m.max(p.distance(*q));
        }
    }
    m
}

fn relative_spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    (max - min) / mean.abs()
}

fn spread(values: &[f64]) -> f64 {
    values.iter().cloned().fold(f64::MIN, f64::max) - values.iter().cloned().fold(f64::MAX, f64::min)
}

/// Medians meet in one point that splits each of them 2:1 from the vertex.
pub fn check_median_concurrency(t: &Triangle, tol: f64) -> Result<CheckReport, CheckError> {
    let scale = t.scene_scale();
    let medians = median_segments(t);
    let lines = medians
        .iter()
        .map(|m| line_through(m.p, m.q))
        .collect::<Result<Vec<_>, _>>()?;
    let meets = [
        intersect_lines(&lines[0], &lines[1])?,
        intersect_lines(&lines[1], &lines[2])?,
        intersect_lines(&lines[2], &lines[0])?,
    ];
    let mut r = CheckReport::new("median_concurrency", tol);
    r.residual("concurrency_01_12", meets[0].distance(meets[1]) / scale);
    r.residual("concurrency_12_20", meets[1].distance(meets[2]) / scale);
    r.residual("concurrency_20_01", meets[2].distance(meets[0]) / scale);
    let common = Point::new(
        (meets[0].x + meets[1].x + meets[2].x) / 3.0,
        (meets[0].y + meets[1].y + meets[2].y) / 3.0,
    );
    for (i, m) in medians.iter().enumerate() {
        let ratio = m.p.distance(common) / common.distance(m.q);
        r.residual(format!("split_ratio_{i}"), (ratio - 2.0).abs());
        r.measure(format!("ratio_{i}"), ratio);
    }
    r.measure("concurrency_x", common.x);
    r.measure("concurrency_y", common.y);
    r.measure("raw_concurrency", max_pairwise(&meets));
    Ok(r.finish())
}

fn push_euler_line(
    r: &mut CheckReport,
    prefix: &str,
    t: &Triangle,
    scale: f64,
) -> Result<(), CheckError> {
    let d = euler_data(t)?;
    let (g, o, h) = (d.centroid, d.circumcenter, d.orthocenter);
    let ratio = g.distance(h) / g.distance(o);
    r.residual(format!("{prefix}centroid_off_line"), d.line.distance_to(g) / scale);
    r.residual(format!("{prefix}ratio_gh_go"), (ratio - 2.0).abs());
    r.residual(
        format!("{prefix}betweenness"),
        (o.distance(g) + g.distance(h) - o.distance(h)).abs() / scale,
    );
    r.measure(format!("{prefix}ratio"), ratio);
    Ok(())
}

/// Centroid lies between circumcenter and orthocenter, twice as far from the latter.
pub fn check_euler_line(t: &Triangle, tol: f64) -> Result<CheckReport, CheckError> {
    let mut r = CheckReport::new("euler_line", tol);
    push_euler_line(&mut r, "", t, t.scene_scale())?;
    Ok(r.finish())
}

/// Along a medial chain the orthocenter of each triangle is the circumcenter
/// of its parent, all centers share one line, and center distances halve.
pub fn check_euler_iteration(t: &Triangle, n: usize, tol: f64) -> Result<CheckReport, CheckError> {
    let scale = t.scene_scale();
    let chain = euler_iteration_chain(t, n)?;
    let mut r = CheckReport::new("euler_iteration", tol);
    push_euler_line(&mut r, "", t, scale)?;
    let line = chain[0].line;
    let mut off_line: f64 = 0.0;
    for d in &chain {
        for p in [d.centroid, d.circumcenter, d.orthocenter] {
            off_line = off_line.max(line.distance_to(p));
        }
    }
    r.residual("collinearity", off_line / scale);
    for (k, w) in chain.windows(2).enumerate() {
        r.residual(
            format!("ortho_{}_circum_{}", k + 1, k),
            w[1].orthocenter.distance(w[0].circumcenter) / scale,
        );
        let oh = w[0].circumcenter.distance(w[0].orthocenter)
            / w[1].circumcenter.distance(w[1].orthocenter);
        let go = w[0].centroid.distance(w[0].circumcenter)
            / w[1].centroid.distance(w[1].circumcenter);
        r.residual(format!("ratio_oh_{k}"), (oh - 2.0).abs());
        r.residual(format!("ratio_go_{k}"), (go - 2.0).abs());
        r.measure(format!("ratio_oh_{k}"), oh);
    }
    Ok(r.finish())
}

/// The clockwise circumscribed triangle is similar to `t`, turned by `theta`,
/// and each of its side lines carries a vertex of `t`.
pub fn check_circumscription(t: &Triangle, theta: Angle, tol: f64) -> Result<CheckReport, CheckError> {
    let outer = circumscribe_similar(t, theta, Orientation::Clockwise)?;
    let scale = outer.scene_scale();
    let mut r = CheckReport::new("circumscription", tol);
    let (inner_angles, outer_angles) = (t.angles(), outer.angles());
    for i in 0..3 {
        r.residual(
            format!("angle_mismatch_{i}"),
            (outer_angles[i].radians() - inner_angles[i].radians()).abs(),
        );
    }
    let ratios: Vec<f64> = (0..3).map(|k| outer.side(k).length() / t.side(k).length()).collect();
    r.residual("side_ratio_spread", relative_spread(&ratios));
    let expected = -theta.radians();
    for k in 0..3 {
        let rot = similarity_between(&t.side(k), &outer.side(k))?.rotation();
        let diff = Angle::from_radians(rot.radians() - expected).normalized_signed();
        r.residual(format!("rotation_{k}"), diff.radians().abs());
        if k == 0 {
            r.measure("rotation", rot.radians());
        }
    }
    for (i, v) in t.vertices().iter().enumerate() {
        let d = (0..3)
            .map(|k| {
                let s = outer.side(k);
                line_through(s.p, s.q).map(|l| l.distance_to(*v))
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .fold(f64::MAX, f64::min);
        r.residual(format!("incidence_{i}"), d / scale);
    }
    r.measure("scale_ratio", ratios[0]);
    Ok(r.finish())
}

/// Iterated clockwise circumscription is one fixed spiral similarity centered
/// at the Brocard point, wherever the angle is set.
pub fn check_spiral(t: &Triangle, theta: Angle, n: usize, tol: f64) -> Result<CheckReport, CheckError> {
    let companion = Angle::from_radians(theta.radians() / 2.0);
    check_spiral_pair(t, theta, companion, n, tol)
}

fn spiral_fixed_point(
    t: &Triangle,
    theta: Angle,
    n: usize,
) -> Result<(Point, Vec<f64>, Vec<f64>), CheckError> {
    let chain = iterate_circumscribe(t, theta, Orientation::Clockwise, n)?;
    let mut scales = Vec::with_capacity(n);
    let mut rotations = Vec::with_capacity(n);
    let mut first = None;
    for w in chain.triangles().windows(2) {
        let s = similarity_between(&w[0].side(0), &w[1].side(0))?;
        scales.push(s.scale());
        rotations.push(s.rotation().radians());
        first.get_or_insert(s);
    }
    let s = first.ok_or_else(|| CheckError::InvalidArgument("spiral needs n >= 1".into()))?;
    Ok((similarity_fixed_point(&s)?, scales, rotations))
}

/// [`check_spiral`] with an explicit second angle for the invariance cross-check.
pub fn check_spiral_pair(
    t: &Triangle,
    theta: Angle,
    second: Angle,
    n: usize,
    tol: f64,
) -> Result<CheckReport, CheckError> {
    if n < 2 {
        return Err(CheckError::InvalidArgument(format!("spiral check needs n >= 2, got {n}")));
    }
    let scale = t.scene_scale();
    let (fixed, scales, rotations) = spiral_fixed_point(t, theta, n)?;
    let (fixed2, _, _) = spiral_fixed_point(t, second, n)?;
    let brocard = brocard_point(t)?;
    let mut r = CheckReport::new("spiral", tol);
    r.residual("scale_ratio_spread", relative_spread(&scales));
    r.residual("rotation_spread", spread(&rotations));
    r.residual("fixed_point_vs_brocard", fixed.distance(brocard) / scale);
    r.residual("fixed_point_theta_invariance", fixed.distance(fixed2) / scale);
    r.measure("scale_ratio", scales[0]);
    r.measure("rotation", rotations[0]);
    r.measure("fixed_x", fixed.x);
    r.measure("fixed_y", fixed.y);
    r.measure("second_theta", second.radians());
    Ok(r.finish())
}

/// Vertex circles do not depend on the angle, all three pass through one
/// point, and that point sees the sides under equal angles.
pub fn check_vertex_circles(
    t: &Triangle,
    thetas: &[Angle],
    tol: f64,
) -> Result<CheckReport, CheckError> {
    if thetas.is_empty() {
        return Err(CheckError::InvalidArgument("no probe angles".into()));
    }
    if thetas.iter().any(|a| a.radians() == 0.0) {
        return Err(CheckError::InvalidArgument("probe angles must be nonzero".into()));
    }
    let [a, b, c] = t.vertices();
    let circumradius = circle_through(a, b, c)?.radius();
    let mut r = CheckReport::new("vertex_circles", tol);
    let mut base: Vec<Circle> = Vec::with_capacity(3);
    for k in 0..3 {
        let circles = thetas
            .iter()
            .map(|th| vertex_circle(t, k, *th))
            .collect::<Result<Vec<_>, _>>()?;
        let c0 = circles[0];
        let center_spread = max_pairwise(&circles.iter().map(|c| c.center()).collect::<Vec<_>>());
        let radii: Vec<f64> = circles.iter().map(|c| c.radius()).collect();
        r.residual(format!("side_{k}_center_spread"), center_spread / c0.radius());
        r.residual(format!("side_{k}_radius_spread"), relative_spread(&radii));
        base.push(c0);
    }
    let mut meets = Vec::with_capacity(3);
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let shared = t.vertex(3 - i - j);
        let p = intersect_circles(&base[i], &base[j])?
            .into_iter()
            .map(|p| refine_second_intersection(&base[i], &base[j], shared, p))
            .filter(|p| p.distance(shared) > 1e-9 * circumradius)
            .min_by(|p, q| {
                let pd = base[3 - i - j].center().distance(*p) - base[3 - i - j].radius();
                let qd = base[3 - i - j].center().distance(*q) - base[3 - i - j].radius();
                pd.abs().total_cmp(&qd.abs())
            })
            .ok_or(CheckError::Geom(crate::geom::GeomError::DegenerateTriangle))?;
        meets.push(p);
    }
    r.residual("concurrency", max_pairwise(&meets) / circumradius);
    let common = Point::new(
        meets.iter().map(|p| p.x).sum::<f64>() / 3.0,
        meets.iter().map(|p| p.y).sum::<f64>() / 3.0,
    );
    let angles = brocard_angles_at(t, common)?.map(|a| a.radians());
    r.residual("equal_angles", spread(&angles));
    r.residual(
        "common_vs_brocard",
        common.distance(brocard_point(t)?) / circumradius,
    );
    r.measure("common_x", common.x);
    r.measure("common_y", common.y);
    r.measure("brocard_angle", angles.iter().sum::<f64>() / 3.0);
    Ok(r.finish())
}

/// Classification of a vertex against the circle in [`check_inscribed_angle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InscribedVerdict {
    OnCircle,
    Inside,
    Outside,
}

impl InscribedVerdict {
    fn label(self) -> &'static str {
        match self {
            InscribedVerdict::OnCircle => "on",
            InscribedVerdict::Inside => "inside",
            InscribedVerdict::Outside => "outside",
        }
    }
}

/// Angles subtending `chord` from vertices on the circle agree with the
/// inscribed angle of that arc; interior vertices see more, exterior less.
///
/// Each vertex is compared with the arc on its own side of the chord. The
/// strict verdicts need a margin above `tol`; a vertex within `tol·radius`
/// of the circle counts as on it. A wrong verdict is an infinite residual.
pub fn check_inscribed_angle(
    c: &Circle,
    chord: &Segment,
    vertices: &[Point],
    tol: f64,
) -> Result<CheckReport, CheckError> {
    let on_circle = |p: Point| (p.distance(c.center()) - c.radius()).abs() <= tol * c.radius();
    if !on_circle(chord.p) || !on_circle(chord.q) {
        return Err(CheckError::ChordNotOnCircle);
    }
    let line = line_through(chord.p, chord.q)?;
    let normal = line.direction().perp();
    let arc_angle = |side: f64| -> Result<f64, CheckError> {
        let apex = c.center() + normal * (side * c.radius());
        Ok(angle_at(apex, chord.p, chord.q)?.radians())
    };
    let references = [arc_angle(1.0)?, arc_angle(-1.0)?];
    let mut r = CheckReport::new("inscribed_angle", tol);
    let mut on: Vec<(usize, usize, f64)> = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        let offset = line.side_of(*v);
        if offset.abs() <= tol * c.radius() {
            return Err(CheckError::VertexOnChordLine(i));
        }
        let side = usize::from(offset < 0.0);
        let reference = references[side];
        let angle = angle_at(*v, chord.p, chord.q)?.radians();
        let radial = v.distance(c.center()) - c.radius();
        let verdict = if radial.abs() <= tol * c.radius() {
            InscribedVerdict::OnCircle
        } else if radial < 0.0 {
            InscribedVerdict::Inside
        } else {
            InscribedVerdict::Outside
        };
        let residual = match verdict {
            InscribedVerdict::OnCircle => {
                on.push((i, side, angle));
                (angle - reference).abs()
            }
            InscribedVerdict::Inside if angle - reference > tol => 0.0,
            InscribedVerdict::Outside if reference - angle > tol => 0.0,
            _ => f64::INFINITY,
        };
        r.residual(format!("vertex_{i}_{}", verdict.label()), residual);
        r.measure(format!("angle_{i}"), angle);
    }
    for (n, &(i, si, ai)) in on.iter().enumerate() {
        for &(j, sj, aj) in &on[n + 1..] {
            if si == sj {
                r.residual(format!("pair_{i}_{j}"), (ai - aj).abs());
            }
        }
    }
    r.measure("reference_left", references[0]);
    r.measure("reference_right", references[1]);
    debug_assert!((references[0] + references[1] - PI).abs() < 1e-9);
    Ok(r.finish())
}
