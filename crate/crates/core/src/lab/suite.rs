use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    check_circumscription, check_euler_iteration, check_euler_line, check_inscribed_angle,
    check_median_concurrency, check_spiral, check_vertex_circles, CheckError, CheckReport,
};
use crate::geom::{Angle, Circle, Point, Segment, Triangle, DEGENERACY_EPS};

/// Checks known to [`run_suite`], in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CheckName {
    MedianConcurrency,
    EulerLine,
    EulerIteration,
    Circumscription,
    Spiral,
    VertexCircles,
    InscribedAngle,
}

impl CheckName {
    pub const ALL: [CheckName; 7] = [
        CheckName::MedianConcurrency,
        CheckName::EulerLine,
        CheckName::EulerIteration,
        CheckName::Circumscription,
        CheckName::Spiral,
        CheckName::VertexCircles,
        CheckName::InscribedAngle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::MedianConcurrency => "median_concurrency",
            CheckName::EulerLine => "euler_line",
            CheckName::EulerIteration => "euler_iteration",
            CheckName::Circumscription => "circumscription",
            CheckName::Spiral => "spiral",
            CheckName::VertexCircles => "vertex_circles",
            CheckName::InscribedAngle => "inscribed_angle",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = CheckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| CheckError::UnknownCheckName(s.to_string()))
    }
}

/// Uniform vertices in `[-range, range]²`, rejected until the shape margin
/// `|2·area| / longest²` reaches `min_margin`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleSampler {
    pub range: f64,
    pub min_margin: f64,
}

impl Default for TriangleSampler {
    fn default() -> Self {
        TriangleSampler {
            range: 10.0,
            min_margin: 1e-3,
        }
    }
}

impl TriangleSampler {
    pub fn sample(&self, rng: &mut impl Rng) -> Triangle {
        loop {
            let mut p = || Point::new(rng.random_range(-self.range..=self.range), rng.random_range(-self.range..=self.range));
            let (a, b, c) = (p(), p(), p());
            if let Ok(t) = Triangle::new(a, b, c) {
                if t.degeneracy_margin() >= self.min_margin {
                    return t;
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    pub trials: usize,
    pub seed: u64,
    pub sampler: TriangleSampler,
    pub tolerance: f64,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            trials: 100,
            seed: 42,
            sampler: TriangleSampler::default(),
            tolerance: 1e-9,
        }
    }
}

impl TrialConfig {
    fn validate(&self) -> Result<(), CheckError> {
        let bad = |m: &str| Err(CheckError::InvalidArgument(m.to_string()));
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if !(self.sampler.range > 0.0 && self.sampler.range.is_finite()) {
            return bad("sampler range must be positive");
        }
        // An equilateral triangle has margin √3/2; nothing can exceed it.
        if !(self.sampler.min_margin >= DEGENERACY_EPS && self.sampler.min_margin < 0.8) {
            return bad("sampler margin must lie in [1e-12, 0.8)");
        }
        if self.tolerance.is_nan() || self.tolerance < 0.0 {
            return bad("tolerance must be non-negative");
        }
        Ok(())
    }
}

/// splitmix64 finalizer; spreads consecutive trial indices over the seed space.
fn trial_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed.wrapping_add((index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Angles used by the circumscription trials, cycled by trial index.
const CIRCUMSCRIPTION_DEGREES: [f64; 24] = [
    5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0, 55.0, 60.0, 65.0, 70.0, 75.0,
    80.0, 85.0, 90.0, 95.0, 100.0, 105.0, 110.0, 115.0, 120.0,
];
const SPIRAL_DEGREES: f64 = 15.0;
const SPIRAL_STEPS: usize = 10;
const VERTEX_CIRCLE_DEGREES: [f64; 3] = [10.0, 20.0, 35.0];
const EULER_ITERATION_STEPS: usize = 4;

fn inscribed_setup(rng: &mut ChaCha8Rng, range: f64) -> (Circle, Segment, Vec<Point>) {
    let center = Point::new(rng.random_range(-range..=range), rng.random_range(-range..=range));
    let radius = rng.random_range(0.5..=range.max(1.0));
    let circle = Circle::new(center, radius).expect("positive radius");
    let start = rng.random_range(0.0..TAU);
    let sweep = rng.random_range(0.4..(TAU - 0.4));
    let on = |a: f64| center + Point::new(a.cos(), a.sin()) * radius;
    let (p, q) = (on(start), on(start + sweep));
    // Vertices on the arc running from q back round to p.
    let arc = |u: f64| start + sweep + u * (TAU - sweep);
    let v1 = on(arc(rng.random_range(0.1..0.9)));
    let v2 = on(arc(rng.random_range(0.1..0.9)));
    let top = on(arc(0.5));
    let mid = crate::geom::midpoint(p, q);
    let inside = mid.lerp(top, rng.random_range(0.2..0.8));
    let outside = center + (top - center) * rng.random_range(1.2..2.0);
    (circle, Segment::new(p, q), vec![v1, v2, inside, outside])
}

fn run_one(
    name: CheckName,
    t: &Triangle,
    index: usize,
    rng: &mut ChaCha8Rng,
    config: &TrialConfig,
) -> Result<CheckReport, CheckError> {
    let tol = config.tolerance;
    match name {
        CheckName::MedianConcurrency => check_median_concurrency(t, tol),
        CheckName::EulerLine => check_euler_line(t, tol),
        CheckName::EulerIteration => check_euler_iteration(t, EULER_ITERATION_STEPS, tol),
        CheckName::Circumscription => {
            let deg = CIRCUMSCRIPTION_DEGREES[index % CIRCUMSCRIPTION_DEGREES.len()];
            check_circumscription(t, Angle::from_degrees(deg), tol)
        }
        CheckName::Spiral => check_spiral(t, Angle::from_degrees(SPIRAL_DEGREES), SPIRAL_STEPS, tol),
        CheckName::VertexCircles => {
            let thetas = VERTEX_CIRCLE_DEGREES.map(Angle::from_degrees);
            check_vertex_circles(t, &thetas, tol)
        }
        CheckName::InscribedAngle => {
            let (c, chord, vertices) = inscribed_setup(rng, config.sampler.range);
            check_inscribed_angle(&c, &chord, &vertices, tol)
        }
    }
}

fn failed_report(name: CheckName, tol: f64, err: &CheckError) -> CheckReport {
    let mut r = CheckReport::new(name.as_str(), tol);
    r.residual(format!("error: {err}"), f64::INFINITY);
    r.finish()
}

/// Runs every requested check on `config.trials` sampled triangles.
///
/// Reports are ordered by check (in [`CheckName::ALL`] order) and then by
/// trial index; the output does not depend on thread scheduling. A check
/// that errors on a trial yields a failing report carrying the error.
pub fn run_suite<S: AsRef<str>>(config: &TrialConfig, which: &[S]) -> Result<Vec<CheckReport>, CheckError> {
    config.validate()?;
    let mut names = which
        .iter()
        .map(|s| s.as_ref().parse::<CheckName>())
        .collect::<Result<Vec<_>, _>>()?;
    names.sort();
    names.dedup();
    if names.is_empty() {
        return Ok(Vec::new());
    }
    let per_trial: Vec<Vec<CheckReport>> = (0..config.trials)
        .into_par_iter()
        .map(|index| {
            let seed = trial_seed(config.seed, index);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = config.sampler.sample(&mut rng);
            names
                .iter()
                .map(|&name| {
                    let mut r = run_one(name, &t, index, &mut rng, config)
                        .unwrap_or_else(|e| failed_report(name, config.tolerance, &e));
                    r.trial_seed = Some(seed);
                    r
                })
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(names.len() * config.trials);
    for k in 0..names.len() {
        out.extend(per_trial.iter().map(|reports| reports[k].clone()));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub trials: usize,
    pub passed: usize,
    pub max_residual: f64,
    pub tolerance: f64,
}

impl CheckSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

/// Per-check pass counts, in first-seen order.
pub fn summarize(reports: &[CheckReport]) -> Vec<CheckSummary> {
    let mut out: Vec<CheckSummary> = Vec::new();
    for r in reports {
        let idx = match out.iter().position(|s| s.name == r.name) {
            Some(i) => i,
            None => {
                out.push(CheckSummary {
                    name: r.name.clone(),
                    trials: 0,
                    passed: 0,
                    max_residual: 0.0,
                    tolerance: r.tolerance,
                });
                out.len() - 1
            }
        };
        let s = &mut out[idx];
        s.trials += 1;
        s.passed += usize::from(r.passed);
        let m = r.max_residual();
        s.max_residual = if m.is_nan() || s.max_residual.is_nan() { f64::NAN } else { s.max_residual.max(m) };
    }
    out
}
