//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs with `cargo test -p trigonlab-cli --test acceptance`.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use trigonlab_cli::protocol::FIT_PADDING;
use trigonlab_cli::{fit_viewport, handle_evaluate_json, render_svg, RenderStyle};
use trigonlab_core::constructions::*;
use trigonlab_core::dsl::{self, Overrides};
use trigonlab_core::geom::*;
use trigonlab_core::lab::*;

const SEED: u64 = 42;
const FIGURES: [&str; 10] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig10", "fig11"];

type Verdict = Result<String, String>;

fn triangles(n: usize, seed: u64) -> Vec<Triangle> {
    let sampler = TriangleSampler::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sampler.sample(&mut rng)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_budget(elapsed: Duration) -> Result<(), String> {
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}, limit 1s"))
}

fn suite(name: &str, trials: usize) -> Result<Vec<CheckReport>, String> {
    let config = TrialConfig {
        trials,
        seed: SEED,
        tolerance: 1e-9,
        ..TrialConfig::default()
    };
    run_suite(&config, &[name]).map_err(|e| e.to_string())
}

fn all_pass(reports: &[CheckReport]) -> Result<f64, String> {
    let worst = reports.iter().map(CheckReport::max_residual).fold(0.0, f64::max);
    match reports.iter().position(|r| !r.passed) {
        None => Ok(worst),
        Some(i) => Err(format!(
            "trial {i} failed ({:?}), max residual {:e}",
            reports[i].residuals.iter().find(|(_, v)| v.is_nan() || *v > reports[i].tolerance),
            worst
        )),
    }
}

fn medial_halving() -> Verdict {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for t in triangles(1000, SEED) {
        let (parent, child) = (t.side_lengths(), medial_triangle(&t).side_lengths());
        for k in 0..3 {
            worst = worst.max((child[k] - parent[k] / 2.0).abs() / parent[k]);
        }
    }
    within_budget(start.elapsed())?;
    ensure(worst <= 1e-12, || format!("relative error {worst:e} > 1e-12"))?;
    Ok(format!("1000 triangles, max relative error {worst:.1e}, {:?}", start.elapsed()))
}

fn median_concurrency() -> Verdict {
    let start = Instant::now();
    let reports = suite("median_concurrency", 1000)?;
    within_budget(start.elapsed())?;
    let worst = all_pass(&reports)?;
    for r in &reports {
        for i in 0..3 {
            let ratio = r.measured_value(&format!("ratio_{i}")).ok_or("ratio missing")?;
            ensure((ratio - 2.0).abs() <= 1e-9, || format!("split ratio {ratio}"))?;
        }
    }
    Ok(format!("1000 trials, max residual {worst:.1e}, {:?}", start.elapsed()))
}

fn euler_line() -> Verdict {
    let reports = suite("euler_line", 1000)?;
    let worst = all_pass(&reports)?;
    for r in &reports {
        let ratio = r.measured_value("ratio").ok_or("ratio missing")?;
        ensure((ratio - 2.0).abs() <= 1e-9, || format!("|GH|/|GO| = {ratio}"))?;
    }
    Ok(format!("1000 trials, max residual {worst:.1e}"))
}

fn euler_iteration() -> Verdict {
    let mut worst: f64 = 0.0;
    for t in triangles(1000, SEED) {
        let r = check_euler_iteration(&t, 4, 1e-9).map_err(|e| e.to_string())?;
        let needed = ["collinearity", "ortho_1_circum_0", "ortho_4_circum_3", "ratio_oh_0", "ratio_go_3"];
        for label in needed {
            ensure(r.residual_value(label).is_some(), || format!("{label} missing"))?;
        }
        ensure(r.passed, || format!("failed: {:?}", r.residuals))?;
        worst = worst.max(r.max_residual());
    }
    Ok(format!("n=4 over 1000 triangles, max residual {worst:.1e}"))
}

fn circumscription() -> Verdict {
    let tris = triangles(100, SEED);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for k in 1..=24 {
        let theta = Angle::from_degrees(5.0 * k as f64);
        for t in &tris {
            let r = check_circumscription(t, theta, 1e-9).map_err(|e| e.to_string())?;
            ensure(r.passed, || format!("{}°: {:?}", 5 * k, r.residuals))?;
            let rotation = r.measured_value("rotation").ok_or("rotation missing")?;
            ensure((rotation + theta.radians()).abs() <= 1e-9, || format!("rotation {rotation}"))?;
            worst = worst.max(r.max_residual());
            count += 1;
        }
    }
    let mut zero: f64 = 0.0;
    for t in &tris {
        for orient in [Orientation::Clockwise, Orientation::Counterclockwise] {
            let u = circumscribe_similar(t, Angle::ZERO, orient).map_err(|e| e.to_string())?;
            for (a, b) in t.vertices().iter().zip(u.vertices()) {
                zero = zero.max(a.distance(b) / t.scene_scale());
            }
        }
    }
    ensure(zero <= 1e-12, || format!("theta = 0 moved vertices by {zero:e}"))?;
    Ok(format!("{count} cases, max residual {worst:.1e}, theta=0 error {zero:.1e}"))
}

fn log_spiral() -> Verdict {
    let mut scale: f64 = 0.0;
    let mut rot: f64 = 0.0;
    for t in triangles(100, SEED) {
        let r = check_spiral(&t, Angle::from_degrees(15.0), 10, 1e-9).map_err(|e| e.to_string())?;
        let s = r.residual_value("scale_ratio_spread").ok_or("missing")?;
        let q = r.residual_value("rotation_spread").ok_or("missing")?;
        ensure(s < 1e-9 && q < 1e-9, || format!("spreads {s:e}, {q:e}"))?;
        scale = scale.max(s);
        rot = rot.max(q);
    }
    Ok(format!("n=10 over 100 triangles, ratio spread {scale:.1e}, rotation spread {rot:.1e} rad"))
}

fn brocard_convergence() -> Verdict {
    let mut to_brocard: f64 = 0.0;
    let mut invariance: f64 = 0.0;
    for t in triangles(100, SEED) {
        let r = check_spiral_pair(&t, Angle::from_degrees(10.0), Angle::from_degrees(25.0), 10, 1e-6)
            .map_err(|e| e.to_string())?;
        let a = r.residual_value("fixed_point_vs_brocard").ok_or("missing")?;
        let b = r.residual_value("fixed_point_theta_invariance").ok_or("missing")?;
        ensure(a <= 1e-6 && b <= 1e-6, || format!("{a:e}, {b:e}"))?;
        to_brocard = to_brocard.max(a);
        invariance = invariance.max(b);
    }
    Ok(format!("fixed point vs Brocard {to_brocard:.1e}, 10° vs 25° {invariance:.1e}"))
}

fn vertex_circles() -> Verdict {
    let thetas = [10.0, 20.0, 35.0].map(Angle::from_degrees);
    let mut worst: f64 = 0.0;
    for t in triangles(100, SEED) {
        let r = check_vertex_circles(&t, &thetas, 1e-9).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("{:?}", r.residuals))?;
        ensure(r.residual_value("common_vs_brocard").is_some(), || "common point unchecked".into())?;
        worst = worst.max(r.max_residual());
    }
    Ok(format!("100 triangles, max residual {worst:.1e}"))
}

fn equal_angles() -> Verdict {
    let cot = |x: f64| x.cos() / x.sin();
    let mut spread: f64 = 0.0;
    let mut oracle_gap: f64 = 0.0;
    for t in triangles(1000, SEED) {
        let x = brocard_point(&t).map_err(|e| e.to_string())?;
        let angles = brocard_angles_at(&t, x).map_err(|e| e.to_string())?.map(Angle::radians);
        let [a, b, c] = t.angles().map(Angle::radians);
        let oracle = (1.0 / (cot(a) + cot(b) + cot(c))).atan();
        for i in 0..3 {
            spread = spread.max((angles[i] - angles[(i + 1) % 3]).abs());
            oracle_gap = oracle_gap.max((angles[i] - oracle).abs());
        }
    }
    ensure(spread <= 1e-9, || format!("pairwise spread {spread:e}"))?;
    ensure(oracle_gap <= 1e-9, || format!("oracle gap {oracle_gap:e}"))?;
    Ok(format!("1000 triangles, spread {spread:.1e}, vs arccot oracle {oracle_gap:.1e}"))
}

fn inscribed_angle() -> Verdict {
    let worst = all_pass(&suite("inscribed_angle", 1000)?)?;
    let c = Circle::new(Point::ORIGIN, 1.0).map_err(|e| e.to_string())?;
    let chord = Segment::new(Point::new(-0.8, -0.6), Point::new(0.8, -0.6));
    let on = [Point::new(0.0, 1.0), Point::new(0.6, 0.8), Point::new(-0.96, 0.28)];
    let inside = Point::new(0.1, 0.3);
    let outside = Point::new(-0.2, 1.6);
    let mut vertices = on.to_vec();
    vertices.extend([inside, outside]);
    let r = check_inscribed_angle(&c, &chord, &vertices, 1e-9).map_err(|e| e.to_string())?;
    ensure(r.passed, || format!("{:?}", r.residuals))?;
    let angle = |p: Point| angle_at(p, chord.p, chord.q).map(Angle::radians).map_err(|e| e.to_string());
    let reference = angle(on[0])?;
    for p in &on[1..] {
        ensure((angle(*p)? - reference).abs() <= 1e-9, || "on-circle angles differ".into())?;
    }
    ensure(angle(inside)? > reference + 1e-9, || "interior vertex not larger".into())?;
    ensure(angle(outside)? < reference - 1e-9, || "exterior vertex not smaller".into())?;
    Ok(format!("1000 random setups (max residual {worst:.1e}) and the inside/outside figure"))
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn dsl_corpus() -> Verdict {
    let mut polygons_fig2 = 0;
    for fig in FIGURES {
        let source = fs::read_to_string(corpus_dir().join(format!("{fig}.geo"))).map_err(|e| format!("{fig}: {e}"))?;
        let tokens = dsl::tokenize(&source).map_err(|e| format!("{fig}: {e}"))?;
        let program = dsl::parse(&tokens).map_err(|e| format!("{fig}: {e}"))?;
        let valid = dsl::resolve(program).map_err(|e| format!("{fig}: {e}"))?;
        let scene = dsl::evaluate(&valid, &Overrides::new()).map_err(|e| format!("{fig}: {e}"))?;
        let vp = fit_viewport(&scene, 1.0, FIT_PADDING).map_err(|e| e.to_string())?;
        let svg = render_svg(&scene, &vp, &RenderStyle::default());
        roxmltree::Document::parse(&svg).map_err(|e| format!("{fig}: {e}"))?;
        ensure(svg == render_svg(&scene, &vp, &RenderStyle::default()), || format!("{fig} unstable"))?;
        let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{fig}.svg"));
        let stored = fs::read_to_string(&golden).map_err(|e| format!("{}: {e}", golden.display()))?;
        ensure(stored == svg, || format!("{fig} differs from its golden file"))?;
        if fig == "fig2" {
            polygons_fig2 = svg.matches("<polygon").count();
        }
    }
    ensure(polygons_fig2 == 9, || format!("fig2 has {polygons_fig2} polygons"))?;
    Ok(format!("{} programs clean, fig2 has 9 polygons, golden files match", FIGURES.len()))
}

fn determinism() -> Verdict {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_trigonlab"))
            .args(["check", "--suite", "all", "--trials", "100", "--seed", "42"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success(), || format!("check exited {:?}", a.status.code()))?;
    ensure(a.stdout == b.stdout, || "check reports differ".into())?;
    let digest: String = Sha256::digest(&a.stdout).iter().map(|b| format!("{b:02x}")).collect();

    let source = fs::read_to_string(corpus_dir().join("fig7.geo")).map_err(|e| e.to_string())?;
    let body = serde_json::json!({"schema": 1, "source": source, "overrides": {"A": [-1.1, -0.7]}}).to_string();
    let first = handle_evaluate_json(&body);
    for _ in 0..5 {
        ensure(handle_evaluate_json(&body) == first, || "evaluate responses differ".into())?;
    }
    ensure(first.0 == 200, || format!("evaluate status {}", first.0))?;
    Ok(format!("check report sha256 {}, evaluate repeated 6x", &digest[..16]))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("medial halving", medial_halving),
        ("median concurrency and 2:1", median_concurrency),
        ("euler line", euler_line),
        ("euler iteration", euler_iteration),
        ("circumscription similarity", circumscription),
        ("log-spiral property", log_spiral),
        ("brocard convergence and theta-invariance", brocard_convergence),
        ("vertex-circle invariance and concurrency", vertex_circles),
        ("equal angles at x", equal_angles),
        ("inscribed angle", inscribed_angle),
        ("dsl corpus", dsl_corpus),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
