//! Line-oriented and JSON forms of a theorem-check run.
//!
//! Text form, one line per check in suite order:
//!
//! ```text
//! check <name> <pass|fail> residual=<max> trials=<n> passed=<k> tol=<t>
//! ```
//!
//! A failing check is followed by up to [`MAX_FAILURE_LINES`] indented
//! `trial=<i> seed=<s> <label>=<value>` lines naming its worst residual, and
//! the run ends with `suite <pass|fail> checks=<n>`.

use serde::Serialize;
use trigonlab_core::lab::{summarize, CheckReport, CheckSummary, TrialConfig};

pub const MAX_FAILURE_LINES: usize = 5;

fn sci(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.3e}")
    } else {
        format!("{v}")
    }
}

fn worst(r: &CheckReport) -> (&str, f64) {
    r.residuals
        .iter()
        .fold(("none", 0.0), |acc, (label, v)| {
            if v.is_nan() || *v > acc.1 {
                (label.as_str(), *v)
            } else {
                acc
            }
        })
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

pub fn format_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    let summaries = summarize(reports);
    for s in &summaries {
        let verdict = if s.all_passed() { "pass" } else { "fail" };
        out.push_str(&format!(
            "check {} {verdict} residual={} trials={} passed={} tol={}\n",
            s.name,
            sci(s.max_residual),
            s.trials,
            s.passed,
            sci(s.tolerance)
        ));
        let failures = reports.iter().filter(|r| r.name == s.name).enumerate().filter(|(_, r)| !r.passed);
        for (trial, r) in failures.take(MAX_FAILURE_LINES) {
            let (label, v) = worst(r);
            let seed = r.trial_seed.map_or_else(|| "-".to_string(), |s| s.to_string());
            out.push_str(&format!("  trial={trial} seed={seed} {label}={}\n", sci(v)));
        }
    }
    let verdict = if all_passed(reports) { "pass" } else { "fail" };
    out.push_str(&format!("suite {verdict} checks={}\n", summaries.len()));
    out
}

#[derive(Serialize)]
struct JsonRun<'a> {
    schema: u32,
    trials: usize,
    seed: u64,
    tolerance: f64,
    passed: bool,
    summaries: Vec<CheckSummary>,
    reports: &'a [CheckReport],
}

pub fn format_json(config: &TrialConfig, reports: &[CheckReport]) -> String {
    let run = JsonRun {
        schema: 1,
        trials: config.trials,
        seed: config.seed,
        tolerance: config.tolerance,
        passed: all_passed(reports),
        summaries: summarize(reports),
        reports,
    };
    let mut s = serde_json::to_string_pretty(&run).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use trigonlab_core::lab::run_suite;

    #[test]
    fn text_lines() {
        let config = TrialConfig {
            trials: 3,
            ..TrialConfig::default()
        };
        let reports = run_suite(&config, &["median_concurrency", "euler_line"]).unwrap();
        let text = format_text(&reports);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("check median_concurrency pass residual="));
        assert!(lines[0].ends_with("trials=3 passed=3 tol=1.000e-9"));
        assert_eq!(lines[2], "suite pass checks=2");
        let json: serde_json::Value = serde_json::from_str(&format_json(&config, &reports)).unwrap();
        assert_eq!(json["passed"], true);
        assert_eq!(json["reports"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn failures_are_listed() {
        let config = TrialConfig {
            trials: 4,
            tolerance: 1e-30,
            ..TrialConfig::default()
        };
        let reports = run_suite(&config, &["euler_line"]).unwrap();
        let text = format_text(&reports);
        assert!(text.starts_with("check euler_line fail"));
        assert!(text.contains("\n  trial="));
        assert!(text.ends_with("suite fail checks=1\n"));
    }
}
