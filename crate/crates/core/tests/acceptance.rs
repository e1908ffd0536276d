//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use emrate::hankel_integrals::ClosedForms;
use emrate::oracle::{find_check, Measurement};

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn measure(id: &str) -> Result<(Measurement, f64), String> {
    let check = find_check(id).ok_or_else(|| format!("no check {id}"))?;
    let m = check.measure(&ClosedForms).map_err(|e| e.to_string())?;
    Ok((m, check.tolerance))
}

/// Every listed check must stay within its registered tolerance.
fn checks(ids: &[&str]) -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for id in ids {
        match measure(id) {
            Ok((m, tol)) => {
                let ok = m.max_rel_err <= tol;
                passed &= ok;
                let mut part = format!("{id}: {:.3e} <= {tol:.1e}", m.max_rel_err);
                if !ok {
                    part = format!("{part} violated at {}", m.worst_case);
                }
                parts.push(part);
            }
            Err(e) => {
                passed = false;
                parts.push(format!("{id}: {e}"));
            }
        }
    }
    Outcome {
        passed,
        detail: parts.join("; "),
    }
}

fn timed_checks(ids: &[&str], limit: Duration) -> Outcome {
    let start = Instant::now();
    let mut outcome = checks(ids);
    let elapsed = start.elapsed();
    if elapsed > limit {
        outcome.passed = false;
    }
    outcome.detail = format!(
        "{}; {:.1} s (limit {} s)",
        outcome.detail,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    outcome
}

fn run_figure(id: u8, out: &Path, threads: &str) -> Result<Vec<u8>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_emrate"))
        .args(["figure", "--id", &id.to_string(), "--out"])
        .arg(out)
        .env("EMRATE_THREADS", threads)
        .status()
        .map_err(|e| e.to_string())?;
    if status.code() != Some(0) {
        return Err(format!("figure {id} exited with {status}"));
    }
    std::fs::read(out).map_err(|e| e.to_string())
}

fn curve(bytes: &[u8]) -> Vec<(f64, f64)> {
    String::from_utf8_lossy(bytes)
        .lines()
        .skip(1)
        .map(|l| {
            let mut fields = l.split(',');
            let z = fields
                .next()
                .and_then(|s| s.parse().ok())
                .unwrap_or(f64::NAN);
            let f = fields
                .next()
                .and_then(|s| s.parse().ok())
                .unwrap_or(f64::NAN);
            (z, f)
        })
        .collect()
}

/// Negative, with `|f|` growing steadily towards the first grid points.
fn diverges_negative(c: &[(f64, f64)]) -> bool {
    let head = &c[..10];
    head.iter().all(|&(_, f)| f < 0.0)
        && head.windows(2).all(|w| w[0].1.abs() > w[1].1.abs())
        && c[0].1.abs() > 1.5 * c[9].1.abs()
}

fn figure_regression() -> Outcome {
    let dir = match tempfile::tempdir() {
        Ok(d) => d,
        Err(e) => {
            return Outcome {
                passed: false,
                detail: e.to_string(),
            }
        }
    };
    let mut passed = true;
    let mut parts = Vec::new();
    for id in 1..=4u8 {
        let first = run_figure(id, &dir.path().join(format!("a{id}.csv")), "0");
        let second = run_figure(id, &dir.path().join(format!("b{id}.csv")), "1");
        let (a, b) = match (first, second) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                passed = false;
                parts.push(e);
                continue;
            }
        };
        let identical = a == b;
        let c = curve(&a);
        let smoke = match id {
            1 => c.len() == 400 && c.iter().all(|&(_, f)| f.is_finite()) && c[0].1.abs() < 1.0,
            2 | 3 => c.len() == 400 && diverges_negative(&c),
            _ => c.len() == 400,
        };
        passed &= identical && smoke;
        parts.push(format!(
            "figure {id}: {} bytes, {}, f({}) = {:.4e}{}",
            a.len(),
            if identical { "identical" } else { "DIFFERENT" },
            c[0].0,
            c[0].1,
            if smoke { "" } else { ", smoke check failed" }
        ));
    }
    Outcome {
        passed,
        detail: parts.join("; "),
    }
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (
            "integral dual path",
            Box::new(|| timed_checks(&["integrals.dual_path"], Duration::from_secs(60))),
        ),
        (
            "recurrence ladder",
            Box::new(|| {
                checks(&[
                    "integrals.recurrence_order_shift",
                    "integrals.recurrence_boundary",
                ])
            }),
        ),
        ("J dual path", Box::new(|| checks(&["rates.j_dual_path"]))),
        (
            "series vs volume integral",
            Box::new(|| checks(&["rates.series_vs_volume"])),
        ),
        (
            "far asymptote",
            Box::new(|| {
                checks(&[
                    "asymptotics.far_agreement_z5",
                    "asymptotics.far_agreement_z10",
                    "rates.far_decay_slope",
                ])
            }),
        ),
        (
            "near-contact asymptote",
            Box::new(|| checks(&["asymptotics.near_contact", "asymptotics.near_contact_ratio"])),
        ),
        (
            "point-scatterer limit",
            Box::new(|| {
                checks(&[
                    "asymptotics.dipole_limit_contact",
                    "asymptotics.dipole_limit_small_sphere",
                ])
            }),
        ),
        (
            "null contrast",
            Box::new(|| checks(&["rates.null_contrast"])),
        ),
        (
            "lossless contact finiteness",
            Box::new(|| checks(&["rates.lossless_contact"])),
        ),
        (
            "normalization reductions",
            Box::new(|| checks(&["rates.normalization_series", "rates.normalization_far"])),
        ),
        ("figure regression", Box::new(figure_regression)),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        if !outcome.passed {
            failures += 1;
        }
        println!(
            "{} {:>2} {name}: {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
