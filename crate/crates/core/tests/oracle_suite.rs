use std::collections::BTreeMap;

use emrate::hankel_integrals::{ClosedFormContext, ClosedForms, IntegralKey, IntegralSource};
use emrate::oracle::{run_suite, run_suite_with, CheckReport, CHECKS};
use emrate::Result;
use num_complex::Complex64;

/// Closed forms with the sign of the cross term in the `(l, l, -2)` form flipped.
struct FlippedCrossTerm;

impl IntegralSource for FlippedCrossTerm {
    fn name(&self) -> &str {
        "flipped-cross-term"
    }
    fn integral(&self, key: IntegralKey, zeta: f64) -> Result<Complex64> {
        let value = ClosedForms.integral(key, zeta)?;
        if key.n != -2 || key.ell1 != key.ell2 {
            return Ok(value);
        }
        let ctx = ClosedFormContext::new(key.ell1 + 1, zeta)?;
        let l = key.ell1 as i64;
        let cross = ctx.h(l) * ctx.h(l + 1) * ((2 * l + 1) as f64 / (2.0 * zeta));
        Ok(value - cross * 2.0)
    }
}

fn by_id(reports: &[CheckReport]) -> BTreeMap<&str, &CheckReport> {
    reports.iter().map(|r| (r.check_id.as_str(), r)).collect()
}

#[test]
fn integral_suite_passes() {
    let reports = run_suite("integrals", None).unwrap();
    assert_eq!(reports.len(), 4);
    for r in &reports {
        assert!(r.passed, "{r:?}");
        assert_eq!(r.passed, r.max_rel_err <= r.tolerance);
    }
}

#[test]
fn reports_are_deterministic_and_sorted() {
    let a = run_suite("rates", None).unwrap();
    let b = run_suite("rates", Some(&BTreeMap::new())).unwrap();
    assert_eq!(a, b);
    let ids: Vec<_> = a.iter().map(|r| r.check_id.clone()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(a.iter().all(|r| r.passed), "{a:#?}");
}

#[test]
fn overrides_replace_tolerances() {
    let mut map = BTreeMap::new();
    map.insert("asymptotics.near_contact".to_string(), 1e-6);
    let reports = run_suite("asymptotics", Some(&map)).unwrap();
    let r = by_id(&reports)["asymptotics.near_contact"];
    assert_eq!(r.tolerance, 1e-6);
    assert!(!r.passed);
    assert!(by_id(&reports)["asymptotics.far_agreement_z5"].passed);
}

#[test]
fn corrupted_closed_form_is_caught_by_the_dual_path() {
    let reports = run_suite_with("all", None, &FlippedCrossTerm).unwrap();
    assert_eq!(reports.len(), CHECKS.len());
    let r = by_id(&reports);
    let dual = r["integrals.dual_path"];
    assert!(!dual.passed);
    assert!(dual.worst_case.contains(", -2)"), "{}", dual.worst_case);
    for id in [
        "rates.series_vs_volume",
        "rates.normalization_series",
        "rates.normalization_far",
        "rates.null_contrast",
        "asymptotics.far_agreement_z5",
        "asymptotics.far_agreement_z10",
        "asymptotics.near_contact",
        "asymptotics.dipole_limit_contact",
    ] {
        assert!(r[id].passed, "{id}: {:?}", r[id]);
    }
}
