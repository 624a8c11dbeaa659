use std::collections::BTreeSet;

use jacobi_core::gallery;
use jacobi_core::report::Status;
use jacobi_core::structure::{self, run, RunOptions, RunReport, CHECKS};

fn run_all() -> Vec<(&'static str, RunReport)> {
    gallery::names()
        .map(|n| {
            let f = gallery::load(n).unwrap().unwrap_or_else(|e| panic!("{n}: {e}"));
            (n, run(&f, &RunOptions::default()).unwrap_or_else(|e| panic!("{n}: {e}")))
        })
        .collect()
}

#[test]
fn every_fixture_meets_its_expectations() {
    for (name, rep) in run_all() {
        for c in &rep.checks {
            assert!(c.expect.is_some(), "{name}: {} has no expectation", c.check);
            assert_eq!(Some(c.verdict), c.expect, "{name}: {}\n{}", c.check, c.report.render_text());
        }
        assert!(rep.expectations_met());
    }
}

#[test]
fn every_check_is_falsified_with_a_printed_residual() {
    let mut falsified = BTreeSet::new();
    for (_, rep) in run_all() {
        for c in rep.checks.iter().filter(|c| c.verdict == Status::Fail) {
            let nonzero = c.report.failures().any(|i| i.residual.as_deref().is_some_and(|r| !r.is_empty() && r != "0"));
            if nonzero {
                falsified.insert(c.check.clone());
            }
        }
    }
    for (name, _) in CHECKS {
        assert!(falsified.contains(*name), "no failing fixture for {name}");
    }
}

#[test]
fn headline_fixtures_pass() {
    for name in ["std-contact-r3", "symplectic-r2", "complex-r2", "poisson-type-r4", "b-transform-r4"] {
        let f = gallery::load(name).unwrap().unwrap();
        let rep = run(&f, &RunOptions::default()).unwrap();
        assert_eq!(rep.verdict, Status::Pass, "{name}");
        assert_eq!(rep.exit_code(), 0);
    }
    let f = gallery::load("std-contact-r3").unwrap().unwrap();
    let rep = run(&f, &RunOptions::default()).unwrap();
    let contact = rep.checks.iter().find(|c| c.check == "contact-form").unwrap();
    assert!(contact.report.items.iter().any(|i| i.name.starts_with("gcs") && i.status == Status::Pass));
}

#[test]
fn failing_fixture_exit_code() {
    let f = gallery::load("broken-cocycle").unwrap().unwrap();
    let rep = run(&f, &RunOptions::default()).unwrap();
    assert_eq!(rep.verdict, Status::Fail);
    assert_eq!(rep.exit_code(), 1);
}

#[test]
fn reports_are_deterministic() {
    for name in gallery::names() {
        let f = gallery::load(name).unwrap().unwrap();
        let a = run(&f, &RunOptions::default()).unwrap();
        let b = run(&f, &RunOptions::default()).unwrap();
        assert_eq!(a.render_text(), b.render_text());
        assert_eq!(a.render_json(), b.render_json());
    }
}

#[test]
fn use_reference_loads_a_fixture() {
    let f = structure::parse("use = \"std-contact-r3\"\n").unwrap();
    let direct = gallery::load("std-contact-r3").unwrap().unwrap();
    assert_eq!(f.coords, direct.coords);
    assert_eq!(f.checks.len(), direct.checks.len());
    let a = run(&f, &RunOptions::default()).unwrap();
    let b = run(&direct, &RunOptions::default()).unwrap();
    assert_eq!(a.render_json(), b.render_json());
}

#[test]
fn unknown_names() {
    assert!(gallery::load("no-such-fixture").is_none());
    assert!(structure::parse("use = \"no-such-fixture\"\n").is_err());
}
