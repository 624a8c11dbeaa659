//! End-to-end acceptance run: one line per criterion, nonzero exit if any
//! criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, Output};
use std::time::Instant;

use jacobi_core::algebroid::{JacobiAlgebroid, LieAlgebroid};
use jacobi_core::contact::{build_e1, build_tangent, e1_time_index, verify_almost_contact, verify_conformal_symplectic, verify_contact_form, verify_poisson_type, ContactTriple};
use jacobi_core::courant::{canonical_double, correspondence_suite, verify_gcs, verify_roundtrip, DualStructure, GcsMap, Leg};
use jacobi_core::gallery;
use jacobi_core::identities::{fundamental_sample_count, identity_suite};
use jacobi_core::nijenhuis::{pi_n, verify_jacobi_bivector, verify_quadruple, QuadrupleCandidate};
use jacobi_core::report::Status;
use jacobi_core::sampling::{random_kvector, random_poly, CheckConfig};
use jacobi_core::structure::{run, Object, RunOptions, StructureFile, CHECKS};
use jacobi_core::symalg::endo::inverse_constant_det;
use jacobi_core::symalg::parse::parse_kvector;
use jacobi_core::symalg::{EndoTensor, KVector, Naming, Poly, Variance};

const MV: Variance = Variance::Multivector;
const FORM: Variance = Variance::Form;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn kv(n: &Naming, deg: usize, v: Variance, src: &str) -> KVector {
    parse_kvector(src, n, deg, v).unwrap()
}

fn tangent(coords: &[&str], phi0: &str) -> JacobiAlgebroid {
    let tm = LieAlgebroid::tangent(coords);
    let p = kv(tm.naming(), 1, FORM, phi0);
    let comps: Vec<_> = (0..coords.len()).map(|i| p.coeff(&[i])).collect();
    build_tangent(coords, &comps).unwrap()
}

fn fixture(name: &str) -> StructureFile {
    gallery::load(name).unwrap().unwrap()
}

fn element(f: &StructureFile, name: &str) -> KVector {
    match f.objects.get(name) {
        Some(Object::Element(k)) => k.clone(),
        _ => panic!("{name} is not an element"),
    }
}

fn endo_obj(f: &StructureFile, name: &str) -> EndoTensor {
    match f.objects.get(name) {
        Some(Object::Endo(n)) => n.clone(),
        _ => panic!("{name} is not an endomorphism"),
    }
}

fn j4() -> EndoTensor {
    EndoTensor::from_ints(4, &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]])
}

fn jqn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jqn")).args(args).output().expect("jqn runs")
}

fn engine_identities() -> Outcome {
    let t = Instant::now();
    let reports = identity_suite(&CheckConfig::default());
    let secs = t.elapsed().as_secs_f64();
    for r in &reports {
        ensure(r.is_pass(), format!("{} failed", r.check))?;
    }
    ensure(fundamental_sample_count() >= 50, "too few random bivectors")?;
    ensure(secs < 5.0, format!("took {secs:.2} s"))?;
    Ok(format!("{} hosts, {} random bivectors, {secs:.2} s", reports.len(), fundamental_sample_count()))
}

fn theorem_reproduction() -> Outcome {
    let cfg = CheckConfig::default();
    let r4 = tangent(&["x1", "y1", "x2", "y2"], "0");
    let n4 = r4.naming().clone();
    let e1 = fixture("contact-jacobi-e1");
    let bivectors = [
        (tangent(&["x", "y"], "dx"), "partial_x^partial_y"),
        (tangent(&["x", "y", "z"], "0"), "partial_x^partial_y + x*partial_y^partial_z"),
        (r4.clone(), "x1*(partial_x1^partial_x2 - partial_y1^partial_y2) + y1*(partial_x1^partial_y2 + partial_y1^partial_x2)"),
    ];
    let mut jb = 0;
    for (ja, src) in &bivectors {
        let rep = verify_jacobi_bivector(ja, &kv(ja.naming(), 2, MV, src), &cfg);
        ensure(rep.is_pass(), format!("jacobi bivector {src}"))?;
        jb += 1;
    }
    let rep = verify_jacobi_bivector(&e1.algebroid, &element(&e1, "pi"), &cfg);
    ensure(rep.is_pass(), "contact jacobi bivector on E1")?;
    jb += 1;

    let bt = fixture("b-transform-r4");
    let pairs = [
        (r4.clone(), kv(&n4, 2, MV, "partial_x1^partial_x2 - partial_y1^partial_y2"), j4()),
        (r4.clone(), kv(&n4, 2, MV, bivectors[2].1), j4()),
        (bt.algebroid.clone(), element(&bt, "pi"), endo_obj(&bt, "n")),
    ];
    for (ja, pi, n) in &pairs {
        let pn = pi_n(pi, n, ja.naming()).map_err(|e| e.to_string())?;
        ensure(ja.schouten_jacobi(pi, &pn).is_zero(), "[[pi, pi_N]] != 0")?;
    }

    let quads = [
        QuadrupleCandidate { host: bt.algebroid.clone(), pi: element(&bt, "pi"), n: endo_obj(&bt, "n"), phi: element(&bt, "phi") },
        QuadrupleCandidate { host: r4.clone(), pi: pairs[0].1.clone(), n: j4(), phi: KVector::zero(4, 4, 3, FORM) },
    ];
    for q in &quads {
        let rep = verify_quadruple(q, &cfg);
        ensure(rep.status_of("consequence: [[pi_N,pi_N]] + 2 pi#(i phi) = 0") == Some(Status::Pass), "pi_N bracket formula")?;
    }

    let r2 = tangent(&["x", "y"], "0");
    let duals = [
        DualStructure::trivial(&tangent(&["x", "y", "z"], "dz")),
        DualStructure::triangular(&r2, &kv(r2.naming(), 2, MV, "partial_x^partial_y")),
        DualStructure::triangular(&e1.algebroid, &element(&e1, "pi")),
        DualStructure::from_quadruple(&quads[0]),
    ];
    for d in &duals {
        ensure(verify_roundtrip(d).is_pass(), "round trip")?;
    }
    Ok(format!(
        "{jb} Jacobi bivectors, {} compatible pairs, {} quadruples, {} round trips",
        pairs.len(),
        quads.len(),
        duals.len()
    ))
}

fn correspondence() -> Outcome {
    let cfg = CheckConfig::default();
    let bt = fixture("b-transform-r4");
    let r4 = tangent(&["x1", "y1", "x2", "y2"], "0");
    let n4 = r4.naming().clone();
    let zero2 = KVector::zero(4, 4, 2, FORM);
    let base = QuadrupleCandidate { host: bt.algebroid.clone(), pi: element(&bt, "pi"), n: endo_obj(&bt, "n"), phi: element(&bt, "phi") };
    let sigma = element(&bt, "sigma");
    let genuine = [
        (base.clone(), sigma.clone()),
        (
            QuadrupleCandidate {
                host: r4.clone(),
                pi: kv(&n4, 2, MV, "partial_x1^partial_x2 - partial_y1^partial_y2"),
                n: j4(),
                phi: KVector::zero(4, 4, 3, FORM),
            },
            zero2.clone(),
        ),
    ];
    for (q, s) in &genuine {
        let c = correspondence_suite(q, s, &cfg);
        ensure(c.coherent(), "genuine fixture incoherent")?;
        ensure(c.legs.iter().all(|(_, r)| r.verdict() == Status::Pass), "genuine fixture fails")?;
    }
    let mut n = base.n.clone();
    n.set(0, 1, base.n.entry(0, 1) + &Poly::one(4));
    let na = fixture("nonintegrable-r4");
    let defects = [
        ("musical commutation", QuadrupleCandidate { n, ..base.clone() }, sigma.clone()),
        ("non-closed phi", QuadrupleCandidate { phi: base.phi.add(&kv(&n4, 3, FORM, "x1*dy1^dx2^dy2")), ..base.clone() }, sigma),
        (
            "torsion",
            QuadrupleCandidate { host: na.algebroid.clone(), pi: KVector::zero(4, 4, 2, MV), n: endo_obj(&na, "j"), phi: KVector::zero(4, 4, 3, FORM) },
            zero2,
        ),
    ];
    for (label, q, s) in &defects {
        let c = correspondence_suite(q, s, &cfg);
        ensure(c.coherent(), format!("{label}: incoherent"))?;
        for leg in [Leg::Quadruple, Leg::Bialgebroid, Leg::Deformation] {
            ensure(c.verdict(leg) == Status::Fail, format!("{label}: {leg:?} leg passes"))?;
        }
    }
    Ok(format!("{} genuine all-pass, {} single defects all-fail", genuine.len(), defects.len()))
}

fn gcs_cases() -> Outcome {
    let cfg = CheckConfig::default();
    for name in ["complex-r2", "symplectic-r2", "poisson-type-r4"] {
        let rep = run(&fixture(name), &RunOptions::default()).map_err(|e| e.to_string())?;
        ensure(rep.checks.iter().any(|c| c.check == "gcs" && c.verdict == Status::Pass), format!("{name}: gcs"))?;
        ensure(rep.verdict == Status::Pass, format!("{name}: verdict"))?;
    }
    // explicit and intrinsic forms, with and without a cocycle, passing and failing
    let pt = fixture("poisson-type-r4");
    let (n, pi) = (endo_obj(&pt, "j"), element(&pt, "pi"));
    let bad = kv(pt.algebroid.naming(), 2, MV, "x2*(partial_x1^partial_x2 - partial_y1^partial_y2)");
    for phi0 in ["0", "dx1", "dy2"] {
        let ja = tangent(&["x1", "y1", "x2", "y2"], phi0);
        for p in [&pi, &bad] {
            let rep = verify_poisson_type(&ja, &n, p, &cfg);
            ensure(rep.status_of("phi0-explicit forms agree") == Some(Status::Pass), "case 3 forms differ")?;
            ensure(rep.status_of("gcs cross-check") == Some(Status::Pass), "case 3 gcs disagrees")?;
        }
        let w = kv(ja.naming(), 2, FORM, "dx1^dy1 + dx2^dy2");
        let rep = verify_conformal_symplectic(&ja, &w, &cfg).map_err(|e| e.to_string())?;
        ensure(rep.status_of("phi0-explicit form agrees") == Some(Status::Pass), "case 2 forms differ")?;
        ensure(rep.status_of("gcs cross-check") == Some(Status::Pass), "case 2 gcs disagrees")?;
    }
    let r2 = tangent(&["x", "y"], "dx");
    let j0 = EndoTensor::from_ints(2, &[&[0, -1], &[1, 0]]);
    ensure(verify_gcs(&canonical_double(&r2), &GcsMap::complex(j0), &cfg).is_pass(), "complex with cocycle")?;
    Ok("complex-r2, symplectic-r2, poisson-type-r4 pass; explicit forms agree on 3 cocycles".into())
}

fn contact() -> Outcome {
    let cfg = CheckConfig::default();
    let e1 = build_e1(&["x", "y", "z"]);
    let one = KVector::scalar(4, Poly::one(3), FORM);
    ensure(e1.differential(&one) == e1.base().cobasis(e1_time_index(&e1)), "d^phi0 1 != dt")?;

    let mut rng = cfg.rng(501);
    let coords = ["x", "y", "z"];
    let pairs = 6;
    for _ in 0..pairs {
        let eta = random_kvector(&mut rng, 3, 3, 1, FORM, 2);
        let omega = random_kvector(&mut rng, 3, 3, 2, FORM, 2);
        let rep = verify_contact_form(&coords, &eta, &omega, &cfg).map_err(|e| e.to_string())?;
        ensure(rep.status_of("d^phi0 Theta = d omega + dt^(omega - d eta)") == Some(Status::Pass), "Theta identity")?;
    }

    let rep = run(&fixture("std-contact-r3"), &RunOptions::default()).map_err(|e| e.to_string())?;
    ensure(rep.verdict == Status::Pass, "std-contact-r3 fails")?;
    let cf = rep.checks.iter().find(|c| c.check == "contact-form").ok_or("no contact-form check")?;
    ensure(cf.report.items.iter().any(|i| i.name.starts_with("gcs") && i.status == Status::Pass), "no gcs cross-check")?;

    let tm = LieAlgebroid::tangent(&coords);
    let nm = tm.naming();
    let y = Poly::var(3, 1);
    let z = Poly::zero(3);
    let phi = EndoTensor::new(
        3,
        vec![vec![z.clone(), Poly::from_int(3, -1), z.clone()], vec![Poly::one(3), z.clone(), z.clone()], vec![z.clone(), -y, z]],
    )
    .unwrap();
    let start = ContactTriple { phi, y: kv(nm, 1, MV, "partial_z"), eta: kv(nm, 1, FORM, "dz - y*dx") };
    let triples = 100;
    for _ in 0..triples {
        let mut p = EndoTensor::identity(3, 3);
        let mut q = EndoTensor::identity(3, 3);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            p.set(i, j, random_poly(&mut rng, 3, 1));
            q.set(j, i, random_poly(&mut rng, 3, 1));
        }
        let p = p.compose(&q);
        let pinv = EndoTensor::new(3, inverse_constant_det(p.rows(), 3).map_err(|e| e.to_string())?).unwrap();
        let c = ContactTriple { phi: p.compose(&start.phi).compose(&pinv), y: p.apply(&start.y), eta: pinv.apply_dual(&start.eta) };
        let rep = verify_almost_contact(&coords, &c);
        ensure(rep.is_pass(), "conjugated triple fails")?;
        ensure(rep.status_of("phi(Y) = 0") == Some(Status::Pass) && rep.status_of("eta o phi = 0") == Some(Status::Pass), "(2) fails")?;
    }
    Ok(format!("d^phi0 1 = dt, {pairs} random (omega, eta), std-contact-r3, {triples} almost contact triples"))
}

fn falsification() -> Outcome {
    let mut falsified = std::collections::BTreeSet::new();
    for name in gallery::names() {
        let rep = run(&fixture(name), &RunOptions::default()).map_err(|e| e.to_string())?;
        ensure(rep.expectations_met(), format!("{name}: expectations not met"))?;
        for c in rep.checks.iter().filter(|c| c.verdict == Status::Fail) {
            if c.report.failures().any(|i| i.residual.as_deref().is_some_and(|r| !r.is_empty() && r != "0")) {
                falsified.insert(c.check.clone());
            }
        }
    }
    for (name, _) in CHECKS {
        ensure(falsified.contains(*name), format!("{name} is never falsified"))?;
    }
    let codes = [
        (jqn(&["check", "std-contact-r3"]).status.code(), Some(0)),
        (jqn(&["check", "broken-cocycle"]).status.code(), Some(1)),
        (jqn(&["check", "/nonexistent/file.toml"]).status.code(), Some(2)),
        (jqn(&["check", "std-contact-r3", "--samples", "(1,2)"]).status.code(), Some(2)),
    ];
    for (got, want) in codes {
        ensure(got == want, format!("exit code {got:?}, expected {want:?}"))?;
    }
    Ok(format!("{} verifiers falsified with residuals, exit codes 0/1/2", CHECKS.len()))
}

fn determinism() -> Outcome {
    for name in ["std-contact-r3", "b-transform-r4", "broken-cocycle"] {
        for fmt in ["text", "json"] {
            let a = jqn(&["check", name, "--format", fmt]);
            let b = jqn(&["check", name, "--format", fmt]);
            ensure(a.stdout == b.stdout && !a.stdout.is_empty(), format!("{name} ({fmt}) differs between runs"))?;
        }
    }
    let t = Instant::now();
    let out = jqn(&["identities"]);
    let secs = t.elapsed().as_secs_f64();
    ensure(out.status.success(), "identities failed")?;
    ensure(secs < 30.0, format!("identities took {secs:.2} s"))?;
    Ok(format!("byte-identical repeated checks, identities in {secs:.2} s"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("engine identities", engine_identities),
        ("theorem reproduction", theorem_reproduction),
        ("correspondence coherence", correspondence),
        ("gcs cases and explicit forms", gcs_cases),
        ("E1 and contact structures", contact),
        ("falsification and exit codes", falsification),
        ("cli determinism", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (label, f)) in criteria.iter().enumerate() {
        let res = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match res {
            Ok(detail) => println!("criterion {}: PASS  {label}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {label}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
