mod common;

use common::*;
use jacobi_core::algebroid::{FirstOrderOp, JacobiAlgebroid, LieAlgebroid};
use jacobi_core::contact::build_e1;
use jacobi_core::courant::*;
use jacobi_core::identities::rotation_algebroid;
use jacobi_core::nijenhuis::{bivector_from_matrix, bracket_n, bracket_pi, dual_algebroid, two_form_from_matrix, QuadrupleCandidate};
use jacobi_core::report::Status;
use jacobi_core::sampling::{random_kvector, CheckConfig};
use jacobi_core::symalg::{EndoTensor, KVector, Poly};
use proptest::prelude::*;

fn section(ja: &JacobiAlgebroid, x: &str, xi: &str) -> GenSection {
    GenSection::new(vec1(ja.naming(), x), form(ja.naming(), 1, xi))
}

fn random_section(rng: &mut impl rand::Rng, ja: &JacobiAlgebroid) -> GenSection {
    let (r, nv) = (ja.rank(), ja.nvars());
    GenSection::new(random_kvector(rng, r, nv, 1, MV, 2), random_kvector(rng, r, nv, 1, FORM, 2))
}

/// `[X,Y] + ℒ_Xη − ℒ_Yξ + d^{φ0}(ξ(Y))` from the classical operators.
fn canonical_oracle(ja: &JacobiAlgebroid, u: &GenSection, v: &GenSection) -> GenSection {
    let alg = ja.base();
    let phi0 = ja.phi0();
    let lie = |x: &KVector, w: &KVector| alg.lie_derivative(x, w).add(&w.scale(&x.pair(phi0)));
    let f = KVector::scalar(ja.rank(), u.xi.pair(&v.x), FORM);
    let df = alg.differential(&f).add(&phi0.scale(&f.as_scalar()));
    GenSection::new(alg.bracket(&u.x, &v.x), lie(&u.x, &v.xi).sub(&lie(&v.x, &u.xi)).add(&df))
}

fn hosts() -> Vec<JacobiAlgebroid> {
    vec![
        tangent(&["x", "y"], "0"),
        tangent(&["x", "y", "z"], "y*dx + x*dy + dz"),
        build_e1(&["x", "y"]),
        JacobiAlgebroid::from_lie(rotation_algebroid()),
    ]
}

#[test]
fn canonical_bracket_examples() {
    let ja = tangent(&["x", "y"], "0");
    let s = canonical_double(&ja);
    let r = s.bracket(&section(&ja, "partial_x", "0"), &section(&ja, "0", "dy"));
    assert!(r.is_zero());
    let r = s.bracket(&section(&ja, "partial_x", "x*dy"), &section(&ja, "partial_y", "0"));
    assert_eq!(r, section(&ja, "0", "dx"));

    let ja = tangent(&["x", "y"], "dx");
    let s = canonical_double(&ja);
    assert!(s.bracket(&section(&ja, "0", "dx"), &section(&ja, "partial_x", "0")).is_zero());
}

#[test]
fn canonical_bracket_matches_cartan_oracle() {
    let cfg = CheckConfig::default();
    let mut rng = cfg.rng(11);
    for ja in hosts() {
        let s = canonical_double(&ja);
        for _ in 0..3 {
            let (u, v) = (random_section(&mut rng, &ja), random_section(&mut rng, &ja));
            assert_eq!(s.bracket(&u, &v), canonical_oracle(&ja, &u, &v));
        }
    }
}

#[test]
fn canonical_doubles_are_courant_jacobi() {
    let cfg = CheckConfig::default();
    for ja in hosts() {
        let rep = verify_courant_jacobi(&canonical_double(&ja), &cfg);
        assert!(rep.is_pass(), "{}", rep.render_text());
    }
}

#[test]
fn broken_canonical_variants_fail_the_right_axioms() {
    let cfg = CheckConfig::default();
    let ja = tangent(&["x", "y"], "dx");
    let rep = verify_courant_jacobi(&canonical_variant(&ja, CanonicalVariant::DropSymmetricTerm), &cfg);
    assert_eq!(rep.status_of("axiom-a"), Some(Status::Fail));
    let rep = verify_courant_jacobi(&canonical_variant(&ja, CanonicalVariant::ZeroPairing), &cfg);
    assert_eq!(rep.status_of("pairing-nondegenerate"), Some(Status::Fail));
}

#[test]
fn symmetric_part_of_the_bracket() {
    let cfg = CheckConfig::default();
    let mut rng = cfg.rng(12);
    for ja in hosts() {
        let s = canonical_double(&ja);
        for _ in 0..3 {
            let (u, v) = (random_section(&mut rng, &ja), random_section(&mut rng, &ja));
            let sym = s.bracket(&u, &v).add(&s.bracket(&v, &u));
            let f = KVector::scalar(ja.rank(), s.pairing(&u, &v).scale(&jacobi_core::symalg::rat(2)), FORM);
            assert_eq!(sym, GenSection::form(ja.differential(&f)));
            let f = KVector::scalar(ja.rank(), u.xi.pair(&v.x) + v.xi.pair(&u.x), FORM);
            assert_eq!(sym, GenSection::form(ja.differential(&f)));
        }
    }
}

#[test]
fn gcs_examples() {
    let cfg = CheckConfig::default();
    let ja = tangent(&["x", "y"], "0");
    let s = canonical_double(&ja);
    assert!(verify_gcs(&s, &GcsMap::complex(j0()), &cfg).is_pass());
    let sym = GcsMap::symplectic(&form(ja.naming(), 2, "dx^dy")).unwrap();
    assert_eq!(sym.pi, biv(ja.naming(), "partial_x^partial_y"));
    assert!(verify_gcs(&s, &sym, &cfg).is_pass());
    let rep = verify_gcs(&s, &GcsMap::complex(EndoTensor::identity(2, 2)), &cfg);
    assert_eq!(rep.status_of("square = -Id"), Some(Status::Fail));
    assert_eq!(rep.status_of("block: N^2 + pi# sigma_flat = -Id"), Some(Status::Fail));
}

#[test]
fn deformation_examples() {
    let ja = tangent(&["x", "y"], "0");
    let nm = ja.naming().clone();
    let s = canonical_double(&ja);
    let c = deform(&s, &GcsMap::complex(j0())).unwrap();
    assert!(c.bracket(&section(&ja, "partial_x", "0"), &section(&ja, "partial_y", "0")).is_zero());
    let x = vec1(&nm, "x*partial_x");
    let y = vec1(&nm, "y^2*partial_y");
    assert_eq!(c.bracket(&GenSection::vector(x.clone()), &GenSection::vector(y.clone())).x, bracket_n(ja.base(), &j0(), &x, &y));

    let sym = deform(&s, &GcsMap::symplectic(&form(&nm, 2, "dx^dy")).unwrap()).unwrap();
    assert!(sym.bracket(&section(&ja, "0", "dx"), &section(&ja, "0", "dy")).is_zero());
    let pi = biv(&nm, "partial_x^partial_y");
    let (a, b) = (form(&nm, 1, "x*dy"), form(&nm, 1, "y^2*dx"));
    assert_eq!(sym.bracket(&GenSection::form(a.clone()), &GenSection::form(b.clone())), GenSection::form(bracket_pi(&ja, &pi, &a, &b)));

    assert!(matches!(deform(&s, &GcsMap::complex(EndoTensor::identity(2, 2))), Err(jacobi_core::Error::BlockConditions(_))));
}

#[test]
fn deformation_component_formulas() {
    let cfg = CheckConfig::default();
    for name in ["b-transform-r4", "poisson-type-r4"] {
        let f = fixture(name);
        let zero = KVector::zero(4, 4, 2, FORM);
        let endo = if name == "b-transform-r4" { obj_endo(&f, "n") } else { obj_endo(&f, "j") };
        let sigma = if name == "b-transform-r4" { obj(&f, "sigma") } else { zero };
        let j = GcsMap::new(endo, obj(&f, "pi"), sigma).unwrap();
        let rep = verify_deformation_formulas(&f.algebroid, &j, &cfg).unwrap();
        assert!(rep.is_pass(), "{}", rep.render_text());
    }
}

/// `⟦u,u⟧_𝒥 = 2d^{φ0}⟨𝒥u,u⟩ − 𝒥⟦u,u⟧`, which follows from the symmetric part
/// of the bracket.
#[test]
fn deformed_bracket_on_the_diagonal() {
    let cfg = CheckConfig::default();
    let mut rng = cfg.rng(13);
    let bt = fixture("b-transform-r4");
    let cases = vec![
        (tangent(&["x", "y"], "0"), GcsMap::complex(j0())),
        (tangent(&["x", "y"], "dx"), GcsMap::symplectic(&form(tangent(&["x", "y"], "0").naming(), 2, "dx^dy")).unwrap()),
        (bt.algebroid.clone(), GcsMap::new(obj_endo(&bt, "n"), obj(&bt, "pi"), obj(&bt, "sigma")).unwrap()),
    ];
    for (ja, j) in cases {
        let s = canonical_double(&ja);
        let d = deform(&s, &j).unwrap();
        for _ in 0..3 {
            let u = random_section(&mut rng, &ja);
            let f = KVector::scalar(ja.rank(), s.pairing(&j.apply(&u), &u).scale(&jacobi_core::symalg::rat(2)), FORM);
            let want = GenSection::form(ja.differential(&f)).sub(&j.apply(&s.bracket(&u, &u)));
            assert_eq!(d.bracket(&u, &u), want);
        }
    }
}

#[test]
fn diagonal_formula_with_doubled_first_term_fails() {
    // 2⟦𝒥u,u⟧ − 𝒥⟦u,u⟧ differs from ⟦u,u⟧_𝒥 by ⟦𝒥u,u⟧ − ⟦u,𝒥u⟧ ≠ 0
    let ja = tangent(&["x", "y"], "0");
    let s = canonical_double(&ja);
    let j = GcsMap::complex(j0());
    let d = deform(&s, &j).unwrap();
    let u = section(&ja, "x*partial_x", "0");
    let ju = j.apply(&u);
    let printed = s.bracket(&ju, &u).add(&s.bracket(&ju, &u)).sub(&j.apply(&s.bracket(&u, &u)));
    assert_ne!(d.bracket(&u, &u), printed);
    assert_eq!(printed.sub(&d.bracket(&u, &u)), s.bracket(&ju, &u).sub(&s.bracket(&u, &ju)));
}

fn passing_maps() -> Vec<(JacobiAlgebroid, GcsMap)> {
    let r2 = tangent(&["x", "y"], "0");
    let bt = fixture("b-transform-r4");
    let pt = fixture("poisson-type-r4");
    vec![
        (r2.clone(), GcsMap::complex(j0())),
        (r2.clone(), GcsMap::symplectic(&form(r2.naming(), 2, "dx^dy")).unwrap()),
        (bt.algebroid.clone(), GcsMap::new(obj_endo(&bt, "n"), obj(&bt, "pi"), obj(&bt, "sigma")).unwrap()),
        (pt.algebroid.clone(), GcsMap::poisson_type(obj_endo(&pt, "j"), obj(&pt, "pi"))),
    ]
}

#[test]
fn passing_maps_preserve_the_pairing_and_are_morphisms() {
    let cfg = CheckConfig::default();
    for (ja, j) in passing_maps() {
        let s = canonical_double(&ja);
        assert!(verify_gcs(&s, &j, &cfg).is_pass());
        let d = deform(&s, &j).unwrap();
        let r = ja.rank();
        for a in 0..2 * r {
            for b in 0..2 * r {
                let (u, v) = (s.frame(a), s.frame(b));
                assert_eq!(d.pairing(&u, &v), s.pairing(&u, &v));
                assert_eq!(j.apply(&d.bracket(&u, &v)), s.bracket(&j.apply(&u), &j.apply(&v)));
            }
        }
    }
}

fn dual_structures() -> Vec<DualStructure> {
    let r2 = tangent(&["x", "y"], "dx");
    let e1 = fixture("contact-jacobi-e1");
    let bt = fixture("b-transform-r4");
    let q = QuadrupleCandidate { host: bt.algebroid.clone(), pi: obj(&bt, "pi"), n: obj_endo(&bt, "n"), phi: obj(&bt, "phi") };
    vec![
        DualStructure::trivial(&tangent(&["x", "y", "z"], "dz")),
        DualStructure::triangular(&tangent(&["x", "y"], "0"), &biv(r2.naming(), "partial_x^partial_y")),
        DualStructure::triangular(&e1.algebroid, &obj(&e1, "pi")),
        DualStructure::from_quadruple(&q),
    ]
}

#[test]
fn doubles_of_bialgebroids_are_courant_jacobi_with_dirac_host() {
    let cfg = CheckConfig::default();
    for d in dual_structures() {
        assert!(verify_quasi_bialgebroid(&d, &cfg).is_pass());
        let s = build_double(&d, MixedReading::Jacobi);
        let rep = verify_courant_jacobi(&s, &cfg);
        assert!(rep.is_pass(), "{}", rep.render_text());
        let r = s.rank();
        for i in 0..r {
            for j in 0..r {
                let (u, v) = (s.frame(i), s.frame(j));
                assert!(s.pairing(&u, &v).is_zero());
                assert!(s.bracket(&u, &v).xi.is_zero());
            }
        }
    }
}

#[test]
fn trivial_dual_structure_doubles_to_the_canonical_double() {
    let ja = tangent(&["x", "y", "z"], "dz + y*dx + x*dy");
    let s = build_double(&DualStructure::trivial(&ja), MixedReading::Jacobi);
    let c = canonical_double(&ja);
    let cfg = CheckConfig::default();
    let mut rng = cfg.rng(14);
    for _ in 0..3 {
        let (u, v) = (random_section(&mut rng, &ja), random_section(&mut rng, &ja));
        assert_eq!(s.bracket(&u, &v), c.bracket(&u, &v));
        assert_eq!(s.anchor(&u), c.anchor(&u));
    }
}

#[test]
fn constant_phi_on_abelian_host() {
    let cfg = CheckConfig::default();
    let host = JacobiAlgebroid::from_lie(LieAlgebroid::trivial(&["x"], 3));
    let phi = KVector::basis(3, 1, &[0, 1, 2], MV).scale_int(2);
    let d = DualStructure::new(host.clone(), vec![FirstOrderOp::zero(1); 3], vec![vec![vec![Poly::zero(1); 3]; 3]; 3], phi.clone()).unwrap();
    assert!(verify_quasi_bialgebroid(&d, &cfg).is_pass());
    let s = build_double(&d, MixedReading::Jacobi);
    let (e1, e2) = (s.frame(3), s.frame(4));
    assert_eq!(s.bracket(&e1, &e2), GenSection::vector(KVector::basis1(3, 1, 2, MV).scale_int(2)));
    let rep = verify_courant_jacobi(&s, &cfg);
    assert_eq!(rep.status_of("axiom-a"), Some(Status::Pass));
    assert!(rep.is_pass());
}

#[test]
fn round_trip_on_dual_structures() {
    for d in dual_structures() {
        let rep = verify_roundtrip(&d);
        assert!(rep.is_pass(), "{}", rep.render_text());
        let e = extract_bialgebroid(&build_double(&d, MixedReading::Jacobi), Splitting::First).unwrap();
        assert_eq!(e.dual_structure(), d.dual_structure());
        assert_eq!(e.dual_anchor(), d.dual_anchor());
        assert_eq!(e.phi(), d.phi());
    }
}

#[test]
fn extraction_examples() {
    let ja = tangent(&["x", "y"], "dx");
    let e = extract_bialgebroid(&canonical_double(&ja), Splitting::First).unwrap();
    assert!(e.dual_structure().iter().flatten().flatten().all(Poly::is_zero));
    assert!(e.dual_anchor().iter().all(FirstOrderOp::is_zero));
    assert!(e.phi().is_zero());

    // triangular: recovers ρ∘π♯ and the bracket of π
    let pi = biv(ja.naming(), "partial_x^partial_y");
    let t = DualStructure::triangular(&ja, &pi);
    let e = extract_bialgebroid(&build_double(&t, MixedReading::Jacobi), Splitting::First).unwrap();
    let dual = dual_algebroid(&ja, &pi);
    assert_eq!(e.dual_structure(), dual.base().structure());
    for i in 0..2 {
        let xi = ja.base().cobasis(i);
        assert_eq!(e.rho_star(&xi), ja.rho(&jacobi_core::nijenhuis::sharp(&pi, &xi)));
    }

    // deformed double of a GCS: A* is Dirac, A carries ρ∘N, [·,·]_N and φ = dσ
    let bt = fixture("b-transform-r4");
    let (pi, n, sigma) = (obj(&bt, "pi"), obj_endo(&bt, "n"), obj(&bt, "sigma"));
    let j = GcsMap::new(n.clone(), pi.clone(), sigma.clone()).unwrap();
    let def = deform(&canonical_double(&bt.algebroid), &j).unwrap();
    assert!(extract_bialgebroid(&def, Splitting::First).is_err());
    let e = extract_bialgebroid(&def, Splitting::Second).unwrap();
    let q = QuadrupleCandidate { host: bt.algebroid.clone(), pi, n, phi: bt.algebroid.differential(&sigma) };
    let want = DualStructure::from_quadruple(&q);
    assert_eq!(e.dual_structure(), want.dual_structure());
    assert_eq!(e.dual_anchor(), want.dual_anchor());
    assert_eq!(e.host().base().structure(), want.host().base().structure());
    assert_eq!(e.phi(), want.phi());
}

#[test]
fn quasi_bialgebroid_detects_perturbed_structure_functions() {
    let cfg = CheckConfig::default();
    let d = dual_structures().pop().unwrap();
    let mut c = d.dual_structure().to_vec();
    let nv = d.host().nvars();
    c[0][1][2] = &c[0][1][2] + &Poly::var(nv, 0);
    c[1][0][2] = &c[1][0][2] - &Poly::var(nv, 0);
    let bad = DualStructure::new(d.host().clone(), d.dual_anchor(), c, d.phi().clone()).unwrap();
    let rep = verify_quasi_bialgebroid(&bad, &cfg);
    assert_eq!(rep.verdict(), Status::Fail);
    let failing: Vec<_> = rep.failures().collect();
    assert!(failing.iter().all(|i| i.residual.as_deref().is_some_and(|r| r != "0")));
}

#[test]
fn mixed_term_reading_matters_for_jacobi_hosts() {
    let cfg = CheckConfig::default();
    let e1 = fixture("contact-jacobi-e1");
    let d = DualStructure::triangular(&e1.algebroid, &obj(&e1, "pi"));
    assert!(verify_courant_jacobi(&build_double(&d, MixedReading::Jacobi), &cfg).is_pass());
    assert!(!verify_courant_jacobi(&build_double(&d, MixedReading::LieOnly), &cfg).is_pass());
    // with φ0 = 0 both readings coincide
    let r2 = tangent(&["x", "y"], "0");
    let d = DualStructure::triangular(&r2, &biv(r2.naming(), "partial_x^partial_y"));
    assert!(verify_courant_jacobi(&build_double(&d, MixedReading::LieOnly), &cfg).is_pass());
}

fn genuine_quadruples() -> Vec<(QuadrupleCandidate, KVector)> {
    let bt = fixture("b-transform-r4");
    let r4 = tangent(&["x1", "y1", "x2", "y2"], "0");
    let nm = r4.naming().clone();
    let zero2 = KVector::zero(4, 4, 2, FORM);
    let zero3 = KVector::zero(4, 4, 3, FORM);
    vec![
        (
            QuadrupleCandidate { host: bt.algebroid.clone(), pi: obj(&bt, "pi"), n: obj_endo(&bt, "n"), phi: obj(&bt, "phi") },
            obj(&bt, "sigma"),
        ),
        (
            QuadrupleCandidate { host: r4.clone(), pi: biv(&nm, "partial_x1^partial_x2 - partial_y1^partial_y2"), n: j4(), phi: zero3.clone() },
            zero2.clone(),
        ),
        (QuadrupleCandidate { host: r4, pi: KVector::zero(4, 4, 2, MV), n: j4(), phi: zero3 }, zero2),
    ]
}

#[test]
fn correspondence_on_genuine_fixtures() {
    let cfg = CheckConfig::default();
    for (q, sigma) in genuine_quadruples() {
        let c = correspondence_suite(&q, &sigma, &cfg);
        assert!(c.coherent(), "{}", c.render_text());
        assert_eq!(c.verdict(Leg::Quadruple), Status::Pass);
        assert_eq!(c.legs.len(), 3);
    }
}

#[test]
fn correspondence_on_single_defects() {
    let cfg = CheckConfig::default();
    let (q, sigma) = genuine_quadruples().remove(0);
    let mut n = q.n.clone();
    n.set(0, 1, q.n.entry(0, 1) + &Poly::one(4));
    let musical = QuadrupleCandidate { n, ..q.clone() };
    let nm = q.host.naming().clone();
    let open = QuadrupleCandidate { phi: q.phi.add(&form(&nm, 3, "x1*dy1^dx2^dy2")), ..q.clone() };
    let na = fixture("nonintegrable-r4");
    let torsion = QuadrupleCandidate {
        host: na.algebroid.clone(),
        pi: KVector::zero(4, 4, 2, MV),
        n: obj_endo(&na, "j"),
        phi: KVector::zero(4, 4, 3, FORM),
    };
    for (qq, s) in [(musical, sigma.clone()), (open, sigma), (torsion, KVector::zero(4, 4, 2, FORM))] {
        let c = correspondence_suite(&qq, &s, &cfg);
        assert!(c.coherent(), "{}", c.render_text());
        assert!(c.legs.iter().all(|(_, r)| r.verdict() == Status::Fail));
    }
}

/// A block map conjugated by `exp(B)`: still of block form, with the same
/// square.
fn b_transform(j: &GcsMap, b: &KVector) -> (GcsMap, GcsMap) {
    let r = j.rank();
    let nv = j.n.nvars();
    let eb = |u: &GenSection, s: i64| GenSection { x: u.x.clone(), xi: u.xi.add(&u.x.interior(b).scale_int(s)) };
    let t = |u: &GenSection| eb(&j.apply(&eb(u, -1)), 1);
    let mut n = vec![vec![Poly::zero(nv); r]; r];
    let mut p = vec![vec![Poly::zero(nv); r]; r];
    let mut s = vec![vec![Poly::zero(nv); r]; r];
    let mut ns = vec![vec![Poly::zero(nv); r]; r];
    for i in 0..r {
        let ti = t(&GenSection::frame(r, nv, i));
        let tf = t(&GenSection::frame(r, nv, r + i));
        for k in 0..r {
            n[k][i] = ti.x.coeff(&[k]);
            s[i][k] = ti.xi.coeff(&[k]);
            p[i][k] = tf.x.coeff(&[k]);
            ns[k][i] = tf.xi.coeff(&[k]);
        }
    }
    let n = EndoTensor::new(nv, n).unwrap();
    let g = GcsMap::new(n.clone(), bivector_from_matrix(&p, nv), two_form_from_matrix(&s, nv)).unwrap();
    // the lower-right block read back from the conjugate, for comparison with −N*
    let lower = EndoTensor::new(nv, ns).unwrap();
    let reread = GcsMap { n: lower.transpose().neg(), ..g.clone() };
    (g, reread)
}

fn orthogonal(s: &CjStructure, j: &GcsMap) -> bool {
    let r = s.rank();
    (0..2 * r).all(|a| (a..2 * r).all(|b| {
        let (u, v) = (s.frame(a), s.frame(b));
        s.pairing(&j.apply(&u), &j.apply(&v)) == s.pairing(&u, &v)
    }))
}

fn block_ok(s: &CjStructure, j: &GcsMap) -> bool {
    j.block_conditions(s.naming()).iter().all(|i| i.status == Status::Pass)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orthogonality_iff_block_conditions(seed in any::<u64>(), base in 0usize..3, perturb in 0usize..4) {
        let ja = tangent(&["x1", "y1", "x2", "y2"], "0");
        let nm = ja.naming().clone();
        let s = canonical_double(&ja);
        let cfg = CheckConfig { seed, ..CheckConfig::default() };
        let mut rng = cfg.rng(15);
        let start = match base {
            0 => GcsMap::complex(j4()),
            1 => GcsMap::symplectic(&form(&nm, 2, "dx1^dy1 + dx2^dy2")).unwrap(),
            _ => GcsMap::poisson_type(j4(), biv(&nm, "partial_x1^partial_x2 - partial_y1^partial_y2")),
        };
        let b = random_kvector(&mut rng, 4, 4, 2, FORM, 1);
        let (g, reread) = b_transform(&start, &b);
        prop_assert_eq!(reread.n, g.n.clone());
        let g = match perturb {
            0 => g,
            1 => GcsMap { pi: g.pi.add(&random_kvector(&mut rng, 4, 4, 2, MV, 1)), ..g },
            2 => GcsMap { sigma: g.sigma.add(&random_kvector(&mut rng, 4, 4, 2, FORM, 1)), ..g },
            _ => {
                let mut n = g.n.clone();
                n.set(1, 2, n.entry(1, 2) + &Poly::var(4, 3));
                GcsMap { n, ..g }
            }
        };
        let orth = orthogonal(&s, &g);
        prop_assert_eq!(orth, block_ok(&s, &g));
        prop_assert_eq!(orth, perturb == 0);
    }
}
