//! Tangent bundles deformed by a closed 1-form, the algebroid
//! `E¹(M) = TM ⊕ R`, and verifiers for conformal symplectic, Jacobi pair,
//! almost contact, normal and contact structures.

use crate::algebroid::{JacobiAlgebroid, LieAlgebroid};
use crate::courant::{canonical_double, verify_gcs, GcsMap};
use crate::error::{Error, Result};
use crate::nijenhuis::{bracket_pi, sharp, torsion};
use crate::report::{Item, Report, Status, ZeroCheck};
use crate::sampling::{monomial_polys, CheckConfig};
use crate::symalg::endo::det;
use crate::symalg::kvector::fmt_point;
use crate::symalg::{EndoTensor, KVector, Naming, Poly, Variance};

const MV: Variance = Variance::Multivector;
const FORM: Variance = Variance::Form;

/// `TM` over `R^m` with representation `ρ(X) = X + φ0(X)`.
pub fn build_tangent(coords: &[&str], phi0: &[Poly]) -> Result<JacobiAlgebroid> {
    let alg = LieAlgebroid::tangent(coords);
    if phi0.len() != coords.len() {
        return Err(Error::RankMismatch { expected: coords.len(), got: phi0.len() });
    }
    let phi = KVector::from_components(coords.len(), coords.len(), phi0.to_vec(), FORM);
    JacobiAlgebroid::new_checked(alg, phi)
}

/// `E¹(M) = TM ⊕ R` over `R^m`: frame `∂x_1..∂x_m, ∂t`, bracket
/// `[X+f, Y+g] = [X,Y] + Xg − Yf`, anchor `X+f ↦ X`, cocycle `φ0 = dt`.
pub fn build_e1(coords: &[&str]) -> JacobiAlgebroid {
    let m = coords.len();
    let mut frame: Vec<String> = coords.iter().map(|s| s.to_string()).collect();
    frame.push(if coords.contains(&"t") { "t'".into() } else { "t".into() });
    let naming = Naming { coords: coords.iter().map(|s| s.to_string()).collect(), frame, tangent_like: true, flipped: false };
    let anchor = (0..=m).map(|i| (0..m).map(|j| Poly::from_int(m, (i == j) as i64)).collect()).collect();
    let structure = vec![vec![vec![Poly::zero(m); m + 1]; m + 1]; m + 1];
    let alg = LieAlgebroid::new(naming, anchor, structure).expect("consistent shapes");
    let dt = alg.cobasis(m);
    JacobiAlgebroid::new(alg, dt).expect("dt is a 1-form")
}

/// Index of the `∂t` frame element of an `E¹` algebroid.
pub fn e1_time_index(e1: &JacobiAlgebroid) -> usize {
    e1.rank() - 1
}

/// Lifts a multivector or form on `TM` to `E¹` (no `∂t`/`dt` components).
pub fn lift_to_e1(k: &KVector) -> KVector {
    k.extend(k.rank() + 1, k.nvars())
}

fn point_item(name: &str, naming: &Naming, f: &Poly, points: &[Vec<crate::symalg::Rational>]) -> Item {
    let mut bad = None;
    for p in points {
        if f.eval(p).map(|v| num_traits::Zero::is_zero(&v)).unwrap_or(true) {
            bad = Some(p.clone());
            break;
        }
    }
    let pts = points.iter().map(|p| fmt_point(p)).collect::<Vec<_>>().join(" ");
    match bad {
        None => Item::pass(name).with_note(format!("checked at {pts}")),
        Some(p) => Item::fail(name, format!("at {}", fmt_point(&p)), format!("{} = 0", f.display(&naming.coords))),
    }
}

fn kv_item(name: &str, naming: &Naming, witness: &str, res: &KVector) -> Item {
    if res.is_zero() {
        Item::pass(name)
    } else {
        Item::fail(name, witness, res.display(naming))
    }
}

fn gcs_agreement(name: &str, expected: bool, gcs: &Report) -> Item {
    let got = gcs.is_pass();
    Item::from_bool(
        name,
        got == expected,
        &format!("direct verdict {}, gcs verdict {}", if expected { "pass" } else { "fail" }, gcs.verdict().as_str()),
        "verdicts differ",
    )
}

/// `(φ0, ω)` conformal symplectic on a tangent Jacobi algebroid:
/// `d^{φ0}ω = dω + φ0∧ω = 0` and `ω` nondegenerate at the sample points.
/// With constant determinant the structure `[[0, −ω⁻¹], [ω, 0]]` is also
/// run through [`verify_gcs`] and the verdicts are compared.
pub fn verify_conformal_symplectic(ja: &JacobiAlgebroid, omega: &KVector, cfg: &CheckConfig) -> Result<Report> {
    let m = ja.rank();
    if m % 2 == 1 {
        return Err(Error::Invalid(format!("conformal symplectic structures need even dimension, got {m}")));
    }
    if omega.degree() != 2 || omega.variance() != FORM {
        return Err(Error::Degree("ω must be a 2-form".into()));
    }
    let naming = ja.naming();
    let mut rep = Report::new("conformal-symplectic");
    let intrinsic = ja.differential(omega);
    let explicit = ja.base().differential(omega).add(&ja.phi0().wedge(omega));
    rep.push(kv_item("d^phi0 omega = 0", naming, "ω", &intrinsic));
    rep.push(Item::from_bool(
        "phi0-explicit form agrees",
        intrinsic.display(naming) == explicit.display(naming),
        "dω + φ0∧ω",
        "residuals differ",
    ));
    let printed = ja.base().differential(omega).sub(&ja.phi0().wedge(omega));
    rep.note(format!(
        "dω − φ0∧ω = {} (the other sign convention for conformal symplectic forms)",
        printed.display(naming)
    ));
    let w = crate::nijenhuis::bivector_matrix(&omega.dual());
    let d = det(&w, ja.nvars());
    rep.push(point_item("nondegenerate", naming, &d, &cfg.sample_points(ja.nvars())));

    match GcsMap::symplectic(omega) {
        Ok(j) => {
            let expected = rep.items.iter().all(|i| i.status != Status::Fail);
            let gcs = verify_gcs(&canonical_double(ja), &j, cfg);
            rep.push(gcs_agreement("gcs cross-check", expected, &gcs));
            rep.absorb("gcs", gcs);
        }
        Err(_) => rep.push(Item::skipped("gcs cross-check", "skipped: non-constant determinant")),
    }
    Ok(rep)
}

/// Intrinsic and `φ0`-explicit conditions for `[[N, π♯], [0, −N*]]` with
/// `N² = −Id` on a tangent Jacobi algebroid, their residual agreement, and
/// agreement with [`verify_gcs`].
pub fn verify_poisson_type(ja: &JacobiAlgebroid, n: &EndoTensor, pi: &KVector, cfg: &CheckConfig) -> Report {
    let naming = ja.naming();
    let alg = ja.base();
    let r = ja.rank();
    let mut rep = Report::new("poisson-type-gcs");

    let mut sq = ZeroCheck::new("N^2 = -Id", naming);
    for i in 0..r {
        let e = alg.basis(i);
        sq.kvector(|| naming.basis(i, MV), &n.apply(&n.apply(&e)).add(&e));
    }
    rep.push(sq.finish());

    let mut musical = ZeroCheck::new("N pi# = pi# N*", naming);
    for i in 0..r {
        let c = alg.cobasis(i);
        musical.kvector(|| naming.basis(i, FORM), &n.apply(&sharp(pi, &c)).sub(&sharp(pi, &n.apply_dual(&c))));
    }
    rep.push(musical.finish());

    let phi0 = ja.phi0();
    let d0 = |f: Poly| alg.differential(&KVector::scalar(r, f, FORM));
    let lie0 = |x: &KVector, w: &KVector| crate::algebroid::LieAlgebroid::lie_derivative(alg, x, w);
    // [ξ,η]_π with φ0 = 0
    let bracket_plain = |xi: &KVector, eta: &KVector| {
        lie0(&sharp(pi, xi), eta).sub(&lie0(&sharp(pi, eta), xi)).sub(&d0(eta.interior(&xi.interior(pi)).as_scalar()))
    };
    let pipi = pi.wedge(pi);
    let mut b_int = ZeroCheck::new("pi# [[xi,eta]]_pi = [pi# xi, pi# eta]", naming);
    let mut b_exp = ZeroCheck::new("phi0-explicit: [pi# xi, pi# eta] - pi#[xi,eta]_pi + 1/2 i_phi0(pi^pi)(xi,eta) = 0", naming);
    let mut c_int = ZeroCheck::new("N* compatibility", naming);
    let mut c_exp = ZeroCheck::new("phi0-explicit: N* compatibility", naming);
    let mut agree = ZeroCheck::new("phi0-explicit forms agree", naming);
    let monos = monomial_polys(ja.nvars(), cfg.degree.min(1));
    for i in 0..r {
        for j in 0..r {
            for f in &monos {
                let xi = alg.cobasis(i);
                let eta = alg.cobasis(j).scale(f);
                let w = || format!("{}, ({})·{}", naming.basis(i, FORM), f.display(&naming.coords), naming.basis(j, FORM));
                let bpi = bracket_pi(ja, pi, &xi, &eta);
                let lhs = alg.bracket(&sharp(pi, &xi), &sharp(pi, &eta));
                let bi = lhs.sub(&sharp(pi, &bpi));
                let be = lhs
                    .sub(&sharp(pi, &bracket_plain(&xi, &eta)))
                    .add(&xi.wedge(&eta).interior(&phi0.interior(&pipi)).scale_rat(&crate::symalg::ratio(1, 2)));
                b_int.kvector(w, &bi);
                b_exp.kvector(w, &be);
                let nx = n.apply_dual(&xi);
                let ny = n.apply_dual(&eta);
                let pnx_eta = eta.interior(&nx.interior(pi)).as_scalar();
                let ci = n
                    .apply_dual(&bpi)
                    .sub(&ja.lie_derivative(&sharp(pi, &xi), &ny))
                    .add(&ja.lie_derivative(&sharp(pi, &eta), &nx))
                    .add(&ja.differential(&KVector::scalar(r, pnx_eta.clone(), FORM)));
                let pi_eta_xi = xi.interior(&eta.interior(pi)).as_scalar();
                let pi_eta_nx = nx.interior(&eta.interior(pi)).as_scalar();
                let ce = n
                    .apply_dual(&bracket_plain(&xi, &eta).add(&phi0.scale(&pi_eta_xi)))
                    .sub(&lie0(&sharp(pi, &xi), &ny))
                    .add(&lie0(&sharp(pi, &eta), &nx))
                    .add(&d0(pnx_eta))
                    .sub(&phi0.scale(&pi_eta_nx));
                c_int.kvector(w, &ci);
                c_exp.kvector(w, &ce);
                let same = bi.display(naming) == be.display(naming) && ci.display(naming) == ce.display(naming);
                agree.text(w, (!same).then(|| format!("{} vs {}", bi.display(naming), be.display(naming))));
            }
        }
    }
    for z in [b_int, b_exp, c_int, c_exp, agree] {
        rep.push(z.finish());
    }
    let expected = rep.is_pass();
    let gcs = verify_gcs(&canonical_double(ja), &GcsMap::poisson_type(n.clone(), pi.clone()), cfg);
    rep.push(gcs_agreement("gcs cross-check", expected, &gcs));
    rep.absorb("gcs", gcs);
    rep
}

/// `[[N, 0], [0, −N*]]` with `N² = −Id` and `T(N) = 0`, cross-checked with
/// [`verify_gcs`].
pub fn verify_complex_type(ja: &JacobiAlgebroid, n: &EndoTensor, cfg: &CheckConfig) -> Report {
    let naming = ja.naming();
    let alg = ja.base();
    let r = ja.rank();
    let mut rep = Report::new("complex-type-gcs");
    let mut sq = ZeroCheck::new("N^2 = -Id", naming);
    for i in 0..r {
        let e = alg.basis(i);
        sq.kvector(|| naming.basis(i, MV), &n.apply(&n.apply(&e)).add(&e));
    }
    rep.push(sq.finish());
    let mut t = ZeroCheck::new("T(N) = 0", naming);
    for ((i, j), v) in crate::nijenhuis::torsion_table(alg, n) {
        t.kvector(|| format!("{}, {}", naming.basis(i, MV), naming.basis(j, MV)), &v);
    }
    rep.push(t.finish());
    let expected = rep.is_pass();
    let gcs = verify_gcs(&canonical_double(ja), &GcsMap::complex(n.clone()), cfg);
    rep.push(gcs_agreement("gcs cross-check", expected, &gcs));
    rep.absorb("gcs", gcs);
    rep
}

/// `[Λ,Λ] = 2X∧Λ` and `[X,Λ] = 0` for the Schouten bracket of `TM`, and
/// the equivalent `⟦π,π⟧ = 0` for `π = Λ + ∂t∧X` on `E¹`.
pub fn verify_jacobi_pair(coords: &[&str], lambda: &KVector, x: &KVector) -> Result<Report> {
    let tm = JacobiAlgebroid::from_lie(LieAlgebroid::tangent(coords));
    tm.base().check_element(lambda)?;
    tm.base().check_element(x)?;
    if lambda.degree() != 2 || lambda.variance() != MV || x.degree() != 1 || x.variance() != MV {
        return Err(Error::Degree("expected a bivector Λ and a vector field X".into()));
    }
    let naming = tm.naming();
    let mut rep = Report::new("jacobi-pair");
    let first = tm.schouten_base(lambda, lambda).sub(&x.wedge(lambda).scale_int(2));
    rep.push(kv_item("[L,L] = 2 X^L", naming, "Λ", &first));
    let second = tm.schouten_base(x, lambda);
    rep.push(kv_item("[X,L] = 0", naming, "X, Λ", &second));

    let e1 = build_e1(coords);
    let t = e1.base().basis(e1_time_index(&e1));
    let pi = lift_to_e1(lambda).add(&t.wedge(&lift_to_e1(x)));
    let pp = e1.schouten_jacobi(&pi, &pi);
    let expected = first.is_zero() && second.is_zero();
    rep.push(Item::from_bool(
        "embedded bivector agrees",
        pp.is_zero() == expected,
        &format!("[[Λ + ∂t∧X, Λ + ∂t∧X]] = {}", pp.display(e1.naming())),
        "verdicts differ",
    ));
    Ok(rep)
}

/// `(φ, Y, η)` on `TM`.
#[derive(Clone, Debug)]
pub struct ContactTriple {
    pub phi: EndoTensor,
    pub y: KVector,
    pub eta: KVector,
}

impl ContactTriple {
    /// `N = [[φ, −Y], [η, 0]]` on `TM ⊕ R`.
    pub fn e1_endomorphism(&self) -> EndoTensor {
        let m = self.phi.rank();
        let nv = self.phi.nvars();
        let mut rows = vec![vec![Poly::zero(nv); m + 1]; m + 1];
        for i in 0..m {
            for j in 0..m {
                rows[i][j] = self.phi.entry(i, j).clone();
            }
            rows[i][m] = -self.y.coeff(&[i]);
            rows[m][i] = self.eta.coeff(&[i]);
        }
        EndoTensor::new(nv, rows).expect("square")
    }
}

fn almost_contact_items(tm: &LieAlgebroid, c: &ContactTriple) -> (Vec<Item>, bool, bool) {
    let naming = tm.naming();
    let m = tm.rank();
    let one = Poly::one(tm.nvars());
    let ey = &c.eta.pair(&c.y) - &one;
    let i1 = if ey.is_zero() {
        Item::pass("eta(Y) = 1")
    } else {
        Item::fail("eta(Y) = 1", "η(Y) − 1", ey.display(&naming.coords))
    };
    let mut sq = ZeroCheck::new("phi^2 - eta(x)Y = -Id", naming);
    for i in 0..m {
        let e = tm.basis(i);
        let res = c.phi.apply(&c.phi.apply(&e)).sub(&c.y.scale(&c.eta.pair(&e))).add(&e);
        sq.kvector(|| naming.basis(i, MV), &res);
    }
    let i2 = sq.finish();
    let cond1 = i1.status == Status::Pass && i2.status == Status::Pass;
    let py = c.phi.apply(&c.y);
    let i3 = kv_item("phi(Y) = 0", naming, "Y", &py);
    let ep = c.phi.apply_dual(&c.eta);
    let i4 = kv_item("eta o phi = 0", naming, "η", &ep);
    let cond2 = i3.status == Status::Pass && i4.status == Status::Pass;
    (vec![i1, i2, i3, i4], cond1, cond2)
}

/// Almost contact conditions `η(Y) = 1`, `φ² − η⊗Y = −Id`, the consequences
/// `φ(Y) = 0`, `η∘φ = 0`, and an item asserting the implication.
pub fn verify_almost_contact(coords: &[&str], c: &ContactTriple) -> Report {
    let tm = LieAlgebroid::tangent(coords);
    let mut rep = Report::new("almost-contact");
    let (items, c1, c2) = almost_contact_items(&tm, c);
    let mut it = items.into_iter();
    rep.push(it.next().unwrap());
    rep.push(it.next().unwrap());
    for i in it {
        // The consequences are only claimed under the defining conditions.
        rep.push(if c1 { i } else { Item::skipped(i.name, "defining conditions fail") });
    }
    rep.push(Item::from_bool(
        "consequences follow",
        !c1 || c2,
        "defining conditions hold",
        "consequences fail: engine bug",
    ));
    rep
}

/// Normality `T(φ)(X₁,X₂) + dη(X₁,X₂)Y = 0` of an almost contact triple on
/// frame pairs and monomial multiples, cross-checked against
/// [`verify_gcs`] for `[[N, 0], [0, −N*]]`, `N = [[φ, −Y], [η, 0]]` on `E¹`.
pub fn verify_normal_contact(coords: &[&str], c: &ContactTriple, cfg: &CheckConfig) -> Report {
    let tm = LieAlgebroid::tangent(coords);
    let naming = tm.naming();
    let m = tm.rank();
    let mut rep = verify_almost_contact(coords, c);
    rep.check = "normal-contact".into();
    let deta = tm.differential(&c.eta);
    let mut normal = ZeroCheck::new("T(phi) + d eta (x) Y = 0", naming);
    for f in monomial_polys(tm.nvars(), cfg.degree.min(1)) {
        for i in 0..m {
            for j in 0..m {
                let (x1, x2) = (tm.basis(i), tm.basis(j).scale(&f));
                let res = torsion(&tm, &c.phi, &x1, &x2).add(&c.y.scale(&x2.interior(&x1.interior(&deta)).as_scalar()));
                normal.kvector(
                    || format!("{}, ({})·{}", naming.basis(i, MV), f.display(&naming.coords), naming.basis(j, MV)),
                    &res,
                );
            }
        }
    }
    rep.push(normal.finish());
    let expected = rep.is_pass();
    let e1 = build_e1(coords);
    let gcs = verify_gcs(&canonical_double(&e1), &GcsMap::complex(c.e1_endomorphism()), cfg);
    rep.push(gcs_agreement("gcs cross-check on E1", expected, &gcs));
    rep.absorb("gcs", gcs);
    rep
}

/// `Θ = ω + dt∧η` on `E¹`.
pub fn theta(e1: &JacobiAlgebroid, eta: &KVector, omega: &KVector) -> KVector {
    let dt = e1.base().cobasis(e1_time_index(e1));
    lift_to_e1(omega).add(&dt.wedge(&lift_to_e1(eta)))
}

/// `(η, ω)` on `R^{2n+1}`: checks `d^{φ0}Θ = dω + dt∧(ω − dη)` for
/// `Θ = ω + dt∧η`, then `ω = dη`, `dω = 0` and `η∧ωⁿ ≠ 0` at the sample
/// points. On a pass with constant determinant, `[[0, −Θ⁻¹], [Θ, 0]]` must
/// be a generalized contact structure on `E¹`.
pub fn verify_contact_form(coords: &[&str], eta: &KVector, omega: &KVector, cfg: &CheckConfig) -> Result<Report> {
    let m = coords.len();
    if m.is_multiple_of(2) {
        return Err(Error::Invalid(format!("contact forms need odd dimension, got {m}")));
    }
    let points = cfg.sample_points(m);
    if points.is_empty() {
        return Err(Error::Invalid("no sample points".into()));
    }
    let tm = LieAlgebroid::tangent(coords);
    tm.check_element(eta)?;
    tm.check_element(omega)?;
    if eta.degree() != 1 || eta.variance() != FORM || omega.degree() != 2 || omega.variance() != FORM {
        return Err(Error::Degree("expected a 1-form η and a 2-form ω".into()));
    }
    let naming = tm.naming();
    let e1 = build_e1(coords);
    let mut rep = Report::new("contact-form");

    let th = theta(&e1, eta, omega);
    let lhs = e1.differential(&th);
    let dt = e1.base().cobasis(e1_time_index(&e1));
    let deta = tm.differential(eta);
    let domega = tm.differential(omega);
    let rhs = lift_to_e1(&domega).add(&dt.wedge(&lift_to_e1(&omega.sub(&deta))));
    rep.push(kv_item("d^phi0 Theta = d omega + dt^(omega - d eta)", e1.naming(), "Θ", &lhs.sub(&rhs)));
    rep.push(kv_item("omega = d eta", naming, "ω − dη", &omega.sub(&deta)));
    rep.push(kv_item("d omega = 0", naming, "ω", &domega));
    let n = (m - 1) / 2;
    let mut top = eta.clone();
    for _ in 0..n {
        top = top.wedge(omega);
    }
    let vol: Vec<usize> = (0..m).collect();
    rep.push(point_item("eta ^ omega^n != 0", naming, &top.coeff(&vol), &points));

    if rep.is_pass() {
        match GcsMap::symplectic(&th) {
            Ok(j) => {
                let gcs = verify_gcs(&canonical_double(&e1), &j, cfg);
                rep.push(gcs_agreement("generalized contact", true, &gcs));
                rep.absorb("gcs", gcs);
            }
            Err(_) => rep.push(Item::skipped("generalized contact", "skipped: non-constant determinant")),
        }
    }
    Ok(rep)
}
