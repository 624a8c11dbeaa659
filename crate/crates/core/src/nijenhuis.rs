//! Nijenhuis torsion, deformed brackets, musical maps and the Jacobi
//! quasi-Nijenhuis conditions.

use crate::algebroid::{JacobiAlgebroid, LieAlgebroid};
use crate::error::{Error, Result};
use crate::report::{Item, Report, ZeroCheck};
use crate::sampling::{monomial_polys, CheckConfig};
use crate::symalg::{EndoTensor, KVector, Naming, Poly, Variance};

const MV: Variance = Variance::Multivector;
const FORM: Variance = Variance::Form;

/// `T(N)(X,Y) = [NX,NY] − N([NX,Y] + [X,NY] − N[X,Y])`.
pub fn torsion(alg: &LieAlgebroid, n: &EndoTensor, x: &KVector, y: &KVector) -> KVector {
    let nx = n.apply(x);
    let ny = n.apply(y);
    alg.bracket(&nx, &ny).sub(&n.apply(&bracket_n(alg, n, x, y)))
}

/// Frame components `T(N)(e_i, e_j)` for `i < j`.
pub fn torsion_table(alg: &LieAlgebroid, n: &EndoTensor) -> Vec<((usize, usize), KVector)> {
    let r = alg.rank();
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            out.push(((i, j), torsion(alg, n, &alg.basis(i), &alg.basis(j))));
        }
    }
    out
}

/// `[X,Y]_N = [NX,Y] + [X,NY] − N[X,Y]`.
pub fn bracket_n(alg: &LieAlgebroid, n: &EndoTensor, x: &KVector, y: &KVector) -> KVector {
    alg.bracket(&n.apply(x), y)
        .add(&alg.bracket(x, &n.apply(y)))
        .sub(&n.apply(&alg.bracket(x, y)))
}

/// `π♯(ξ) = π(ξ, ·)`.
pub fn sharp(pi: &KVector, xi: &KVector) -> KVector {
    xi.interior(pi)
}

/// `σ♭(X) = σ(X, ·)`.
pub fn flat(sigma: &KVector, x: &KVector) -> KVector {
    x.interior(sigma)
}

/// Matrix `P[i][j] = π(e^i, e^j)`.
pub fn bivector_matrix(pi: &KVector) -> Vec<Vec<Poly>> {
    let r = pi.rank();
    (0..r).map(|i| (0..r).map(|j| if i == j { Poly::zero(pi.nvars()) } else { pi.coeff_unsorted(&[i, j]) }).collect()).collect()
}

/// Bivector with `π(e^i, e^j) = P[i][j]`, read from the upper triangle.
pub fn bivector_from_matrix(p: &[Vec<Poly>], nvars: usize) -> KVector {
    let r = p.len();
    let mut out = KVector::zero(r, nvars, 2, MV);
    for i in 0..r {
        for j in i + 1..r {
            out.insert(&[i, j], p[i][j].clone());
        }
    }
    out
}

/// Two-form with `σ(e_i, e_j) = S[i][j]`.
pub fn two_form_from_matrix(s: &[Vec<Poly>], nvars: usize) -> KVector {
    bivector_from_matrix(s, nvars).dual()
}

/// Entries of `P Nᵀ − N P` (zero iff `N∘π♯ = π♯∘N*`).
pub fn musical_defect(pi: &KVector, n: &EndoTensor) -> Vec<Vec<Poly>> {
    let p = bivector_matrix(pi);
    let r = p.len();
    let nv = pi.nvars();
    let mut out = vec![vec![Poly::zero(nv); r]; r];
    for i in 0..r {
        for k in 0..r {
            let mut acc = Poly::zero(nv);
            for j in 0..r {
                acc += &(&p[i][j] * n.entry(k, j));
                acc -= &(n.entry(i, j) * &p[j][k]);
            }
            out[i][k] = acc;
        }
    }
    out
}

pub(crate) fn matrix_display(m: &[Vec<Poly>], coords: &[String]) -> Option<String> {
    let entries: Vec<String> = m
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, f)| !f.is_zero())
                .map(move |(j, f)| format!("[{},{}] = {}", i + 1, j + 1, f.display(coords)))
        })
        .collect();
    (!entries.is_empty()).then(|| entries.join("; "))
}

/// `π_N(ξ, η) = η(N π♯ξ)`; an error unless `N∘π♯ = π♯∘N*`.
pub fn pi_n(pi: &KVector, n: &EndoTensor, naming: &Naming) -> Result<KVector> {
    if let Some(d) = matrix_display(&musical_defect(pi, n), &naming.coords) {
        return Err(Error::MusicalNonCommutation(d));
    }
    let p = bivector_matrix(pi);
    let r = p.len();
    let nv = pi.nvars();
    let mut out = KVector::zero(r, nv, 2, MV);
    for i in 0..r {
        for k in i + 1..r {
            let mut acc = Poly::zero(nv);
            for j in 0..r {
                acc += &(&p[i][j] * n.entry(k, j));
            }
            out.insert(&[i, k], acc);
        }
    }
    Ok(out)
}

/// `⟦ξ,η⟧_π = −d^{φ0}(π(ξ,η)) + ℒ_{π♯ξ}η − ℒ_{π♯η}ξ`.
pub fn bracket_pi(ja: &JacobiAlgebroid, pi: &KVector, xi: &KVector, eta: &KVector) -> KVector {
    let val = xi.wedge(eta).interior(pi).dual();
    ja.lie_derivative(&sharp(pi, xi), eta)
        .sub(&ja.lie_derivative(&sharp(pi, eta), xi))
        .sub(&ja.differential(&val))
}

/// Evaluates a multivector `T` of degree ≥ 2 on two 1-forms: `T(ξ, η, ·)`.
pub fn eval2(t: &KVector, xi: &KVector, eta: &KVector) -> KVector {
    xi.wedge(eta).interior(t)
}

/// `π♯⟦ξ,η⟧_π − [π♯ξ, π♯η] − ½⟦π,π⟧(ξ,η)`, which vanishes for every π.
pub fn fundamental_identity_defect(ja: &JacobiAlgebroid, pi: &KVector, xi: &KVector, eta: &KVector) -> KVector {
    let lhs = sharp(pi, &bracket_pi(ja, pi, xi, eta)).sub(&ja.base().bracket(&sharp(pi, xi), &sharp(pi, eta)));
    let rhs = eval2(&ja.schouten_jacobi(pi, pi), xi, eta).scale_rat(&crate::symalg::ratio(1, 2));
    lhs.sub(&rhs)
}

/// `C(π,N)(ξ,η) = ⟦ξ,η⟧_{π_N} − (⟦N*ξ,η⟧_π + ⟦ξ,N*η⟧_π − N*⟦ξ,η⟧_π)`.
pub fn concomitant(
    ja: &JacobiAlgebroid,
    pi: &KVector,
    n: &EndoTensor,
    xi: &KVector,
    eta: &KVector,
) -> Result<KVector> {
    let pn = pi_n(pi, n, ja.naming())?;
    Ok(concomitant_with(ja, pi, &pn, n, xi, eta))
}

fn concomitant_with(
    ja: &JacobiAlgebroid,
    pi: &KVector,
    pn: &KVector,
    n: &EndoTensor,
    xi: &KVector,
    eta: &KVector,
) -> KVector {
    bracket_pi(ja, pn, xi, eta).sub(
        &bracket_pi(ja, pi, &n.apply_dual(xi), eta)
            .add(&bracket_pi(ja, pi, xi, &n.apply_dual(eta)))
            .sub(&n.apply_dual(&bracket_pi(ja, pi, xi, eta))),
    )
}

/// `d_N = i_N∘d^{φ0} − d^{φ0}∘i_N`.
pub fn d_n(ja: &JacobiAlgebroid, n: &EndoTensor, omega: &KVector) -> KVector {
    let a = ja.differential(omega).insert_endo(n);
    if omega.degree() == 0 {
        return a;
    }
    a.sub(&ja.differential(&omega.insert_endo(n)))
}

/// The split form `d̃_N ω + (i_N d^{φ0}𝟙)∧ω`, with `d̃_N` built from the
/// Lie algebroid differential.
pub fn d_n_split(ja: &JacobiAlgebroid, n: &EndoTensor, omega: &KVector) -> KVector {
    let d = |w: &KVector| ja.base().differential(w);
    let mut tilde = d(omega).insert_endo(n);
    if omega.degree() > 0 {
        tilde = tilde.sub(&d(&omega.insert_endo(n)));
    }
    let one = KVector::scalar(ja.rank(), Poly::one(ja.nvars()), FORM);
    tilde.add(&ja.differential(&one).insert_endo(n).wedge(omega))
}

/// `(d^{φ0}φ)♭(X,Y,Z) = i_{X∧Y∧Z} d^{φ0}φ`.
pub fn dphi_flat(ja: &JacobiAlgebroid, phi: &KVector, x: &KVector, y: &KVector, z: &KVector) -> KVector {
    x.wedge(y).wedge(z).interior(&ja.differential(phi))
}

/// The Lie algebroid `(A*, ⟦·,·⟧_π, a∘π♯)` with cocycle `φ0∘π♯`. Its
/// multivectors are forms on `A` (convert with [`KVector::dual`]).
pub fn dual_algebroid(ja: &JacobiAlgebroid, pi: &KVector) -> JacobiAlgebroid {
    let r = ja.rank();
    let alg = ja.base();
    let anchor: Vec<Vec<Poly>> = (0..r).map(|i| alg.anchor_of(&sharp(pi, &alg.cobasis(i)))).collect();
    let structure: Vec<Vec<Vec<Poly>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| bracket_pi(ja, pi, &alg.cobasis(i), &alg.cobasis(j)).components())
                .collect()
        })
        .collect();
    let dual = LieAlgebroid::new(ja.naming().dual(), anchor, structure).expect("shapes are inherited");
    let cocycle: Vec<Poly> = (0..r).map(|i| ja.phi0().pair(&sharp(pi, &alg.cobasis(i)))).collect();
    let phi = KVector::from_components(r, ja.nvars(), cocycle, FORM);
    JacobiAlgebroid::new(dual, phi).expect("degree-1 cocycle")
}

/// Schouten–Jacobi bracket of the dual algebroid, acting on forms of `A`.
pub fn bracket_pi_forms(dual: &JacobiAlgebroid, p: &KVector, q: &KVector) -> KVector {
    dual.schouten_jacobi(&p.dual(), &q.dual()).dual()
}

fn frame_pair(naming: &Naming, i: usize, j: usize, v: Variance) -> String {
    format!("{}, {}", naming.basis(i, v), naming.basis(j, v))
}

/// `⟦π,π⟧ = 0`; on pass also checks that the dual bracket satisfies the
/// Jacobi identity on frame triples and that `d_*𝟙 = −π♯(d^{φ0}𝟙)`.
pub fn verify_jacobi_bivector(ja: &JacobiAlgebroid, pi: &KVector, cfg: &CheckConfig) -> Report {
    let mut rep = Report::new("jacobi-bivector");
    let naming = ja.naming();
    let ppi = ja.schouten_jacobi(pi, pi);
    if ppi.is_zero() {
        rep.push(Item::pass("[[pi,pi]] = 0"));
    } else {
        rep.push(Item::fail("[[pi,pi]] = 0", "π", ppi.display(naming)));
        return rep;
    }
    let dual = dual_algebroid(ja, pi);
    let r = ja.rank();
    let mut jac = ZeroCheck::new("dual-jacobi-identity", dual.naming());
    for i in 0..r {
        for j in i + 1..r {
            for k in j + 1..r {
                let b = |a: &KVector, c: &KVector| dual.base().bracket(a, c);
                let (x, y, z) = (dual.base().basis(i), dual.base().basis(j), dual.base().basis(k));
                let s = b(&b(&x, &y), &z).add(&b(&b(&y, &z), &x)).add(&b(&b(&z, &x), &y));
                jac.kvector(|| format!("e^{}, e^{}, e^{}", i + 1, j + 1, k + 1), &s);
            }
        }
    }
    rep.push(jac.finish());
    let sub = crate::algebroid::verify_lie_algebroid(dual.base(), cfg);
    rep.absorb("dual-algebroid", sub);
    rep.absorb("dual-cocycle", crate::algebroid::verify_cocycle(&dual));

    let one = KVector::scalar(r, Poly::one(ja.nvars()), FORM);
    let d_star_one = dual.differential(&one).dual();
    let rhs = sharp(pi, &ja.differential(&one)).neg();
    let res = d_star_one.sub(&rhs);
    rep.push(if res.is_zero() {
        Item::pass("d_*1 = -pi#(d1)")
    } else {
        Item::fail("d_*1 = -pi#(d1)", "𝟙", res.display(naming))
    });
    rep
}

/// Input of [`verify_quadruple`].
#[derive(Clone, Debug)]
pub struct QuadrupleCandidate {
    pub host: JacobiAlgebroid,
    pub pi: KVector,
    pub n: EndoTensor,
    pub phi: KVector,
}

/// Itemized Jacobi quasi-Nijenhuis conditions, followed on full pass by the
/// two consequences `⟦π,π_N⟧ = 0` and
/// `⟦π_N,π_N⟧(ξ,η) = −2π♯(i_{π♯ξ∧π♯η}φ)`.
pub fn verify_quadruple(q: &QuadrupleCandidate, cfg: &CheckConfig) -> Report {
    let mut rep = Report::new("quadruple");
    let ja = &q.host;
    let alg = ja.base();
    let naming = ja.naming();
    let r = ja.rank();

    let ppi = ja.schouten_jacobi(&q.pi, &q.pi);
    rep.push(if ppi.is_zero() {
        Item::pass("jacobi-bivector")
    } else {
        Item::fail("jacobi-bivector", "π", ppi.display(naming))
    });

    let musical = matrix_display(&musical_defect(&q.pi, &q.n), &naming.coords);
    let pn = match &musical {
        None => {
            rep.push(Item::pass("musical-commutation"));
            Some(pi_n(&q.pi, &q.n, naming).expect("commuting"))
        }
        Some(d) => {
            rep.push(Item::fail("musical-commutation", "P·Nᵀ − N·P", d.clone()));
            None
        }
    };

    match &pn {
        Some(pn) => {
            let mut c = ZeroCheck::new("compatibility", naming);
            for i in 0..r {
                for j in i + 1..r {
                    let v = concomitant_with(ja, &q.pi, pn, &q.n, &alg.cobasis(i), &alg.cobasis(j));
                    c.kvector(|| frame_pair(naming, i, j, FORM), &v);
                }
            }
            rep.push(c.finish());
        }
        None => rep.push(Item::skipped("compatibility", "π_N is not a bivector")),
    }

    let dphi = ja.differential(&q.phi);
    rep.push(if dphi.is_zero() {
        Item::pass("dphi = 0")
    } else {
        Item::fail("dphi = 0", "φ", dphi.display(naming))
    });
    let dnphi = ja.differential(&q.phi.insert_endo(&q.n));
    rep.push(if dnphi.is_zero() {
        Item::pass("d(i_N phi) = 0")
    } else {
        Item::fail("d(i_N phi) = 0", "i_Nφ", dnphi.display(naming))
    });

    let mut tn = ZeroCheck::new("torsion", naming);
    for ((i, j), t) in torsion_table(alg, &q.n) {
        let rhs = sharp(&q.pi, &alg.basis(i).wedge(&alg.basis(j)).interior(&q.phi));
        tn.kvector(|| frame_pair(naming, i, j, MV), &t.sub(&rhs));
    }
    rep.push(tn.finish());

    let mut lin = ZeroCheck::new("torsion-tensorial", naming);
    for f in monomial_polys(ja.nvars(), cfg.degree).into_iter().skip(1) {
        for i in 0..r {
            for j in 0..r {
                let (x, y) = (alg.basis(i), alg.basis(j));
                let res = torsion(alg, &q.n, &x.scale(&f), &y).sub(&torsion(alg, &q.n, &x, &y).scale(&f));
                lin.kvector(|| format!("({})·{}", f.display(&naming.coords), frame_pair(naming, i, j, MV)), &res);
            }
        }
    }
    rep.push(lin.finish());

    if rep.verdict() != crate::report::Status::Pass {
        return rep;
    }
    let pn = pn.expect("passed");
    let lemma = ja.schouten_jacobi(&q.pi, &pn);
    rep.push(if lemma.is_zero() {
        Item::pass("consequence: [[pi,pi_N]] = 0")
    } else {
        Item::fail("consequence: [[pi,pi_N]] = 0", "π, π_N", lemma.display(naming))
    });
    let pnpn = ja.schouten_jacobi(&pn, &pn);
    let mut thm = ZeroCheck::new("consequence: [[pi_N,pi_N]] + 2 pi#(i phi) = 0", naming);
    for i in 0..r {
        for j in i + 1..r {
            let (xi, eta) = (alg.cobasis(i), alg.cobasis(j));
            let lhs = eval2(&pnpn, &xi, &eta);
            let inner = sharp(&q.pi, &xi).wedge(&sharp(&q.pi, &eta)).interior(&q.phi);
            let res = lhs.add(&sharp(&q.pi, &inner).scale_int(2));
            thm.kvector(|| frame_pair(naming, i, j, FORM), &res);
        }
    }
    rep.push(thm.finish());
    rep
}

/// Checks whether `d_N` is a derivation of `⟦·,·⟧_π` in form degrees
/// (0,1) and (1,1), plus the wedge anomaly `d_N(P∧Q) − d_NP∧Q − (−1)^p P∧d_NQ = −(i_N d^{φ0}𝟙)∧P∧Q`.
pub fn verify_dn_derivation(ja: &JacobiAlgebroid, pi: &KVector, n: &EndoTensor, cfg: &CheckConfig) -> Report {
    let mut rep = Report::new("d_N-derivation");
    let naming = ja.naming();
    let alg = ja.base();
    let dual = dual_algebroid(ja, pi);
    let r = ja.rank();
    let dn = |w: &KVector| d_n(ja, n, w);
    let br = |a: &KVector, b: &KVector| bracket_pi_forms(&dual, a, b);
    // With the bracket normalized as in `schouten_jacobi`, a degree-1
    // derivation satisfies D⟦P,Q⟧ + ⟦DP,Q⟧ + (−1)^p ⟦P,DQ⟧ = 0.
    let defect = |p: &KVector, q: &KVector| {
        let t = br(p, &dn(q));
        let t = if p.degree().is_multiple_of(2) { t } else { t.neg() };
        dn(&br(p, q)).add(&br(&dn(p), q)).add(&t)
    };
    let mut c = ZeroCheck::new("derivation", naming);
    let funcs = monomial_polys(ja.nvars(), cfg.degree.min(1));
    for f in &funcs {
        let ff = KVector::scalar(r, f.clone(), FORM);
        for j in 0..r {
            let res = defect(&ff, &alg.cobasis(j));
            c.kvector(|| format!("{}, {}", f.display(&naming.coords), naming.basis(j, FORM)), &res);
            let res = defect(&alg.cobasis(j), &ff);
            c.kvector(|| format!("{}, {}", naming.basis(j, FORM), f.display(&naming.coords)), &res);
        }
    }
    for i in 0..r {
        for j in 0..r {
            let res = defect(&alg.cobasis(i), &alg.cobasis(j));
            c.kvector(|| frame_pair(naming, i, j, FORM), &res);
        }
    }
    rep.push(c.finish());

    let one = KVector::scalar(r, Poly::one(ja.nvars()), FORM);
    let c0 = ja.differential(&one).insert_endo(n);
    let mut anomaly = ZeroCheck::new("wedge-anomaly", naming);
    let g = if ja.nvars() > 0 { Poly::var(ja.nvars(), 0) } else { Poly::one(0) };
    for i in 0..r {
        for j in 0..r {
            let (p, q) = (alg.cobasis(i), alg.cobasis(j).scale(&g));
            let lhs = dn(&p.wedge(&q)).sub(&dn(&p).wedge(&q)).add(&p.wedge(&dn(&q)));
            let res = lhs.add(&c0.wedge(&p).wedge(&q));
            anomaly.kvector(|| frame_pair(naming, i, j, FORM), &res);
        }
    }
    rep.push(anomaly.finish());
    rep
}
