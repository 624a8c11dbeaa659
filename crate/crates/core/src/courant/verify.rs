use rand::Rng;

use super::{CjStructure, GenSection};
use crate::algebroid::FirstOrderOp;
use crate::report::{Report, ZeroCheck};
use crate::sampling::{monomial_polys, random_kvector, CheckConfig};
use crate::symalg::endo::rational_rank;
use crate::symalg::{Naming, Variance};

pub(crate) fn frame_label(naming: &Naming, idx: &[usize], rank: usize) -> String {
    idx.iter()
        .map(|&k| {
            if k < rank {
                naming.basis(k, Variance::Multivector)
            } else {
                naming.basis(k - rank, Variance::Form)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

pub(crate) fn section_residual(u: &GenSection, naming: &Naming) -> Option<String> {
    (!u.is_zero()).then(|| u.display(naming))
}

fn op_residual(d: &FirstOrderOp, naming: &Naming) -> Option<String> {
    (!d.is_zero()).then(|| d.display(&naming.coords))
}

pub(crate) fn random_section<R: Rng>(rng: &mut R, s: &CjStructure, cfg: &CheckConfig) -> GenSection {
    let (r, nv) = (s.rank(), s.nvars());
    GenSection {
        x: random_kvector(rng, r, nv, 1, Variance::Multivector, cfg.degree),
        xi: random_kvector(rng, r, nv, 1, Variance::Form, cfg.degree),
    }
}

/// Checks the Courant–Jacobi axioms: symmetry and nondegeneracy of the
/// pairing, the Leibniz identity of the bracket, the anchor Leibniz rule,
/// the anchor homomorphism, `⟨⟦v,u⟧,u⟩ = ⟨v,⟦u,u⟧⟩` and
/// `κ(u)⟨v,v⟩ = 2⟨⟦u,v⟧,v⟩`. Identities are tested on frame elements,
/// on monomial multiples of them and on seeded random sections.
pub fn verify_courant_jacobi(s: &CjStructure, cfg: &CheckConfig) -> Report {
    let mut rep = Report::new("courant-jacobi");
    let naming = s.naming();
    let r = s.rank();
    let nv = s.nvars();
    let m = 2 * r;
    let fr: Vec<GenSection> = (0..m).map(|k| s.frame(k)).collect();
    let lbl = |idx: &[usize]| frame_label(naming, idx, r);
    let mut rng = cfg.rng(31);
    let randoms: Vec<GenSection> = (0..3 * cfg.random_cases).map(|_| random_section(&mut rng, s, cfg)).collect();
    let monos = monomial_polys(nv, cfg.degree);

    let mut sym = ZeroCheck::new("pairing-symmetric", naming);
    for a in 0..m {
        for b in a + 1..m {
            sym.poly(|| lbl(&[a, b]), &(&s.pairing(&fr[a], &fr[b]) - &s.pairing(&fr[b], &fr[a])));
        }
    }
    rep.push(sym.finish());

    let mut nondeg = ZeroCheck::new("pairing-nondegenerate", naming);
    for p in cfg.sample_points(nv) {
        let gram: Vec<Vec<_>> = (0..m)
            .map(|a| (0..m).map(|b| s.pairing(&fr[a], &fr[b]).eval(&p).expect("point dimension")).collect())
            .collect();
        let rk = rational_rank(gram);
        nondeg.text(
            || format!("at {}", crate::symalg::kvector::fmt_point(&p)),
            (rk < m).then(|| format!("Gram matrix rank {rk} < {m}")),
        );
    }
    rep.push(nondeg.finish());

    let br = |u: &GenSection, v: &GenSection| s.bracket(u, v);
    let leibniz = |u: &GenSection, v: &GenSection, w: &GenSection| {
        br(u, &br(v, w)).sub(&br(&br(u, v), w)).sub(&br(v, &br(u, w)))
    };
    let mut jac = ZeroCheck::new("leibniz-identity", naming);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                jac.text(|| lbl(&[a, b, c]), section_residual(&leibniz(&fr[a], &fr[b], &fr[c]), naming));
            }
        }
    }
    for (n, t) in randoms.chunks(3).enumerate() {
        jac.text(|| format!("random triple #{n}"), section_residual(&leibniz(&t[0], &t[1], &t[2]), naming));
    }
    rep.push(jac.finish());

    let mut anch = ZeroCheck::new("anchor-leibniz", naming);
    for f in &monos {
        for a in 0..m {
            for b in 0..m {
                let lhs = br(&fr[a], &fr[b].scale(f));
                let rhs = br(&fr[a], &fr[b]).scale(f).add(&fr[b].scale(&s.anchor(&fr[a]).apply_vector(f)));
                anch.text(
                    || format!("{}, ({})·{}", lbl(&[a]), f.display(&naming.coords), lbl(&[b])),
                    section_residual(&lhs.sub(&rhs), naming),
                );
            }
        }
    }
    rep.push(anch.finish());

    let mut hom = ZeroCheck::new("anchor-homomorphism", naming);
    let hom_res = |u: &GenSection, v: &GenSection| s.anchor(&br(u, v)).sub(&s.anchor(u).commutator(&s.anchor(v)));
    for a in 0..m {
        for b in 0..m {
            hom.text(|| lbl(&[a, b]), op_residual(&hom_res(&fr[a], &fr[b]), naming));
        }
    }
    for (n, t) in randoms.chunks(3).enumerate() {
        hom.text(|| format!("random pair #{n}"), op_residual(&hom_res(&t[0], &t[1]), naming));
    }
    rep.push(hom.finish());

    // Both remaining axioms are quadratic in one argument, so frame elements
    // alone do not exercise the cross terms.
    let mut quad: Vec<(String, GenSection)> = (0..m).map(|a| (lbl(&[a]), fr[a].clone())).collect();
    for a in 0..m {
        for b in a + 1..m {
            let g = if nv > 0 { crate::symalg::Poly::var(nv, (a + b) % nv) } else { crate::symalg::Poly::one(0) };
            quad.push((
                format!("{} + ({})·{}", lbl(&[a]), g.display(&naming.coords), lbl(&[b])),
                fr[a].add(&fr[b].scale(&g)),
            ));
        }
    }
    for (n, u) in randoms.iter().enumerate() {
        quad.push((format!("random #{n}"), u.clone()));
    }
    let tests: Vec<(String, GenSection)> = (0..m).map(|a| (lbl(&[a]), fr[a].clone())).chain(quad.iter().rev().take(2).cloned()).collect();

    let mut ax_a = ZeroCheck::new("axiom-a", naming);
    let mut ax_b = ZeroCheck::new("axiom-b", naming);
    for (lu, u) in &quad {
        let uu = br(u, u);
        for (lv, v) in &tests {
            let res = &s.pairing(&br(v, u), u) - &s.pairing(v, &uu);
            ax_a.poly(|| format!("u = {lu}, v = {lv}"), &res);
            let res = &s.anchor(v).apply(&s.pairing(u, u)) - &s.pairing(&br(v, u), u).scale(&crate::symalg::rat(2));
            ax_b.poly(|| format!("u = {lv}, v = {lu}"), &res);
        }
    }
    rep.push(ax_a.finish());
    rep.push(ax_b.finish());
    rep
}
