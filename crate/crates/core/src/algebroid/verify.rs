use super::{vector_field_bracket, JacobiAlgebroid, LieAlgebroid};
use crate::report::{Item, Report, ZeroCheck};
use crate::sampling::{monomial_polys, random_kvector, CheckConfig};
use crate::symalg::{KVector, Variance};

fn frame_label(alg: &LieAlgebroid, idx: &[usize]) -> String {
    idx.iter().map(|&i| alg.naming().basis(i, Variance::Multivector)).collect::<Vec<_>>().join(", ")
}

/// Checks the Lie algebroid axioms on the frame, on monomial multiples of
/// the frame and on seeded random sections.
pub fn verify_lie_algebroid(alg: &LieAlgebroid, cfg: &CheckConfig) -> Report {
    let mut rep = Report::new("lie-algebroid");
    let r = alg.rank();
    let naming = alg.naming();

    let mut anti = ZeroCheck::new("antisymmetry", naming);
    for i in 0..r {
        for j in 0..r {
            let s = alg.bracket(&alg.basis(i), &alg.basis(j)).add(&alg.bracket(&alg.basis(j), &alg.basis(i)));
            anti.kvector(|| frame_label(alg, &[i, j]), &s);
        }
    }
    rep.push(anti.finish());

    let mut jac = ZeroCheck::new("jacobi", naming);
    for i in 0..r {
        for j in i + 1..r {
            for k in j + 1..r {
                let (a, b, c) = (alg.basis(i), alg.basis(j), alg.basis(k));
                let s = jacobiator(alg, &a, &b, &c);
                jac.kvector(|| frame_label(alg, &[i, j, k]), &s);
            }
        }
    }
    let mut rng = cfg.rng(11);
    for n in 0..cfg.random_cases {
        let a = random_kvector(&mut rng, r, alg.nvars(), 1, Variance::Multivector, cfg.degree);
        let b = random_kvector(&mut rng, r, alg.nvars(), 1, Variance::Multivector, cfg.degree);
        let c = random_kvector(&mut rng, r, alg.nvars(), 1, Variance::Multivector, cfg.degree);
        let s = jacobiator(alg, &a, &b, &c);
        jac.kvector(|| format!("random triple #{n}"), &s);
    }
    rep.push(jac.finish());

    let mut hom = ZeroCheck::new("anchor-homomorphism", naming);
    for i in 0..r {
        for j in i + 1..r {
            let lhs = alg.anchor_of(&alg.bracket(&alg.basis(i), &alg.basis(j)));
            let rhs = vector_field_bracket(&alg.anchor_matrix()[i], &alg.anchor_matrix()[j]);
            let res: Vec<_> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            let txt = res
                .iter()
                .enumerate()
                .filter(|(_, f)| !f.is_zero())
                .map(|(c, f)| format!("({})·∂{}", f.display(&naming.coords), naming.coords[c]))
                .collect::<Vec<_>>();
            hom.text(|| frame_label(alg, &[i, j]), (!txt.is_empty()).then(|| txt.join(" + ")));
        }
    }
    rep.push(hom.finish());

    let mut leib = ZeroCheck::new("leibniz", naming);
    for f in monomial_polys(alg.nvars(), cfg.degree) {
        for i in 0..r {
            for j in 0..r {
                let x = alg.basis(i);
                let y = alg.basis(j);
                let lhs = alg.bracket(&x, &y.scale(&f));
                let rhs = alg.bracket(&x, &y).scale(&f).add(&y.scale(&alg.anchor_basis_apply(i, &f)));
                leib.kvector(
                    || format!("{}, ({})·{}", frame_label(alg, &[i]), f.display(&naming.coords), frame_label(alg, &[j])),
                    &lhs.sub(&rhs),
                );
            }
        }
    }
    rep.push(leib.finish());
    rep
}

fn jacobiator(alg: &LieAlgebroid, a: &KVector, b: &KVector, c: &KVector) -> KVector {
    alg.bracket(&alg.bracket(a, b), c)
        .add(&alg.bracket(&alg.bracket(b, c), a))
        .add(&alg.bracket(&alg.bracket(c, a), b))
}

/// Checks `dφ0 = 0`, reporting the residual 2-form.
pub fn verify_cocycle(ja: &JacobiAlgebroid) -> Report {
    let mut rep = Report::new("cocycle");
    let d = ja.base().differential(ja.phi0());
    if d.is_zero() {
        rep.push(Item::pass("closed"));
    } else {
        let (idx, _) = d.terms().next().expect("nonzero");
        let w = idx
            .iter()
            .map(|&i| ja.naming().basis(i, Variance::Multivector))
            .collect::<Vec<_>>()
            .join(", ");
        rep.push(Item::fail("closed", w, d.display(ja.naming())));
    }
    rep
}
