use super::{apply_vector_field, LieAlgebroid};
use crate::sampling::subsets;
use crate::symalg::{KVector, Poly, Variance};

/// Koszul formula for the differential of a representation
/// `ρ(e_i) = Σ_j anchor[i][j] ∂_j + scalar[i]` with brackets `structure`:
///
/// `dω(e_{i0},…,e_{ik}) = Σ_a (−1)^a ρ(e_{ia}) ω(…) + Σ_{a<b} (−1)^{a+b} ω([e_{ia}, e_{ib}], …)`.
///
/// The result has the variance of `omega`, so the same routine computes
/// the differential of a dual structure acting on multivectors.
pub fn koszul(
    anchor: &[Vec<Poly>],
    scalar: Option<&[Poly]>,
    structure: &[Vec<Vec<Poly>>],
    omega: &KVector,
) -> KVector {
    let r = omega.rank();
    let k = omega.degree();
    let nv = omega.nvars();
    let mut out = KVector::zero(r, nv, k + 1, omega.variance());
    if k + 1 > r {
        return out;
    }
    for idx in subsets(r, k + 1) {
        let mut val = Poly::zero(nv);
        for a in 0..=k {
            let mut rest = idx.clone();
            let ia = rest.remove(a);
            let w = omega.coeff(&rest);
            let mut term = apply_vector_field(&anchor[ia], &w);
            if let Some(s) = scalar {
                if !s[ia].is_zero() && !w.is_zero() {
                    term += &(&s[ia] * &w);
                }
            }
            if a % 2 == 0 {
                val += &term;
            } else {
                val -= &term;
            }
        }
        for a in 0..=k {
            for b in a + 1..=k {
                let (ia, ib) = (idx[a], idx[b]);
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|(n, _)| *n != a && *n != b)
                    .map(|(_, &i)| i)
                    .collect();
                let mut term = Poly::zero(nv);
                for (l, c) in structure[ia][ib].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut full = Vec::with_capacity(k);
                    full.push(l);
                    full.extend_from_slice(&rest);
                    let w = omega.coeff_unsorted(&full);
                    if !w.is_zero() {
                        term += &(c * &w);
                    }
                }
                if (a + b) % 2 == 0 {
                    val += &term;
                } else {
                    val -= &term;
                }
            }
        }
        out.insert(&idx, val);
    }
    out
}

/// A generator of the Gerstenhaber algebra: a function or a frame element.
#[derive(Clone)]
enum Gen {
    Fun(Poly),
    Frame(usize),
}

impl Gen {
    fn degree(&self) -> usize {
        match self {
            Gen::Fun(_) => 0,
            Gen::Frame(_) => 1,
        }
    }

    fn to_kvector(&self, alg: &LieAlgebroid) -> KVector {
        match self {
            Gen::Fun(f) => KVector::scalar(alg.rank(), f.clone(), Variance::Multivector),
            Gen::Frame(i) => alg.basis(*i),
        }
    }
}

fn gen_bracket(alg: &LieAlgebroid, a: &Gen, b: &Gen) -> Option<KVector> {
    let mv = Variance::Multivector;
    match (a, b) {
        (Gen::Fun(_), Gen::Fun(_)) => None,
        (Gen::Frame(i), Gen::Fun(g)) => Some(KVector::scalar(alg.rank(), alg.anchor_basis_apply(*i, g), mv)),
        (Gen::Fun(f), Gen::Frame(j)) => Some(KVector::scalar(alg.rank(), -alg.anchor_basis_apply(*j, f), mv)),
        (Gen::Frame(i), Gen::Frame(j)) => Some(alg.frame_bracket(*i, *j)),
    }
}

fn wedge_all(alg: &LieAlgebroid, gens: &[Gen]) -> KVector {
    let mut acc = KVector::scalar(alg.rank(), Poly::one(alg.nvars()), Variance::Multivector);
    for g in gens {
        acc = acc.wedge(&g.to_kvector(alg));
    }
    acc
}

fn term_gens(idx: &[usize], f: &Poly) -> Vec<Gen> {
    let mut g = vec![Gen::Fun(f.clone())];
    g.extend(idx.iter().map(|&i| Gen::Frame(i)));
    g
}

/// `[a, B1∧…∧Bn] = Σ_l (−1)^{(|a|−1)(b1+…+b_{l−1})} B1∧…∧[a, Bl]∧…∧Bn`.
fn bracket_gen_product(alg: &LieAlgebroid, a: &Gen, bs: &[Gen], degree: usize) -> KVector {
    let mut out = KVector::zero(alg.rank(), alg.nvars(), degree, Variance::Multivector);
    let mut before = 0usize;
    for l in 0..bs.len() {
        if let Some(br) = gen_bracket(alg, a, &bs[l]) {
            let t = wedge_all(alg, &bs[..l]).wedge(&br).wedge(&wedge_all(alg, &bs[l + 1..]));
            // (|a| − 1) has the parity of (|a| + 1)
            let odd = (a.degree() + 1) * before % 2 == 1;
            out = if odd { out.sub(&t) } else { out.add(&t) };
        }
        before += bs[l].degree();
    }
    out
}

pub(super) fn schouten(alg: &LieAlgebroid, p: &KVector, q: &KVector) -> KVector {
    let (dp, dq) = (p.degree(), q.degree());
    let degree = (dp + dq).saturating_sub(1);
    let mut out = KVector::zero(alg.rank(), alg.nvars(), degree, Variance::Multivector);
    if dp + dq == 0 || degree > alg.rank() {
        return out;
    }
    for (i, f) in p.terms() {
        let agens = term_gens(i, f);
        for (j, g) in q.terms() {
            let bgens = term_gens(j, g);
            // [A1∧…∧Am, R] = Σ_k (−1)^{(|R|−1)(a_{k+1}+…+a_m)} A1∧…∧[Ak, R]∧…∧Am
            let mut after: usize = agens.iter().map(Gen::degree).sum();
            for k in 0..agens.len() {
                after -= agens[k].degree();
                let inner_deg = (agens[k].degree() + dq).saturating_sub(1);
                if agens[k].degree() + dq == 0 {
                    continue;
                }
                let inner = bracket_gen_product(alg, &agens[k], &bgens, inner_deg);
                if inner.is_zero() {
                    continue;
                }
                let t = wedge_all(alg, &agens[..k]).wedge(&inner).wedge(&wedge_all(alg, &agens[k + 1..]));
                let odd = (dq + 1) * after % 2 == 1;
                out = if odd { out.sub(&t) } else { out.add(&t) };
            }
        }
    }
    out
}
