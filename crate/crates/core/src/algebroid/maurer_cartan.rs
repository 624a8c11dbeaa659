use super::{apply_vector_field, LieAlgebroid};
use crate::error::{Error, Result};
use crate::report::{Item, Report, ZeroCheck};
use crate::sampling::{monomial_polys, CheckConfig};
use crate::symalg::{KVector, Poly, Variance};

/// A `gl(n)`-valued 1-form on an algebroid: `entries[a][b]` is the
/// 1-form giving the `(a, b)` matrix entry of `θ(X)`.
#[derive(Clone, Debug)]
pub struct GlValuedForm {
    pub n: usize,
    pub entries: Vec<Vec<KVector>>,
}

impl GlValuedForm {
    pub fn new(alg: &LieAlgebroid, entries: Vec<Vec<KVector>>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::RankMismatch { expected: n, got: row.len() });
            }
            for e in row {
                alg.check_element(e)?;
                if e.degree() != 1 || e.variance() != Variance::Form {
                    return Err(Error::Degree("θ entries must be 1-forms".into()));
                }
            }
        }
        Ok(GlValuedForm { n, entries })
    }

    /// Scalar (n = 1) form from a single 1-form.
    pub fn scalar(alg: &LieAlgebroid, phi: KVector) -> Result<Self> {
        Self::new(alg, vec![vec![phi]])
    }

    /// The matrix `θ(e_i)`.
    pub fn at_frame(&self, i: usize) -> Vec<Vec<Poly>> {
        self.entries.iter().map(|row| row.iter().map(|e| e.coeff(&[i])).collect()).collect()
    }
}

fn mat_mul(a: &[Vec<Poly>], b: &[Vec<Poly>], nv: usize) -> Vec<Vec<Poly>> {
    let n = a.len();
    let mut out = vec![vec![Poly::zero(nv); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

/// Checks `dθ + ½[θ∧θ] = 0` and, independently, that `ρ = a + θ` is a
/// representation by applying `[ρ(e_i), ρ(e_j)] − ρ([e_i, e_j])` to
/// monomial-valued test functions. Both items must agree.
pub fn verify_maurer_cartan(alg: &LieAlgebroid, theta: &GlValuedForm, cfg: &CheckConfig) -> Report {
    let mut rep = Report::new("maurer-cartan");
    let naming = alg.naming();
    let r = alg.rank();
    let nv = alg.nvars();
    let n = theta.n;

    let mut mc = ZeroCheck::new("maurer-cartan-equation", naming);
    for i in 0..r {
        for j in i + 1..r {
            let ti = theta.at_frame(i);
            let tj = theta.at_frame(j);
            let c1 = mat_mul(&ti, &tj, nv);
            let c2 = mat_mul(&tj, &ti, nv);
            for a in 0..n {
                for b in 0..n {
                    let d = alg.differential(&theta.entries[a][b]).coeff(&[i, j]);
                    let res = &d + &(&c1[a][b] - &c2[a][b]);
                    mc.poly(|| format!("entry ({},{}) on e{}, e{}", a + 1, b + 1, i + 1, j + 1), &res);
                }
            }
        }
    }
    rep.push(mc.finish());

    // ρ(e_i) u = a(e_i) u + θ(e_i) u for u: M → R^n
    let rho = |i: usize, u: &[Poly]| -> Vec<Poly> {
        let t = theta.at_frame(i);
        (0..n)
            .map(|a| {
                let mut acc = apply_vector_field(&alg.anchor_matrix()[i], &u[a]);
                for b in 0..n {
                    acc += &(&t[a][b] * &u[b]);
                }
                acc
            })
            .collect()
    };
    let rho_section = |x: &KVector, u: &[Poly]| -> Vec<Poly> {
        let c = x.components();
        let mut out = vec![Poly::zero(nv); n];
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (a, v) in rho(i, u).into_iter().enumerate() {
                out[a] += &(ci * &v);
            }
        }
        out
    };
    let mut direct = ZeroCheck::new("representation", naming);
    for f in monomial_polys(nv, cfg.degree) {
        for b in 0..n {
            let mut u = vec![Poly::zero(nv); n];
            u[b] = f.clone();
            for i in 0..r {
                for j in i + 1..r {
                    let lhs_a = rho(i, &rho(j, &u));
                    let lhs_b = rho(j, &rho(i, &u));
                    let br = rho_section(&alg.bracket(&alg.basis(i), &alg.basis(j)), &u);
                    let res: Vec<Poly> = (0..n).map(|a| &(&lhs_a[a] - &lhs_b[a]) - &br[a]).collect();
                    let txt = res
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| !p.is_zero())
                        .map(|(a, p)| format!("[{}]: {}", a + 1, p.display(&naming.coords)))
                        .collect::<Vec<_>>();
                    direct.text(
                        || format!("e{}, e{} on {}·ε{}", i + 1, j + 1, f.display(&naming.coords), b + 1),
                        (!txt.is_empty()).then(|| txt.join("; ")),
                    );
                }
            }
        }
    }
    rep.push(direct.finish());

    let agree = rep.items[0].status == rep.items[1].status;
    rep.push(Item::from_bool("routes-agree", agree, "equation vs operator commutator", "verdicts differ"));
    rep
}
