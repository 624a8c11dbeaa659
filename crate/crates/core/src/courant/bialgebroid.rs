use super::verify::frame_label;
use super::{CjStructure, GenSection, Kind};
use crate::algebroid::{koszul, verify_cocycle, verify_lie_algebroid, FirstOrderOp, JacobiAlgebroid, LieAlgebroid};
use crate::error::{Error, Result};
use crate::nijenhuis::{bracket_n, dual_algebroid, QuadrupleCandidate};
use crate::report::{Report, ZeroCheck};
use crate::sampling::{monomial_polys, CheckConfig};
use crate::symalg::{rat, KVector, Poly, Variance};

const MV: Variance = Variance::Multivector;
const FORM: Variance = Variance::Form;

/// A quasi-Jacobi bialgebroid `((A, φ0), δ, φ)` presented by the dual
/// anchor `ρ_*` and the structure functions of `[·,·]_*` on the dual
/// frame, from which `δ` is rebuilt by the Koszul formula.
#[derive(Clone, Debug)]
pub struct DualStructure {
    host: JacobiAlgebroid,
    dual_side: LieAlgebroid,
    dual_scalar: Vec<Poly>,
    phi: KVector,
}

impl DualStructure {
    /// `dual_anchor[i] = ρ_*(ε^i)`, `dual_structure[i][j][k]` is the
    /// `ε^k`-coefficient of `[ε^i, ε^j]_*`, `φ` a host trivector.
    pub fn new(
        host: JacobiAlgebroid,
        dual_anchor: Vec<FirstOrderOp>,
        dual_structure: Vec<Vec<Vec<Poly>>>,
        phi: KVector,
    ) -> Result<Self> {
        let r = host.rank();
        let nv = host.nvars();
        if dual_anchor.len() != r {
            return Err(Error::RankMismatch { expected: r, got: dual_anchor.len() });
        }
        if phi.rank() != r || phi.nvars() != nv {
            return Err(Error::RankMismatch { expected: r, got: phi.rank() });
        }
        if phi.degree() != 3 || phi.variance() != MV {
            return Err(Error::Degree("φ must be a trivector".into()));
        }
        for op in &dual_anchor {
            if op.vector.len() != nv {
                return Err(Error::BaseMismatch { expected: nv, got: op.vector.len() });
            }
        }
        let anchor = dual_anchor.iter().map(|o| o.vector.clone()).collect();
        let dual_scalar = dual_anchor.iter().map(|o| o.scalar.clone()).collect();
        let dual_side = LieAlgebroid::new(host.naming().dual(), anchor, dual_structure)?;
        Ok(DualStructure { host, dual_side, dual_scalar, phi })
    }

    /// `δ = 0`, `φ = 0`.
    pub fn trivial(host: &JacobiAlgebroid) -> Self {
        let (r, nv) = (host.rank(), host.nvars());
        let zero = vec![vec![vec![Poly::zero(nv); r]; r]; r];
        Self::new(host.clone(), vec![FirstOrderOp::zero(nv); r], zero, KVector::zero(r, nv, 3, MV))
            .expect("consistent shapes")
    }

    /// `((A*, ρ∘π♯, ⟦·,·⟧_π), d_N, φ)` for a quadruple on `A`: the dual side
    /// is `A` with anchor `ρ∘N` and bracket `[·,·]_N`, and `φ` is read as a
    /// trivector of `A*`.
    pub fn from_quadruple(q: &QuadrupleCandidate) -> Self {
        let ja = &q.host;
        let alg = ja.base();
        let r = ja.rank();
        let host = dual_algebroid(ja, &q.pi);
        let anchor = (0..r).map(|i| ja.rho(&q.n.apply(&alg.basis(i)))).collect();
        let structure = (0..r)
            .map(|i| (0..r).map(|j| bracket_n(alg, &q.n, &alg.basis(i), &alg.basis(j)).components()).collect())
            .collect();
        Self::new(host, anchor, structure, q.phi.dual()).expect("shapes inherited from the quadruple")
    }

    /// The triangular structure of a bivector: `ρ_* = ρ∘π♯`,
    /// `[·,·]_* = ⟦·,·⟧_π`, `φ = 0`.
    pub fn triangular(ja: &JacobiAlgebroid, pi: &KVector) -> Self {
        let dual = dual_algebroid(ja, pi);
        let anchor = (0..ja.rank()).map(|i| dual.rho(&dual.base().basis(i))).collect();
        let structure = dual.base().structure().to_vec();
        let phi = KVector::zero(ja.rank(), ja.nvars(), 3, MV);
        Self::new(ja.clone(), anchor, structure, phi).expect("shapes inherited from the host")
    }

    pub fn host(&self) -> &JacobiAlgebroid {
        &self.host
    }
    pub fn phi(&self) -> &KVector {
        &self.phi
    }
    pub fn dual_side(&self) -> &LieAlgebroid {
        &self.dual_side
    }

    pub fn dual_anchor(&self) -> Vec<FirstOrderOp> {
        self.dual_side
            .anchor_matrix()
            .iter()
            .zip(&self.dual_scalar)
            .map(|(v, s)| FirstOrderOp { vector: v.clone(), scalar: s.clone() })
            .collect()
    }

    /// `ρ_*(ξ)` for a host 1-form.
    pub fn rho_star(&self, xi: &KVector) -> FirstOrderOp {
        let nv = self.host.nvars();
        let mut out = FirstOrderOp::zero(nv);
        for (i, c) in xi.components().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = &self.dual_side.anchor_matrix()[i];
            out = out.add(&FirstOrderOp {
                vector: v.iter().map(|f| f * c).collect(),
                scalar: &self.dual_scalar[i] * c,
            });
        }
        out
    }

    /// `δ` on host multivectors.
    pub fn delta(&self, p: &KVector) -> KVector {
        self.delta_with(p, true)
    }

    fn delta_with(&self, p: &KVector, scalar: bool) -> KVector {
        let s = scalar.then_some(self.dual_scalar.as_slice());
        koszul(self.dual_side.anchor_matrix(), s, self.dual_side.structure(), &p.dual()).dual()
    }

    /// `[ξ, η]_*` on host 1-forms.
    pub fn dual_bracket(&self, xi: &KVector, eta: &KVector) -> KVector {
        self.dual_side.bracket(&xi.dual(), &eta.dual()).dual()
    }

    /// Structure functions `c[i][j][k]` of `[·,·]_*`.
    pub fn dual_structure(&self) -> &[Vec<Vec<Poly>>] {
        self.dual_side.structure()
    }
}

/// How the differential in the mixed bracket terms
/// `⟦X,ξ⟧ = i_X dξ − i_ξ δX + d(ξ(X))` (and its mirror) is read.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MixedReading {
    /// `d = d^{φ0}` on the host side and `δ` with the scalar part of `ρ_*`.
    Jacobi,
    /// The Lie algebroid differentials on both sides, cocycles dropped.
    LieOnly,
}

/// Which summand of `A ⊕ A*` is taken as the Dirac structure.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Splitting {
    /// Dirac `A`, complement `A*`.
    First,
    /// Dirac `A*`, complement `A`; the extracted host is then built on the
    /// dual frame of the structure's host.
    Second,
}

/// The Courant–Jacobi candidate `A ⊕ A*` of a quasi-Jacobi bialgebroid.
pub fn build_double(d: &DualStructure, reading: MixedReading) -> CjStructure {
    CjStructure { host: d.host.clone(), kind: Kind::Double { dual: Box::new(d.clone()), reading } }
}

pub(super) fn double_bracket(
    ja: &JacobiAlgebroid,
    d: &DualStructure,
    reading: MixedReading,
    u: &GenSection,
    v: &GenSection,
) -> GenSection {
    let r = ja.rank();
    let jacobi = reading == MixedReading::Jacobi;
    let dh = |w: &KVector| if jacobi { ja.differential(w) } else { ja.base().differential(w) };
    let dd = |p: &KVector| d.delta_with(p, jacobi);
    let fun = |f: Poly, var| KVector::scalar(r, f, var);

    // ⟦X,Y⟧ = [X,Y], ⟦ξ,η⟧ = [ξ,η]_* + φ(ξ,η,·)
    let mut x = ja.base().bracket(&u.x, &v.x).add(&u.xi.wedge(&v.xi).interior(&d.phi));
    let mut xi = d.dual_bracket(&u.xi, &v.xi);

    // ⟦X,η⟧ = i_X dη − i_η δX + d(η(X))
    let ex = v.xi.pair(&u.x);
    xi = xi.add(&u.x.interior(&dh(&v.xi))).add(&dh(&fun(ex.clone(), FORM)));
    x = x.sub(&v.xi.interior(&dd(&u.x)));

    // ⟦ξ,Y⟧ = −i_Y dξ + i_ξ δY + δ(ξ(Y))
    let ey = u.xi.pair(&v.x);
    xi = xi.sub(&v.x.interior(&dh(&u.xi)));
    x = x.add(&u.xi.interior(&dd(&v.x))).add(&dd(&fun(ey, MV)));
    GenSection { x, xi }
}

/// Reads a quasi-Jacobi bialgebroid off `s` for the given splitting:
/// `ρ_B = κ|_B`, `[ξ,η]_B` the `B`-part of `⟦ξ,η⟧` and
/// `φ(ξ,η,γ) = 2⟨⟦ξ,η⟧,γ⟩`. The Dirac summand becomes the host.
pub fn extract_bialgebroid(s: &CjStructure, splitting: Splitting) -> Result<DualStructure> {
    let r = s.rank();
    let nv = s.nvars();
    let (dirac, comp): (Vec<GenSection>, Vec<GenSection>) = match splitting {
        Splitting::First => ((0..r).map(|i| s.frame(i)).collect(), (0..r).map(|i| s.frame(r + i)).collect()),
        Splitting::Second => ((0..r).map(|i| s.frame(r + i)).collect(), (0..r).map(|i| s.frame(i)).collect()),
    };
    let naming = match splitting {
        Splitting::First => s.naming().clone(),
        Splitting::Second => s.naming().dual(),
    };
    let two = rat(2);
    let pr = |a: &GenSection, b: &GenSection| s.pairing(a, b).scale(&two);

    for i in 0..r {
        for j in 0..r {
            if !pr(&dirac[i], &dirac[j]).is_zero() {
                return Err(Error::Splitting(format!("Dirac summand is not isotropic at ({}, {})", i + 1, j + 1)));
            }
            if !pr(&comp[i], &comp[j]).is_zero() {
                return Err(Error::Splitting(format!("complement is not isotropic at ({}, {})", i + 1, j + 1)));
            }
            let expect = if i == j { Poly::one(nv) } else { Poly::zero(nv) };
            if pr(&dirac[i], &comp[j]) != expect {
                return Err(Error::Splitting(format!("summands are not dual at ({}, {})", i + 1, j + 1)));
            }
        }
    }

    let mut structure = vec![vec![vec![Poly::zero(nv); r]; r]; r];
    let mut dual_structure = structure.clone();
    let mut phi = KVector::zero(r, nv, 3, MV);
    for i in 0..r {
        for j in 0..r {
            let w = s.bracket(&dirac[i], &dirac[j]);
            for k in 0..r {
                if !pr(&w, &dirac[k]).is_zero() {
                    return Err(Error::Splitting(format!(
                        "Dirac summand is not involutive: bracket of frame {} and {} leaves it",
                        i + 1,
                        j + 1
                    )));
                }
                structure[i][j][k] = pr(&w, &comp[k]);
            }
            let w = s.bracket(&comp[i], &comp[j]);
            for k in 0..r {
                dual_structure[i][j][k] = pr(&w, &dirac[k]);
                if i < j && j < k {
                    phi.insert(&[i, j, k], pr(&w, &comp[k]));
                }
            }
        }
    }

    let rho: Vec<FirstOrderOp> = dirac.iter().map(|u| s.anchor(u)).collect();
    let anchor = rho.iter().map(|o| o.vector.clone()).collect();
    let base = LieAlgebroid::new(naming, anchor, structure)?;
    let phi0 = KVector::from_components(r, nv, rho.iter().map(|o| o.scalar.clone()).collect(), FORM);
    let host = JacobiAlgebroid::new(base, phi0)?;
    let dual_anchor = comp.iter().map(|u| s.anchor(u)).collect();
    DualStructure::new(host, dual_anchor, dual_structure, phi)
}

/// Checks the quasi-Jacobi bialgebroid conditions: the host is a Jacobi
/// algebroid, `δ` is a degree-1 derivation of the Schouten–Jacobi bracket,
/// `δ² = ⟦φ,·⟧` on functions and frame sections, and `δφ = 0`.
pub fn verify_quasi_bialgebroid(d: &DualStructure, cfg: &CheckConfig) -> Report {
    let mut rep = Report::new("quasi-bialgebroid");
    let ja = &d.host;
    let naming = ja.naming();
    let r = ja.rank();
    let nv = ja.nvars();
    rep.absorb("host", verify_lie_algebroid(ja.base(), cfg));
    rep.absorb("host", verify_cocycle(ja));

    let br = |p: &KVector, q: &KVector| ja.schouten_jacobi(p, q);
    let defect = |p: &KVector, q: &KVector| {
        let sign = if p.degree().is_multiple_of(2) { 1 } else { -1 };
        d.delta(&br(p, q)).add(&br(&d.delta(p), q)).add(&br(p, &d.delta(q)).scale_int(sign))
    };
    let monos = monomial_polys(nv, cfg.degree);
    let fun = |f: &Poly| KVector::scalar(r, f.clone(), MV);
    let basis = |i: usize| KVector::basis1(r, nv, i, MV);
    let lbl = |i: usize| frame_label(naming, &[i], r);

    let mut der = ZeroCheck::new("delta-derivation", naming);
    for f in &monos {
        for j in 0..r {
            let w = || format!("{}, {}", f.display(&naming.coords), lbl(j));
            der.kvector(w, &defect(&fun(f), &basis(j)));
            let w = || format!("{}, {}", lbl(j), f.display(&naming.coords));
            der.kvector(w, &defect(&basis(j), &fun(f)));
        }
    }
    for i in 0..r {
        for j in 0..r {
            der.kvector(|| frame_label(naming, &[i, j], r), &defect(&basis(i), &basis(j)));
        }
    }
    rep.push(der.finish());

    let mut sq = ZeroCheck::new("delta-squared", naming);
    let sq_res = |p: &KVector| d.delta(&d.delta(p)).sub(&br(&d.phi, p));
    for f in &monos {
        sq.kvector(|| f.display(&naming.coords), &sq_res(&fun(f)));
    }
    for i in 0..r {
        sq.kvector(|| lbl(i), &sq_res(&basis(i)));
    }
    rep.push(sq.finish());

    let mut dp = ZeroCheck::new("delta-phi", naming);
    dp.kvector(|| "φ".into(), &d.delta(&d.phi));
    rep.push(dp.finish());
    rep
}

/// `extract ∘ build_double` on the first splitting, compared field by field
/// with `d`.
pub fn verify_roundtrip(d: &DualStructure) -> Report {
    let mut rep = Report::new("double-roundtrip");
    let e = match extract_bialgebroid(&build_double(d, MixedReading::Jacobi), Splitting::First) {
        Ok(e) => e,
        Err(err) => {
            rep.push(crate::report::Item::fail("extract", "A ⊕ A*", err.to_string()));
            return rep;
        }
    };
    let naming = d.host().naming();
    let mut host = ZeroCheck::new("host bracket", naming);
    let mut dual = ZeroCheck::new("dual bracket", naming);
    let mut anchor = ZeroCheck::new("dual anchor", naming);
    let r = d.host().rank();
    for i in 0..r {
        let (a, b) = (d.rho_star(&d.host().base().cobasis(i)), e.rho_star(&e.host().base().cobasis(i)));
        let w = || naming.basis(i, FORM);
        let diff = a.sub(&b);
        anchor.text(w, (!diff.is_zero()).then(|| diff.display(&naming.coords)));
        for j in 0..r {
            let w = || format!("{}, {}", naming.basis(i, MV), naming.basis(j, MV));
            host.kvector(w, &d.host().base().frame_bracket(i, j).sub(&e.host().base().frame_bracket(i, j)));
            let (xi, eta) = (d.host().base().cobasis(i), d.host().base().cobasis(j));
            let w = || format!("{}, {}", naming.basis(i, FORM), naming.basis(j, FORM));
            dual.kvector(w, &d.dual_bracket(&xi, &eta).sub(&e.dual_bracket(&xi, &eta)));
        }
    }
    rep.push(host.finish());
    rep.push(dual.finish());
    rep.push(anchor.finish());
    let dphi0 = d.host().phi0().sub(e.host().phi0());
    rep.push(if dphi0.is_zero() {
        crate::report::Item::pass("cocycle")
    } else {
        crate::report::Item::fail("cocycle", "φ0", dphi0.display(naming))
    });
    let dphi = d.phi().sub(e.phi());
    rep.push(if dphi.is_zero() {
        crate::report::Item::pass("phi")
    } else {
        crate::report::Item::fail("phi", "φ", dphi.display(naming))
    });
    rep
}
