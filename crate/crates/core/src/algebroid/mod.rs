//! Lie and Jacobi algebroids over a coordinate chart, presented by a global
//! frame: anchor matrix, structure functions and (for Jacobi algebroids) a
//! 1-cocycle.

mod calculus;
mod maurer_cartan;
mod verify;

pub use calculus::koszul;
pub use maurer_cartan::{verify_maurer_cartan, GlValuedForm};
pub use verify::{verify_cocycle, verify_lie_algebroid};

use crate::error::{Error, Result};
use crate::symalg::{KVector, Naming, Poly, Rational, Variance};

const MV: Variance = Variance::Multivector;
const FORM: Variance = Variance::Form;

/// A first-order differential operator `f ↦ V(f) + s·f` on functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FirstOrderOp {
    pub vector: Vec<Poly>,
    pub scalar: Poly,
}

impl FirstOrderOp {
    pub fn zero(nvars: usize) -> Self {
        FirstOrderOp { vector: vec![Poly::zero(nvars); nvars], scalar: Poly::zero(nvars) }
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        &apply_vector_field(&self.vector, f) + &(&self.scalar * f)
    }

    pub fn apply_vector(&self, f: &Poly) -> Poly {
        apply_vector_field(&self.vector, f)
    }

    pub fn add(&self, o: &FirstOrderOp) -> FirstOrderOp {
        FirstOrderOp {
            vector: self.vector.iter().zip(&o.vector).map(|(a, b)| a + b).collect(),
            scalar: &self.scalar + &o.scalar,
        }
    }

    pub fn sub(&self, o: &FirstOrderOp) -> FirstOrderOp {
        FirstOrderOp {
            vector: self.vector.iter().zip(&o.vector).map(|(a, b)| a - b).collect(),
            scalar: &self.scalar - &o.scalar,
        }
    }

    /// `[D1, D2] = ([V1, V2], V1(s2) − V2(s1))`.
    pub fn commutator(&self, o: &FirstOrderOp) -> FirstOrderOp {
        FirstOrderOp {
            vector: vector_field_bracket(&self.vector, &o.vector),
            scalar: &apply_vector_field(&self.vector, &o.scalar) - &apply_vector_field(&o.vector, &self.scalar),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.vector.iter().all(Poly::is_zero)
    }

    pub fn display(&self, coords: &[String]) -> String {
        let mut parts = Vec::new();
        for (j, v) in self.vector.iter().enumerate() {
            if !v.is_zero() {
                parts.push(format!("({})·∂{}", v.display(coords), coords[j]));
            }
        }
        if !self.scalar.is_zero() {
            parts.push(format!("({})", self.scalar.display(coords)));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn apply_vector_field(v: &[Poly], f: &Poly) -> Poly {
    let mut acc = Poly::zero(f.nvars());
    for (j, vj) in v.iter().enumerate() {
        if !vj.is_zero() {
            acc += &(vj * &f.partial(j));
        }
    }
    acc
}

pub fn vector_field_bracket(v: &[Poly], w: &[Poly]) -> Vec<Poly> {
    (0..v.len())
        .map(|k| &apply_vector_field(v, &w[k]) - &apply_vector_field(w, &v[k]))
        .collect()
}

/// A Lie algebroid presented in a global frame `e_1..e_r` over `R^m`:
/// `a(e_i) = Σ_j anchor[i][j] ∂_j`, `[e_i, e_j] = Σ_k structure[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct LieAlgebroid {
    naming: Naming,
    anchor: Vec<Vec<Poly>>,
    structure: Vec<Vec<Vec<Poly>>>,
}

impl LieAlgebroid {
    /// Validates shapes only; the algebroid axioms (antisymmetry included)
    /// are checked by [`verify_lie_algebroid`].
    pub fn new(naming: Naming, anchor: Vec<Vec<Poly>>, structure: Vec<Vec<Vec<Poly>>>) -> Result<Self> {
        let m = naming.coords.len();
        let r = anchor.len();
        if naming.frame.len() != r {
            return Err(Error::RankMismatch { expected: r, got: naming.frame.len() });
        }
        for row in &anchor {
            if row.len() != m {
                return Err(Error::BaseMismatch { expected: m, got: row.len() });
            }
        }
        if structure.len() != r {
            return Err(Error::RankMismatch { expected: r, got: structure.len() });
        }
        for si in &structure {
            if si.len() != r {
                return Err(Error::RankMismatch { expected: r, got: si.len() });
            }
            for sij in si {
                if sij.len() != r {
                    return Err(Error::RankMismatch { expected: r, got: sij.len() });
                }
                for c in sij {
                    if c.nvars() != m {
                        return Err(Error::BaseMismatch { expected: m, got: c.nvars() });
                    }
                }
            }
        }
        for row in anchor.iter().flatten() {
            if row.nvars() != m {
                return Err(Error::BaseMismatch { expected: m, got: row.nvars() });
            }
        }
        Ok(LieAlgebroid { naming, anchor, structure })
    }

    /// The tangent bundle of `R^m` with the coordinate frame.
    pub fn tangent(coords: &[&str]) -> Self {
        let m = coords.len();
        let naming = Naming {
            coords: coords.iter().map(|s| s.to_string()).collect(),
            frame: coords.iter().map(|s| s.to_string()).collect(),
            tangent_like: true,
            flipped: false,
        };
        let anchor = (0..m)
            .map(|i| (0..m).map(|j| Poly::from_int(m, (i == j) as i64)).collect())
            .collect();
        let structure = vec![vec![vec![Poly::zero(m); m]; m]; m];
        LieAlgebroid { naming, anchor, structure }
    }

    /// Rank-`r` bundle with zero anchor and zero bracket.
    pub fn trivial(coords: &[&str], rank: usize) -> Self {
        let m = coords.len();
        let naming = Naming::generic(coords.iter().map(|s| s.to_string()).collect(), rank);
        LieAlgebroid {
            naming,
            anchor: vec![vec![Poly::zero(m); m]; rank],
            structure: vec![vec![vec![Poly::zero(m); rank]; rank]; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.anchor.len()
    }
    pub fn nvars(&self) -> usize {
        self.naming.coords.len()
    }
    pub fn naming(&self) -> &Naming {
        &self.naming
    }
    pub fn with_naming(mut self, naming: Naming) -> Self {
        self.naming = naming;
        self
    }
    pub fn anchor_matrix(&self) -> &[Vec<Poly>] {
        &self.anchor
    }
    pub fn structure(&self) -> &[Vec<Vec<Poly>>] {
        &self.structure
    }
    pub fn structure_fn(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.structure[i][j][k]
    }

    pub fn zero_poly(&self) -> Poly {
        Poly::zero(self.nvars())
    }

    pub fn section(&self, comps: Vec<Poly>) -> KVector {
        KVector::from_components(self.rank(), self.nvars(), comps, MV)
    }

    pub fn form(&self, comps: Vec<Poly>) -> KVector {
        KVector::from_components(self.rank(), self.nvars(), comps, FORM)
    }

    pub fn basis(&self, i: usize) -> KVector {
        KVector::basis1(self.rank(), self.nvars(), i, MV)
    }

    pub fn cobasis(&self, i: usize) -> KVector {
        KVector::basis1(self.rank(), self.nvars(), i, FORM)
    }

    pub fn scalar(&self, f: Poly, variance: Variance) -> KVector {
        KVector::scalar(self.rank(), f, variance)
    }

    pub fn check_element(&self, k: &KVector) -> Result<()> {
        if k.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: k.rank() });
        }
        if k.nvars() != self.nvars() {
            return Err(Error::BaseMismatch { expected: self.nvars(), got: k.nvars() });
        }
        Ok(())
    }

    /// `a(e_i) f`.
    pub fn anchor_basis_apply(&self, i: usize, f: &Poly) -> Poly {
        apply_vector_field(&self.anchor[i], f)
    }

    /// The vector field `a(X)` for a section `X`.
    pub fn anchor_of(&self, x: &KVector) -> Vec<Poly> {
        let c = x.components();
        let m = self.nvars();
        (0..m)
            .map(|j| {
                let mut acc = Poly::zero(m);
                for (i, ci) in c.iter().enumerate() {
                    if !ci.is_zero() && !self.anchor[i][j].is_zero() {
                        acc += &(ci * &self.anchor[i][j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn frame_bracket(&self, i: usize, j: usize) -> KVector {
        self.section(self.structure[i][j].clone())
    }

    /// Bracket of two sections.
    pub fn try_bracket(&self, x: &KVector, y: &KVector) -> Result<KVector> {
        self.check_element(x)?;
        self.check_element(y)?;
        if x.degree() != 1 || y.degree() != 1 || x.variance() != MV || y.variance() != MV {
            return Err(Error::Degree("section bracket needs two sections of A".into()));
        }
        let r = self.rank();
        let xc = x.components();
        let yc = y.components();
        let ax = self.anchor_of(x);
        let ay = self.anchor_of(y);
        let mut out: Vec<Poly> = (0..r)
            .map(|k| &apply_vector_field(&ax, &yc[k]) - &apply_vector_field(&ay, &xc[k]))
            .collect();
        for i in 0..r {
            if xc[i].is_zero() {
                continue;
            }
            for j in 0..r {
                if yc[j].is_zero() {
                    continue;
                }
                let fg = &xc[i] * &yc[j];
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&fg * c);
                    }
                }
            }
        }
        Ok(self.section(out))
    }

    pub fn bracket(&self, x: &KVector, y: &KVector) -> KVector {
        self.try_bracket(x, y).expect("invalid section bracket")
    }

    /// Lie algebroid differential on forms (also accepts multivectors of the
    /// dual, which is how the dual structure acts).
    pub fn try_differential(&self, omega: &KVector) -> Result<KVector> {
        self.check_element(omega)?;
        if omega.variance() != FORM {
            return Err(Error::VarianceMismatch("differential acts on forms"));
        }
        Ok(koszul(&self.anchor, None, &self.structure, omega))
    }

    pub fn differential(&self, omega: &KVector) -> KVector {
        self.try_differential(omega).expect("invalid differential argument")
    }

    /// Classical Lie derivative `L_X = i_X d + d i_X` on forms.
    pub fn lie_derivative(&self, x: &KVector, omega: &KVector) -> KVector {
        cartan(x, omega, |w| self.differential(w))
    }

    /// Schouten bracket with the sign convention
    /// `[P, Q] = −(−1)^{(p−1)(q−1)} [Q, P]` and `[X, f] = a(X) f`.
    pub fn try_schouten(&self, p: &KVector, q: &KVector) -> Result<KVector> {
        self.check_element(p)?;
        self.check_element(q)?;
        if p.variance() != MV || q.variance() != MV {
            return Err(Error::VarianceMismatch("Schouten bracket acts on multivectors"));
        }
        Ok(calculus::schouten(self, p, q))
    }

    pub fn schouten(&self, p: &KVector, q: &KVector) -> KVector {
        self.try_schouten(p, q).expect("invalid Schouten arguments")
    }

    /// Same algebroid on a larger coordinate chart (new coordinates appended,
    /// anchor has no component along them).
    pub fn extend_coords(&self, extra: &[&str]) -> LieAlgebroid {
        let mut naming = self.naming.clone();
        naming.coords.extend(extra.iter().map(|s| s.to_string()));
        let m = naming.coords.len();
        let anchor = self
            .anchor
            .iter()
            .map(|row| {
                let mut r: Vec<Poly> = row.iter().map(|f| f.extend_vars(m)).collect();
                r.resize(m, Poly::zero(m));
                r
            })
            .collect();
        let structure = self
            .structure
            .iter()
            .map(|a| a.iter().map(|b| b.iter().map(|f| f.extend_vars(m)).collect()).collect())
            .collect();
        LieAlgebroid { naming, anchor, structure }
    }
}

/// `i_X ∘ d + d ∘ i_X` for a given differential.
pub(crate) fn cartan(x: &KVector, omega: &KVector, d: impl Fn(&KVector) -> KVector) -> KVector {
    let first = x.interior(&d(omega));
    if omega.degree() == 0 {
        return first;
    }
    first.add(&d(&x.interior(omega)))
}

/// A Jacobi algebroid: a Lie algebroid with a 1-cocycle `φ0`.
#[derive(Clone, Debug)]
pub struct JacobiAlgebroid {
    base: LieAlgebroid,
    phi0: KVector,
}

impl JacobiAlgebroid {
    /// Builds the pair without checking the cocycle condition; see
    /// [`JacobiAlgebroid::new_checked`] and [`verify_cocycle`].
    pub fn new(base: LieAlgebroid, phi0: KVector) -> Result<Self> {
        base.check_element(&phi0)?;
        if phi0.degree() != 1 || phi0.variance() != FORM {
            return Err(Error::Degree("the cocycle must be a 1-form".into()));
        }
        Ok(JacobiAlgebroid { base, phi0 })
    }

    /// Rejects cocycles with `dφ0 ≠ 0`.
    pub fn new_checked(base: LieAlgebroid, phi0: KVector) -> Result<Self> {
        let ja = Self::new(base, phi0)?;
        let d = ja.base.differential(&ja.phi0);
        if !d.is_zero() {
            return Err(Error::NotClosed(d.display(ja.base.naming())));
        }
        Ok(ja)
    }

    /// The Lie algebroid with zero cocycle.
    pub fn from_lie(base: LieAlgebroid) -> Self {
        let phi0 = KVector::zero(base.rank(), base.nvars(), 1, FORM);
        JacobiAlgebroid { base, phi0 }
    }

    pub fn base(&self) -> &LieAlgebroid {
        &self.base
    }
    pub fn phi0(&self) -> &KVector {
        &self.phi0
    }
    pub fn rank(&self) -> usize {
        self.base.rank()
    }
    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }
    pub fn naming(&self) -> &Naming {
        self.base.naming()
    }

    pub fn phi0_components(&self) -> Vec<Poly> {
        self.phi0.components()
    }

    /// `ρ(X) = a(X) + φ0(X)` as a first-order operator.
    pub fn rho(&self, x: &KVector) -> FirstOrderOp {
        FirstOrderOp { vector: self.base.anchor_of(x), scalar: self.phi0.pair(x) }
    }

    /// `d^{φ0}`, computed from the representation `ρ` by the Koszul formula.
    pub fn try_differential(&self, omega: &KVector) -> Result<KVector> {
        self.base.check_element(omega)?;
        if omega.variance() != FORM {
            return Err(Error::VarianceMismatch("differential acts on forms"));
        }
        let s = self.phi0.components();
        Ok(koszul(&self.base.anchor, Some(&s), &self.base.structure, omega))
    }

    pub fn differential(&self, omega: &KVector) -> KVector {
        self.try_differential(omega).expect("invalid differential argument")
    }

    /// `ℒ_X = i_X d^{φ0} + d^{φ0} i_X`.
    pub fn lie_derivative(&self, x: &KVector, omega: &KVector) -> KVector {
        cartan(x, omega, |w| self.differential(w))
    }

    /// The bracket the Schouten–Jacobi bracket is built on. It is
    /// `(−1)^{p+1}` times [`LieAlgebroid::schouten`], which makes the
    /// correction terms below graded antisymmetric.
    pub fn schouten_base(&self, p: &KVector, q: &KVector) -> KVector {
        let s = self.base.schouten(p, q);
        if p.degree().is_multiple_of(2) {
            s.neg()
        } else {
            s
        }
    }

    /// `⟦P,Q⟧ = [P,Q] + (−1)^{p+1}(p−1) P∧i_{φ0}Q − (q−1) i_{φ0}P∧Q`.
    pub fn try_schouten_jacobi(&self, p: &KVector, q: &KVector) -> Result<KVector> {
        self.base.check_element(p)?;
        self.base.check_element(q)?;
        if p.variance() != MV || q.variance() != MV {
            return Err(Error::VarianceMismatch("Schouten–Jacobi bracket acts on multivectors"));
        }
        let (dp, dq) = (p.degree() as i64, q.degree() as i64);
        let mut out = self.schouten_base(p, q);
        if dq > 0 && dp != 1 {
            let sign = if dp % 2 == 1 { 1 } else { -1 };
            out = out.add(&p.wedge(&self.phi0.interior(q)).scale_int(sign * (dp - 1)));
        }
        if dp > 0 && dq != 1 {
            out = out.sub(&self.phi0.interior(p).wedge(q).scale_int(dq - 1));
        }
        Ok(out)
    }

    pub fn schouten_jacobi(&self, p: &KVector, q: &KVector) -> KVector {
        self.try_schouten_jacobi(p, q).expect("invalid Schouten–Jacobi arguments")
    }

    /// Evaluates `ρ(e_i)` at a point, for diagnostics.
    pub fn rho_basis_at(&self, i: usize, point: &[Rational]) -> Result<Vec<Rational>> {
        let mut v: Vec<Rational> = self.base.anchor[i].iter().map(|f| f.eval(point)).collect::<Result<_>>()?;
        v.push(self.phi0.coeff(&[i]).eval(point)?);
        Ok(v)
    }
}
