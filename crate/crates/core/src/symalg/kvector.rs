//! Homogeneous elements of the exterior algebra of a free module of rank r
//! (or of its dual) with polynomial coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed};

use super::endo::EndoTensor;
use super::poly::{fmt_rational, Poly, Rational};
use crate::error::{Error, Result};

/// Whether an element lives in `∧A` or `∧A*`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, serde::Serialize)]
pub enum Variance {
    Multivector,
    Form,
}

impl Variance {
    pub fn dual(self) -> Variance {
        match self {
            Variance::Multivector => Variance::Form,
            Variance::Form => Variance::Multivector,
        }
    }
}

/// A degree-k element `Σ f_I e_I` with `I` a strictly increasing index tuple.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KVector {
    rank: usize,
    nvars: usize,
    degree: usize,
    variance: Variance,
    terms: BTreeMap<Vec<usize>, Poly>,
}

/// Sorts `idx` in place and returns the permutation sign, or `None` when an
/// index repeats.
pub fn sort_with_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    // insertion sort; tuples are tiny
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl KVector {
    pub fn zero(rank: usize, nvars: usize, degree: usize, variance: Variance) -> Self {
        KVector { rank, nvars, degree, variance, terms: BTreeMap::new() }
    }

    pub fn scalar(rank: usize, f: Poly, variance: Variance) -> Self {
        let mut k = Self::zero(rank, f.nvars(), 0, variance);
        k.add_term(vec![], f);
        k
    }

    /// `e_i` (multivector) or `e^i` (form).
    pub fn basis1(rank: usize, nvars: usize, i: usize, variance: Variance) -> Self {
        Self::basis(rank, nvars, &[i], variance)
    }

    /// The frame monomial `e_{i1}∧…∧e_{ik}` in the given (possibly unsorted) order.
    pub fn basis(rank: usize, nvars: usize, idx: &[usize], variance: Variance) -> Self {
        let mut k = Self::zero(rank, nvars, idx.len(), variance);
        k.insert(idx, Poly::one(nvars));
        k
    }

    /// Degree-1 element from its component list.
    pub fn from_components(rank: usize, nvars: usize, comps: Vec<Poly>, variance: Variance) -> Self {
        assert_eq!(comps.len(), rank);
        let mut k = Self::zero(rank, nvars, 1, variance);
        for (i, c) in comps.into_iter().enumerate() {
            k.add_term(vec![i], c);
        }
        k
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn variance(&self) -> Variance {
        self.variance
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.terms.iter()
    }

    /// Coefficient of the sorted index tuple `idx`.
    pub fn coeff(&self, idx: &[usize]) -> Poly {
        self.terms.get(idx).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// Coefficient of an arbitrary index tuple with antisymmetry applied.
    pub fn coeff_unsorted(&self, idx: &[usize]) -> Poly {
        let mut v = idx.to_vec();
        match sort_with_sign(&mut v) {
            None => Poly::zero(self.nvars),
            Some(s) => {
                let c = self.coeff(&v);
                if s < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Components of a degree-1 element.
    pub fn components(&self) -> Vec<Poly> {
        assert_eq!(self.degree, 1, "components() needs a degree-1 element");
        (0..self.rank).map(|i| self.coeff(&[i])).collect()
    }

    /// Degree-0 value as a polynomial.
    pub fn as_scalar(&self) -> Poly {
        assert_eq!(self.degree, 0, "as_scalar() needs a degree-0 element");
        self.coeff(&[])
    }

    fn add_term(&mut self, idx: Vec<usize>, f: Poly) {
        debug_assert_eq!(idx.len(), self.degree);
        if f.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &f;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `f · e_idx`, normalizing the index order.
    pub fn insert(&mut self, idx: &[usize], f: Poly) {
        assert_eq!(idx.len(), self.degree, "index tuple length must equal degree");
        assert!(idx.iter().all(|&i| i < self.rank), "frame index out of range");
        let mut v = idx.to_vec();
        if let Some(s) = sort_with_sign(&mut v) {
            self.add_term(v, if s < 0 { -f } else { f });
        }
    }

    fn check_compatible(&self, other: &KVector) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: other.rank });
        }
        if self.nvars != other.nvars {
            return Err(Error::BaseMismatch { expected: self.nvars, got: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &KVector) -> KVector {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        assert_eq!(self.variance, other.variance, "adding elements of different variance");
        self.check_compatible(other).expect("adding incompatible elements");
        let mut out = self.clone();
        for (i, f) in &other.terms {
            out.add_term(i.clone(), f.clone());
        }
        out
    }

    pub fn sub(&self, other: &KVector) -> KVector {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> KVector {
        self.map_coeffs(|f| -f)
    }

    pub fn scale(&self, f: &Poly) -> KVector {
        self.map_coeffs(|g| g * f)
    }

    pub fn scale_rat(&self, c: &Rational) -> KVector {
        self.map_coeffs(|g| g.scale(c))
    }

    pub fn scale_int(&self, c: i64) -> KVector {
        self.scale_rat(&super::poly::rat(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> KVector {
        let mut out = KVector::zero(self.rank, self.nvars, self.degree, self.variance);
        for (i, g) in &self.terms {
            out.add_term(i.clone(), f(g));
        }
        out
    }

    /// Same coefficients read in the dual module: a form on `A` is a
    /// multivector on `A*` and vice versa.
    pub fn dual(&self) -> KVector {
        KVector { variance: self.variance.dual(), ..self.clone() }
    }

    /// Exterior product.
    pub fn try_wedge(&self, other: &KVector) -> Result<KVector> {
        self.check_compatible(other)?;
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch("wedge of a multivector with a form"));
        }
        let mut out = KVector::zero(self.rank, self.nvars, self.degree + other.degree, self.variance);
        if out.degree > self.rank {
            return Ok(out);
        }
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                if let Some((idx, sign)) = merge_sign(a, b) {
                    let c = f * g;
                    out.add_term(idx, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &KVector) -> KVector {
        self.try_wedge(other).expect("wedge of incompatible elements")
    }

    /// Interior product `i_self(target)` where `self` has the opposite
    /// variance and degree ≤ target degree. For a frame monomial
    /// `e_{i1}∧…∧e_{ip}` this is `i_{e_ip}∘…∘i_{e_i1}`, so that
    /// `i_{X∧Y}φ = φ(X, Y, ·)`.
    pub fn try_interior(&self, target: &KVector) -> Result<KVector> {
        self.check_compatible(target)?;
        if self.variance == target.variance {
            return Err(Error::VarianceMismatch("interior product needs opposite variances"));
        }
        if target.degree == 0 && self.degree > 0 {
            return Err(Error::Degree("no contraction slot in a degree-0 element".into()));
        }
        if self.degree > target.degree {
            return Ok(KVector::zero(self.rank, self.nvars, 0, target.variance));
        }
        let mut out = KVector::zero(self.rank, self.nvars, target.degree - self.degree, target.variance);
        for (a, f) in &self.terms {
            let mut cur = target.clone();
            for &i in a {
                cur = cur.interior_basis(i);
            }
            out = out.add(&cur.scale(f));
        }
        Ok(out)
    }

    pub fn interior(&self, target: &KVector) -> KVector {
        self.try_interior(target).expect("invalid interior product")
    }

    /// `i_{e_i}` (or `i_{e^i}`) applied to self.
    fn interior_basis(&self, i: usize) -> KVector {
        let mut out = KVector::zero(self.rank, self.nvars, self.degree.saturating_sub(1), self.variance);
        for (idx, f) in &self.terms {
            if let Some(pos) = idx.iter().position(|&j| j == i) {
                let mut rest = idx.clone();
                rest.remove(pos);
                out.add_term(rest, if pos % 2 == 1 { -f } else { f.clone() });
            }
        }
        out
    }

    /// Full evaluation of a degree-k element on a degree-k element of the
    /// opposite variance (determinant convention: `e^I(e_I) = 1`).
    pub fn pair(&self, other: &KVector) -> Poly {
        assert_eq!(self.degree, other.degree, "pairing needs equal degrees");
        if self.degree == 0 {
            return &self.as_scalar() * &other.as_scalar();
        }
        self.interior(other).as_scalar()
    }

    /// The degree-0 derivation `i_N` on forms: `(i_Nω)(X1..Xk) = Σ ω(X1..NXi..Xk)`.
    pub fn try_insert_endo(&self, n: &EndoTensor) -> Result<KVector> {
        if n.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: n.rank() });
        }
        if self.variance != Variance::Form {
            return Err(Error::VarianceMismatch("i_N acts on forms"));
        }
        let mut out = KVector::zero(self.rank, self.nvars, self.degree, self.variance);
        for (idx, f) in &self.terms {
            for pos in 0..idx.len() {
                // N* e^{i} = Σ_l N[i][l] e^l
                let i = idx[pos];
                for l in 0..self.rank {
                    let nil = n.entry(i, l);
                    if nil.is_zero() {
                        continue;
                    }
                    let mut new_idx = idx.clone();
                    new_idx[pos] = l;
                    out.insert(&new_idx, f * nil);
                }
            }
        }
        Ok(out)
    }

    pub fn insert_endo(&self, n: &EndoTensor) -> KVector {
        self.try_insert_endo(n).expect("invalid i_N")
    }

    /// Evaluates every coefficient at a point.
    pub fn eval_at(&self, point: &[Rational]) -> Result<KVector> {
        let mut out = KVector::zero(self.rank, self.nvars, self.degree, self.variance);
        for (i, f) in &self.terms {
            let v = f.eval(point)?;
            out.add_term(i.clone(), Poly::constant(self.nvars, v));
        }
        Ok(out)
    }

    /// Applies a polynomial map to every coefficient (used for derivatives).
    pub fn partial(&self, var: usize) -> KVector {
        self.map_coeffs(|f| f.partial(var))
    }

    /// Lifts coefficients into a ring with more coordinates and the frame
    /// into a larger frame (indices unchanged).
    pub fn extend(&self, rank: usize, nvars: usize) -> KVector {
        let mut out = KVector::zero(rank, nvars, self.degree, self.variance);
        for (i, f) in &self.terms {
            out.add_term(i.clone(), f.extend_vars(nvars));
        }
        out
    }

    pub fn display(&self, naming: &Naming) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (idx, f)) in self.terms.iter().enumerate() {
            let basis = idx
                .iter()
                .map(|&i| naming.basis(i, self.variance))
                .collect::<Vec<_>>()
                .join("∧");
            // a single negative monomial is printed as a subtraction
            let negative = f.num_terms() == 1 && f.terms().next().is_some_and(|(_, c)| c.is_negative());
            let g = if negative { -f } else { f.clone() };
            let coef = g.display(&naming.coords);
            match (n > 0, negative) {
                (false, false) => {}
                (false, true) => s.push('-'),
                (true, false) => s.push_str(" + "),
                (true, true) => s.push_str(" - "),
            }
            if idx.is_empty() {
                if g.num_terms() == 1 {
                    s.push_str(&coef);
                } else {
                    write!(s, "({coef})").unwrap();
                }
            } else if g.as_constant().is_some_and(|c| c.is_one()) {
                s.push_str(&basis);
            } else if g.num_terms() == 1 {
                write!(s, "{coef}·{basis}").unwrap();
            } else {
                write!(s, "({coef})·{basis}").unwrap();
            }
        }
        s
    }
}

/// Merges two sorted disjoint index tuples, returning the sorted union and
/// the shuffle sign.
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return None;
            }
            if y < x {
                inversions += 1;
            }
        }
    }
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    Some((out, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// Names used when printing coefficients and frame monomials.
#[derive(Clone, Debug)]
pub struct Naming {
    pub coords: Vec<String>,
    /// Frame labels; tangent-like frames use coordinate names (printed
    /// `∂x` / `dx`), generic frames use `1..r` (printed `e1` / `e^1`).
    pub frame: Vec<String>,
    pub tangent_like: bool,
    /// Set on the naming of a dual algebroid, whose multivectors are the
    /// forms of the original frame.
    pub flipped: bool,
}

impl Naming {
    pub fn generic(coords: Vec<String>, rank: usize) -> Self {
        Naming { coords, frame: (1..=rank).map(|i| i.to_string()).collect(), tangent_like: false, flipped: false }
    }

    pub fn basis(&self, i: usize, variance: Variance) -> String {
        let label = self.frame.get(i).cloned().unwrap_or_else(|| format!("{}", i + 1));
        let variance = if self.flipped { variance.dual() } else { variance };
        match (self.tangent_like, variance) {
            (true, Variance::Multivector) => format!("∂{label}"),
            (true, Variance::Form) => format!("d{label}"),
            (false, Variance::Multivector) => format!("e{label}"),
            (false, Variance::Form) => format!("e^{label}"),
        }
    }

    /// Naming for the dual algebroid: forms become multivectors.
    pub fn dual(&self) -> Naming {
        Naming { flipped: !self.flipped, ..self.clone() }
    }
}

pub fn fmt_point(p: &[Rational]) -> String {
    format!("({})", p.iter().map(fmt_rational).collect::<Vec<_>>().join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::poly::rat;

    const MV: Variance = Variance::Multivector;
    const FM: Variance = Variance::Form;

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn wedge_basis_cases() {
        let e1 = KVector::basis1(2, 2, 0, MV);
        let e2 = KVector::basis1(2, 2, 1, MV);
        assert_eq!(e1.wedge(&e2), KVector::basis(2, 2, &[0, 1], MV));
        assert!(e1.wedge(&e1).is_zero());
        assert_eq!(e2.wedge(&e1), KVector::basis(2, 2, &[0, 1], MV).neg());
    }

    #[test]
    fn wedge_bilinear_expansion() {
        // (x e1) ∧ (y e2 + e1) = xy e1∧e2
        let e1 = KVector::basis1(2, 2, 0, MV);
        let e2 = KVector::basis1(2, 2, 1, MV);
        let lhs = e1.scale(&x()).wedge(&e2.scale(&y()).add(&e1));
        assert_eq!(lhs, KVector::basis(2, 2, &[0, 1], MV).scale(&(&x() * &y())));
    }

    #[test]
    fn wedge_rejects_mismatch() {
        let a = KVector::basis1(2, 2, 0, MV);
        let b = KVector::basis1(3, 2, 0, MV);
        let c = KVector::basis1(2, 2, 0, FM);
        assert!(matches!(a.try_wedge(&b), Err(Error::RankMismatch { .. })));
        assert!(matches!(a.try_wedge(&c), Err(Error::VarianceMismatch(_))));
    }

    #[test]
    fn contraction_cases() {
        let e12 = KVector::basis(3, 2, &[0, 1], MV);
        let d1 = KVector::basis1(3, 2, 0, FM);
        let d3 = KVector::basis1(3, 2, 2, FM);
        assert_eq!(d1.interior(&e12), KVector::basis1(3, 2, 1, MV));
        assert!(d3.interior(&e12).is_zero());
        // i_{x e^1 + e^2}(e1∧e2) = x e2 − e1
        let xi = d1.scale(&Poly::var(2, 0)).add(&KVector::basis1(3, 2, 1, FM));
        let expect = KVector::basis1(3, 2, 1, MV)
            .scale(&Poly::var(2, 0))
            .sub(&KVector::basis1(3, 2, 0, MV));
        assert_eq!(xi.interior(&e12), expect);
        let f = KVector::scalar(3, Poly::one(2), MV);
        assert!(matches!(d1.try_interior(&f), Err(Error::Degree(_))));
    }

    #[test]
    fn interior_fills_leading_slots() {
        // i_{e1∧e2}(e^1∧e^2∧e^3) = e^3, i.e. φ(e1, e2, ·)
        let phi = KVector::basis(3, 1, &[0, 1, 2], FM);
        let p = KVector::basis(3, 1, &[0, 1], MV);
        assert_eq!(p.interior(&phi), KVector::basis1(3, 1, 2, FM));
        assert_eq!(KVector::basis(3, 1, &[0, 1, 2], MV).pair(&phi), Poly::one(1));
    }

    #[test]
    fn insert_endo_cases() {
        let id = EndoTensor::identity(2, 2);
        let w = KVector::basis(2, 2, &[0, 1], FM);
        assert_eq!(w.insert_endo(&id), w.scale_int(2));
        assert!(w.insert_endo(&EndoTensor::zero(2, 2)).is_zero());
        let rot = EndoTensor::from_ints(2, &[&[0, -1], &[1, 0]]);
        let e1 = KVector::basis1(2, 2, 0, FM);
        assert_eq!(e1.insert_endo(&rot), KVector::basis1(2, 2, 1, FM).neg());
        assert_eq!(e1.insert_endo(&rot), rot.apply_dual(&e1));
    }

    #[test]
    fn eval_substitutes() {
        let v = KVector::basis1(2, 2, 0, MV).scale(&(&x() + &y()));
        let e = v.eval_at(&[rat(1), rat(2)]).unwrap();
        assert_eq!(e, KVector::basis1(2, 2, 0, MV).scale_int(3));
        assert!(v.eval_at(&[rat(1)]).is_err());
    }
}
