//! Courant–Jacobi structures on `A ⊕ A*`: the canonical double of a Jacobi
//! algebroid, doubles of quasi-Jacobi bialgebroids, deformations by block
//! maps, and the verifiers tying them together.

mod bialgebroid;
mod correspondence;
mod gcs;
mod verify;

pub use bialgebroid::{
    build_double, extract_bialgebroid, verify_quasi_bialgebroid, verify_roundtrip, DualStructure, MixedReading, Splitting,
};
pub use correspondence::{correspondence_suite, CorrespondenceReport, Leg};
pub use gcs::{deform, verify_deformation_formulas, verify_gcs, GcsMap};
pub use verify::verify_courant_jacobi;

use crate::algebroid::{FirstOrderOp, JacobiAlgebroid};
use crate::symalg::{ratio, KVector, Naming, Poly, Variance};

/// `X + ξ` with `X ∈ Γ(A)`, `ξ ∈ Γ(A*)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenSection {
    pub x: KVector,
    pub xi: KVector,
}

impl GenSection {
    pub fn new(x: KVector, xi: KVector) -> Self {
        assert_eq!(x.variance(), Variance::Multivector);
        assert_eq!(xi.variance(), Variance::Form);
        assert!(x.degree() == 1 && xi.degree() == 1);
        GenSection { x, xi }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        GenSection {
            x: KVector::zero(rank, nvars, 1, Variance::Multivector),
            xi: KVector::zero(rank, nvars, 1, Variance::Form),
        }
    }

    pub fn vector(x: KVector) -> Self {
        let xi = KVector::zero(x.rank(), x.nvars(), 1, Variance::Form);
        GenSection { x, xi }
    }

    pub fn form(xi: KVector) -> Self {
        let x = KVector::zero(xi.rank(), xi.nvars(), 1, Variance::Multivector);
        GenSection { x, xi }
    }

    /// The `k`-th element of the frame `e_1..e_r, e^1..e^r`.
    pub fn frame(rank: usize, nvars: usize, k: usize) -> Self {
        if k < rank {
            Self::vector(KVector::basis1(rank, nvars, k, Variance::Multivector))
        } else {
            Self::form(KVector::basis1(rank, nvars, k - rank, Variance::Form))
        }
    }

    pub fn rank(&self) -> usize {
        self.x.rank()
    }
    pub fn nvars(&self) -> usize {
        self.x.nvars()
    }

    pub fn add(&self, o: &GenSection) -> GenSection {
        GenSection { x: self.x.add(&o.x), xi: self.xi.add(&o.xi) }
    }
    pub fn sub(&self, o: &GenSection) -> GenSection {
        GenSection { x: self.x.sub(&o.x), xi: self.xi.sub(&o.xi) }
    }
    pub fn neg(&self) -> GenSection {
        GenSection { x: self.x.neg(), xi: self.xi.neg() }
    }
    pub fn scale(&self, f: &Poly) -> GenSection {
        GenSection { x: self.x.scale(f), xi: self.xi.scale(f) }
    }
    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.xi.is_zero()
    }

    pub fn display(&self, naming: &Naming) -> String {
        match (self.x.is_zero(), self.xi.is_zero()) {
            (true, true) => "0".into(),
            (false, true) => self.x.display(naming),
            (true, false) => self.xi.display(naming),
            (false, false) => format!("{} + {}", self.x.display(naming), self.xi.display(naming)),
        }
    }
}

/// `⟨X+ξ, Y+η⟩ = ½(ξ(Y) + η(X))`.
pub fn canonical_pairing(u: &GenSection, v: &GenSection) -> Poly {
    (&u.xi.pair(&v.x) + &v.xi.pair(&u.x)).scale(&ratio(1, 2))
}

/// Variants of the canonical double, the non-standard ones being
/// deliberately broken structures used as falsification fixtures.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CanonicalVariant {
    Standard,
    /// Omits the `d^{φ0}(ξ(Y))` term of the bracket.
    DropSymmetricTerm,
    /// Replaces the pairing by zero.
    ZeroPairing,
}

#[derive(Clone, Debug)]
enum Kind {
    Canonical(CanonicalVariant),
    Deformed { base: Box<CjStructure>, j: GcsMap },
    Double { dual: Box<DualStructure>, reading: MixedReading },
}

/// Pairing, bracket and anchor on `Γ(A) ⊕ Γ(A*)` for a host Jacobi
/// algebroid. The Courant–Jacobi axioms are checked by
/// [`verify_courant_jacobi`], never assumed.
#[derive(Clone, Debug)]
pub struct CjStructure {
    host: JacobiAlgebroid,
    kind: Kind,
}

impl CjStructure {
    pub fn host(&self) -> &JacobiAlgebroid {
        &self.host
    }
    pub fn rank(&self) -> usize {
        self.host.rank()
    }
    pub fn nvars(&self) -> usize {
        self.host.nvars()
    }
    pub fn naming(&self) -> &Naming {
        self.host.naming()
    }

    pub fn frame(&self, k: usize) -> GenSection {
        GenSection::frame(self.rank(), self.nvars(), k)
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            Kind::Canonical(CanonicalVariant::Standard) => "canonical double".into(),
            Kind::Canonical(v) => format!("canonical double ({v:?})"),
            Kind::Deformed { base, .. } => format!("deformation of {}", base.describe()),
            Kind::Double { reading, .. } => format!("double of a quasi-Jacobi bialgebroid ({reading:?} reading)"),
        }
    }

    pub fn pairing(&self, u: &GenSection, v: &GenSection) -> Poly {
        match &self.kind {
            Kind::Canonical(CanonicalVariant::ZeroPairing) => Poly::zero(self.nvars()),
            Kind::Canonical(_) | Kind::Double { .. } => canonical_pairing(u, v),
            Kind::Deformed { base, j } => base.pairing(&j.apply(u), &j.apply(v)),
        }
    }

    pub fn anchor(&self, u: &GenSection) -> FirstOrderOp {
        match &self.kind {
            Kind::Canonical(_) => self.host.rho(&u.x),
            Kind::Deformed { base, j } => base.anchor(&j.apply(u)),
            Kind::Double { dual, .. } => self.host.rho(&u.x).add(&dual.rho_star(&u.xi)),
        }
    }

    pub fn bracket(&self, u: &GenSection, v: &GenSection) -> GenSection {
        match &self.kind {
            Kind::Canonical(variant) => canonical_bracket(&self.host, *variant, u, v),
            Kind::Deformed { base, j } => {
                let a = base.bracket(&j.apply(u), v);
                let b = base.bracket(u, &j.apply(v));
                let c = j.apply(&base.bracket(u, v));
                a.add(&b).sub(&c)
            }
            Kind::Double { dual, reading } => bialgebroid::double_bracket(&self.host, dual, *reading, u, v),
        }
    }
}

/// `⟦X+ξ, Y+η⟧ = [X,Y] + ℒ_Xη − ℒ_Yξ + d^{φ0}(ξ(Y))` with anchor `ρ(X)`.
pub fn canonical_double(host: &JacobiAlgebroid) -> CjStructure {
    CjStructure { host: host.clone(), kind: Kind::Canonical(CanonicalVariant::Standard) }
}

pub fn canonical_variant(host: &JacobiAlgebroid, variant: CanonicalVariant) -> CjStructure {
    CjStructure { host: host.clone(), kind: Kind::Canonical(variant) }
}

fn canonical_bracket(ja: &JacobiAlgebroid, variant: CanonicalVariant, u: &GenSection, v: &GenSection) -> GenSection {
    let x = ja.base().bracket(&u.x, &v.x);
    let mut xi = ja.lie_derivative(&u.x, &v.xi).sub(&ja.lie_derivative(&v.x, &u.xi));
    if variant != CanonicalVariant::DropSymmetricTerm {
        let f = KVector::scalar(ja.rank(), u.xi.pair(&v.x), Variance::Form);
        xi = xi.add(&ja.differential(&f));
    }
    GenSection { x, xi }
}
