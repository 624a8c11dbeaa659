use super::verify::{frame_label, random_section, section_residual};
use super::{CjStructure, GenSection, Kind};
use crate::error::{Error, Result};
use crate::nijenhuis::{bivector_from_matrix, bivector_matrix, bracket_n, bracket_pi, flat, sharp, verify_jacobi_bivector};
use crate::symalg::endo::inverse_constant_det;
use crate::report::{Item, Report, ZeroCheck};
use crate::sampling::{monomial_polys, CheckConfig};
use crate::symalg::{EndoTensor, KVector, Naming, Poly, Variance};

/// The bundle map `𝒥 = [[N, π♯], [σ♭, −N*]]` on `A ⊕ A*`.
#[derive(Clone, Debug)]
pub struct GcsMap {
    pub n: EndoTensor,
    pub pi: KVector,
    pub sigma: KVector,
}

impl GcsMap {
    pub fn new(n: EndoTensor, pi: KVector, sigma: KVector) -> Result<Self> {
        let r = n.rank();
        if pi.rank() != r || sigma.rank() != r {
            return Err(Error::RankMismatch { expected: r, got: pi.rank().max(sigma.rank()) });
        }
        if pi.degree() != 2 || pi.variance() != Variance::Multivector {
            return Err(Error::Degree("π must be a bivector".into()));
        }
        if sigma.degree() != 2 || sigma.variance() != Variance::Form {
            return Err(Error::Degree("σ must be a 2-form".into()));
        }
        Ok(GcsMap { n, pi, sigma })
    }

    /// `[[0, −σ♭⁻¹], [σ♭, 0]]`, available when `σ` has constant nonzero
    /// determinant.
    pub fn symplectic(sigma: &KVector) -> Result<Self> {
        let r = sigma.rank();
        let nv = sigma.nvars();
        let w = bivector_matrix(&sigma.dual());
        let inv = inverse_constant_det(&w, nv)?;
        let neg: Vec<Vec<Poly>> = inv.iter().map(|row| row.iter().map(|f| -f).collect()).collect();
        Self::new(EndoTensor::zero(r, nv), bivector_from_matrix(&neg, nv), sigma.clone())
    }

    /// `[[N, 0], [0, −N*]]`.
    pub fn complex(n: EndoTensor) -> Self {
        let (r, nv) = (n.rank(), n.nvars());
        GcsMap { n, pi: KVector::zero(r, nv, 2, Variance::Multivector), sigma: KVector::zero(r, nv, 2, Variance::Form) }
    }

    /// `[[N, π♯], [0, −N*]]`.
    pub fn poisson_type(n: EndoTensor, pi: KVector) -> Self {
        let (r, nv) = (n.rank(), n.nvars());
        GcsMap { n, pi, sigma: KVector::zero(r, nv, 2, Variance::Form) }
    }

    pub fn rank(&self) -> usize {
        self.n.rank()
    }

    /// `𝒥(X + ξ) = (NX + π♯ξ) + (σ♭X − N*ξ)`.
    pub fn apply(&self, u: &GenSection) -> GenSection {
        GenSection {
            x: self.n.apply(&u.x).add(&sharp(&self.pi, &u.xi)),
            xi: flat(&self.sigma, &u.x).sub(&self.n.apply_dual(&u.xi)),
        }
    }

    /// The three algebraic block conditions, each with its first violation.
    pub fn block_conditions(&self, naming: &Naming) -> Vec<Item> {
        let r = self.rank();
        let nv = self.n.nvars();
        let mut musical = ZeroCheck::new("N pi# = pi# N*", naming);
        let mut square = ZeroCheck::new("N^2 + pi# sigma_flat = -Id", naming);
        let mut flat_c = ZeroCheck::new("N* sigma_flat = sigma_flat N", naming);
        for i in 0..r {
            let e = KVector::basis1(r, nv, i, Variance::Multivector);
            let ce = KVector::basis1(r, nv, i, Variance::Form);
            let m = self.n.apply(&sharp(&self.pi, &ce)).sub(&sharp(&self.pi, &self.n.apply_dual(&ce)));
            musical.kvector(|| naming.basis(i, Variance::Form), &m);
            let s = self.n.apply(&self.n.apply(&e)).add(&sharp(&self.pi, &flat(&self.sigma, &e))).add(&e);
            square.kvector(|| naming.basis(i, Variance::Multivector), &s);
            let f = self.n.apply_dual(&flat(&self.sigma, &e)).sub(&flat(&self.sigma, &self.n.apply(&e)));
            flat_c.kvector(|| naming.basis(i, Variance::Multivector), &f);
        }
        vec![musical.finish(), square.finish(), flat_c.finish()]
    }
}

/// Checks that `𝒥` is a generalized contact structure for `s`: the block
/// conditions, `𝒥² = −Id`, orthogonality for the pairing of `s`, and
/// vanishing of the Nijenhuis torsion of `𝒥` for the bracket of `s`. On a
/// pass, `π` is additionally checked to be a Jacobi bivector.
pub fn verify_gcs(s: &CjStructure, j: &GcsMap, cfg: &CheckConfig) -> Report {
    let mut rep = Report::new("gcs");
    let naming = s.naming();
    let r = s.rank();
    let nv = s.nvars();
    for it in j.block_conditions(naming) {
        rep.push(it.with_prefix("block: "));
    }

    let mut sq = ZeroCheck::new("square = -Id", naming);
    let mut orth = ZeroCheck::new("orthogonal", naming);
    for a in 0..2 * r {
        let u = s.frame(a);
        let res = j.apply(&j.apply(&u)).add(&u);
        sq.text(|| frame_label(naming, &[a], r), section_residual(&res, naming));
        for b in a..2 * r {
            let v = s.frame(b);
            let d = &s.pairing(&j.apply(&u), &j.apply(&v)) - &s.pairing(&u, &v);
            orth.poly(|| frame_label(naming, &[a, b], r), &d);
        }
    }
    rep.push(sq.finish());
    rep.push(orth.finish());

    let torsion = |u: &GenSection, v: &GenSection| {
        let ju = j.apply(u);
        let jv = j.apply(v);
        s.bracket(&ju, &jv)
            .sub(&s.bracket(u, v))
            .sub(&j.apply(&s.bracket(&ju, v).add(&s.bracket(u, &jv))))
    };
    let mut integ = ZeroCheck::new("integrability", naming);
    let monos = monomial_polys(nv, cfg.degree.min(1));
    for a in 0..2 * r {
        for b in a + 1..2 * r {
            for f in &monos {
                let v = s.frame(b).scale(f);
                let res = torsion(&s.frame(a), &v);
                integ.text(
                    || format!("{}, ({})·{}", frame_label(naming, &[a], r), f.display(&naming.coords), frame_label(naming, &[b], r)),
                    section_residual(&res, naming),
                );
            }
        }
    }
    let mut rng = cfg.rng(23);
    for n in 0..cfg.random_cases {
        let u = random_section(&mut rng, s, cfg);
        let v = random_section(&mut rng, s, cfg);
        integ.text(|| format!("random pair #{n}"), section_residual(&torsion(&u, &v), naming));
    }
    rep.push(integ.finish());

    if rep.is_pass() {
        rep.absorb("pi", verify_jacobi_bivector(s.host(), &j.pi, cfg));
    }
    rep
}

/// The deformed structure `⟦u,v⟧_𝒥 = ⟦𝒥u,v⟧ + ⟦u,𝒥v⟧ − 𝒥⟦u,v⟧`,
/// `⟨u,v⟩_𝒥 = ⟨𝒥u,𝒥v⟩`, `κ_𝒥 = κ∘𝒥`. Fails when the block conditions do
/// not hold; whether the result is Courant–Jacobi is left to the verifier.
pub fn deform(s: &CjStructure, j: &GcsMap) -> Result<CjStructure> {
    if j.rank() != s.rank() {
        return Err(Error::RankMismatch { expected: s.rank(), got: j.rank() });
    }
    let bad: Vec<String> = j
        .block_conditions(s.naming())
        .into_iter()
        .filter(|it| it.status == crate::report::Status::Fail)
        .map(|it| format!("{} at {}: {}", it.name, it.witness.unwrap_or_default(), it.residual.unwrap_or_default()))
        .collect();
    if !bad.is_empty() {
        return Err(Error::BlockConditions(bad.join("; ")));
    }
    Ok(CjStructure { host: s.host.clone(), kind: Kind::Deformed { base: Box::new(s.clone()), j: j.clone() } })
}

/// Compares the deformation of the canonical double of `host` with the
/// closed component formulas
/// `⟦X,Y⟧ = [X,Y]_N + i_Y i_X d^{φ0}σ`, `⟦ξ,η⟧ = ⟦ξ,η⟧_π`,
/// `⟦X,ξ⟧ = [X,π♯ξ] − π♯ℒ_Xξ + ℒ_{NX}ξ − ℒ_X N*ξ + N*ℒ_Xξ`,
/// `⟦ξ,X⟧ = −⟦X,ξ⟧ − 𝒥d^{φ0}(ξ(X))`
/// on frame elements and their monomial multiples.
pub fn verify_deformation_formulas(host: &crate::algebroid::JacobiAlgebroid, j: &GcsMap, cfg: &CheckConfig) -> Result<Report> {
    let canon = super::canonical_double(host);
    let def = deform(&canon, j)?;
    let alg = host.base();
    let naming = host.naming();
    let r = host.rank();
    let nv = host.nvars();
    let dsigma = host.differential(&j.sigma);

    let vv = |x: &KVector, y: &KVector| GenSection {
        x: bracket_n(alg, &j.n, x, y),
        xi: y.interior(&x.interior(&dsigma)),
    };
    let ff = |xi: &KVector, eta: &KVector| GenSection::form(bracket_pi(host, &j.pi, xi, eta));
    let vf = |x: &KVector, xi: &KVector| {
        let lx = host.lie_derivative(x, xi);
        GenSection {
            x: alg.bracket(x, &sharp(&j.pi, xi)).sub(&sharp(&j.pi, &lx)),
            xi: host
                .lie_derivative(&j.n.apply(x), xi)
                .sub(&host.lie_derivative(x, &j.n.apply_dual(xi)))
                .add(&j.n.apply_dual(&lx)),
        }
    };
    let fv = |xi: &KVector, x: &KVector| {
        let f = KVector::scalar(r, xi.pair(x), Variance::Form);
        vf(x, xi).neg().sub(&j.apply(&GenSection::form(host.differential(&f))))
    };

    let mut rep = Report::new("deformation-formulas");
    let labels = ["vector-vector", "form-form", "vector-form", "form-vector"];
    let mut checks: Vec<ZeroCheck> = labels.iter().map(|l| ZeroCheck::new(*l, naming)).collect();
    let coeffs: Vec<Poly> = monomial_polys(nv, cfg.degree.min(1));
    for a in 0..r {
        for b in 0..r {
            for f in &coeffs {
                let x = KVector::basis1(r, nv, a, Variance::Multivector);
                let y = KVector::basis1(r, nv, b, Variance::Multivector).scale(f);
                let xi = KVector::basis1(r, nv, a, Variance::Form);
                let eta = KVector::basis1(r, nv, b, Variance::Form).scale(f);
                let w = || format!("{}, ({})·{}", a + 1, f.display(&naming.coords), b + 1);
                let cases = [
                    (GenSection::vector(x.clone()), GenSection::vector(y.clone()), vv(&x, &y)),
                    (GenSection::form(xi.clone()), GenSection::form(eta.clone()), ff(&xi, &eta)),
                    (GenSection::vector(x.clone()), GenSection::form(eta.clone()), vf(&x, &eta)),
                    (GenSection::form(xi.clone()), GenSection::vector(y.clone()), fv(&xi, &y)),
                ];
                for (k, (u, v, expect)) in cases.into_iter().enumerate() {
                    let res = def.bracket(&u, &v).sub(&expect);
                    checks[k].text(w, section_residual(&res, naming));
                }
            }
        }
    }
    for c in checks {
        rep.push(c.finish());
    }
    Ok(rep)
}
