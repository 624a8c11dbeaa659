use super::{canonical_double, deform, verify_courant_jacobi, verify_quasi_bialgebroid, DualStructure, GcsMap};
use crate::nijenhuis::{verify_quadruple, QuadrupleCandidate};
use crate::report::{Item, Report, Status};
use crate::sampling::CheckConfig;
use crate::symalg::KVector;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Leg {
    Quadruple,
    Bialgebroid,
    Deformation,
}

impl Leg {
    pub fn as_str(self) -> &'static str {
        match self {
            Leg::Quadruple => "quadruple",
            Leg::Bialgebroid => "quasi-bialgebroid",
            Leg::Deformation => "deformed double",
        }
    }
}

/// Per-leg reports and whether their verdicts agree.
#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub legs: Vec<(Leg, Report)>,
}

impl CorrespondenceReport {
    pub fn verdict(&self, leg: Leg) -> Status {
        self.legs.iter().find(|(l, _)| *l == leg).map(|(_, r)| r.verdict()).unwrap_or(Status::Skipped)
    }

    pub fn coherent(&self) -> bool {
        let v: Vec<Status> = self.legs.iter().map(|(_, r)| r.verdict()).collect();
        v.windows(2).all(|w| w[0] == w[1])
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("correspondence: {}\n", if self.coherent() { "coherent" } else { "INCOHERENT" });
        for (leg, rep) in &self.legs {
            s.push_str(&format!("  leg {}: {}\n", leg.as_str(), rep.verdict().as_str()));
        }
        for (_, rep) in &self.legs {
            s.push_str(&rep.render_text());
        }
        s
    }
}

/// Runs the three characterizations of a quadruple `(π, N, φ)` with
/// `φ = d^{φ0}σ`: the quadruple conditions, the quasi-Jacobi bialgebroid
/// `((A*, ρ∘π♯, ⟦·,·⟧_π), d_N, φ)` with `d^{φ0}φ = 0`, and the Courant–Jacobi
/// axioms for the deformation of the canonical double by
/// `𝒥 = [[N, π♯], [σ♭, −N*]]`.
pub fn correspondence_suite(q: &QuadrupleCandidate, sigma: &KVector, cfg: &CheckConfig) -> CorrespondenceReport {
    let ja = &q.host;
    let naming = ja.naming();

    let quad = verify_quadruple(q, cfg);

    let mut bia = verify_quasi_bialgebroid(&DualStructure::from_quadruple(q), cfg);
    let dphi = ja.differential(&q.phi);
    bia.push(if dphi.is_zero() {
        Item::pass("d phi = 0")
    } else {
        Item::fail("d phi = 0", "φ", dphi.display(naming))
    });

    let mut def = Report::new("deformed-double");
    let diff = q.phi.sub(&ja.differential(sigma));
    def.push(if diff.is_zero() {
        Item::pass("phi = d sigma")
    } else {
        Item::fail("phi = d sigma", "φ − d^{φ0}σ", diff.display(naming))
    });
    match GcsMap::new(q.n.clone(), q.pi.clone(), sigma.clone()).and_then(|j| deform(&canonical_double(ja), &j)) {
        Ok(s) => def.absorb("courant-jacobi", verify_courant_jacobi(&s, cfg)),
        Err(e) => def.push(Item::fail("block conditions", "𝒥", e.to_string())),
    }

    CorrespondenceReport { legs: vec![(Leg::Quadruple, quad), (Leg::Bialgebroid, bia), (Leg::Deformation, def)] }
}
