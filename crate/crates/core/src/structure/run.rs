use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::{Builder, CheckSpec, Object, StructureFile};
use crate::algebroid::{verify_cocycle, verify_lie_algebroid, verify_maurer_cartan, GlValuedForm};
use crate::contact::{
    verify_almost_contact, verify_complex_type, verify_conformal_symplectic, verify_contact_form, verify_jacobi_pair,
    verify_normal_contact, verify_poisson_type, ContactTriple,
};
use crate::courant::{
    build_double, canonical_double, canonical_variant, correspondence_suite, deform, verify_courant_jacobi,
    verify_deformation_formulas, verify_gcs, verify_quasi_bialgebroid, CanonicalVariant,
    DualStructure, GcsMap, MixedReading,
};
use crate::error::{Error, Result};
use crate::nijenhuis::{verify_dn_derivation, verify_jacobi_bivector, verify_quadruple, QuadrupleCandidate};
use crate::report::{Item, Report, Status};
use crate::sampling::CheckConfig;
use crate::symalg::{EndoTensor, KVector, Rational, Variance};

/// Version tag of the JSON report layout.
pub const REPORT_SCHEMA: &str = "jqn-report/1";

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub degree: Option<u32>,
    pub seed: Option<u64>,
    /// Overrides every check's own sample points.
    pub samples: Option<Vec<Vec<Rational>>>,
    pub timing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub verdict: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<Status>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_ms: Option<u128>,
    pub report: Report,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    pub verdict: Status,
    pub checks: Vec<CheckOutcome>,
}

impl RunReport {
    /// 0 when no check fails, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.checks.iter().any(|c| c.verdict == Status::Fail))
    }

    /// Whether every check with an `expect` field matched it.
    pub fn expectations_met(&self) -> bool {
        self.checks.iter().all(|c| c.expect.is_none_or(|e| e == c.verdict))
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        if let Some(f) = &self.fixture {
            s.push_str(&format!("fixture: {f}\n"));
        }
        for c in &self.checks {
            s.push_str(&c.report.render_text());
            if let Some(ms) = c.time_ms {
                s.push_str(&format!("  time: {ms} ms\n"));
            }
        }
        let count = |st: Status| self.checks.iter().filter(|c| c.verdict == st).count();
        s.push_str(&format!(
            "summary: {} checks, {} pass, {} fail, {} skipped\n",
            self.checks.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped)
        ));
        s
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Runs the checks of `file` in order.
pub fn run(file: &StructureFile, opts: &RunOptions) -> Result<RunReport> {
    let mut checks = Vec::new();
    for spec in &file.checks {
        let mut cfg = CheckConfig::default();
        if let Some(d) = opts.degree {
            cfg.degree = d;
        }
        if let Some(s) = opts.seed {
            cfg.seed = s;
        }
        cfg.samples = opts.samples.clone().unwrap_or_else(|| spec.samples.clone());
        for p in &cfg.samples {
            if p.len() != file.algebroid.nvars() {
                return Err(Error::PointDimension { expected: file.algebroid.nvars(), got: p.len() });
            }
        }
        let start = Instant::now();
        let mut report = run_one(file, spec, &cfg)?;
        report.check = spec.run.clone();
        let time_ms = opts.timing.then(|| start.elapsed().as_millis());
        checks.push(CheckOutcome { check: spec.run.clone(), verdict: report.verdict(), expect: spec.expect, time_ms, report });
    }
    let verdict = if checks.iter().any(|c| c.verdict == Status::Fail) {
        Status::Fail
    } else if checks.iter().any(|c| c.verdict == Status::Pass) {
        Status::Pass
    } else {
        Status::Skipped
    };
    Ok(RunReport { schema: REPORT_SCHEMA, fixture: file.name.clone(), verdict, checks })
}

struct Args<'a> {
    check: &'a str,
    map: &'a BTreeMap<String, Object>,
    rank: usize,
    nvars: usize,
}

impl Args<'_> {
    fn element(&self, key: &str, degree: usize, v: Variance, required: bool) -> Result<KVector> {
        let want = match v {
            Variance::Multivector => format!("{degree}-vector"),
            Variance::Form => format!("{degree}-form"),
        };
        match self.map.get(key) {
            Some(Object::Element(k)) if k.degree() == degree && k.variance() == v => Ok(k.clone()),
            Some(o) => Err(Error::Invalid(format!(
                "argument `{key}` of check `{}` must be a {want}, got a {}",
                self.check,
                o.describe()
            ))),
            None if required => Err(Error::Invalid(format!("check `{}` needs argument `{key}` ({want})", self.check))),
            None => Ok(KVector::zero(self.rank, self.nvars, degree, v)),
        }
    }

    fn endo(&self, key: &str, required: bool) -> Result<Option<EndoTensor>> {
        match self.map.get(key) {
            Some(Object::Endo(n)) => Ok(Some(n.clone())),
            Some(o) => Err(Error::Invalid(format!(
                "argument `{key}` of check `{}` must be an endo, got a {}",
                self.check,
                o.describe()
            ))),
            None if required => Err(Error::Invalid(format!("check `{}` needs argument `{key}` (endo)", self.check))),
            None => Ok(None),
        }
    }

    fn endo_or_zero(&self, key: &str) -> Result<EndoTensor> {
        Ok(self.endo(key, false)?.unwrap_or_else(|| EndoTensor::zero(self.rank, self.nvars)))
    }
}

const MV: Variance = Variance::Multivector;
const FORM: Variance = Variance::Form;

fn run_one(file: &StructureFile, spec: &CheckSpec, cfg: &CheckConfig) -> Result<Report> {
    let ja = &file.algebroid;
    let a = Args { check: &spec.run, map: &spec.args, rank: ja.rank(), nvars: ja.nvars() };
    let coords: Vec<&str> = file.coords.iter().map(String::as_str).collect();
    let need_tangent = || {
        if file.builder == Builder::Tangent {
            Ok(())
        } else {
            Err(Error::Invalid(format!("check `{}` needs builder = \"tangent\"", spec.run)))
        }
    };
    let quadruple = |phi_required: bool| -> Result<QuadrupleCandidate> {
        Ok(QuadrupleCandidate {
            host: ja.clone(),
            pi: a.element("pi", 2, MV, true)?,
            n: a.endo("n", true)?.expect("required"),
            phi: a.element("phi", 3, FORM, phi_required)?,
        })
    };
    let dual_structure = || -> Result<DualStructure> {
        Ok(match a.endo("n", false)? {
            Some(_) => DualStructure::from_quadruple(&quadruple(false)?),
            None => DualStructure::triangular(ja, &a.element("pi", 2, MV, true)?),
        })
    };
    let gcs_map = || -> Result<GcsMap> {
        GcsMap::new(a.endo_or_zero("n")?, a.element("pi", 2, MV, false)?, a.element("sigma", 2, FORM, false)?)
    };
    let triple = || -> Result<ContactTriple> {
        Ok(ContactTriple {
            phi: a.endo("phi", true)?.expect("required"),
            y: a.element("y", 1, MV, true)?,
            eta: a.element("eta", 1, FORM, true)?,
        })
    };

    Ok(match spec.run.as_str() {
        "lie-algebroid" => verify_lie_algebroid(ja.base(), cfg),
        "cocycle" => verify_cocycle(ja),
        "maurer-cartan" => verify_maurer_cartan(ja.base(), &GlValuedForm::scalar(ja.base(), ja.phi0().clone())?, cfg),
        "jacobi-bivector" => verify_jacobi_bivector(ja, &a.element("pi", 2, MV, true)?, cfg),
        "quadruple" => verify_quadruple(&quadruple(false)?, cfg),
        "dn-derivation" => {
            verify_dn_derivation(ja, &a.element("pi", 2, MV, true)?, &a.endo("n", true)?.expect("required"), cfg)
        }
        "courant-jacobi" => {
            let kind = spec.double.as_deref().unwrap_or("canonical");
            let s = match kind {
                "canonical" => canonical_double(ja),
                "canonical-drop-symmetric" => canonical_variant(ja, CanonicalVariant::DropSymmetricTerm),
                "canonical-zero-pairing" => canonical_variant(ja, CanonicalVariant::ZeroPairing),
                "deformed" => match deform(&canonical_double(ja), &gcs_map()?) {
                    Ok(s) => s,
                    Err(e) => {
                        let mut rep = Report::new("courant-jacobi");
                        rep.push(Item::fail("block conditions", "𝒥", e.to_string()));
                        return Ok(rep);
                    }
                },
                "bialgebroid" => build_double(&dual_structure()?, MixedReading::Jacobi),
                "bialgebroid-lie-only" => build_double(&dual_structure()?, MixedReading::LieOnly),
                other => {
                    return Err(Error::Invalid(format!(
                        "unknown double `{other}` (expected canonical, canonical-drop-symmetric, canonical-zero-pairing, deformed, bialgebroid or bialgebroid-lie-only)"
                    )))
                }
            };
            let mut rep = verify_courant_jacobi(&s, cfg);
            rep.note(format!("structure: {}", s.describe()));
            rep
        }
        "gcs" => verify_gcs(&canonical_double(ja), &gcs_map()?, cfg),
        "deformation-formulas" => match verify_deformation_formulas(ja, &gcs_map()?, cfg) {
            Ok(r) => r,
            Err(e) => {
                let mut rep = Report::new("deformation-formulas");
                rep.push(Item::fail("block conditions", "𝒥", e.to_string()));
                rep
            }
        },
        "quasi-bialgebroid" => verify_quasi_bialgebroid(&dual_structure()?, cfg),
        "correspondence" => {
            let q = quadruple(false)?;
            let sigma = a.element("sigma", 2, FORM, false)?;
            let c = correspondence_suite(&q, &sigma, cfg);
            let mut rep = Report::new("correspondence");
            let coherent = c.coherent();
            let verdicts: Vec<String> =
                c.legs.iter().map(|(l, r)| format!("{} {}", l.as_str(), r.verdict().as_str())).collect();
            for (leg, r) in c.legs {
                rep.absorb(leg.as_str(), r);
            }
            rep.push(Item::from_bool("legs agree", coherent, &verdicts.join(", "), "verdicts differ"));
            rep
        }
        "conformal-symplectic" => verify_conformal_symplectic(ja, &a.element("omega", 2, FORM, true)?, cfg)?,
        "complex-type" => verify_complex_type(ja, &a.endo("n", true)?.expect("required"), cfg),
        "poisson-type" => {
            verify_poisson_type(ja, &a.endo("n", true)?.expect("required"), &a.element("pi", 2, MV, true)?, cfg)
        }
        "jacobi-pair" => {
            need_tangent()?;
            verify_jacobi_pair(&coords, &a.element("lambda", 2, MV, true)?, &a.element("x", 1, MV, false)?)?
        }
        "almost-contact" => {
            need_tangent()?;
            verify_almost_contact(&coords, &triple()?)
        }
        "normal-contact" => {
            need_tangent()?;
            verify_normal_contact(&coords, &triple()?, cfg)
        }
        "contact-form" => {
            need_tangent()?;
            verify_contact_form(&coords, &a.element("eta", 1, FORM, true)?, &a.element("omega", 2, FORM, true)?, cfg)?
        }
        other => return Err(Error::Invalid(format!("unknown check `{other}`"))),
    })
}
