//! Structure files: a TOML document naming a base, an algebroid, a set of
//! objects written in the expression grammar, and an ordered list of checks.
//!
//! ```toml
//! name = "symplectic-r2"
//!
//! [base]
//! coords = ["x", "y"]
//!
//! [algebroid]
//! builder = "tangent"        # tangent | e1 | custom
//! cocycle = "0"              # φ0, a 1-form
//!
//! [objects.omega]
//! type = "2-form"
//! value = "dx^dy"
//!
//! [[check]]
//! run = "conformal-symplectic"
//! omega = "omega"
//! expect = "pass"
//! ```
//!
//! A custom algebroid gives `rank`, `anchor` (one vector field per frame
//! element, in `partial_x` notation) and `brackets` keyed `"i,j"` (1-based,
//! values in `e1..er`). `use = "<gallery name>"` loads a gallery fixture;
//! objects are merged by name, other sections present in the file replace
//! the fixture's.

mod run;

use std::collections::BTreeMap;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::algebroid::{JacobiAlgebroid, LieAlgebroid};
use crate::contact::build_e1;
use crate::error::{Error, Result};
use crate::report::Status;
use crate::symalg::parse::{parse_kvector, parse_point};
use crate::symalg::{EndoTensor, KVector, Naming, Poly, Rational, Variance};

pub use run::{run, CheckOutcome, RunOptions, RunReport, REPORT_SCHEMA};

#[derive(Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: Option<String>,
    description: Option<String>,
    #[serde(rename = "use")]
    use_: Option<Spanned<String>>,
    base: Option<RawBase>,
    algebroid: Option<RawAlgebroid>,
    #[serde(default)]
    objects: Option<BTreeMap<String, RawObject>>,
    check: Option<Vec<RawCheck>>,
}

#[derive(Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
struct RawBase {
    coords: Vec<Spanned<String>>,
}

#[derive(Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
struct RawAlgebroid {
    builder: Spanned<String>,
    cocycle: Option<Spanned<String>>,
    rank: Option<Spanned<usize>>,
    anchor: Option<Vec<Spanned<String>>>,
    #[serde(default)]
    brackets: BTreeMap<String, Spanned<String>>,
}

#[derive(Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
struct RawObject {
    #[serde(rename = "type")]
    kind: Spanned<String>,
    value: Option<Spanned<String>>,
    matrix: Option<Vec<Vec<Spanned<String>>>>,
}

#[derive(Deserialize, Clone, Debug)]
#[serde(deny_unknown_fields)]
struct RawCheck {
    run: Spanned<String>,
    expect: Option<Spanned<String>>,
    samples: Option<Vec<Spanned<String>>>,
    double: Option<Spanned<String>>,
    pi: Option<Spanned<String>>,
    n: Option<Spanned<String>>,
    phi: Option<Spanned<String>>,
    sigma: Option<Spanned<String>>,
    omega: Option<Spanned<String>>,
    eta: Option<Spanned<String>>,
    y: Option<Spanned<String>>,
    lambda: Option<Spanned<String>>,
    x: Option<Spanned<String>>,
}

/// The algebroid shorthand a file was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builder {
    Tangent,
    E1,
    Custom,
}

#[derive(Clone, Debug)]
pub enum Object {
    Function(Poly),
    Element(KVector),
    Endo(EndoTensor),
}

impl Object {
    pub fn describe(&self) -> String {
        match self {
            Object::Function(_) => "function".into(),
            Object::Endo(_) => "endo".into(),
            Object::Element(k) => match k.variance() {
                Variance::Multivector => format!("{}-vector", k.degree()),
                Variance::Form => format!("{}-form", k.degree()),
            },
        }
    }
}

/// Every check name understood by [`run`], with its argument keys.
pub const CHECKS: &[(&str, &[&str])] = &[
    ("lie-algebroid", &[]),
    ("cocycle", &[]),
    ("maurer-cartan", &[]),
    ("jacobi-bivector", &["pi"]),
    ("quadruple", &["pi", "n", "phi"]),
    ("dn-derivation", &["pi", "n"]),
    ("courant-jacobi", &["double", "pi", "n", "sigma", "phi"]),
    ("gcs", &["n", "pi", "sigma"]),
    ("deformation-formulas", &["n", "pi", "sigma"]),
    ("quasi-bialgebroid", &["pi", "n", "phi"]),
    ("correspondence", &["pi", "n", "phi", "sigma"]),
    ("conformal-symplectic", &["omega"]),
    ("complex-type", &["n"]),
    ("poisson-type", &["n", "pi"]),
    ("jacobi-pair", &["lambda", "x"]),
    ("almost-contact", &["phi", "y", "eta"]),
    ("normal-contact", &["phi", "y", "eta"]),
    ("contact-form", &["eta", "omega"]),
];

#[derive(Clone, Debug)]
pub struct CheckSpec {
    pub run: String,
    pub expect: Option<Status>,
    pub samples: Vec<Vec<Rational>>,
    /// Named arguments resolved to objects; `double` is kept as text.
    pub args: BTreeMap<String, Object>,
    pub double: Option<String>,
}

#[derive(Clone, Debug)]
pub struct StructureFile {
    pub name: Option<String>,
    pub description: Option<String>,
    pub coords: Vec<String>,
    pub builder: Builder,
    pub algebroid: JacobiAlgebroid,
    pub objects: BTreeMap<String, Object>,
    pub checks: Vec<CheckSpec>,
}

struct Src<'a> {
    text: &'a str,
}

impl Src<'_> {
    fn pos(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
        (line, col)
    }

    fn err(&self, span: Range<usize>, msg: impl Into<String>) -> Error {
        let (line, column) = self.pos(span.start);
        Error::Parse { line, column, message: msg.into() }
    }

    /// Maps an error from parsing the contents of a string value back to
    /// the file position.
    fn relocate(&self, span: Range<usize>, e: Error) -> Error {
        let Error::Parse { line, column, message } = e else {
            return self.err(span, e.to_string());
        };
        let raw = &self.text[span.clone()];
        let quote = if raw.starts_with("\"\"\"") || raw.starts_with("'''") {
            3
        } else if raw.starts_with('"') || raw.starts_with('\'') {
            1
        } else {
            0
        };
        let body = &raw[quote..];
        let mut offset = span.start + quote;
        let mut cur_line = 1;
        let mut cur_col = 1;
        for (i, c) in body.char_indices() {
            if cur_line == line && cur_col == column {
                offset = span.start + quote + i;
                break;
            }
            if c == '\n' {
                cur_line += 1;
                cur_col = 1;
            } else {
                cur_col += 1;
            }
            offset = span.start + quote + i + c.len_utf8();
        }
        let (l, c) = self.pos(offset);
        Error::Parse { line: l, column: c, message }
    }

    fn element(&self, s: &Spanned<String>, naming: &Naming, degree: usize, v: Variance) -> Result<KVector> {
        parse_kvector(s.get_ref(), naming, degree, v).map_err(|e| self.relocate(s.span(), e))
    }
}

fn toml_err(text: &str, e: toml::de::Error) -> Error {
    let src = Src { text };
    let msg = e.message().trim().to_string();
    match e.span() {
        Some(span) => src.err(span, msg),
        None => Error::Parse { line: 1, column: 1, message: msg },
    }
}

/// Parses a structure file; `use = "..."` is resolved against the gallery.
pub fn parse(text: &str) -> Result<StructureFile> {
    let raw: RawFile = toml::from_str(text).map_err(|e| toml_err(text, e))?;
    let src = Src { text };
    match &raw.use_ {
        None => {
            let objects = raw.objects.clone().unwrap_or_default().into_iter().map(|(k, o)| (k, (o, &src))).collect();
            build(raw, objects, Sources { base: &src, algebroid: &src, checks: &src })
        }
        Some(name) => {
            let Some(g) = crate::gallery::source(name.get_ref()) else {
                return Err(src.err(name.span(), format!("unknown gallery fixture `{}`", name.get_ref())));
            };
            let base: RawFile = toml::from_str(g).map_err(|e| toml_err(g, e))?;
            let gsrc = Src { text: g };
            merge(raw, base, &src, &gsrc)
        }
    }
}

fn merge(file: RawFile, base: RawFile, src: &Src, gsrc: &Src) -> Result<StructureFile> {
    // Each section comes wholesale from one source so spans stay meaningful.
    let pick = |own: bool| if own { src } else { gsrc };
    let srcs = Sources {
        base: pick(file.base.is_some()),
        algebroid: pick(file.algebroid.is_some()),
        checks: pick(file.check.is_some()),
    };
    let mut objects: BTreeMap<String, (RawObject, &Src)> = BTreeMap::new();
    for (k, o) in base.objects.unwrap_or_default() {
        objects.insert(k, (o, gsrc));
    }
    for (k, o) in file.objects.unwrap_or_default() {
        objects.insert(k, (o, src));
    }
    let raw = RawFile {
        name: file.name.or(base.name),
        description: file.description.or(base.description),
        use_: None,
        base: file.base.or(base.base),
        algebroid: file.algebroid.or(base.algebroid),
        objects: None,
        check: file.check.or(base.check),
    };
    build(raw, objects, srcs)
}

struct Sources<'a, 'b> {
    base: &'a Src<'b>,
    algebroid: &'a Src<'b>,
    checks: &'a Src<'b>,
}

fn build(raw: RawFile, raw_objects: BTreeMap<String, (RawObject, &Src)>, srcs: Sources) -> Result<StructureFile> {
    let src = srcs.base;
    let base = raw.base.ok_or_else(|| Error::Parse { line: 1, column: 1, message: "missing [base] section".into() })?;
    let coords: Vec<String> = base.coords.iter().map(|c| c.get_ref().clone()).collect();
    for (i, c) in base.coords.iter().enumerate() {
        let ok = c.get_ref().chars().next().is_some_and(|ch| ch.is_alphabetic())
            && c.get_ref().chars().all(|ch| ch.is_alphanumeric() || ch == '_');
        if !ok {
            return Err(src.err(c.span(), format!("invalid coordinate name `{}`", c.get_ref())));
        }
        if coords[..i].contains(c.get_ref()) {
            return Err(src.err(c.span(), format!("duplicate coordinate `{}`", c.get_ref())));
        }
    }
    let alg_raw = raw
        .algebroid
        .ok_or_else(|| Error::Parse { line: 1, column: 1, message: "missing [algebroid] section".into() })?;
    let (builder, algebroid) = build_algebroid(&alg_raw, &coords, srcs.algebroid)?;
    let naming = algebroid.naming().clone();

    let mut objects = BTreeMap::new();
    for (name, (o, osrc)) in raw_objects {
        objects.insert(name, build_object(&o, &naming, algebroid.nvars(), osrc)?);
    }

    let mut checks = Vec::new();
    for c in raw.check.unwrap_or_default() {
        checks.push(build_check(&c, &objects, srcs.checks)?);
    }
    Ok(StructureFile { name: raw.name, description: raw.description, coords, builder, algebroid, objects, checks })
}

fn build_algebroid(a: &RawAlgebroid, coords: &[String], src: &Src) -> Result<(Builder, JacobiAlgebroid)> {
    let refs: Vec<&str> = coords.iter().map(String::as_str).collect();
    let m = coords.len();
    let custom_only = |present: bool, what: &str, span: Range<usize>| {
        if present {
            Err(src.err(span, format!("`{what}` is only allowed with builder = \"custom\"")))
        } else {
            Ok(())
        }
    };
    let b = a.builder.get_ref().as_str();
    let bspan = a.builder.span();
    let (builder, lie) = match b {
        "tangent" | "e1" => {
            custom_only(a.rank.is_some(), "rank", bspan.clone())?;
            custom_only(a.anchor.is_some(), "anchor", bspan.clone())?;
            custom_only(!a.brackets.is_empty(), "brackets", bspan.clone())?;
            if b == "e1" {
                if let Some(c) = &a.cocycle {
                    return Err(src.err(c.span(), "the e1 builder fixes the cocycle to dt"));
                }
                return Ok((Builder::E1, build_e1(&refs)));
            }
            (Builder::Tangent, LieAlgebroid::tangent(&refs))
        }
        "custom" => {
            let rank = a.rank.as_ref().ok_or_else(|| src.err(bspan.clone(), "custom algebroid needs `rank`"))?;
            let r = *rank.get_ref();
            let tm = LieAlgebroid::tangent(&refs);
            let anchor_src = a.anchor.clone().unwrap_or_default();
            if anchor_src.len() != r {
                return Err(src.err(rank.span(), format!("`anchor` lists {} entries for rank {r}", anchor_src.len())));
            }
            let mut anchor = Vec::new();
            for s in &anchor_src {
                let v = src.element(s, tm.naming(), 1, Variance::Multivector)?;
                anchor.push((0..m).map(|j| v.coeff(&[j])).collect());
            }
            let naming = Naming::generic(coords.to_vec(), r);
            let mut structure = vec![vec![vec![Poly::zero(m); r]; r]; r];
            for (key, val) in &a.brackets {
                let parsed: Option<(usize, usize)> = key
                    .split_once(',')
                    .and_then(|(i, j)| Some((i.trim().parse().ok()?, j.trim().parse().ok()?)));
                let (i, j) = match parsed {
                    Some((i, j)) if (1..=r).contains(&i) && (1..=r).contains(&j) => (i - 1, j - 1),
                    _ => return Err(src.err(val.span(), format!("bracket key `{key}` must be `i,j` with 1 ≤ i, j ≤ {r}"))),
                };
                let v = src.element(val, &naming, 1, Variance::Multivector)?;
                for k in 0..r {
                    structure[i][j][k] = v.coeff(&[k]);
                }
            }
            let lie = LieAlgebroid::new(naming, anchor, structure).map_err(|e| src.err(bspan.clone(), e.to_string()))?;
            (Builder::Custom, lie)
        }
        other => return Err(src.err(bspan, format!("unknown builder `{other}` (expected tangent, e1 or custom)"))),
    };
    let phi0 = match &a.cocycle {
        Some(c) => src.element(c, lie.naming(), 1, Variance::Form)?,
        None => KVector::zero(lie.rank(), m, 1, Variance::Form),
    };
    // Closedness is a verdict of the `cocycle` check, not a load error.
    let ja = JacobiAlgebroid::new(lie, phi0).map_err(|e| src.err(bspan, e.to_string()))?;
    Ok((builder, ja))
}

fn build_object(o: &RawObject, naming: &Naming, nvars: usize, src: &Src) -> Result<Object> {
    let kind = o.kind.get_ref().as_str();
    let value = || o.value.as_ref().ok_or_else(|| src.err(o.kind.span(), format!("object of type `{kind}` needs `value`")));
    let element = |deg: usize, v: Variance| -> Result<Object> {
        if o.matrix.is_some() {
            return Err(src.err(o.kind.span(), "`matrix` is only allowed for type = \"endo\""));
        }
        Ok(Object::Element(src.element(value()?, naming, deg, v)?))
    };
    let mv = Variance::Multivector;
    let form = Variance::Form;
    match kind {
        "function" => {
            let f = src.element(value()?, naming, 0, form)?;
            Ok(Object::Function(f.as_scalar()))
        }
        "vector" => element(1, mv),
        "bivector" => element(2, mv),
        "trivector" => element(3, mv),
        "1-form" => element(1, form),
        "2-form" => element(2, form),
        "3-form" => element(3, form),
        "endo" => {
            let rows = o.matrix.as_ref().ok_or_else(|| src.err(o.kind.span(), "endo needs `matrix` (list of rows)"))?;
            let r = naming.frame.len();
            if rows.len() != r || rows.iter().any(|row| row.len() != r) {
                return Err(src.err(o.kind.span(), format!("endo matrix must be {r}×{r}")));
            }
            let mut m = Vec::new();
            for row in rows {
                let mut out = Vec::new();
                for e in row {
                    out.push(src.element(e, naming, 0, form)?.as_scalar());
                }
                m.push(out);
            }
            Ok(Object::Endo(EndoTensor::new(nvars, m)?))
        }
        other => Err(src.err(
            o.kind.span(),
            format!("unknown object type `{other}` (expected function, vector, bivector, trivector, 1-form, 2-form, 3-form or endo)"),
        )),
    }
}

fn build_check(c: &RawCheck, objects: &BTreeMap<String, Object>, src: &Src) -> Result<CheckSpec> {
    let name = c.run.get_ref().as_str();
    let Some((_, allowed)) = CHECKS.iter().find(|(n, _)| *n == name) else {
        return Err(src.err(c.run.span(), format!("unknown check `{name}`")));
    };
    let given: [(&str, &Option<Spanned<String>>); 10] = [
        ("double", &c.double),
        ("pi", &c.pi),
        ("n", &c.n),
        ("phi", &c.phi),
        ("sigma", &c.sigma),
        ("omega", &c.omega),
        ("eta", &c.eta),
        ("y", &c.y),
        ("lambda", &c.lambda),
        ("x", &c.x),
    ];
    let mut args = BTreeMap::new();
    for (key, val) in given {
        let Some(val) = val else { continue };
        if !allowed.contains(&key) {
            return Err(src.err(val.span(), format!("check `{name}` takes no argument `{key}`")));
        }
        if key == "double" {
            continue;
        }
        let obj = objects
            .get(val.get_ref())
            .ok_or_else(|| src.err(val.span(), format!("unknown object `{}`", val.get_ref())))?;
        args.insert(key.to_string(), obj.clone());
    }
    let expect = match &c.expect {
        None => None,
        Some(e) => Some(match e.get_ref().as_str() {
            "pass" => Status::Pass,
            "fail" => Status::Fail,
            "skipped" => Status::Skipped,
            other => return Err(src.err(e.span(), format!("expect must be pass, fail or skipped, got `{other}`"))),
        }),
    };
    let mut samples = Vec::new();
    for s in c.samples.iter().flatten() {
        samples.push(parse_point(s.get_ref()).map_err(|e| src.relocate(s.span(), e))?);
    }
    Ok(CheckSpec { run: name.to_string(), expect, samples, args, double: c.double.as_ref().map(|d| d.get_ref().clone()) })
}
