//! Scene files: named conics, forms, curves, points, lines and gons.
//!
//! ```json
//! {
//!   "format": "poncelet-scene/1",
//!   "coefficient_order": "u-descending",
//!   "backend": "exact",
//!   "objects": [
//!     {"name": "C", "conic": [["-1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]},
//!     {"name": "f", "form": {"degree": 3, "coeffs": ["1", "0", "-1", "0"]}}
//!   ]
//! }
//! ```
//!
//! Exact scalars are fraction strings (`"3/7"`, `"-2"`); float scalars are
//! `[re, im]` pairs. Form coefficients run `uⁿ, uⁿ⁻¹v, …, vⁿ`. Curve terms
//! are `[[i, j, k], c]` for `c x0^i x1^j x2^k`.

use std::collections::{BTreeMap, BTreeSet};

use anyhow::{anyhow, bail, Context, Result};
use poncelet_core::forms::{BinaryForm, PlaneCurve, TernaryForm};
use poncelet_core::numeric::{Backend, Exact, Float, Scalar, Tolerance};
use poncelet_core::projective::{Conic, ProjLine, ProjPoint};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const FORMAT: &str = "poncelet-scene/1";
pub const COEFFICIENT_ORDER: &str = "u-descending";

/// A scalar that can be read from and written to scene JSON.
pub trait JsonScalar: Scalar {
    fn parse_json(v: &Value) -> Result<Self>;
    fn to_json(&self) -> Value;
}

fn parse_fraction(s: &str) -> Result<Exact> {
    s.trim()
        .parse::<Exact>()
        .map_err(|e| anyhow!("bad fraction {s:?}: {e}"))
}

impl JsonScalar for Exact {
    fn parse_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_fraction(s),
            Value::Number(n) if n.is_i64() => Ok(Exact::from_i64(n.as_i64().unwrap())),
            _ => bail!("exact scalars are fraction strings such as \"3/7\", got {v}"),
        }
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl JsonScalar for Float {
    fn parse_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Ok(parse_fraction(s)?.to_c64()),
            Value::Number(n) => Ok(Float::new(n.as_f64().context("number out of range")?, 0.0)),
            Value::Array(a) if a.len() == 2 => {
                let part = |x: &Value| {
                    x.as_f64()
                        .ok_or_else(|| anyhow!("expected a number, got {x}"))
                };
                Ok(Float::new(part(&a[0])?, part(&a[1])?))
            }
            _ => bail!("float scalars are [re, im] pairs, got {v}"),
        }
    }

    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawScene {
    format: String,
    coefficient_order: String,
    backend: String,
    #[serde(default)]
    objects: Vec<RawObject>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tolerance: Option<RawTolerance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    view: Option<[f64; 4]>,
}

#[derive(Debug, Deserialize, Serialize)]
struct RawObject {
    name: String,
    #[serde(flatten)]
    kind: RawKind,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
enum RawKind {
    Conic(Vec<Vec<Value>>),
    Form {
        degree: usize,
        coeffs: Vec<Value>,
    },
    Curve {
        degree: u32,
        terms: Vec<([u32; 3], Value)>,
    },
    Point(Vec<Value>),
    Line(Vec<Value>),
    Gon(Vec<String>),
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawTolerance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rel: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    abs: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank_rel: Option<f64>,
}

/// One named scene object.
#[derive(Clone, Debug, PartialEq)]
pub enum Object<S: Scalar> {
    Conic(Conic<S>),
    Form(BinaryForm<S>),
    Curve(PlaneCurve<S>),
    Point(ProjPoint<S>),
    Line(ProjLine<S>),
    /// Names of tangent lines, in order.
    Gon(Vec<String>),
}

impl<S: Scalar> Object<S> {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Conic(_) => "conic",
            Object::Form(_) => "form",
            Object::Curve(_) => "curve",
            Object::Point(_) => "point",
            Object::Line(_) => "line",
            Object::Gon(_) => "gon",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scene<S: Scalar> {
    /// Backend tag as written in the file.
    pub backend: Backend,
    pub objects: Vec<(String, Object<S>)>,
    pub tolerance: Tolerance,
    tolerance_overrides: Option<[Option<f64>; 3]>,
    pub view: Option<[f64; 4]>,
}

/// The backend tag of a scene without parsing its objects.
pub fn peek_backend(text: &str) -> Result<Backend> {
    #[derive(Deserialize)]
    struct Tag {
        backend: String,
    }
    let tag: Tag = serde_json::from_str(text).map_err(json_error)?;
    parse_backend(&tag.backend)
}

fn parse_backend(s: &str) -> Result<Backend> {
    s.parse::<Backend>().map_err(|e| anyhow!("{e}"))
}

fn json_error(e: serde_json::Error) -> anyhow::Error {
    anyhow!("line {}, column {}: {e}", e.line(), e.column())
}

fn array3<S: JsonScalar>(v: &[Value], what: &str) -> Result<[S; 3]> {
    if v.len() != 3 {
        bail!("{what} needs 3 entries, got {}", v.len());
    }
    Ok([
        S::parse_json(&v[0])?,
        S::parse_json(&v[1])?,
        S::parse_json(&v[2])?,
    ])
}

impl<S: JsonScalar> Scene<S> {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawScene = serde_json::from_str(text).map_err(json_error)?;
        if raw.format != FORMAT {
            bail!(
                "unknown scene format {:?} (expected {FORMAT:?})",
                raw.format
            );
        }
        if raw.coefficient_order != COEFFICIENT_ORDER {
            bail!("unsupported coefficient order {:?}", raw.coefficient_order);
        }
        let mut seen = BTreeSet::new();
        let mut objects = Vec::with_capacity(raw.objects.len());
        for o in &raw.objects {
            if !seen.insert(o.name.clone()) {
                bail!("object name {:?} is defined twice", o.name);
            }
            let obj = parse_object(&o.kind).with_context(|| format!("object {:?}", o.name))?;
            objects.push((o.name.clone(), obj));
        }
        let scene = Scene {
            backend: parse_backend(&raw.backend)?,
            tolerance: tolerance_of(raw.tolerance)?,
            tolerance_overrides: raw.tolerance.map(|t| [t.rel, t.abs, t.rank_rel]),
            objects,
            view: raw.view,
        };
        for (name, o) in &scene.objects {
            if let Object::Gon(lines) = o {
                for l in lines {
                    scene.line(l).with_context(|| format!("gon {name:?}"))?;
                }
            }
        }
        Ok(scene)
    }

    pub fn to_json(&self) -> Value {
        let objects = self
            .objects
            .iter()
            .map(|(name, o)| RawObject {
                name: name.clone(),
                kind: raw_object(o),
            })
            .collect();
        let tolerance = self
            .tolerance_overrides
            .map(|[rel, abs, rank_rel]| RawTolerance { rel, abs, rank_rel });
        serde_json::to_value(RawScene {
            format: FORMAT.into(),
            coefficient_order: COEFFICIENT_ORDER.into(),
            backend: self.backend.name().into(),
            objects,
            tolerance,
            view: self.view,
        })
        .expect("scene serializes")
    }

    /// One object per line, so fixtures diff cleanly.
    pub fn to_text(&self) -> String {
        let v = self.to_json();
        let mut out = String::from("{\n");
        let obj = v.as_object().expect("object");
        let keys: Vec<&String> = obj.keys().collect();
        for (i, k) in keys.iter().enumerate() {
            let val = &obj[k.as_str()];
            out.push_str(&format!("  {}: ", Value::String((*k).clone())));
            match val {
                Value::Array(items) if k.as_str() == "objects" && !items.is_empty() => {
                    out.push_str("[\n");
                    for (j, item) in items.iter().enumerate() {
                        let sep = if j + 1 < items.len() { "," } else { "" };
                        out.push_str(&format!("    {item}{sep}\n"));
                    }
                    out.push_str("  ]");
                }
                _ => out.push_str(&val.to_string()),
            }
            out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
        }
        out.push_str("}\n");
        out
    }

    pub fn get(&self, name: &str) -> Result<&Object<S>> {
        self.objects
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, o)| o)
            .ok_or_else(|| anyhow!("no object named {name:?} in the scene"))
    }

    pub fn conic(&self, name: &str) -> Result<&Conic<S>> {
        match self.get(name)? {
            Object::Conic(c) => Ok(c),
            o => bail!("{name:?} is a {}, not a conic", o.kind()),
        }
    }

    pub fn form(&self, name: &str) -> Result<&BinaryForm<S>> {
        match self.get(name)? {
            Object::Form(f) => Ok(f),
            o => bail!("{name:?} is a {}, not a form", o.kind()),
        }
    }

    pub fn curve(&self, name: &str) -> Result<&PlaneCurve<S>> {
        match self.get(name)? {
            Object::Curve(c) => Ok(c),
            o => bail!("{name:?} is a {}, not a curve", o.kind()),
        }
    }

    pub fn point(&self, name: &str) -> Result<&ProjPoint<S>> {
        match self.get(name)? {
            Object::Point(p) => Ok(p),
            o => bail!("{name:?} is a {}, not a point", o.kind()),
        }
    }

    pub fn line(&self, name: &str) -> Result<&ProjLine<S>> {
        match self.get(name)? {
            Object::Line(l) => Ok(l),
            o => bail!("{name:?} is a {}, not a line", o.kind()),
        }
    }

    pub fn gon(&self, name: &str) -> Result<Vec<ProjLine<S>>> {
        match self.get(name)? {
            Object::Gon(lines) => lines.iter().map(|l| self.line(l).cloned()).collect(),
            o => bail!("{name:?} is a {}, not a gon", o.kind()),
        }
    }
}

fn tolerance_of(raw: Option<RawTolerance>) -> Result<Tolerance> {
    let d = Tolerance::default();
    let t = raw.unwrap_or_default();
    Ok(Tolerance::new(
        t.rel.unwrap_or(d.rel),
        t.abs.unwrap_or(d.abs),
        t.rank_rel.unwrap_or(d.rank_rel),
    )?)
}

fn parse_object<S: JsonScalar>(kind: &RawKind) -> Result<Object<S>> {
    Ok(match kind {
        RawKind::Conic(rows) => {
            if rows.len() != 3 {
                bail!("conic matrix needs 3 rows");
            }
            let m = [
                array3(&rows[0], "row")?,
                array3(&rows[1], "row")?,
                array3(&rows[2], "row")?,
            ];
            Object::Conic(Conic::new(m)?)
        }
        RawKind::Form { degree, coeffs } => {
            if coeffs.len() != degree + 1 {
                bail!(
                    "form of degree {degree} needs {} coefficients, got {}",
                    degree + 1,
                    coeffs.len()
                );
            }
            let c = coeffs
                .iter()
                .map(S::parse_json)
                .collect::<Result<Vec<_>>>()?;
            Object::Form(BinaryForm::new(c)?)
        }
        RawKind::Curve { degree, terms } => {
            let mut seen = BTreeSet::new();
            let mut parsed = Vec::with_capacity(terms.len());
            for (m, c) in terms {
                if !seen.insert(*m) {
                    bail!("monomial {m:?} appears twice");
                }
                parsed.push((*m, S::parse_json(c)?));
            }
            Object::Curve(PlaneCurve::new(TernaryForm::from_terms(*degree, parsed)?)?)
        }
        RawKind::Point(c) => Object::Point(ProjPoint::new(array3(c, "point")?)?),
        RawKind::Line(c) => Object::Line(ProjLine::new(array3(c, "line")?)?),
        RawKind::Gon(lines) => Object::Gon(lines.clone()),
    })
}

fn raw_object<S: JsonScalar>(o: &Object<S>) -> RawKind {
    let arr = |c: &[S; 3]| c.iter().map(JsonScalar::to_json).collect::<Vec<_>>();
    match o {
        Object::Conic(c) => RawKind::Conic(c.matrix().iter().map(arr).collect()),
        Object::Form(f) => RawKind::Form {
            degree: f.degree(),
            coeffs: f.coeffs().iter().map(JsonScalar::to_json).collect(),
        },
        Object::Curve(c) => RawKind::Curve {
            degree: c.degree(),
            terms: terms_json(c.form()),
        },
        Object::Point(p) => RawKind::Point(arr(p.coords())),
        Object::Line(l) => RawKind::Line(arr(l.coords())),
        Object::Gon(lines) => RawKind::Gon(lines.clone()),
    }
}

/// Nonzero terms, highest power of x0 first.
pub fn terms_json<S: JsonScalar>(f: &TernaryForm<S>) -> Vec<([u32; 3], Value)> {
    let mut terms: Vec<_> = f
        .terms()
        .filter(|(_, c)| !c.is_exact_zero())
        .map(|(m, c)| (*m, c.to_json()))
        .collect();
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    terms
}

pub fn form_json<S: JsonScalar>(f: &BinaryForm<S>) -> Value {
    serde_json::json!({
        "degree": f.degree(),
        "coeffs": f.coeffs().iter().map(JsonScalar::to_json).collect::<Vec<_>>(),
    })
}

pub fn curve_json<S: JsonScalar>(f: &TernaryForm<S>) -> Value {
    serde_json::json!({ "degree": f.degree(), "terms": terms_json(f) })
}

pub fn coords_json<S: JsonScalar>(c: &[S]) -> Value {
    Value::Array(c.iter().map(JsonScalar::to_json).collect())
}

/// Object names by kind, for listings.
pub fn names_by_kind<S: Scalar>(scene: &Scene<S>) -> BTreeMap<&'static str, Vec<String>> {
    let mut out: BTreeMap<&'static str, Vec<String>> = BTreeMap::new();
    for (n, o) in &scene.objects {
        out.entry(o.kind()).or_default().push(n.clone());
    }
    out
}
