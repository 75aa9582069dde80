//! Curve documents and ideal serialization.
//!
//! Curve input is JSON:
//!
//! ```json
//! {"p": 7, "steps": [{"n": 1,
//!                     "additive": [{"power": 0, "coeff": -1}],
//!                     "rhs": [{"coeff": 1, "exps": [4]}]}]}
//! ```
//!
//! `power` j is the coefficient of `X^{p^j}`; `exps` of step `i` has length `i`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Rule};
use crate::field::{PrimeField, Scalar};
use crate::lattice::{ExpTuple, Lattice};
use crate::quad::{QuadForm, QuadMonomial};
use crate::relations::{Ideal, Origin};
use crate::tower::{Tower, TowerSpec, TowerStep};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub p: i64,
    pub steps: Vec<StepDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDocument {
    pub n: i64,
    #[serde(default)]
    pub additive: Vec<AdditiveTerm>,
    pub rhs: Vec<RhsTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdditiveTerm {
    pub power: i64,
    pub coeff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhsTerm {
    pub coeff: i64,
    pub exps: Vec<i64>,
}

impl CurveDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curve documents always serialize")
    }

    /// Normalizes coefficients mod `p`; structural checks that need the
    /// integer values happen here, the rest in [`Tower::new`].
    pub fn to_spec(&self) -> Result<TowerSpec> {
        if self.p < 2 {
            return Err(Error::validation(None, Rule::PNotPrime, format!("p = {} is not prime", self.p)));
        }
        let p = self.p as u64;
        let field = PrimeField::new(p)?;
        let mut steps = Vec::with_capacity(self.steps.len());
        for (idx, s) in self.steps.iter().enumerate() {
            let level = Some(idx + 1);
            if s.n < 1 || s.n > u32::MAX as i64 {
                return Err(Error::validation(level, Rule::StepDegree, format!("n = {} must be positive", s.n)));
            }
            let mut additive = BTreeMap::new();
            for a in &s.additive {
                if a.power < 0 || a.power >= s.n {
                    return Err(Error::validation(
                        level,
                        Rule::AdditivePower,
                        format!("additive power {} outside 0..{}", a.power, s.n),
                    ));
                }
                if additive.insert(a.power as u32, field.from_i64(a.coeff)).is_some() {
                    return Err(Error::validation(
                        level,
                        Rule::DuplicateMonomial,
                        format!("additive power {} listed twice", a.power),
                    ));
                }
            }
            let mut rhs = BTreeMap::new();
            for t in &s.rhs {
                let exps = t
                    .exps
                    .iter()
                    .map(|&e| u32::try_from(e))
                    .collect::<std::result::Result<Vec<u32>, _>>()
                    .map_err(|_| {
                        Error::validation(level, Rule::ExponentBound, format!("exponents {:?} out of range", t.exps))
                    })?;
                if rhs.insert(exps, field.from_i64(t.coeff)).is_some() {
                    return Err(Error::validation(
                        level,
                        Rule::DuplicateMonomial,
                        format!("monomial {:?} listed twice", t.exps),
                    ));
                }
            }
            steps.push(TowerStep {
                n: s.n as u32,
                additive,
                rhs,
            });
        }
        Ok(TowerSpec { p, steps })
    }

    /// Document for a spec, coefficients in balanced form.
    pub fn from_spec(spec: &TowerSpec) -> Self {
        let field = PrimeField::new(spec.p).expect("spec carries a prime");
        CurveDocument {
            p: spec.p as i64,
            steps: spec
                .steps
                .iter()
                .map(|s| StepDocument {
                    n: s.n as i64,
                    additive: s
                        .additive
                        .iter()
                        .map(|(&power, &c)| AdditiveTerm {
                            power: power as i64,
                            coeff: field.balanced(c),
                        })
                        .collect(),
                    rhs: s
                        .rhs
                        .iter()
                        .map(|(exps, &c)| RhsTerm {
                            coeff: field.balanced(c),
                            exps: exps.iter().map(|&e| e as i64).collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Reads and validates a curve file.
pub fn parse_curve_file(path: impl AsRef<Path>) -> Result<Tower> {
    let text = std::fs::read_to_string(path)?;
    Tower::new(CurveDocument::from_json(&text)?.to_spec()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Plain,
    Json,
    Singular,
    Macaulay2,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Format::Plain),
            "json" => Ok(Format::Json),
            "singular" => Ok(Format::Singular),
            "macaulay2" | "m2" => Ok(Format::Macaulay2),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExportOptions {
    /// Coefficients in `0..p` instead of the balanced range.
    pub canonical_coeffs: bool,
}

/// `w_0_3`-style name of a basis differential.
pub fn variable_name(t: &ExpTuple) -> String {
    let mut s = String::from("w");
    for c in t.coords() {
        let _ = write!(s, "_{c}");
    }
    s
}

fn m2_variable_name(t: &ExpTuple) -> String {
    let parts: Vec<String> = t.coords().iter().map(u32::to_string).collect();
    if parts.len() == 1 {
        format!("w_{}", parts[0])
    } else {
        format!("w_({})", parts.join(","))
    }
}

fn monomial_text(m: &QuadMonomial, name: &dyn Fn(&ExpTuple) -> String) -> String {
    if m.lo() == m.hi() {
        format!("{}^2", name(m.lo()))
    } else {
        format!("{}*{}", name(m.lo()), name(m.hi()))
    }
}

/// One generator, terms in descending term order.
fn form_text(field: PrimeField, q: &QuadForm, opts: ExportOptions, name: &dyn Fn(&ExpTuple) -> String) -> String {
    let mut out = String::new();
    for (i, (m, c)) in q.terms().rev().enumerate() {
        let mono = monomial_text(m, name);
        let (negative, magnitude) = if opts.canonical_coeffs {
            (false, c as i64)
        } else {
            let b = field.balanced(c);
            (b < 0, b.abs())
        };
        match (i, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        if magnitude != 1 {
            let _ = write!(out, "{magnitude}*");
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: i64,
    factors: [Vec<u32>; 2],
}

#[derive(Serialize, Deserialize)]
struct JsonIdeal {
    p: u64,
    variables: Vec<Vec<u32>>,
    generators: Vec<Vec<JsonTerm>>,
}

/// Serializes generators; output is byte-deterministic.
pub fn export_ideal(lat: &Lattice, forms: &[QuadForm], format: Format, opts: ExportOptions) -> String {
    let field = lat.tower().field();
    let coeff = |c: Scalar| {
        if opts.canonical_coeffs {
            c as i64
        } else {
            field.balanced(c)
        }
    };
    match format {
        Format::Plain => {
            let mut s = String::new();
            for q in forms {
                s.push_str(&form_text(field, q, opts, &variable_name));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let doc = JsonIdeal {
                p: lat.tower().p(),
                variables: lat.basis().iter().map(|t| t.coords().to_vec()).collect(),
                generators: forms
                    .iter()
                    .map(|q| {
                        q.terms()
                            .rev()
                            .map(|(m, c)| JsonTerm {
                                coeff: coeff(c),
                                factors: [m.lo().coords().to_vec(), m.hi().coords().to_vec()],
                            })
                            .collect()
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("ideal serializes");
            s.push('\n');
            s
        }
        Format::Singular => {
            let vars: Vec<String> = lat.basis().iter().map(variable_name).collect();
            let mut s = format!("ring R = {}, ({}), dp;\n", lat.tower().p(), vars.join(", "));
            if forms.is_empty() {
                s.push_str("ideal I;\n");
            } else {
                s.push_str("ideal I =\n");
                let lines: Vec<String> = forms
                    .iter()
                    .map(|q| format!("  {}", form_text(field, q, opts, &variable_name)))
                    .collect();
                s.push_str(&lines.join(",\n"));
                s.push_str(";\n");
            }
            s
        }
        Format::Macaulay2 => {
            let vars: Vec<String> = lat.basis().iter().map(m2_variable_name).collect();
            let mut s = format!("R = ZZ/{}[{}];\n", lat.tower().p(), vars.join(", "));
            if forms.is_empty() {
                s.push_str("I = ideal(0_R);\n");
            } else {
                s.push_str("I = ideal(\n");
                let lines: Vec<String> = forms
                    .iter()
                    .map(|q| format!("  {}", form_text(field, q, opts, &m2_variable_name)))
                    .collect();
                s.push_str(&lines.join(",\n"));
                s.push_str("\n);\n");
            }
            s
        }
    }
}

/// Reads back the JSON export.
pub fn parse_ideal_json(text: &str) -> Result<(u64, Vec<QuadForm>)> {
    let doc: JsonIdeal = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let field = PrimeField::new(doc.p)?;
    let forms = doc
        .generators
        .into_iter()
        .map(|g| {
            QuadForm::from_terms(
                field,
                g.into_iter().map(|t| {
                    let [a, b] = t.factors;
                    (QuadMonomial::new(ExpTuple::new(a), ExpTuple::new(b)), field.from_i64(t.coeff))
                }),
            )
        })
        .collect();
    Ok((doc.p, forms))
}

/// The generator list with every `G_0` binomial repeated with the opposite
/// sign, the way the binomials are usually printed by hand.
pub fn fidelity_listing(lat: &Lattice, ideal: &Ideal) -> Vec<QuadForm> {
    let field = lat.tower().field();
    let mut out = Vec::new();
    for g in &ideal.generators {
        out.push(g.form.clone());
        if matches!(g.origin, Origin::G0 { .. }) {
            out.push(g.form.scale(field, field.neg(1)));
        }
    }
    out
}
