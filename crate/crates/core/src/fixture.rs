//! JSON fixtures describing a Galois extension: the modulus `P`, the group
//! presentation and the images of the generators.
//!
//! ```json
//! {
//!   "name": "Q(i)",
//!   "modulus": ["1", "0", "1"],
//!   "group": { "kind": "abelian", "orders": [2], "generators": [["0", "-1"]] }
//! }
//! ```
//!
//! Rationals are strings `"p"` or `"p/q"`; coefficient lists are in
//! ascending degree. Metacyclic groups also carry `m`, `s`, `t`, `u`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtensionField;
use crate::galois::GaloisExtension;
use crate::group::{GroupKind, Presentation};
use crate::poly::Poly;
use crate::scalar::{FromRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub modulus: Vec<String>,
    pub group: GroupSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub kind: String,
    pub orders: Vec<usize>,
    pub generators: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<usize>,
}

/// Fixtures shipped with the crate, by name.
pub const BUILTIN: &[(&str, &str)] = &[
    ("gaussian", include_str!("../fixtures/gaussian.json")),
    ("cyclotomic5", include_str!("../fixtures/cyclotomic5.json")),
    ("cyclotomic7", include_str!("../fixtures/cyclotomic7.json")),
    ("cyclotomic15", include_str!("../fixtures/cyclotomic15.json")),
    ("cyclotomic17", include_str!("../fixtures/cyclotomic17.json")),
    ("biquadratic", include_str!("../fixtures/biquadratic.json")),
    ("s3", include_str!("../fixtures/s3.json")),
    ("d4", include_str!("../fixtures/d4.json")),
];

pub fn builtin(name: &str) -> Option<Fixture> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, src)| Fixture::from_json(src).expect("bundled fixture parses"))
}

fn parse_list(items: &[String], field: &str) -> Result<Vec<Rational>> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| s.parse::<Rational>().map_err(|e| Error::Parse(format!("{field}[{i}]: {e}"))))
        .collect()
}

fn convert<S: FromRational>(values: &[Rational], field: &str) -> Result<Vec<S>> {
    values
        .iter()
        .enumerate()
        .map(|(i, q)| {
            S::from_rational(q).ok_or_else(|| Error::Parse(format!("{field}[{i}]: denominator vanishes in this field")))
        })
        .collect()
}

fn canonical(values: &[Rational]) -> Vec<String> {
    values.iter().map(Rational::to_string).collect()
}

impl Fixture {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Parse(format!("fixture JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serializes")
    }

    pub fn presentation(&self) -> Result<Presentation> {
        let g = &self.group;
        match g.kind.as_str() {
            "abelian" => Presentation::abelian(g.orders.clone()),
            "polycyclic" => Presentation::polycyclic(g.orders.clone()),
            "metacyclic" => {
                let need = |v: Option<usize>, name: &str| {
                    v.ok_or_else(|| Error::Parse(format!("group.{name}: required for metacyclic groups")))
                };
                let (m, s, t, u) = (need(g.m, "m")?, need(g.s, "s")?, need(g.t, "t")?, need(g.u, "u")?);
                if g.orders != [m, s] {
                    return Err(Error::InvalidPresentation(format!("orders must be [m, s] = [{m}, {s}]")));
                }
                Presentation::metacyclic(m, s, t, u)
            }
            other => Err(Error::Parse(format!("group.kind: unknown kind {other:?}"))),
        }
    }

    /// Builds and validates the extension over the scalar field `S`.
    pub fn load<S: FromRational>(&self) -> Result<GaloisExtension<S>> {
        let modulus = convert::<S>(&parse_list(&self.modulus, "modulus")?, "modulus")?;
        let field = ExtensionField::new(Poly::new(modulus))?;
        let n = field.degree();
        let mut gammas = Vec::with_capacity(self.group.generators.len());
        for (k, g) in self.group.generators.iter().enumerate() {
            let label = format!("group.generators[{k}]");
            if g.len() != n {
                return Err(Error::Parse(format!("{label}: expected {n} coefficients, found {}", g.len())));
            }
            gammas.push(field.elem(convert::<S>(&parse_list(g, &label)?, &label)?)?);
        }
        GaloisExtension::new(field, self.presentation()?, gammas)
    }

    /// Serializes an extension over the rationals in canonical form.
    pub fn from_extension(name: Option<String>, ext: &GaloisExtension<Rational>) -> Self {
        let gp = ext.presentation();
        let (kind, m, s, t, u) = match gp.kind() {
            GroupKind::Abelian => ("abelian", None, None, None, None),
            GroupKind::Polycyclic => ("polycyclic", None, None, None, None),
            GroupKind::Metacyclic { m, s, t, u } => ("metacyclic", Some(m), Some(s), Some(if t == 0 { m } else { t }), Some(u)),
        };
        Fixture {
            name,
            modulus: canonical(ext.field().modulus().coeffs()),
            group: GroupSpec {
                kind: kind.into(),
                orders: gp.orders().to_vec(),
                generators: ext.generators().iter().map(|g| canonical(g.gamma().coeffs())).collect(),
                m,
                s,
                t,
                u,
            },
        }
    }
}

/// Parses a comma-separated list of rationals.
pub fn parse_coeffs(src: &str) -> Result<Vec<Rational>> {
    src.split(',')
        .enumerate()
        .map(|(i, tok)| tok.trim().parse::<Rational>().map_err(|e| Error::Parse(format!("coefficient {i}: {e}"))))
        .collect()
}

pub fn parse_coeffs_as<S: FromRational>(src: &str) -> Result<Vec<S>> {
    convert(&parse_coeffs(src)?, "coefficients")
}
