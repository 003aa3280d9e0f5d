//! The JSON family format.
//!
//! ```json
//! { "mode": "graded" | "affine",
//!   "vars": ["x", "y"],
//!   "params": ["n"],
//!   "generators": [ {"x": 2}, {"x": 1, "y": {"const": 1, "coeff": {"n": 1}}} ] }
//! ```
//!
//! Parsing runs twice over the text. The first pass reads the header
//! (`mode`, `vars`, `params`) and skips the generators; the second pass
//! reads the generators with the header in hand, so every error is reported
//! by serde_json with a line and column.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::{self, DeserializeSeed, IgnoredAny, MapAccess, SeqAccess, Visitor};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use super::{AffineExponent, FamilySpec, GradedGenerator};
use crate::error::FamilyError;
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, RingContext};

#[derive(Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Graded,
    Affine,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyHeader {
    mode: Mode,
    vars: Vars,
    params: Params,
    #[allow(dead_code)]
    generators: IgnoredAny,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IdealHeader {
    vars: Option<Vars>,
    #[allow(dead_code)]
    generators: IgnoredAny,
}

struct Vars(RingContext);

impl<'de> Deserialize<'de> for Vars {
    fn deserialize<D: de::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        RingContext::new(names).map(Vars).map_err(de::Error::custom)
    }
}

struct Params(Vec<String>);

impl<'de> Deserialize<'de> for Params {
    fn deserialize<D: de::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        if names.is_empty() {
            return Err(de::Error::custom(
                "`params` must name at least one parameter",
            ));
        }
        for (i, p) in names.iter().enumerate() {
            if !crate::monomial::is_identifier(p) {
                return Err(de::Error::custom(format!(
                    "`{p}` is not a valid identifier"
                )));
            }
            if names[..i].contains(p) {
                return Err(de::Error::custom(format!("duplicate parameter `{p}`")));
            }
        }
        Ok(Params(names))
    }
}

/// What the generator list is read against.
#[derive(Clone, Copy)]
struct Shape<'a> {
    mode: Mode,
    vars: &'a RingContext,
    params: &'a [String],
}

enum Generator {
    Graded(GradedGenerator),
    Affine(Vec<AffineExponent>),
}

/// Second pass over the whole document, reading only `generators`.
struct DocumentSeed<'a>(Shape<'a>);

impl<'de> DeserializeSeed<'de> for DocumentSeed<'_> {
    type Value = Vec<Generator>;

    fn deserialize<D: de::Deserializer<'de>>(self, d: D) -> Result<Self::Value, D::Error> {
        d.deserialize_any(self)
    }
}

impl<'de> Visitor<'de> for DocumentSeed<'_> {
    type Value = Vec<Generator>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a JSON object")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, seq: A) -> Result<Self::Value, A::Error> {
        GeneratorsSeed(self.0).visit_seq(seq)
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
        let mut gens = None;
        while let Some(key) = map.next_key::<String>()? {
            if key == "generators" {
                gens = Some(map.next_value_seed(GeneratorsSeed(self.0))?);
            } else {
                map.next_value::<IgnoredAny>()?;
            }
        }
        gens.ok_or_else(|| de::Error::missing_field("generators"))
    }
}

struct GeneratorsSeed<'a>(Shape<'a>);

impl<'de> DeserializeSeed<'de> for GeneratorsSeed<'_> {
    type Value = Vec<Generator>;

    fn deserialize<D: de::Deserializer<'de>>(self, d: D) -> Result<Self::Value, D::Error> {
        d.deserialize_seq(self)
    }
}

impl<'de> Visitor<'de> for GeneratorsSeed<'_> {
    type Value = Vec<Generator>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a list of generator objects")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
        let mut out = Vec::new();
        while let Some(g) = seq.next_element_seed(GeneratorSeed(self.0))? {
            out.push(g);
        }
        Ok(out)
    }
}

struct GeneratorSeed<'a>(Shape<'a>);

impl<'de> DeserializeSeed<'de> for GeneratorSeed<'_> {
    type Value = Generator;

    fn deserialize<D: de::Deserializer<'de>>(self, d: D) -> Result<Self::Value, D::Error> {
        d.deserialize_map(self)
    }
}

impl<'de> Visitor<'de> for GeneratorSeed<'_> {
    type Value = Generator;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a generator object mapping names to exponents")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
        let Shape { mode, vars, params } = self.0;
        let mut seen = BTreeSet::new();
        let mut base = vec![0u64; vars.dim()];
        let mut threshold = vec![0u64; params.len()];
        let mut affine = vec![AffineExponent::constant(0, params.len()); vars.dim()];
        while let Some(key) = map.next_key::<String>()? {
            if !seen.insert(key.clone()) {
                return Err(de::Error::custom(format!("duplicate key `{key}`")));
            }
            if let Some(i) = vars.index_of(&key) {
                match mode {
                    Mode::Graded => base[i] = map.next_value()?,
                    Mode::Affine => affine[i] = map.next_value_seed(AffineSeed(params))?,
                }
            } else if let Some(j) = params.iter().position(|p| *p == key) {
                if mode == Mode::Affine {
                    return Err(de::Error::custom(format!(
                        "parameter `{key}` may only appear inside `coeff` in affine mode"
                    )));
                }
                threshold[j] = map.next_value()?;
            } else {
                return Err(de::Error::custom(format!("unknown variable `{key}`")));
            }
        }
        Ok(match mode {
            Mode::Graded => Generator::Graded(GradedGenerator {
                base: Monomial::new(base),
                threshold,
            }),
            Mode::Affine => Generator::Affine(affine),
        })
    }
}

/// An affine exponent: an integer, or `{"const": a0, "coeff": {"n": a1}}`.
struct AffineSeed<'a>(&'a [String]);

impl<'de> DeserializeSeed<'de> for AffineSeed<'_> {
    type Value = AffineExponent;

    fn deserialize<D: de::Deserializer<'de>>(self, d: D) -> Result<Self::Value, D::Error> {
        d.deserialize_any(self)
    }
}

impl<'de> Visitor<'de> for AffineSeed<'_> {
    type Value = AffineExponent;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a non-negative integer or a {const, coeff} object")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
        Ok(AffineExponent::constant(v, self.0.len()))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
        u64::try_from(v)
            .map(|v| AffineExponent::constant(v, self.0.len()))
            .map_err(|_| E::custom("exponents must be non-negative"))
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
        let params = self.0;
        let mut constant = None;
        let mut coeffs = None;
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "const" if constant.is_none() => constant = Some(map.next_value::<u64>()?),
                "coeff" if coeffs.is_none() => {
                    let raw: Map<String, Value> = map.next_value()?;
                    let mut c = vec![0u64; params.len()];
                    for (name, v) in raw {
                        let j = params.iter().position(|p| *p == name).ok_or_else(|| {
                            de::Error::custom(format!("unknown parameter `{name}`"))
                        })?;
                        c[j] = v.as_u64().ok_or_else(|| {
                            de::Error::custom(format!(
                                "coefficient of `{name}` must be a non-negative integer"
                            ))
                        })?;
                    }
                    coeffs = Some(c);
                }
                "const" | "coeff" => {
                    return Err(de::Error::custom(format!("duplicate key `{key}`")))
                }
                other => return Err(de::Error::unknown_field(other, &["const", "coeff"])),
            }
        }
        Ok(AffineExponent {
            constant: constant.ok_or_else(|| de::Error::missing_field("const"))?,
            coeffs: coeffs.unwrap_or_else(|| vec![0; params.len()]),
        })
    }
}

pub(super) fn parse_family(text: &str) -> Result<FamilySpec, FamilyError> {
    let header: FamilyHeader = serde_json::from_str(text)?;
    let (ctx, params) = (header.vars.0, header.params.0);
    if let Some(p) = params.iter().find(|p| ctx.index_of(p).is_some()) {
        return Err(FamilyError::Invalid(format!(
            "`{p}` is both a variable and a parameter"
        )));
    }
    let shape = Shape {
        mode: header.mode,
        vars: &ctx,
        params: &params,
    };
    let mut de = serde_json::Deserializer::from_str(text);
    let gens = DocumentSeed(shape).deserialize(&mut de)?;
    de.end()?;
    match header.mode {
        Mode::Graded => {
            let gens = gens
                .into_iter()
                .map(|g| match g {
                    Generator::Graded(g) => g,
                    Generator::Affine(_) => unreachable!("graded shape"),
                })
                .collect();
            FamilySpec::graded(ctx, params, gens)
        }
        Mode::Affine => {
            let gens = gens
                .into_iter()
                .map(|g| match g {
                    Generator::Affine(g) => g,
                    Generator::Graded(_) => unreachable!("affine shape"),
                })
                .collect();
            FamilySpec::affine(ctx, params, gens)
        }
    }
}

/// Parses an inline ideal: `{"vars": [..], "generators": [..]}`, or a bare
/// generator list when `context` supplies the variables. Exponents are
/// constants; parameters are not allowed.
pub fn parse_ideal(
    text: &str,
    context: Option<&RingContext>,
) -> Result<(RingContext, MonomialIdeal), FamilyError> {
    let trimmed = text.trim_start();
    let ctx = if trimmed.starts_with('[') {
        context.cloned().ok_or_else(|| {
            FamilyError::Invalid("a bare generator list needs known variables".into())
        })?
    } else {
        let header: IdealHeader = serde_json::from_str(text)?;
        match (header.vars, context) {
            (Some(Vars(v)), Some(c)) if v != *c => {
                return Err(FamilyError::Invalid(format!(
                    "ideal variables [{}] differ from the family's [{}]",
                    v.names().join(", "),
                    c.names().join(", ")
                )))
            }
            (Some(Vars(v)), _) => v,
            (None, Some(c)) => c.clone(),
            (None, None) => return Err(FamilyError::Invalid("missing `vars`".into())),
        }
    };
    let shape = Shape {
        mode: Mode::Graded,
        vars: &ctx,
        params: &[],
    };
    let mut de = serde_json::Deserializer::from_str(text);
    let gens = DocumentSeed(shape).deserialize(&mut de)?;
    de.end()?;
    let gens = gens.into_iter().map(|g| match g {
        Generator::Graded(g) => g.base,
        Generator::Affine(_) => unreachable!("graded shape"),
    });
    let ideal = MonomialIdeal::new(ctx.dim(), gens).expect("generators built in context");
    Ok((ctx, ideal))
}

fn exponent_object(ctx: &RingContext, m: &Monomial) -> Map<String, Value> {
    m.support()
        .map(|i| (ctx.names()[i].clone(), json!(m.exponents()[i])))
        .collect()
}

/// `{"vars": [..], "generators": [..]}`, readable by [`parse_ideal`].
pub fn ideal_to_json(ctx: &RingContext, ideal: &MonomialIdeal) -> Value {
    let gens: Vec<Value> = ideal
        .gens()
        .iter()
        .map(|g| Value::Object(exponent_object(ctx, g)))
        .collect();
    json!({ "vars": ctx.names(), "generators": gens })
}

pub(super) fn family_to_json(spec: &FamilySpec) -> Value {
    let ctx = spec.context();
    let params = spec.params();
    let gens: Vec<Value> = if let Some(gens) = spec.graded_generators() {
        gens.iter()
            .map(|g| {
                let mut obj = exponent_object(ctx, &g.base);
                for (p, &e) in params.iter().zip(&g.threshold) {
                    if e > 0 {
                        obj.insert(p.clone(), json!(e));
                    }
                }
                Value::Object(obj)
            })
            .collect()
    } else {
        spec.affine_generators()
            .unwrap_or_default()
            .iter()
            .map(|exps| {
                let obj: Map<String, Value> = ctx
                    .names()
                    .iter()
                    .zip(exps)
                    .filter(|(_, e)| e.constant > 0 || e.coeffs.iter().any(|&c| c > 0))
                    .map(|(name, e)| {
                        let value = if e.coeffs.iter().all(|&c| c == 0) {
                            json!(e.constant)
                        } else {
                            let coeff: Map<String, Value> = params
                                .iter()
                                .zip(&e.coeffs)
                                .filter(|(_, &c)| c > 0)
                                .map(|(p, &c)| (p.clone(), json!(c)))
                                .collect();
                            json!({ "const": e.constant, "coeff": coeff })
                        };
                        (name.clone(), value)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect()
    };
    json!({
        "mode": spec.mode().as_str(),
        "vars": ctx.names(),
        "params": params,
        "generators": gens,
    })
}
