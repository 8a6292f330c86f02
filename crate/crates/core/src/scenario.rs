//! JSON scenario files: serde types, loading with path-precise diagnostics,
//! and conversion into a validated [`CompositionInstance`].
//!
//! Rationals are written as `[num, den]`; inputs may also use a bare integer
//! or a `"num/den"` string. Extended values use `"+inf"` and `"-inf"`.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::composition::{AssumptionMode, CompositionInstance};
use crate::cones::OrderCone;
use crate::error::Error;
use crate::rational::{Vector, Q};
use crate::setvalued_fn::{SetRay, SetValuedFn};
use crate::upper_sets::{Kind, UpperSet};

/// An exact rational in scenario files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        for part in [self.0.numer(), self.0.denom()] {
            match part.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&part.to_string())?,
            }
        }
        seq.end()
    }
}

fn parse_int<E: de::Error>(s: &str) -> Result<BigInt, E> {
    s.trim().parse::<BigInt>().map_err(|_| E::custom(format!("invalid integer {s:?}")))
}

fn ratio<E: de::Error>(n: BigInt, d: BigInt) -> Result<Rat, E> {
    if d.is_zero() {
        return Err(E::custom("zero denominator"));
    }
    Ok(Rat(Q::new(n, d)))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntPart {
    Int(i64),
    Text(String),
}

impl IntPart {
    fn big<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntPart::Int(v) => Ok(v.into()),
            IntPart::Text(s) => parse_int(&s),
        }
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational: integer, \"num/den\", or [num, den]")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat(Q::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(Q::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Rat, E> {
                match s.split_once('/') {
                    Some((n, d)) => ratio(parse_int(n)?, parse_int(d)?),
                    None => Ok(Rat(Q::from_integer(parse_int(s)?))),
                }
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Rat, A::Error> {
                let n: IntPart = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let d: IntPart = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                ratio(n.big()?, d.big()?)
            }
        }
        d.deserialize_any(V)
    }
}

pub fn to_vector(v: &[Rat]) -> Vector {
    v.iter().map(|r| r.0.clone()).collect()
}

pub fn from_vector(v: &[Q]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeDto {
    pub dim: usize,
    pub generators: Vec<Vec<Rat>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Keyword {
    Empty,
    Full,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProperDto {
    pub kind: ProperTag,
    pub points: Vec<Vec<Rat>>,
    #[serde(default)]
    pub extra_rays: Vec<Vec<Rat>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProperTag {
    Proper,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UpperSetDto {
    Keyword(Keyword),
    Proper(ProperDto),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayDto {
    pub direction: Vec<Rat>,
    pub image: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetValuedDto {
    pub primal_grid: Vec<Vec<Rat>>,
    pub values: Vec<UpperSetDto>,
    #[serde(default, alias = "primal_cone")]
    pub ambient_primal_cone: Option<ConeDto>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ModeDto {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

/// Checks a run may request, in report order.
pub const CHECK_NAMES: [&str; 10] = ["assumptions", "cor33", "cor37", "fm_scalar", "fm_setvalued", "lemma21", "lemma42i", "prop31", "prop32", "thm36"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(rename = "G")]
    pub g: SetValuedDto,
    #[serde(rename = "F")]
    pub f: SetValuedDto,
    pub y_cone: ConeDto,
    pub z_cone: ConeDto,
    #[serde(default)]
    pub x_cone: Option<ConeDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_dual_grid: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_dual_grid: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_grid: Option<Vec<Rat>>,
    pub assumption_mode: ModeDto,
    #[serde(default)]
    pub descent_rays: Vec<RayDto>,
    #[serde(default)]
    pub ray_images: Vec<RayDto>,
}

/// Why a scenario could not be loaded.
#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
    #[error("{context}: {source}")]
    Invalid { context: String, source: Error },
}

fn invalid(context: impl Into<String>) -> impl FnOnce(Error) -> ScenarioError {
    let context = context.into();
    move |source| ScenarioError::Invalid { context, source }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            let location = if path == "." { format!("line {} column {}", inner.line(), inner.column()) } else { format!("{path} (line {} column {})", inner.line(), inner.column()) };
            let message = inner.to_string();
            // serde_json appends its own position; the location already carries it.
            let message = message.rsplit_once(" at line ").map(|(m, _)| m.to_string()).unwrap_or(message);
            ScenarioError::Parse { location, message }
        })
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serialization");
        s.push('\n');
        s
    }

    /// Validates and assembles the instance.
    pub fn build(&self) -> Result<CompositionInstance, ScenarioError> {
        let y_cone = build_cone(&self.y_cone).map_err(invalid("y_cone"))?;
        let z_cone = build_cone(&self.z_cone).map_err(invalid("z_cone"))?;
        let x_cone = self.x_cone.as_ref().map(build_cone).transpose().map_err(invalid("x_cone"))?;
        let g_cone = match &self.g.ambient_primal_cone {
            Some(c) => Some(build_cone(c).map_err(invalid("G.ambient_primal_cone"))?),
            None => x_cone.clone(),
        };
        let f_cone = match &self.f.ambient_primal_cone {
            Some(c) => Some(build_cone(c).map_err(invalid("F.ambient_primal_cone"))?),
            None => Some(y_cone.clone()),
        };
        let g_dim = grid_dim(&self.g, x_cone.as_ref().map(OrderCone::dim)).map_err(invalid("G.primal_grid"))?;
        let g = build_fn("G", &self.g, g_dim, &y_cone, g_cone, &self.descent_rays)?;
        let f = build_fn("F", &self.f, y_cone.dim(), &z_cone, f_cone, &self.ray_images)?;
        let x_dual = self.x_dual_grid.as_ref().map(|g| g.iter().map(|v| to_vector(v)).collect());
        let lambdas = self.lambda_grid.as_ref().map(|l| l.iter().map(|r| r.0.clone()).collect());
        let mode = match self.assumption_mode {
            ModeDto::A => AssumptionMode::Descent,
            ModeDto::B => AssumptionMode::StrictDecrease,
        };
        CompositionInstance::new(g, f, x_cone, x_dual, lambdas, mode).map_err(invalid("composition"))
    }

    pub fn y_dual_grid_vectors(&self) -> Option<Vec<Vector>> {
        self.y_dual_grid.as_ref().map(|g| g.iter().map(|v| to_vector(v)).collect())
    }
}

fn grid_dim(r: &SetValuedDto, fallback: Option<usize>) -> Result<usize, Error> {
    match (r.primal_grid.first(), fallback) {
        (Some(p), _) => Ok(p.len()),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(Error::EmptySequence),
    }
}

pub fn build_cone(c: &ConeDto) -> Result<OrderCone, Error> {
    OrderCone::new(c.dim, c.generators.iter().map(|g| to_vector(g)).collect())
}

pub fn cone_dto(c: &OrderCone) -> ConeDto {
    ConeDto { dim: c.dim(), generators: c.generators().iter().map(|g| from_vector(g)).collect() }
}

pub fn build_upper_set(ambient: &OrderCone, v: &UpperSetDto) -> Result<UpperSet, Error> {
    match v {
        UpperSetDto::Keyword(Keyword::Empty) => Ok(UpperSet::empty(ambient)),
        UpperSetDto::Keyword(Keyword::Full) => Ok(UpperSet::full(ambient)),
        UpperSetDto::Proper(p) => {
            if p.points.is_empty() {
                return Err(Error::InvalidParameter("a proper set needs at least one point; use \"empty\"".into()));
            }
            UpperSet::new(ambient, p.points.iter().map(|v| to_vector(v)).collect(), p.extra_rays.iter().map(|v| to_vector(v)).collect())
        }
    }
}

pub fn upper_set_dto(a: &UpperSet) -> UpperSetDto {
    match a.kind() {
        Kind::Empty => UpperSetDto::Keyword(Keyword::Empty),
        Kind::Full => UpperSetDto::Keyword(Keyword::Full),
        Kind::Proper => UpperSetDto::Proper(ProperDto {
            kind: ProperTag::Proper,
            points: a.points().iter().map(|p| from_vector(p)).collect(),
            extra_rays: a.extra_rays().iter().map(|r| from_vector(r)).collect(),
        }),
    }
}

fn build_fn(label: &str, r: &SetValuedDto, dim: usize, ambient: &OrderCone, primal_cone: Option<OrderCone>, rays: &[RayDto]) -> Result<SetValuedFn, ScenarioError> {
    if r.primal_grid.len() != r.values.len() {
        return Err(ScenarioError::Invalid {
            context: format!("{label}.values"),
            source: Error::LengthMismatch(format!("{} grid points but {} values", r.primal_grid.len(), r.values.len())),
        });
    }
    let mut values = Vec::with_capacity(r.values.len());
    for (i, v) in r.values.iter().enumerate() {
        values.push(build_upper_set(ambient, v).map_err(invalid(format!("{label}.values[{i}]")))?);
    }
    let rays = rays.iter().map(|r| SetRay { direction: to_vector(&r.direction), image: to_vector(&r.image) }).collect();
    let grid = r.primal_grid.iter().map(|v| to_vector(v)).collect();
    let rays_field = if label == "G" { "descent_rays" } else { "ray_images" };
    SetValuedFn::new(dim, grid, values, ambient.clone(), primal_cone, rays).map_err(|e| {
        let context = match &e {
            Error::InconsistentRay(_) | Error::ZeroGenerator(_) | Error::BadDirection(_) => format!("{label} ({rays_field})"),
            _ => label.to_string(),
        };
        ScenarioError::Invalid { context, source: e }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn rational_forms() {
        let v: Vec<Rat> = serde_json::from_str(r#"[3, "-1/2", [4, 6], ["10000000000000000000000", 1]]"#).unwrap();
        assert_eq!(v[0].0, qr(3, 1));
        assert_eq!(v[1].0, qr(-1, 2));
        assert_eq!(v[2].0, qr(2, 3));
        assert_eq!(serde_json::to_string(&v[2]).unwrap(), "[2,3]");
        assert_eq!(serde_json::to_string(&v[3]).unwrap(), r#"["10000000000000000000000",1]"#);
        assert!(serde_json::from_str::<Rat>("[1, 0]").is_err());
        assert!(serde_json::from_str::<Rat>("1.5").is_err());
    }

    #[test]
    fn upper_set_forms() {
        let v: Vec<UpperSetDto> = serde_json::from_str(r#"["empty", "full", {"kind": "proper", "points": [[1]]}]"#).unwrap();
        assert_eq!(v[0], UpperSetDto::Keyword(Keyword::Empty));
        assert_eq!(v[1], UpperSetDto::Keyword(Keyword::Full));
        assert!(matches!(&v[2], UpperSetDto::Proper(p) if p.extra_rays.is_empty()));
    }

    #[test]
    fn parse_error_has_path() {
        let text = r#"{"G": {"primal_grid": [[0]], "values": ["nope"]}}"#;
        let e = Scenario::from_json(text).unwrap_err();
        assert!(e.to_string().starts_with("G.values[0]"), "{e}");
    }
}
