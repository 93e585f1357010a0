//! JSON instance specifications.
//!
//! ```json
//! {"metadata": {"name": "..."},
//!  "generator": {"pieces": [{"lo": "0", "hi": "1/2", "lo_closed": true, "hi_closed": true,
//!                            "slope": "4/5", "intercept": "0"}],
//!                "overrides": {"1": "1"}},
//!  "conorm": {"summands": [{"lo": "0", "hi": "1/2", "kind": "probabilistic_sum"}]}}
//! ```
//!
//! Numbers are rational text (`"p/q"` or `"p"`); slopes and intercepts may
//! carry a leading `-`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conorm::{ArchKind, OrdinalSumConorm, Summand};
use crate::generator::{AffinePiece, PiecewiseMonotone};
use crate::genop::GeneratedOp;
use crate::numeric::{parse_rational, parse_signed_rational, Q01, Rat};
use crate::rangeset::{BoundKind, GenInterval};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{location}: {message}")]
pub struct SpecError {
    /// JSON pointer of the offending value, or `line:column` for syntax errors.
    pub location: String,
    pub message: String,
}

impl SpecError {
    fn at(location: impl Into<String>, message: impl ToString) -> Self {
        SpecError { location: location.into(), message: message.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub lo: String,
    pub hi: String,
    pub lo_closed: bool,
    pub hi_closed: bool,
    pub slope: String,
    pub intercept: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub pieces: Vec<PieceSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandSpec {
    pub lo: String,
    pub hi: String,
    pub kind: ArchKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConormSpec {
    pub summands: Vec<SummandSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub metadata: serde_json::Map<String, serde_json::Value>,
    pub generator: GeneratorSpec,
    pub conorm: ConormSpec,
}

fn escape_pointer(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

fn q01_at(text: &str, loc: &str) -> Result<Q01, SpecError> {
    parse_rational(text).map_err(|e| SpecError::at(loc, e))
}

fn rat_at(text: &str, loc: &str) -> Result<Rat, SpecError> {
    parse_signed_rational(text).map_err(|e| SpecError::at(loc, e))
}

impl InstanceSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().clone();
            let inner = e.into_inner();
            let location = if inner.is_syntax() || inner.is_eof() || path.iter().next().is_none() {
                format!("line {} column {}", inner.line(), inner.column())
            } else {
                let mut ptr = String::new();
                for seg in path.iter() {
                    use serde_path_to_error::Segment;
                    match seg {
                        Segment::Seq { index } => ptr.push_str(&format!("/{index}")),
                        Segment::Map { key } => ptr.push_str(&format!("/{}", escape_pointer(key))),
                        Segment::Enum { variant } => ptr.push_str(&format!("/{}", escape_pointer(variant))),
                        Segment::Unknown => ptr.push_str("/?"),
                    }
                }
                ptr
            };
            SpecError::at(location, inner)
        })
    }

    pub fn from_path(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SpecError::at(path.display().to_string(), e))?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn name(&self) -> Option<&str> {
        self.metadata.get("name").and_then(|v| v.as_str())
    }

    pub fn build_generator(&self) -> Result<PiecewiseMonotone, SpecError> {
        let mut pieces = Vec::with_capacity(self.generator.pieces.len());
        for (i, p) in self.generator.pieces.iter().enumerate() {
            let base = format!("/generator/pieces/{i}");
            let lo = q01_at(&p.lo, &format!("{base}/lo"))?;
            let hi = q01_at(&p.hi, &format!("{base}/hi"))?;
            let slope = rat_at(&p.slope, &format!("{base}/slope"))?;
            let intercept = rat_at(&p.intercept, &format!("{base}/intercept"))?;
            let domain = GenInterval::with_kinds(lo, BoundKind::from_closed(p.lo_closed), hi, BoundKind::from_closed(p.hi_closed))
                .map_err(|e| SpecError::at(&base, e))?;
            pieces.push(AffinePiece::new(domain, slope, intercept));
        }
        let mut overrides = BTreeMap::new();
        for (k, v) in &self.generator.overrides {
            let loc = format!("/generator/overrides/{}", escape_pointer(k));
            let x = parse_rational(k).map_err(|e| SpecError::at(&loc, format!("key: {e}")))?;
            let y = q01_at(v, &loc)?;
            if overrides.insert(x.clone(), y).is_some() {
                return Err(SpecError::at(&loc, format!("duplicate override for {x}")));
            }
        }
        PiecewiseMonotone::new(pieces, overrides).map_err(|e| SpecError::at("/generator", e))
    }

    pub fn build_conorm(&self) -> Result<OrdinalSumConorm, SpecError> {
        let mut summands = Vec::with_capacity(self.conorm.summands.len());
        for (i, s) in self.conorm.summands.iter().enumerate() {
            let base = format!("/conorm/summands/{i}");
            let lo = q01_at(&s.lo, &format!("{base}/lo"))?;
            let hi = q01_at(&s.hi, &format!("{base}/hi"))?;
            summands.push(Summand::new(lo, hi, s.kind));
        }
        OrdinalSumConorm::new(summands).map_err(|e| SpecError::at("/conorm/summands", e))
    }

    pub fn build(&self) -> Result<GeneratedOp, SpecError> {
        Ok(GeneratedOp::new(self.build_generator()?, self.build_conorm()?))
    }
}
