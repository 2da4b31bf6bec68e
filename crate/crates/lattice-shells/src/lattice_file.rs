//! Text format for lattice definitions, used by the CLI's `--lattice @file`
//! inputs. A spec is a single JSON object in one of two forms:
//!
//! Explicit Gram rows:
//!
//! ```json
//! { "name": "hexagonal", "gram": [[2, -1], [-1, 2]] }
//! ```
//!
//! Or a construction applied to other specs (`base` and `parts` entries are
//! either builtin lattice names or nested spec objects):
//!
//! ```json
//! { "name": "okubo-shadow", "construct": "conductor",
//!   "base": "E8", "diag": [2, 2, 2, 2, 4, 4, 4, 4] }
//! { "construct": "direct_sum", "parts": ["A2", "A2"] }
//! { "construct": "rescale", "base": "L_Ok", "factor": "1/4" }
//! ```
//!
//! Rescale factors are integers or exact fraction strings `"p/q"`.
//! Serialization and parsing round-trip exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{builtin, conductor, direct_sum, rescale_gram, GramLattice};
use crate::linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub body: SpecBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecBody {
    Gram { gram: Vec<Vec<i64>> },
    Construct(Construction),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "construct", rename_all = "snake_case")]
pub enum Construction {
    Conductor { base: Box<SpecRef>, diag: Vec<i64> },
    DirectSum { parts: Vec<SpecRef> },
    Rescale { base: Box<SpecRef>, factor: Factor },
}

/// A builtin lattice name or a nested spec.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecRef {
    Builtin(String),
    Nested(Box<LatticeSpec>),
}

/// Exact rational factor: an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Factor {
    Int(i64),
    Fraction(String),
}

impl Factor {
    pub fn to_rational(&self) -> Result<BigRational> {
        let r = match self {
            Factor::Int(n) => BigRational::from_integer(BigInt::from(*n)),
            Factor::Fraction(s) => {
                let (p, q) = s
                    .split_once('/')
                    .ok_or_else(|| Error::Spec(format!("bad fraction `{s}`")))?;
                let p: BigInt = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::Spec(format!("bad fraction `{s}`")))?;
                let q: BigInt = q
                    .trim()
                    .parse()
                    .map_err(|_| Error::Spec(format!("bad fraction `{s}`")))?;
                if q.is_zero() {
                    return Err(Error::Spec(format!("zero denominator in `{s}`")));
                }
                BigRational::new(p, q)
            }
        };
        if !r.is_positive() {
            return Err(Error::Spec(format!("factor {r} must be positive")));
        }
        Ok(r)
    }
}

impl SpecRef {
    fn resolve(&self) -> Result<GramLattice> {
        match self {
            SpecRef::Builtin(name) => builtin(name),
            SpecRef::Nested(spec) => spec.resolve(),
        }
    }
}

impl LatticeSpec {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("lattice spec serializes")
    }

    pub fn load(path: &std::path::Path) -> Result<GramLattice> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)?.resolve()
    }

    /// Builds the lattice, validating it along the way.
    pub fn resolve(&self) -> Result<GramLattice> {
        let mut l = match &self.body {
            SpecBody::Gram { gram } => {
                if gram.is_empty() || gram.iter().any(|r| r.len() != gram.len()) {
                    return Err(Error::Spec("gram must be square and nonempty".into()));
                }
                GramLattice::new("from-gram", IntMatrix::from_rows(gram.clone()))?
            }
            SpecBody::Construct(Construction::Conductor { base, diag }) => {
                conductor(&base.resolve()?, diag)?.sub
            }
            SpecBody::Construct(Construction::DirectSum { parts }) => {
                if parts.is_empty() {
                    return Err(Error::Spec("direct_sum needs at least one part".into()));
                }
                let mut acc = parts[0].resolve()?;
                for p in &parts[1..] {
                    acc = direct_sum(&acc, &p.resolve()?);
                }
                acc
            }
            SpecBody::Construct(Construction::Rescale { base, factor }) => {
                rescale_gram(&base.resolve()?, &factor.to_rational()?)?
            }
        };
        if let Some(name) = &self.name {
            l.name = name.clone();
        }
        Ok(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_form_roundtrip() {
        let text = r#"{"name":"hex","gram":[[2,-1],[-1,2]]}"#;
        let spec = LatticeSpec::parse(text).unwrap();
        let again = LatticeSpec::parse(&spec.to_json()).unwrap();
        assert_eq!(spec, again);
        let l = spec.resolve().unwrap();
        assert_eq!(l.name, "hex");
        assert_eq!(l.gram, builtin("A2").unwrap().gram);
    }

    #[test]
    fn conductor_form_resolves_to_okubo_shadow() {
        let text = r#"{"construct":"conductor","base":"E8","diag":[2,2,2,2,4,4,4,4]}"#;
        let spec = LatticeSpec::parse(text).unwrap();
        assert_eq!(LatticeSpec::parse(&spec.to_json()).unwrap(), spec);
        let l = spec.resolve().unwrap();
        assert_eq!(l.gram, builtin("L_Ok").unwrap().gram);
    }

    #[test]
    fn nested_rescale_resolves_to_m() {
        let text = r#"{"name":"M-by-hand","construct":"rescale",
            "base":{"construct":"conductor","base":"E8","diag":[2,2,2,2,4,4,4,4]},
            "factor":"1/4"}"#;
        let spec = LatticeSpec::parse(text).unwrap();
        assert_eq!(LatticeSpec::parse(&spec.to_json()).unwrap(), spec);
        let l = spec.resolve().unwrap();
        assert_eq!(l.name, "M-by-hand");
        assert_eq!(l.gram, builtin("M").unwrap().gram);
    }

    #[test]
    fn direct_sum_form() {
        let text = r#"{"construct":"direct_sum","parts":["A2","A2"]}"#;
        let spec = LatticeSpec::parse(text).unwrap();
        assert_eq!(LatticeSpec::parse(&spec.to_json()).unwrap(), spec);
        assert_eq!(spec.resolve().unwrap().gram, builtin("A2xA2").unwrap().gram);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(LatticeSpec::parse(r#"{"gram":[[2,-1]]}"#)
            .unwrap()
            .resolve()
            .is_err());
        assert!(
            LatticeSpec::parse(r#"{"construct":"rescale","base":"A2","factor":"1/0"}"#)
                .unwrap()
                .resolve()
                .is_err()
        );
        assert!(
            LatticeSpec::parse(r#"{"construct":"rescale","base":"A2","factor":"-1/2"}"#)
                .unwrap()
                .resolve()
                .is_err()
        );
    }
}
