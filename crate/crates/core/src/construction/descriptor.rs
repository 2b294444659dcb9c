//! JSON instance descriptors. A descriptor is the full identity of a coloring:
//! the formula text plus the layout parameters.

use serde_json::{json, Value};
use thiserror::Error;

use super::instance::{build_brouwer, ConstructedBrouwer};
use super::layout::LayoutParams;
use super::ConstructionError;
use crate::qbf::{parse_qdimacs, QbfError, QbfFormula};
use crate::reduction::{brouwer_to_sperner, ReducedSperner};

pub const BROUWER_SCHEMA: &str = "qbf2brouwer/v1";
pub const SPERNER_SCHEMA: &str = "brouwer2sperner/v1";
pub const LAYOUT_VERSION: &str = "v1";

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("descriptor is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown descriptor schema {0:?}")]
    Schema(String),
    #[error("descriptor field `{0}` is missing or has the wrong type")]
    Field(&'static str),
    #[error("unsupported layout version {0:?}")]
    LayoutVersion(String),
    #[error("descriptor formula: {0}")]
    Qbf(#[from] QbfError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrouwerDescriptor {
    pub formula: QbfFormula,
    pub params: LayoutParams,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpernerDescriptor {
    pub brouwer: BrouwerDescriptor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Descriptor {
    Brouwer(BrouwerDescriptor),
    Sperner(SpernerDescriptor),
}

impl BrouwerDescriptor {
    pub fn new(formula: QbfFormula, params: LayoutParams) -> Self {
        BrouwerDescriptor { formula, params }
    }

    pub fn to_value(&self) -> Result<Value, DescriptorError> {
        Ok(json!({
            "schema": BROUWER_SCHEMA,
            "layout": LAYOUT_VERSION,
            "formula": self.formula.to_qdimacs()?,
            "params": serde_json::to_value(self.params)?,
        }))
    }

    fn from_value(v: &Value) -> Result<Self, DescriptorError> {
        if let Some(layout) = v.get("layout") {
            let layout = layout.as_str().ok_or(DescriptorError::Field("layout"))?;
            if layout != LAYOUT_VERSION {
                return Err(DescriptorError::LayoutVersion(layout.to_string()));
            }
        }
        let text = v
            .get("formula")
            .and_then(Value::as_str)
            .ok_or(DescriptorError::Field("formula"))?;
        let params = match v.get("params") {
            Some(p) => serde_json::from_value(p.clone())?,
            None => return Err(DescriptorError::Field("params")),
        };
        Ok(BrouwerDescriptor {
            formula: parse_qdimacs(text)?,
            params,
        })
    }

    pub fn build(&self) -> Result<ConstructedBrouwer, DescriptorError> {
        Ok(build_brouwer(&self.formula, self.params)?)
    }
}

impl SpernerDescriptor {
    pub fn to_value(&self) -> Result<Value, DescriptorError> {
        Ok(json!({
            "schema": SPERNER_SCHEMA,
            "brouwer": self.brouwer.to_value()?,
        }))
    }

    pub fn build(&self) -> Result<ReducedSperner<ConstructedBrouwer>, DescriptorError> {
        Ok(brouwer_to_sperner(self.brouwer.build()?))
    }
}

impl Descriptor {
    pub fn parse(text: &str) -> Result<Self, DescriptorError> {
        let v: Value = serde_json::from_str(text)?;
        Self::from_value(&v)
    }

    fn from_value(v: &Value) -> Result<Self, DescriptorError> {
        let schema = v.get("schema").and_then(Value::as_str).ok_or(DescriptorError::Field("schema"))?;
        match schema {
            BROUWER_SCHEMA => Ok(Descriptor::Brouwer(BrouwerDescriptor::from_value(v)?)),
            SPERNER_SCHEMA => {
                let inner = v.get("brouwer").ok_or(DescriptorError::Field("brouwer"))?;
                match Self::from_value(inner)? {
                    Descriptor::Brouwer(b) => Ok(Descriptor::Sperner(SpernerDescriptor { brouwer: b })),
                    Descriptor::Sperner(_) => Err(DescriptorError::Schema(SPERNER_SCHEMA.to_string())),
                }
            }
            other => Err(DescriptorError::Schema(other.to_string())),
        }
    }

    pub fn to_json(&self) -> Result<String, DescriptorError> {
        let v = match self {
            Descriptor::Brouwer(b) => b.to_value()?,
            Descriptor::Sperner(s) => s.to_value()?,
        };
        Ok(serde_json::to_string_pretty(&v)? + "\n")
    }

    /// The underlying Brouwer descriptor, for either schema.
    pub fn brouwer(&self) -> &BrouwerDescriptor {
        match self {
            Descriptor::Brouwer(b) => b,
            Descriptor::Sperner(s) => &s.brouwer,
        }
    }

    pub fn is_sperner(&self) -> bool {
        matches!(self, Descriptor::Sperner(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbf::Quantifier;

    fn sample() -> BrouwerDescriptor {
        let f = QbfFormula::from_ints(&[Quantifier::Forall, Quantifier::Exists], &[&[1, 2], &[-1, -2]]).unwrap();
        BrouwerDescriptor::new(f, LayoutParams { lw: 30, ..Default::default() })
    }

    #[test]
    fn round_trip_both_schemas() {
        for d in [
            Descriptor::Brouwer(sample()),
            Descriptor::Sperner(SpernerDescriptor { brouwer: sample() }),
        ] {
            let text = d.to_json().unwrap();
            assert_eq!(Descriptor::parse(&text).unwrap(), d);
        }
    }

    #[test]
    fn params_use_upper_case_keys() {
        let v = sample().to_value().unwrap();
        assert_eq!(v["params"]["LW"], 30);
        assert_eq!(v["schema"], BROUWER_SCHEMA);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Descriptor::parse("{"), Err(DescriptorError::Json(_))));
        assert!(matches!(
            Descriptor::parse(r#"{"schema":"nope/v9"}"#),
            Err(DescriptorError::Schema(_))
        ));
        assert!(matches!(
            Descriptor::parse(r#"{"schema":"qbf2brouwer/v1","params":{"LW":32,"LH":32,"M":8,"G":8}}"#),
            Err(DescriptorError::Field("formula"))
        ));
        let small = r#"{"schema":"qbf2brouwer/v1","formula":"p cnf 1 1\ne 1 0\n1 0\n","params":{"LW":3,"LH":32,"M":8,"G":8}}"#;
        let d = Descriptor::parse(small).unwrap();
        assert!(matches!(d.brouwer().build(), Err(DescriptorError::Construction(_))));
    }
}
