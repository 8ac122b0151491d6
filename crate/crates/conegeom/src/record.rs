//! Machine-readable computation records (one JSON object per line on the
//! CLI's stdout).

use crate::divergence::ExtendedValue;
use serde::{Deserialize, Serialize};

/// One computed quantity. `value` serializes ±∞ as the strings
/// `"+inf"` / `"-inf"` so the record stream stays valid JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComputationRecord {
    pub command: String,
    pub body_digest: String,
    pub parameters: serde_json::Map<String, serde_json::Value>,
    pub value: RecordValue,
    pub err_estimate: f64,
    pub classification: String,
    /// present only when timings are requested; excluded from the
    /// byte-identity contract of the record stream
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RecordValue {
    Finite(f64),
    PlusInf,
    MinusInf,
}

impl RecordValue {
    pub fn from_f64(v: f64) -> Self {
        if v == f64::INFINITY {
            RecordValue::PlusInf
        } else if v == f64::NEG_INFINITY {
            RecordValue::MinusInf
        } else {
            RecordValue::Finite(v)
        }
    }
    pub fn as_f64(&self) -> f64 {
        match self {
            RecordValue::Finite(v) => *v,
            RecordValue::PlusInf => f64::INFINITY,
            RecordValue::MinusInf => f64::NEG_INFINITY,
        }
    }
}

impl Serialize for RecordValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RecordValue::Finite(v) => s.serialize_f64(*v),
            RecordValue::PlusInf => s.serialize_str("+inf"),
            RecordValue::MinusInf => s.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for RecordValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::Number(n) => Ok(RecordValue::Finite(n.as_f64().unwrap())),
            serde_json::Value::String(s) if s == "+inf" => Ok(RecordValue::PlusInf),
            serde_json::Value::String(s) if s == "-inf" => Ok(RecordValue::MinusInf),
            other => Err(serde::de::Error::custom(format!(
                "invalid record value {other}"
            ))),
        }
    }
}

impl ComputationRecord {
    pub fn new(
        command: &str,
        body_digest: &str,
        parameters: serde_json::Map<String, serde_json::Value>,
        value: &ExtendedValue,
        err_estimate: f64,
    ) -> Self {
        let classification = if value.value.is_finite() {
            format!("finite:{}", value.reason.as_str())
        } else if value.value == f64::INFINITY {
            format!("plus_infinity:{}", value.reason.as_str())
        } else {
            format!("minus_infinity:{}", value.reason.as_str())
        };
        ComputationRecord {
            command: command.to_string(),
            body_digest: body_digest.to_string(),
            parameters,
            value: RecordValue::from_f64(value.value),
            err_estimate,
            classification,
            wall_time: None,
        }
    }
}
