//! JSON body descriptors.
//!
//! ```json
//! {"kind": "ball",         "params": {"dim": 2, "radius": 1.0}}
//! {"kind": "ellipsoid",    "params": {"matrix": [[2, 0], [0, 1]]}}
//! {"kind": "lr_ball",      "params": {"dim": 2, "r": 3.0}}
//! {"kind": "polytope",     "params": {"vertices": [[1,1],[-1,1],[-1,-1],[1,-1]]}}
//! {"kind": "polar",        "body": { ... }}
//! {"kind": "linear_image", "params": {"matrix": [[...]]}, "body": { ... }}
//! ```
//!
//! Matrices are row-major lists of lists.

use super::Body;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BodyDescriptor {
    pub kind: String,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub params: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body: Option<Box<BodyDescriptor>>,
}

fn field<'a>(params: &'a serde_json::Value, name: &str) -> Result<&'a serde_json::Value> {
    params
        .get(name)
        .ok_or_else(|| Error::Descriptor(format!("missing params.{name}")))
}

fn number(v: &serde_json::Value, name: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Descriptor(format!("{name} must be a number")))
}

fn matrix(v: &serde_json::Value) -> Result<Vec<Vec<f64>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Descriptor("matrix must be a list of rows".into()))?;
    rows.iter()
        .map(|row| {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Descriptor("matrix row must be a list".into()))?;
            row.iter().map(|x| number(x, "matrix entry")).collect()
        })
        .collect()
}

/// Construct a body from a parsed descriptor.
pub fn parse_body(desc: &BodyDescriptor) -> Result<Body> {
    match desc.kind.as_str() {
        "ball" => {
            let dim = number(field(&desc.params, "dim")?, "dim")? as usize;
            let radius = number(field(&desc.params, "radius")?, "radius")?;
            Body::ball(dim, radius)
        }
        "ellipsoid" => {
            let m = matrix(field(&desc.params, "matrix")?)?;
            Body::ellipsoid(&m)
        }
        "lr_ball" => {
            let dim = number(field(&desc.params, "dim")?, "dim")? as usize;
            let r = number(field(&desc.params, "r")?, "r")?;
            Body::lr_ball(dim, r)
        }
        "polytope" => {
            let verts = matrix(field(&desc.params, "vertices")?)?;
            let verts2 = verts
                .iter()
                .map(|v| {
                    if v.len() != 2 {
                        Err(Error::Descriptor(
                            "polytope vertices must be 2-D (polytopes are planar here)".into(),
                        ))
                    } else {
                        Ok([v[0], v[1]])
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Body::polytope(verts2)
        }
        "polar" => {
            let inner = desc
                .body
                .as_ref()
                .ok_or_else(|| Error::Descriptor("polar descriptor needs a nested body".into()))?;
            parse_body(inner)?.polar()
        }
        "linear_image" => {
            let inner = desc.body.as_ref().ok_or_else(|| {
                Error::Descriptor("linear_image descriptor needs a nested body".into())
            })?;
            let m = matrix(field(&desc.params, "matrix")?)?;
            parse_body(inner)?.linear_image(&m)
        }
        other => Err(Error::Descriptor(format!("unknown body kind '{other}'"))),
    }
}

/// Parse a body from descriptor JSON text.
pub fn body_from_json(text: &str) -> Result<Body> {
    let desc: BodyDescriptor =
        serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))?;
    parse_body(&desc)
}
