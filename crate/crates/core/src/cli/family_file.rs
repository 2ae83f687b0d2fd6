//! JSON family definition files.

use serde::{Deserialize, Serialize};

use crate::exactalg::Vars;
use crate::families::{FamilySpec, MovingPoint};
use crate::{Error, Result};

use super::parser::{is_identifier, parse_poly, render_poly};

/// On-disk form of a family: `{"N", "k", "params", "points", "label"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    #[serde(rename = "N")]
    pub ambient: usize,
    pub k: usize,
    pub params: Vec<String>,
    pub points: Vec<Vec<String>>,
    #[serde(default)]
    pub label: String,
}

impl FamilyFile {
    pub fn from_spec(spec: &FamilySpec) -> Self {
        FamilyFile {
            ambient: spec.ambient(),
            k: spec.k(),
            params: spec.params().names().to_vec(),
            points: spec
                .span()
                .iter()
                .map(|p| p.coords().iter().map(render_poly).collect())
                .collect(),
            label: spec.label().to_string(),
        }
    }

    pub fn to_spec(&self) -> Result<FamilySpec> {
        for (i, name) in self.params.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::input(format!("parameter name {name:?} is not an identifier")));
            }
            if self.params[..i].contains(name) {
                return Err(Error::input(format!("parameter `{name}` is declared twice")));
            }
        }
        if self.points.len() != self.k + 1 {
            return Err(Error::Shape {
                expected: format!("{} spanning points for k = {}", self.k + 1, self.k),
                found: format!("{} points", self.points.len()),
            });
        }
        let vars = Vars::new(&self.params);
        let mut span = Vec::with_capacity(self.points.len());
        for (a, point) in self.points.iter().enumerate() {
            if point.len() != self.ambient + 1 {
                return Err(Error::Shape {
                    expected: format!("{} coordinates for N = {}", self.ambient + 1, self.ambient),
                    found: format!("{} coordinates in point {a}", point.len()),
                });
            }
            let coords = point
                .iter()
                .enumerate()
                .map(|(i, text)| parse_poly(text, &vars).map_err(|e| locate(e, a, i)))
                .collect::<Result<Vec<_>>>()?;
            span.push(MovingPoint::new(coords)?);
        }
        FamilySpec::new(self.ambient, self.k, vars, span, self.label.clone())
    }
}

/// Prefixes an expression error with the coordinate it came from.
fn locate(e: Error, point: usize, coord: usize) -> Error {
    match e {
        Error::Syntax { line, column, message } => Error::Syntax {
            line,
            column,
            message: format!("in points[{point}][{coord}]: {message}"),
        },
        other => other,
    }
}

/// Parses and validates a family file.
pub fn parse_family_file(text: &str) -> Result<FamilySpec> {
    let file: FamilyFile = serde_json::from_str(text).map_err(|e| match e.classify() {
        serde_json::error::Category::Syntax | serde_json::error::Category::Eof => Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: format!("malformed JSON: {e}"),
        },
        _ => Error::input(format!("family file: {e}")),
    })?;
    file.to_spec()
}

/// Renders a family as a family file.
pub fn serialize_family(spec: &FamilySpec) -> String {
    serde_json::to_string_pretty(&FamilyFile::from_spec(spec)).expect("family files serialize")
}
