//! JSON documents for matrices and value functions. Scalars travel as
//! strings so that no value ever passes through a float.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};
use crate::triangle::{Location, Triangle};
use crate::valuefn::ValueFunction;

/// `"rational"` or `{"prime": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime { prime: u64 },
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldSpec::Named(name) if name == "rational" => Ok(Field::Rational),
            FieldSpec::Named(name) => Err(Error::Parse(format!("unknown field {name:?}"))),
            FieldSpec::Prime { prime } => Field::prime(*prime),
        }
    }
}

impl From<Field> for FieldSpec {
    fn from(field: Field) -> FieldSpec {
        match field.order() {
            None => FieldSpec::Named("rational".to_owned()),
            Some(prime) => FieldSpec::Prime { prime },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub d: i64,
    pub field: FieldSpec,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueEntry {
    pub loc: Location,
    pub value: String,
}

/// An empty `values` list is allowed only for a negative `d`, which stands
/// for the empty triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueFunctionDocument {
    pub d: i64,
    pub field: FieldSpec,
    pub values: Vec<ValueEntry>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn compact<T: Serialize + ?Sized>(x: &T) -> String {
    serde_json::to_string(x).expect("documents always serialize")
}

/// Pretty-printed with one matrix row or one value entry per line.
fn to_json(d: i64, field: &FieldSpec, key: &str, items: Vec<String>) -> String {
    let body = if items.is_empty() {
        "[]".to_owned()
    } else {
        format!("[\n    {}\n  ]", items.join(",\n    "))
    };
    format!(
        "{{\n  \"d\": {d},\n  \"field\": {},\n  {}: {body}\n}}\n",
        compact(field),
        compact(key)
    )
}

fn parse_in(field: Field, text: &str) -> Result<Scalar> {
    field.parse_scalar(text).map_err(|e| match e {
        Error::Parse(_) => e,
        other => Error::Parse(format!("{text:?}: {other}")),
    })
}

impl MatrixDocument {
    pub fn from_matrix(t: &Matrix) -> MatrixDocument {
        MatrixDocument {
            d: t.rows() as i64 - 1,
            field: t.field().into(),
            entries: t
                .row_vectors()
                .iter()
                .map(|row| row.iter().map(Scalar::to_string).collect())
                .collect(),
        }
    }

    /// The square matrix, with `d` checked against the shape. Lower entries
    /// are not inspected here.
    pub fn to_matrix(&self) -> Result<Matrix> {
        let field = self.field.to_field()?;
        let n = self.entries.len();
        if n == 0 || self.d != n as i64 - 1 {
            return Err(Error::Parse(format!("declared d = {} but {} rows", self.d, n)));
        }
        let rows = self
            .entries
            .iter()
            .map(|row| {
                if row.len() != n {
                    return Err(Error::Parse(format!("row of length {} in a {n}×{n} matrix", row.len())));
                }
                row.iter().map(|x| parse_in(field, x)).collect()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, rows)
    }

    pub fn parse(text: &str) -> Result<MatrixDocument> {
        parse_json(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self.d, &self.field, "entries", self.entries.iter().map(compact).collect())
    }
}

impl ValueFunctionDocument {
    /// Values in canonical order.
    pub fn from_value_function(f: &ValueFunction) -> ValueFunctionDocument {
        ValueFunctionDocument {
            d: f.diameter() as i64,
            field: f.field().into(),
            values: f
                .iter()
                .map(|(loc, v)| ValueEntry {
                    loc,
                    value: v.to_string(),
                })
                .collect(),
        }
    }

    /// The document standing for a function on an empty triangle.
    pub fn empty(d: i64, field: Field) -> ValueFunctionDocument {
        ValueFunctionDocument {
            d,
            field: field.into(),
            values: Vec::new(),
        }
    }

    /// Entries may come in any order but must cover Δ_d exactly once.
    pub fn to_value_function(&self) -> Result<ValueFunction> {
        let field = self.field.to_field()?;
        if self.d < 0 {
            return Err(Error::Parse(format!("no value function on a triangle of diameter {}", self.d)));
        }
        let tri = Triangle::new(self.d as usize);
        let mut by_loc: HashMap<Location, &str> = HashMap::new();
        for e in &self.values {
            if !tri.contains(e.loc) {
                return Err(Error::Parse(format!("location {} is not in the triangle of diameter {}", e.loc, self.d)));
            }
            if by_loc.insert(e.loc, &e.value).is_some() {
                return Err(Error::Parse(format!("location {} given twice", e.loc)));
            }
        }
        let values = tri
            .locations()
            .map(|l| match by_loc.get(&l) {
                Some(text) => parse_in(field, text),
                None => Err(Error::Parse(format!("location {l} missing"))),
            })
            .collect::<Result<Vec<_>>>()?;
        ValueFunction::new(self.d as usize, field, values)
    }

    pub fn parse(text: &str) -> Result<ValueFunctionDocument> {
        parse_json(text)
    }

    pub fn to_json(&self) -> String {
        to_json(self.d, &self.field, "values", self.values.iter().map(compact).collect())
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    MatrixDocument::parse(text)?.to_matrix()
}

pub fn print_matrix(t: &Matrix) -> String {
    MatrixDocument::from_matrix(t).to_json()
}

pub fn parse_value_function(text: &str) -> Result<ValueFunction> {
    ValueFunctionDocument::parse(text)?.to_value_function()
}

pub fn print_value_function(f: &ValueFunction) -> String {
    ValueFunctionDocument::from_value_function(f).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let q = Field::Rational;
        let t = Matrix::from_rows(
            q,
            vec![
                vec![q.one(), q.ratio(-3, 4).unwrap()],
                vec![q.zero(), q.from_i64(12345678901)],
            ],
        )
        .unwrap();
        let text = print_matrix(&t);
        assert!(text.contains("\"-3/4\""));
        assert!(text.contains("\"rational\""));
        assert_eq!(parse_matrix(&text).unwrap(), t);

        let f = Field::prime(101).unwrap();
        let u = Matrix::from_i64(f, &[&[1, 100], &[0, 50]]).unwrap();
        let text = print_matrix(&u);
        assert!(text.contains("{\"prime\":101}"));
        assert_eq!(parse_matrix(&text).unwrap(), u);
    }

    #[test]
    fn matrix_shape_errors() {
        let bad_d = r#"{"d": 2, "field": "rational", "entries": [["1","1"],["0","1"]]}"#;
        assert!(matches!(parse_matrix(bad_d), Err(Error::Parse(_))));
        let ragged = r#"{"d": 1, "field": "rational", "entries": [["1","1"],["0"]]}"#;
        assert!(matches!(parse_matrix(ragged), Err(Error::Parse(_))));
        let bad_field = r#"{"d": 0, "field": "real", "entries": [["1"]]}"#;
        assert!(matches!(parse_matrix(bad_field), Err(Error::Parse(_))));
        let bad_scalar = r#"{"d": 0, "field": "rational", "entries": [["x"]]}"#;
        assert!(matches!(parse_matrix(bad_scalar), Err(Error::Parse(_))));
        let zero_den = r#"{"d": 0, "field": "rational", "entries": [["1/0"]]}"#;
        assert!(matches!(parse_matrix(zero_den), Err(Error::Parse(_))));
        assert!(matches!(parse_matrix("{"), Err(Error::Parse(_))));
        let composite = r#"{"d": 0, "field": {"prime": 12}, "entries": [["1"]]}"#;
        assert_eq!(parse_matrix(composite), Err(Error::InvalidModulus(12)));
    }

    #[test]
    fn value_function_any_order_in_canonical_out() {
        let text = r#"{"d": 1, "field": {"prime": 7}, "values": [
            {"loc": [0,0,1], "value": "3"},
            {"loc": [1,0,0], "value": "1"},
            {"loc": [0,1,0], "value": "2"}]}"#;
        let f = parse_value_function(text).unwrap();
        let out = ValueFunctionDocument::from_value_function(&f);
        let locs: Vec<Location> = out.values.iter().map(|e| e.loc).collect();
        assert_eq!(locs, vec![Location::new(1, 0, 0), Location::new(0, 1, 0), Location::new(0, 0, 1)]);
        assert_eq!(parse_value_function(&out.to_json()).unwrap(), f);
    }

    #[test]
    fn value_function_coverage_errors() {
        let missing = r#"{"d": 1, "field": "rational", "values": [
            {"loc": [1,0,0], "value": "1"}, {"loc": [0,1,0], "value": "1"}]}"#;
        assert!(matches!(parse_value_function(missing), Err(Error::Parse(_))));
        let twice = r#"{"d": 0, "field": "rational", "values": [
            {"loc": [0,0,0], "value": "1"}, {"loc": [0,0,0], "value": "1"}]}"#;
        assert!(matches!(parse_value_function(twice), Err(Error::Parse(_))));
        let outside = r#"{"d": 0, "field": "rational", "values": [{"loc": [1,0,0], "value": "1"}]}"#;
        assert!(matches!(parse_value_function(outside), Err(Error::Parse(_))));
        let zero = r#"{"d": 0, "field": "rational", "values": [{"loc": [0,0,0], "value": "0"}]}"#;
        assert_eq!(parse_value_function(zero), Err(Error::ZeroValue(Location::new(0, 0, 0))));
    }

    #[test]
    fn empty_document_serializes() {
        let text = ValueFunctionDocument::empty(-1, Field::Rational).to_json();
        let doc = ValueFunctionDocument::parse(&text).unwrap();
        assert_eq!(doc.d, -1);
        assert!(doc.values.is_empty());
        assert!(doc.to_value_function().is_err());
    }
}
