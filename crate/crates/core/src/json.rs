//! JSON interchange for lattices and embeddings.
//!
//! Integers are written as JSON numbers when they fit in the 53-bit safe
//! range and as decimal strings otherwise; readers accept both.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Embedding, GramLattice};
use crate::linalg::IntMatrix;

const SAFE_MAX: i64 = (1 << 53) - 1;

/// A JSON integer of unbounded size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) if x.abs() <= SAFE_MAX => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct JsonIntVisitor;

impl Visitor<'_> for JsonIntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<JsonInt, E> {
        if v.fract() == 0.0 && v.abs() <= SAFE_MAX as f64 {
            Ok(JsonInt((v as i64).into()))
        } else {
            Err(E::custom(format!("{v} is not an exact integer")))
        }
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
        v.trim()
            .parse::<BigInt>()
            .map(JsonInt)
            .map_err(|_| E::custom(format!("'{v}' is not a decimal integer")))
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(JsonIntVisitor)
    }
}

impl From<&BigInt> for JsonInt {
    fn from(x: &BigInt) -> Self {
        JsonInt(x.clone())
    }
}

pub fn matrix_to_json(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(JsonInt::from).collect())
        .collect()
}

pub fn matrix_from_json(rows: &[Vec<JsonInt>], cols: Option<usize>) -> Result<IntMatrix> {
    let cols = cols.or_else(|| rows.first().map(|r| r.len())).unwrap_or(0);
    IntMatrix::from_rows(
        rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect(),
        cols,
    )
}

/// `{ "label": string, "gram": [[int]] }`, optionally with `"basis"` for
/// an embedding into the lattice described by `gram`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LatticeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub gram: Vec<Vec<JsonInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<JsonInt>>>,
}

impl LatticeJson {
    pub fn from_lattice(l: &GramLattice) -> Self {
        LatticeJson {
            label: l.label().map(str::to_owned),
            gram: matrix_to_json(l.gram()),
            basis: None,
        }
    }

    pub fn from_embedding(e: &Embedding) -> Self {
        LatticeJson {
            basis: Some(matrix_to_json(e.basis())),
            ..Self::from_lattice(e.ambient())
        }
    }

    pub fn to_lattice(&self) -> Result<GramLattice> {
        let gram = matrix_from_json(&self.gram, None)?;
        let l = GramLattice::new(gram)?;
        Ok(match &self.label {
            Some(s) => l.with_label(s),
            None => l,
        })
    }

    pub fn to_embedding(&self) -> Result<Embedding> {
        let ambient = self.to_lattice()?;
        let rows = self
            .basis
            .as_ref()
            .ok_or_else(|| Error::Parse("embedding JSON needs a \"basis\" field".into()))?;
        let basis = matrix_from_json(rows, Some(ambient.rank()))?;
        Embedding::new(ambient, basis)
    }
}

pub fn parse_lattice(text: &str) -> Result<GramLattice> {
    let j: LatticeJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_lattice()
}

pub fn parse_embedding(text: &str) -> Result<Embedding> {
    let j: LatticeJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_embedding()
}

pub fn lattice_to_string(l: &GramLattice) -> String {
    serde_json::to_string(&LatticeJson::from_lattice(l)).expect("lattice JSON serializes")
}
