//! JSON records shared by the library and the CLI.
//!
//! Forms: `{"field": "Q" | {"Fp": p}, "diag": ["-3/5", ...]}`.
//! Pfister forms: `{"fold": 3, "sign": "+", "slots": ["a", "b", "c"]}`.
//! Field elements are always strings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{BaseField, FieldElem, Fp, Rational, Sign};
use crate::forms::DiagonalForm;
use crate::pfister::PfisterSlots;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl FieldSpec {
    pub fn base_field(self) -> Result<BaseField> {
        match self {
            FieldSpec::Q => Ok(BaseField::Rationals),
            FieldSpec::Fp(p) => BaseField::prime(p).map_err(|e| Error::parse("field", e.to_string())),
        }
    }
}

impl From<BaseField> for FieldSpec {
    fn from(f: BaseField) -> Self {
        match f {
            BaseField::Rationals => FieldSpec::Q,
            BaseField::PrimeField(p) => FieldSpec::Fp(p),
        }
    }
}

/// Command-line syntax: `Q` or `Fp:<p>`.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Q);
        }
        let p = s
            .strip_prefix("Fp:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::parse("field", format!("{s:?}: expected Q or Fp:<p>")))?;
        let spec = FieldSpec::Fp(p);
        spec.base_field()?;
        Ok(spec)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => f.write_str("Q"),
            FieldSpec::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormRecord {
    pub field: FieldSpec,
    pub diag: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PfisterRecord {
    pub fold: usize,
    pub sign: String,
    pub slots: Vec<String>,
}

fn parse_elems<K: FieldElem>(field: &BaseField, what: &str, items: &[String]) -> Result<Vec<K>> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let x = K::parse(field, s).map_err(|e| Error::parse(format!("{what}[{i}]"), e.to_string()))?;
            if x.is_zero_elem() {
                return Err(Error::parse(format!("{what}[{i}]"), "zero coefficient"));
            }
            Ok(x)
        })
        .collect()
}

pub fn form_to_record<K: FieldElem>(q: &DiagonalForm<K>) -> FormRecord {
    FormRecord { field: q.field().into(), diag: q.coeffs().iter().map(|a| a.to_string()).collect() }
}

pub fn form_from_record<K: FieldElem>(rec: &FormRecord) -> Result<DiagonalForm<K>> {
    let field = rec.field.base_field()?;
    DiagonalForm::new(field, parse_elems(&field, "diag", &rec.diag)?)
}

pub fn pfister_to_record<K: FieldElem>(p: &PfisterSlots<K>) -> PfisterRecord {
    PfisterRecord {
        fold: p.fold(),
        sign: p.sign().to_string(),
        slots: p.slots().iter().map(|a| a.to_string()).collect(),
    }
}

pub fn pfister_from_record<K: FieldElem>(field: &BaseField, rec: &PfisterRecord) -> Result<PfisterSlots<K>> {
    let sign = match rec.sign.as_str() {
        "+" => Sign::Plus,
        "-" => Sign::Minus,
        s => return Err(Error::parse("sign", format!("{s:?}: expected \"+\" or \"-\""))),
    };
    if rec.fold != rec.slots.len() {
        return Err(Error::parse("fold", format!("fold {} but {} slots", rec.fold, rec.slots.len())));
    }
    PfisterSlots::new(sign, parse_elems(field, "slots", &rec.slots)?)
}

/// A form over whichever field its record names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyForm {
    Q(DiagonalForm<Rational>),
    Fp(DiagonalForm<Fp>),
}

impl AnyForm {
    pub fn from_record(rec: &FormRecord) -> Result<Self> {
        Ok(match rec.field {
            FieldSpec::Q => AnyForm::Q(form_from_record(rec)?),
            FieldSpec::Fp(_) => AnyForm::Fp(form_from_record(rec)?),
        })
    }

    pub fn to_record(&self) -> FormRecord {
        match self {
            AnyForm::Q(q) => form_to_record(q),
            AnyForm::Fp(q) => form_to_record(q),
        }
    }

    pub fn field(&self) -> BaseField {
        match self {
            AnyForm::Q(q) => q.field(),
            AnyForm::Fp(q) => q.field(),
        }
    }
}

fn json_err(what: &str, e: serde_json::Error) -> Error {
    Error::parse(what, e.to_string())
}

pub fn parse_form_json(s: &str) -> Result<AnyForm> {
    let rec: FormRecord = serde_json::from_str(s).map_err(|e| json_err("form", e))?;
    AnyForm::from_record(&rec)
}

pub fn form_to_json<K: FieldElem>(q: &DiagonalForm<K>) -> String {
    serde_json::to_string(&form_to_record(q)).expect("records always serialize")
}

/// One Pfister record or a list of them.
pub fn parse_pfister_json(s: &str) -> Result<Vec<PfisterRecord>> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| json_err("pfister", e))?;
    if v.is_array() {
        serde_json::from_value(v).map_err(|e| json_err("pfister", e))
    } else {
        Ok(vec![serde_json::from_value(v).map_err(|e| json_err("pfister", e))?])
    }
}
