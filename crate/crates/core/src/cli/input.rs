//! Input documents: pair records for `classify`/`canon`, comparisons for
//! `equiv`. The formal schemas live in the repository's `schema/` directory.

use std::collections::HashSet;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::oracle::{ratio, ExactMatrix};
use crate::sl2::Mat2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Rational,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Float => "float",
            Mode::Rational => "rational",
        }
    }
}

/// One matrix entry: a number, or an integer `[numerator, denominator]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Ratio([i64; 2]),
    Number(f64),
}

pub type RawMatrix = [[Entry; 2]; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRecord {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(rename = "U1")]
    pub u1: RawMatrix,
    #[serde(rename = "U2")]
    pub u2: RawMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub records: Vec<PairRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSide {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(rename = "U1")]
    pub u1: RawMatrix,
    #[serde(rename = "U2")]
    pub u2: RawMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Comparison {
    pub id: String,
    pub left: PairSide,
    pub right: PairSide,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivDocument {
    pub comparisons: Vec<Comparison>,
}

/// Matrices of one record after parsing, in the record's arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub enum PairInput {
    Float(Mat2, Mat2),
    Rational(ExactMatrix, ExactMatrix),
}

impl PairInput {
    pub fn mode(&self) -> Mode {
        match self {
            PairInput::Float(..) => Mode::Float,
            PairInput::Rational(..) => Mode::Rational,
        }
    }
}

fn float_entry(e: Entry) -> Option<f64> {
    match e {
        Entry::Number(x) => Some(x),
        Entry::Ratio([n, d]) => (d != 0).then(|| n as f64 / d as f64),
    }
}

const MAX_EXACT_INTEGER: f64 = 9_007_199_254_740_992.0;

fn rational_entry(e: Entry) -> Option<num_rational::BigRational> {
    match e {
        Entry::Ratio([n, d]) => ratio(n, d),
        Entry::Number(x) if x.fract() == 0.0 && x.abs() <= MAX_EXACT_INTEGER => ratio(x as i64, 1),
        Entry::Number(_) => None,
    }
}

fn convert(u: &RawMatrix, mode: Mode, context: &str, which: &str) -> Result<PairInputPart, CliError> {
    let flat = [u[0][0], u[0][1], u[1][0], u[1][1]];
    let bad = |what: &str| CliError::Parse(format!("{context}: {which}: {what}"));
    match mode {
        Mode::Float => {
            let v = flat
                .iter()
                .map(|&e| float_entry(e))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| bad("zero denominator"))?;
            Ok(PairInputPart::Float(Mat2::new(v[0], v[1], v[2], v[3])))
        }
        Mode::Rational => {
            let v = flat
                .iter()
                .map(|&e| rational_entry(e))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| bad("rational mode needs integer or [numerator, denominator] entries"))?;
            let [a, b, c, d]: [_; 4] = v.try_into().expect("four entries");
            Ok(PairInputPart::Rational(ExactMatrix::new(a, b, c, d)))
        }
    }
}

enum PairInputPart {
    Float(Mat2),
    Rational(ExactMatrix),
}

/// Converts raw matrices under `mode`; `context` names the record in errors.
pub fn pair_input(u1: &RawMatrix, u2: &RawMatrix, mode: Mode, context: &str) -> Result<PairInput, CliError> {
    match (convert(u1, mode, context, "U1")?, convert(u2, mode, context, "U2")?) {
        (PairInputPart::Float(a), PairInputPart::Float(b)) => Ok(PairInput::Float(a, b)),
        (PairInputPart::Rational(a), PairInputPart::Rational(b)) => Ok(PairInput::Rational(a, b)),
        _ => unreachable!("both matrices use the same mode"),
    }
}

fn check_unique<'a>(ids: impl Iterator<Item = &'a str>) -> Result<(), CliError> {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(CliError::Parse(format!("duplicate id {id:?}")));
        }
    }
    Ok(())
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{origin}: {e}")))
}

/// Parses a pair document; records without a `mode` use `default_mode`.
pub fn parse_pairs(text: &str, origin: &str, default_mode: Mode) -> Result<Vec<(String, PairInput)>, CliError> {
    let doc: PairDocument = parse_json(text, origin)?;
    check_unique(doc.records.iter().map(|r| r.id.as_str()))?;
    doc.records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let context = format!("{origin}: record {i} ({:?})", r.id);
            let input = pair_input(&r.u1, &r.u2, r.mode.unwrap_or(default_mode), &context)?;
            Ok((r.id.clone(), input))
        })
        .collect()
}

/// Parses a comparison document.
pub fn parse_comparisons(
    text: &str,
    origin: &str,
    default_mode: Mode,
) -> Result<Vec<(String, PairInput, PairInput)>, CliError> {
    let doc: EquivDocument = parse_json(text, origin)?;
    check_unique(doc.comparisons.iter().map(|c| c.id.as_str()))?;
    doc.comparisons
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let side = |s: &PairSide, name: &str| {
                let context = format!("{origin}: comparison {i} ({:?}) {name}", c.id);
                pair_input(&s.u1, &s.u2, s.mode.unwrap_or(default_mode), &context)
            };
            Ok((c.id.clone(), side(&c.left, "left")?, side(&c.right, "right")?))
        })
        .collect()
}

pub fn float_matrix(m: &Mat2) -> RawMatrix {
    [
        [Entry::Number(m.a), Entry::Number(m.b)],
        [Entry::Number(m.c), Entry::Number(m.d)],
    ]
}
