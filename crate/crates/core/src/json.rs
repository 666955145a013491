//! JSON schemas for operators, recurrence tables, family descriptors and
//! reports. Every number is written as a canonical rational string `"p"` or
//! `"p/q"`; on input, integers are accepted as well.

use serde::Serialize;
use serde_json::Value;

use crate::diffop::DiffOperator;
use crate::eigen::families::{Case1Params, Case2Params, Family};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::report::{Record, Status, VerificationReport};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::seq::{DualMoments, MonicSequence, RecurrenceTable};

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

/// A rational from a JSON integer or a `"p/q"` string. Floats are rejected.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(invalid),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            parse_rational(&n.to_string()).map_err(invalid)
        }
        other => Err(invalid(format!(
            "expected an integer or a rational string, found {other}"
        ))),
    }
}

/// Ascending coefficients; the zero polynomial is `[]`.
pub fn poly_to_json(p: &Poly<Rational>) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

pub fn poly_from_json(v: &Value) -> Result<Poly<Rational>> {
    let items = v
        .as_array()
        .ok_or_else(|| invalid("a polynomial is an array of coefficients"))?;
    let coeffs = items
        .iter()
        .map(rational_from_json)
        .collect::<Result<_>>()?;
    Ok(Poly::from_coeffs(coeffs))
}

/// `{"a": [a_0, a_1, ...]}` with each `a_ν` a coefficient array.
pub fn operator_from_json(v: &Value) -> Result<DiffOperator<Rational>> {
    let a = v
        .get("a")
        .ok_or_else(|| invalid("operator object needs an \"a\" array"))?
        .as_array()
        .ok_or_else(|| invalid("\"a\" must be an array of polynomials"))?;
    let coeffs = a.iter().map(poly_from_json).collect::<Result<Vec<_>>>()?;
    DiffOperator::new(coeffs)
}

#[derive(Serialize)]
pub struct OperatorJson {
    pub a: Vec<Vec<String>>,
}

pub fn operator_to_json(op: &DiffOperator<Rational>) -> OperatorJson {
    OperatorJson {
        a: op.coeffs().iter().map(poly_to_json).collect(),
    }
}

fn rational_array(v: &Value, key: &str) -> Result<Vec<Rational>> {
    v.get(key)
        .ok_or_else(|| invalid(format!("table needs \"{key}\"")))?
        .as_array()
        .ok_or_else(|| invalid(format!("\"{key}\" must be an array")))?
        .iter()
        .map(rational_from_json)
        .collect()
}

/// `{"d": 2, "beta": [β_0..], "alpha": [α_1..], "gamma": [γ_1..]}` or, for any d,
/// `{"d": d, "beta": [...], "gammas": [[γ^0_1..], ..., [γ^{d−1}_1..]]}`.
pub fn table_from_json(v: &Value) -> Result<RecurrenceTable<Rational>> {
    let d = v
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| invalid("table needs a positive integer \"d\""))? as usize;
    let beta = rational_array(v, "beta")?;
    if let Some(gs) = v.get("gammas") {
        let arrays = gs
            .as_array()
            .ok_or_else(|| invalid("\"gammas\" must be an array of arrays"))?
            .iter()
            .map(|g| {
                g.as_array()
                    .ok_or_else(|| invalid("each gamma array must be an array"))?
                    .iter()
                    .map(rational_from_json)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        return RecurrenceTable::new(d, beta, arrays);
    }
    if d != 2 {
        return Err(invalid("tables with d != 2 must use \"gammas\""));
    }
    Ok(RecurrenceTable::two_orthogonal(
        beta,
        rational_array(v, "alpha")?,
        rational_array(v, "gamma")?,
    ))
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum TableJson {
    TwoOrthogonal {
        d: usize,
        beta: Vec<String>,
        alpha: Vec<String>,
        gamma: Vec<String>,
    },
    General {
        d: usize,
        beta: Vec<String>,
        gammas: Vec<Vec<String>>,
    },
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

pub fn table_to_json(rt: &RecurrenceTable<Rational>) -> TableJson {
    if rt.d() == 2 {
        TableJson::TwoOrthogonal {
            d: 2,
            beta: strings(rt.betas()),
            alpha: strings(rt.gamma_array(1)),
            gamma: strings(rt.gamma_array(0)),
        }
    } else {
        TableJson::General {
            d: rt.d(),
            beta: strings(rt.betas()),
            gammas: (0..rt.d()).map(|i| strings(rt.gamma_array(i))).collect(),
        }
    }
}

pub fn sequence_to_json(seq: &MonicSequence<Rational>) -> Vec<Vec<String>> {
    seq.polys().iter().map(poly_to_json).collect()
}

#[derive(Serialize)]
pub struct MomentsJson {
    pub d: usize,
    /// `moments[i][n] = (u_i)_n`.
    pub moments: Vec<Vec<String>>,
}

pub fn moments_to_json(m: &DualMoments<Rational>) -> MomentsJson {
    MomentsJson {
        d: m.d,
        moments: m.moments.iter().map(|row| strings(row)).collect(),
    }
}

/// A parsed family descriptor.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyDescriptor {
    pub family: Family<Rational>,
    pub n: Option<usize>,
}

const CASE1_KEYS: [&str; 5] = ["a00", "a01", "a11", "a02", "a03"];
const CASE2_KEYS: [&str; 6] = ["a00", "a01", "a11", "a03", "a13", "a23"];

/// Positional array or keyed object, in the order of `keys`.
fn params_list(params: Option<&Value>, keys: &[&str]) -> Result<Vec<Rational>> {
    match params {
        Some(Value::Array(items)) => {
            if items.len() != keys.len() {
                return Err(invalid(format!(
                    "expected {} parameters ({}), got {}",
                    keys.len(),
                    keys.join(", "),
                    items.len()
                )));
            }
            items.iter().map(rational_from_json).collect()
        }
        Some(Value::Object(map)) => {
            if let Some(unknown) = map.keys().find(|k| !keys.contains(&k.as_str())) {
                return Err(invalid(format!("unknown parameter \"{unknown}\"")));
            }
            keys.iter()
                .map(|k| {
                    map.get(*k)
                        .ok_or_else(|| invalid(format!("missing parameter \"{k}\"")))
                        .and_then(rational_from_json)
                })
                .collect()
        }
        Some(_) => Err(invalid("\"params\" must be an array or an object")),
        None => Err(invalid(format!("parameters required: {}", keys.join(", ")))),
    }
}

/// Builds a family from its name and parameters. The corollary family takes
/// only `a00`, defaulting to 1.
pub fn family_from_params(name: &str, params: Option<&Value>) -> Result<Family<Rational>> {
    match name {
        "case1" => {
            let p = params_list(params, &CASE1_KEYS)?;
            let [a00, a01, a11, a02, a03]: [Rational; 5] = p.try_into().expect("length checked");
            Ok(Family::Case1(Case1Params::new(a00, a01, a11, a02, a03)?))
        }
        "case2" => {
            let p = params_list(params, &CASE2_KEYS)?;
            let [a00, a01, a11, a03, a13, a23]: [Rational; 6] =
                p.try_into().expect("length checked");
            Ok(Family::Case2(Case2Params::new(
                a00, a01, a11, a03, a13, a23,
            )?))
        }
        "corollary42" => {
            let a00 = match params {
                None | Some(Value::Null) => Rational::from_integer(1.into()),
                Some(p) => params_list(Some(p), &["a00"])?.remove(0),
            };
            Ok(Family::Corollary42 { a00 })
        }
        other => Err(invalid(format!(
            "unknown family \"{other}\" (expected case1, case2 or corollary42)"
        ))),
    }
}

/// `{"family": "case1"|"case2"|"corollary42", "params": [...] | {...}, "N": n}`.
pub fn descriptor_from_json(v: &Value) -> Result<FamilyDescriptor> {
    let name = v
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| invalid("descriptor needs a \"family\" string"))?;
    let family = family_from_params(name, v.get("params"))?;
    let n = match v.get("N") {
        None => None,
        Some(n) => Some(
            n.as_u64()
                .ok_or_else(|| invalid("\"N\" must be a nonnegative integer"))?
                as usize,
        ),
    };
    Ok(FamilyDescriptor { family, n })
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Serialize)]
pub struct RecordJson {
    pub identity: String,
    pub n: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<usize>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
    pub records: Vec<RecordJson>,
    pub notes: Vec<String>,
}

pub fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
    }
}

pub fn record_to_json(r: &Record<Rational>) -> RecordJson {
    RecordJson {
        identity: r.identity.clone(),
        n: r.n,
        m: r.m,
        nu: r.nu,
        status: status_str(r.status),
        detail: r.detail.clone(),
        witness: r.witness.as_ref().map(|w| WitnessJson {
            lhs: poly_to_json(&w.lhs),
            rhs: poly_to_json(&w.rhs),
        }),
    }
}

pub fn report_to_json(report: &VerificationReport<Rational>) -> ReportJson {
    ReportJson {
        passed: report.passed(),
        checks: report.records.len(),
        failures: report.failures().count(),
        records: report.records.iter().map(record_to_json).collect(),
        notes: report.notes.clone(),
    }
}
