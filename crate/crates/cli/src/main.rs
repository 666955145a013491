//! `dortho`: batch verification of 2-orthogonal eigenfamilies.
//!
//! Exit codes: 0 when everything passes, 1 on a verification failure,
//! 2 on unreadable or invalid input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use dortho_core::json::{
    descriptor_from_json, family_from_params, moments_to_json, operator_from_json, poly_to_json,
    report_to_json, table_from_json, table_to_json, MomentsJson, ReportJson, TableJson,
};
use dortho_core::seq::required_degree;
use dortho_core::{
    check_d_orthogonality, classify_solvability, derivative_sequence, derive_recurrence,
    dual_moments, eigenpoly, format_rational, generate, structure_coeffs, verify_expansions,
    ClosedForm, Degeneracy, DiffOperatorQ, Error, FamilyQ, MonicSequenceQ, OperatorClass, Rational,
    Record, Status, ThirdOrderParams, VerificationReportQ,
};

const DEFAULT_N: usize = 15;
const DEFAULT_M: usize = 6;

#[derive(Parser)]
#[command(
    name = "dortho",
    version,
    about = "Exact verification of 2-orthogonal eigenfamilies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monic degree-n eigenpolynomial of an operator
    Eigen {
        #[arg(long, value_name = "FILE")]
        operator: PathBuf,
        #[arg(short = 'N', value_name = "INT")]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Check every identity of a family, or derive and check an operator's family
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        out: Output,
    },
    /// Classify an operator and, for order <= 3 isomorphisms, its solvability case
    Classify {
        #[arg(long, value_name = "FILE")]
        operator: PathBuf,
        #[arg(long, value_name = "INT")]
        probe_bound: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Dual moments and the d-orthogonality check
    Duals {
        #[command(flatten)]
        source: Source,
        /// Recurrence table JSON instead of a family
        #[arg(long, value_name = "FILE", conflicts_with_all = ["family", "descriptor", "operator"])]
        table: Option<PathBuf>,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Source {
    /// case1, case2 or corollary42
    #[arg(long, conflicts_with_all = ["descriptor", "operator"])]
    family: Option<String>,
    /// Family parameters as a JSON array or object
    #[arg(long, value_name = "JSON", requires = "family")]
    params: Option<String>,
    /// Family descriptor {"family", "params", "N"}
    #[arg(long, value_name = "FILE", conflicts_with = "operator")]
    descriptor: Option<PathBuf>,
    /// Operator JSON; its recurrence is derived from the eigenpolynomials
    #[arg(long, value_name = "FILE")]
    operator: Option<PathBuf>,
}

#[derive(Args)]
struct Bounds {
    /// Highest degree n checked [default: $DORTHO_PROBE_BOUND or 15]
    #[arg(short = 'N', value_name = "INT")]
    n: Option<usize>,
    /// Highest m in the pairing checks <u_nu, P_m P_n>
    #[arg(short = 'M', value_name = "INT")]
    m: Option<usize>,
    /// Caps both N and M
    #[arg(long, value_name = "INT")]
    probe_bound: Option<usize>,
}

#[derive(Args)]
struct Output {
    /// Output file [default: stdout]
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eigen { operator, n, out } => cmd_eigen(&operator, n, &out),
        Command::Verify {
            source,
            bounds,
            out,
        } => cmd_verify(&source, &bounds, &out),
        Command::Classify {
            operator,
            probe_bound,
            out,
        } => cmd_classify(&operator, probe_bound, &out),
        Command::Duals {
            source,
            table,
            bounds,
            out,
        } => cmd_duals(&source, table.as_deref(), &bounds, &out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("dortho: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("dortho: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: malformed JSON: {e}", path.display())))
}

fn read_operator(path: &Path) -> Result<DiffOperatorQ, Failure> {
    operator_from_json(&read_json(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_output<S: Serialize>(out: &Output, value: &S) -> CmdResult {
    let mut text = serde_json::to_string_pretty(value).expect("output is serializable");
    text.push('\n');
    match &out.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Resolves N and M: flag, then descriptor, then `DORTHO_PROBE_BOUND`, then
/// the defaults; `--probe-bound` caps both.
fn resolve_bounds(bounds: &Bounds, descriptor_n: Option<usize>) -> Result<(usize, usize), Failure> {
    let env_n = match std::env::var("DORTHO_PROBE_BOUND") {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
            Failure::Input(format!(
                "DORTHO_PROBE_BOUND must be a nonnegative integer, got {v:?}"
            ))
        })?),
        Err(_) => None,
    };
    let mut n = bounds.n.or(descriptor_n).or(env_n).unwrap_or(DEFAULT_N);
    let mut m = bounds.m.unwrap_or(DEFAULT_M);
    if let Some(cap) = bounds.probe_bound {
        n = n.min(cap);
        m = m.min(cap);
    }
    Ok((n, m))
}

/// Family named by `--family`/`--params` or by a descriptor file.
fn family_source(source: &Source) -> Result<Option<(FamilyQ, Option<usize>)>, Failure> {
    if let Some(name) = &source.family {
        let params = match &source.params {
            Some(text) => Some(
                serde_json::from_str::<Value>(text)
                    .map_err(|e| Failure::Input(format!("--params: malformed JSON: {e}")))?,
            ),
            None => None,
        };
        return Ok(Some((family_from_params(name, params.as_ref())?, None)));
    }
    if let Some(path) = &source.descriptor {
        let d = descriptor_from_json(&read_json(path)?)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        return Ok(Some((d.family, d.n)));
    }
    Ok(None)
}

fn summarize_failure(report: &VerificationReportQ) -> Option<String> {
    report.first_failure().map(|r| {
        let mut msg = format!(
            "{} of {} checks failed; first: {} at n = {}",
            report.failures().count(),
            report.records.len(),
            r.identity,
            r.n
        );
        if let (Some(m), Some(nu)) = (r.m, r.nu) {
            msg.push_str(&format!(", m = {m}, nu = {nu}"));
        }
        if let Some(detail) = &r.detail {
            msg.push_str(&format!(" ({detail})"));
        }
        msg
    })
}

#[derive(Serialize)]
struct EigenOut {
    n: usize,
    lambda: String,
    poly: Vec<String>,
}

fn cmd_eigen(operator: &Path, n: usize, out: &Output) -> CmdResult {
    let op = read_operator(operator)?;
    // the closed form of λ catches vanishing beyond the degrees the solver touches
    if let Ok(c) = op.classify(op.order() + 1) {
        if let ClosedForm::VanishesAt(m) = c.closed_form {
            return Err(Failure::Verification(format!(
                "operator is not an isomorphism: lambda_{m} = 0"
            )));
        }
    }
    let p = eigenpoly(&op, n).map_err(|e| match e {
        Error::EigenvalueCollision { .. } | Error::NotIsomorphism { .. } => {
            Failure::Verification(e.to_string())
        }
        e => Failure::Input(e.to_string()),
    })?;
    write_output(
        out,
        &EigenOut {
            n,
            lambda: format_rational(&op.lambda(0, n)),
            poly: poly_to_json(&p),
        },
    )
}

#[derive(Serialize)]
struct VerifyOut {
    source: String,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<TableJson>,
    report: ReportJson,
}

fn cmd_verify(source: &Source, bounds: &Bounds, out: &Output) -> CmdResult {
    if let Some((family, descriptor_n)) = family_source(source)? {
        let (n, m) = resolve_bounds(bounds, descriptor_n)?;
        let report = verify_family(&family, n, m)?;
        return finish_verify(out, family.name().to_string(), n, m, None, report);
    }
    let Some(path) = &source.operator else {
        return Err(Failure::Input(
            "verify needs --family, --descriptor or --operator".into(),
        ));
    };
    let op = read_operator(path)?;
    let (n, m) = resolve_bounds(bounds, None)?;
    let size = (n + 5).max(required_degree(2, m));
    let (rt, mut report) = derive_recurrence(&op, size).map_err(|e| match e {
        Error::NotTwoOrthogonal(_)
        | Error::NotIsomorphism { .. }
        | Error::EigenvalueCollision { .. } => Failure::Verification(e.to_string()),
        e => Failure::Input(e.to_string()),
    })?;
    report.extend(verify_expansions(&op, &rt, n)?);
    let seq = generate(&rt, size)?;
    report.extend(check_d_orthogonality(&seq, 2, m)?);
    let table = table_to_json(&rt);
    finish_verify(out, "operator".into(), n, m, Some(table), report)
}

fn finish_verify(
    out: &Output,
    source: String,
    n: usize,
    m: usize,
    table: Option<TableJson>,
    report: VerificationReportQ,
) -> CmdResult {
    write_output(
        out,
        &VerifyOut {
            source,
            n,
            m,
            table,
            report: report_to_json(&report),
        },
    )?;
    match summarize_failure(&report) {
        Some(msg) => Err(Failure::Verification(msg)),
        None => Ok(()),
    }
}

/// Eigen identity, oracle agreement, expansions, 2-orthogonality and the
/// Appell or Hahn property of a closed-form family.
fn verify_family(family: &FamilyQ, n: usize, m: usize) -> Result<VerificationReportQ, Failure> {
    let op = family.operator();
    // Hahn check needs the derivative sequence to reach the pairing range
    let size = (n + 5).max(required_degree(2, m) + 1);
    let rt = family.table(size);
    let seq = generate(&rt, size)?;
    let mut report = VerificationReportQ::new();

    for (k, p) in seq.polys().iter().enumerate().take(n + 1) {
        report.check_poly("eigen", k as i64, op.apply(p), p.scale(&op.lambda(0, k)));
    }

    match derive_recurrence(&op, n) {
        Ok((derived, _)) => {
            for k in 0..=n as i64 {
                report.check_value("oracle-beta", k, derived.beta(k)?, rt.beta(k)?);
                if k >= 1 {
                    report.check_value("oracle-alpha", k, derived.alpha(k)?, rt.alpha(k)?);
                    report.check_value("oracle-gamma", k, derived.gamma(k)?, rt.gamma(k)?);
                }
            }
        }
        Err(e) => report.push(failed_record("oracle", e)),
    }

    report.extend(verify_expansions(&op, &rt, n)?);
    report.extend(check_d_orthogonality(&seq, 2, m)?);

    let q = derivative_sequence(&seq)?;
    match family {
        FamilyQ::Case1(_) => {
            for k in 0..=n {
                report.check_poly(
                    "derivative-sequence",
                    k as i64,
                    q.polys()[k].clone(),
                    seq.polys()[k].clone(),
                );
            }
        }
        _ => hahn_checks(&q, m, &mut report)?,
    }
    Ok(report)
}

/// The derivative sequence is again 2-orthogonal with nonvanishing γ.
fn hahn_checks(q: &MonicSequenceQ, m: usize, report: &mut VerificationReportQ) -> CmdResult {
    let mut orth = check_d_orthogonality(q, 2, m)?;
    for r in &mut orth.records {
        r.identity = format!("hahn-{}", r.identity);
    }
    report.extend(orth);
    match structure_coeffs(q).to_recurrence(2) {
        Ok(rt) => {
            for (k, g) in rt.gamma_array(0).iter().enumerate() {
                let ok = *g != Rational::default();
                report.push(Record {
                    identity: "hahn-gamma-nonzero".into(),
                    n: k as i64 + 1,
                    m: None,
                    nu: None,
                    status: if ok { Status::Pass } else { Status::Fail },
                    detail: (!ok).then(|| "derived gamma vanishes".to_string()),
                    witness: None,
                });
            }
        }
        Err(v) => report.push(failed_record("hahn-shape", Error::NotTwoOrthogonal(v))),
    }
    Ok(())
}

fn failed_record(identity: &str, e: Error) -> Record<Rational> {
    Record {
        identity: identity.into(),
        n: 0,
        m: None,
        nu: None,
        status: Status::Fail,
        detail: Some(e.to_string()),
        witness: None,
    }
}

#[derive(Serialize)]
struct ClassifyOut {
    class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solvability: Option<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    residues: Vec<ResidueOut>,
}

#[derive(Serialize)]
struct Witness {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<isize>,
}

#[derive(Serialize)]
struct ResidueOut {
    equation: String,
    n: i64,
    value: String,
}

fn cmd_classify(operator: &Path, probe_bound: Option<usize>, out: &Output) -> CmdResult {
    let op = read_operator(operator)?;
    let probe = probe_bound.unwrap_or(DEFAULT_N.max(op.order() + 1));
    let c = op.classify(probe)?;
    let witness = |kind, nu, k, m: Option<String>, degree| Witness {
        kind,
        nu,
        k,
        m,
        degree,
    };
    let mut result = ClassifyOut {
        class: "degenerate",
        k: None,
        witness: None,
        solvability: None,
        notes: Vec::new(),
        residues: Vec::new(),
    };
    match (&c.class, &c.closed_form) {
        (OperatorClass::Degenerate(d), _) => {
            result.witness = Some(match d {
                Degeneracy::ZeroOperator => witness("zero-operator", None, None, None, None),
                Degeneracy::DegreeExcess { nu, k, degree } => {
                    witness("degree-excess", Some(*nu), Some(*k), None, Some(*degree))
                }
                Degeneracy::VanishingLambda { k, m } => witness(
                    "vanishing-lambda",
                    None,
                    Some(*k),
                    Some(m.to_string()),
                    None,
                ),
            });
        }
        (class, ClosedForm::VanishesAt(m)) => {
            // vanishing beyond the probed range
            let k = match class {
                OperatorClass::DerivativeLike { k } => *k,
                _ => 0,
            };
            result.witness = Some(witness(
                "vanishing-lambda",
                None,
                Some(k),
                Some(m.to_string()),
                None,
            ));
        }
        (OperatorClass::Isomorphism, _) => {
            result.class = "isomorphism";
            if let Some(params) = ThirdOrderParams::from_operator(&op) {
                let s = classify_solvability(&params);
                result.solvability = Some(s.verdict.as_str());
                result.notes = s.notes;
                result.residues = s
                    .residues
                    .iter()
                    .map(|r| ResidueOut {
                        equation: r.equation.clone(),
                        n: r.n,
                        value: format_rational(&r.value),
                    })
                    .collect();
            }
        }
        (OperatorClass::DerivativeLike { k }, _) => {
            result.class = "derivative-like";
            result.k = Some(*k);
        }
    }
    write_output(out, &result)
}

#[derive(Serialize)]
struct DualsOut {
    source: String,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    moments: MomentsJson,
    report: ReportJson,
}

fn cmd_duals(source: &Source, table: Option<&Path>, bounds: &Bounds, out: &Output) -> CmdResult {
    let (label, rt, n, m) = if let Some(path) = table {
        let rt = table_from_json(&read_json(path)?)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let (n, m) = resolve_bounds(bounds, None)?;
        ("table".to_string(), rt, n, m)
    } else if let Some((family, dn)) = family_source(source)? {
        let (n, m) = resolve_bounds(bounds, dn)?;
        let rt = family.table(n.max(required_degree(2, m)) + 1);
        (family.name().to_string(), rt, n, m)
    } else {
        return Err(Failure::Input(
            "duals needs --family, --descriptor or --table".into(),
        ));
    };
    let d = rt.d();
    let needed = required_degree(d, m);
    let top = n.max(needed).min(rt.max_degree());
    if top < needed {
        return Err(Error::InsufficientDegree {
            needed,
            available: top,
        }
        .into());
    }
    let seq = generate(&rt, top)?;
    let report = check_d_orthogonality(&seq, d, m)?;
    write_output(
        out,
        &DualsOut {
            source: label,
            n: top,
            m,
            moments: moments_to_json(&dual_moments(&seq, d)),
            report: report_to_json(&report),
        },
    )?;
    match summarize_failure(&report) {
        Some(msg) => Err(Failure::Verification(msg)),
        None => Ok(()),
    }
}
