//! Which third-order operators can have a 2-orthogonal eigenfamily.

use crate::eigen::families::ThirdOrderParams;
use crate::eigen::oracle::derive_recurrence;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solvability {
    /// Constant `a_3 ≠ 0`, constant `a_2`, `a_1^{[1]} ≠ 0`.
    Case1,
    /// `a_2 = 0`, quadratic `a_3` with zero discriminant.
    Case2,
    /// A necessary condition fails; no 2-orthogonal eigenfamily exists.
    NoSolution,
    /// `a_3 = 0`, leaving only `J = a_0^{[1]} D + a_0^{[0]} I`.
    Reduced,
    /// Not settled by the known results; see the residues.
    Unclassified,
}

impl Solvability {
    pub fn as_str(self) -> &'static str {
        match self {
            Solvability::Case1 => "case1",
            Solvability::Case2 => "case2",
            Solvability::NoSolution => "no-solution",
            Solvability::Reduced => "reduced",
            Solvability::Unclassified => "unclassified",
        }
    }
}

/// Value of one difference equation evaluated on an oracle-derived table.
#[derive(Clone, Debug, PartialEq)]
pub struct Residue<T> {
    pub equation: String,
    pub n: i64,
    pub value: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolvabilityReport<T> {
    pub verdict: Solvability,
    pub notes: Vec<String>,
    pub residues: Vec<Residue<T>>,
}

impl<T> SolvabilityReport<T> {
    fn new(verdict: Solvability, note: impl Into<String>) -> Self {
        SolvabilityReport {
            verdict,
            notes: vec![note.into()],
            residues: Vec::new(),
        }
    }
}

/// Sorts a third-order operator into the known solvability cases.
pub fn classify_solvability<T: Scalar>(p: &ThirdOrderParams<T>) -> SolvabilityReport<T> {
    use Solvability::*;
    let a2 = p.a2();
    let a3 = p.a3();
    if a3.is_zero() {
        return SolvabilityReport::new(
            Reduced,
            "a_3 = 0: the only candidate operator is a_0^[1] D + a_0^[0] I",
        );
    }
    let a2_const = a2.degree() <= 0;
    match a3.degree() {
        0 if a2_const => {
            if p.a11.is_zero() {
                return SolvabilityReport::new(
                    NoSolution,
                    "a_3 constant requires a_1^[1] != 0, which fails",
                );
            }
            SolvabilityReport::new(
                Case1,
                "a_3 constant and nonzero forces a_1^[1] != 0 (holds)",
            )
        }
        0 if a2.degree() == 1 => SolvabilityReport::new(
            NoSolution,
            "a_3 constant forces a_1^[2] = 0, but a_2 has degree 1",
        ),
        1 if a2.is_zero() => SolvabilityReport::new(
            NoSolution,
            "a_2 = 0 with a_3 of degree 1 admits no 2-orthogonal eigenfamily",
        ),
        2 if a2.is_zero() => {
            if p.a11.is_zero() {
                SolvabilityReport::new(
                    NoSolution,
                    "a_2 = 0 with quadratic a_3 requires a_1^[1] != 0",
                )
            } else if !p.discriminant().is_zero() {
                SolvabilityReport::new(
                    NoSolution,
                    "a_2 = 0 with quadratic a_3 requires (a_1^[3])^2 - 4 a_2^[3] a_0^[3] = 0",
                )
            } else {
                SolvabilityReport::new(Case2, "a_2 = 0, quadratic a_3 with vanishing discriminant")
            }
        }
        _ if a2_const && p.a11.is_zero() && a3.degree() <= 2 => SolvabilityReport::new(
            NoSolution,
            "a_2 constant with a_1^[1] = 0 gives a constant eigenvalue sequence",
        ),
        _ => unclassified(p),
    }
}

/// Evaluates the difference equations satisfied by every constant-`a_3`
/// solution on the oracle's table, for the user to inspect.
fn unclassified<T: Scalar>(p: &ThirdOrderParams<T>) -> SolvabilityReport<T> {
    let mut report = SolvabilityReport::new(
        Solvability::Unclassified,
        "parameter region not covered by the known cases",
    );
    let (rt, _) = match derive_recurrence(&p.operator(), 8) {
        Ok(found) => found,
        Err(e) => {
            report.notes.push(format!("eigen-oracle: {e}"));
            return report;
        }
    };
    let c = |v: i64| T::from_i64(v);
    let b = |n| rt.beta(n).expect("β within derived range");
    let a = |n| rt.alpha(n).expect("α within derived range");
    let g = |n| rt.gamma(n).expect("γ within derived range");
    for n in 0..=4i64 {
        let db = b(n + 2) - b(n + 3);
        let values = [
            ("beta", b(n + 4) - c(2) * b(n + 3) + b(n + 2)),
            (
                "alpha",
                p.a11.clone()
                    * (c(-2) * a(n + 2) + c(4) * a(n + 3) - c(2) * a(n + 4) + db.clone() * db),
            ),
            (
                "gamma",
                c(-3) * p.a11.clone() * (g(n + 1) - c(2) * g(n + 2) + g(n + 3)) - p.a03.clone(),
            ),
        ];
        for (equation, value) in values {
            report.residues.push(Residue {
                equation: equation.to_string(),
                n,
                value,
            });
        }
    }
    report
}
