//! Exact operator calculus on polynomial spaces and the 2-orthogonal
//! eigenfunction families of third-order degree-preserving operators.
//!
//! Every algorithm is generic over [`Scalar`]; the aliases below fix the
//! scalar to exact rationals ([`Rational`]) or `f64`.

pub mod diffop;
pub mod eigen;
pub mod error;
pub mod json;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod seq;

pub use diffop::{
    Classification, ClosedForm, Degeneracy, DiffOperator, EigenvalueTable, OperatorClass,
};
pub use eigen::expansions::{steptwo_coeffs, verify_expansions, StepTwoCoeffs};
pub use eigen::families::{
    case1_coeffs, case2_coeffs, corollary42_coeffs, corollary42_operator, Case1Params, Case2Params,
    Family, ThirdOrderParams,
};
pub use eigen::oracle::{derive_recurrence, eigen_family, eigenpoly};
pub use eigen::solvability::{classify_solvability, Residue, Solvability, SolvabilityReport};
pub use error::{Error, Result, ShapeViolation};
pub use poly::Poly;
pub use report::{Record, Status, VerificationReport, Witness};
pub use scalar::{binomial, factorial, format_rational, parse_rational, q, Rational, Scalar};
pub use seq::{
    check_d_orthogonality, derivative_sequence, dual_moments, expand_in_basis, generate,
    multiply_by_x, structure_coeffs, BasisExpansion, DualMoments, MonicSequence, Provenance,
    RecurrenceTable, StructureCoeffs,
};

pub type PolyQ = Poly<Rational>;
pub type PolyF64 = Poly<f64>;
pub type DiffOperatorQ = DiffOperator<Rational>;
pub type DiffOperatorF64 = DiffOperator<f64>;
pub type RecurrenceTableQ = RecurrenceTable<Rational>;
pub type MonicSequenceQ = MonicSequence<Rational>;
pub type VerificationReportQ = VerificationReport<Rational>;
pub type FamilyQ = Family<Rational>;
