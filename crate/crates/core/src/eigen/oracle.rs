//! Eigenpolynomials computed straight from the operator.
//!
//! Writing `P = xⁿ + Σ_{τ<n} c_τ x^τ` and `M(i, τ)` for the coefficient of
//! `x^τ` in `J(x^i)`, the relation `J(P) = λ_n P` becomes the triangular system
//!
//! ```text
//! (λ_n − λ_τ) c_τ = Σ_{τ < i ≤ n} M(i, τ) c_i,      τ = n−1, …, 0,
//! ```
//!
//! which has a unique solution exactly when `λ_τ ≠ λ_n` for every `τ < n`.

use crate::diffop::DiffOperator;
use crate::error::{Error, Result, ShapeViolation};
use crate::poly::Poly;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::seq::{structure_coeffs, MonicSequence, Provenance, RecurrenceTable};

/// The unique monic degree-n eigenpolynomial of `J`.
pub fn eigenpoly<T: Scalar>(op: &DiffOperator<T>, n: usize) -> Result<Poly<T>> {
    let seq = eigen_family(op, n)?;
    Ok(seq.polys()[n].clone())
}

/// Eigenpolynomials `P_0..P_top`, reusing the monomial images across degrees.
pub fn eigen_family<T: Scalar>(op: &DiffOperator<T>, top: usize) -> Result<MonicSequence<T>> {
    if op.is_shifted() {
        return Err(Error::Invalid(
            "eigenpolynomials need a primary (unshifted) operator".into(),
        ));
    }
    let probe = top.max(op.order() + 1);
    let lambdas: Vec<T> = (0..=probe).map(|m| op.lambda(0, m)).collect();
    if let Some(m) = lambdas.iter().position(|l| l.is_zero()) {
        return Err(Error::NotIsomorphism { n: m });
    }
    let images: Vec<Poly<T>> = (0..=top).map(|i| op.apply_monomial(i)).collect();
    let mut polys = Vec::with_capacity(top + 1);
    for n in 0..=top {
        if let Some(k) = (0..n).find(|&k| lambdas[k] == lambdas[n]) {
            return Err(Error::EigenvalueCollision { k, n });
        }
        let mut c = vec![T::zero(); n + 1];
        c[n] = T::one();
        for tau in (0..n).rev() {
            let rhs = ((tau + 1)..=n)
                .map(|i| images[i].coeff(tau) * c[i].clone())
                .fold(T::zero(), |acc, v| acc + v);
            c[tau] = rhs / (lambdas[n].clone() - lambdas[tau].clone());
        }
        polys.push(Poly::from_coeffs(c));
    }
    MonicSequence::new(polys, Provenance::Eigen("eigenpolynomials of J".into()))
}

/// Builds the eigenfamily up to degree `size + 2`, extracts its structure
/// coefficients and returns the d = 2 recurrence table (β_0..β_{size+1},
/// α_1..α_{size+1}, γ_1..γ_size) when the family is 2-orthogonal.
///
/// The report records `J(P_n) = λ_n P_n` for every computed degree.
pub fn derive_recurrence<T: Scalar>(
    op: &DiffOperator<T>,
    size: usize,
) -> Result<(RecurrenceTable<T>, VerificationReport<T>)> {
    let seq = eigen_family(op, size + 2)?;
    let mut report = VerificationReport::new();
    for (n, p) in seq.polys().iter().enumerate() {
        let lambda = op.lambda(0, n);
        report.check_poly("eigen", n as i64, op.apply(p), p.scale(&lambda));
    }
    let table = structure_coeffs(&seq)
        .to_recurrence(2)
        .map_err(Error::NotTwoOrthogonal)?;
    if let Some(n) = table.first_vanishing_gamma() {
        return Err(Error::NotTwoOrthogonal(ShapeViolation::VanishingGamma {
            n,
        }));
    }
    Ok((table, report))
}
