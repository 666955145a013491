//! Expansions of `J^(1)(P_n)`, `J^(2)(P_n)` and `J^(3)(P_{n+2})` in the basis
//! `{P_n}` of a 2-orthogonal eigenfamily, checked against direct application
//! of the companion operators.

use crate::diffop::{DiffOperator, EigenvalueTable};
use crate::eigen::families::Family;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::seq::{generate, MonicSequence, RecurrenceTable};

/// The seven coefficients `A_n..H_n` of the `J^(2)` expansion at one index.
#[derive(Clone, Debug, PartialEq)]
pub struct StepTwoCoeffs<T> {
    pub n: i64,
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub f: T,
    pub g: T,
    pub h: T,
}

/// Index-checked lookups of λ, β, α, γ with zeros at negative indices.
struct Data<'a, T> {
    lambdas: &'a [T],
    rt: &'a RecurrenceTable<T>,
}

impl<T: Scalar> Data<'_, T> {
    fn lam(&self, n: i64) -> Result<T> {
        if n < 0 {
            return Ok(T::zero());
        }
        self.lambdas
            .get(n as usize)
            .cloned()
            .ok_or(Error::IndexOutOfRange {
                index: n,
                available: self.lambdas.len() as i64 - 1,
            })
    }

    fn out_of_range(&self, n: i64) -> Error {
        Error::IndexOutOfRange {
            index: n,
            available: self.rt.betas().len() as i64 - 1,
        }
    }

    fn beta(&self, n: i64) -> Result<T> {
        self.rt.beta(n).map_err(|_| self.out_of_range(n))
    }

    fn alpha(&self, n: i64) -> Result<T> {
        self.rt.alpha(n).map_err(|e| match e {
            Error::MissingCoefficient { index, .. } => self.out_of_range(index),
            e => e,
        })
    }

    fn gamma(&self, n: i64) -> Result<T> {
        self.rt.gamma(n).map_err(|e| match e {
            Error::MissingCoefficient { index, .. } => self.out_of_range(index),
            e => e,
        })
    }

    /// `λ_n − 2λ_{n+i} + λ_{n+j}`.
    fn second(&self, n: i64, i: i64, j: i64) -> Result<T> {
        Ok(self.lam(n)? - two::<T>() * self.lam(n + i)? + self.lam(n + j)?)
    }

    fn a(&self, n: i64) -> Result<T> {
        Ok(self.lam(n)? - two::<T>() * self.lam(n - 1)? + self.lam(n - 2)?)
    }

    fn b(&self, n: i64) -> Result<T> {
        Ok((self.beta(n - 1)? - self.beta(n)?) * (self.lam(n)? - self.lam(n - 1)?))
    }

    fn c(&self, n: i64) -> Result<T> {
        let l = self.lam(n)?;
        Ok(
            two::<T>() * self.alpha(n + 1)? * (l.clone() - self.lam(n + 1)?)
                + two::<T>() * self.alpha(n)? * (l - self.lam(n - 1)?),
        )
    }

    fn d(&self, n: i64) -> Result<T> {
        let l = self.lam(n)?;
        Ok(self.alpha(n + 1)?
            * (self.beta(n + 1)? - self.beta(n)?)
            * (l.clone() - self.lam(n + 1)?)
            + self.gamma(n + 1)? * (l.clone() - two::<T>() * self.lam(n + 2)? + self.lam(n + 1)?)
            + self.gamma(n)? * (l - two::<T>() * self.lam(n - 1)? + self.lam(n + 1)?))
    }

    fn f(&self, n: i64) -> Result<T> {
        Ok(
            self.alpha(n + 2)? * self.alpha(n + 1)? * self.second(n, 1, 2)?
                + self.gamma(n + 1)?
                    * (self.beta(n + 2)? - self.beta(n)?)
                    * (self.lam(n)? - self.lam(n + 2)?),
        )
    }

    fn g(&self, n: i64) -> Result<T> {
        Ok(
            self.alpha(n + 3)? * self.gamma(n + 1)? * self.second(n, 2, 3)?
                + self.alpha(n + 1)? * self.gamma(n + 2)? * self.second(n, 1, 3)?,
        )
    }

    fn h(&self, n: i64) -> Result<T> {
        Ok(self.gamma(n + 3)? * self.gamma(n + 1)? * self.second(n, 2, 4)?)
    }

    /// `[P_{n+1}, P_{n−1}, P_{n−2}]` coefficients of `J^(1)(P_n)`.
    fn step_one(&self, n: i64) -> Result<Vec<(i64, T)>> {
        let l = self.lam(n)?;
        Ok(vec![
            (n + 1, self.lam(n + 1)? - l.clone()),
            (n - 1, self.alpha(n)? * (self.lam(n - 1)? - l.clone())),
            (n - 2, self.gamma(n - 1)? * (self.lam(n - 2)? - l)),
        ])
    }

    fn step_two(&self, n: i64) -> Result<Vec<(i64, T)>> {
        // terms with a negative basis index vanish, so their coefficients are skipped
        let mut terms = vec![
            (n + 2, self.a(n + 2)?),
            (n + 1, self.b(n + 1)?),
            (n, self.c(n)?),
        ];
        if n >= 1 {
            terms.push((n - 1, self.d(n - 1)?));
        }
        if n >= 2 {
            terms.push((n - 2, self.f(n - 2)?));
        }
        if n >= 3 {
            terms.push((n - 3, self.g(n - 3)?));
        }
        if n >= 4 {
            terms.push((n - 4, self.h(n - 4)?));
        }
        Ok(terms)
    }

    /// Coefficients of `J^(3)(P_{n+2})` on `P_{n+5}, …, P_{n−4}`.
    fn step_three(&self, n: i64, a33: &T) -> Result<Vec<(i64, T)>> {
        let (al, be, ga) = (|k| self.alpha(k), |k| self.beta(k), |k| self.gamma(k));
        let opt = |k: i64, f: &dyn Fn(i64) -> Result<T>| -> Result<T> {
            if k < 0 {
                Ok(T::zero())
            } else {
                f(k)
            }
        };
        let (a, b, c) = (|k| self.a(k), |k| self.b(k), |k| self.c(k));
        let d = |k| opt(k, &|k| self.d(k));
        let f = |k| opt(k, &|k| self.f(k));
        let g = |k| opt(k, &|k| self.g(k));
        let h = |k| opt(k, &|k| self.h(k));

        let p4 = a(n + 4)? * be(n + 2)? - a(n + 4)? * be(n + 4)? - b(n + 3)? + b(n + 4)?;
        let p3 = a(n + 3)? * al(n + 2)? - a(n + 4)? * al(n + 4)? + b(n + 3)? * be(n + 2)?
            - b(n + 3)? * be(n + 3)?
            - c(n + 2)?
            + c(n + 3)?;
        let p2 = a(n + 2)? * ga(n + 1)? - a(n + 4)? * ga(n + 3)? + b(n + 2)? * al(n + 2)?
            - b(n + 3)? * al(n + 3)?
            - d(n + 1)?
            + d(n + 2)?;
        let p1 = b(n + 1)? * ga(n + 1)? - b(n + 3)? * ga(n + 2)? + c(n + 1)? * al(n + 2)?
            - c(n + 2)? * al(n + 2)?
            - d(n + 1)? * be(n + 1)?
            + d(n + 1)? * be(n + 2)?
            - f(n)?
            + f(n + 1)?;
        let p0 = c(n)? * ga(n + 1)? - c(n + 2)? * ga(n + 1)? - d(n + 1)? * al(n + 1)?
            + d(n)? * al(n + 2)?
            - f(n)? * be(n)?
            + f(n)? * be(n + 2)?
            - g(n - 1)?
            + g(n)?;
        let m1 = -d(n + 1)? * ga(n)? + d(n - 1)? * ga(n + 1)? - f(n)? * al(n)?
            + f(n - 1)? * al(n + 2)?
            - g(n - 1)? * be(n - 1)?
            + g(n - 1)? * be(n + 2)?
            - h(n - 2)?
            + h(n - 1)?;
        let m2 = -f(n)? * ga(n - 1)? + f(n - 2)? * ga(n + 1)? - g(n - 1)? * al(n - 1)?
            + g(n - 2)? * al(n + 2)?
            - h(n - 2)? * be(n - 2)?
            + h(n - 2)? * be(n + 2)?;
        let m3 = -g(n - 1)? * ga(n - 2)? + g(n - 3)? * ga(n + 1)? - h(n - 2)? * al(n - 2)?
            + h(n - 3)? * al(n + 2)?;
        let m4 = h(n - 4)? * ga(n + 1)? - h(n - 2)? * ga(n - 3)?;
        Ok(vec![
            (n + 5, a33.clone()),
            (n + 4, p4),
            (n + 3, p3),
            (n + 2, p2),
            (n + 1, p1),
            (n, p0),
            (n - 1, m1),
            (n - 2, m2),
            (n - 3, m3),
            (n - 4, m4),
        ])
    }

    /// Expansions of `J^(3)(P_0)` and `J^(3)(P_1)` in terms of `a_3` and the table.
    fn step_three_initial(&self, c: &[T; 4]) -> Result<[Vec<(i64, T)>; 2]> {
        let [c0, c1, c2, c3] = c.clone();
        let (b0, b1, b2, b3) = (self.beta(0)?, self.beta(1)?, self.beta(2)?, self.beta(3)?);
        let (a1, a2, a3) = (self.alpha(1)?, self.alpha(2)?, self.alpha(3)?);
        let (g1, g2) = (self.gamma(1)?, self.gamma(2)?);
        let sq = |v: &T| v.clone() * v.clone();
        let two = two::<T>();

        let i0 = vec![
            (3, c3.clone()),
            (
                2,
                (b0.clone() + b1.clone() + b2.clone()) * c3.clone() + c2.clone(),
            ),
            (
                1,
                c3.clone()
                    * (a1.clone() + a2.clone() + sq(&b0) + b1.clone() * b0.clone() + sq(&b1))
                    + (b0.clone() + b1.clone()) * c2.clone()
                    + c1.clone(),
            ),
            (
                0,
                c3.clone()
                    * (a1.clone() * (two.clone() * b0.clone() + b1.clone())
                        + sq(&b0) * b0.clone()
                        + g1.clone())
                    + a1.clone() * c2.clone()
                    + b0.clone() * (b0.clone() * c2.clone() + c1.clone())
                    + c0.clone(),
            ),
        ];
        let i1 = vec![
            (4, c3.clone()),
            (3, (b1.clone() + b2.clone() + b3) * c3.clone() + c2.clone()),
            (
                2,
                c3.clone()
                    * (a1.clone() + a2.clone() + a3 + sq(&b1) + b2.clone() * b1.clone() + sq(&b2))
                    + (b1.clone() + b2.clone()) * c2.clone()
                    + c1.clone(),
            ),
            (
                1,
                c3.clone()
                    * (two * (a1.clone() + a2.clone()) * b1.clone()
                        + a2.clone() * b2.clone()
                        + sq(&b1) * b1.clone()
                        + g1.clone()
                        + g2)
                    + a1.clone() * b0.clone() * c3.clone()
                    + (a1.clone() + a2.clone()) * c2.clone()
                    + b1.clone() * (b1.clone() * c2.clone() + c1.clone())
                    + c0,
            ),
            (
                0,
                a1.clone()
                    * (c3.clone() * (a2 + sq(&b0) + b1.clone() * b0.clone() + sq(&b1))
                        + (b0 + b1.clone()) * c2.clone()
                        + c1)
                    + sq(&a1) * c3.clone()
                    + g1 * ((self.beta(0)? + b1 + b2) * c3 + c2),
            ),
        ];
        Ok([i0, i1])
    }
}

fn two<T: Scalar>() -> T {
    T::from_i64(2)
}

/// `A_n..H_n` from the eigenvalues `λ_m = λ^{[0]}_m` and a d = 2 table.
pub fn steptwo_coeffs<T: Scalar>(
    lambdas: &EigenvalueTable<T>,
    rt: &RecurrenceTable<T>,
    n: i64,
) -> Result<StepTwoCoeffs<T>> {
    if lambdas.k != 0 {
        return Err(Error::Invalid(format!(
            "A..H use the k = 0 eigenvalues, got a table with k = {}",
            lambdas.k
        )));
    }
    let data = Data {
        lambdas: &lambdas.values,
        rt,
    };
    Ok(StepTwoCoeffs {
        n,
        a: data.a(n)?,
        b: data.b(n)?,
        c: data.c(n)?,
        d: data.d(n)?,
        f: data.f(n)?,
        g: data.g(n)?,
        h: data.h(n)?,
    })
}

/// Checks, for every `n ≤ N`, the `J^(1)`, `J^(2)` and `J^(3)` expansions of the
/// family generated from `rt` against direct application of the shifted
/// operators, the two `J^(3)` initial expansions, and, when `J` and `rt`
/// belong to a known family, that family's extra relations.
///
/// The table must support `generate(rt, N + 5)`; otherwise the missing entry
/// is returned as an error.
pub fn verify_expansions<T: Scalar>(
    op: &DiffOperator<T>,
    rt: &RecurrenceTable<T>,
    top: usize,
) -> Result<VerificationReport<T>> {
    if rt.d() != 2 {
        return Err(Error::Invalid(format!(
            "expansions need d = 2, table has d = {}",
            rt.d()
        )));
    }
    if op.is_shifted() || op.order() > 3 {
        return Err(Error::Invalid(
            "expansions need a primary operator of order at most 3".into(),
        ));
    }
    let size = top + 5;
    let seq = generate(rt, size)?;
    let lambdas: Vec<T> = (0..=size).map(|m| op.lambda(0, m)).collect();
    let data = Data {
        lambdas: &lambdas,
        rt,
    };
    let (j1, j2, j3) = (op.shifted(1), op.shifted(2), op.shifted(3));
    let a33 = op.entry(3, 3);
    let mut report = VerificationReport::new();

    for n in 0..=top {
        let ni = n as i64;
        let p = &seq.polys()[n];
        report.check_poly("J1", ni, j1.apply(p), seq.combine(&data.step_one(ni)?)?);
        report.check_poly("J2", ni, j2.apply(p), seq.combine(&data.step_two(ni)?)?);
        let image = j3.apply(&seq.polys()[n + 2]);
        report.check_value("J3-leading", ni, image.coeff(n + 5), a33.clone());
        report.check_poly("J3", ni, image, seq.combine(&data.step_three(ni, &a33)?)?);
    }

    let c = [op.entry(3, 0), op.entry(3, 1), op.entry(3, 2), a33];
    for (n, terms) in data.step_three_initial(&c)?.iter().enumerate() {
        let lhs = j3.apply(&seq.polys()[n]);
        report.check_poly("J3-initial", n as i64, lhs, seq.combine(terms)?);
    }

    if let Some(family) = Family::detect(op) {
        if family.table(size).first_mismatch(rt, size - 1).is_none() {
            family_extras(&family, &seq, top, &mut report);
        } else {
            report.note(format!(
                "operator has the {} shape but the table differs from its closed form; family relations skipped",
                family.name()
            ));
        }
    }
    Ok(report)
}

fn family_extras<T: Scalar>(
    family: &Family<T>,
    seq: &MonicSequence<T>,
    top: usize,
    report: &mut VerificationReport<T>,
) {
    let c = |v: i64| T::from_i64(v);
    let get = |k: i64| seq.get(k).expect("index within generated range");
    match family {
        Family::Case1(p) => {
            let a1 = Poly::from_coeffs(vec![p.a01.clone(), p.a11.clone()]);
            let half_a03 = p.a03.clone() / c(2);
            for n in 0..=top {
                let ni = n as i64;
                let pn = get(ni);
                let lhs =
                    &a1 * &pn + pn.derivative(1).scale(&p.a02) + pn.derivative(2).scale(&half_a03);
                let rhs = get(ni + 1).scale(&p.a11)
                    + get(ni - 1).scale(&(c(ni) * p.a02.clone() / c(2)))
                    + get(ni - 2).scale(&(c((ni - 1) * ni) * p.a03.clone() / c(3)));
                report.check_poly("case1-second-order", ni, lhs, rhs);
                report.check_poly("appell", ni, pn.derivative(1), get(ni - 1).scale(&c(ni)));
            }
        }
        Family::Corollary42 { .. } => {
            let a1 = Poly::from_coeffs(vec![c(0), T::ratio(1, 24)]);
            let a3 = Poly::from_i64s(&[1, -2, 1]);
            for n in 0..=top {
                let ni = n as i64;
                let pn = get(ni);
                let lhs = &a1 * &pn + (&a3 * &pn.derivative(2)).scale(&T::ratio(1, 2));
                let s = 3 - 2 * ni;
                let q = 15 - 16 * ni + 4 * ni * ni;
                let rhs = get(ni + 1).scale(&T::ratio(1, 24))
                    - get(ni - 1).scale(&(c(s * s * (ni - 1) * ni) / c(2)))
                    + get(ni - 2).scale(&(c((ni - 1) * ni) * c(q * q) / c(3)));
                report.check_poly("corollary-J1", ni, lhs, rhs);

                let lhs = &a3 * &pn.derivative(1);
                let (t3, t5, t7) = (3 - 2 * ni, 5 - 2 * ni, 7 - 2 * ni);
                let rhs = get(ni + 1).scale(&c(ni))
                    - get(ni).scale(&c(2 * ni * (5 + 4 * ni * (2 * ni - 3))))
                    + get(ni - 1).scale(&c(t3 * t3 * ni * (24 * (ni - 2) * ni + 25)))
                    - get(ni - 2).scale(&(c(8 * t5 * t5 * (ni - 1) * ni) * c(-t3 * t3 * t3)))
                    + get(ni - 3)
                        .scale(&(c(4 * t3 * t3 * t5 * t5) * c(t7 * t7 * (ni - 2) * (ni - 1) * ni)));
                report.check_poly("corollary-J2", ni, lhs, rhs);
            }
        }
        Family::Case2(_) => {}
    }
}
