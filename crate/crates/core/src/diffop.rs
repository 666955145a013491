//! Degree-non-increasing linear operators on polynomials.
//!
//! An operator is stored as its coefficient polynomials `a_0(x), …, a_K(x)`
//! and acts as `J = Σ a_ν(x)/ν! · D^ν`. Primary operators satisfy
//! `deg a_ν ≤ ν`, which is exactly the condition for `J` not to raise degrees.
//! [`DiffOperator::shifted`] produces the companion operators
//! `J^(m) = Σ a_{ν+m}(x)/ν! · D^ν` appearing in the product rule; those waive
//! the degree constraint and carry their shift.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{binomial, factorial, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator<T> {
    coeffs: Vec<Poly<T>>,
    shift: usize,
}

impl<T: Scalar> DiffOperator<T> {
    /// Validates `deg a_ν ≤ ν` and trims trailing zero coefficients.
    pub fn new(coeffs: Vec<Poly<T>>) -> Result<Self> {
        for (index, a) in coeffs.iter().enumerate() {
            if a.degree() > index as isize {
                return Err(Error::DegreeViolation {
                    index,
                    degree: a.degree(),
                });
            }
        }
        Ok(Self::unchecked(coeffs, 0))
    }

    fn unchecked(mut coeffs: Vec<Poly<T>>, shift: usize) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        DiffOperator { coeffs, shift }
    }

    pub fn identity() -> Self {
        Self::unchecked(vec![Poly::one()], 0)
    }

    /// The ordinary derivative `D`.
    pub fn derivative() -> Self {
        Self::unchecked(vec![Poly::zero(), Poly::one()], 0)
    }

    /// Builds the third-order operator
    /// `a_0 I + a_1 D + a_2/2 D² + a_3/6 D³` from its ten scalar entries
    /// `[a_0^{[0]}, a_0^{[1]}, a_1^{[1]}, a_0^{[2]}, a_1^{[2]}, a_2^{[2]}, a_0^{[3]}, …, a_3^{[3]}]`.
    pub fn third_order(entries: [T; 10]) -> Self {
        let [e0, e1, e2, e3, e4, e5, e6, e7, e8, e9] = entries;
        Self::unchecked(
            vec![
                Poly::from_coeffs(vec![e0]),
                Poly::from_coeffs(vec![e1, e2]),
                Poly::from_coeffs(vec![e3, e4, e5]),
                Poly::from_coeffs(vec![e6, e7, e8, e9]),
            ],
            0,
        )
    }

    /// Coefficient polynomials `a_0 … a_K`.
    pub fn coeffs(&self) -> &[Poly<T>] {
        &self.coeffs
    }

    /// `a_ν(x)`, zero beyond the stored order.
    pub fn coeff(&self, nu: usize) -> Poly<T> {
        self.coeffs.get(nu).cloned().unwrap_or_else(Poly::zero)
    }

    /// Scalar entry `a_i^{[ν]}`, the coefficient of `x^i` in `a_ν`.
    pub fn entry(&self, nu: usize, i: usize) -> T {
        self.coeffs.get(nu).map_or_else(T::zero, |a| a.coeff(i))
    }

    /// Order K (index of the last nonzero coefficient; 0 for the zero operator).
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Shift m when this is a companion operator `J^(m)`, 0 for a primary one.
    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn is_shifted(&self) -> bool {
        self.shift > 0
    }

    /// `J(p) = Σ_{ν ≤ min(K, deg p)} a_ν(x) p^{(ν)}(x)/ν!`.
    pub fn apply(&self, p: &Poly<T>) -> Poly<T> {
        if p.is_zero() {
            return Poly::zero();
        }
        let top = self.order().min(p.degree() as usize);
        (0..=top)
            .filter(|&nu| nu < self.coeffs.len() && !self.coeffs[nu].is_zero())
            .map(|nu| {
                let d = p.derivative(nu).scale(&(T::one() / factorial::<T>(nu)));
                &self.coeffs[nu] * &d
            })
            .sum()
    }

    /// `J(xⁿ) = Σ_{ν ≤ n} a_ν(x) C(n, ν) x^{n−ν}`.
    pub fn apply_monomial(&self, n: usize) -> Poly<T> {
        (0..=n.min(self.order()))
            .filter(|&nu| nu < self.coeffs.len())
            .map(|nu| {
                self.coeffs[nu]
                    .scale(&binomial::<T>(n, nu))
                    .shift_up(n - nu)
            })
            .sum()
    }

    /// Coefficient of `x^τ` in `J(xⁿ)`, i.e. `Σ_ν C(n, n−ν) a^{[n−ν]}_{τ−ν}`.
    pub fn monomial_image_coeff(&self, n: usize, tau: usize) -> T {
        // a^{[μ]}_{τ−n+μ} with μ = n − ν; entries with negative index vanish.
        let mut acc = T::zero();
        for mu in 0..=n.min(self.order()) {
            if tau + mu < n {
                continue;
            }
            let e = self.entry(mu, tau + mu - n);
            if !e.is_zero() {
                acc = acc + binomial::<T>(n, mu) * e;
            }
        }
        acc
    }

    /// The companion operator `J^(m)` with coefficients `a_{ν+m}`.
    pub fn shifted(&self, m: usize) -> Self {
        if m == 0 {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().skip(m).cloned().collect();
        Self::unchecked(coeffs, self.shift + m)
    }

    /// Right-hand side of the product rule, `Σ_n J^(n)(f) · g^{(n)}/n!`.
    pub fn leibniz_expand(&self, f: &Poly<T>, g: &Poly<T>) -> Poly<T> {
        if g.is_zero() {
            return Poly::zero();
        }
        let top = self.order().min(g.degree() as usize);
        (0..=top)
            .map(|n| {
                let gn = g.derivative(n).scale(&(T::one() / factorial::<T>(n)));
                &self.shifted(n).apply(f) * &gn
            })
            .sum()
    }

    /// `λ_m^{[k]} = Σ_{μ ≥ k} C(m, μ) a^{[μ]}_{μ−k}` for `m ≥ k`.
    ///
    /// For `k = 0` this is the coefficient of `x^m` in `J(x^m)`; for `k ≥ 1`
    /// it is the coefficient of `x^{m−k}` in `J(x^m)`.
    pub fn lambda(&self, k: usize, m: usize) -> T {
        (k..=m.min(self.order()))
            .map(|mu| binomial::<T>(m, mu) * self.entry(mu, mu - k))
            .fold(T::zero(), |acc, v| acc + v)
    }

    /// `λ^{[k]}_{n+k}` for `n = 0..=count`.
    pub fn lambda_table(&self, k: usize, count: usize) -> EigenvalueTable<T> {
        EigenvalueTable {
            k,
            values: (0..=count).map(|n| self.lambda(k, n + k)).collect(),
        }
    }

    /// `λ^{[k]}_m` as a polynomial in `m`.
    pub fn lambda_polynomial(&self, k: usize) -> Poly<T> {
        (k..=self.order())
            .map(|mu| {
                // C(m, μ) = m(m−1)…(m−μ+1)/μ!
                let falling = (0..mu).fold(Poly::one(), |acc, j| {
                    &acc * &Poly::from_coeffs(vec![-T::from_usize(j), T::one()])
                });
                falling.scale(&(self.entry(mu, mu - k) / factorial::<T>(mu)))
            })
            .sum()
    }

    /// Classifies the operator as an isomorphism, a derivative-like lowering
    /// operator of some order k ≥ 1, or degenerate.
    ///
    /// Nonvanishing of the `λ` sequence is checked for indices up to
    /// `probe_bound`; [`Classification::closed_form`] additionally reports
    /// the exact verdict over all indices from the polynomial form of `λ`.
    pub fn classify(&self, probe_bound: usize) -> Result<Classification> {
        let required = self.order() + 1;
        if probe_bound < required {
            return Err(Error::InvalidProbe {
                probe_bound,
                required,
            });
        }
        let Some(k) = self.coeffs.iter().position(|a| !a.is_zero()) else {
            return Ok(Classification {
                class: OperatorClass::Degenerate(Degeneracy::ZeroOperator),
                probe_bound,
                closed_form: ClosedForm::VanishesAt(BigInt::zero()),
            });
        };
        for (nu, a) in self.coeffs.iter().enumerate().skip(k) {
            if a.degree() > nu as isize - k as isize {
                return Ok(Classification {
                    class: OperatorClass::Degenerate(Degeneracy::DegreeExcess {
                        nu,
                        k,
                        degree: a.degree(),
                    }),
                    probe_bound,
                    closed_form: ClosedForm::Undetermined,
                });
            }
        }
        let closed_form = closed_form_check(&self.lambda_polynomial(k), k);
        let vanishing = (0..=probe_bound).find(|n| self.lambda(k, n + k).is_zero());
        let class = match (vanishing, k) {
            (Some(n), _) => OperatorClass::Degenerate(Degeneracy::VanishingLambda { k, m: n + k }),
            (None, 0) => OperatorClass::Isomorphism,
            (None, k) => OperatorClass::DerivativeLike { k },
        };
        Ok(Classification {
            class,
            probe_bound,
            closed_form,
        })
    }

    /// Recovers the unique operator whose monomial images are `images[n] = J(xⁿ)`.
    ///
    /// Solves `a_n = J(xⁿ) − Σ_{ν<n} C(n, ν) a_ν(x) x^{n−ν}` upward in n.
    pub fn from_action(images: &[Poly<T>]) -> Result<Self> {
        let mut coeffs: Vec<Poly<T>> = Vec::with_capacity(images.len());
        for (n, image) in images.iter().enumerate() {
            if image.degree() > n as isize {
                return Err(Error::DegreeViolation {
                    index: n,
                    degree: image.degree(),
                });
            }
            let lower: Poly<T> = coeffs
                .iter()
                .enumerate()
                .map(|(nu, a)| a.scale(&binomial::<T>(n, nu)).shift_up(n - nu))
                .sum();
            coeffs.push(image - &lower);
        }
        Self::new(coeffs)
    }
}

/// Binomial-weighted diagonal sums `λ^{[k]}_{n+k}`, `n = 0..`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueTable<T> {
    pub k: usize,
    /// `values[n] = λ^{[k]}_{n+k}`.
    pub values: Vec<T>,
}

impl<T: Scalar> EigenvalueTable<T> {
    /// `λ^{[k]}_m`; `None` outside the tabulated range or below `k`.
    pub fn get(&self, m: usize) -> Option<&T> {
        m.checked_sub(self.k).and_then(|n| self.values.get(n))
    }

    /// Largest tabulated index m.
    pub fn max_index(&self) -> usize {
        self.k + self.values.len().saturating_sub(1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub class: OperatorClass,
    /// Indices checked numerically.
    pub probe_bound: usize,
    pub closed_form: ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorClass {
    Isomorphism,
    DerivativeLike { k: usize },
    Degenerate(Degeneracy),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    ZeroOperator,
    /// `deg a_ν > ν − k` for the first nonzero index k.
    DegreeExcess {
        nu: usize,
        k: usize,
        degree: isize,
    },
    /// `λ^{[k]}_m = 0` within the probe bound.
    VanishingLambda {
        k: usize,
        m: usize,
    },
}

/// Verdict on `λ^{[k]}_m ≠ 0` for every integer `m ≥ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    NonVanishing,
    /// Smallest index at which λ vanishes.
    VanishesAt(BigInt),
    /// Root search exceeded its budget.
    Undetermined,
}

const ROOT_SEARCH_BUDGET: u64 = 1 << 20;

/// Smallest integer root `m ≥ lo` of a polynomial in `m`, decided exactly.
fn closed_form_check<T: Scalar>(poly: &Poly<T>, lo: usize) -> ClosedForm {
    let Some(coeffs) = poly
        .coeffs()
        .iter()
        .map(Scalar::to_rational)
        .collect::<Option<Vec<Rational>>>()
    else {
        return ClosedForm::Undetermined;
    };
    smallest_integer_root(&coeffs, lo)
}

pub(crate) fn smallest_integer_root(coeffs: &[Rational], lo: usize) -> ClosedForm {
    if coeffs.iter().all(Zero::is_zero) {
        return ClosedForm::VanishesAt(BigInt::from(lo));
    }
    // clear denominators
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let eval =
        |ints: &[BigInt], m: &BigInt| ints.iter().rev().fold(BigInt::zero(), |acc, c| acc * m + c);
    if ints[0].is_zero() {
        if lo == 0 {
            return ClosedForm::VanishesAt(BigInt::zero());
        }
        let strip = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        ints.drain(..strip);
    }
    let lo_big = BigInt::from(lo.max(1));
    let degree = ints.len() - 1;
    match degree {
        0 => ClosedForm::NonVanishing,
        1 => {
            let (num, den) = (-&ints[0], &ints[1]);
            if num.is_multiple_of(den) {
                let r = num / den;
                if r >= lo_big {
                    return ClosedForm::VanishesAt(r);
                }
            }
            ClosedForm::NonVanishing
        }
        2 => {
            let (c, b, a) = (&ints[0], &ints[1], &ints[2]);
            let disc = b * b - BigInt::from(4) * a * c;
            if disc.is_negative() {
                return ClosedForm::NonVanishing;
            }
            let s = disc.sqrt();
            if &s * &s != disc {
                return ClosedForm::NonVanishing;
            }
            let two_a = BigInt::from(2) * a;
            let mut roots: Vec<BigInt> = [-b - &s, -b + &s]
                .into_iter()
                .filter(|num| num.is_multiple_of(&two_a))
                .map(|num| num / &two_a)
                .filter(|r| r >= &lo_big)
                .collect();
            roots.sort();
            roots
                .into_iter()
                .next()
                .map_or(ClosedForm::NonVanishing, ClosedForm::VanishesAt)
        }
        _ => {
            // Any integer root divides the constant term and obeys the Cauchy bound.
            let lead = ints[degree].abs();
            let max_ratio = ints[..degree]
                .iter()
                .map(|c| Rational::new(c.abs(), lead.clone()))
                .fold(Rational::zero(), |acc, r| if r > acc { r } else { acc });
            let cauchy = (max_ratio + Rational::one()).ceil().to_integer();
            let c0 = ints[0].abs();
            let hi = if cauchy < c0 { cauchy } else { c0.clone() };
            if hi < lo_big {
                return ClosedForm::NonVanishing;
            }
            let span = (&hi - &lo_big).to_u64().unwrap_or(u64::MAX);
            if span > ROOT_SEARCH_BUDGET {
                return ClosedForm::Undetermined;
            }
            let mut m = lo_big;
            while m <= hi {
                if c0.is_multiple_of(&m) && eval(&ints, &m).is_zero() {
                    return ClosedForm::VanishesAt(m);
                }
                m += 1;
            }
            ClosedForm::NonVanishing
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    type P = Poly<Rational>;
    type Op = DiffOperator<Rational>;

    fn corollary_op(a00: Rational) -> Op {
        // a_1 = x/24, a_3 = (x − 1)²
        Op::new(vec![
            P::constant(a00),
            P::from_coeffs(vec![q(0, 1), q(1, 24)]),
            P::zero(),
            P::from_i64s(&[1, -2, 1]),
        ])
        .unwrap()
    }

    fn euler() -> Op {
        Op::new(vec![P::zero(), P::x()]).unwrap()
    }

    #[test]
    fn derivative_operator_acts_as_d() {
        assert_eq!(
            Op::derivative().apply(&P::monomial(q(1, 1), 2)),
            P::from_i64s(&[0, 2])
        );
        assert_eq!(
            Op::derivative().apply_monomial(5),
            P::from_i64s(&[0, 0, 0, 0, 5])
        );
    }

    #[test]
    fn corollary_operator_on_cube() {
        // x/24·3x² + (x−1)²/6·6 = x³/8 + x² − 2x + 1
        let j = corollary_op(q(0, 1));
        let img = j.apply(&P::monomial(q(1, 1), 3));
        assert_eq!(
            img,
            P::from_coeffs(vec![q(1, 1), q(-2, 1), q(1, 1), q(1, 8)])
        );
        let p3 = P::from_i64s(&[8, -24, 24, 1]);
        assert_eq!(j.apply(&p3), p3.scale(&q(1, 8)));
    }

    #[test]
    fn identity_and_euler_monomials() {
        for n in 0..8 {
            assert_eq!(Op::identity().apply_monomial(n), P::monomial(q(1, 1), n));
        }
        assert_eq!(euler().apply_monomial(4), P::monomial(q(4, 1), 4));
        assert_eq!(
            euler().apply(&P::monomial(q(1, 1), 4)),
            euler().apply_monomial(4)
        );
    }

    #[test]
    fn degree_violation_reported_with_index() {
        let err = Op::new(vec![P::zero(), P::zero(), P::from_i64s(&[0, 0, 0, 1])]).unwrap_err();
        assert_eq!(
            err,
            Error::DegreeViolation {
                index: 2,
                degree: 3
            }
        );
    }

    #[test]
    fn from_action_small_example() {
        let images = vec![P::one(), P::x(), P::from_i64s(&[2, 0, 1])];
        let j = Op::from_action(&images).unwrap();
        assert_eq!(j.coeffs(), &[P::one(), P::zero(), P::constant(q(2, 1))][..]);
        assert_eq!(j.apply_monomial(2), P::from_i64s(&[2, 0, 1]));

        let ident: Vec<P> = (0..6).map(|n| P::monomial(q(1, 1), n)).collect();
        assert_eq!(Op::from_action(&ident).unwrap(), Op::identity());

        let bad = vec![P::one(), P::from_i64s(&[0, 0, 1])];
        assert_eq!(
            Op::from_action(&bad).unwrap_err(),
            Error::DegreeViolation {
                index: 1,
                degree: 2
            }
        );
    }

    #[test]
    fn shifted_operators() {
        let j = corollary_op(q(1, 1));
        assert_eq!(j.shifted(0), j);
        let p = P::from_i64s(&[3, 1, 4, 1, 5]);
        assert_eq!(j.shifted(3).apply(&p), &P::from_i64s(&[1, -2, 1]) * &p);
        assert!(j.shifted(4).apply(&p).is_zero());
        assert!(j.shifted(3).is_shifted());
        assert_eq!(j.shifted(1).shifted(2), j.shifted(3));
    }

    #[test]
    fn leibniz_small_cases() {
        let j = corollary_op(q(0, 1));
        let f = P::from_i64s(&[1, -3, 0, 2]);
        assert_eq!(j.leibniz_expand(&f, &P::one()), j.apply(&f));
        let x2 = j.leibniz_expand(&P::x(), &P::x());
        assert_eq!(x2, P::from_coeffs(vec![q(0, 1), q(0, 1), q(1, 12)]));
        assert_eq!(x2, j.apply(&P::monomial(q(1, 1), 2)));
    }

    #[test]
    fn classifications() {
        let d = Op::derivative().classify(4).unwrap();
        assert_eq!(d.class, OperatorClass::DerivativeLike { k: 1 });
        assert_eq!(d.closed_form, ClosedForm::NonVanishing);

        let e = euler().classify(4).unwrap();
        assert_eq!(
            e.class,
            OperatorClass::Degenerate(Degeneracy::DegreeExcess {
                nu: 1,
                k: 1,
                degree: 1
            })
        );

        let c = corollary_op(q(1, 1)).classify(10).unwrap();
        assert_eq!(c.class, OperatorClass::Isomorphism);
        assert_eq!(c.closed_form, ClosedForm::NonVanishing);

        assert_eq!(
            corollary_op(q(1, 1)).classify(3).unwrap_err(),
            Error::InvalidProbe {
                probe_bound: 3,
                required: 4
            }
        );
    }

    #[test]
    fn closed_form_catches_vanishing_beyond_probe() {
        // λ_n = n/24 − 2 vanishes at n = 48
        let c = corollary_op(q(-2, 1)).classify(10).unwrap();
        assert_eq!(c.class, OperatorClass::Isomorphism);
        assert_eq!(c.closed_form, ClosedForm::VanishesAt(BigInt::from(48)));
        let c = corollary_op(q(-2, 1)).classify(60).unwrap();
        assert_eq!(
            c.class,
            OperatorClass::Degenerate(Degeneracy::VanishingLambda { k: 0, m: 48 })
        );
        // λ_n = n/24 + 1/3 never vanishes on n ≥ 0
        let c = corollary_op(q(1, 3)).classify(10).unwrap();
        assert_eq!(c.closed_form, ClosedForm::NonVanishing);
    }

    #[test]
    fn integer_root_search_by_degree() {
        // (m − 3)(m − 7) = m² − 10m + 21
        let quad = [q(21, 1), q(-10, 1), q(1, 1)];
        assert_eq!(
            smallest_integer_root(&quad, 0),
            ClosedForm::VanishesAt(3.into())
        );
        assert_eq!(
            smallest_integer_root(&quad, 4),
            ClosedForm::VanishesAt(7.into())
        );
        assert_eq!(smallest_integer_root(&quad, 8), ClosedForm::NonVanishing);
        // (m − 5)(m² + 1) = m³ − 5m² + m − 5
        let cubic = [q(-5, 1), q(1, 1), q(-5, 1), q(1, 1)];
        assert_eq!(
            smallest_integer_root(&cubic, 0),
            ClosedForm::VanishesAt(5.into())
        );
        // m(m + 1)(m + 2)/6 vanishes at 0 only
        let tri = [q(0, 1), q(1, 3), q(1, 2), q(1, 6)];
        assert_eq!(
            smallest_integer_root(&tri, 0),
            ClosedForm::VanishesAt(0.into())
        );
        assert_eq!(smallest_integer_root(&tri, 1), ClosedForm::NonVanishing);
    }

    #[test]
    fn lambda_tables() {
        let ident = Op::identity().lambda_table(0, 6);
        assert!(ident.values.iter().all(|v| *v == q(1, 1)));

        let j = Op::third_order([
            q(1, 1),
            q(0, 1),
            q(1, 1),
            q(0, 1),
            q(0, 1),
            q(0, 1),
            q(0, 1),
            q(0, 1),
            q(0, 1),
            q(0, 1),
        ]);
        let t = j.lambda_table(0, 10);
        for n in 0..=10 {
            assert_eq!(t.get(n).unwrap(), &q(n as i64 + 1, 1));
        }
        let c = corollary_op(q(3, 1)).lambda_table(0, 12);
        for n in 0..=12 {
            assert_eq!(c.values[n], q(n as i64, 24) + q(3, 1));
        }
        // D: λ^{[1]}_{n+1} = n + 1
        let d = Op::derivative().lambda_table(1, 5);
        assert_eq!(d.get(0), None);
        for m in 1..=6 {
            assert_eq!(d.get(m).unwrap(), &q(m as i64, 1));
        }
    }

    #[test]
    fn lambda_is_diagonal_of_monomial_images() {
        let j = corollary_op(q(5, 7));
        for n in 0..10 {
            assert_eq!(j.apply_monomial(n).coeff(n), j.lambda(0, n));
            assert_eq!(j.lambda_polynomial(0).eval(&q(n as i64, 1)), j.lambda(0, n));
        }
    }
}
