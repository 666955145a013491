//! Closed-form recurrence coefficients of the known 2-orthogonal eigenfamilies.
//!
//! Parameters follow the operator entries `a_i^{[ν]}` (coefficient of `x^i` in
//! `a_ν`), written here as `a{i}{ν}`: `a01` is `a_0^{[1]}`, `a23` is `a_2^{[3]}`.

use crate::diffop::DiffOperator;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::seq::RecurrenceTable;

/// The ten scalar entries of a third-order operator
/// `a_0 I + a_1 D + a_2/2 D² + a_3/6 D³`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThirdOrderParams<T> {
    pub a00: T,
    pub a01: T,
    pub a11: T,
    pub a02: T,
    pub a12: T,
    pub a22: T,
    pub a03: T,
    pub a13: T,
    pub a23: T,
    pub a33: T,
}

impl<T: Scalar> ThirdOrderParams<T> {
    /// Reads the entries of an operator of order at most 3.
    pub fn from_operator(op: &DiffOperator<T>) -> Option<Self> {
        if op.is_shifted() || op.order() > 3 {
            return None;
        }
        let e = |nu, i| op.entry(nu, i);
        Some(ThirdOrderParams {
            a00: e(0, 0),
            a01: e(1, 0),
            a11: e(1, 1),
            a02: e(2, 0),
            a12: e(2, 1),
            a22: e(2, 2),
            a03: e(3, 0),
            a13: e(3, 1),
            a23: e(3, 2),
            a33: e(3, 3),
        })
    }

    pub fn operator(&self) -> DiffOperator<T> {
        DiffOperator::third_order([
            self.a00.clone(),
            self.a01.clone(),
            self.a11.clone(),
            self.a02.clone(),
            self.a12.clone(),
            self.a22.clone(),
            self.a03.clone(),
            self.a13.clone(),
            self.a23.clone(),
            self.a33.clone(),
        ])
    }

    /// `a_2(x)` as a polynomial.
    pub fn a2(&self) -> Poly<T> {
        Poly::from_coeffs(vec![self.a02.clone(), self.a12.clone(), self.a22.clone()])
    }

    /// `a_3(x)` as a polynomial.
    pub fn a3(&self) -> Poly<T> {
        Poly::from_coeffs(vec![
            self.a03.clone(),
            self.a13.clone(),
            self.a23.clone(),
            self.a33.clone(),
        ])
    }

    /// `(a_1^{[3]})² − 4 a_2^{[3]} a_0^{[3]}`.
    pub fn discriminant(&self) -> T {
        discriminant(&self.a03, &self.a13, &self.a23)
    }
}

fn discriminant<T: Scalar>(a03: &T, a13: &T, a23: &T) -> T {
    a13.clone() * a13.clone() - T::from_i64(4) * a23.clone() * a03.clone()
}

/// Constant `a_3`, `a_2` constant, `a_1` of degree one.
#[derive(Clone, Debug, PartialEq)]
pub struct Case1Params<T> {
    pub a00: T,
    pub a01: T,
    pub a11: T,
    pub a02: T,
    pub a03: T,
}

impl<T: Scalar> Case1Params<T> {
    pub fn new(a00: T, a01: T, a11: T, a02: T, a03: T) -> Result<Self> {
        if a11.is_zero() {
            return Err(Error::ZeroParameter("a_1^[1]"));
        }
        if a03.is_zero() {
            return Err(Error::ZeroParameter("a_0^[3]"));
        }
        Ok(Case1Params {
            a00,
            a01,
            a11,
            a02,
            a03,
        })
    }

    /// `a_0^{[0]} I + (a_0^{[1]} + a_1^{[1]} x) D + a_0^{[2]}/2 D² + a_0^{[3]}/6 D³`.
    pub fn operator(&self) -> DiffOperator<T> {
        self.third_order().operator()
    }

    pub fn third_order(&self) -> ThirdOrderParams<T> {
        let z = T::zero;
        ThirdOrderParams {
            a00: self.a00.clone(),
            a01: self.a01.clone(),
            a11: self.a11.clone(),
            a02: self.a02.clone(),
            a12: z(),
            a22: z(),
            a03: self.a03.clone(),
            a13: z(),
            a23: z(),
            a33: z(),
        }
    }

    pub fn beta(&self, _n: i64) -> T {
        -self.a01.clone() / self.a11.clone()
    }

    /// `α_n = −a_0^{[2]} n / (2 a_1^{[1]})`.
    pub fn alpha(&self, n: i64) -> T {
        -self.a02.clone() * T::from_i64(n) / (T::from_i64(2) * self.a11.clone())
    }

    /// `γ_n = −a_0^{[3]} n (n+1) / (6 a_1^{[1]})`.
    pub fn gamma(&self, n: i64) -> T {
        -self.a03.clone() * T::from_i64(n * (n + 1)) / (T::from_i64(6) * self.a11.clone())
    }
}

/// `a_2 = 0`, quadratic `a_3` with vanishing discriminant, `a_1` of degree one.
#[derive(Clone, Debug, PartialEq)]
pub struct Case2Params<T> {
    pub a00: T,
    pub a01: T,
    pub a11: T,
    pub a03: T,
    pub a13: T,
    pub a23: T,
    /// Auxiliary constants `b_0, b_1, b_2` of the α formula.
    pub b: [T; 3],
    /// Auxiliary constants `f_0..f_4` of the γ formula.
    pub f: [T; 5],
}

impl<T: Scalar> Case2Params<T> {
    pub fn new(a00: T, a01: T, a11: T, a03: T, a13: T, a23: T) -> Result<Self> {
        if a11.is_zero() {
            return Err(Error::ZeroParameter("a_1^[1]"));
        }
        let disc = discriminant(&a03, &a13, &a23);
        if !disc.is_zero() {
            return Err(Error::DiscriminantNonzero(disc.to_string()));
        }
        let c = |v: i64| T::from_i64(v);
        let s2 = a11.clone() * a11.clone();
        let s3 = s2.clone() * a11.clone();
        let sq23 = a23.clone() * a23.clone();
        let cube23 = sq23.clone() * a23.clone();

        let b0 = (-a13.clone() / (c(2) * a11.clone())
            + a01.clone() * a23.clone() / s2.clone()
            + c(10) * sq23.clone() / (c(12) * s2.clone()))
            / c(2);
        let b1 = sq23.clone() / (c(3) * s2.clone());
        let b2 = sq23.clone() / (c(12) * s2.clone());

        let f0 = (c(-18) * a03.clone() * s2.clone()
            + c(6) * a13.clone() * a11.clone() * (c(3) * a01.clone() + a23.clone())
            + a23.clone()
                * (c(-18) * a01.clone() * a01.clone() - c(12) * a23.clone() * a01.clone()
                    + sq23.clone()))
            / (c(108) * s3.clone());
        let f1 = a23.clone()
            * (c(6) * a11.clone() * a13.clone()
                + a23.clone() * (a23.clone() - c(12) * a01.clone()))
            / (c(72) * s3.clone());
        let f2 = -(a23.clone()
            * (a23.clone() * (c(12) * a01.clone() + a23.clone())
                - c(6) * a11.clone() * a13.clone()))
            / (c(216) * s3.clone());
        let f3 = -cube23.clone() / (c(72) * s3.clone());
        let f4 = -cube23 / (c(216) * s3);

        Ok(Case2Params {
            a00,
            a01,
            a11,
            a03,
            a13,
            a23,
            b: [b0, b1, b2],
            f: [f0, f1, f2, f3, f4],
        })
    }

    pub fn operator(&self) -> DiffOperator<T> {
        self.third_order().operator()
    }

    pub fn third_order(&self) -> ThirdOrderParams<T> {
        let z = T::zero;
        ThirdOrderParams {
            a00: self.a00.clone(),
            a01: self.a01.clone(),
            a11: self.a11.clone(),
            a02: z(),
            a12: z(),
            a22: z(),
            a03: self.a03.clone(),
            a13: self.a13.clone(),
            a23: self.a23.clone(),
            a33: z(),
        }
    }

    /// `β_n = −a_2^{[3]} (n−1) n / (2 a_1^{[1]}) − a_0^{[1]} / a_1^{[1]}`.
    pub fn beta(&self, n: i64) -> T {
        let c = |v: i64| T::from_i64(v);
        -self.a23.clone() * c((n - 1) * n) / (c(2) * self.a11.clone())
            - self.a01.clone() / self.a11.clone()
    }

    pub fn alpha(&self, n: i64) -> T {
        let c = |v: i64| T::from_i64(v);
        let (a01, a11, a13, a23) = (&self.a01, &self.a11, &self.a13, &self.a23);
        let s2 = a11.clone() * a11.clone();
        let m = c(n - 2);
        let constant = -a13.clone() / (c(2) * a11.clone()) + a01.clone() * a23.clone() / s2.clone();
        let linear = -c(3) * a13.clone() / (c(4) * a11.clone())
            + a23.clone() * (c(9) * a01.clone() + a23.clone()) / (c(6) * s2);
        let [b0, b1, b2] = self.b.clone();
        constant
            + m.clone() * linear
            + m.clone() * m.clone() * (b0 + b1 * m.clone() + b2 * m.clone() * m)
    }

    pub fn gamma(&self, n: i64) -> T {
        let c = |v: i64| T::from_i64(v);
        let (a01, a11, a03, a13, a23) = (&self.a01, &self.a11, &self.a03, &self.a13, &self.a23);
        let s2 = a11.clone() * a11.clone();
        let s3 = s2.clone() * a11.clone();
        let m = c(n - 1);
        let constant = -(a03.clone()
            + a01.clone() * (-a11.clone() * a13.clone() + a01.clone() * a23.clone()) / s2.clone())
            / (c(3) * a11.clone());
        let linear = (s2 * a03.clone() - a01.clone() * a11.clone() * a13.clone()
            + a01.clone() * a01.clone() * a23.clone())
            / (c(2) * s3);
        let [f0, f1, f2, f3, f4] = self.f.clone();
        let mut poly = f4;
        for fi in [f3, f2, f1, f0] {
            poly = poly * m.clone() + fi;
        }
        constant - m.clone() * linear + m.clone() * m * poly
    }
}

/// Table of the case-1 family: `β_0..β_size`, `α_1..α_size`, `γ_1..γ_size`.
pub fn case1_coeffs<T: Scalar>(p: &Case1Params<T>, size: usize) -> RecurrenceTable<T> {
    RecurrenceTable::from_generators(size, |n| p.beta(n), |n| p.alpha(n), |n| p.gamma(n))
}

/// Table of the case-2 family.
pub fn case2_coeffs<T: Scalar>(p: &Case2Params<T>, size: usize) -> RecurrenceTable<T> {
    RecurrenceTable::from_generators(size, |n| p.beta(n), |n| p.alpha(n), |n| p.gamma(n))
}

/// `β_n = −12(n−1)n`, `α_n = 12(n−1)n(2n−3)²`, `γ_n = −4n(n+1)(2n−3)²(2n−1)²`.
pub fn corollary42_coeffs<T: Scalar>(size: usize) -> RecurrenceTable<T> {
    let c = |v: i64| T::from_i64(v);
    RecurrenceTable::from_generators(
        size,
        |n| c(-12 * (n - 1) * n),
        |n| c(12 * (n - 1) * n * (2 * n - 3) * (2 * n - 3)),
        |n| {
            let (a, b) = (2 * n - 3, 2 * n - 1);
            c(-4 * n * (n + 1)) * c(a * a) * c(b * b)
        },
    )
}

/// `(x−1)²/6 D³ + x/24 D + a_0^{[0]} I`.
pub fn corollary42_operator<T: Scalar>(a00: T) -> DiffOperator<T> {
    corollary42_params(a00).operator()
}

fn corollary42_params<T: Scalar>(a00: T) -> ThirdOrderParams<T> {
    let c = |v: i64| T::from_i64(v);
    ThirdOrderParams {
        a00,
        a01: c(0),
        a11: T::ratio(1, 24),
        a02: c(0),
        a12: c(0),
        a22: c(0),
        a03: c(1),
        a13: c(-2),
        a23: c(1),
        a33: c(0),
    }
}

/// A named eigenfamily with its operator and closed-form table.
#[derive(Clone, Debug, PartialEq)]
pub enum Family<T> {
    Case1(Case1Params<T>),
    Case2(Case2Params<T>),
    Corollary42 { a00: T },
}

impl<T: Scalar> Family<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Case1(_) => "case1",
            Family::Case2(_) => "case2",
            Family::Corollary42 { .. } => "corollary42",
        }
    }

    pub fn operator(&self) -> DiffOperator<T> {
        match self {
            Family::Case1(p) => p.operator(),
            Family::Case2(p) => p.operator(),
            Family::Corollary42 { a00 } => corollary42_operator(a00.clone()),
        }
    }

    pub fn table(&self, size: usize) -> RecurrenceTable<T> {
        match self {
            Family::Case1(p) => case1_coeffs(p, size),
            Family::Case2(p) => case2_coeffs(p, size),
            Family::Corollary42 { .. } => corollary42_coeffs(size),
        }
    }

    /// Recognizes the operator shape of a known family. The corollary
    /// operator is reported as such even though it is also a case-2 operator.
    pub fn detect(op: &DiffOperator<T>) -> Option<Self> {
        let p = ThirdOrderParams::from_operator(op)?;
        if p == corollary42_params(p.a00.clone()) {
            return Some(Family::Corollary42 { a00: p.a00 });
        }
        let a2_const = p.a12.is_zero() && p.a22.is_zero();
        let a3_const = p.a13.is_zero() && p.a23.is_zero() && p.a33.is_zero();
        if a2_const && a3_const {
            return Case1Params::new(p.a00, p.a01, p.a11, p.a02, p.a03)
                .ok()
                .map(Family::Case1);
        }
        if p.a2().is_zero() && p.a33.is_zero() {
            return Case2Params::new(p.a00, p.a01, p.a11, p.a03, p.a13, p.a23)
                .ok()
                .map(Family::Case2);
        }
        None
    }
}
