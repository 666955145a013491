//! Scalar abstraction shared by every polynomial and operator type.
//!
//! All algorithms are written against [`Scalar`]. The exact instantiation is
//! [`Rational`]; `f64`/`f32` are supported for quick numeric experiments, but
//! every equality test in this crate is exact, so floating-point scalars only
//! give meaningful verdicts on small integer data.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

/// Arbitrary-precision reduced fraction with positive denominator.
pub type Rational = BigRational;

/// Field-like scalar usable as a polynomial coefficient.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// Embeds an integer into the scalar type.
    fn from_bigint(n: BigInt) -> Self;

    /// Exact rational value, when representable.
    fn to_rational(&self) -> Option<Rational>;

    fn from_i64(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    fn from_usize(n: usize) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    /// `num / den`; `den` must be nonzero.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl Scalar for BigRational {
    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Scalar for f64 {
    fn from_bigint(n: BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Rational::from_float(*self)
    }
}

impl Scalar for f32 {
    fn from_bigint(n: BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }

    fn to_rational(&self) -> Option<Rational> {
        Rational::from_float(*self)
    }
}

/// Exact binomial coefficient C(n, k) as a big integer; zero when k > n.
pub fn binomial_int(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// C(n, k) embedded in the scalar type.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    T::from_bigint(BigInt::from(binomial_int(n, k)))
}

/// n! embedded in the scalar type.
pub fn factorial<T: Scalar>(n: usize) -> T {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    T::from_bigint(BigInt::from(acc))
}

/// Parses `"p/q"` or `"p"` (optional surrounding whitespace) into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let parse_int = |s: &str| -> Result<BigInt, String> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| format!("invalid integer `{s}` in rational `{text}`"))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(format!("zero denominator in `{text}`"));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(text)?)),
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, q > 0.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rational `num / den` from machine integers.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::ratio(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_match_pascal() {
        let mut row = vec![BigUint::one()];
        for n in 1..40usize {
            let mut next = vec![BigUint::one(); n + 1];
            for k in 1..n {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial_int(n, k), v, "C({n},{k})");
            }
        }
        assert!(binomial_int(3, 5).is_zero());
    }

    #[test]
    fn rational_text_roundtrip() {
        let r = parse_rational("-6/8").unwrap();
        assert_eq!(format_rational(&r), "-3/4");
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("0/5").unwrap()), "0");
        assert_eq!(format_rational(&parse_rational("3/-4").unwrap()), "-3/4");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = parse_rational("0/7").unwrap();
        assert!(z.numer().is_zero());
        assert!(z.denom().is_one());
    }
}
