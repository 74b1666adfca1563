//! Exact rational scalars.
//!
//! All scalars are [`BigRational`], which keeps values in lowest terms with a
//! positive denominator. This module adds the text format used by model files
//! and reports: `"p/q"`, or `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{text}`")));
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Scales a rational vector by a positive factor so that it becomes a
/// primitive integer vector (coprime entries). The zero vector maps to zeros.
pub fn primitive_integer_direction(values: &[Rational]) -> Vec<BigInt> {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v.numer() * &lcm) / v.denom())
        .collect();
    primitive(ints)
}

/// Divides an integer vector by the gcd of its entries.
pub fn primitive(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in &mut ints {
            *v /= &g;
        }
    }
    ints
}

pub fn sign(value: &Rational) -> std::cmp::Ordering {
    if value.is_positive() {
        std::cmp::Ordering::Greater
    } else if value.is_negative() {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), ratio(-1, 2));
        assert_eq!(format_rational(&ratio(6, 3)), "2");
        assert_eq!(format_rational(&ratio(-1, 3)), "-1/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn lowest_terms() {
        let v = ratio(10, -4);
        assert_eq!(v.numer(), &BigInt::from(-5));
        assert_eq!(v.denom(), &BigInt::from(2));
    }

    #[test]
    fn primitive_direction() {
        let v = primitive_integer_direction(&[ratio(1, 2), ratio(-3, 4), int(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }
}
