//! Exact integer and rational arithmetic.
//!
//! Rationals are `num_rational::BigRational`, which is always kept reduced
//! with a positive denominator. This module adds the factorial family and the
//! textual `p/q` / decimal forms used at every I/O boundary.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `n!`
pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(2i - 1)!! = 1 * 3 * ... * (2i - 1)`, with the value 1 at `i = 0`.
pub fn double_factorial_odd(i: u32) -> BigInt {
    (1..=i).fold(BigInt::one(), |acc, j| acc * (2 * j - 1))
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by i + 1 here
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `k! / (parts_1! * ... * parts_r!)`.
pub fn multinomial(k: u32, parts: &[u32]) -> Result<BigInt> {
    let total: u64 = parts.iter().map(|&p| u64::from(p)).sum();
    if total != u64::from(k) {
        return Err(Error::PartsSumMismatch {
            expected: k,
            actual: total,
        });
    }
    let den = parts
        .iter()
        .fold(BigInt::one(), |acc, &p| acc * factorial(p));
    Ok(factorial(k) / den)
}

pub fn rational_from_int<T: Into<BigInt>>(v: T) -> Rational {
    Rational::from_integer(v.into())
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or an exact decimal such as `"-0.125"` / `"2.5e-3"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::RationalSyntax(text.to_string());
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = parse_int(p).ok_or_else(bad)?;
        let den: BigInt = parse_int(q).ok_or_else(bad)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s).ok_or_else(bad)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.strip_prefix('+').unwrap_or(s).parse().ok()
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        Rational::from_integer(digits * Pow::pow(&ten, scale as u32))
    } else {
        Rational::new(digits, Pow::pow(&ten, scale.unsigned_abs()))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator out of f64 range: scale both down
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let num = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let den = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        num / den
    })
}

/// Non-negative gcd of two integers.
pub fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn int_lcm(a: &BigUint, b: &BigUint) -> BigUint {
    a.lcm(b)
}

/// Floor of a rational as an integer.
pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Serde adapter writing a rational as its `p/q` string.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), big(1));
        assert_eq!(factorial(5), big(120));
        let mut oracle = 1u64;
        for i in 1..=12 {
            oracle *= i;
        }
        assert_eq!(oracle, 479_001_600);
        assert_eq!(factorial(12), big(oracle));
        // no cap: 30! overflows u64 and i128 comfortably fits it but 40! does not
        assert_eq!(
            factorial(40).to_string(),
            "815915283247897734345611269596115894272000000000"
        );
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial_odd(0), big(1));
        assert_eq!(double_factorial_odd(2), big(3));
        let oracle: u64 = [1, 3, 5, 7, 9].iter().product();
        assert_eq!(double_factorial_odd(5), big(oracle));
        assert_eq!(oracle, 945);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(3, 2), big(3));
        assert_eq!(binomial(7, 0), big(1));
        assert_eq!(binomial(2, 5), big(0));
        // Pascal's triangle oracle
        let mut row = vec![1u64];
        for _ in 0..10 {
            let mut next = vec![1u64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        assert_eq!(row[5], 252);
        for (k, v) in row.iter().enumerate() {
            assert_eq!(binomial(10, k as u64), big(*v));
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(2, &[1, 1, 0, 0]).unwrap(), big(2));
        assert_eq!(multinomial(2, &[2, 0, 0, 0]).unwrap(), big(1));
        assert_eq!(multinomial(4, &[2, 1, 1]).unwrap(), big(24 / 2));
        assert!(matches!(
            multinomial(3, &[1, 1]),
            Err(Error::PartsSumMismatch {
                expected: 3,
                actual: 2
            })
        ));
    }

    #[test]
    fn rational_text_forms() {
        assert_eq!(format_rational(&rational(1, 3)), "1/3");
        assert_eq!(format_rational(&rational(-7, 2)), "-7/2");
        assert_eq!(format_rational(&rational(4, 2)), "2");
        assert_eq!(format_rational(&rational(0, 5)), "0");
        assert_eq!(parse_rational("6/-4").unwrap(), rational(-3, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rational(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rational(-3, 2));
        assert_eq!(parse_rational(".5").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("2.5e-3").unwrap(), rational(1, 400));
        assert_eq!(parse_rational("3E2").unwrap(), rational(300, 1));
        assert!(matches!(parse_rational("1/0"), Err(Error::ZeroDenominator)));
        for bad in ["", "abc", "1/2/3", "1.2.3", "--1", "pi", "sqrt(2)", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    proptest! {
        #[test]
        fn double_factorial_identity(i in 0u32..40) {
            let lhs = double_factorial_odd(i) * BigInt::from(2u32).pow(i) * factorial(i);
            prop_assert_eq!(lhs, factorial(2 * i));
        }

        #[test]
        fn multinomial_permutation_invariant(parts in prop::collection::vec(0u32..6, 1..6), seed in any::<u64>()) {
            let k: u32 = parts.iter().sum();
            let mut shuffled = parts.clone();
            // deterministic rotation + reversal driven by the seed
            let len = shuffled.len();
            shuffled.rotate_left((seed as usize) % len);
            if seed & 1 == 1 {
                shuffled.reverse();
            }
            prop_assert_eq!(multinomial(k, &parts).unwrap(), multinomial(k, &shuffled).unwrap());
        }

        #[test]
        fn rational_arithmetic_is_canonical(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
            let x = rational(a, b);
            let y = rational(c, d);
            let sum = &x + &y;
            prop_assert!(sum.denom().is_positive());
            prop_assert_eq!(sum.numer().gcd(sum.denom()), if sum.is_zero() { sum.denom().clone() } else { BigInt::one() });
            prop_assert_eq!(&sum - &y, x.clone());
            prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
    }
}
