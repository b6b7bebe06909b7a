//! Exact moments `int_{B^{2n}(r0)} (|z_1|^2 + ... + |z_l|^2)^k dvol` over the
//! Euclidean ball, with `dvol = omega_0^n / n!` the Lebesgue measure.
//!
//! The value is `pi^n r0^{2(n+k)} S(k, l) / (2^k (n+k)!)`.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::{factorial, Rational};
use crate::combinatorics::moment_sum_closed;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallMoment {
    pub n: u32,
    pub l: u32,
    pub k: u32,
    #[serde(with = "crate::arith::serde_str")]
    pub r0: Rational,
    /// Coefficient of `pi^n * r0^{2(n+k)}`.
    #[serde(with = "crate::arith::serde_str")]
    pub coefficient: Rational,
    pub pi_exp: u32,
    pub r0_power: u32,
    /// Coefficient of `pi^n` once `r0` is substituted.
    #[serde(with = "crate::arith::serde_str")]
    pub value: Rational,
}

pub(crate) fn check_moment_params(n: u32, l: u32, k: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::out_of_range("n", n, "n >= 1"));
    }
    if l < 1 || l > n {
        return Err(Error::out_of_range("l", l, format!("1 <= l <= n = {n}")));
    }
    if k < 1 {
        return Err(Error::out_of_range("k", k, "k >= 1"));
    }
    Ok(())
}

pub fn ball_moment_coefficient(n: u32, l: u32, k: u32) -> Result<Rational> {
    check_moment_params(n, l, k)?;
    let den = (BigInt::one() << k) * factorial(n + k);
    Ok(Rational::new(moment_sum_closed(k, l)?, den))
}

pub fn ball_moment_exact(n: u32, l: u32, k: u32, r0: &Rational) -> Result<BallMoment> {
    if !r0.is_positive() {
        return Err(Error::out_of_range("r0", r0, "r0 > 0"));
    }
    let coefficient = ball_moment_coefficient(n, l, k)?;
    let r0_power = 2 * (n + k);
    let value = &coefficient * num_traits::pow(r0.clone(), r0_power as usize);
    Ok(BallMoment {
        n,
        l,
        k,
        r0: r0.clone(),
        coefficient,
        pi_exp: n,
        r0_power,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    // Polar oracles: with R^2 = sum over the first 2l real coordinates,
    // B^2: int r^{2k} 2 pi r dr = pi / (k + 1); B^4 with l = 2: vol(S^3) = 2 pi^2,
    // int r^{2k} r^3 dr = 1 / (2k + 4).
    #[test]
    fn spot_values() {
        let one = rational(1, 1);
        assert_eq!(
            ball_moment_exact(1, 1, 1, &one).unwrap().value,
            rational(1, 2)
        );
        assert_eq!(
            ball_moment_exact(2, 1, 1, &one).unwrap().value,
            rational(1, 6)
        );
        assert_eq!(
            ball_moment_exact(1, 1, 2, &one).unwrap().value,
            rational(1, 3)
        );
        for k in 1..6 {
            assert_eq!(
                ball_moment_exact(1, 1, k, &one).unwrap().value,
                rational(1, i64::from(k) + 1)
            );
            assert_eq!(
                ball_moment_exact(2, 2, k, &one).unwrap().value,
                rational(2, 2 * i64::from(k) + 4)
            );
        }
    }

    #[test]
    fn radius_scaling() {
        let m = ball_moment_exact(2, 1, 3, &rational(1, 2)).unwrap();
        assert_eq!(m.r0_power, 10);
        assert_eq!(m.value, m.coefficient / rational(1024, 1));
        assert_eq!(m.pi_exp, 2);
    }

    #[test]
    fn rejects_bad_parameters() {
        let one = rational(1, 1);
        assert!(ball_moment_exact(2, 3, 1, &one).is_err());
        assert!(ball_moment_exact(2, 0, 1, &one).is_err());
        assert!(ball_moment_exact(2, 1, 0, &one).is_err());
        assert!(ball_moment_exact(2, 1, 1, &rational(0, 1)).is_err());
        assert!(ball_moment_exact(2, 1, 1, &rational(-1, 2)).is_err());
    }
}
