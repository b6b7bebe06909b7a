use std::fmt;

use num_traits::{One, Zero};

use super::poly::PolyQ;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Reduced rational function `num / den` over Q.
///
/// `gcd(num, den) = 1`, `den` is monic, and zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncQ {
    num: PolyQ,
    den: PolyQ,
}

impl RatFuncQ {
    /// Cancels the common factor and makes the denominator monic.
    pub fn reduce(num: PolyQ, den: PolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFuncQ::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lc = den.leading_coefficient().expect("nonzero").recip();
        Ok(RatFuncQ {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        RatFuncQ {
            num: PolyQ::zero(),
            den: PolyQ::one(),
        }
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RatFuncQ {
            num: p,
            den: PolyQ::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFuncQ::from_poly(PolyQ::constant(c))
    }

    pub fn numerator(&self) -> &PolyQ {
        &self.num
    }

    pub fn denominator(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the reduced denominator is the constant 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<&PolyQ> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, other: &RatFuncQ) -> RatFuncQ {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        RatFuncQ::reduce(num, den).expect("product of nonzero denominators")
    }

    pub fn mul(&self, other: &RatFuncQ) -> RatFuncQ {
        RatFuncQ::reduce(&self.num * &other.num, &self.den * &other.den)
            .expect("product of nonzero denominators")
    }

    pub fn scale(&self, c: &Rational) -> RatFuncQ {
        RatFuncQ {
            num: self.num.scale(c),
            den: if c.is_zero() {
                PolyQ::one()
            } else {
                self.den.clone()
            },
        }
    }

    pub fn neg(&self) -> RatFuncQ {
        self.scale(&-Rational::one())
    }

    /// `None` when `x` is a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
