use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, rational_to_f64, Rational};
use crate::error::{Error, Result};

/// Sparse univariate polynomial over Q in the formal variable `x`.
///
/// Zero coefficients are never stored; the zero polynomial has no terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyQ {
    terms: BTreeMap<u32, Rational>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ::default()
    }

    pub fn one() -> Self {
        PolyQ::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PolyQ::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        PolyQ { terms }
    }

    /// `1 - x^exp`
    pub fn one_minus_power(exp: u32) -> Self {
        PolyQ::one() - PolyQ::monomial(Rational::one(), exp)
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Rational)>>(terms: I) -> Self {
        let mut p = PolyQ::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    pub fn coefficient(&self, exp: u32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn scale(&self, c: &Rational) -> PolyQ {
        if c.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Scaled so the leading coefficient is one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> PolyQ {
        match self.leading_coefficient() {
            Some(lc) => self.scale(&lc.recip()),
            None => PolyQ::zero(),
        }
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &PolyQ) -> Result<(PolyQ, PolyQ)> {
        let d_deg = divisor.degree().ok_or(Error::ZeroDenominator)?;
        let d_lc = divisor.leading_coefficient().expect("nonzero").clone();
        let mut quotient = PolyQ::zero();
        let mut rem = self.clone();
        while let Some(r_deg) = rem.degree() {
            if r_deg < d_deg {
                break;
            }
            let factor = rem.leading_coefficient().expect("nonzero") / &d_lc;
            let shift = r_deg - d_deg;
            for (e, c) in divisor.terms() {
                rem.add_term(e + shift, -(c * &factor));
            }
            quotient.add_term(shift, factor);
        }
        Ok((quotient, rem))
    }

    pub fn div_exact(&self, divisor: &PolyQ) -> Result<PolyQ> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b nonzero");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner over the sparse exponents, highest first
        let mut acc = Rational::zero();
        let mut prev: Option<u32> = None;
        for (e, c) in self.terms().rev() {
            if let Some(p) = prev {
                acc *= num_traits::pow(x.clone(), (p - e) as usize);
            }
            acc += c;
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc *= num_traits::pow(x.clone(), p as usize);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms()
            .map(|(e, c)| rational_to_f64(c) * x.powi(e as i32))
            .sum()
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        let mut out = PolyQ::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for PolyQ {
            type Output = PolyQ;
            fn $m(self, rhs: PolyQ) -> PolyQ {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        -&self
    }
}

/// Descending powers, e.g. `1/3*x^2 + 1/3*x - 1`.
impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let body = match e {
                0 => format_rational(&magnitude),
                _ => {
                    let var = if e == 1 {
                        "x".to_string()
                    } else {
                        format!("x^{e}")
                    };
                    if magnitude.is_one() {
                        var
                    } else {
                        format!("{}*{var}", format_rational(&magnitude))
                    }
                }
            };
            f.write_str(&body)?;
        }
        Ok(())
    }
}
