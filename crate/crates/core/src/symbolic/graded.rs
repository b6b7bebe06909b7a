use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_traits::Zero;

use super::poly::PolyQ;
use super::ratfunc::RatFuncQ;
use crate::arith::Rational;

/// `sum_a f_a(x) * pi^a` with each `f_a` a reduced rational function in `x = rho^2`.
///
/// Zero components are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PiGradedValue {
    components: BTreeMap<u32, RatFuncQ>,
}

impl PiGradedValue {
    pub fn zero() -> Self {
        PiGradedValue::default()
    }

    /// `c * pi^pi_exp * x^x_exp`
    pub fn monomial(c: Rational, pi_exp: u32, x_exp: u32) -> Self {
        PiGradedValue::from_component(pi_exp, RatFuncQ::from_poly(PolyQ::monomial(c, x_exp)))
    }

    pub fn from_component(pi_exp: u32, f: RatFuncQ) -> Self {
        let mut v = PiGradedValue::zero();
        v.insert(pi_exp, f);
        v
    }

    pub fn from_components<I: IntoIterator<Item = (u32, RatFuncQ)>>(iter: I) -> Self {
        let mut v = PiGradedValue::zero();
        for (a, f) in iter {
            v = v.add(&PiGradedValue::from_component(a, f));
        }
        v
    }

    fn insert(&mut self, pi_exp: u32, f: RatFuncQ) {
        if f.is_zero() {
            self.components.remove(&pi_exp);
        } else {
            self.components.insert(pi_exp, f);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, pi_exp: u32) -> Option<&RatFuncQ> {
        self.components.get(&pi_exp)
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &RatFuncQ)> {
        self.components.iter().map(|(&a, f)| (a, f))
    }

    pub fn add(&self, other: &PiGradedValue) -> PiGradedValue {
        let mut out = self.clone();
        for (a, f) in other.components() {
            let sum = match out.components.get(&a) {
                Some(g) => g.add(f),
                None => f.clone(),
            };
            out.insert(a, sum);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> PiGradedValue {
        if c.is_zero() {
            return PiGradedValue::zero();
        }
        PiGradedValue {
            components: self
                .components
                .iter()
                .map(|(&a, f)| (a, f.scale(c)))
                .collect(),
        }
    }

    pub fn neg(&self) -> PiGradedValue {
        PiGradedValue {
            components: self.components.iter().map(|(&a, f)| (a, f.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &PiGradedValue) -> PiGradedValue {
        self.add(&other.neg())
    }

    /// Substitutes `x = 0`; `None` if some component has a pole there.
    pub fn at_x_zero(&self) -> Option<PiGradedValue> {
        let mut out = PiGradedValue::zero();
        for (a, f) in self.components() {
            out.insert(a, RatFuncQ::constant(f.eval(&Rational::zero())?));
        }
        Some(out)
    }

    /// Numeric value with `pi` and the given `x`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.components()
            .map(|(a, f)| f.eval_f64(x) * PI.powi(a as i32))
            .sum()
    }
}

/// `(f_a) * pi^a + ...` in increasing `a`.
impl fmt::Display for PiGradedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (a, c)) in self.components().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match a {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*pi")?,
                _ => write!(f, "({c})*pi^{a}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    #[test]
    fn components_cancel_to_zero() {
        let v = PiGradedValue::monomial(rational(1, 2), 1, 0);
        let w = v.add(&PiGradedValue::monomial(rational(-1, 2), 1, 0));
        assert!(w.is_zero());
        assert_eq!(w, PiGradedValue::zero());
        assert!(v.scale(&rational(0, 1)).is_zero());
    }

    #[test]
    fn numeric_value() {
        let v = PiGradedValue::monomial(rational(1, 2), 2, 1).add(&PiGradedValue::monomial(
            rational(3, 1),
            0,
            0,
        ));
        assert!((v.eval_f64(0.5) - (0.25 * PI * PI + 3.0)).abs() < 1e-12);
        assert_eq!(v.to_string(), "(3) + (1/2*x)*pi^2");
        assert_eq!(
            v.at_x_zero().unwrap(),
            PiGradedValue::monomial(rational(3, 1), 0, 0)
        );
    }
}
