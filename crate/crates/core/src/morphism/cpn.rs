//! Values on the block-unitary classes of `CP^n` and of its one-point blow-up.
//!
//! On `CP^n` the value is `q(n, k) * pi^k / k!` with
//! `q(n, k) = n! k! C(2k - 1, k) / (n + k)!`, modulo `<pi^k / k!>`. On the
//! blow-up of weight `rho` (with `x = rho^2`) it is
//! `q(n, k) / k! * (1 - x^{n+k}) / (1 - x^n) * pi^k` modulo
//! `<pi^k / k!, pi^k x^k / k!>`.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::{check_degree_range, CosetValue};
use crate::arith::{binomial, factorial, Rational};
use crate::combinatorics::moment_sum_bruteforce;
use crate::error::{Error, Result};
use crate::symbolic::{
    lattice_order, Generator, Lattice, OrderResult, PiGradedValue, PolyQ, RatFuncQ,
};

/// `q(n, k) = n! k! C(2k - 1, k) / (n + k)!`
pub fn cpn_coefficient(n: u32, k: u32) -> Result<Rational> {
    check_degree_range(n, k)?;
    let num = factorial(n) * factorial(k) * binomial(u64::from(2 * k - 1), u64::from(k));
    Ok(Rational::new(num, factorial(n + k)))
}

/// `q(n, k)` before simplification: `n! / ((n + k)! 2^k) * S(k, k)` with the
/// multi-index sum evaluated by enumeration.
pub fn cpn_weinstein_raw(n: u32, k: u32) -> Result<Rational> {
    check_degree_range(n, k)?;
    let den = factorial(n + k) * (BigInt::one() << k);
    Ok(Rational::new(
        factorial(n) * moment_sum_bruteforce(k, k)?,
        den,
    ))
}

/// `<pi^k / k!>`
pub fn cpn_lattice(k: u32) -> Lattice {
    let g = Generator::new(Rational::new(BigInt::one(), factorial(k)), k, 0);
    Lattice::new([g]).expect("nonzero generator")
}

/// `base + <pi^k x^k / k!>`
pub fn blowup_lattice(base: &Lattice, k: u32) -> Lattice {
    let g = Generator::new(Rational::new(BigInt::one(), factorial(k)), k, k);
    base.sum(&Lattice::new([g]).expect("nonzero generator"))
}

#[derive(Clone, Debug, Serialize)]
pub struct CpnWeinstein {
    pub n: u32,
    pub k: u32,
    /// Multiple of `pi^k / k!`.
    #[serde(with = "crate::arith::serde_str")]
    pub q: Rational,
    #[serde(with = "crate::arith::serde_str")]
    pub raw_q: Rational,
    pub coset: CosetValue,
}

/// Closed form and multi-index form, required to agree.
pub fn cpn_weinstein(n: u32, k: u32) -> Result<CpnWeinstein> {
    let q = cpn_coefficient(n, k)?;
    let raw_q = cpn_weinstein_raw(n, k)?;
    if q != raw_q {
        return Err(Error::OracleMismatch(format!(
            "q({n},{k}): closed form {q} vs multi-index sum {raw_q}"
        )));
    }
    let value = PiGradedValue::monomial(&q / Rational::from_integer(factorial(k)), k, 0);
    Ok(CpnWeinstein {
        n,
        k,
        q,
        raw_q,
        coset: CosetValue::new(value, cpn_lattice(k)),
    })
}

/// A computed result that conflicts with a published claim about it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub code: &'static str,
    pub message: String,
}

pub const FLAG_TOP_DEGREE_FINITE: &str = "blowup_top_degree_finite_order";

#[derive(Clone, Debug, Serialize)]
pub struct BlowupWeinstein {
    pub n: u32,
    pub k: u32,
    #[serde(with = "crate::arith::serde_str")]
    pub q: Rational,
    pub coset: CosetValue,
    pub order: OrderResult,
    pub flags: Vec<Flag>,
}

/// `q(n, k) / k! * (1 - x^{n+k}) / (1 - x^n)` in the `pi^k` component.
pub fn blowup_value(n: u32, k: u32) -> Result<PiGradedValue> {
    let q = cpn_weinstein(n, k)?.q;
    let scale = q / Rational::from_integer(factorial(k));
    let f = RatFuncQ::reduce(
        PolyQ::one_minus_power(n + k).scale(&scale),
        PolyQ::one_minus_power(n),
    )?;
    Ok(PiGradedValue::from_component(k, f))
}

pub fn blowup_weinstein(n: u32, k: u32) -> Result<BlowupWeinstein> {
    let q = cpn_coefficient(n, k)?;
    let value = blowup_value(n, k)?;
    let lattice = blowup_lattice(&cpn_lattice(k), k);
    let order = lattice_order(&value, &lattice);
    let mut flags = Vec::new();
    if !order.is_infinite() {
        flags.push(Flag {
            code: FLAG_TOP_DEGREE_FINITE,
            message: format!(
                "order {order} at k = n = {n}: infinite order is expected for every \
                 1 <= k <= n, but under the monomial-independence model this value is torsion"
            ),
        });
    }
    Ok(BlowupWeinstein {
        n,
        k,
        q,
        coset: CosetValue::new(value, lattice),
        order,
        flags,
    })
}

pub fn blowup_order(n: u32, k: u32) -> Result<OrderResult> {
    Ok(blowup_weinstein(n, k)?.order)
}
