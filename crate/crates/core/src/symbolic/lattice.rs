//! Period lattices spanned by monomials `c * pi^a * x^b` and the exact
//! membership and order decisions in the quotient `R / lattice`.
//!
//! The monomials `pi^a x^b` are taken to be linearly independent over Q (pi
//! transcendental, `x = rho^2` with rho transcendental and algebraically
//! independent of pi). Under that model a value lies in the lattice iff every
//! component is a polynomial and each monomial coefficient is an integer
//! multiple of the cyclic generator collected at that monomial.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::graded::PiGradedValue;
use crate::arith::{format_rational, Rational};
use crate::error::{Error, Result};

/// `coeff * pi^pi_exp * x^x_exp`
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    #[serde(with = "crate::arith::serde_str")]
    pub coeff: Rational,
    pub pi_exp: u32,
    pub x_exp: u32,
}

impl Generator {
    pub fn new(coeff: Rational, pi_exp: u32, x_exp: u32) -> Self {
        Generator {
            coeff,
            pi_exp,
            x_exp,
        }
    }

    pub fn monomial(&self) -> (u32, u32) {
        (self.pi_exp, self.x_exp)
    }

    pub fn to_value(&self) -> PiGradedValue {
        PiGradedValue::monomial(self.coeff.clone(), self.pi_exp, self.x_exp)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.coeff))?;
        match self.pi_exp {
            0 => {}
            1 => f.write_str("*pi")?,
            a => write!(f, "*pi^{a}")?,
        }
        match self.x_exp {
            0 => Ok(()),
            1 => f.write_str("*x"),
            b => write!(f, "*x^{b}"),
        }
    }
}

/// Positive `g` with `Z g = Z v_1 + ... + Z v_r`.
pub fn rational_gcd(values: &[Rational]) -> Result<Rational> {
    if values.is_empty() {
        return Err(Error::EmptyGcdInput);
    }
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values {
        if v.is_zero() {
            return Err(Error::ZeroGcdInput);
        }
        // inputs are reduced, so gcd(a/b, c/d) = gcd(a, c) / lcm(b, d)
        num = num.gcd(v.numer());
        den = den.lcm(v.denom());
    }
    Ok(Rational::new(num, den))
}

/// Z-module spanned by monomial generators.
///
/// The generator list is kept as supplied (signs made positive, duplicates
/// removed); generators sharing a monomial are also collapsed to their
/// rational gcd, which is what every decision uses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lattice {
    generators: Vec<Generator>,
    cyclic: BTreeMap<(u32, u32), Rational>,
}

impl Lattice {
    pub fn new<I: IntoIterator<Item = Generator>>(generators: I) -> Result<Self> {
        let mut lattice = Lattice::default();
        for g in generators {
            lattice.push(g)?;
        }
        Ok(lattice)
    }

    pub fn empty() -> Self {
        Lattice::default()
    }

    fn push(&mut self, mut g: Generator) -> Result<()> {
        if g.coeff.is_zero() {
            return Err(Error::ZeroGcdInput);
        }
        g.coeff = g.coeff.abs();
        if self.generators.contains(&g) {
            return Ok(());
        }
        let key = g.monomial();
        let collapsed = match self.cyclic.get(&key) {
            Some(existing) => rational_gcd(&[existing.clone(), g.coeff.clone()])?,
            None => g.coeff.clone(),
        };
        self.cyclic.insert(key, collapsed);
        self.generators.push(g);
        Ok(())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Cyclic generator at a monomial, if any generator lives there.
    pub fn cyclic_generator(&self, pi_exp: u32, x_exp: u32) -> Option<&Rational> {
        self.cyclic.get(&(pi_exp, x_exp))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut out = self.clone();
        for g in &other.generators {
            out.push(g.clone()).expect("generators are nonzero");
        }
        out
    }

    /// True when every generator of `sub` lies in `self`.
    pub fn contains_lattice(&self, sub: &Lattice) -> std::result::Result<(), Generator> {
        match sub
            .generators
            .iter()
            .find(|g| !lattice_member(&g.to_value(), self))
        {
            Some(g) => Err(g.clone()),
            None => Ok(()),
        }
    }

    /// Representative of `value` modulo the lattice with every supported
    /// monomial coefficient reduced into `[0, g)`; other parts are untouched.
    pub fn reduce_representative(&self, value: &PiGradedValue) -> PiGradedValue {
        let mut out = value.clone();
        for (a, f) in value.components() {
            let Some(poly) = f.as_polynomial() else {
                continue;
            };
            for (b, c) in poly.terms() {
                if let Some(g) = self.cyclic_generator(a, b) {
                    let shift = (c / g).floor() * g;
                    if !shift.is_zero() {
                        out = out.sub(&PiGradedValue::monomial(shift, a, b));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

/// `a` and `b` concatenated and deduplicated.
pub fn lattice_sum(a: &Lattice, b: &Lattice) -> Lattice {
    a.sum(b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The `pi^pi_exp` component has a nontrivial reduced denominator.
    NonPolynomial { pi_exp: u32 },
    /// A monomial carries a nonzero coefficient but no generator.
    OffSupport { pi_exp: u32, x_exp: u32 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NonPolynomial { pi_exp } => {
                write!(f, "component of pi^{pi_exp} is not a polynomial in x")
            }
            Witness::OffSupport { pi_exp, x_exp } => {
                write!(f, "monomial pi^{pi_exp}*x^{x_exp} has no lattice generator")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Finite(BigUint),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderResult {
    pub kind: OrderKind,
    pub witness: Option<Witness>,
}

impl OrderResult {
    pub fn finite(m: impl Into<BigUint>) -> Self {
        OrderResult {
            kind: OrderKind::Finite(m.into()),
            witness: None,
        }
    }

    pub fn infinite(witness: Witness) -> Self {
        OrderResult {
            kind: OrderKind::Infinite,
            witness: Some(witness),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.kind == OrderKind::Infinite
    }

    pub fn finite_order(&self) -> Option<&BigUint> {
        match &self.kind {
            OrderKind::Finite(m) => Some(m),
            OrderKind::Infinite => None,
        }
    }

    /// The coset is zero exactly when the order is one.
    pub fn is_trivial(&self) -> bool {
        self.finite_order().is_some_and(|m| m.is_one())
    }
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            OrderKind::Finite(m) => write!(f, "Finite({m})"),
            OrderKind::Infinite => f.write_str("Infinite"),
        }
    }
}

impl Serialize for OrderResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OrderResult", 3)?;
        match &self.kind {
            OrderKind::Finite(m) => {
                st.serialize_field("kind", "finite")?;
                st.serialize_field("order", &m.to_string())?;
            }
            OrderKind::Infinite => {
                st.serialize_field("kind", "infinite")?;
                st.serialize_field("order", &Option::<String>::None)?;
            }
        }
        st.serialize_field("witness", &self.witness.as_ref().map(|w| w.to_string()))?;
        st.end()
    }
}

/// Least `m >= 1` with `m * value` in the lattice, or `Infinite`.
pub fn lattice_order(value: &PiGradedValue, lattice: &Lattice) -> OrderResult {
    let mut order = BigUint::one();
    for (a, f) in value.components() {
        let Some(poly) = f.as_polynomial() else {
            return OrderResult::infinite(Witness::NonPolynomial { pi_exp: a });
        };
        for (b, c) in poly.terms() {
            let Some(g) = lattice.cyclic_generator(a, b) else {
                return OrderResult::infinite(Witness::OffSupport {
                    pi_exp: a,
                    x_exp: b,
                });
            };
            let ratio = c / g;
            let den = ratio.denom().magnitude();
            order = order.lcm(den);
        }
    }
    OrderResult::finite(order)
}

/// Whether `value` is an integer combination of the lattice generators.
pub fn lattice_member(value: &PiGradedValue, lattice: &Lattice) -> bool {
    lattice_order(value, lattice).is_trivial()
}
