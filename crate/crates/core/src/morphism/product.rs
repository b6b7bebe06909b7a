use num_bigint::BigInt;

use super::descriptor::ManifoldDescriptor;
use super::CosetValue;
use crate::arith::{factorial, Rational};
use crate::error::{Error, Result};
use crate::symbolic::{lattice_sum, Generator, Lattice, PiGradedValue};

/// A value in `R / lattice` attached to a class in `pi_{degree}(Ham)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClass {
    /// Odd homotopy degree `2k - 1`.
    pub degree: u32,
    pub value: PiGradedValue,
    pub lattice: Lattice,
}

/// `[a] + [b]` in `R / full_lattice`, after checking that `full_lattice`
/// contains both factor lattices.
pub fn product_value(
    a: &GradedClass,
    b: &GradedClass,
    full_lattice: &Lattice,
) -> Result<CosetValue> {
    if a.degree != b.degree {
        return Err(Error::DegreeMismatch {
            left: a.degree,
            right: b.degree,
        });
    }
    let factors = lattice_sum(&a.lattice, &b.lattice);
    full_lattice
        .contains_lattice(&factors)
        .map_err(|g| Error::LatticeNotContained(g.to_string()))?;
    Ok(CosetValue::new(a.value.add(&b.value), full_lattice.clone()))
}

/// Generators of `P_{2k}(CP^n x M)`: `pi^k / k!` and `pi^{k-j} / (k-j)! * p`
/// for each `p` generating `P_{2j}(M)`, `1 <= j <= k`.
pub fn product_cpn_lattice(n: u32, k: u32, m_desc: &ManifoldDescriptor) -> Result<Lattice> {
    let m = m_desc.half_dimension();
    let bound = n.min(m);
    if k < 1 || k > bound {
        return Err(Error::out_of_range(
            "k",
            k,
            format!("1 <= k <= min(n, dim M / 2) = min({n}, {m})"),
        ));
    }
    let mut gens = vec![Generator::new(
        Rational::new(BigInt::from(1), factorial(k)),
        k,
        0,
    )];
    for j in 1..=k {
        let scale = Rational::new(BigInt::from(1), factorial(k - j));
        for p in m_desc.periods_in_degree(2 * j) {
            gens.push(Generator::new(p * &scale, k - j, 0));
        }
    }
    Lattice::new(gens)
}
