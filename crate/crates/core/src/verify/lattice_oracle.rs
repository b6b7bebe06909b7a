//! Bounded brute-force search over integer coefficient vectors, used to check
//! the lattice membership and order decisions on small random instances.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::arith::Rational;
use crate::symbolic::{Generator, Lattice, PiGradedValue, PolyQ, RatFuncQ};

/// Half-width of the coefficient box for one, two and three generators;
/// each box has about four million points and contains `[-50, 50]^r`.
pub const COEFF_BOX: [i64; 3] = [2_000_000, 1_000, 80];
/// Smallest box the search is ever run on.
pub const NARROW_BOX: i64 = 50;
pub const MAX_MULTIPLE: i64 = 10_000;

#[derive(Clone, Debug)]
pub struct Instance {
    pub generators: Vec<Generator>,
    pub value: PiGradedValue,
}

impl Instance {
    pub fn lattice(&self) -> Lattice {
        Lattice::new(self.generators.iter().cloned()).expect("nonzero generators")
    }
}

/// Outcome of the box search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub member: bool,
    /// Least `m` in `1..=MAX_MULTIPLE` with `m * value` hit by the box, if any.
    pub least_multiple: Option<i64>,
}

fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(1..=20i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new(BigInt::from(num), BigInt::from(rng.gen_range(1..=20i64)))
}

/// One to three generators with numerators and denominators bounded by 20 on
/// monomials `pi^a x^b`, `a, b` in `{0, 1}`; the value is a small integer
/// combination plus one of: nothing, a fraction of a generator, an
/// off-support monomial, or a non-polynomial term.
pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    let count = rng.gen_range(1..=3);
    let generators: Vec<Generator> = (0..count)
        .map(|_| {
            Generator::new(
                small_rational(rng),
                rng.gen_range(0..2),
                rng.gen_range(0..2),
            )
        })
        .collect();
    let mut value = PiGradedValue::zero();
    for g in &generators {
        let c = Rational::from_integer(BigInt::from(rng.gen_range(-4..=4i64)));
        value = value.add(&g.to_value().scale(&c));
    }
    let perturbation = match rng.gen_range(0..4) {
        0 => PiGradedValue::zero(),
        1 => {
            let g = &generators[rng.gen_range(0..generators.len())];
            let q = rng.gen_range(2..=6i64);
            let p = rng.gen_range(1..q);
            g.to_value()
                .scale(&Rational::new(BigInt::from(p), BigInt::from(q)))
        }
        2 => PiGradedValue::monomial(
            small_rational(rng),
            rng.gen_range(0..3),
            rng.gen_range(0..3),
        ),
        _ => {
            let den = PolyQ::from_terms([
                (0, Rational::one()),
                (
                    1,
                    Rational::from_integer(BigInt::from(rng.gen_range(1..=3i64))),
                ),
            ]);
            let f = RatFuncQ::reduce(PolyQ::constant(small_rational(rng)), den)
                .expect("nonzero denominator");
            PiGradedValue::from_component(rng.gen_range(0..2), f)
        }
    };
    Instance {
        generators,
        value: value.add(&perturbation),
    }
}

/// Searches `n in [-B, B]^r`, `B = COEFF_BOX[r - 1]`, for `sum n_i g_i = m * value`,
/// `1 <= m <= MAX_MULTIPLE`, over a common integer denominator.
pub fn box_search(instance: &Instance) -> SearchOutcome {
    box_search_within(instance, COEFF_BOX[instance.generators.len() - 1])
}

/// As [`box_search`] with an explicit half-width.
pub fn box_search_within(instance: &Instance, bound: i64) -> SearchOutcome {
    let none = SearchOutcome {
        member: false,
        least_multiple: None,
    };
    let mut value_terms = Vec::new();
    for (a, f) in instance.value.components() {
        // integer combinations of monomials are polynomials
        let Some(poly) = f.as_polynomial() else {
            return none;
        };
        value_terms.extend(poly.terms().map(|(b, c)| ((a, b), c.clone())));
    }
    if value_terms.is_empty() {
        return SearchOutcome {
            member: true,
            least_multiple: Some(1),
        };
    }

    let monomials: Vec<(u32, u32)> = instance
        .generators
        .iter()
        .map(Generator::monomial)
        .chain(value_terms.iter().map(|(m, _)| *m))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index = |m: (u32, u32)| monomials.iter().position(|&x| x == m).expect("listed");
    let common = instance
        .generators
        .iter()
        .map(|g| g.coeff.denom().clone())
        .chain(value_terms.iter().map(|(_, c)| c.denom().clone()))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let scaled = |c: &Rational| -> i64 {
        (c * Rational::from_integer(common.clone()))
            .to_integer()
            .to_i64()
            .expect("small instance")
    };

    let width = monomials.len();
    let gens: Vec<Vec<i64>> = instance
        .generators
        .iter()
        .map(|g| {
            let mut v = vec![0i64; width];
            v[index(g.monomial())] = scaled(&g.coeff);
            v
        })
        .collect();
    let mut target = vec![0i64; width];
    for (m, c) in &value_terms {
        target[index(*m)] = scaled(c);
    }
    let pivot = target.iter().position(|&t| t != 0).expect("nonzero value");

    let mut best: Option<i64> = None;
    let mut partial = vec![0i64; width];
    scan(&gens, bound, &target, pivot, &mut partial, &mut best);
    SearchOutcome {
        member: best == Some(1),
        least_multiple: best,
    }
}

/// Walks the box one generator at a time, keeping the running combination in
/// `partial` and recording the least hit multiple in `best`.
fn scan(
    gens: &[Vec<i64>],
    bound: i64,
    target: &[i64],
    pivot: usize,
    partial: &mut [i64],
    best: &mut Option<i64>,
) {
    let Some((g, rest)) = gens.split_first() else {
        if partial[pivot] % target[pivot] != 0 {
            return;
        }
        let m = partial[pivot] / target[pivot];
        if !(1..=MAX_MULTIPLE).contains(&m) || best.is_some_and(|b| m >= b) {
            return;
        }
        if partial.iter().zip(target).all(|(c, t)| *c == m * t) {
            *best = Some(m);
        }
        return;
    };
    for (c, gv) in partial.iter_mut().zip(g) {
        *c -= bound * gv;
    }
    for step in 0..=2 * bound {
        if step > 0 {
            for (c, gv) in partial.iter_mut().zip(g) {
                *c += gv;
            }
        }
        scan(rest, bound, target, pivot, partial, best);
    }
    for (c, gv) in partial.iter_mut().zip(g) {
        *c -= bound * gv;
    }
}
