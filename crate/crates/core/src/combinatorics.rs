//! Compositions of an integer into a fixed number of nonnegative parts and the
//! double-factorial moment sums indexed by them.
//!
//! For `k >= 1` and `l >= 1` the moment sum is
//!
//! ```text
//! S(k, l) = sum over (i_1, ..., i_2l), i_1 + ... + i_2l = k, of
//!           k! / (i_1! ... i_2l!) * (2 i_1 - 1)!! ... (2 i_2l - 1)!!
//! ```
//!
//! which equals `2^k k! C(k + l - 1, k)`. Both evaluations are provided; the
//! brute-force one is the oracle for the closed form.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, double_factorial_odd, factorial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    parts: Vec<u32>,
    weight: u32,
}

impl MultiIndex {
    pub fn new(parts: Vec<u32>) -> Self {
        let weight = parts.iter().sum();
        MultiIndex { parts, weight }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn slots(&self) -> usize {
        self.parts.len()
    }
}

/// Lazily yields every composition of `weight` into `slots` nonnegative
/// parts, in decreasing lexicographic order: `(weight, 0, ..., 0)` first and
/// `(0, ..., 0, weight)` last.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Compositions {
    fn advance(parts: &mut [u32]) -> bool {
        let last = parts.len() - 1;
        let tail = parts[last];
        parts[last] = 0;
        match parts[..last].iter().rposition(|&p| p > 0) {
            Some(i) => {
                parts[i] -= 1;
                parts[i + 1] = tail + 1;
                true
            }
            None => false,
        }
    }
}

impl Iterator for Compositions {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let parts = self.current.as_mut()?;
        let out = MultiIndex::new(parts.clone());
        if !Self::advance(parts) {
            self.current = None;
        }
        Some(out)
    }
}

pub fn enumerate_compositions(weight: u32, slots: usize) -> Result<Compositions> {
    if slots == 0 {
        return Err(Error::out_of_range("slots", slots, "slots >= 1"));
    }
    let mut first = vec![0; slots];
    first[0] = weight;
    Ok(Compositions {
        current: Some(first),
    })
}

/// Number of compositions of `weight` into `slots` parts, `C(weight + slots - 1, slots - 1)`.
pub fn composition_count(weight: u32, slots: usize) -> BigInt {
    binomial(u64::from(weight) + slots as u64 - 1, slots as u64 - 1)
}

/// Factorial and double-factorial tables for the summand of `S(k, l)`.
struct SummandTables {
    k_factorial: BigInt,
    factorials: Vec<BigInt>,
    odd_double_factorials: Vec<BigInt>,
}

impl SummandTables {
    fn new(k: u32) -> Self {
        SummandTables {
            k_factorial: factorial(k),
            factorials: (0..=k).map(factorial).collect(),
            odd_double_factorials: (0..=k).map(double_factorial_odd).collect(),
        }
    }

    fn summand(&self, parts: &[u32]) -> BigInt {
        let mut den = BigInt::one();
        let mut dfo = BigInt::one();
        for &p in parts {
            if p > 1 {
                den *= &self.factorials[p as usize];
                dfo *= &self.odd_double_factorials[p as usize];
            }
        }
        &self.k_factorial / den * dfo
    }
}

fn check_moment_args(k: u32, l: u32) -> Result<()> {
    if k < 1 {
        return Err(Error::out_of_range("k", k, "k >= 1"));
    }
    if l < 1 {
        return Err(Error::out_of_range("l", l, "l >= 1"));
    }
    Ok(())
}

/// `S(k, l)` by direct enumeration of all compositions of `k` into `2l` parts.
///
/// Work is split by the value of the first part; each worker enumerates the
/// remaining `2l - 1` parts and the integer partial sums are added exactly.
pub fn moment_sum_bruteforce(k: u32, l: u32) -> Result<BigInt> {
    check_moment_args(k, l)?;
    let slots = 2 * l as usize;
    let tables = SummandTables::new(k);
    let total = (0..=k)
        .into_par_iter()
        .map(|first| {
            let rest = enumerate_compositions(k - first, slots - 1).expect("slots >= 1");
            let mut parts = vec![0u32; slots];
            parts[0] = first;
            let mut acc = BigInt::zero();
            for tail in rest {
                parts[1..].copy_from_slice(tail.parts());
                acc += tables.summand(&parts);
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    Ok(total)
}

/// `S(k, l) = 2^k k! C(k + l - 1, k)`.
pub fn moment_sum_closed(k: u32, l: u32) -> Result<BigInt> {
    check_moment_args(k, l)?;
    Ok((BigInt::one() << k) * factorial(k) * binomial(u64::from(k + l - 1), u64::from(k)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub k: u32,
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub brute_force: BigInt,
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub closed_form: BigInt,
    pub passed: bool,
}

/// Compares `S(k, k)` by enumeration against `2^k k! C(2k - 1, k)` for every
/// `1 <= k <= k_max`.
pub fn verify_identity(k_max: u32) -> Result<Vec<IdentityCheck>> {
    verify_identity_with(k_max, moment_sum_closed)
}

/// As [`verify_identity`] but against a caller-supplied closed form; used
/// to check that the suite actually detects a corrupted formula.
pub fn verify_identity_with(
    k_max: u32,
    closed: impl Fn(u32, u32) -> Result<BigInt>,
) -> Result<Vec<IdentityCheck>> {
    if k_max < 1 {
        return Err(Error::out_of_range("k_max", k_max, "k_max >= 1"));
    }
    (1..=k_max)
        .map(|k| {
            let brute_force = moment_sum_bruteforce(k, k)?;
            let closed_form = closed(k, k)?;
            let passed = brute_force == closed_form;
            Ok(IdentityCheck {
                k,
                brute_force,
                closed_form,
                passed,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::multinomial;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn listed(weight: u32, slots: usize) -> Vec<Vec<u32>> {
        enumerate_compositions(weight, slots)
            .unwrap()
            .map(|m| m.parts().to_vec())
            .collect()
    }

    /// Every tuple in `[0, weight]^slots` with the right sum, by counting.
    fn exhaustive(weight: u32, slots: usize) -> HashSet<Vec<u32>> {
        let mut out = HashSet::new();
        let base = weight as usize + 1;
        let total = base.pow(slots as u32);
        for mut code in 0..total {
            let mut t = Vec::with_capacity(slots);
            for _ in 0..slots {
                t.push((code % base) as u32);
                code /= base;
            }
            if t.iter().sum::<u32>() == weight {
                out.insert(t);
            }
        }
        out
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(listed(1, 2), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(listed(0, 3), vec![vec![0, 0, 0]]);
        let four = listed(2, 4);
        assert_eq!(four.len(), 10);
        assert_eq!(
            four.iter().cloned().collect::<HashSet<_>>(),
            exhaustive(2, 4)
        );
        assert!(enumerate_compositions(3, 0).is_err());
    }

    #[test]
    fn enumeration_is_strictly_decreasing_lexicographic() {
        let all = listed(4, 4);
        for pair in all.windows(2) {
            assert!(pair[0] > pair[1]);
        }
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(moment_sum_bruteforce(1, 1).unwrap(), BigInt::from(2));
        assert_eq!(moment_sum_bruteforce(2, 2).unwrap(), BigInt::from(24));
        assert_eq!(moment_sum_bruteforce(2, 1).unwrap(), BigInt::from(8));
        assert!(moment_sum_bruteforce(0, 1).is_err());
        assert!(moment_sum_bruteforce(1, 0).is_err());
    }

    #[test]
    fn closed_examples() {
        assert_eq!(moment_sum_closed(2, 2).unwrap(), BigInt::from(24));
        assert_eq!(moment_sum_closed(3, 3).unwrap(), BigInt::from(480));
        for l in 1..10 {
            assert_eq!(moment_sum_closed(1, l).unwrap(), BigInt::from(2 * l));
        }
    }

    #[test]
    fn identity_reports() {
        let report = verify_identity(4).unwrap();
        assert_eq!(report.len(), 4);
        assert!(report.iter().all(|c| c.passed));
        let corrupted =
            verify_identity_with(3, |k, l| Ok(moment_sum_closed(k, l)? + (k / 3))).unwrap();
        assert!(corrupted[0].passed && corrupted[1].passed && !corrupted[2].passed);
    }

    #[test]
    fn bruteforce_matches_closed_up_to_eight() {
        for k in 1..=8 {
            for l in 1..=8 {
                assert_eq!(
                    moment_sum_bruteforce(k, l).unwrap(),
                    moment_sum_closed(k, l).unwrap(),
                    "k={k} l={l}"
                );
            }
        }
    }

    #[test]
    fn strictly_increasing_in_l() {
        for k in 1..=6 {
            for l in 1..8 {
                assert!(
                    moment_sum_bruteforce(k, l).unwrap() < moment_sum_bruteforce(k, l + 1).unwrap()
                );
            }
        }
    }

    proptest! {
        #[test]
        fn stream_length_matches_stars_and_bars(weight in 0u32..8, slots in 1usize..6) {
            let counted = enumerate_compositions(weight, slots).unwrap().count();
            prop_assert_eq!(BigInt::from(counted), composition_count(weight, slots));
        }

        #[test]
        fn summand_identity(parts in prop::collection::vec(0u32..5, 1..7)) {
            let k: u32 = parts.iter().sum();
            let dfo = parts.iter().fold(BigInt::one(), |acc, &p| acc * double_factorial_odd(p));
            let central = parts.iter().fold(BigInt::one(), |acc, &p| acc * binomial(2 * u64::from(p), u64::from(p)));
            let lhs = (BigInt::one() << k) * multinomial(k, &parts).unwrap() * dfo;
            prop_assert_eq!(lhs, factorial(k) * central);
        }
    }
}
