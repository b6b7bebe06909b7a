//! The verification suite: every closed form checked against an independent
//! evaluation, one report per criterion.
//!
//! Reports contain no timings, so two runs with the same configuration
//! serialize to identical bytes.

pub mod lattice_oracle;

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, factorial, rational_to_f64, Rational};
use crate::combinatorics::{moment_sum_bruteforce, moment_sum_closed};
use crate::error::Result;
use crate::moments::ball_moment_exact;
use crate::montecarlo::{mc_ball_moment, mc_blowup_average, mc_cpn_average, McEstimate};
use crate::morphism::{
    blowup_value, blowup_weinstein, cpn_coefficient, cpn_lattice, cpn_weinstein_raw,
    product_cpn_lattice, product_value, GradedClass, ManifoldDescriptor, FLAG_TOP_DEGREE_FINITE,
};
use crate::symbolic::{lattice_member, lattice_order, OrderKind, OrderResult, PiGradedValue};

use lattice_oracle::{box_search, box_search_within, random_instance, NARROW_BOX};

/// Statistical acceptance band in standard errors.
pub const SIGMA_BAND: f64 = 4.0;
pub const FULL_SAMPLES: u64 = 1_000_000;
pub const QUICK_SAMPLES: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 20_240_601;
pub const ORACLE_INSTANCES: usize = 200;

pub type MomentFormula = fn(u32, u32) -> Result<BigInt>;
pub type CpnFormula = fn(u32, u32) -> Result<Rational>;

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub quick: bool,
    pub seed: u64,
    /// Closed form for `S(k, l)` under test.
    pub moment_closed_form: MomentFormula,
    /// Closed form for `q(n, k)` under test.
    pub cpn_closed_form: CpnFormula,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            quick: false,
            seed: DEFAULT_SEED,
            moment_closed_form: moment_sum_closed,
            cpn_closed_form: cpn_coefficient,
        }
    }
}

impl SuiteConfig {
    pub fn quick() -> Self {
        SuiteConfig {
            quick: true,
            ..Self::default()
        }
    }

    pub fn samples(&self) -> u64 {
        if self.quick {
            QUICK_SAMPLES
        } else {
            FULL_SAMPLES
        }
    }

    fn brute_cap(&self, full: u32) -> u32 {
        if self.quick {
            full.min(4)
        } else {
            full
        }
    }

    /// Distinct, reproducible seed per criterion and case.
    fn seed_for(&self, criterion: u64, case: u64) -> u64 {
        self.seed ^ (criterion << 48) ^ case.wrapping_mul(0x9E37_79B9_7F4A_7C15)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McCheck {
    pub case: String,
    pub exact: f64,
    pub estimate: McEstimate,
    pub sigma: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub monte_carlo: Vec<McCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CriterionReport {
    fn new(id: u32, name: &'static str) -> Self {
        CriterionReport {
            id,
            name,
            passed: true,
            checks: 0,
            failures: Vec::new(),
            monte_carlo: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            self.failures.push(describe());
        }
    }

    fn check_result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }

    fn check_mc(&mut self, case: String, estimate: Result<McEstimate>, exact: f64) {
        let Some(estimate) = self.check_result(estimate, || case.clone()) else {
            return;
        };
        let sigma = estimate.sigma_distance(exact);
        let passed = sigma < SIGMA_BAND;
        self.check(passed, || format!("{case}: {sigma:.3} sigma from {exact}"));
        self.monte_carlo.push(McCheck {
            case,
            exact,
            estimate,
            sigma,
            passed,
        });
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub quick: bool,
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

/// `S(k, k)` by enumeration equals `2^k k! C(2k - 1, k)` for `1 <= k <= 7`.
pub fn identity_suite(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(1, "moment identity S(k,k) = 2^k k! C(2k-1,k)");
    for k in 1..=cfg.brute_cap(7) {
        let brute = moment_sum_bruteforce(k, k);
        let closed = (cfg.moment_closed_form)(k, k);
        let diagonal =
            (BigInt::one() << k) * factorial(k) * binomial(u64::from(2 * k - 1), u64::from(k));
        if let (Some(b), Some(c)) = (
            rep.check_result(brute, || format!("brute force k={k}")),
            rep.check_result(closed, || format!("closed form k={k}")),
        ) {
            rep.check(b == c && c == diagonal, || {
                format!("k={k}: brute {b} vs closed {c}")
            });
        }
    }
    rep
}

/// `S(k, l)` by enumeration equals `2^k k! C(k + l - 1, k)` for `1 <= k, l <= 6`.
pub fn general_moment_suite(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(2, "general moment sum S(k,l) = 2^k k! C(k+l-1,k)");
    let cap = cfg.brute_cap(6);
    for k in 1..=cap {
        for l in 1..=cap {
            let brute =
                rep.check_result(moment_sum_bruteforce(k, l), || format!("brute k={k} l={l}"));
            let closed = rep.check_result((cfg.moment_closed_form)(k, l), || {
                format!("closed k={k} l={l}")
            });
            if let (Some(b), Some(c)) = (brute, closed) {
                rep.check(b == c, || format!("k={k} l={l}: brute {b} vs closed {c}"));
            }
        }
    }
    rep
}

/// Exact ball moments against polar-coordinate spot values and Monte Carlo.
pub fn ball_moment_suite(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(3, "ball moment integrals");
    let one = Rational::one();
    // (n, l, k, coefficient of pi^n) from one-variable radial integrals
    let spots = [
        (1, 1, 1, Rational::new(1.into(), 2.into())),
        (2, 1, 1, Rational::new(1.into(), 6.into())),
        (1, 1, 2, Rational::new(1.into(), 3.into())),
    ];
    for (n, l, k, expected) in spots {
        if let Some(m) = rep.check_result(ball_moment_exact(n, l, k, &one), || {
            format!("exact n={n} l={l} k={k}")
        }) {
            rep.check(m.value == expected && m.pi_exp == n, || {
                format!("n={n} l={l} k={k}: {} vs {expected}", m.value)
            });
        }
    }
    let mut case = 0;
    for n in 1..=3 {
        for l in 1..=n {
            for k in 1..=3 {
                case += 1;
                let Some(m) = rep.check_result(ball_moment_exact(n, l, k, &one), || {
                    format!("exact n={n} l={l} k={k}")
                }) else {
                    continue;
                };
                let exact = rational_to_f64(&m.value) * PI.powi(n as i32);
                let est = mc_ball_moment(n, l, k, 1.0, cfg.samples(), cfg.seed_for(3, case));
                rep.check_mc(format!("n={n} l={l} k={k}"), est, exact);
            }
        }
    }
    rep
}

/// `0 < q(n, k) < 1`, non-membership, raw = closed, and the `k = 1`, `k = n` anchors.
pub fn cpn_suite(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(4, "CP^n values are nontrivial");
    let n_max = cfg.brute_cap(8);
    for n in 1..=n_max {
        for k in 1..=n {
            let Some(q) = rep.check_result((cfg.cpn_closed_form)(n, k), || format!("q({n},{k})"))
            else {
                continue;
            };
            let Some(raw) = rep.check_result(cpn_weinstein_raw(n, k), || format!("raw({n},{k})"))
            else {
                continue;
            };
            rep.check(q == raw, || {
                format!("q({n},{k}) = {q} but multi-index form gives {raw}")
            });
            rep.check(q > Rational::zero() && q < Rational::one(), || {
                format!("q({n},{k}) = {q} not in (0,1)")
            });
            let value = PiGradedValue::monomial(&q / Rational::from_integer(factorial(k)), k, 0);
            rep.check(!lattice_member(&value, &cpn_lattice(k)), || {
                format!("({n},{k}) lies in the period lattice")
            });
            if k == 1 {
                rep.check(q == Rational::new(1.into(), (n + 1).into()), || {
                    format!("q({n},1) = {q}")
                });
                let order = lattice_order(&value, &cpn_lattice(1));
                rep.check(order == OrderResult::finite(n + 1), || {
                    format!("order of ({n},1) is {order}")
                });
            }
            if k == n {
                rep.check(q == Rational::new(1.into(), 2.into()), || {
                    format!("q({n},{n}) = {q}")
                });
            }
        }
    }
    rep
}

/// Monte Carlo average over the embedded ball against `q(n, k) pi^k / k!`.
pub fn cpn_monte_carlo_suite(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(5, "Monte Carlo CP^n averages");
    let mut case = 0;
    for n in 1..=3 {
        for k in 1..=n {
            case += 1;
            let Some(q) = rep.check_result((cfg.cpn_closed_form)(n, k), || format!("q({n},{k})"))
            else {
                continue;
            };
            let exact = rational_to_f64(&q) * PI.powi(k as i32)
                / rational_to_f64(&Rational::from_integer(factorial(k)));
            let est = mc_cpn_average(n, k, cfg.samples(), cfg.seed_for(5, case));
            rep.check_mc(format!("n={n} k={k}"), est, exact);
        }
    }
    rep
}

/// Blow-up: infinite order below the top degree, `x -> 0` limit, Monte
/// Carlo at `rho = 1/2`, and the flagged top-degree case.
pub fn blowup_suite(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(6, "blow-up values and orders");
    let n_max = cfg.brute_cap(8);
    for n in 1..=n_max {
        for k in 1..=n {
            let Some(b) = rep.check_result(blowup_weinstein(n, k), || format!("blowup({n},{k})"))
            else {
                continue;
            };
            if k < n {
                rep.check(b.order.is_infinite() && b.flags.is_empty(), || {
                    format!("({n},{k}): order {}", b.order)
                });
            } else {
                rep.check(b.order == OrderResult::finite(2u32), || {
                    format!("({n},{n}): order {}", b.order)
                });
                rep.check(
                    b.flags.iter().any(|f| f.code == FLAG_TOP_DEGREE_FINITE),
                    || format!("({n},{n}): flag missing"),
                );
            }
            let Some(q) = rep.check_result((cfg.cpn_closed_form)(n, k), || format!("q({n},{k})"))
            else {
                continue;
            };
            let cpn_value = PiGradedValue::monomial(q / Rational::from_integer(factorial(k)), k, 0);
            rep.check(
                b.coset.value.at_x_zero().as_ref() == Some(&cpn_value),
                || format!("({n},{k}): x=0 limit differs"),
            );
        }
    }
    let rho = 0.5;
    let mut case = 0;
    for n in 1..=3 {
        for k in 1..=n {
            case += 1;
            let Some(v) =
                rep.check_result(blowup_value(n, k), || format!("blowup value ({n},{k})"))
            else {
                continue;
            };
            let exact = v.eval_f64(rho * rho);
            let est = mc_blowup_average(n, k, rho, cfg.samples(), cfg.seed_for(6, case));
            rep.check_mc(format!("n={n} k={k} rho=1/2"), est, exact);
        }
    }
    rep
}

/// Descriptor with rational periods in every even degree up to 10.
pub const RATIONAL_DESCRIPTOR: &str = r#"{
  "dimension": 10,
  "trivial_odd_homotopy": [1, 3, 5, 7, 9],
  "periods": {"2": ["1"], "4": ["1/2", "2/3"], "6": ["1/6"], "8": ["3/4"], "10": ["1/5"]}
}"#;

/// `cpn(n, k) x trivial` is nontrivial and both factor lattices sit inside the product lattice.
pub fn product_suite(_cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(7, "product classes");
    let Some(desc) = rep.check_result(
        ManifoldDescriptor::from_json_str(RATIONAL_DESCRIPTOR),
        || "descriptor".into(),
    ) else {
        return rep;
    };
    for n in 1..=5 {
        for k in 1..=n {
            let Some(full) = rep.check_result(product_cpn_lattice(n, k, &desc), || {
                format!("lattice ({n},{k})")
            }) else {
                continue;
            };
            let Some(q) = rep.check_result(cpn_coefficient(n, k), || format!("q({n},{k})")) else {
                continue;
            };
            let a = GradedClass {
                degree: 2 * k - 1,
                value: PiGradedValue::monomial(q / Rational::from_integer(factorial(k)), k, 0),
                lattice: cpn_lattice(k),
            };
            let b = GradedClass {
                degree: 2 * k - 1,
                value: PiGradedValue::zero(),
                lattice: desc.period_lattice(k),
            };
            for g in a.lattice.generators().iter().chain(b.lattice.generators()) {
                rep.check(lattice_member(&g.to_value(), &full), || {
                    format!("({n},{k}): {g} not in product lattice")
                });
            }
            if let Some(coset) = rep.check_result(product_value(&a, &b, &full), || {
                format!("product ({n},{k})")
            }) {
                rep.check(coset.value == a.value, || {
                    format!("({n},{k}): value changed")
                });
                rep.check(!coset.is_trivial(), || {
                    format!("({n},{k}): product class is trivial")
                });
            }
        }
    }
    rep
}

/// Membership and order decisions against the bounded integer search.
pub fn lattice_oracle_suite(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(8, "lattice decisions vs brute-force search");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed_for(8, 0));
    let instances: Vec<_> = (0..ORACLE_INSTANCES)
        .map(|_| random_instance(&mut rng))
        .collect();
    let searches: Vec<_> = instances.par_iter().map(box_search).collect();
    let narrow: Vec<_> = instances
        .par_iter()
        .map(|i| box_search_within(i, NARROW_BOX))
        .collect();
    let mut beyond = Vec::new();
    for (i, (wide, near)) in searches.iter().zip(&narrow).enumerate() {
        // a narrow hit is a multiple of the true order
        let consistent = match (near.least_multiple, wide.least_multiple) {
            (None, _) => true,
            (Some(a), Some(b)) => a % b == 0,
            (Some(_), None) => false,
        };
        rep.check(consistent, || {
            format!("instance {i}: narrow box {near:?} vs wide box {wide:?}")
        });
        if near != wide {
            beyond.push(i.to_string());
        }
    }
    if !beyond.is_empty() {
        rep.notes.push(format!(
            "{} instance(s) need coefficients outside [-{NARROW_BOX}, {NARROW_BOX}]: {}",
            beyond.len(),
            beyond.join(", ")
        ));
    }
    for (i, (inst, search)) in instances.iter().zip(searches).enumerate() {
        let lattice = inst.lattice();
        let member = lattice_member(&inst.value, &lattice);
        let order = lattice_order(&inst.value, &lattice);
        rep.check(member == search.member, || {
            format!("instance {i}: decision {member}, search {}", search.member)
        });
        let decided = match &order.kind {
            OrderKind::Finite(m) => Some(m.clone()),
            OrderKind::Infinite => None,
        };
        let searched = search.least_multiple.map(|m| BigUint::from(m as u64));
        rep.check(decided == searched, || {
            format!("instance {i}: order {order}, search {searched:?}")
        });
    }
    rep
}

/// Re-running a seeded estimate reproduces it bit for bit.
pub fn determinism_suite(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(9, "seeded estimates are reproducible");
    let samples = cfg.samples() / 10;
    let seed = cfg.seed_for(9, 0);
    let first = mc_cpn_average(2, 2, samples, seed);
    let second = mc_cpn_average(2, 2, samples, seed);
    if let (Some(a), Some(b)) = (
        rep.check_result(first, || "first run".into()),
        rep.check_result(second, || "second run".into()),
    ) {
        rep.check(
            a.mean.to_bits() == b.mean.to_bits() && a.std_error.to_bits() == b.std_error.to_bits(),
            || format!("{a:?} vs {b:?}"),
        );
    }
    rep
}

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let criteria = vec![
        identity_suite(cfg),
        general_moment_suite(cfg),
        ball_moment_suite(cfg),
        cpn_suite(cfg),
        cpn_monte_carlo_suite(cfg),
        blowup_suite(cfg),
        product_suite(cfg),
        lattice_oracle_suite(cfg),
        determinism_suite(cfg),
    ];
    SuiteReport {
        quick: cfg.quick,
        seed: cfg.seed,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    }
}
