use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use weincalc_core::arith::{factorial, format_rational, parse_rational, rational_to_f64};
use weincalc_core::combinatorics::{moment_sum_closed, verify_identity};
use weincalc_core::moments::ball_moment_exact;
use weincalc_core::montecarlo::mc_ball_moment;
use weincalc_core::morphism::{
    blowup_weinstein, cpn_coefficient, cpn_lattice, cpn_weinstein, product_cpn_lattice,
    product_value, GradedClass, ManifoldDescriptor,
};
use weincalc_core::verify::{run_suite, SuiteConfig, SuiteReport};
use weincalc_core::{BigInt, CosetValue, Error, PiGradedValue, Rational};

const SCHEMA: &str = "weincalc/1";

#[derive(Parser)]
#[command(
    name = "weinstein-calc",
    version,
    about = "Exact Weinstein morphism values and their checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Value on the degree 2k-1 class of CP^n.
    Cpn {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        json: bool,
    },
    /// Value on the one-point blow-up of CP^n, as a function of x = rho^2.
    Blowup {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Evaluate at this radius, 0 < rho < 1 (p/q or decimal).
        #[arg(long)]
        rho: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Integral of (|z_1|^2 + ... + |z_l|^2)^k over the ball of radius r0 in C^n.
    Moment {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "1")]
        r0: String,
        /// Also estimate the integral by Monte Carlo.
        #[arg(long)]
        mc: bool,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Compare the enumerated moment sum S(k,k) with its closed form.
    Identity {
        #[arg(long)]
        k_max: u32,
        #[arg(long)]
        json: bool,
    },
    /// Value on the product of a CP^n class with a class of M.
    Product {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Manifold descriptor (JSON).
        #[arg(long)]
        manifold: PathBuf,
        /// Named class of M; the zero class when omitted.
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the verification suite.
    Verify {
        /// Smaller ranges and 10^5 Monte Carlo samples.
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Fault {
    Moment,
    Cpn,
}

fn faulty_moment(k: u32, l: u32) -> weincalc_core::Result<BigInt> {
    Ok(moment_sum_closed(k, l)? + u32::from(k == 3 && l == 3))
}

fn faulty_cpn(n: u32, k: u32) -> weincalc_core::Result<Rational> {
    let q = cpn_coefficient(n, k)?;
    Ok(if (n, k) == (3, 2) {
        q * Rational::new(2.into(), 3.into())
    } else {
        q
    })
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OracleMismatch(m) => Failure::Verification(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<Output, Failure>;

struct Output {
    json: Value,
    text: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = match &cli.command {
        Command::Cpn { json, .. }
        | Command::Blowup { json, .. }
        | Command::Moment { json, .. }
        | Command::Identity { json, .. }
        | Command::Product { json, .. }
        | Command::Verify { json, .. } => *json,
    };
    match run(cli.command) {
        Ok(out) => {
            if json {
                let mut doc = json!({ "schema": SCHEMA });
                doc.as_object_mut()
                    .expect("object")
                    .extend(out.json.as_object().expect("object").clone());
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable")
                );
            } else {
                print!("{}", out.text);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Cpn { n, k, .. } => cpn(n, k),
        Command::Blowup { n, k, rho, .. } => blowup(n, k, rho.as_deref()),
        Command::Moment {
            n,
            l,
            k,
            r0,
            mc,
            samples,
            seed,
            ..
        } => moment(n, l, k, &r0, mc.then_some((samples, seed))),
        Command::Identity { k_max, .. } => identity(k_max),
        Command::Product {
            n,
            k,
            manifold,
            class,
            ..
        } => product(n, k, &manifold, class.as_deref()),
        Command::Verify {
            quick,
            seed,
            inject_fault,
            ..
        } => verify(quick, seed, inject_fault),
    }
}

fn s(r: &Rational) -> String {
    format_rational(r)
}

/// Both readings of a value: per-power coefficients and, when the value is
/// a single `pi^k` monomial, its multiple of `pi^k / k!`.
fn value_json(value: &PiGradedValue, k: u32) -> Value {
    let mut doc = json!({
        "pi_coefficients": value,
        "display": value.to_string(),
    });
    if let Some(c) = single_pi_power(value, k) {
        doc["multiple_of_pi_k_over_k_factorial"] =
            json!(s(&(c * Rational::from_integer(factorial(k)))));
    }
    doc
}

fn single_pi_power(value: &PiGradedValue, k: u32) -> Option<Rational> {
    let mut comps = value.components();
    let (a, f) = comps.next()?;
    if a != k || comps.next().is_some() {
        return None;
    }
    let p = f.as_polynomial()?;
    p.is_constant().then(|| p.coefficient(0))
}

fn coset_json(coset: &CosetValue, k: u32) -> Value {
    let order = coset.order();
    json!({
        "value": value_json(&coset.value, k),
        "representative": coset.representative().to_string(),
        "lattice": coset.lattice,
        "lattice_display": coset.lattice.to_string(),
        "order": order,
        "trivial": coset.is_trivial(),
    })
}

fn cpn(n: u32, k: u32) -> Outcome {
    let w = cpn_weinstein(n, k)?;
    let order = w.coset.order();
    let mut doc = json!({ "command": "cpn", "n": n, "k": k, "q": s(&w.q), "flags": [] });
    doc.as_object_mut()
        .unwrap()
        .extend(coset_json(&w.coset, k).as_object().unwrap().clone());
    let text = format!(
        "CP^{n}, degree {}\n  value      {} = {} * pi^{k}/{k}!\n  lattice    {}\n  order      {}\n",
        2 * k - 1,
        w.coset.value,
        s(&w.q),
        w.coset.lattice,
        order
    );
    Ok(Output {
        json: doc,
        text,
        passed: true,
    })
}

fn blowup(n: u32, k: u32, rho: Option<&str>) -> Outcome {
    let b = blowup_weinstein(n, k)?;
    let mut doc = json!({ "command": "blowup", "n": n, "k": k, "q": s(&b.q), "flags": b.flags });
    doc.as_object_mut()
        .unwrap()
        .extend(coset_json(&b.coset, k).as_object().unwrap().clone());
    let mut text = format!(
        "blow-up of CP^{n}, degree {}, x = rho^2\n  value      {}\n  lattice    {}\n  order      {}\n",
        2 * k - 1,
        b.coset.value,
        b.coset.lattice,
        b.order
    );
    if let Some(rho) = rho {
        let rho = parse_rational(rho)?;
        if !(rho > Rational::from_integer(0.into()) && rho < Rational::from_integer(1.into())) {
            return Err(Failure::Usage(format!(
                "rho = {} is outside 0 < rho < 1",
                s(&rho)
            )));
        }
        let x = &rho * &rho;
        let f = b.coset.value.component(k).expect("pi^k component");
        let c = f.eval(&x).expect("1 - x^n is nonzero for 0 < x < 1");
        let multiple = &c * Rational::from_integer(factorial(k));
        doc["at_rho"] = json!({
            "rho": s(&rho),
            "pi_coefficient": s(&c),
            "multiple_of_pi_k_over_k_factorial": s(&multiple),
            "approx": b.coset.value.eval_f64(rational_to_f64(&x)),
        });
        text.push_str(&format!(
            "  at rho={}  {} * pi^{k}/{k}!\n",
            s(&rho),
            s(&multiple)
        ));
    }
    for f in &b.flags {
        text.push_str(&format!("  flag       {}: {}\n", f.code, f.message));
    }
    Ok(Output {
        json: doc,
        text,
        passed: true,
    })
}

fn moment(n: u32, l: u32, k: u32, r0: &str, mc: Option<(u64, u64)>) -> Outcome {
    let r0 = parse_rational(r0)?;
    let m = ball_moment_exact(n, l, k, &r0)?;
    let exact = rational_to_f64(&m.value) * std::f64::consts::PI.powi(n as i32);
    let mut doc = json!({ "command": "moment", "moment": m, "approx": exact, "flags": [] });
    let mut text = format!(
        "ball moment n={n} l={l} k={k} r0={}\n  exact      {} * pi^{n}  ({exact})\n",
        s(&r0),
        s(&m.value)
    );
    if let Some((samples, seed)) = mc {
        let est = mc_ball_moment(n, l, k, rational_to_f64(&r0), samples, seed)?;
        let sigma = est.sigma_distance(exact);
        doc["monte_carlo"] = json!({ "estimate": est, "sigma": sigma });
        text.push_str(&format!(
            "  mc         {} +- {} ({samples} samples, seed {seed}, {sigma:.2} sigma)\n",
            est.mean, est.std_error
        ));
    }
    Ok(Output {
        json: doc,
        text,
        passed: true,
    })
}

fn identity(k_max: u32) -> Outcome {
    let checks = verify_identity(k_max)?;
    let passed = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!(
            "  k={:<3} {} {} {}\n",
            c.k,
            c.brute_force,
            if c.passed { "==" } else { "!=" },
            c.closed_form
        ));
    }
    let doc = json!({ "command": "identity", "k_max": k_max, "passed": passed, "checks": checks, "flags": [] });
    Ok(Output {
        json: doc,
        text,
        passed,
    })
}

fn product(n: u32, k: u32, path: &PathBuf, class: Option<&str>) -> Outcome {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let desc = ManifoldDescriptor::from_json_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if k < 1 {
        return Err(Failure::Usage(format!("k = {k} must be at least 1")));
    }
    let degree = 2 * k - 1;
    if !desc.trivial_odd_homotopy.contains(&degree) {
        return Err(Failure::Usage(format!(
            "pi_{degree}(M) must be listed as trivial in trivial_odd_homotopy"
        )));
    }
    let full = product_cpn_lattice(n, k, &desc)?;
    let cpn = cpn_weinstein(n, k)?;
    let m_value = match class {
        None => PiGradedValue::zero(),
        Some(name) => {
            let c = desc.classes.get(name).ok_or_else(|| {
                Failure::Usage(format!("no class named {name:?} in the descriptor"))
            })?;
            if c.degree != degree {
                return Err(Failure::Usage(format!(
                    "class {name:?} has degree {}, expected {degree}",
                    c.degree
                )));
            }
            c.value.clone()
        }
    };
    let a = GradedClass {
        degree,
        value: cpn.coset.value.clone(),
        lattice: cpn_lattice(k),
    };
    let b = GradedClass {
        degree,
        value: m_value,
        lattice: desc.period_lattice(k),
    };
    let coset = product_value(&a, &b, &full)?;
    let order = coset.order();
    let mut doc = json!({ "command": "product", "n": n, "k": k, "class": class, "flags": [] });
    doc.as_object_mut()
        .unwrap()
        .extend(coset_json(&coset, k).as_object().unwrap().clone());
    let text = format!(
        "CP^{n} x M, degree {degree}\n  value      {}\n  lattice    {}\n  order      {}\n",
        coset.value, coset.lattice, order
    );
    Ok(Output {
        json: doc,
        text,
        passed: true,
    })
}

fn verify(quick: bool, seed: Option<u64>, fault: Option<Fault>) -> Outcome {
    let mut cfg = if quick {
        SuiteConfig::quick()
    } else {
        SuiteConfig::default()
    };
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    match fault {
        Some(Fault::Moment) => cfg.moment_closed_form = faulty_moment,
        Some(Fault::Cpn) => cfg.cpn_closed_form = faulty_cpn,
        None => {}
    }
    let report: SuiteReport = run_suite(&cfg);
    let mut text = String::new();
    for c in &report.criteria {
        text.push_str(&format!(
            "[{}] {} {} ({} checks)\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.checks
        ));
        for f in &c.failures {
            text.push_str(&format!("    {f}\n"));
        }
    }
    let passed = report.passed;
    let doc = json!({ "command": "verify", "report": report, "flags": [] });
    Ok(Output {
        json: doc,
        text,
        passed,
    })
}
