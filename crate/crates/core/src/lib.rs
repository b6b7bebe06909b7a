//! Exact and Monte Carlo evaluation of generalized Weinstein morphisms on
//! homotopy groups of Hamiltonian diffeomorphism groups of `CP^n`, its
//! one-point blow-up, and products `CP^n x M`.
//!
//! Every closed form is paired with an independent check: multi-index sums by
//! enumeration, lattice decisions by bounded search, integrals by sampling.

pub mod arith;
pub mod combinatorics;
pub mod error;
pub mod moments;
pub mod montecarlo;
pub mod morphism;
mod serde_util;
pub mod symbolic;
pub mod verify;

pub use arith::Rational;
pub use error::{Error, Result};
pub use montecarlo::McEstimate;
pub use morphism::{CosetValue, ManifoldDescriptor};
pub use num_bigint::BigInt;
pub use symbolic::{Lattice, OrderResult, PiGradedValue};
