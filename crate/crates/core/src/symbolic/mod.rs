//! Polynomials and rational functions in `x = rho^2`, pi-graded values, and
//! period lattices with their membership and order decisions.

mod graded;
mod json;
mod lattice;
mod poly;
mod ratfunc;

pub use graded::PiGradedValue;
pub use lattice::{
    lattice_member, lattice_order, lattice_sum, rational_gcd, Generator, Lattice, OrderKind,
    OrderResult, Witness,
};
pub use poly::PolyQ;
pub use ratfunc::RatFuncQ;
