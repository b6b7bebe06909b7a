//! Exact values of the generalized Weinstein morphism on the classes of
//! `CP^n`, its one-point blow-up, and products `CP^n x M`.

mod cpn;
mod descriptor;
mod geometry;
mod product;

use serde::Serialize;

pub use cpn::{
    blowup_lattice, blowup_order, blowup_value, blowup_weinstein, cpn_coefficient, cpn_lattice,
    cpn_weinstein, cpn_weinstein_raw, BlowupWeinstein, CpnWeinstein, Flag, FLAG_TOP_DEGREE_FINITE,
};
pub use descriptor::{ManifoldDescriptor, NamedClass};
pub use geometry::{
    embed_ball_to_cpn, inverse_embed, trace_action, trace_action_exact, trace_action_value,
    trace_ratio_power, BallPoint, HomogeneousPoint,
};
pub use product::{product_cpn_lattice, product_value, GradedClass};

use crate::error::{Error, Result};
use crate::symbolic::{lattice_member, lattice_order, Lattice, OrderResult, PiGradedValue};

/// `1 <= k <= n`.
pub(crate) fn check_degree_range(n: u32, k: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::out_of_range("n", n, "n >= 1"));
    }
    if k < 1 || k > n {
        return Err(Error::out_of_range("k", k, format!("1 <= k <= n = {n}")));
    }
    Ok(())
}

/// An element of `R / lattice`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetValue {
    pub value: PiGradedValue,
    pub lattice: Lattice,
}

impl CosetValue {
    pub fn new(value: PiGradedValue, lattice: Lattice) -> Self {
        CosetValue { value, lattice }
    }

    pub fn order(&self) -> OrderResult {
        lattice_order(&self.value, &self.lattice)
    }

    pub fn is_trivial(&self) -> bool {
        lattice_member(&self.value, &self.lattice)
    }

    /// Monomial coefficients reduced into `[0, g)` by their lattice generator.
    pub fn representative(&self) -> PiGradedValue {
        self.lattice.reduce_representative(&self.value)
    }
}
