//! Manifold descriptors read from JSON.
//!
//! ```json
//! {
//!   "dimension": 4,
//!   "trivial_odd_homotopy": [1, 3],
//!   "periods": { "2": ["1"], "4": ["1/2"] },
//!   "classes": {
//!     "psi": { "degree": 1, "value": [ {"pi_exp": 0, "num": [[0, "1/3"]], "den": [[0, "1"]]} ] }
//!   }
//! }
//! ```
//!
//! * `dimension`: even positive real dimension `2m`.
//! * `trivial_odd_homotopy`: odd degrees `2k - 1 <= 2m - 1` with `pi_{2k-1}(M) = 0`.
//! * `periods`: keys are even degrees `2j` with `1 <= j <= m`; each value lists
//!   nonzero rational generators of `P_{2j}(M)` as `"p/q"` or decimal strings.
//!   Anything else (e.g. `"sqrt(2)"`, `"pi"`) is refused: the product
//!   construction is only decidable when every period is rational.
//! * `classes` (optional): named values in `R / P_{2k}(M)` for an odd
//!   homotopy degree `2k - 1`, in the pi-graded value JSON shape.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::Value;

use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::symbolic::{Generator, Lattice, PiGradedValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedClass {
    /// Odd homotopy degree `2k - 1`.
    pub degree: u32,
    pub value: PiGradedValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldDescriptor {
    pub dimension: u32,
    pub trivial_odd_homotopy: BTreeSet<u32>,
    pub periods: BTreeMap<u32, Vec<Rational>>,
    pub classes: BTreeMap<String, NamedClass>,
}

impl ManifoldDescriptor {
    pub fn half_dimension(&self) -> u32 {
        self.dimension / 2
    }

    /// Generators of `P_{2j}(M)`; empty when the degree is absent.
    pub fn periods_in_degree(&self, degree: u32) -> &[Rational] {
        self.periods.get(&degree).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `P_{2k}(M)` as a lattice of `pi^0` monomials.
    pub fn period_lattice(&self, k: u32) -> Lattice {
        Lattice::new(
            self.periods_in_degree(2 * k)
                .iter()
                .map(|p| Generator::new(p.clone(), 0, 0)),
        )
        .expect("periods are validated nonzero")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text)?;
        Self::from_json(&doc)
    }

    pub fn from_json(doc: &Value) -> Result<Self> {
        let obj = doc
            .as_object()
            .ok_or_else(|| Error::descriptor("$", "expected a JSON object"))?;
        for key in obj.keys() {
            if !["dimension", "trivial_odd_homotopy", "periods", "classes"].contains(&key.as_str())
            {
                return Err(Error::descriptor(key.clone(), "unknown field"));
            }
        }

        let dimension = obj
            .get("dimension")
            .ok_or_else(|| Error::descriptor("dimension", "missing"))?
            .as_u64()
            .filter(|&d| d > 0 && d % 2 == 0 && d <= u64::from(u32::MAX))
            .ok_or_else(|| Error::descriptor("dimension", "must be an even positive integer"))?
            as u32;
        let m = dimension / 2;

        let mut trivial_odd_homotopy = BTreeSet::new();
        if let Some(v) = obj.get("trivial_odd_homotopy") {
            let arr = v
                .as_array()
                .ok_or_else(|| Error::descriptor("trivial_odd_homotopy", "expected an array"))?;
            for (i, d) in arr.iter().enumerate() {
                let field = format!("trivial_odd_homotopy[{i}]");
                let d = odd_degree(d, m).map_err(|msg| Error::descriptor(field, msg))?;
                trivial_odd_homotopy.insert(d);
            }
        }

        let mut periods = BTreeMap::new();
        if let Some(v) = obj.get("periods") {
            let map = v.as_object().ok_or_else(|| {
                Error::descriptor("periods", "expected an object keyed by even degree")
            })?;
            for (key, list) in map {
                let field = format!("periods.{key}");
                let degree: u32 = key
                    .parse()
                    .ok()
                    .filter(|d: &u32| *d >= 2 && d % 2 == 0 && d / 2 <= m)
                    .ok_or_else(|| {
                        Error::descriptor(
                            field.clone(),
                            format!("key must be an even degree 2j with 1 <= j <= {m}"),
                        )
                    })?;
                let arr = list.as_array().ok_or_else(|| {
                    Error::descriptor(field.clone(), "expected an array of rational strings")
                })?;
                let mut gens = Vec::with_capacity(arr.len());
                for (i, entry) in arr.iter().enumerate() {
                    let field = format!("{field}[{i}]");
                    gens.push(period_entry(entry).map_err(|msg| Error::descriptor(field, msg))?);
                }
                periods.insert(degree, gens);
            }
        }

        let mut classes = BTreeMap::new();
        if let Some(v) = obj.get("classes") {
            let map = v.as_object().ok_or_else(|| {
                Error::descriptor("classes", "expected an object keyed by class name")
            })?;
            for (name, body) in map {
                let field = format!("classes.{name}");
                let degree = body
                    .get("degree")
                    .ok_or_else(|| Error::descriptor(format!("{field}.degree"), "missing"))
                    .and_then(|d| {
                        odd_degree(d, m)
                            .map_err(|msg| Error::descriptor(format!("{field}.degree"), msg))
                    })?;
                let value = body
                    .get("value")
                    .ok_or_else(|| Error::descriptor(format!("{field}.value"), "missing"))?;
                let value: PiGradedValue = serde_json::from_value(value.clone())
                    .map_err(|e| Error::descriptor(format!("{field}.value"), e.to_string()))?;
                classes.insert(name.clone(), NamedClass { degree, value });
            }
        }

        Ok(ManifoldDescriptor {
            dimension,
            trivial_odd_homotopy,
            periods,
            classes,
        })
    }
}

fn odd_degree(v: &Value, m: u32) -> std::result::Result<u32, String> {
    v.as_u64()
        .filter(|&d| d % 2 == 1 && d < 2 * u64::from(m))
        .map(|d| d as u32)
        .ok_or_else(|| format!("expected an odd degree 2k-1 with 1 <= k <= {m}, got {v}"))
}

fn period_entry(v: &Value) -> std::result::Result<Rational, String> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => return Err(format!("expected a rational string, got {other}")),
    };
    let r = parse_rational(&text).map_err(|_| {
        format!("{text:?} is not a rational number; products are only decided for manifolds whose periods are all rational")
    })?;
    if num_traits::Zero::is_zero(&r) {
        return Err(
            "period generators must be nonzero; omit the degree for a trivial period group".into(),
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    const SPHERE: &str =
        r#"{"dimension": 2, "trivial_odd_homotopy": [1], "periods": {"2": ["1"]}}"#;

    #[test]
    fn parses_reference_document() {
        let text = r#"{"dimension": 4, "trivial_odd_homotopy": [1,3], "periods": {"2": ["1"], "4": ["1/2"]},
            "classes": {"psi": {"degree": 3, "value": [{"pi_exp": 0, "num": [[0, "1/3"]], "den": [[0, "1"]]}]}}}"#;
        let d = ManifoldDescriptor::from_json_str(text).unwrap();
        assert_eq!(d.dimension, 4);
        assert_eq!(d.trivial_odd_homotopy, BTreeSet::from([1, 3]));
        assert_eq!(d.periods_in_degree(4), &[rational(1, 2)]);
        assert!(d.periods_in_degree(6).is_empty());
        assert_eq!(d.classes["psi"].degree, 3);
        assert_eq!(
            d.classes["psi"].value,
            PiGradedValue::monomial(rational(1, 3), 0, 0)
        );
        assert_eq!(
            ManifoldDescriptor::from_json_str(SPHERE)
                .unwrap()
                .period_lattice(1)
                .generators()
                .len(),
            1
        );
    }

    fn field_of(text: &str) -> String {
        match ManifoldDescriptor::from_json_str(text) {
            Err(Error::Descriptor { field, .. }) => field,
            other => panic!("expected descriptor error, got {other:?}"),
        }
    }

    #[test]
    fn field_level_diagnostics() {
        assert_eq!(field_of(r#"{"dimension": 3}"#), "dimension");
        assert_eq!(field_of(r#"{"periods": {}}"#), "dimension");
        assert_eq!(
            field_of(r#"{"dimension": 2, "trivial_odd_homotopy": [2]}"#),
            "trivial_odd_homotopy[0]"
        );
        assert_eq!(
            field_of(r#"{"dimension": 2, "trivial_odd_homotopy": [3]}"#),
            "trivial_odd_homotopy[0]"
        );
        assert_eq!(
            field_of(r#"{"dimension": 2, "periods": {"4": ["1"]}}"#),
            "periods.4"
        );
        assert_eq!(
            field_of(r#"{"dimension": 2, "periods": {"2": ["1", "sqrt(2)"]}}"#),
            "periods.2[1]"
        );
        assert_eq!(
            field_of(r#"{"dimension": 2, "periods": {"2": ["0"]}}"#),
            "periods.2[0]"
        );
        assert_eq!(field_of(r#"{"dimension": 2, "colour": 1}"#), "colour");
        assert_eq!(
            field_of(r#"{"dimension": 2, "classes": {"a": {"degree": 1}}}"#),
            "classes.a.value"
        );
    }

    #[test]
    fn irrational_period_message_names_rationality() {
        let err =
            ManifoldDescriptor::from_json_str(r#"{"dimension": 2, "periods": {"2": ["pi"]}}"#)
                .unwrap_err();
        assert!(err.to_string().contains("rational"), "{err}");
    }
}
