//! JSON shapes for values and lattices.
//!
//! value:   `[{"pi_exp": a, "num": [[exp, "p/q"], ...], "den": [[exp, "p/q"], ...]}, ...]`
//! lattice: `[{"coeff": "p/q", "pi_exp": a, "x_exp": b}, ...]`
//!
//! Terms are written in increasing exponent order and components in
//! increasing pi exponent, so serialize -> parse -> serialize is byte-exact.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::graded::PiGradedValue;
use super::lattice::{Generator, Lattice};
use super::poly::PolyQ;
use super::ratfunc::RatFuncQ;
use crate::arith::{format_rational, parse_rational};

#[derive(Serialize, Deserialize)]
struct ComponentRepr {
    pi_exp: u32,
    num: Vec<(u32, String)>,
    den: Vec<(u32, String)>,
}

fn poly_repr(p: &PolyQ) -> Vec<(u32, String)> {
    p.terms().map(|(e, c)| (e, format_rational(c))).collect()
}

fn poly_from_repr<E: serde::de::Error>(terms: &[(u32, String)]) -> Result<PolyQ, E> {
    let parsed = terms
        .iter()
        .map(|(e, c)| parse_rational(c).map(|c| (*e, c)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(E::custom)?;
    Ok(PolyQ::from_terms(parsed))
}

impl Serialize for PiGradedValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let comps: Vec<ComponentRepr> = self
            .components()
            .map(|(a, f)| ComponentRepr {
                pi_exp: a,
                num: poly_repr(f.numerator()),
                den: poly_repr(f.denominator()),
            })
            .collect();
        comps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiGradedValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let comps = Vec::<ComponentRepr>::deserialize(d)?;
        let mut parts = Vec::with_capacity(comps.len());
        for c in comps {
            let num = poly_from_repr(&c.num)?;
            let den = poly_from_repr(&c.den)?;
            let f = RatFuncQ::reduce(num, den).map_err(D::Error::custom)?;
            parts.push((c.pi_exp, f));
        }
        Ok(PiGradedValue::from_components(parts))
    }
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.generators().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let gens = Vec::<Generator>::deserialize(d)?;
        Lattice::new(gens).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;
    use proptest::prelude::*;

    #[test]
    fn value_shape() {
        let f = RatFuncQ::reduce(
            PolyQ::one_minus_power(3).scale(&rational(1, 3)),
            PolyQ::one_minus_power(2),
        )
        .unwrap();
        let v = PiGradedValue::from_component(1, f);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(
            text,
            r#"[{"pi_exp":1,"num":[[0,"1/3"],[1,"1/3"],[2,"1/3"]],"den":[[0,"1"],[1,"1"]]}]"#
        );
        let back: PiGradedValue = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn lattice_shape() {
        let l = Lattice::new([
            Generator::new(rational(1, 2), 2, 0),
            Generator::new(rational(1, 2), 2, 2),
        ])
        .unwrap();
        let text = serde_json::to_string(&l).unwrap();
        assert_eq!(
            text,
            r#"[{"coeff":"1/2","pi_exp":2,"x_exp":0},{"coeff":"1/2","pi_exp":2,"x_exp":2}]"#
        );
        assert_eq!(serde_json::from_str::<Lattice>(&text).unwrap(), l);
    }

    #[test]
    fn unreduced_input_is_canonicalized() {
        let text = r#"[{"pi_exp":2,"num":[[0,"2"],[4,"-2"]],"den":[[0,"4"],[2,"-4"]]}]"#;
        let v: PiGradedValue = serde_json::from_str(text).unwrap();
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"[{"pi_exp":2,"num":[[0,"1/2"],[2,"1/2"]],"den":[[0,"1"]]}]"#
        );
        assert!(serde_json::from_str::<PiGradedValue>(
            r#"[{"pi_exp":0,"num":[[0,"1"]],"den":[]}]"#
        )
        .is_err());
        assert!(
            serde_json::from_str::<Lattice>(r#"[{"coeff":"x","pi_exp":0,"x_exp":0}]"#).is_err()
        );
    }

    fn arb_value() -> impl Strategy<Value = PiGradedValue> {
        let poly = prop::collection::vec((0u32..4, -9i64..9, 1i64..9), 0..4)
            .prop_map(|t| PolyQ::from_terms(t.into_iter().map(|(e, n, d)| (e, rational(n, d)))));
        prop::collection::vec((0u32..4, poly.clone(), poly), 0..3).prop_map(|comps| {
            PiGradedValue::from_components(comps.into_iter().filter_map(|(a, num, den)| {
                let den = if den.is_zero() { PolyQ::one() } else { den };
                RatFuncQ::reduce(num, den).ok().map(|f| (a, f))
            }))
        })
    }

    proptest! {
        #[test]
        fn value_round_trip_is_byte_exact(v in arb_value()) {
            let text = serde_json::to_string(&v).unwrap();
            let back: PiGradedValue = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&back, &v);
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }
}
