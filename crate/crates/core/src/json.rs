//! JSON wire formats.
//!
//! A scalar is `["re_a", "re_b", "im_a", "im_b"]`, each rational written as
//! `"num/den"` in lowest terms; it denotes `(re_a + re_b√p) + i(im_a + im_b√p)`.
//!
//! ```text
//! StepFunction   {"p": 2, "depth": 1, "values": [scalar, ...]}
//! CoherentState  {"kind": "coherent", "p": .., "depth": .., "values": [..]}
//! FockVector     {"p": 2, "terms": {"<word>": {"<λ-exponent>": scalar}}}
//! PairingSeries  {"terms": [scalar, ...], "stabilized_at": 3, "value": scalar}
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coherent::{CoherentState, PairingSeries};
use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::padic::StepFunction;
use crate::poly::LambdaPoly;
use crate::scalar::{Prime, Rational, Scalar};
use crate::word::Word;

pub type ScalarJson = [String; 4];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFunctionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub p: u64,
    pub depth: usize,
    pub values: Vec<ScalarJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FockVectorJson {
    pub p: u64,
    pub terms: BTreeMap<String, BTreeMap<u32, ScalarJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingSeriesJson {
    pub terms: Vec<ScalarJson>,
    pub stabilized_at: usize,
    pub value: ScalarJson,
}

pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Json(format!("bad rational {s:?}"));
    let (num, den) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn scalar_to_json(x: &Scalar) -> ScalarJson {
    x.parts().map(rational_to_string)
}

pub fn scalar_from_json(p: Prime, s: &ScalarJson) -> Result<Scalar> {
    let [a, b, c, d] = s;
    Ok(Scalar::from_parts(
        p,
        parse_rational(a)?,
        parse_rational(b)?,
        parse_rational(c)?,
        parse_rational(d)?,
    ))
}

impl From<&StepFunction> for StepFunctionJson {
    fn from(f: &StepFunction) -> Self {
        StepFunctionJson {
            kind: None,
            p: f.prime().get() as u64,
            depth: f.depth(),
            values: f.values().iter().map(scalar_to_json).collect(),
        }
    }
}

impl TryFrom<&StepFunctionJson> for StepFunction {
    type Error = Error;
    fn try_from(j: &StepFunctionJson) -> Result<Self> {
        let p = Prime::new(j.p)?;
        let values = j
            .values
            .iter()
            .map(|v| scalar_from_json(p, v))
            .collect::<Result<Vec<_>>>()?;
        StepFunction::from_values(p, j.depth, values)
    }
}

impl From<&CoherentState> for StepFunctionJson {
    fn from(s: &CoherentState) -> Self {
        StepFunctionJson {
            kind: Some("coherent".into()),
            ..StepFunctionJson::from(s.generator())
        }
    }
}

impl TryFrom<&StepFunctionJson> for CoherentState {
    type Error = Error;
    fn try_from(j: &StepFunctionJson) -> Result<Self> {
        if j.kind.as_deref() != Some("coherent") {
            return Err(Error::Json("expected \"kind\": \"coherent\"".into()));
        }
        Ok(CoherentState::from_step(StepFunction::try_from(j)?))
    }
}

impl From<&FockVector> for FockVectorJson {
    fn from(v: &FockVector) -> Self {
        let terms = v
            .terms()
            .map(|(w, c)| {
                let poly = c.terms().map(|(e, x)| (e, scalar_to_json(x))).collect();
                (w.to_string(), poly)
            })
            .collect();
        FockVectorJson {
            p: v.prime().get() as u64,
            terms,
        }
    }
}

impl TryFrom<&FockVectorJson> for FockVector {
    type Error = Error;
    fn try_from(j: &FockVectorJson) -> Result<Self> {
        let p = Prime::new(j.p)?;
        let mut v = FockVector::zero(p);
        for (w, poly) in &j.terms {
            let word = Word::parse(p, w)?;
            for (&e, c) in poly {
                v.add_term(word.clone(), &LambdaPoly::monomial(scalar_from_json(p, c)?, e));
            }
        }
        Ok(v)
    }
}

impl From<&PairingSeries> for PairingSeriesJson {
    fn from(s: &PairingSeries) -> Self {
        PairingSeriesJson {
            terms: s.terms.iter().map(scalar_to_json).collect(),
            stabilized_at: s.stabilized_at,
            value: scalar_to_json(&s.value),
        }
    }
}

pub fn step_function_to_string(f: &StepFunction) -> String {
    serde_json::to_string(&StepFunctionJson::from(f)).expect("serializable")
}

pub fn step_function_from_str(s: &str) -> Result<StepFunction> {
    let j: StepFunctionJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    StepFunction::try_from(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::pairing_series;
    use crate::padic::{make_indicator, DiskAddress};
    use proptest::prelude::*;

    #[test]
    fn step_function_format() {
        let p = Prime::new(2).unwrap();
        let f = make_indicator(&DiskAddress::new(p, vec![1]).unwrap())
            .unwrap()
            .scale(&Scalar::sqrt_p(p));
        assert_eq!(
            step_function_to_string(&f),
            r#"{"p":2,"depth":1,"values":[["0/1","0/1","0/1","0/1"],["0/1","1/1","0/1","0/1"]]}"#
        );
        assert_eq!(step_function_from_str(&step_function_to_string(&f)).unwrap(), f);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("6/4").unwrap(), crate::scalar::rational(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), crate::scalar::rational(-7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rational_to_string(&parse_rational("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn rejects_bad_step_functions() {
        assert!(matches!(
            step_function_from_str(r#"{"p":4,"depth":0,"values":[["1","0","0","0"]]}"#),
            Err(Error::NotPrime(4))
        ));
        assert!(matches!(
            step_function_from_str(r#"{"p":2,"depth":1,"values":[["1","0","0","0"]]}"#),
            Err(Error::BadLength { .. })
        ));
        assert!(matches!(step_function_from_str("{"), Err(Error::Json(_))));
    }

    #[test]
    fn coherent_tag() {
        let p = Prime::new(3).unwrap();
        let s = CoherentState::indicator_state(p, &Word::parse(p, "2").unwrap()).unwrap();
        let j = StepFunctionJson::from(&s);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with(r#"{"kind":"coherent","p":3,"depth":1"#));
        assert_eq!(CoherentState::try_from(&j).unwrap(), s);
        let plain = StepFunctionJson::from(s.generator());
        assert!(CoherentState::try_from(&plain).is_err());
    }

    #[test]
    fn fock_and_pairing_formats() {
        let p = Prime::new(2).unwrap();
        let s = CoherentState::indicator_state(p, &Word::empty()).unwrap();
        let v = s.to_fock_truncated(1).unwrap();
        let text = serde_json::to_string(&FockVectorJson::from(&v)).unwrap();
        assert_eq!(
            text,
            r#"{"p":2,"terms":{"":{"0":["1/1","0/1","0/1","0/1"]},"0":{"1":["1/2","0/1","0/1","0/1"]},"1":{"1":["1/2","0/1","0/1","0/1"]}}}"#
        );
        let back: FockVectorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(FockVector::try_from(&back).unwrap(), v);

        let series = pairing_series(&s, &s).unwrap();
        let text = serde_json::to_string(&PairingSeriesJson::from(&series)).unwrap();
        assert!(text.contains(r#""stabilized_at":0"#));
        assert!(text.ends_with(r#""value":["1/1","0/1","0/1","0/1"]}"#));
    }

    proptest! {
        #[test]
        fn step_function_round_trip(
            pn in prop_oneof![Just(2u64), Just(3), Just(5)],
            depth in 0usize..3,
            seed in proptest::collection::vec((-50i64..50, 1i64..30), 4 * 25),
        ) {
            let p = Prime::new(pn).unwrap();
            let n = (pn as usize).pow(depth as u32);
            let values = (0..n)
                .map(|i| {
                    let q = |k: usize| {
                        let (a, b) = seed[(4 * i + k) % seed.len()];
                        crate::scalar::rational(a, b)
                    };
                    Scalar::from_parts(p, q(0), q(1), q(2), q(3))
                })
                .collect();
            let f = StepFunction::from_values(p, depth, values).unwrap();
            let text = step_function_to_string(&f);
            prop_assert_eq!(step_function_from_str(&text).unwrap(), f);
        }
    }
}
