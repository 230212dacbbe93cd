//! Serialized polynomial equation systems.
//!
//! Every template is emitted as an [`EquationSystem`]: a field description,
//! an ordered unknown list, equations asserted equal to zero, and meta that
//! records the template name, its parameters, and the denominators that were
//! cleared (so verifiers can reject assignments that zero one of them).
//!
//! An equation is a product of factors. Single-factor equations are the
//! common case; multi-factor products encode finite existential choices
//! (the product vanishes over an integral domain iff some factor does).

use std::collections::{BTreeMap, BTreeSet};

use super::multipoly::MultiPoly;
use crate::error::{Error, Result};
use crate::ff_core::{parse_ratfunc, Fq, Poly, RatFunc};

#[derive(Clone, Debug, PartialEq)]
pub struct Equation {
    factors: Vec<MultiPoly>,
}

impl Equation {
    pub fn single(p: MultiPoly) -> Self {
        Equation { factors: vec![p] }
    }

    pub fn product(factors: Vec<MultiPoly>) -> Self {
        assert!(!factors.is_empty());
        Equation { factors }
    }

    pub fn factors(&self) -> &[MultiPoly] {
        &self.factors
    }

    pub fn support(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in &self.factors {
            out.extend(f.support());
        }
        out
    }

    /// Expands the product into one polynomial. Only sensible for small
    /// factor counts; [`combine_to_single`] relies on it.
    pub fn expanded(&self, fq: &Fq) -> MultiPoly {
        let mut acc = MultiPoly::one(fq);
        for f in &self.factors {
            acc = acc.mul(fq, f);
        }
        acc
    }

    /// Zero iff some factor evaluates to zero.
    pub fn holds(&self, fq: &Fq, values: &BTreeMap<String, RatFunc>) -> Result<bool> {
        for f in &self.factors {
            if f.eval(fq, values)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn substitute(&self, fq: &Fq, values: &BTreeMap<String, RatFunc>) -> Equation {
        Equation {
            factors: self.factors.iter().map(|f| f.substitute(fq, values)).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        if self.factors.len() == 1 {
            self.factors[0].to_json()
        } else {
            serde_json::json!({
                "factors": self.factors.iter().map(|f| f.to_json()).collect::<Vec<_>>()
            })
        }
    }

    pub fn from_json(fq: &Fq, v: &serde_json::Value) -> Result<Equation> {
        if let Some(factors) = v.get("factors") {
            let arr = factors
                .as_array()
                .ok_or_else(|| Error::Invalid("`factors` must be an array".into()))?;
            if arr.is_empty() {
                return Err(Error::Invalid("empty factor list".into()));
            }
            let factors = arr
                .iter()
                .map(|f| MultiPoly::from_json(fq, f))
                .collect::<Result<Vec<_>>>()?;
            Ok(Equation { factors })
        } else {
            Ok(Equation::single(MultiPoly::from_json(fq, v)?))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Meta {
    pub template: String,
    pub params: serde_json::Value,
    pub cleared_denominators: Vec<MultiPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquationSystem {
    pub field: Fq,
    pub unknowns: Vec<String>,
    pub equations: Vec<Equation>,
    pub meta: Meta,
}

impl EquationSystem {
    pub fn new(field: Fq, unknowns: Vec<String>, template: &str) -> Self {
        EquationSystem {
            field,
            unknowns,
            equations: vec![],
            meta: Meta {
                template: template.to_string(),
                params: serde_json::json!({}),
                cleared_denominators: vec![],
            },
        }
    }

    pub fn push(&mut self, eq: Equation) {
        self.equations.push(eq);
    }

    /// Checks that every unknown appearing anywhere is declared.
    pub fn validate(&self) -> Result<()> {
        let declared: BTreeSet<&str> = self.unknowns.iter().map(|s| s.as_str()).collect();
        let mut seen = BTreeSet::new();
        for eq in &self.equations {
            seen.extend(eq.support());
        }
        for d in &self.meta.cleared_denominators {
            seen.extend(d.support());
        }
        for name in seen {
            if !declared.contains(name.as_str()) {
                return Err(Error::UndeclaredUnknown(name));
            }
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "field": {
                "p": self.field.p(),
                "k": self.field.k(),
                "modulus": modulus_string(&self.field),
            },
            "unknowns": self.unknowns,
            "equations": self.equations.iter().map(|e| e.to_json()).collect::<Vec<_>>(),
            "meta": {
                "template": self.meta.template,
                "params": self.meta.params,
                "cleared_denominators": self.meta.cleared_denominators.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
            },
        })
    }

    pub fn serialize(&self) -> Vec<u8> {
        serde_json::to_vec(&self.to_json_value()).expect("serializable value")
    }

    pub fn parse(bytes: &[u8]) -> Result<EquationSystem> {
        let v: serde_json::Value = serde_json::from_slice(bytes)?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<EquationSystem> {
        let field = v
            .get("field")
            .ok_or_else(|| Error::Invalid("missing `field`".into()))?;
        let p = field
            .get("p")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Invalid("missing field `p`".into()))?;
        let k = field
            .get("k")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Invalid("missing field `k`".into()))? as usize;
        let modulus = field
            .get("modulus")
            .and_then(|x| x.as_str())
            .ok_or_else(|| Error::Invalid("missing field `modulus`".into()))?;
        let fq = field_from_desc(p, k, modulus)?;

        let unknowns: Vec<String> = v
            .get("unknowns")
            .and_then(|u| u.as_array())
            .ok_or_else(|| Error::Invalid("missing `unknowns`".into()))?
            .iter()
            .map(|u| {
                u.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::Invalid("unknown names must be strings".into()))
            })
            .collect::<Result<_>>()?;

        let equations = v
            .get("equations")
            .and_then(|e| e.as_array())
            .ok_or_else(|| Error::Invalid("missing `equations`".into()))?
            .iter()
            .map(|e| Equation::from_json(&fq, e))
            .collect::<Result<Vec<_>>>()?;

        let meta_v = v.get("meta").cloned().unwrap_or(serde_json::json!({}));
        let meta = Meta {
            template: meta_v
                .get("template")
                .and_then(|t| t.as_str())
                .unwrap_or("")
                .to_string(),
            params: meta_v.get("params").cloned().unwrap_or(serde_json::json!({})),
            cleared_denominators: meta_v
                .get("cleared_denominators")
                .and_then(|d| d.as_array())
                .map(|arr| {
                    arr.iter()
                        .map(|d| MultiPoly::from_json(&fq, d))
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?
                .unwrap_or_default(),
        };

        let sys = EquationSystem {
            field: fq,
            unknowns,
            equations,
            meta,
        };
        sys.validate()?;
        Ok(sys)
    }
}

/// Modulus rendered as a polynomial string over F_p, e.g. `t^2 + 1`.
pub fn modulus_string(fq: &Fq) -> String {
    let fp = Fq::new(fq.p(), 1).expect("p is prime");
    let coeffs = fq
        .modulus()
        .iter()
        .map(|&c| fp.from_u64(c))
        .collect::<Vec<_>>();
    Poly::from_coeffs(&fp, coeffs).to_string()
}

pub fn field_from_desc(p: u64, k: usize, modulus: &str) -> Result<Fq> {
    let fp = Fq::new(p, 1)?;
    let m = parse_ratfunc(&fp, modulus)?;
    if m.den().deg() != Some(0) {
        return Err(Error::BadModulus);
    }
    let coeffs: Vec<u64> = m
        .num()
        .coeffs()
        .iter()
        .map(|c| c.coeffs()[0])
        .collect();
    Fq::with_modulus(p, k, coeffs)
}

/// Folds a system into one polynomial with the same zero set over F_q(t):
/// f, g -> f^2 - t*g^2, as t is never a square in F_q(t). Product equations
/// are expanded first.
pub fn combine_to_single(fq: &Fq, sys: &EquationSystem) -> Result<MultiPoly> {
    let mut eqs = sys.equations.iter().map(|e| e.expanded(fq));
    let first = eqs
        .next()
        .ok_or_else(|| Error::Invalid("cannot combine an empty system".into()))?;
    let t = MultiPoly::constant(RatFunc::var(fq));
    Ok(eqs.fold(first, |acc, g| {
        acc.pow(fq, 2).sub(fq, &g.pow(fq, 2).mul(fq, &t))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_core::parse_ratfunc;

    fn f3() -> Fq {
        Fq::new(3, 1).unwrap()
    }

    fn mp_var(fq: &Fq, n: &str) -> MultiPoly {
        MultiPoly::var(fq, n)
    }

    #[test]
    fn serialization_roundtrip_is_exact() {
        let fq = f3();
        let mut sys = EquationSystem::new(fq.clone(), vec!["w".into(), "u".into()], "demo");
        let w = mp_var(&fq, "w");
        let u = mp_var(&fq, "u");
        sys.push(Equation::single(w.sub(&fq, &u.pow(&fq, 3))));
        sys.push(Equation::product(vec![
            w.clone(),
            u.sub(&fq, &MultiPoly::one(&fq)),
        ]));
        sys.meta.params = serde_json::json!({"p": 3});
        sys.meta.cleared_denominators.push(w.mul(&fq, &u));

        let bytes = sys.serialize();
        let parsed = EquationSystem::parse(&bytes).unwrap();
        assert_eq!(parsed, sys);
        assert_eq!(parsed.serialize(), bytes);
    }

    #[test]
    fn undeclared_unknown_is_rejected() {
        let fq = f3();
        let mut sys = EquationSystem::new(fq.clone(), vec!["w".into()], "demo");
        sys.push(Equation::single(mp_var(&fq, "z9")));
        let bytes = sys.serialize();
        assert!(matches!(
            EquationSystem::parse(&bytes),
            Err(Error::UndeclaredUnknown(n)) if n == "z9"
        ));
    }

    #[test]
    fn coefficients_parse_to_canonical_form() {
        let fq = f3();
        let raw = serde_json::json!({
            "field": {"p": 3, "k": 1, "modulus": "t"},
            "unknowns": ["x"],
            "equations": [{"terms": [{"c": "(t^2+1)/(t)", "m": {"x": 1}}]}],
            "meta": {"template": "demo", "params": {}, "cleared_denominators": []},
        });
        let sys = EquationSystem::from_json_value(&raw).unwrap();
        let (_, c) = sys.equations[0].factors()[0].terms().next().unwrap();
        assert_eq!(c, &parse_ratfunc(&fq, "(t^2 + 1)/(t)").unwrap());
    }

    #[test]
    fn combine_examples() {
        let fq = f3();
        let x = mp_var(&fq, "X");
        let y = mp_var(&fq, "Y");
        let one = MultiPoly::one(&fq);

        // single equation: identity fold
        let mut sys = EquationSystem::new(fq.clone(), vec!["X".into()], "demo");
        sys.push(Equation::single(x.sub(&fq, &one)));
        assert_eq!(combine_to_single(&fq, &sys).unwrap(), x.sub(&fq, &one));

        // {X - 1, Y - 1} -> (X-1)^2 - t (Y-1)^2
        let mut sys2 = EquationSystem::new(fq.clone(), vec!["X".into(), "Y".into()], "demo");
        sys2.push(Equation::single(x.sub(&fq, &one)));
        sys2.push(Equation::single(y.sub(&fq, &one)));
        let combined = combine_to_single(&fq, &sys2).unwrap();
        let t = MultiPoly::constant(RatFunc::var(&fq));
        let expect = x
            .sub(&fq, &one)
            .pow(&fq, 2)
            .sub(&fq, &y.sub(&fq, &one).pow(&fq, 2).mul(&fq, &t));
        assert_eq!(combined, expect);

        // vanishes at (1,1), nonzero at sampled non-solutions
        let at = |xs: &str, ys: &str| {
            let values: std::collections::BTreeMap<String, RatFunc> = [
                ("X".to_string(), parse_ratfunc(&fq, xs).unwrap()),
                ("Y".to_string(), parse_ratfunc(&fq, ys).unwrap()),
            ]
            .into();
            combined.eval(&fq, &values).unwrap()
        };
        assert!(at("1", "1").is_zero());
        assert!(!at("1", "2").is_zero());
        assert!(!at("t", "1").is_zero());
        assert!(!at("t", "t").is_zero());
    }

    #[test]
    fn modulus_strings() {
        assert_eq!(modulus_string(&Fq::new(3, 1).unwrap()), "t");
        assert_eq!(modulus_string(&Fq::new(3, 2).unwrap()), "t^2 + 1");
        assert_eq!(field_from_desc(3, 2, "t^2 + 1").unwrap(), Fq::new(3, 2).unwrap());
    }
}
