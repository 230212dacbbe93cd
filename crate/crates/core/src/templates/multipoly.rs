//! Sparse multivariate polynomials over F_q(t) in named unknowns.
//!
//! Terms are kept in a BTreeMap keyed by monomial, so term order is the
//! canonical lexicographic order on (unknown name, exponent) pairs and
//! serialization is byte-stable.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ff_core::{parse_ratfunc, Fq, RatFunc};

/// Exponent map with no zero entries; the empty monomial is the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(name: &str) -> Self {
        let mut m = BTreeMap::new();
        m.insert(name.to_string(), 1);
        Monomial(m)
    }

    pub fn from_exponents(entries: impl IntoIterator<Item = (String, u32)>) -> Self {
        Monomial(entries.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (name, e) in &other.0 {
            *out.entry(name.clone()).or_insert(0) += e;
        }
        Monomial(out)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(n, &e)| (n.as_str(), e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, RatFunc>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn one(fq: &Fq) -> Self {
        MultiPoly::constant(RatFunc::one(fq))
    }

    pub fn var(fq: &Fq, name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(name), RatFunc::one(fq));
        MultiPoly { terms }
    }

    pub fn term(coeff: RatFunc, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn support(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (name, _) in m.exponents() {
                out.insert(name.to_string());
            }
        }
        out
    }

    fn insert(&mut self, fq: &Fq, monomial: Monomial, coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&monomial) {
            Some(existing) => {
                let sum = existing.add(fq, &coeff);
                if sum.is_zero() {
                    self.terms.remove(&monomial);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(monomial, coeff);
            }
        }
    }

    pub fn add(&self, fq: &Fq, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(fq, m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, fq: &Fq, other: &MultiPoly) -> MultiPoly {
        self.add(fq, &other.neg(fq))
    }

    pub fn neg(&self, fq: &Fq) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg(fq)))
                .collect(),
        }
    }

    pub fn mul(&self, fq: &Fq, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert(fq, m1.mul(m2), c1.mul(fq, c2));
            }
        }
        out
    }

    pub fn scale(&self, fq: &Fq, c: &RatFunc) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, old)| (m.clone(), old.mul(fq, c)))
                .collect(),
        }
    }

    pub fn pow(&self, fq: &Fq, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(fq);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(fq, &base);
            }
            base = base.mul(fq, &base);
            e >>= 1;
        }
        acc
    }

    /// Substitutes values for a subset of the unknowns.
    pub fn substitute(&self, fq: &Fq, values: &BTreeMap<String, RatFunc>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = vec![];
            for (name, e) in m.exponents() {
                match values.get(name) {
                    Some(v) => {
                        coeff = coeff.mul(fq, &v.pow(fq, e as i64).expect("nonnegative power"));
                    }
                    None => rest.push((name.to_string(), e)),
                }
            }
            out.insert(fq, Monomial::from_exponents(rest), coeff);
        }
        out
    }

    /// Full evaluation; every unknown in the support must be assigned.
    pub fn eval(&self, fq: &Fq, values: &BTreeMap<String, RatFunc>) -> Result<RatFunc> {
        let mut acc = RatFunc::zero(fq);
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (name, e) in m.exponents() {
                let v = values
                    .get(name)
                    .ok_or_else(|| Error::MissingUnknown(name.to_string()))?;
                term = term.mul(fq, &v.pow(fq, e as i64).expect("nonnegative power"));
            }
            acc = acc.add(fq, &term);
        }
        Ok(acc)
    }

    /// Renames every unknown through the given function.
    pub fn rename(&self, f: &dyn Fn(&str) -> String) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let renamed =
                        Monomial::from_exponents(m.exponents().map(|(n, e)| (f(n), e)));
                    (renamed, c.clone())
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps: serde_json::Map<String, serde_json::Value> = m
                    .exponents()
                    .map(|(n, e)| (n.to_string(), serde_json::Value::from(e)))
                    .collect();
                serde_json::json!({"c": c.to_string(), "m": exps})
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(fq: &Fq, v: &serde_json::Value) -> Result<MultiPoly> {
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::Invalid("polynomial needs a `terms` array".into()))?;
        let mut out = MultiPoly::zero();
        for t in terms {
            let c = t
                .get("c")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::Invalid("term needs a coefficient string `c`".into()))?;
            let coeff = parse_ratfunc(fq, c)?;
            let m = t
                .get("m")
                .and_then(|m| m.as_object())
                .ok_or_else(|| Error::Invalid("term needs an exponent object `m`".into()))?;
            let mut exps = vec![];
            for (name, e) in m {
                let e = e
                    .as_u64()
                    .ok_or_else(|| Error::Invalid(format!("bad exponent for {name}")))?;
                exps.push((name.clone(), e as u32));
            }
            out.insert(fq, Monomial::from_exponents(exps), coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::new(3, 1).unwrap()
    }

    fn assign(fq: &Fq, pairs: &[(&str, &str)]) -> BTreeMap<String, RatFunc> {
        pairs
            .iter()
            .map(|(n, v)| (n.to_string(), parse_ratfunc(fq, v).unwrap()))
            .collect()
    }

    #[test]
    fn ring_ops() {
        let fq = f3();
        let x = MultiPoly::var(&fq, "x");
        let y = MultiPoly::var(&fq, "y");
        let f = x.add(&fq, &y).pow(&fq, 3);
        // (x + y)^3 = x^3 + y^3 in characteristic 3
        let expect = x.pow(&fq, 3).add(&fq, &y.pow(&fq, 3));
        assert_eq!(f, expect);
        assert!(f.sub(&fq, &expect).is_zero());
    }

    #[test]
    fn substitution_and_eval() {
        let fq = f3();
        let x = MultiPoly::var(&fq, "x");
        let y = MultiPoly::var(&fq, "y");
        let f = x.mul(&fq, &y).add(&fq, &MultiPoly::one(&fq));
        let partial = f.substitute(&fq, &assign(&fq, &[("x", "t")]));
        assert_eq!(partial.support(), ["y".to_string()].into());
        let full = f.eval(&fq, &assign(&fq, &[("x", "t"), ("y", "(1)/(t)")])).unwrap();
        assert_eq!(full, parse_ratfunc(&fq, "2").unwrap());
        assert!(matches!(
            f.eval(&fq, &assign(&fq, &[("x", "t")])),
            Err(Error::MissingUnknown(_))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let fq = f3();
        let x = MultiPoly::var(&fq, "x");
        let f = x
            .pow(&fq, 2)
            .scale(&fq, &parse_ratfunc(&fq, "(t^2+1)/t").unwrap())
            .add(&fq, &MultiPoly::constant(parse_ratfunc(&fq, "2").unwrap()));
        let j = f.to_json();
        assert_eq!(MultiPoly::from_json(&fq, &j).unwrap(), f);
        // canonical term order: constant first, then x^2
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.find("\"m\":{}").unwrap() < s.find("\"x\":2").unwrap());
    }
}
