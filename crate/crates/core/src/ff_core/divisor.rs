//! Places and divisors of F_q(t).
//!
//! A place is a discrete valuation: a monic irreducible polynomial for the
//! finite places, plus the infinite place (the pole of t). Divisors are
//! finitely supported integer combinations; the divisor of a nonzero element
//! always has degree zero.

use std::collections::BTreeMap;

use super::fq::Fq;
use super::parser::parse_ratfunc;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinite,
    Finite(Poly),
}

impl Place {
    pub fn finite(fq: &Fq, poly: Poly) -> Result<Self> {
        let monic = poly.monic(fq);
        if !monic.is_irreducible(fq) {
            return Err(Error::Invalid(format!("{monic} is not irreducible")));
        }
        Ok(Place::Finite(monic))
    }

    /// Degree of the residue field over the constant field.
    pub fn degree(&self) -> u64 {
        match self {
            Place::Infinite => 1,
            Place::Finite(p) => p.deg().unwrap_or(0) as u64,
        }
    }

    pub fn parse(fq: &Fq, s: &str) -> Result<Self> {
        if s.trim() == "inf" {
            return Ok(Place::Infinite);
        }
        let x = parse_ratfunc(fq, s)?;
        if x.den().deg() != Some(0) {
            return Err(Error::Invalid(format!("{s} is not a polynomial")));
        }
        Place::finite(fq, x.num().clone())
    }
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// Finitely supported map Place -> Z with no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    map: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Divisor::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Place, i64)>) -> Self {
        let mut d = Divisor::new();
        for (p, m) in entries {
            d.add_place(p, m);
        }
        d
    }

    pub fn add_place(&mut self, place: Place, mult: i64) {
        let entry = self.map.entry(place.clone()).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.map.remove(&place);
        }
    }

    pub fn get(&self, place: &Place) -> i64 {
        self.map.get(place).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.map.iter().map(|(p, &m)| (p, m))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.map.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.map
            .iter()
            .map(|(p, &m)| m * p.degree() as i64)
            .sum()
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            map: self.map.iter().map(|(p, &m)| (p.clone(), -m)).collect(),
        }
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, m) in other.iter() {
            out.add_place(p.clone(), m);
        }
        out
    }

    /// True iff every multiplicity is nonnegative.
    pub fn is_integral(&self) -> bool {
        self.map.values().all(|&m| m >= 0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let obj: serde_json::Map<String, serde_json::Value> = self
            .map
            .iter()
            .map(|(p, &m)| (p.to_string(), serde_json::Value::from(m)))
            .collect();
        serde_json::Value::Object(obj)
    }

    pub fn from_json(fq: &Fq, v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Invalid("divisor must be a JSON object".into()))?;
        let mut d = Divisor::new();
        for (k, m) in obj {
            let mult = m
                .as_i64()
                .ok_or_else(|| Error::Invalid(format!("bad multiplicity for {k}")))?;
            d.add_place(Place::parse(fq, k)?, mult);
        }
        Ok(d)
    }
}

/// ord_P(x): multiplicity of P in the numerator minus the denominator;
/// at the infinite place deg(den) - deg(num).
pub fn ord_at(fq: &Fq, x: &RatFunc, place: &Place) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroOrder);
    }
    match place {
        Place::Infinite => {
            Ok(x.den().deg().unwrap() as i64 - x.num().deg().unwrap() as i64)
        }
        Place::Finite(p) => {
            Ok(poly_multiplicity(fq, x.num(), p) - poly_multiplicity(fq, x.den(), p))
        }
    }
}

fn poly_multiplicity(fq: &Fq, f: &Poly, p: &Poly) -> i64 {
    let mut count = 0;
    let mut rest = f.clone();
    loop {
        let (q, r) = rest.divrem(fq, p).expect("place polynomial is nonzero");
        if !r.is_zero() {
            return count;
        }
        count += 1;
        rest = q;
        if rest.deg().is_none() {
            return count;
        }
    }
}

/// The principal divisor of a nonzero element; always of degree 0.
pub fn divisor_of(fq: &Fq, x: &RatFunc) -> Result<Divisor> {
    if x.is_zero() {
        return Err(Error::ZeroOrder);
    }
    let mut d = Divisor::new();
    let (_, num_factors) = x.num().factor(fq);
    for (irr, m) in num_factors {
        d.add_place(Place::Finite(irr), m as i64);
    }
    let (_, den_factors) = x.den().factor(fq);
    for (irr, m) in den_factors {
        d.add_place(Place::Finite(irr), -(m as i64));
    }
    d.add_place(
        Place::Infinite,
        x.den().deg().unwrap() as i64 - x.num().deg().unwrap() as i64,
    );
    debug_assert_eq!(d.degree(), 0);
    Ok(d)
}

/// d_t(P) = ord_P of the local derivative of t: zero at every finite place
/// (nothing ramifies over F_q(t) itself) and -2 at the infinite place, where
/// t = 1/pi for the local parameter pi.
pub fn local_derivation_order(place: &Place) -> i64 {
    match place {
        Place::Infinite => -2,
        Place::Finite(_) => 0,
    }
}

/// True iff every multiplicity of D is divisible by e.
pub fn is_pth_power_divisor(d: &Divisor, e: u64) -> bool {
    if e == 0 {
        return false;
    }
    d.iter().all(|(_, m)| m.rem_euclid(e as i64) == 0)
}

/// True iff every place of the divisor of x outside `excluded` has
/// multiplicity +1 or -1.
pub fn is_squarefree_away_from(
    fq: &Fq,
    x: &RatFunc,
    excluded: &std::collections::BTreeSet<Place>,
) -> Result<bool> {
    let d = divisor_of(fq, x)?;
    let ok = d.iter().all(|(p, m)| excluded.contains(p) || m.abs() == 1);
    Ok(ok)
}
