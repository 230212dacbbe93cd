//! The numeric constants driving the defining-equation templates, and
//! admissible constant sets inside the finite constant field.
//!
//! Desk-scale instantiation: genus 0, M = F(t) itself, so the extension
//! degree is 1 and the basis-height term vanishes. All values are exact.

use num_rational::Rational64;

use super::system::modulus_string;
use crate::error::{Error, Result};
use crate::ff_core::{ord_at, Fq, FqElement, Place, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantsRecord {
    pub p: u64,
    /// Genus; fixed 0.
    pub g: i64,
    /// 1 for p > 2, 2 for p = 2.
    pub a: u32,
    /// C = H(t).
    pub c: u64,
    /// [M : F(t)]; fixed 1.
    pub k: u64,
    /// Basis height bound; fixed 0 when k = 1.
    pub h_omega: u64,
    /// Number of ramified primes; fixed 0.
    pub e: u64,
    pub c1: i64,
    pub c2: Rational64,
    pub c3: Rational64,
    pub c4: Rational64,
    pub c5: Rational64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// C1 = 2g - 2 + (p^a + 1)(C + g + 1)
/// C2 = (2g - 1 + (p^a + 1)(C + g + 1)) / (p^a - 1)
/// C3 = C + p^a C1 C2
/// C4 = k! k^k H_Omega C3
/// C5 = C4 + 2e + 2k + 4 H(t) + 2
pub fn compute_constants(p: u64, c: u64) -> Result<ConstantsRecord> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if c == 0 {
        return Err(Error::Invalid("C = H(t) must be at least 1".into()));
    }
    let g: i64 = 0;
    let a: u32 = if p > 2 { 1 } else { 2 };
    let k: u64 = 1;
    let h_omega: u64 = 0;
    let e: u64 = 0;
    let pa = (p as i64).pow(a);
    let c_i = c as i64;
    let c1 = 2 * g - 2 + (pa + 1) * (c_i + g + 1);
    let c2 = Rational64::new(2 * g - 1 + (pa + 1) * (c_i + g + 1), pa - 1);
    let c3 = Rational64::from_integer(c_i) + Rational64::from_integer(pa * c1) * c2;
    let kfact: i64 = (1..=k as i64).product();
    let c4 = Rational64::from_integer(kfact * (k as i64).pow(k as u32) * h_omega as i64) * c3;
    let c5 = c4
        + Rational64::from_integer(2 * e as i64 + 2 * k as i64 + 4 * c_i + 2);
    Ok(ConstantsRecord {
        p,
        g,
        a,
        c,
        k,
        h_omega,
        e,
        c1,
        c2,
        c3,
        c4,
        c5,
    })
}

fn rational_string(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl ConstantsRecord {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "g": self.g,
            "a": self.a,
            "C": self.c,
            "k": self.k,
            "H_omega": self.h_omega,
            "e": self.e,
            "C1": self.c1,
            "C2": rational_string(&self.c2),
            "C3": rational_string(&self.c3),
            "C4": rational_string(&self.c4),
            "C5": rational_string(&self.c5),
        })
    }
}

/// A tuple of constants with pairwise coprime multiplicative orders, each
/// order exceeding the exponent bound, together with their Frobenius orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantSet {
    field: Fq,
    elements: Vec<FqElement>,
    orbits: Vec<Vec<FqElement>>,
    orders: Vec<u64>,
    exp_bound: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Lexicographically first ascending tuple of `count` pairwise coprime
/// divisors of `group_order`, all strictly above `exp_bound`.
fn find_order_tuple(group_order: u64, count: usize, exp_bound: u64) -> Option<Vec<u64>> {
    let candidates: Vec<u64> = divisors(group_order)
        .into_iter()
        .filter(|&d| d > exp_bound)
        .collect();
    fn rec(candidates: &[u64], start: usize, chosen: &mut Vec<u64>, count: usize) -> bool {
        if chosen.len() == count {
            return true;
        }
        for i in start..candidates.len() {
            let d = candidates[i];
            if chosen.iter().all(|&c| gcd(c, d) == 1) {
                chosen.push(d);
                if rec(candidates, i + 1, chosen, count) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = vec![];
    if rec(&candidates, 0, &mut chosen, count) {
        Some(chosen)
    } else {
        None
    }
}

/// Builds a constant set of the given size. The independence requirement
/// (c_i^{n_i} != c_j^{n_j} for all nonzero |n| <= exp_bound) is realized by
/// pairwise coprime orders, each strictly greater than exp_bound. When the
/// field cannot supply one, the error names the smallest extension degree
/// (searched by the order structure of p^k - 1) that can.
pub fn build_constant_set(fq: &Fq, count: usize, exp_bound: u64) -> Result<ConstantSet> {
    if count == 0 {
        return Err(Error::EmptyConstantSet);
    }
    let group_order = fq.q() - 1;
    let orders = match find_order_tuple(group_order, count, exp_bound) {
        Some(orders) => orders,
        None => {
            let mut smallest = None;
            for k2 in (fq.k() as u64 + 1)..=24 {
                let q2 = (fq.p() as u128).pow(k2 as u32);
                if q2 > u64::MAX as u128 {
                    break;
                }
                if find_order_tuple(q2 as u64 - 1, count, exp_bound).is_some() {
                    smallest = Some(k2);
                    break;
                }
            }
            return Err(Error::FieldTooSmall {
                smallest_sufficient_k: smallest,
            });
        }
    };
    let mut elements = vec![];
    let mut orbits = vec![];
    for &order in &orders {
        let c = fq
            .elements()
            .find(|e| !e.is_zero() && fq.element_order(e).unwrap() == order)
            .expect("cyclic group has elements of every divisor order");
        orbits.push(fq.frobenius_orbit(&c));
        elements.push(c);
    }
    Ok(ConstantSet {
        field: fq.clone(),
        elements,
        orbits,
        orders,
        exp_bound,
    })
}

impl ConstantSet {
    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &FqElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[FqElement] {
        &self.elements
    }

    /// V_i = Frobenius orbit of c_i.
    pub fn orbit(&self, i: usize) -> &[FqElement] {
        &self.orbits[i]
    }

    /// r_i = |V_i|.
    pub fn orbit_size(&self, i: usize) -> usize {
        self.orbits[i].len()
    }

    /// d_{i,j} = c_i^{p^j}; j may exceed the orbit size and wraps around.
    pub fn d(&self, i: usize, j: u32) -> &FqElement {
        &self.orbits[i][j as usize % self.orbits[i].len()]
    }

    pub fn order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    pub fn exp_bound(&self) -> u64 {
        self.exp_bound
    }

    /// Degree over F_p of the subfield F_1 = F_p(c_0, ..., c_B): the lcm of
    /// the orbit sizes.
    pub fn generated_subfield_degree(&self) -> usize {
        self.orbits
            .iter()
            .map(|o| o.len())
            .fold(1, |acc, r| acc * r / gcd(acc as u64, r as u64) as usize)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "field": {"p": self.field.p(), "k": self.field.k(), "modulus": modulus_string(&self.field)},
            "elements": self.elements.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "orbits": self.orbits.iter().map(|o| o.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "orders": self.orders,
            "exp_bound": self.exp_bound,
        })
    }
}

/// The subset C_z: keeps c_i iff no orbit member d of V_i makes z - d vanish
/// at an excluded place. Returns the kept indices.
pub fn admissible_constants(
    fq: &Fq,
    z: &RatFunc,
    cs: &ConstantSet,
    excluded: &std::collections::BTreeSet<Place>,
) -> Result<Vec<usize>> {
    if z.is_constant() {
        return Err(Error::Invalid("z must be nonconstant".into()));
    }
    let mut kept = vec![];
    'outer: for i in 0..cs.len() {
        for d in cs.orbit(i) {
            let shifted = z.sub(fq, &RatFunc::constant(fq, d.clone()));
            for place in excluded {
                if ord_at(fq, &shifted, place)? > 0 {
                    continue 'outer;
                }
            }
        }
        kept.push(i);
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_core::parse_ratfunc;

    #[test]
    fn constants_p3_c1() {
        let r = compute_constants(3, 1).unwrap();
        assert_eq!(r.a, 1);
        assert_eq!(r.c1, 6);
        assert_eq!(r.c2, Rational64::new(7, 2));
        assert_eq!(r.c3, Rational64::from_integer(64));
        assert_eq!(r.c4, Rational64::from_integer(0));
        assert_eq!(r.c5, Rational64::from_integer(8));
    }

    #[test]
    fn constants_p2_c1() {
        let r = compute_constants(2, 1).unwrap();
        assert_eq!(r.a, 2);
        assert_eq!(r.c1, 8);
        assert_eq!(r.c2, Rational64::from_integer(3));
        assert_eq!(r.c3, Rational64::from_integer(97));
        assert_eq!(r.c4, Rational64::from_integer(0));
        assert_eq!(r.c5, Rational64::from_integer(8));
    }

    #[test]
    fn constants_a_rule() {
        assert_eq!(compute_constants(5, 1).unwrap().a, 1);
        assert_eq!(compute_constants(13, 2).unwrap().a, 1);
        assert!(compute_constants(6, 1).is_err());
    }

    #[test]
    fn f4_too_small_names_k4() {
        let f4 = Fq::new(2, 2).unwrap();
        // |F_4*| = 3: no two coprime orders above 1 exist; 2^4 - 1 = 15 = 3 * 5 works.
        match build_constant_set(&f4, 2, 1) {
            Err(Error::FieldTooSmall {
                smallest_sufficient_k: Some(4),
            }) => {}
            other => panic!("expected FieldTooSmall with k = 4, got {other:?}"),
        }
    }

    #[test]
    fn f81_pair_orders() {
        let f81 = Fq::new(3, 4).unwrap();
        let cs = build_constant_set(&f81, 2, 4).unwrap();
        assert_eq!(cs.order(0), 5);
        assert_eq!(cs.order(1), 8);
        assert_eq!(gcd(cs.order(0), cs.order(1)), 1);
    }

    #[test]
    fn singleton_is_fine() {
        let f9 = Fq::new(3, 2).unwrap();
        let cs = build_constant_set(&f9, 1, 3).unwrap();
        assert_eq!(cs.len(), 1);
        assert!(cs.order(0) > 3);
    }

    #[test]
    fn independence_is_exhaustively_true() {
        let f16 = Fq::new(2, 4).unwrap();
        let cs = build_constant_set(&f16, 2, 2).unwrap();
        assert_eq!((cs.order(0), cs.order(1)), (3, 5));
        let b = cs.exp_bound() as i64;
        for i in 0..cs.len() {
            for j in 0..cs.len() {
                if i == j {
                    continue;
                }
                for ni in -b..=b {
                    for nj in -b..=b {
                        if ni == 0 || nj == 0 {
                            continue;
                        }
                        let lhs = f16.pow(
                            cs.element(i),
                            ni.rem_euclid(cs.order(i) as i64) as u128,
                        );
                        let rhs = f16.pow(
                            cs.element(j),
                            nj.rem_euclid(cs.order(j) as i64) as u128,
                        );
                        assert_ne!(lhs, rhs, "c_{i}^{ni} = c_{j}^{nj}");
                    }
                }
            }
        }
    }

    #[test]
    fn orbits_are_frobenius_closed() {
        let f81 = Fq::new(3, 4).unwrap();
        let cs = build_constant_set(&f81, 2, 4).unwrap();
        for i in 0..cs.len() {
            let orbit = cs.orbit(i);
            for (j, d) in orbit.iter().enumerate() {
                assert_eq!(cs.d(i, j as u32), d);
                assert!(orbit.contains(&f81.frobenius(d)));
            }
        }
    }

    #[test]
    fn admissible_examples() {
        let f9 = Fq::new(3, 2).unwrap();
        let cs = build_constant_set(&f9, 1, 3).unwrap(); // one element of order 8
        let t = RatFunc::var(&f9);
        let excluded: std::collections::BTreeSet<Place> =
            [Place::parse(&f9, "t").unwrap(), Place::Infinite].into();

        // z = t + 1 drops c iff some orbit member equals 1.
        let z = parse_ratfunc(&f9, "t + 1").unwrap();
        let kept = admissible_constants(&f9, &z, &cs, &excluded).unwrap();
        let orbit_has_one = cs.orbit(0).contains(&f9.one());
        assert_eq!(kept.is_empty(), orbit_has_one);

        // z = t with excluded {(t)}: kept iff no orbit member is 0 - always.
        let only_t: std::collections::BTreeSet<Place> = [Place::parse(&f9, "t").unwrap()].into();
        let kept = admissible_constants(&f9, &t, &cs, &only_t).unwrap();
        assert_eq!(kept, vec![0]);

        // z = t^2, excluded {(t - c)}: dropped iff c^2 equals some orbit member.
        let c = cs.element(0).clone();
        let z2 = t.mul(&f9, &t);
        let shift = Place::Finite(
            crate::ff_core::Poly::from_coeffs(&f9, vec![f9.neg(&c), f9.one()]),
        );
        let excl: std::collections::BTreeSet<Place> = [shift].into();
        let kept = admissible_constants(&f9, &z2, &cs, &excl).unwrap();
        let c2 = f9.mul(&c, &c);
        let collides = cs.orbit(0).contains(&c2);
        assert_eq!(kept.is_empty(), collides);
    }

    #[test]
    fn constant_set_requires_elements() {
        let f9 = Fq::new(3, 2).unwrap();
        assert!(matches!(
            build_constant_set(&f9, 0, 1),
            Err(Error::EmptyConstantSet)
        ));
    }
}
