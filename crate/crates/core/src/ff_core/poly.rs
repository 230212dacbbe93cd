//! Dense univariate polynomials over F_{p^k} in the transcendental `t`.
//!
//! Coefficients are little-endian and trailing zeros are trimmed, so the zero
//! polynomial has an empty coefficient vector. Factorization is exact:
//! squarefree split (with p-th-root descent in characteristic p), then
//! distinct-degree and deterministic equal-degree splitting.

use super::fq::{Fq, FqElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<FqElement>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn from_coeffs(fq: &Fq, coeffs: Vec<FqElement>) -> Self {
        let mut p = Poly { coeffs };
        let _ = fq;
        p.trim();
        p
    }

    pub fn constant(fq: &Fq, c: FqElement) -> Self {
        Poly::from_coeffs(fq, vec![c])
    }

    pub fn one(fq: &Fq) -> Self {
        Poly::constant(fq, fq.one())
    }

    /// The polynomial `t`.
    pub fn var(fq: &Fq) -> Self {
        Poly::from_coeffs(fq, vec![fq.zero(), fq.one()])
    }

    /// c * t^d.
    pub fn monomial(fq: &Fq, c: FqElement, d: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![fq.zero(); d + 1];
        coeffs[d] = c;
        Poly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    pub fn coeff(&self, fq: &Fq, i: usize) -> FqElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| fq.zero())
    }

    pub fn leading(&self) -> Option<&FqElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self, fq: &Fq) -> bool {
        self.leading() == Some(&fq.one())
    }

    pub fn add(&self, fq: &Fq, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(fq.add(&self.coeff(fq, i), &other.coeff(fq, i)));
        }
        Poly::from_coeffs(fq, out)
    }

    pub fn sub(&self, fq: &Fq, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(fq.sub(&self.coeff(fq, i), &other.coeff(fq, i)));
        }
        Poly::from_coeffs(fq, out)
    }

    pub fn neg(&self, fq: &Fq) -> Poly {
        Poly::from_coeffs(fq, self.coeffs.iter().map(|c| fq.neg(c)).collect())
    }

    pub fn mul(&self, fq: &Fq, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![fq.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = fq.add(&out[i + j], &fq.mul(a, b));
            }
        }
        Poly::from_coeffs(fq, out)
    }

    pub fn scale(&self, fq: &Fq, c: &FqElement) -> Poly {
        Poly::from_coeffs(fq, self.coeffs.iter().map(|a| fq.mul(a, c)).collect())
    }

    pub fn pow(&self, fq: &Fq, e: u32) -> Poly {
        let mut acc = Poly::one(fq);
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

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, fq: &Fq, div: &Poly) -> Result<(Poly, Poly)> {
        let dd = div.deg().ok_or(Error::DivisionByZero)?;
        let lead_inv = fq.inv(div.leading().unwrap())?;
        let mut rem = self.clone();
        let mut quot = vec![fq.zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.deg() {
            if dr < dd {
                break;
            }
            let c = fq.mul(rem.leading().unwrap(), &lead_inv);
            quot[dr - dd] = c.clone();
            for i in 0..=dd {
                let idx = dr - dd + i;
                let s = fq.mul(&c, &div.coeff(fq, i));
                rem.coeffs[idx] = fq.sub(&rem.coeffs[idx], &s);
            }
            rem.trim();
        }
        Ok((Poly::from_coeffs(fq, quot), rem))
    }

    pub fn rem(&self, fq: &Fq, div: &Poly) -> Result<Poly> {
        Ok(self.divrem(fq, div)?.1)
    }

    /// Exact division; panics in debug builds if the remainder is nonzero.
    pub fn div_exact(&self, fq: &Fq, div: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(fq, div)?;
        debug_assert!(r.is_zero(), "division not exact");
        Ok(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, fq: &Fq, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(fq, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(fq)
    }

    pub fn monic(&self, fq: &Fq) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = fq.inv(lc).expect("nonzero leading coefficient");
                self.scale(fq, &inv)
            }
        }
    }

    /// Formal derivative in t.
    pub fn derivative(&self, fq: &Fq) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let out = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let scalar = fq.from_u64((i as u64 + 1) % fq.p());
                fq.mul(c, &scalar)
            })
            .collect();
        Poly::from_coeffs(fq, out)
    }

    pub fn eval(&self, fq: &Fq, x: &FqElement) -> FqElement {
        let mut acc = fq.zero();
        for c in self.coeffs.iter().rev() {
            acc = fq.add(&fq.mul(&acc, x), c);
        }
        acc
    }

    /// t -> t^(p^e) with coefficients raised to the p^e-th power; this is the
    /// polynomial equal to self^(p^e).
    pub fn frobenius_pow(&self, fq: &Fq, e: u32) -> Poly {
        if self.is_zero() || e == 0 {
            return self.clone();
        }
        let step = (fq.p() as u128).pow(e);
        let step = usize::try_from(step).expect("Frobenius exponent fits usize");
        let mut out = vec![fq.zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * step] = fq.frobenius_pow(c, e);
        }
        Poly::from_coeffs(fq, out)
    }

    pub fn powmod(&self, fq: &Fq, mut e: u128, m: &Poly) -> Poly {
        let mut acc = Poly::one(fq).rem(fq, m).unwrap();
        let mut base = self.rem(fq, m).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(fq, &base).rem(fq, m).unwrap();
            }
            base = base.mul(fq, &base).rem(fq, m).unwrap();
            e >>= 1;
        }
        acc
    }

    /// p-th root of a polynomial with zero derivative (all exponents divisible by p).
    fn pth_root(&self, fq: &Fq) -> Poly {
        let p = fq.p() as usize;
        let mut out = vec![fq.zero(); self.coeffs.len() / p + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            debug_assert_eq!(i % p, 0);
            // c^(1/p) = c^(p^(k-1)) since c^(p^k) = c.
            out[i / p] = fq.frobenius_pow(c, fq.k() as u32 - 1);
        }
        Poly::from_coeffs(fq, out)
    }

    pub fn is_irreducible(&self, fq: &Fq) -> bool {
        let n = match self.deg() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let q = fq.q() as u128;
        let x = Poly::var(fq);
        let monic = self.monic(fq);
        // x^(q^n) mod f
        let mut xq = x.rem(fq, &monic).unwrap();
        for _ in 0..n {
            xq = xq.powmod(fq, q, &monic);
        }
        if xq != x.rem(fq, &monic).unwrap() {
            return false;
        }
        let mut primes = vec![];
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                primes.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for l in primes {
            let mut h = x.rem(fq, &monic).unwrap();
            for _ in 0..(n / l) {
                h = h.powmod(fq, q, &monic);
            }
            let diff = h.sub(fq, &x);
            if diff.gcd(fq, &monic).deg() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Full factorization: returns the leading unit and the monic irreducible
    /// factors with multiplicities, sorted canonically.
    pub fn factor(&self, fq: &Fq) -> (FqElement, Vec<(Poly, u32)>) {
        let lc = match self.leading() {
            None => return (fq.zero(), vec![]),
            Some(lc) => lc.clone(),
        };
        let mut factors = std::collections::BTreeMap::<Poly, u32>::new();
        factor_rec(fq, &self.monic(fq), 1, &mut factors);
        (lc, factors.into_iter().collect())
    }
}

fn factor_rec(fq: &Fq, f: &Poly, mult: u32, out: &mut std::collections::BTreeMap<Poly, u32>) {
    match f.deg() {
        None | Some(0) => return,
        _ => {}
    }
    let df = f.derivative(fq);
    if df.is_zero() {
        // f is a p-th power.
        let root = f.pth_root(fq);
        factor_rec(fq, &root, mult * fq.p() as u32, out);
        return;
    }
    let g = f.gcd(fq, &df);
    if g.deg() == Some(0) {
        for (irr, m) in ddf(fq, f) {
            *out.entry(irr).or_insert(0) += m * mult;
        }
        return;
    }
    let sqfree = f.div_exact(fq, &g).unwrap();
    factor_rec(fq, &sqfree, mult, out);
    factor_rec(fq, &g, mult, out);
}

/// Distinct-degree factorization of a squarefree monic polynomial,
/// followed by equal-degree splitting.
fn ddf(fq: &Fq, f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = vec![];
    let mut rest = f.clone();
    let q = fq.q() as u128;
    let x = Poly::var(fq);
    let mut xq = x.rem(fq, &rest).unwrap();
    let mut d = 1u32;
    while rest.deg().map_or(false, |n| n >= 2 * d as usize) {
        xq = xq.powmod(fq, q, &rest);
        let g = xq.sub(fq, &x).gcd(fq, &rest);
        if g.deg().map_or(false, |n| n > 0) {
            for irr in edf(fq, &g, d as usize) {
                out.push((irr, 1));
            }
            rest = rest.div_exact(fq, &g).unwrap();
            xq = xq.rem(fq, &rest).unwrap();
        }
        d += 1;
    }
    if rest.deg().map_or(false, |n| n > 0) {
        out.push((rest, 1));
    }
    out
}

/// Deterministic equal-degree splitting: candidates are tried in canonical
/// enumeration order, so factor lists are reproducible.
fn edf(fq: &Fq, g: &Poly, d: usize) -> Vec<Poly> {
    let n = g.deg().unwrap();
    if n == d {
        return vec![g.monic(fq)];
    }
    let q = fq.q() as u128;
    for a in enumerate_polys_below_degree(fq, n) {
        if a.deg().map_or(true, |da| da == 0) {
            continue;
        }
        let w = if fq.p() == 2 {
            // Trace map to F_2 over the degree-d factor field.
            let reps = (d * fq.k()) as u32;
            let mut acc = a.rem(fq, g).unwrap();
            let mut cur = acc.clone();
            for _ in 1..reps {
                cur = cur.mul(fq, &cur).rem(fq, g).unwrap();
                acc = acc.add(fq, &cur);
            }
            acc.gcd(fq, g)
        } else {
            let e = q.checked_pow(d as u32).expect("q^d fits u128");
            let b = a.powmod(fq, (e - 1) / 2, g);
            b.sub(fq, &Poly::one(fq)).gcd(fq, g)
        };
        if let Some(dw) = w.deg() {
            if dw > 0 && dw < n {
                let mut parts = edf(fq, &w, d);
                parts.extend(edf(fq, &g.div_exact(fq, &w).unwrap(), d));
                parts.sort();
                return parts;
            }
        }
    }
    unreachable!("equal-degree splitting exhausts candidates");
}

/// All polynomials of degree < bound in canonical order (the zero polynomial first).
pub fn enumerate_polys_below_degree<'a>(fq: &'a Fq, bound: usize) -> impl Iterator<Item = Poly> + 'a {
    let q = fq.q();
    let total = (q as u128).pow(bound as u32);
    (0..total).map(move |n| {
        let mut coeffs = vec![];
        let mut rest = n;
        for _ in 0..bound {
            coeffs.push(fq.element((rest % q as u128) as u64));
            rest /= q as u128;
        }
        Poly::from_coeffs(fq, coeffs)
    })
}

/// All monic polynomials of exact degree d in canonical order.
pub fn enumerate_monic_polys<'a>(fq: &'a Fq, d: usize) -> impl Iterator<Item = Poly> + 'a {
    enumerate_polys_below_degree(fq, d).map(move |low| {
        let mut coeffs = low.coeffs().to_vec();
        coeffs.resize(d, fq.zero());
        coeffs.push(fq.one());
        Poly::from_coeffs(fq, coeffs)
    })
}

/// All monic irreducibles of degree exactly d.
pub fn enumerate_irreducibles<'a>(fq: &'a Fq, d: usize) -> impl Iterator<Item = Poly> + 'a {
    enumerate_monic_polys(fq, d).filter(move |f| f.is_irreducible(fq))
}

impl std::fmt::Display for Poly {
    /// Canonical text form in descending degree, e.g. `g*t^2 + 2*t + 1`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let tpow = match i {
                0 => String::new(),
                1 => "t".to_string(),
                i => format!("t^{i}"),
            };
            let coeff_str = match c.single_term() {
                Some((1, 0)) => {
                    if i == 0 {
                        "1".to_string()
                    } else {
                        String::new()
                    }
                }
                _ => {
                    let s = c.to_string();
                    if i > 0 && s.contains('+') {
                        format!("({s})")
                    } else {
                        s
                    }
                }
            };
            let part = match (coeff_str.is_empty(), tpow.is_empty()) {
                (true, _) => tpow,
                (false, true) => coeff_str,
                (false, false) => format!("{coeff_str}*{tpow}"),
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fq {
        Fq::new(3, 1).unwrap()
    }

    fn poly(fq: &Fq, coeffs: &[u64]) -> Poly {
        Poly::from_coeffs(fq, coeffs.iter().map(|&c| fq.from_u64(c)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let fq = f3();
        let a = poly(&fq, &[1, 0, 2, 1, 1]);
        let b = poly(&fq, &[2, 1, 1]);
        let (q, r) = a.divrem(&fq, &b).unwrap();
        assert_eq!(q.mul(&fq, &b).add(&fq, &r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn gcd_of_products() {
        let fq = f3();
        let a = poly(&fq, &[1, 1]); // t + 1
        let b = poly(&fq, &[2, 1]); // t + 2
        let c = poly(&fq, &[0, 1]); // t
        let left = a.mul(&fq, &b);
        let right = a.mul(&fq, &c);
        assert_eq!(left.gcd(&fq, &right), a);
    }

    #[test]
    fn factor_t2_minus_1_over_f3() {
        let fq = f3();
        // t^2 - 1 = (t + 1)(t + 2) over F_3
        let f = poly(&fq, &[2, 0, 1]);
        let (lc, factors) = f.factor(&fq);
        assert_eq!(lc, fq.one());
        assert_eq!(
            factors,
            vec![(poly(&fq, &[1, 1]), 1), (poly(&fq, &[2, 1]), 1)]
        );
    }

    #[test]
    fn factor_with_multiplicity_and_pth_powers() {
        let fq = f3();
        // (t + 1)^3 * t^2: derivative-zero descent plus multiplicity handling.
        let f = poly(&fq, &[1, 1]).pow(&fq, 3).mul(&fq, &poly(&fq, &[0, 1]).pow(&fq, 2));
        let (_, factors) = f.factor(&fq);
        assert_eq!(
            factors,
            vec![(poly(&fq, &[0, 1]), 2), (poly(&fq, &[1, 1]), 3)]
        );
    }

    #[test]
    fn factor_irreducible_quadratic() {
        let fq = f3();
        let f = poly(&fq, &[1, 0, 1]); // t^2 + 1, irreducible over F_3
        assert!(f.is_irreducible(&fq));
        let (_, factors) = f.factor(&fq);
        assert_eq!(factors, vec![(f, 1)]);
    }

    #[test]
    fn factor_over_extension_field() {
        let f9 = Fq::new(3, 2).unwrap();
        // t^2 + 1 splits over F_9 as (t + g)(t - g) with g^2 = -1.
        let one = f9.one();
        let f = Poly::from_coeffs(&f9, vec![one.clone(), f9.zero(), one]);
        let (_, factors) = f.factor(&f9);
        assert_eq!(factors.len(), 2);
        for (irr, m) in &factors {
            assert_eq!(*m, 1);
            assert_eq!(irr.deg(), Some(1));
        }
    }

    #[test]
    fn factor_char2() {
        let f2 = Fq::new(2, 1).unwrap();
        // t^4 + t = t (t + 1)(t^2 + t + 1)
        let f = Poly::from_coeffs(
            &f2,
            vec![f2.zero(), f2.one(), f2.zero(), f2.zero(), f2.one()],
        );
        let (_, factors) = f.factor(&f2);
        let degs: Vec<_> = factors.iter().map(|(p, m)| (p.deg().unwrap(), *m)).collect();
        assert_eq!(degs, vec![(1, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn frobenius_pow_matches_repeated_multiplication() {
        let fq = f3();
        let f = poly(&fq, &[1, 2, 1]);
        assert_eq!(f.frobenius_pow(&fq, 1), f.pow(&fq, 3));
        let f9 = Fq::new(3, 2).unwrap();
        let g = Poly::from_coeffs(&f9, vec![f9.gen(), f9.one()]);
        assert_eq!(g.frobenius_pow(&f9, 1), g.pow(&f9, 3));
    }

    #[test]
    fn irreducible_enumeration_counts() {
        let fq = f3();
        assert_eq!(enumerate_irreducibles(&fq, 1).count(), 3);
        assert_eq!(enumerate_irreducibles(&fq, 2).count(), 3);
        assert_eq!(enumerate_irreducibles(&fq, 3).count(), 8);
        let f2 = Fq::new(2, 1).unwrap();
        assert_eq!(enumerate_irreducibles(&f2, 3).count(), 2);
        assert_eq!(enumerate_irreducibles(&f2, 4).count(), 3);
    }

    #[test]
    fn display_roundtrip_forms() {
        let fq = f3();
        assert_eq!(poly(&fq, &[]).to_string(), "0");
        assert_eq!(poly(&fq, &[1, 2, 1]).to_string(), "t^2 + 2*t + 1");
        assert_eq!(poly(&fq, &[0, 1]).to_string(), "t");
        let f9 = Fq::new(3, 2).unwrap();
        let p = Poly::from_coeffs(&f9, vec![f9.from_u64(2), f9.gen()]);
        assert_eq!(p.to_string(), "g*t + 2");
    }
}
