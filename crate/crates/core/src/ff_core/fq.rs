//! Arithmetic in F_{p^k}.
//!
//! A [`Fq`] is a field context: the prime `p`, the extension degree `k`, and
//! a monic irreducible modulus of degree `k` over F_p defining the extension.
//! Elements are plain coefficient vectors with respect to the power basis of
//! the modulus root `g`; every operation goes through the context.

use crate::error::{Error, Result};

/// Field context for F_{p^k} = F_p[g]/(modulus).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    p: u64,
    k: usize,
    /// Monic irreducible of degree `k` over F_p, length `k + 1`, little-endian.
    modulus: Vec<u64>,
}

/// Element of F_{p^k}: `k` residues mod p, coordinates w.r.t. the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElement {
    coeffs: Vec<u64>,
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

/// The default modulus table covers p^k up to 3^6 = 729.
const DEFAULT_MODULUS_LIMIT: u64 = 729;

// ---- dense polynomial helpers over F_p (little-endian coefficient vecs) ----

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] * lead_inv) % p;
        for i in 0..=dm {
            let idx = dr - dm + i;
            r[idx] = (r[idx] + p - (c * m[i]) % p) % p;
        }
        fp_trim(&mut r);
        if r.len() <= dm {
            break;
        }
    }
    r
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let inv = mod_inv(lc, p);
        for c in a.iter_mut() {
            *c = (*c * inv) % p;
        }
    }
    a
}

fn fp_powmod_x(qexp: u64, reps: u32, m: &[u64], p: u64) -> Vec<u64> {
    // x^(qexp^reps) mod m by repeated exponentiation of the current residue.
    let mut r = vec![0, 1]; // x
    r = fp_rem(&r, m, p);
    for _ in 0..reps {
        r = fp_powmod(&r, qexp as u128, m, p);
    }
    r
}

fn fp_powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p prime, a != 0 mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility over F_p of a monic degree-n polynomial:
/// x^(p^n) = x mod f, and gcd(x^(p^(n/l)) - x, f) = 1 for every prime l | n.
pub(crate) fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    let xq = fp_powmod_x(p, n as u32, f, p);
    let xr = fp_rem(&[0, 1], f, p);
    if xq != xr {
        return false;
    }
    for l in prime_factors(n as u64) {
        let d = n as u64 / l;
        let mut h = fp_powmod_x(p, d as u32, f, p);
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        fp_trim(&mut h);
        let g = fp_gcd(&h, f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree k over F_p,
/// ordering candidates by their tuple of lower coefficients (c_0, ..., c_{k-1}).
fn least_irreducible(p: u64, k: usize) -> Vec<u64> {
    let total = (p as u128).pow(k as u32);
    let mut n: u128 = 0;
    while n < total {
        // c_0 is the most significant digit so the tuple order is lexicographic.
        let mut f = vec![0u64; k + 1];
        f[k] = 1;
        let mut rest = n;
        for i in (0..k).rev() {
            f[i] = (rest % p as u128) as u64;
            rest /= p as u128;
        }
        if fp_is_irreducible(&f, p) {
            return f;
        }
        n += 1;
    }
    unreachable!("an irreducible of every degree exists over F_p");
}

impl Fq {
    /// Prime field or extension with the default (lexicographically least) modulus.
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadModulus);
        }
        let q = (p as u128).pow(k as u32);
        if q > DEFAULT_MODULUS_LIMIT as u128 {
            return Err(Error::ModulusTableRange(q as u64));
        }
        Ok(Fq {
            p,
            k,
            modulus: least_irreducible(p, k),
        })
    }

    /// Extension with an explicit modulus (little-endian, monic, degree k, irreducible).
    pub fn with_modulus(p: u64, k: usize, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut m = modulus;
        for c in m.iter_mut() {
            *c %= p;
        }
        if m.len() != k + 1 || m[k] != 1 || !fp_is_irreducible(&m, p) {
            return Err(Error::BadModulus);
        }
        Ok(Fq { p, k, modulus: m })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// q = p^k.
    pub fn q(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElement {
        FqElement {
            coeffs: vec![0; self.k],
        }
    }

    pub fn one(&self) -> FqElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> FqElement {
        let mut coeffs = vec![0; self.k];
        coeffs[0] = c % self.p;
        FqElement { coeffs }
    }

    /// The power-basis root `g` of the modulus (zero when k = 1).
    pub fn gen(&self) -> FqElement {
        let mut coeffs = vec![0; self.k];
        if self.k > 1 {
            coeffs[1] = 1;
        } else {
            // k = 1: modulus is X, whose root is 0.
            coeffs[0] = 0;
        }
        FqElement { coeffs }
    }

    /// Element from coordinates w.r.t. the power basis (entries reduced mod p).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FqElement {
        let mut v: Vec<u64> = coeffs.iter().map(|c| c % self.p).collect();
        v.resize(self.k, 0);
        FqElement { coeffs: v }
    }

    /// Element number `n` in the canonical enumeration (base-p digits of n).
    pub fn element(&self, n: u64) -> FqElement {
        let mut coeffs = vec![0; self.k];
        let mut rest = n;
        for c in coeffs.iter_mut() {
            *c = rest % self.p;
            rest /= self.p;
        }
        FqElement { coeffs }
    }

    /// All q elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FqElement> + '_ {
        (0..self.q()).map(|n| self.element(n))
    }

    pub fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        FqElement { coeffs }
    }

    pub fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect();
        FqElement { coeffs }
    }

    pub fn neg(&self, a: &FqElement) -> FqElement {
        let coeffs = a.coeffs.iter().map(|x| (self.p - x) % self.p).collect();
        FqElement { coeffs }
    }

    pub fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        let prod = fp_mul(&a.coeffs, &b.coeffs, self.p);
        let mut red = fp_rem(&prod, &self.modulus, self.p);
        red.resize(self.k, 0);
        FqElement { coeffs: red }
    }

    pub fn inv(&self, a: &FqElement) -> Result<FqElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Extended Euclid in F_p[X] against the modulus.
        let p = self.p;
        let mut r0 = self.modulus.clone();
        let mut r1 = a.coeffs.clone();
        fp_trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            // divide r0 by r1
            let mut q = vec![0u64; r0.len().saturating_sub(r1.len()) + 1];
            let mut r = r0.clone();
            let d1 = r1.len() - 1;
            let lead_inv = mod_inv(r1[d1], p);
            while r.len() >= r1.len() && !r.is_empty() {
                let dr = r.len() - 1;
                let c = (r[dr] * lead_inv) % p;
                q[dr - d1] = c;
                for i in 0..=d1 {
                    let idx = dr - d1 + i;
                    r[idx] = (r[idx] + p - (c * r1[i]) % p) % p;
                }
                fp_trim(&mut r);
                if r.is_empty() {
                    break;
                }
            }
            let s_new = {
                let qs1 = fp_mul(&q, &s1, p);
                let mut out = vec![0u64; s0.len().max(qs1.len())];
                for (i, &c) in s0.iter().enumerate() {
                    out[i] = c;
                }
                for (i, &c) in qs1.iter().enumerate() {
                    out[i] = (out[i] + p - c) % p;
                }
                fp_trim(&mut out);
                out
            };
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s_new;
        }
        // r0 = gcd, a unit since the modulus is irreducible.
        let lead = *r0.last().expect("gcd of nonzero inputs");
        let inv = mod_inv(lead, p);
        let scaled: Vec<u64> = s0.iter().map(|c| c * inv % p).collect();
        let mut res = fp_rem(&scaled, &self.modulus, p);
        res.resize(self.k, 0);
        Ok(FqElement { coeffs: res })
    }

    pub fn pow(&self, a: &FqElement, e: u128) -> FqElement {
        if a.is_zero() {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let e = e % (self.q() as u128 - 1);
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius x -> x^p.
    pub fn frobenius(&self, a: &FqElement) -> FqElement {
        self.pow(a, self.p as u128)
    }

    /// x -> x^(p^e).
    pub fn frobenius_pow(&self, a: &FqElement, e: u32) -> FqElement {
        let mut out = a.clone();
        for _ in 0..e {
            out = self.frobenius(&out);
        }
        out
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &FqElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut order = self.q() - 1;
        for l in prime_factors(order) {
            while order % l == 0 && self.pow(a, (order / l) as u128) == self.one() {
                order /= l;
            }
        }
        Ok(order)
    }

    /// Frobenius orbit {a, a^p, a^(p^2), ...} without repetition.
    pub fn frobenius_orbit(&self, a: &FqElement) -> Vec<FqElement> {
        let mut orbit = vec![a.clone()];
        let mut cur = self.frobenius(a);
        while cur != *a {
            orbit.push(cur.clone());
            cur = self.frobenius(&cur);
        }
        orbit
    }

    /// True iff the element lies in the subfield F_{p^sub} (requires sub | k).
    pub fn is_in_subfield(&self, a: &FqElement, sub: usize) -> bool {
        if self.k % sub != 0 {
            return false;
        }
        self.frobenius_pow(a, sub as u32) == *a
    }

    /// Trace to F_p, returned as a residue.
    pub fn trace_to_prime(&self, a: &FqElement) -> u64 {
        let mut acc = self.zero();
        let mut cur = a.clone();
        for _ in 0..self.k {
            acc = self.add(&acc, &cur);
            cur = self.frobenius(&cur);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.coeffs[0]
    }
}

impl FqElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// True when the element is c * g^j for a single power j (or zero).
    pub(crate) fn single_term(&self) -> Option<(u64, usize)> {
        let nz: Vec<usize> = (0..self.coeffs.len()).filter(|&i| self.coeffs[i] != 0).collect();
        match nz.len() {
            0 => Some((0, 0)),
            1 => Some((self.coeffs[nz[0]], nz[0])),
            _ => None,
        }
    }
}

impl std::fmt::Display for FqElement {
    /// Renders as a polynomial in the generator `g`, e.g. `2*g^2 + g + 1`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            let part = match (c, i) {
                (c, 0) => format!("{c}"),
                (1, 1) => "g".to_string(),
                (c, 1) => format!("{c}*g"),
                (1, i) => format!("g^{i}"),
                (c, i) => format!("{c}*g^{i}"),
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_are_the_expected_ones() {
        // F_4 = F_2[g]/(g^2 + g + 1): the only monic irreducible quadratic.
        assert_eq!(Fq::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        // F_9: candidates ordered by (c0, c1); g^2 + 1 comes first.
        assert_eq!(Fq::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        // F_8: ordering by (c0, c1, c2) puts g^3 + g^2 + 1 first.
        assert_eq!(Fq::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        // Prime fields use the degree-1 modulus X.
        assert_eq!(Fq::new(5, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn modulus_limit() {
        assert!(Fq::new(3, 6).is_ok()); // 729 exactly
        assert!(matches!(Fq::new(3, 7), Err(Error::ModulusTableRange(_))));
        assert!(matches!(Fq::new(4, 1), Err(Error::NotPrime(4))));
    }

    #[test]
    fn field_axioms_f9() {
        let f9 = Fq::new(3, 2).unwrap();
        let els: Vec<_> = f9.elements().collect();
        assert_eq!(els.len(), 9);
        for a in &els {
            for b in &els {
                assert_eq!(f9.mul(a, b), f9.mul(b, a));
                assert_eq!(f9.add(a, b), f9.add(b, a));
                assert_eq!(f9.sub(&f9.add(a, b), b), *a);
            }
            if !a.is_zero() {
                let inv = f9.inv(a).unwrap();
                assert_eq!(f9.mul(a, &inv), f9.one());
            }
        }
        // g^2 = -1 in F_9 with modulus g^2 + 1.
        let g = f9.gen();
        assert_eq!(f9.mul(&g, &g), f9.neg(&f9.one()));
    }

    #[test]
    fn frobenius_is_a_bijection() {
        for (p, k) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            let fq = Fq::new(p, k).unwrap();
            let mut images: Vec<_> = fq.elements().map(|a| fq.frobenius(&a)).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len() as u64, fq.q());
            // x^(p^k) = x
            for a in fq.elements() {
                assert_eq!(fq.frobenius_pow(&a, k as u32), a);
            }
        }
    }

    #[test]
    fn orders_and_orbits() {
        let f9 = Fq::new(3, 2).unwrap();
        let orders: Vec<u64> = f9
            .elements()
            .filter(|a| !a.is_zero())
            .map(|a| f9.element_order(&a).unwrap())
            .collect();
        assert!(orders.iter().all(|o| 8 % o == 0));
        assert!(orders.contains(&8));
        // An order-8 element has Frobenius orbit of size 2.
        let c = f9
            .elements()
            .find(|a| !a.is_zero() && f9.element_order(a).unwrap() == 8)
            .unwrap();
        assert_eq!(f9.frobenius_orbit(&c).len(), 2);
    }

    #[test]
    fn subfield_membership() {
        let f81 = Fq::new(3, 4).unwrap();
        let in_f9: Vec<_> = f81
            .elements()
            .filter(|a| f81.is_in_subfield(a, 2))
            .collect();
        assert_eq!(in_f9.len(), 9);
    }

    #[test]
    fn display_forms() {
        let f9 = Fq::new(3, 2).unwrap();
        assert_eq!(f9.zero().to_string(), "0");
        assert_eq!(f9.one().to_string(), "1");
        assert_eq!(f9.gen().to_string(), "g");
        assert_eq!(f9.from_coeffs(&[1, 2]).to_string(), "2*g + 1");
    }
}
