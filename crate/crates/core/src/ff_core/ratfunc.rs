//! Reduced elements of the rational function field F_q(t).
//!
//! Canonical form: the denominator is monic, numerator and denominator are
//! coprime, and zero is `0/1`. Equal values therefore have identical
//! representations, and equality is plain structural equality.

use super::fq::{Fq, FqElement};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(fq: &Fq, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num: Poly::zero(),
                den: Poly::one(fq),
            });
        }
        let g = num.gcd(fq, &den);
        let mut num = num.div_exact(fq, &g)?;
        let mut den = den.div_exact(fq, &g)?;
        let lc_inv = fq.inv(den.leading().unwrap())?;
        num = num.scale(fq, &lc_inv);
        den = den.scale(fq, &lc_inv);
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(fq: &Fq, p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(fq),
        }
    }

    pub fn zero(fq: &Fq) -> Self {
        RatFunc::from_poly(fq, Poly::zero())
    }

    pub fn one(fq: &Fq) -> Self {
        RatFunc::from_poly(fq, Poly::one(fq))
    }

    pub fn constant(fq: &Fq, c: FqElement) -> Self {
        RatFunc::from_poly(fq, Poly::constant(fq, c))
    }

    pub fn var(fq: &Fq) -> Self {
        RatFunc::from_poly(fq, Poly::var(fq))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self, fq: &Fq) -> bool {
        *self == RatFunc::one(fq)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// True for elements of the constant field (including zero).
    pub fn is_constant(&self) -> bool {
        self.num.deg().map_or(true, |d| d == 0) && self.den.deg() == Some(0)
    }

    pub fn as_constant(&self, fq: &Fq) -> Option<FqElement> {
        if self.is_constant() {
            Some(self.num.coeff(fq, 0))
        } else {
            None
        }
    }

    /// Height H(x) = max(deg num, deg den); undefined for zero.
    pub fn height(&self, _fq: &Fq) -> Result<u64> {
        let dn = self.num.deg().ok_or(Error::ZeroHeight)?;
        Ok(dn.max(self.den.deg().unwrap()) as u64)
    }

    /// Height with the convention H(0) = 0, for enumeration bookkeeping.
    pub fn height_or_zero(&self) -> u64 {
        let dn = self.num.deg().unwrap_or(0);
        let dd = self.den.deg().unwrap_or(0);
        dn.max(dd) as u64
    }

    pub fn add(&self, fq: &Fq, other: &RatFunc) -> RatFunc {
        let num = self
            .num
            .mul(fq, &other.den)
            .add(fq, &other.num.mul(fq, &self.den));
        let den = self.den.mul(fq, &other.den);
        RatFunc::new(fq, num, den).expect("nonzero denominator")
    }

    pub fn sub(&self, fq: &Fq, other: &RatFunc) -> RatFunc {
        self.add(fq, &other.neg(fq))
    }

    pub fn neg(&self, fq: &Fq) -> RatFunc {
        RatFunc {
            num: self.num.neg(fq),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, fq: &Fq, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(fq, &other.num);
        let den = self.den.mul(fq, &other.den);
        RatFunc::new(fq, num, den).expect("nonzero denominator")
    }

    pub fn inv(&self, fq: &Fq) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(fq, self.den.clone(), self.num.clone())
    }

    pub fn div(&self, fq: &Fq, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(fq, &other.inv(fq)?))
    }

    pub fn pow(&self, fq: &Fq, e: i64) -> Result<RatFunc> {
        if e < 0 {
            return self.inv(fq)?.pow(fq, -e);
        }
        // num^e / den^e is already coprime with monic denominator.
        Ok(RatFunc {
            num: self.num.pow(fq, e as u32),
            den: self.den.pow(fq, e as u32),
        })
    }

    /// x^(p^e), using the Frobenius shortcut on both halves.
    pub fn frobenius_pow(&self, fq: &Fq, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.frobenius_pow(fq, e),
            den: self.den.frobenius_pow(fq, e),
        }
    }

    /// Formal d/dt by the quotient rule.
    pub fn derivative(&self, fq: &Fq) -> RatFunc {
        let num = self
            .num
            .derivative(fq)
            .mul(fq, &self.den)
            .sub(fq, &self.num.mul(fq, &self.den.derivative(fq)));
        let den = self.den.mul(fq, &self.den);
        RatFunc::new(fq, num, den).expect("nonzero denominator")
    }

    /// Fixed total order: by height, then by canonical string bytes.
    pub fn canonical_cmp(&self, other: &RatFunc) -> std::cmp::Ordering {
        self.height_or_zero()
            .cmp(&other.height_or_zero())
            .then_with(|| self.to_string().cmp(&other.to_string()))
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}
