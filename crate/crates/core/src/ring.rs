//! Coefficient rings: the integers and the prime-power residue rings.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base ring `R` of a group algebra `RG`.
///
/// Elements are carried as [`BigInt`]s. Over `Z/p^n` the canonical
/// representative lies in `[0, p^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum CoefficientRing {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Zpn")]
    PrimePower { p: u64, n: u32 },
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientRing {
    pub const Z: CoefficientRing = CoefficientRing::Integers;

    /// `Z/p^n`, checking that `p` is prime and `n >= 1`.
    pub fn prime_power(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidRing("exponent must be at least 1".into()));
        }
        Ok(CoefficientRing::PrimePower { p, n })
    }

    /// Re-checks the invariants of a deserialized value.
    pub fn validated(self) -> Result<Self> {
        match self {
            CoefficientRing::Integers => Ok(self),
            CoefficientRing::PrimePower { p, n } => Self::prime_power(p, n),
        }
    }

    pub fn is_integers(&self) -> bool {
        matches!(self, CoefficientRing::Integers)
    }

    /// `p^n`, or zero for the integers.
    pub fn modulus(&self) -> BigInt {
        match *self {
            CoefficientRing::Integers => BigInt::zero(),
            CoefficientRing::PrimePower { p, n } => num_traits::pow(BigInt::from(p), n as usize),
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match *self {
            CoefficientRing::Integers => None,
            CoefficientRing::PrimePower { p, .. } => Some(p),
        }
    }

    /// Canonical representative of `x`.
    pub fn reduce(&self, x: &BigInt) -> BigInt {
        match self {
            CoefficientRing::Integers => x.clone(),
            CoefficientRing::PrimePower { .. } => x.mod_floor(&self.modulus()),
        }
    }

    pub fn reduce_in_place(&self, x: &mut BigInt) {
        if let CoefficientRing::PrimePower { .. } = self {
            let m = self.modulus();
            if x.is_negative() || *x >= m {
                *x = x.mod_floor(&m);
            }
        }
    }

    pub fn is_unit(&self, x: &BigInt) -> bool {
        match self {
            CoefficientRing::Integers => x.abs().is_one(),
            CoefficientRing::PrimePower { p, .. } => !self.reduce(x).mod_floor(&BigInt::from(*p)).is_zero(),
        }
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self, x: &BigInt) -> Option<BigInt> {
        match self {
            CoefficientRing::Integers => x.abs().is_one().then(|| x.clone()),
            CoefficientRing::PrimePower { .. } => {
                let m = self.modulus();
                let e = self.reduce(x).extended_gcd(&m);
                e.gcd.is_one().then(|| e.x.mod_floor(&m))
            }
        }
    }

    /// Integer modulus of the cyclic summand `R/d`, viewed as an abelian group.
    ///
    /// Over `Z/p^n` the free summand `R/0` has order `p^n`; a factor `p^e`
    /// keeps its value. Over the integers this is the identity.
    pub fn effective_modulus(&self, d: &BigInt) -> BigInt {
        match self {
            CoefficientRing::Integers => d.abs(),
            CoefficientRing::PrimePower { .. } => {
                let m = self.modulus();
                let r = d.mod_floor(&m);
                if r.is_zero() {
                    m
                } else {
                    r.gcd(&m)
                }
            }
        }
    }

    /// Inverse of [`effective_modulus`](Self::effective_modulus): `p^n` is reported as `0`.
    pub fn display_factor(&self, m: &BigInt) -> BigInt {
        match self {
            CoefficientRing::Integers => m.clone(),
            CoefficientRing::PrimePower { .. } => {
                if *m == self.modulus() {
                    BigInt::zero()
                } else {
                    m.clone()
                }
            }
        }
    }

    /// p-adic valuation of a residue; `n` for zero.
    pub fn valuation(&self, x: &BigInt) -> u32 {
        match *self {
            CoefficientRing::Integers => 0,
            CoefficientRing::PrimePower { p, n } => {
                let p = BigInt::from(p);
                let mut r = self.reduce(x);
                if r.is_zero() {
                    return n;
                }
                let mut v = 0;
                while r.is_multiple_of(&p) {
                    r /= &p;
                    v += 1;
                }
                v
            }
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::PrimePower { p, n } if *n == 1 => write!(f, "Z/{p}"),
            CoefficientRing::PrimePower { p, n } => write!(f, "Z/{p}^{n}"),
        }
    }
}

/// `gcd(d, e)` with the convention `gcd(d, 0) = d`, `gcd(0, 0) = 0`.
pub fn gcd0(d: &BigInt, e: &BigInt) -> BigInt {
    d.gcd(e)
}

/// Reduces `x` modulo `m` when `m` is nonzero.
pub fn reduce_mod(x: &BigInt, m: &BigInt) -> BigInt {
    if m.is_zero() {
        x.clone()
    } else {
        x.mod_floor(m)
    }
}

pub fn divides(d: &BigInt, x: &BigInt) -> bool {
    if d.is_zero() {
        x.is_zero()
    } else {
        x.is_multiple_of(d)
    }
}
