use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::pauli::{ExactOperator, Rational, Scalar};

/// `2^61 − 1`.
pub const PRIME: u64 = (1 << 61) - 1;

/// Element of the prime field `F_p`, `p = 2^61 − 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % PRIME)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(PRIME - 2))
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(PRIME));
        Fp(r.to_u64().expect("residue below 2^61"))
    }

    /// `None` when the denominator vanishes mod p.
    pub fn try_from_rational(r: &Rational) -> Option<Self> {
        let den = Fp::from_bigint(r.denom()).inverse()?;
        Some(Fp::from_bigint(r.numer()).mul(&den))
    }
}

/// True when every coefficient has a denominator invertible mod p.
pub fn representable(ops: &[ExactOperator]) -> bool {
    ops.iter()
        .all(|o| o.terms().iter().all(|(_, c)| Fp::try_from_rational(c).is_some()))
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod p)", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[inline]
fn reduce128(x: u128) -> u64 {
    let lo = (x as u64) & PRIME;
    let hi = (x >> 61) as u64;
    let s = lo + (hi & PRIME) + (hi >> 61);
    let s = (s & PRIME) + (s >> 61);
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

impl Scalar for Fp {
    const EXACT: bool = true;

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        Fp((v as i128).rem_euclid(PRIME as i128) as u64)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Fp::from_i64(num).div(&Fp::from_i64(den))
    }
    fn from_rational(r: &Rational) -> Self {
        Fp::try_from_rational(r).expect("denominator divisible by the field prime")
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= PRIME { s - PRIME } else { s })
    }
    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + PRIME - rhs.0
        })
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        Fp(reduce128(self.0 as u128 * rhs.0 as u128))
    }
    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inverse().expect("division by zero in F_p"))
    }
    #[inline]
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { PRIME - self.0 })
    }
    /// Not a magnitude; only used for diagnostics.
    fn to_f64(&self) -> f64 {
        self.0 as f64
    }
    fn bits(&self) -> u64 {
        0
    }
}
