use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::prime::OddPrime;
use super::ring::{Residue, ResidueRing};
use crate::error::{Error, Result};

/// An exact rational number, kept in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PadicRational(BigRational);

impl PadicRational {
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `v_p` of the value; `None` for zero.
    pub fn valuation(&self, p: OddPrime) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let p = BigInt::from(p.get());
        Some(valuation_of(self.numer(), &p).0 as i64 - valuation_of(self.denom(), &p).0 as i64)
    }

    /// See [`reduce_rational`].
    pub fn reduce(&self, ring: &ResidueRing) -> Result<Residue> {
        reduce_rational(self, ring)
    }
}

/// Strips every factor `p` from `n != 0`, returning `(v_p(n), n / p^v_p(n))`.
fn valuation_of(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return (v, rest);
        }
        rest = q;
        v += 1;
    }
}

fn to_residue(n: &BigInt, ring: &ResidueRing) -> Residue {
    let m = BigInt::from(ring.modulus());
    let r = n.mod_floor(&m);
    ring.elem(r.to_u128().expect("canonical representative fits u128"))
}

/// Reduces a rational with `v_p >= 0` into `Z/p^e`.
///
/// The shared power of `p` is cancelled first, so e.g. `9/4` reduces mod 81
/// even though `p = 3` divides the numerator.
pub fn reduce_rational(q: &PadicRational, ring: &ResidueRing) -> Result<Residue> {
    if q.is_zero() {
        return Ok(ring.zero());
    }
    let p = BigInt::from(ring.prime().get());
    let (v_num, num) = valuation_of(q.numer(), &p);
    let (v_den, den) = valuation_of(q.denom(), &p);
    if v_den > v_num {
        return Err(Error::NegativeValuation {
            value: q.to_string(),
            p: ring.prime().get(),
        });
    }
    let shift = v_num - v_den;
    let num = if shift >= ring.exponent() {
        return Ok(ring.zero());
    } else {
        num * p.pow(shift)
    };
    let den = to_residue(&den, ring).inv()?;
    Ok(to_residue(&num, ring) * den)
}

impl fmt::Display for PadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl From<i64> for PadicRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for PadicRational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for PadicRational {
            type Output = PadicRational;
            fn $method(self, rhs: PadicRational) -> PadicRational {
                PadicRational($trait::$method(self.0, rhs.0))
            }
        }

        impl<'a> $trait<&'a PadicRational> for &'a PadicRational {
            type Output = PadicRational;
            fn $method(self, rhs: &'a PadicRational) -> PadicRational {
                PadicRational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for PadicRational {
    type Output = PadicRational;
    fn neg(self) -> PadicRational {
        PadicRational(-self.0)
    }
}
