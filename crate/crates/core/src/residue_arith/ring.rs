use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::prime::OddPrime;
use super::wide::{Montgomery, Montgomery64};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
enum Reducer {
    /// modulus < 2^32: products fit a u64
    Word(u64),
    /// modulus < 2^64
    Double(Montgomery64),
    Wide(Montgomery),
}

/// `Z / p^e Z` for an odd prime `p` and `1 <= e <= 4`.
///
/// Two rings compare equal when they share `p` and `e`.
#[derive(Clone, Copy, Debug)]
pub struct ResidueRing {
    prime: OddPrime,
    exponent: u32,
    modulus: u128,
    reducer: Reducer,
}

impl PartialEq for ResidueRing {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime && self.exponent == other.exponent
    }
}

impl Eq for ResidueRing {}

impl ResidueRing {
    pub fn new(prime: OddPrime, exponent: u32) -> Result<Self> {
        if !(1..=4).contains(&exponent) {
            return Err(Error::ExponentOutOfRange(exponent));
        }
        let modulus = (prime.get() as u128).pow(exponent);
        let reducer = if modulus >> 32 == 0 {
            Reducer::Word(modulus as u64)
        } else if modulus >> 64 == 0 {
            Reducer::Double(Montgomery64::new(modulus as u64))
        } else {
            Reducer::Wide(Montgomery::new(modulus))
        };
        Ok(Self {
            prime,
            exponent,
            modulus,
            reducer,
        })
    }

    /// Validates `p` and builds the ring in one step.
    pub fn of(p: u64, exponent: u32) -> Result<Self> {
        Self::new(OddPrime::new(p)?, exponent)
    }

    #[inline]
    pub fn prime(&self) -> OddPrime {
        self.prime
    }

    #[inline]
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    #[inline]
    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    /// Same prime, different exponent.
    pub fn with_exponent(&self, exponent: u32) -> Result<Self> {
        Self::new(self.prime, exponent)
    }

    pub fn elem(&self, value: u128) -> Residue {
        Residue {
            value: value % self.modulus,
            ring: *self,
        }
    }

    pub fn from_i128(&self, value: i128) -> Residue {
        let m = self.modulus as i128;
        self.elem(value.rem_euclid(m) as u128)
    }

    pub fn zero(&self) -> Residue {
        self.elem(0)
    }

    pub fn one(&self) -> Residue {
        self.elem(1)
    }

    /// Wraps a value that is already canonical.
    #[inline]
    pub(crate) fn wrap(&self, value: u128) -> Residue {
        debug_assert!(value < self.modulus);
        Residue { value, ring: *self }
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u128) -> u128 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u128, b: u128) -> u128 {
        match self.reducer {
            Reducer::Word(m) => ((a as u64 * b as u64) % m) as u128,
            Reducer::Double(ref mont) => mont.mul(a as u64, b as u64) as u128,
            Reducer::Wide(ref mont) => mont.mul(a, b),
        }
    }

    pub(crate) fn pow_raw(&self, mut base: u128, mut exp: u64) -> u128 {
        let mut acc = 1 % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Extended Euclid; `None` when `p | a`.
    pub(crate) fn inv_raw(&self, a: u128) -> Option<u128> {
        // |coefficients| stay below the modulus < 2^124, so i128 is enough
        let (mut r0, mut r1) = (self.modulus as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return None;
        }
        Some(t0.rem_euclid(self.modulus as i128) as u128)
    }

    /// Montgomery's trick: inverts every entry with a single extended Euclid.
    pub(crate) fn batch_inv_raw(&self, values: &[u128]) -> Result<Vec<u128>> {
        let mut prefix = Vec::with_capacity(values.len());
        let mut acc = 1 % self.modulus;
        for &v in values {
            prefix.push(acc);
            acc = self.mul_raw(acc, v);
        }
        let mut inv = self.inv_raw(acc).ok_or_else(|| {
            let value = values
                .iter()
                .copied()
                .find(|v| self.inv_raw(*v).is_none())
                .unwrap_or(acc);
            Error::NotInvertible {
                value,
                modulus: self.modulus,
            }
        })?;
        let mut out = vec![0; values.len()];
        for i in (0..values.len()).rev() {
            out[i] = self.mul_raw(inv, prefix[i]);
            inv = self.mul_raw(inv, values[i]);
        }
        Ok(out)
    }

    /// Inverses of `1, 2, ..., n` (index 0 holds the inverse of 1).
    pub fn inverses_upto(&self, n: u64) -> Result<Vec<Residue>> {
        let values: Vec<u128> = (1..=n as u128).map(|k| k % self.modulus).collect();
        Ok(self
            .batch_inv_raw(&values)?
            .into_iter()
            .map(|v| self.wrap(v))
            .collect())
    }
}

impl fmt::Display for ResidueRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.prime, self.exponent)
    }
}

/// A canonical residue, `0 <= value < modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Residue {
    value: u128,
    ring: ResidueRing,
}

impl Residue {
    #[inline]
    pub fn value(&self) -> u128 {
        self.value
    }

    #[inline]
    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_ring(&self, other: &Residue) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::MixedRings {
                left: self.ring.modulus,
                right: other.ring.modulus,
            })
        }
    }

    pub fn checked_add(self, rhs: Residue) -> Result<Residue> {
        self.same_ring(&rhs)?;
        Ok(self.ring.wrap(self.ring.add_raw(self.value, rhs.value)))
    }

    pub fn checked_sub(self, rhs: Residue) -> Result<Residue> {
        self.same_ring(&rhs)?;
        Ok(self.ring.wrap(self.ring.sub_raw(self.value, rhs.value)))
    }

    pub fn checked_mul(self, rhs: Residue) -> Result<Residue> {
        self.same_ring(&rhs)?;
        Ok(self.ring.wrap(self.ring.mul_raw(self.value, rhs.value)))
    }

    /// Square-and-multiply; `x^0 == 1`.
    pub fn pow(self, exp: u64) -> Residue {
        self.ring.wrap(self.ring.pow_raw(self.value, exp))
    }

    pub fn inv(self) -> Result<Residue> {
        self.ring
            .inv_raw(self.value)
            .map(|v| self.ring.wrap(v))
            .ok_or(Error::NotInvertible {
                value: self.value,
                modulus: self.ring.modulus,
            })
    }

    /// Multiplies by a small integer.
    pub fn scale(self, k: u128) -> Residue {
        let k = k % self.ring.modulus;
        self.ring.wrap(self.ring.mul_raw(self.value, k))
    }

    /// Image under the projection onto `Z/p^e'` for `e' <= e`.
    pub fn reduce_to(self, target: &ResidueRing) -> Result<Residue> {
        if target.prime != self.ring.prime || target.exponent > self.ring.exponent {
            return Err(Error::MixedRings {
                left: self.ring.modulus,
                right: target.modulus,
            });
        }
        Ok(target.elem(self.value))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

// Operators panic on mixed rings; use the `checked_*` forms for fallible arithmetic.
impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        self.checked_add(rhs).expect("residue addition")
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        self.checked_sub(rhs).expect("residue subtraction")
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        self.checked_mul(rhs).expect("residue multiplication")
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        self.ring.wrap(self.ring.neg_raw(self.value))
    }
}

impl std::iter::Sum for Residue {
    fn sum<I: Iterator<Item = Residue>>(mut iter: I) -> Residue {
        let first = iter
            .next()
            .expect("sum of residues needs at least one term");
        iter.fold(first, |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn ring(p: u64, e: u32) -> ResidueRing {
        ResidueRing::of(p, e).unwrap()
    }

    #[test]
    fn make_ring_examples() {
        assert_eq!(ring(5, 4).modulus(), 625);
        assert_eq!(ring(3, 4).modulus(), 81);
        assert_eq!(ResidueRing::of(2, 1), Err(Error::NotOddPrime(2)));
        assert_eq!(ResidueRing::of(5, 0), Err(Error::ExponentOutOfRange(0)));
        assert_eq!(ResidueRing::of(5, 5), Err(Error::ExponentOutOfRange(5)));
        assert_eq!(ResidueRing::of(15, 2), Err(Error::NotOddPrime(15)));
    }

    #[test]
    fn ring_ops_examples() {
        let r625 = ring(5, 4);
        let r81 = ring(3, 4);
        assert_eq!((r625.elem(600) + r625.elem(50)).value(), 25);
        assert_eq!((r81.zero() - r81.elem(2)).value(), 79);
        assert_eq!((r625.elem(256) + r625.elem(375)).value(), 6);
        assert_eq!(
            r625.elem(1).checked_add(r81.elem(1)),
            Err(Error::MixedRings {
                left: 625,
                right: 81
            })
        );
    }

    #[test]
    fn pow_examples() {
        let r = ring(5, 4);
        assert_eq!(r.elem(2).pow(4).value(), 16);
        assert_eq!(r.elem(2).pow(12).value(), 346);
        assert_eq!(r.elem(0).pow(0).value(), 1);
        assert_eq!(r.elem(77).pow(0).value(), 1);
    }

    #[test]
    fn inv_examples() {
        assert_eq!(ring(5, 3).elem(2).inv().unwrap().value(), 63);
        assert_eq!(ring(5, 4).elem(72).inv().unwrap().value(), 408);
        assert_eq!(
            ring(5, 4).elem(5).inv(),
            Err(Error::NotInvertible {
                value: 5,
                modulus: 625
            })
        );
    }

    #[test]
    fn inverses_hold_for_every_unit_below_p() {
        for p in [3u64, 5, 7, 11, 101, 65_537, 2_147_483_647] {
            for e in 1..=4 {
                let r = ring(p, e);
                let n = (p - 1).min(500);
                let invs = r.inverses_upto(n).unwrap();
                for (k, inv) in (1..=n).zip(&invs) {
                    assert_eq!((r.elem(k as u128) * *inv).value(), 1, "p={p} e={e} k={k}");
                    assert_eq!(r.elem(k as u128).inv().unwrap(), *inv);
                }
            }
        }
    }

    #[test]
    fn batch_inversion_reports_the_offending_value() {
        let r = ring(7, 2);
        assert_eq!(
            r.batch_inv_raw(&[1, 2, 14, 3]),
            Err(Error::NotInvertible {
                value: 14,
                modulus: 49
            })
        );
    }

    #[test]
    fn reduce_to_smaller_exponent() {
        let r4 = ring(5, 4);
        let r3 = ring(5, 3);
        assert_eq!(r4.elem(346).reduce_to(&r3).unwrap().value(), 96);
        assert!(r3.elem(1).reduce_to(&r4).is_err());
    }

    proptest! {
        #[test]
        fn arithmetic_matches_bigint(
            p in prop::sample::select(vec![3u64, 5, 251, 65_521, 65_537, 1_000_003, 2_147_483_647]),
            e in 1u32..=4,
            a: u128,
            b: u128,
            k in 0u64..5_000,
        ) {
            let r = ring(p, e);
            let m = BigUint::from(r.modulus());
            let (x, y) = (r.elem(a), r.elem(b));
            let bx = BigUint::from(x.value());
            let by = BigUint::from(y.value());
            prop_assert!(x.value() < r.modulus());
            prop_assert_eq!(BigUint::from((x + y).value()), (&bx + &by) % &m);
            prop_assert_eq!(BigUint::from((x - y).value()), (&bx + &m - &by) % &m);
            prop_assert_eq!(BigUint::from((x * y).value()), (&bx * &by) % &m);
            prop_assert_eq!(BigUint::from(x.pow(k).value()), bx.modpow(&BigUint::from(k), &m));
            if x.value() % p as u128 != 0 {
                prop_assert_eq!((x * x.inv().unwrap()).value(), 1);
            }
        }
    }
}
