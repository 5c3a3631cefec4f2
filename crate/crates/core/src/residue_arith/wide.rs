//! Montgomery multiplication: 64-bit for odd moduli in `[2^32, 2^64)`, 128-bit
//! for `[2^64, 2^124)`. Values stay in ordinary form; each product pays a
//! second reduction by `R^2` to cancel the `R^{-1}`.

#[inline]
pub(crate) fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const LO: u128 = u64::MAX as u128;
    let (a0, a1) = (a & LO, a >> 64);
    let (b0, b1) = (b & LO, b >> 64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & LO) + (p10 & LO);
    let lo = (p00 & LO) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Montgomery {
    modulus: u128,
    /// `-modulus^{-1} mod 2^128`
    neg_inv: u128,
    /// `2^256 mod modulus`
    r2: u128,
}

impl Montgomery {
    pub(crate) fn new(modulus: u128) -> Self {
        debug_assert!(modulus % 2 == 1 && modulus >> 124 == 0);
        // Newton iteration doubles the number of correct low bits each step.
        let mut inv = modulus;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(modulus.wrapping_mul(inv)));
        }
        debug_assert_eq!(modulus.wrapping_mul(inv), 1);
        let mut r2 = (u128::MAX % modulus + 1) % modulus;
        for _ in 0..128 {
            r2 <<= 1;
            if r2 >= modulus {
                r2 -= modulus;
            }
        }
        Self {
            modulus,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline]
    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let u = lo.wrapping_mul(self.neg_inv);
        let (uh, ul) = mul_wide(u, self.modulus);
        let carry = lo.overflowing_add(ul).1 as u128;
        let t = hi + uh + carry;
        if t >= self.modulus {
            t - self.modulus
        } else {
            t
        }
    }

    /// `a * b mod modulus` for canonical inputs, via two reductions.
    #[inline]
    pub(crate) fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        let abr = self.redc(hi, lo);
        let (hi, lo) = mul_wide(abr, self.r2);
        self.redc(hi, lo)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Montgomery64 {
    modulus: u64,
    /// `-modulus^{-1} mod 2^64`
    neg_inv: u64,
    /// `2^128 mod modulus`
    r2: u64,
}

impl Montgomery64 {
    pub(crate) fn new(modulus: u64) -> Self {
        debug_assert!(modulus % 2 == 1);
        let mut inv = modulus;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(modulus.wrapping_mul(inv)));
        }
        debug_assert_eq!(modulus.wrapping_mul(inv), 1);
        let m = modulus as u128;
        Self {
            modulus,
            neg_inv: inv.wrapping_neg(),
            r2: ((u128::MAX % m + 1) % m) as u64,
        }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let u = (t as u64).wrapping_mul(self.neg_inv);
        let (sum, carry) = t.overflowing_add(u as u128 * self.modulus as u128);
        let r = (sum >> 64) | ((carry as u128) << 64);
        if r >= self.modulus as u128 {
            (r - self.modulus as u128) as u64
        } else {
            r as u64
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        let abr = self.redc(a as u128 * b as u128);
        self.redc(abr as u128 * self.r2 as u128)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn big(x: u128) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn wide_product_of_maxima() {
        let (hi, lo) = mul_wide(u128::MAX, u128::MAX);
        assert_eq!(hi, u128::MAX - 1);
        assert_eq!(lo, 1);
    }

    #[test]
    fn montgomery64_near_word_limit() {
        let m = u64::MAX;
        let mont = Montgomery64::new(m);
        assert_eq!(mont.mul(m - 1, m - 1), 1);
        assert_eq!(mont.mul(m - 1, 1), m - 1);
        let m = (1u64 << 32) + 15;
        assert_eq!(Montgomery64::new(m).mul(m - 2, m - 3), 6);
    }

    proptest! {
        #[test]
        fn wide_product_matches_bigint(a: u128, b: u128) {
            let (hi, lo) = mul_wide(a, b);
            let got = (big(hi) << 128u32) + big(lo);
            prop_assert_eq!(got, big(a) * big(b));
        }

        #[test]
        fn montgomery64_matches_bigint(m in (1u64 << 32)..u64::MAX, a: u64, b: u64) {
            let m = m | 1;
            let (a, b) = (a % m, b % m);
            let expect = (BigUint::from(a) * BigUint::from(b)) % BigUint::from(m);
            prop_assert_eq!(BigUint::from(Montgomery64::new(m).mul(a, b)), expect);
        }

        #[test]
        fn montgomery_matches_bigint(p in 65_537u64..(1u64 << 31), a: u128, b: u128) {
            let m = (p as u128).pow(4) | 1;
            prop_assume!(m >> 64 != 0);
            let mont = Montgomery::new(m);
            let (a, b) = (a % m, b % m);
            prop_assert_eq!(big(mont.mul(a, b)), big(a) * big(b) % big(m));
        }
    }
}
