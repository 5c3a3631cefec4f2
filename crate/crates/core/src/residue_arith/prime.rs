use std::fmt;

use crate::error::{Error, Result};

/// Exclusive upper bound on supported primes; keeps `p^4 < 2^124`.
pub const PRIME_LIMIT: u64 = 1 << 31;

/// Above this bound prime enumeration switches to a segmented sieve.
const PLAIN_SIEVE_LIMIT: u64 = 10_000_000;
const SEGMENT_LEN: u64 = 1 << 18;

/// An odd prime below [`PRIME_LIMIT`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= PRIME_LIMIT {
            return Err(Error::PrimeTooLarge(p));
        }
        if p % 2 == 0 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Self(p))
    }

    /// Wraps a value already known to be an odd prime, e.g. one produced by the sieve.
    pub(crate) fn new_unchecked(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < PRIME_LIMIT && is_prime(p));
        Self(p)
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `(p - 1) / 2`.
    #[inline]
    pub fn half(self) -> u64 {
        (self.0 - 1) / 2
    }

    pub fn require_at_least(self, min: u64) -> Result<Self> {
        if self.0 < min {
            Err(Error::PrimeTooSmall { p: self.0, min })
        } else {
            Ok(self)
        }
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Composite flags for `0..=n`.
fn composite_flags(n: usize) -> Vec<bool> {
    let mut composite = vec![false; n + 1];
    composite[0] = true;
    if n >= 1 {
        composite[1] = true;
    }
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    composite
}

/// All odd primes in `[lo, hi]`, ascending. `hi` must be below [`PRIME_LIMIT`].
pub fn odd_primes_in(lo: u64, hi: u64) -> Result<Vec<OddPrime>> {
    if hi >= PRIME_LIMIT {
        return Err(Error::PrimeTooLarge(hi));
    }
    let lo = lo.max(3);
    if lo > hi {
        return Ok(Vec::new());
    }
    let primes = if hi <= PLAIN_SIEVE_LIMIT {
        let composite = composite_flags(hi as usize);
        (lo..=hi)
            .filter(|&n| n % 2 == 1 && !composite[n as usize])
            .collect()
    } else {
        segmented(lo, hi)
    };
    Ok(primes.into_iter().map(OddPrime::new_unchecked).collect())
}

fn segmented(lo: u64, hi: u64) -> Vec<u64> {
    let root = (hi as f64).sqrt() as u64 + 1;
    let composite = composite_flags(root as usize);
    let base: Vec<u64> = (2..=root).filter(|&n| !composite[n as usize]).collect();
    let mut out = Vec::new();
    let mut start = lo;
    while start <= hi {
        let end = (start + SEGMENT_LEN - 1).min(hi);
        let mut flags = vec![false; (end - start + 1) as usize];
        for &q in &base {
            if q * q > end {
                break;
            }
            let first = (start.div_ceil(q) * q).max(q * q);
            let mut m = first;
            while m <= end {
                flags[(m - start) as usize] = true;
                m += q;
            }
        }
        for (offset, &c) in flags.iter().enumerate() {
            let n = start + offset as u64;
            if !c && n % 2 == 1 && n > 1 {
                out.push(n);
            }
        }
        start = end + 1;
    }
    out
}
