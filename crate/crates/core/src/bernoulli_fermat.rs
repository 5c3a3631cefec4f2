//! The two per-prime constants: `B_{p-3} mod p` and `q_2(p) = (2^{p-1} - 1)/p mod p^3`.
//!
//! `B_m mod p` is extracted from the power sum `S_m = sum_{k=1}^{p-1} k^m`.
//! Expanding `S_m = (B_{m+1}(p) - B_{m+1}) / (m+1)` binomially, the term linear
//! in `p` is `p B_m`. For even `2 <= m <= p-3` every other term carries `p^2`
//! or an odd-index Bernoulli number (zero), and no denominator is divisible by
//! `p` since `p-1` divides no index in `1..=m`. Hence `S_m = p B_m (mod p^2)`.
//! The exact recurrence in [`bernoulli_table`] serves as the small-`p` oracle.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{out_of_range, Error, Result};
use crate::residue_arith::{OddPrime, PadicRational, Residue, ResidueRing};

/// Largest index accepted by the exact recurrence.
pub const BERNOULLI_EXACT_CAP: u64 = 400;

/// `B_0..=B_n` from `sum_{j=0}^{m} binom(m+1, j) B_j = 0`, exactly.
///
/// O(n^2) rational operations and no memoisation; callers needing many indices
/// should keep the returned table.
pub fn bernoulli_table(n: u64) -> Result<Vec<PadicRational>> {
    if n > BERNOULLI_EXACT_CAP {
        return Err(out_of_range(
            "n",
            n,
            format!("at most {BERNOULLI_EXACT_CAP}"),
        ));
    }
    let mut b: Vec<PadicRational> = Vec::with_capacity(n as usize + 1);
    b.push(PadicRational::one());
    for m in 1..=n {
        // row of binom(m+1, j) for j < m+1
        let mut c = BigInt::one();
        let mut acc = PadicRational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc = acc + PadicRational::from_integer(c.clone()) * bj.clone();
            }
            c = c * BigInt::from(m + 1 - j as u64) / BigInt::from(j as u64 + 1);
        }
        b.push(-(acc / PadicRational::from_integer(m + 1)));
    }
    Ok(b)
}

pub fn bernoulli_exact(n: u64) -> Result<PadicRational> {
    Ok(bernoulli_table(n)?.pop().expect("table is non-empty"))
}

/// `sum_{k=1}^{p-1} k^m` in `ring`.
///
/// `k -> k^m` is completely multiplicative, so only prime `k` need an
/// exponentiation; composites combine two earlier entries via their smallest
/// prime factor.
pub fn power_sum(ring: &ResidueRing, m: u64) -> Residue {
    power_sums_step2(ring, m, 1)[0]
}

/// `S_m, S_{m+2}, ..., S_{m+2(count-1)}` from one sieve; each prime power is
/// stepped by `k^2`.
pub fn power_sums_step2(ring: &ResidueRing, m: u64, count: usize) -> Vec<Residue> {
    let n = (ring.prime().get() - 1) as usize;
    let mut spf = vec![0u32; n + 1];
    let mut pw = vec![0u128; n + 1];
    let mut sums = vec![0u128; count];
    for k in 1..=n {
        if k == 1 {
            pw[1] = 1 % ring.modulus();
        } else if spf[k] == 0 {
            pw[k] = ring.pow_raw(k as u128, m);
            let mut j = k * k;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = k as u32;
                }
                j += k;
            }
        } else {
            let q = spf[k] as usize;
            pw[k] = ring.mul_raw(pw[q], pw[k / q]);
        }
        let k2 = if count > 1 {
            ring.mul_raw(k as u128, k as u128)
        } else {
            0
        };
        let mut acc = pw[k];
        for s in sums.iter_mut() {
            *s = ring.add_raw(*s, acc);
            acc = ring.mul_raw(acc, k2);
        }
    }
    sums.into_iter().map(|v| ring.elem(v)).collect()
}

/// `B_m mod p` for even `2 <= m <= p-3` by power-sum extraction.
pub fn bernoulli_mod_p(p: OddPrime, m: u64) -> Result<Residue> {
    Ok(bernoulli_run_mod_p(p, m, 1)?[0])
}

/// `B_m, B_{m+2}, ..., B_{m+2(count-1)} mod p` from a single sieve.
pub fn bernoulli_run_mod_p(p: OddPrime, m: u64, count: usize) -> Result<Vec<Residue>> {
    p.require_at_least(5)?;
    let top = m + 2 * (count as u64).saturating_sub(1);
    if m % 2 == 1 || m < 2 || top > p.get() - 3 {
        return Err(out_of_range(
            "m",
            top.max(m),
            format!("even, 2..={}", p.get() - 3),
        ));
    }
    let sq = ResidueRing::new(p, 2)?;
    let r1 = ResidueRing::new(p, 1)?;
    let pp = p.get() as u128;
    Ok(power_sums_step2(&sq, m, count)
        .into_iter()
        .map(|s| {
            debug_assert_eq!(s.value() % pp, 0, "S_m must vanish mod p");
            r1.elem(s.value() / pp)
        })
        .collect())
}

/// `B_{p-3} mod p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BernoulliResidue {
    pub prime: OddPrime,
    pub value: Residue,
}

/// `B_{p-3} mod p` for `p >= 5`. For `p = 3` the index is 0 and callers use `B_0 = 1`
/// exactly, which keeps the `p = 3` corrections in rational form.
pub fn bernoulli_pm3_mod_p(p: OddPrime) -> Result<BernoulliResidue> {
    if p.get() == 3 {
        return Err(Error::PrimeTooSmall { p: 3, min: 5 });
    }
    Ok(BernoulliResidue {
        prime: p,
        value: bernoulli_mod_p(p, p.get() - 3)?,
    })
}

/// The Fermat quotient `q_2(p)` reduced mod `p^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FermatQuotient {
    pub prime: OddPrime,
    pub value: Residue,
}

pub fn fermat_quotient_2(p: OddPrime) -> FermatQuotient {
    let r4 = ResidueRing::new(p, 4).expect("exponent 4 is valid");
    let r3 = ResidueRing::new(p, 3).expect("exponent 3 is valid");
    let t = r4.elem(2).pow(p.get() - 1).value();
    // 2^{p-1} = 1 (mod p), so t - 1 is an exact multiple of p (t >= 1 here)
    let q = (t + r4.modulus() - 1) % r4.modulus() / p.get() as u128;
    FermatQuotient {
        prime: p,
        value: r3.elem(q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> OddPrime {
        OddPrime::new(p).unwrap()
    }

    #[test]
    fn exact_examples() {
        assert_eq!(bernoulli_exact(0).unwrap(), PadicRational::one());
        assert_eq!(bernoulli_exact(1).unwrap(), PadicRational::new(-1, 2));
        assert_eq!(bernoulli_exact(2).unwrap(), PadicRational::new(1, 6));
        assert!(bernoulli_exact(3).unwrap().is_zero());
        assert_eq!(bernoulli_exact(4).unwrap(), PadicRational::new(-1, 30));
        assert_eq!(bernoulli_exact(12).unwrap(), PadicRational::new(-691, 2730));
        assert!(bernoulli_exact(401).is_err());
    }

    #[test]
    fn odd_indices_vanish() {
        let table = bernoulli_table(60).unwrap();
        for n in (3..=60).step_by(2) {
            assert!(table[n].is_zero(), "B_{n}");
        }
    }

    #[test]
    fn power_sum_examples() {
        let r = ResidueRing::of(7, 2).unwrap();
        let direct: u128 = (1..7u128).map(|k| k.pow(4)).sum::<u128>() % 49;
        assert_eq!(power_sum(&r, 4).value(), direct);
        let r = ResidueRing::of(101, 3).unwrap();
        let direct = (1..101u128).fold(r.zero(), |acc, k| acc + r.elem(k).pow(37));
        assert_eq!(power_sum(&r, 37), direct);
    }

    #[test]
    fn runs_match_single_extractions() {
        let p = prime(103);
        let run = bernoulli_run_mod_p(p, 88, 7).unwrap();
        for (i, b) in run.into_iter().enumerate() {
            assert_eq!(b, bernoulli_mod_p(p, 88 + 2 * i as u64).unwrap());
        }
        assert!(bernoulli_run_mod_p(p, 88, 8).is_err());
    }

    #[test]
    fn bernoulli_residue_examples() {
        assert_eq!(bernoulli_pm3_mod_p(prime(5)).unwrap().value.value(), 1);
        assert_eq!(bernoulli_pm3_mod_p(prime(7)).unwrap().value.value(), 3);
        assert_eq!(
            bernoulli_pm3_mod_p(prime(3)),
            Err(Error::PrimeTooSmall { p: 3, min: 5 })
        );
        assert!(bernoulli_mod_p(prime(11), 3).is_err());
        assert!(bernoulli_mod_p(prime(11), 10).is_err());
    }

    #[test]
    fn fermat_quotient_examples() {
        assert_eq!(fermat_quotient_2(prime(3)).value.value(), 1);
        assert_eq!(fermat_quotient_2(prime(5)).value.value(), 3);
        assert_eq!(fermat_quotient_2(prime(7)).value.value(), 9);
        // Wieferich primes: q_2 = 0 (mod p)
        for p in [1093u64, 3511] {
            assert_eq!(fermat_quotient_2(prime(p)).value.value() % p as u128, 0);
        }
    }

    #[test]
    fn fermat_quotient_defining_property() {
        for p in crate::residue_arith::odd_primes_in(3, 3000).unwrap() {
            let r4 = ResidueRing::new(p, 4).unwrap();
            let q = fermat_quotient_2(p).value.value();
            let lhs = r4.elem(q).scale(p.get() as u128);
            assert_eq!(lhs, r4.elem(2).pow(p.get() - 1) - r4.one(), "p = {p}");
        }
    }
}
