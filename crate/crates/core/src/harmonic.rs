//! Parity-restricted harmonic sums over `1..p-1` and the congruences they satisfy.
//!
//! Every sum here is one O(p) pass. Double sums `sum_{j<k, 2|k} 1/(j^s k^t)`
//! keep a running prefix of `sum_{j<k} 1/j^s`; the triple sum keeps the running
//! second elementary symmetric function of the reciprocals.
//!
//! The triple sum is over `1 <= i < j < k <= p-1` with `2 | k`; the display
//! for the mod-`p` evaluation of this sum writes the index set as `j < k`, and
//! two displays before the alternating-sum collapse write `i<j<k<i`. Both are
//! read as `i < j < k`.

use crate::bernoulli_fermat::{
    bernoulli_pm3_mod_p, bernoulli_run_mod_p, fermat_quotient_2, BernoulliResidue, FermatQuotient,
};
use crate::check::{CongruenceCheck, Identity};
use crate::error::{out_of_range, Result};
use crate::residue_arith::{OddPrime, PadicRational, Residue, ResidueRing};

/// Default largest `n` checked for the `sum 1/k^n` congruences.
pub const DEFAULT_N_CAP: u32 = 12;

fn require_exponent(e: u32, max: u32) -> Result<()> {
    if e == 0 || e > max {
        Err(out_of_range("e", e as u64, format!("1..={max}")))
    } else {
        Ok(())
    }
}

fn inverses(ring: &ResidueRing, n: u64) -> Vec<u128> {
    ring.inverses_upto(n)
        .expect("1..p-1 are units")
        .into_iter()
        .map(|r| r.value())
        .collect()
}

/// `sum_{k=1}^{(p-1)/2} 1/k^n mod p^e`.
///
/// `n = 1` allows `e <= 3`; `2 <= n <= p-2` allows `e <= 2`.
pub fn half_harmonic(p: OddPrime, n: u32, e: u32) -> Result<Residue> {
    p.require_at_least(5)?;
    if n == 1 {
        require_exponent(e, 3)?;
    } else if n >= 2 && (n as u64) <= p.get() - 2 {
        require_exponent(e, 2)?;
    } else {
        return Err(out_of_range("n", n as u64, format!("1..={}", p.get() - 2)));
    }
    let ring = ResidueRing::new(p, e)?;
    let sum = inverses(&ring, p.half())
        .into_iter()
        .fold(0, |acc, x| ring.add_raw(acc, ring.pow_raw(x, n as u64)));
    Ok(ring.elem(sum))
}

/// `(n, sum_{k <= (p-1)/2} 1/k^n)` for `2 <= n <= n_max`, from one pass of
/// running powers; even `n` mod `p^2`, odd `n` mod `p`.
fn half_power_sums(p: OddPrime, n_max: u32) -> Result<Vec<(u32, Residue)>> {
    if n_max < 2 {
        return Ok(Vec::new());
    }
    let (r1, r2) = (ResidueRing::new(p, 1)?, ResidueRing::new(p, 2)?);
    let mut sums = vec![0u128; n_max as usize - 1];
    for x in inverses(&r2, p.half()) {
        let mut acc = x;
        for s in sums.iter_mut() {
            acc = r2.mul_raw(acc, x);
            *s = r2.add_raw(*s, acc);
        }
    }
    Ok((2..=n_max)
        .zip(sums)
        .map(|(n, v)| {
            let ring = if n % 2 == 0 { r2 } else { r1 };
            (n, ring.elem(v))
        })
        .collect())
}

fn even_ring(p: OddPrime, e: u32) -> Result<ResidueRing> {
    p.require_at_least(5)?;
    require_exponent(e, 4)?;
    ResidueRing::new(p, e)
}

/// `sum_{k even, k <= p-1} 1/k^n mod p^e`.
pub fn even_single(p: OddPrime, n: u32, e: u32) -> Result<Residue> {
    let ring = even_ring(p, e)?;
    let invs = inverses(&ring, p.get() - 1);
    let sum = invs
        .iter()
        .skip(1)
        .step_by(2)
        .fold(0, |acc, &x| ring.add_raw(acc, ring.pow_raw(x, n as u64)));
    Ok(ring.elem(sum))
}

/// `sum_{1 <= j < k <= p-1, 2|k} 1/(j^s k^t) mod p^e`.
pub fn even_double(p: OddPrime, s: u32, t: u32, e: u32) -> Result<Residue> {
    let ring = even_ring(p, e)?;
    let invs = inverses(&ring, p.get() - 1);
    let (mut prefix, mut sum) = (0, 0);
    for (idx, &x) in invs.iter().enumerate() {
        let k = idx + 1;
        if k % 2 == 0 {
            sum = ring.add_raw(sum, ring.mul_raw(prefix, ring.pow_raw(x, t as u64)));
        }
        prefix = ring.add_raw(prefix, ring.pow_raw(x, s as u64));
    }
    Ok(ring.elem(sum))
}

/// `sum_{1 <= i < j < k <= p-1, 2|k} 1/(ijk) mod p^e`.
pub fn even_triple(p: OddPrime, e: u32) -> Result<Residue> {
    let ring = even_ring(p, e)?;
    Ok(ring.elem(EvenSums::sweep(&ring).triple))
}

/// Every even-restricted sum the profile needs, from one pass in `ring`.
struct EvenSums {
    single: [u128; 3],
    d11: u128,
    d12: u128,
    d21: u128,
    triple: u128,
}

impl EvenSums {
    fn sweep(ring: &ResidueRing) -> Self {
        let invs = inverses(ring, ring.prime().get() - 1);
        let mut out = EvenSums {
            single: [0; 3],
            d11: 0,
            d12: 0,
            d21: 0,
            triple: 0,
        };
        // prefix sums over j < k: sum 1/j, sum 1/j^2, and sum_{i<j} 1/(ij)
        let (mut h1, mut h2, mut e2) = (0, 0, 0);
        for (idx, &x) in invs.iter().enumerate() {
            let k = idx + 1;
            if k % 2 == 0 {
                let x2 = ring.mul_raw(x, x);
                let x3 = ring.mul_raw(x2, x);
                out.single[0] = ring.add_raw(out.single[0], x);
                out.single[1] = ring.add_raw(out.single[1], x2);
                out.single[2] = ring.add_raw(out.single[2], x3);
                out.d11 = ring.add_raw(out.d11, ring.mul_raw(h1, x));
                out.d12 = ring.add_raw(out.d12, ring.mul_raw(h1, x2));
                out.d21 = ring.add_raw(out.d21, ring.mul_raw(h2, x));
                out.triple = ring.add_raw(out.triple, ring.mul_raw(e2, x));
            }
            e2 = ring.add_raw(e2, ring.mul_raw(h1, x));
            h1 = ring.add_raw(h1, x);
            h2 = ring.add_raw(h2, ring.mul_raw(x, x));
        }
        out
    }
}

/// All harmonic-type sums for one prime, each in the ring its congruence lives in.
#[derive(Clone, Debug)]
pub struct HarmonicProfile {
    pub prime: OddPrime,
    pub q2: FermatQuotient,
    pub bernoulli: BernoulliResidue,
    /// `sum_{k <= (p-1)/2} 1/k`, mod `p^3`.
    pub half_h1: Residue,
    /// `(n, sum_{k <= (p-1)/2} 1/k^n)` for `2 <= n <= min(p-2, cap)`; mod `p^2`
    /// for even `n`, mod `p` for odd `n`.
    pub half_hn: Vec<(u32, Residue)>,
    /// `sum_{k even} 1/k^n` for `n = 1, 2, 3`, mod `p^4`.
    pub even_single: [Residue; 3],
    /// `(s, t) = (1, 1)`, mod `p^2`.
    pub even_double_11: Residue,
    /// `(s, t) = (1, 2)`, mod `p`.
    pub even_double_12: Residue,
    /// `(s, t) = (2, 1)`, mod `p`.
    pub even_double_21: Residue,
    /// mod `p`.
    pub even_triple: Residue,
}

/// The profile with the default `n` cap.
pub fn even_restricted_sums(p: OddPrime) -> Result<HarmonicProfile> {
    HarmonicProfile::with_cap(p, DEFAULT_N_CAP)
}

impl HarmonicProfile {
    pub fn with_cap(p: OddPrime, n_cap: u32) -> Result<Self> {
        p.require_at_least(5)?;
        let r = |e| ResidueRing::new(p, e).expect("valid exponent");
        let (r1, r2, r4) = (r(1), r(2), r(4));
        let sums = EvenSums::sweep(&r4);
        let to = |v: u128, ring: &ResidueRing| ring.elem(v);
        let n_max = (n_cap as u64).min(p.get() - 2) as u32;
        let half_hn = half_power_sums(p, n_max)?;
        Ok(Self {
            prime: p,
            q2: fermat_quotient_2(p),
            bernoulli: bernoulli_pm3_mod_p(p)?,
            half_h1: half_harmonic(p, 1, 3)?,
            half_hn,
            even_single: sums.single.map(|v| to(v, &r4)),
            even_double_11: to(sums.d11, &r2),
            even_double_12: to(sums.d12, &r1),
            even_double_21: to(sums.d21, &r1),
            even_triple: to(sums.triple, &r1),
        })
    }
}

fn rat(num: i64, den: i64, ring: &ResidueRing) -> Residue {
    PadicRational::new(num, den)
        .reduce(ring)
        .expect("small coefficients are p-integral for p >= 5")
}

/// `p^k * x` in `ring`, where `x` is known only mod `p^(e-k)`.
fn shift(x: Residue, k: u32, ring: &ResidueRing) -> Residue {
    ring.elem(x.value())
        .scale((ring.prime().get() as u128).pow(k))
}

/// The half-range harmonic congruences: `n = 1` mod `p^3` and `2 <= n <= cap` mod `p^2` / `p`.
pub fn verify_lemma_2_1(profile: &HarmonicProfile) -> Result<Vec<CongruenceCheck>> {
    let p = profile.prime;
    let r3 = ResidueRing::new(p, 3)?;
    let pr = r3.elem(p.get() as u128);
    let q = profile.q2.value;
    let b = profile.bernoulli.value;
    let rhs = -q.scale(2) + pr * q * q
        - rat(2, 3, &r3) * pr * pr * q * q * q
        - rat(7, 12, &r3) * shift(b, 2, &r3);
    let mut out = vec![CongruenceCheck::residues(
        Identity::Lemma21I,
        vec![1],
        profile.half_h1,
        rhs,
    )];
    // B_m for m = p-n-1 (n even) or p-n (n odd): a run of even m ending at p-3
    let bern_index = |n: u32| p.get() - n as u64 - u64::from(n % 2 == 0);
    let n_top = profile.half_hn.last().map_or(1, |&(n, _)| n);
    let bern = if n_top >= 2 {
        let m_lo = bern_index(n_top);
        bernoulli_run_mod_p(p, m_lo, ((p.get() - 3 - m_lo) / 2 + 1) as usize)?
            .into_iter()
            .enumerate()
            .map(|(i, b)| (m_lo + 2 * i as u64, b))
            .collect()
    } else {
        Vec::new()
    };
    let bernoulli = |m: u64| bern[((m - bern[0].0) / 2) as usize].1;
    for &(n, lhs) in &profile.half_hn {
        let ring = lhs.ring();
        let pow2 = |k: u32| 2i64.pow(k);
        let b = bernoulli(bern_index(n));
        let rhs = if n % 2 == 0 {
            let coeff = rat(n as i64 * (pow2(n + 1) - 1), 2 * (n as i64 + 1), &ring);
            coeff * shift(b, 1, &ring)
        } else {
            let coeff = rat(-2 * (pow2(n - 1) - 1), n as i64, &ring);
            coeff * b
        };
        out.push(CongruenceCheck::residues(
            Identity::Lemma21Ii,
            vec![n as u64],
            lhs,
            rhs,
        ));
    }
    Ok(out)
}

/// `sum_{j<k, 2|k} 1/(j k^2) = 5/8 B_{p-3}` and `sum_{j<k, 2|k} 1/(j^2 k) = -3/8 B_{p-3}` mod `p`.
pub fn verify_lemma_2_2(profile: &HarmonicProfile) -> Vec<CongruenceCheck> {
    let b = profile.bernoulli.value;
    let r1 = b.ring();
    vec![
        CongruenceCheck::residues(
            Identity::Lemma22A,
            vec![],
            profile.even_double_12,
            rat(5, 8, &r1) * b,
        ),
        CongruenceCheck::residues(
            Identity::Lemma22B,
            vec![],
            profile.even_double_21,
            rat(-3, 8, &r1) * b,
        ),
    ]
}

/// The two intermediate relations tying the even double sum to the even triple
/// sum, and the closed forms obtained by solving them.
pub fn verify_derived_sums(profile: &HarmonicProfile) -> Result<Vec<CongruenceCheck>> {
    let p = profile.prime;
    let r2 = ResidueRing::new(p, 2)?;
    let r1 = ResidueRing::new(p, 1)?;
    let q = profile.q2.value.reduce_to(&r2)?;
    let q1 = profile.q2.value.reduce_to(&r1)?;
    let pq3 = shift(q1 * q1 * q1, 1, &r2);
    let pb = shift(profile.bernoulli.value, 1, &r2);
    let pt = shift(profile.even_triple, 1, &r2);
    let half_q2 = rat(1, 2, &r2) * q * q;
    let d = profile.even_double_11;

    let eq27 = pt + half_q2 - rat(1, 3, &r2) * pq3 - rat(7, 24, &r2) * pb;
    let eq28 = pt.scale(2) + half_q2 - rat(1, 6, &r2) * pq3 - rat(7, 48, &r2) * pb;
    let eq29 = rat(1, 2, &r2) * (q * q - pq3) - rat(7, 16, &r2) * pb;
    let b1 = profile.bernoulli.value;
    let eq210 = -(rat(1, 6, &r1) * q1 * q1 * q1) - rat(7, 48, &r1) * b1;

    Ok(vec![
        CongruenceCheck::residues(Identity::Eq27, vec![], d, eq27),
        CongruenceCheck::residues(Identity::Eq28, vec![], d, eq28),
        CongruenceCheck::residues(Identity::Eq29, vec![], d, eq29),
        CongruenceCheck::residues(Identity::Eq210, vec![], profile.even_triple, eq210),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> OddPrime {
        OddPrime::new(p).unwrap()
    }

    #[test]
    fn batched_half_sums_match_direct() {
        let p = prime(31);
        let batch = half_power_sums(p, 12).unwrap();
        assert_eq!(batch.len(), 11);
        for (n, r) in batch {
            let e = if n % 2 == 0 { 2 } else { 1 };
            assert_eq!(r, half_harmonic(p, n, e).unwrap(), "n = {n}");
        }
        assert!(half_power_sums(p, 1).unwrap().is_empty());
    }

    #[test]
    fn half_harmonic_examples() {
        assert_eq!(half_harmonic(prime(5), 1, 3).unwrap().value(), 64);
        assert_eq!(half_harmonic(prime(7), 1, 1).unwrap().value(), 3);
        assert_eq!(half_harmonic(prime(5), 2, 1).unwrap().value(), 0);
    }

    #[test]
    fn half_harmonic_preconditions() {
        assert!(half_harmonic(prime(3), 1, 1).is_err());
        assert!(half_harmonic(prime(7), 1, 4).is_err());
        assert!(half_harmonic(prime(7), 2, 3).is_err());
        assert!(half_harmonic(prime(7), 6, 1).is_err());
        assert!(half_harmonic(prime(7), 0, 1).is_err());
        assert!(half_harmonic(prime(7), 5, 2).is_ok());
    }

    #[test]
    fn even_double_examples() {
        assert_eq!(even_double(prime(7), 1, 2, 1).unwrap().value(), 1);
        assert_eq!(even_double(prime(7), 2, 1, 1).unwrap().value(), 5);
        assert_eq!(even_double(prime(5), 1, 2, 1).unwrap().value(), 0);
    }

    #[test]
    fn profile_matches_general_functions() {
        for p in [5u64, 7, 11, 53, 101] {
            let p = prime(p);
            let prof = even_restricted_sums(p).unwrap();
            for n in 1..=3 {
                assert_eq!(
                    prof.even_single[n - 1],
                    even_single(p, n as u32, 4).unwrap()
                );
            }
            assert_eq!(prof.even_double_11, even_double(p, 1, 1, 2).unwrap());
            assert_eq!(prof.even_double_12, even_double(p, 1, 2, 1).unwrap());
            assert_eq!(prof.even_double_21, even_double(p, 2, 1, 1).unwrap());
            assert_eq!(prof.even_triple, even_triple(p, 1).unwrap());
        }
    }

    #[test]
    fn half_hn_respects_cap_and_p_minus_2() {
        let prof = even_restricted_sums(prime(7)).unwrap();
        let ns: Vec<u32> = prof.half_hn.iter().map(|(n, _)| *n).collect();
        assert_eq!(ns, vec![2, 3, 4, 5]);
        let prof = even_restricted_sums(prime(101)).unwrap();
        assert_eq!(prof.half_hn.last().unwrap().0, DEFAULT_N_CAP);
        assert_eq!(prof.half_hn.first().unwrap().0, 2);
    }

    #[test]
    fn lemma_checks_small_primes() {
        let prof = even_restricted_sums(prime(5)).unwrap();
        let l21 = verify_lemma_2_1(&prof).unwrap();
        assert_eq!(l21[0].lhs, 64.into());
        assert_eq!(l21[0].rhs, 64.into());
        let n3 = l21.iter().find(|c| c.params == [3]).unwrap();
        assert_eq!((n3.lhs.clone(), n3.rhs.clone()), (3.into(), 3.into()));

        let prof7 = even_restricted_sums(prime(7)).unwrap();
        let l22 = verify_lemma_2_2(&prof7);
        assert_eq!(l22[0].lhs, 1.into());
        assert_eq!(l22[1].lhs, 5.into());
        assert!(l22.iter().all(|c| c.verdict));
        for p in [5u64, 7, 11, 13] {
            let prof = even_restricted_sums(prime(p)).unwrap();
            let checks: Vec<_> = verify_lemma_2_1(&prof)
                .unwrap()
                .into_iter()
                .chain(verify_lemma_2_2(&prof))
                .chain(verify_derived_sums(&prof).unwrap())
                .collect();
            for c in checks {
                assert!(c.verdict, "{c}");
            }
        }
    }
}
