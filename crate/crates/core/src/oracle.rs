//! Naive reference computations for cross-validating the fast paths.
//!
//! Nothing here shares code with the production sweeps: binomials come from
//! exact big integers, inverses from Euler's theorem instead of extended
//! Euclid, and every multiple sum is a full nested loop. Costs are O(p^2) for
//! double sums and O(p^3) for the triple sum, so keep `p` small.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::check::Identity;
use crate::congruences::PrimeContext;
use crate::error::Result;
use crate::residue_arith::{
    symmetric_sweep, valued_binomial_row, OddPrime, PadicRational, Residue, ResidueRing,
};
use crate::{bernoulli_fermat, harmonic};

fn ring(p: OddPrime, e: u32) -> ResidueRing {
    ResidueRing::new(p, e).expect("valid exponent")
}

fn big_to_residue(n: &BigInt, ring: &ResidueRing) -> Residue {
    let m = BigInt::from(ring.modulus());
    ring.elem(n.mod_floor(&m).to_u128().expect("fits"))
}

/// `x^{phi(p^e) - 1}`.
pub fn euler_inverse(x: u64, ring: &ResidueRing) -> Residue {
    let p = ring.prime().get();
    let phi = p.pow(ring.exponent() - 1) * (p - 1);
    ring.elem(x as u128).pow(phi - 1)
}

fn euler_inverses(ring: &ResidueRing, n: u64) -> Vec<Residue> {
    (1..=n).map(|k| euler_inverse(k, ring)).collect()
}

pub fn exact_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let num: BigUint = ((n - k + 1)..=n).map(BigUint::from).product();
    let den: BigUint = (1..=k).map(BigUint::from).product();
    num / den
}

pub fn naive_binom_pm1(ring: &ResidueRing) -> Vec<Residue> {
    let p = ring.prime().get();
    let m = BigUint::from(ring.modulus());
    (0..p)
        .map(|k| ring.elem((exact_binomial(p - 1, k) % &m).to_u128().expect("fits")))
        .collect()
}

/// `(sigma1, sigma2, sigma3)` over `{1/k : k <= r}` by enumerating index sets.
pub fn naive_symmetric_sums(ring: &ResidueRing, r: u64) -> [Residue; 3] {
    let inv = euler_inverses(ring, r);
    let mut s = [ring.zero(); 3];
    for i in 0..inv.len() {
        s[0] = s[0] + inv[i];
        for j in (i + 1)..inv.len() {
            s[1] = s[1] + inv[i] * inv[j];
            for k in (j + 1)..inv.len() {
                s[2] = s[2] + inv[i] * inv[j] * inv[k];
            }
        }
    }
    s
}

pub fn naive_half_harmonic(p: OddPrime, n: u32, e: u32) -> Residue {
    let r = ring(p, e);
    euler_inverses(&r, p.half())
        .into_iter()
        .fold(r.zero(), |acc, x| acc + x.pow(n as u64))
}

pub fn naive_even_single(p: OddPrime, n: u32, e: u32) -> Residue {
    let r = ring(p, e);
    (2..p.get())
        .step_by(2)
        .fold(r.zero(), |acc, k| acc + euler_inverse(k, &r).pow(n as u64))
}

pub fn naive_even_double(p: OddPrime, s: u32, t: u32, e: u32) -> Residue {
    let r = ring(p, e);
    let inv = euler_inverses(&r, p.get() - 1);
    let mut sum = r.zero();
    for k in (2..p.get()).step_by(2) {
        for j in 1..k {
            sum = sum + inv[j as usize - 1].pow(s as u64) * inv[k as usize - 1].pow(t as u64);
        }
    }
    sum
}

pub fn naive_even_triple(p: OddPrime, e: u32) -> Residue {
    let r = ring(p, e);
    let inv = euler_inverses(&r, p.get() - 1);
    let mut sum = r.zero();
    for k in (2..p.get() as usize).step_by(2) {
        for j in 1..k {
            for i in 1..j {
                sum = sum + inv[i - 1] * inv[j - 1] * inv[k - 1];
            }
        }
    }
    sum
}

/// `sum_{k=0}^{p-1} (-1)^{(a-1)k} binom(p-1,k)^a` in exact integers.
pub fn naive_power_sum_exact(p: u64, a: u32) -> BigInt {
    (0..p).fold(BigInt::zero(), |acc, k| {
        let term = BigInt::from(exact_binomial(p - 1, k).pow(a));
        if (a as u64 - 1) * k % 2 == 1 {
            acc - term
        } else {
            acc + term
        }
    })
}

pub fn naive_lhs_power_sum(p: OddPrime, a: u32) -> Residue {
    big_to_residue(&naive_power_sum_exact(p.get(), a), &ring(p, 4))
}

pub fn naive_fermat_quotient(p: OddPrime) -> Residue {
    let q = (BigInt::one() << (p.get() - 1) as usize) - 1u32;
    let (q, rem) = q.div_rem(&BigInt::from(p.get()));
    assert!(rem.is_zero());
    big_to_residue(&q, &ring(p, 3))
}

/// Which groups of fast-path quantities to recompute.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleScope {
    /// binomial tables, central binomials, valued rows, sigma sums
    pub tables: bool,
    /// `lhs_power_sum` for `a <= 5`
    pub power_sums: bool,
    /// half-range sums `sum_{k <= (p-1)/2} 1/k^n`
    pub half_sums: bool,
    /// even-restricted single, double and triple sums
    pub even_sums: bool,
    /// `q_2(p)` and `B_{p-3} mod p`
    pub constants: bool,
}

impl OracleScope {
    pub fn all() -> Self {
        Self {
            tables: true,
            power_sums: true,
            half_sums: true,
            even_sums: true,
            constants: true,
        }
    }

    /// The quantities an identity's checker consumes.
    pub fn for_identity(id: Identity) -> Self {
        use Identity::*;
        let mut s = Self::default();
        match id {
            Theorem11 | CorollaryA3 | CorollaryA4 | CorollaryA5 | CaiGranville => {
                s.tables = true;
                s.power_sums = true;
                s.constants = true;
            }
            Morley | Carlitz | ChamberlandDilcher => {
                s.tables = true;
                s.constants = true;
            }
            Lemma21I | Lemma21Ii => {
                s.half_sums = true;
                s.constants = true;
            }
            Lemma22A | Lemma22B | Eq27 | Eq28 | Eq29 | Eq210 => {
                s.even_sums = true;
                s.constants = true;
            }
            Exact13 | Exact14 | P3Special => {}
        }
        s
    }

    pub fn union(self, other: Self) -> Self {
        Self {
            tables: self.tables || other.tables,
            power_sums: self.power_sums || other.power_sums,
            half_sums: self.half_sums || other.half_sums,
            even_sums: self.even_sums || other.even_sums,
            constants: self.constants || other.constants,
        }
    }
}

/// One compared quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub quantity: String,
    pub agree: bool,
}

struct Collector(Vec<Comparison>);

impl Collector {
    fn push(&mut self, quantity: impl Into<String>, agree: bool) {
        self.0.push(Comparison {
            quantity: quantity.into(),
            agree,
        });
    }
}

/// Recomputes every quantity in `scope` for `p` both ways.
///
/// `bernoulli` is an exact table `B_0..`; `B_{p-3}` is compared only when the
/// table reaches that index.
pub fn cross_check(
    p: OddPrime,
    scope: OracleScope,
    bernoulli: Option<&[PadicRational]>,
) -> Result<Vec<Comparison>> {
    let mut out = Collector(Vec::new());
    let pv = p.get();
    if scope.tables {
        for e in 1..=4 {
            let r = ring(p, e);
            let fast = crate::residue_arith::binom_pm1(&r);
            let naive = naive_binom_pm1(&r);
            out.push(
                format!("binom_pm1 mod {}^{e}", pv),
                fast.iter().eq(naive.iter().copied()),
            );
            out.push(
                format!("central_binomial mod {}^{e}", pv),
                crate::residue_arith::central_binomial(&r) == naive[p.half() as usize],
            );
            let sweep = symmetric_sweep(&r, pv - 1);
            let sigma_ok = (0..pv).all(|k| {
                let s = sweep[k as usize];
                naive_symmetric_sums(&r, k) == [s.sigma1, s.sigma2, s.sigma3]
            });
            out.push(format!("symmetric sums mod {}^{e}", pv), sigma_ok);
        }
        let r3 = ring(p, 3);
        let m = BigUint::from(r3.modulus());
        let rows_ok = [pv, 2 * pv].into_iter().all(|n| {
            valued_binomial_row(n, &r3)
                .map(|row| {
                    row.iter().enumerate().all(|(k, v)| {
                        BigUint::from(v.to_residue().value()) == exact_binomial(n, k as u64) % &m
                    })
                })
                .unwrap_or(false)
        });
        out.push(format!("valued binomial rows mod {}^3", pv), rows_ok);
    }
    if scope.power_sums {
        let ctx = PrimeContext::new(p);
        for a in 1..=5u32 {
            out.push(
                format!("lhs_power_sum a={a}"),
                ctx.lhs_power_sum(a as u64) == naive_lhs_power_sum(p, a),
            );
        }
    }
    if scope.constants {
        out.push(
            "fermat_quotient_2",
            bernoulli_fermat::fermat_quotient_2(p).value == naive_fermat_quotient(p),
        );
        if let Some(table) = bernoulli {
            if pv >= 5 && ((pv - 3) as usize) < table.len() {
                let exact = table[(pv - 3) as usize].reduce(&ring(p, 1))?;
                let fast = bernoulli_fermat::bernoulli_pm3_mod_p(p)?.value;
                out.push("bernoulli_pm3_mod_p", fast == exact);
            }
        }
    }
    if pv >= 5 && scope.half_sums {
        out.push(
            "half_harmonic n=1 e=3",
            harmonic::half_harmonic(p, 1, 3)? == naive_half_harmonic(p, 1, 3),
        );
        for n in 2..=(pv - 2).min(harmonic::DEFAULT_N_CAP as u64) as u32 {
            let e = if n % 2 == 0 { 2 } else { 1 };
            out.push(
                format!("half_harmonic n={n} e={e}"),
                harmonic::half_harmonic(p, n, e)? == naive_half_harmonic(p, n, e),
            );
        }
    }
    if pv >= 5 && scope.even_sums {
        for n in 1..=3 {
            out.push(
                format!("even_single n={n}"),
                harmonic::even_single(p, n, 4)? == naive_even_single(p, n, 4),
            );
        }
        for (s, t, e) in [
            (1, 1, 2),
            (1, 2, 1),
            (2, 1, 1),
            (1, 1, 4),
            (2, 1, 4),
            (1, 2, 4),
        ] {
            out.push(
                format!("even_double({s},{t},{e})"),
                harmonic::even_double(p, s, t, e)? == naive_even_double(p, s, t, e),
            );
        }
        for e in [1, 4] {
            out.push(
                format!("even_triple e={e}"),
                harmonic::even_triple(p, e)? == naive_even_triple(p, e),
            );
        }
        let profile = harmonic::even_restricted_sums(p)?;
        out.push(
            "profile",
            profile.even_double_11 == naive_even_double(p, 1, 1, 2)
                && profile.even_double_12 == naive_even_double(p, 1, 2, 1)
                && profile.even_double_21 == naive_even_double(p, 2, 1, 1)
                && profile.even_triple == naive_even_triple(p, 1)
                && profile.half_h1 == naive_half_harmonic(p, 1, 3),
        );
    }
    Ok(out.0)
}
