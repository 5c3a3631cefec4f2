use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::check::{CongruenceCheck, Identity};
use crate::error::{out_of_range, Result};
use crate::residue_arith::{OddPrime, PadicRational, ResidueRing};

use super::theorem::correction_coefficient;

pub const EXACT_1_3_CAP: u64 = 300;
pub const EXACT_1_4_CAP: u64 = 200;

/// `binom(n, k)` for `k = 0..=n`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(c.clone());
    }
    row
}

fn sign(k: u64) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn alternating_power_sum(row: &[BigInt], upper: u64, power: u32) -> BigInt {
    row.iter()
        .take(upper as usize + 1)
        .enumerate()
        .fold(BigInt::zero(), |acc, (k, c)| {
            acc + sign(k as u64) * c.pow(power)
        })
}

/// `sum_{k=0}^{upper} (-1)^k binom(2n,k)^2`.
///
/// The full-range form uses `upper = 2n`; the upper limit `n` as printed alongside the
/// identity already fails at `n = 1` (`1 - 4 = -3`, not `-2`).
pub fn alternating_square_sum(n: u64, upper: u64) -> BigInt {
    alternating_power_sum(&binomial_row(2 * n), upper.min(2 * n), 2)
}

/// Both equalities, exactly: `sum_{k=0}^{2n} (-1)^k binom(2n,k)^2 = (-1)^n binom(2n,n)`
/// (`params = [n, 1]`) and `sum_{k=0}^{n} binom(n,k)^2 = binom(2n,n)` (`params = [n, 2]`).
pub fn exact_identity_1_3(n: u64) -> Result<Vec<CongruenceCheck>> {
    if n > EXACT_1_3_CAP {
        return Err(out_of_range("n", n, format!("at most {EXACT_1_3_CAP}")));
    }
    let row2n = binomial_row(2 * n);
    let central = row2n[n as usize].clone();
    let alt = alternating_power_sum(&row2n, 2 * n, 2);
    let squares: BigInt = binomial_row(n).iter().map(|c| c * c).sum();
    Ok(vec![
        CongruenceCheck::exact(Identity::Exact13, n, vec![n, 1], alt, sign(n) * &central),
        CongruenceCheck::exact(Identity::Exact13, n, vec![n, 2], squares, central),
    ])
}

/// `sum_{k=0}^{2n} (-1)^k binom(2n,k)^3 = (-1)^n binom(2n,n) binom(3n,n)`.
pub fn exact_identity_1_4(n: u64) -> Result<CongruenceCheck> {
    if n > EXACT_1_4_CAP {
        return Err(out_of_range("n", n, format!("at most {EXACT_1_4_CAP}")));
    }
    let row2n = binomial_row(2 * n);
    let lhs = alternating_power_sum(&row2n, 2 * n, 3);
    let rhs = sign(n) * &row2n[n as usize] * &binomial_row(3 * n)[n as usize];
    Ok(CongruenceCheck::exact(
        Identity::Exact14,
        n,
        vec![n],
        lhs,
        rhs,
    ))
}

/// `a(a-1)(3a-4)/48 * 27 + 9a(a-1)`, which equals `(27/16) a(a-1)(a+4)`.
pub fn p3_correction_sum(a: u64) -> PadicRational {
    let nine = 9 * BigInt::from(a) * (BigInt::from(a) - 1);
    correction_coefficient(a) * PadicRational::from_integer(27) + PadicRational::from_integer(nine)
}

/// `v_3(a(a-1)(a+4)) >= 1`: one of `a`, `a-1`, `a+4 = a-2 (mod 3)` is divisible by 3.
pub fn p3_cancellation_holds(a: u64) -> bool {
    let a = a as u128;
    (a * a.saturating_sub(1) * (a + 4)) % 3 == 0
}

/// The separate `p = 3` computation, as two records:
/// `params = [a, 1]` compares `2^{2a} - sum_{k=0}^{2} (-1)^{(a-1)k} binom(2,k)^a`
/// with `9a(a-1)` mod 81; `params = [a, 2]` reduces `p3_correction_sum(a)` mod 81
/// and compares it with 0.
pub fn verify_p3_special(a: u64) -> Result<Vec<CongruenceCheck>> {
    if a == 0 {
        return Err(out_of_range("a", a, "a >= 1"));
    }
    let ring = ResidueRing::new(OddPrime::new(3)?, 4)?;
    let two_a = ring.elem(2).pow(a);
    let middle = if a % 2 == 0 { -two_a } else { two_a };
    let sum = ring.one() + middle + ring.one();
    let lhs = ring.elem(4).pow(a) - sum;
    let a128 = a as u128;
    let rhs = ring.elem(9).scale(a128) * ring.elem(a128 - 1);

    let correction = p3_correction_sum(a);
    debug_assert_eq!(
        correction,
        PadicRational::new(
            27 * BigInt::from(a) * (BigInt::from(a) - 1) * (BigInt::from(a) + 4),
            16
        )
    );
    let cancel = correction.reduce(&ring)?;
    let mut stage2 =
        CongruenceCheck::residues(Identity::P3Special, vec![a, 2], cancel, ring.zero());
    stage2.verdict &= p3_cancellation_holds(a);
    Ok(vec![
        CongruenceCheck::residues(Identity::P3Special, vec![a, 1], lhs, rhs),
        stage2,
    ])
}
