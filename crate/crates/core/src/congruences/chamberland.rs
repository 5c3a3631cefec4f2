use crate::check::{CongruenceCheck, Identity};
use crate::error::{out_of_range, Error, Result};
use crate::residue_arith::{valued_binomial_row, OddPrime, Residue, ResidueRing};

/// Triples for which `u = 1 + (-1)^eps 2^b (mod p^3)` does not hold.
///
/// `(0,0,1)` and `(0,1,0)` are the documented exceptions; `(0,0,0)` is the
/// degenerate sum `p + 1`.
pub fn is_exceptional(eps: u8, a: u32, b: u32) -> bool {
    matches!((eps, a, b), (0, 0, 1) | (0, 1, 0) | (0, 0, 0))
}

/// `sum_{k=0}^{upper} (-1)^{eps k} binom(p,k)^a binom(2p,k)^b mod p^3`, `upper <= 2p`.
///
/// `binom(p,k) = 0` for `k > p`; with `a = 0` that factor is taken as 1.
pub fn chamberland_dilcher_sum(
    p: OddPrime,
    eps: u8,
    a: u32,
    b: u32,
    upper: u64,
) -> Result<Residue> {
    if eps > 1 {
        return Err(out_of_range("eps", eps as u64, "0 or 1"));
    }
    let n = p.get();
    if upper > 2 * n {
        return Err(out_of_range("upper", upper, format!("at most {}", 2 * n)));
    }
    let ring = ResidueRing::new(p, 3)?;
    let row_p = valued_binomial_row(n, &ring)?;
    let row_2p = valued_binomial_row(2 * n, &ring)?;
    let mut sum = ring.zero();
    for k in 0..=upper as usize {
        let left = match row_p.get(k) {
            Some(v) => v.pow(a).to_residue(),
            None if a == 0 => ring.one(),
            None => continue,
        };
        let term = left * row_2p[k].pow(b).to_residue();
        sum = if eps == 1 && k % 2 == 1 {
            sum - term
        } else {
            sum + term
        };
    }
    Ok(sum)
}

/// Compares `u_{a,b}^eps(p)`, summed over `0 <= k <= p`, with `1 + (-1)^eps 2^b` mod `p^3`.
pub fn verify_chamberland_dilcher(p: OddPrime, eps: u8, a: u32, b: u32) -> Result<CongruenceCheck> {
    p.require_at_least(5)?;
    if is_exceptional(eps, a, b) {
        return Err(Error::ExcludedTriple { eps, a, b });
    }
    let lhs = chamberland_dilcher_sum(p, eps, a, b, p.get())?;
    let ring = lhs.ring();
    let two_b = ring.elem(2).pow(b as u64);
    let rhs = if eps == 1 {
        ring.one() - two_b
    } else {
        ring.one() + two_b
    };
    Ok(CongruenceCheck::residues(
        Identity::ChamberlandDilcher,
        vec![eps as u64, a as u64, b as u64],
        lhs,
        rhs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> OddPrime {
        OddPrime::new(p).unwrap()
    }

    #[test]
    fn vandermonde_example() {
        let c = verify_chamberland_dilcher(prime(5), 0, 2, 0).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone()), (2.into(), 2.into()));
    }

    #[test]
    fn exceptions_are_rejected() {
        for (eps, a, b) in [(0, 1, 0), (0, 0, 1), (0, 0, 0)] {
            assert_eq!(
                verify_chamberland_dilcher(prime(7), eps, a, b),
                Err(Error::ExcludedTriple { eps, a, b })
            );
        }
        // still computable: sum_{k<=p} binom(p,k) = 2^p
        let u = chamberland_dilcher_sum(prime(7), 0, 1, 0, 7).unwrap();
        assert_eq!(u.value(), 128);
    }

    #[test]
    fn printed_upper_limit_breaks_a_zero() {
        // with a = 0 the terms p < k <= 2p are not killed
        let p = prime(7);
        assert_eq!(chamberland_dilcher_sum(p, 1, 0, 1, 14).unwrap().value(), 0);
        let c = verify_chamberland_dilcher(p, 1, 0, 1).unwrap();
        assert!(c.verdict);
        assert_eq!(c.rhs, (343 - 1).into());
        // with a >= 1 the two limits agree
        assert_eq!(
            chamberland_dilcher_sum(p, 1, 2, 3, 14).unwrap(),
            chamberland_dilcher_sum(p, 1, 2, 3, 7).unwrap()
        );
    }
}
