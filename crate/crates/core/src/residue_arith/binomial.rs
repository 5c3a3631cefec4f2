use super::ring::{Residue, ResidueRing};
use crate::error::{out_of_range, Result};

/// `binom(p-1, k) mod p^e` for `k = 0..p`.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    ring: ResidueRing,
    values: Vec<u128>,
}

impl BinomialTable {
    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: usize) -> Residue {
        self.ring.wrap(self.values[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = Residue> + '_ {
        self.values.iter().map(|&v| self.ring.wrap(v))
    }

    pub(crate) fn raw(&self) -> &[u128] {
        &self.values
    }

    /// `binom(p-1, (p-1)/2)`.
    pub fn central(&self) -> Residue {
        self.get(self.ring.prime().half() as usize)
    }
}

/// Builds the table by `T_k = T_{k-1} (p - k) / k`, with all `1/k` from one batch inversion.
pub fn binom_pm1(ring: &ResidueRing) -> BinomialTable {
    let p = ring.prime().get();
    let invs = ring.inverses_upto(p - 1).expect("1..p-1 are units mod p^e");
    let mut values = Vec::with_capacity(p as usize);
    let mut acc = 1 % ring.modulus();
    values.push(acc);
    for k in 1..p {
        acc = ring.mul_raw(acc, (p - k) as u128);
        acc = ring.mul_raw(acc, invs[(k - 1) as usize].value());
        values.push(acc);
    }
    BinomialTable {
        ring: *ring,
        values,
    }
}

/// `binom(p-1, (p-1)/2)` without materialising the whole table.
pub fn central_binomial(ring: &ResidueRing) -> Residue {
    let p = ring.prime().get();
    let h = ring.prime().half();
    let mut num = 1 % ring.modulus();
    let mut den = 1 % ring.modulus();
    for k in 1..=h {
        num = ring.mul_raw(num, (p - k) as u128);
        den = ring.mul_raw(den, k as u128);
    }
    let den = ring.inv_raw(den).expect("h! is a unit mod p^e");
    ring.wrap(ring.mul_raw(num, den))
}

/// A nonzero integer written as `p^valuation * unit` with `unit` a unit mod `p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Valued {
    pub valuation: u32,
    pub unit: Residue,
}

impl Valued {
    pub fn pow(self, exp: u32) -> Valued {
        Valued {
            valuation: self.valuation * exp,
            unit: self.unit.pow(exp as u64),
        }
    }

    pub fn to_residue(self) -> Residue {
        let ring = self.unit.ring();
        if self.valuation >= ring.exponent() {
            return ring.zero();
        }
        let shift = (ring.prime().get() as u128).pow(self.valuation);
        self.unit.scale(shift)
    }
}

fn split_p(mut n: u64, p: u64) -> (u32, u64) {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// `binom(n, k)` for `k = 0..=n` as (valuation, unit) pairs in `ring`.
///
/// Handles rows such as `n = p` or `n = 2p` whose entries are not units.
pub fn valued_binomial_row(n: u64, ring: &ResidueRing) -> Result<Vec<Valued>> {
    let p = ring.prime().get();
    if n > 16 * p {
        return Err(out_of_range("row", n, format!("at most {}", 16 * p)));
    }
    let den_units: Vec<u128> = (1..=n).map(|k| split_p(k, p).1 as u128).collect();
    let den_inv = ring.batch_inv_raw(&den_units)?;
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut valuation: i64 = 0;
    let mut unit = 1 % ring.modulus();
    row.push(Valued {
        valuation: 0,
        unit: ring.wrap(unit),
    });
    for k in 1..=n {
        let (v_num, u_num) = split_p(n - k + 1, p);
        let (v_den, _) = split_p(k, p);
        valuation += v_num as i64 - v_den as i64;
        unit = ring.mul_raw(unit, u_num as u128 % ring.modulus());
        unit = ring.mul_raw(unit, den_inv[(k - 1) as usize]);
        debug_assert!(valuation >= 0);
        row.push(Valued {
            valuation: valuation as u32,
            unit: ring.wrap(unit),
        });
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn ring(p: u64, e: u32) -> ResidueRing {
        ResidueRing::of(p, e).unwrap()
    }

    fn exact_binom(n: u64, k: u64) -> BigUint {
        (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn table_examples() {
        assert_eq!(binom_pm1(&ring(5, 4)).get(2).value(), 6);
        assert_eq!(binom_pm1(&ring(3, 4)).get(1).value(), 2);
        let t7: Vec<u128> = binom_pm1(&ring(7, 1)).iter().map(|r| r.value()).collect();
        assert_eq!(t7, vec![1, 6, 1, 6, 1, 6, 1]);
        assert_eq!(binom_pm1(&ring(11, 3)).get(0).value(), 1);
    }

    #[test]
    fn central_matches_table() {
        for p in [3u64, 5, 7, 11, 13, 101, 997] {
            for e in 1..=4 {
                let r = ring(p, e);
                assert_eq!(central_binomial(&r), binom_pm1(&r).central());
            }
        }
        let r = ring(65_537, 4);
        assert_eq!(central_binomial(&r), binom_pm1(&r).central());
    }

    #[test]
    fn table_agrees_with_big_integers() {
        for p in [3u64, 5, 7, 31, 101] {
            for e in 1..=4 {
                let r = ring(p, e);
                let m = BigUint::from(r.modulus());
                let t = binom_pm1(&r);
                for k in 0..p {
                    assert_eq!(
                        BigUint::from(t.get(k as usize).value()),
                        exact_binom(p - 1, k) % &m
                    );
                }
            }
        }
    }

    #[test]
    fn valued_rows_agree_with_big_integers() {
        for p in [3u64, 5, 7, 13] {
            for e in 1..=4 {
                let r = ring(p, e);
                let m = BigUint::from(r.modulus());
                for n in [p, 2 * p, 3 * p + 1] {
                    let row = valued_binomial_row(n, &r).unwrap();
                    for (k, entry) in row.iter().enumerate() {
                        let exact = exact_binom(n, k as u64);
                        let mut v = 0;
                        let mut rest = exact.clone();
                        while &rest % p == BigUint::from(0u32) {
                            rest /= p;
                            v += 1;
                        }
                        assert_eq!(entry.valuation, v, "v_p binom({n},{k})");
                        assert_eq!(BigUint::from(entry.to_residue().value()), &exact % &m);
                        for a in 0..4 {
                            assert_eq!(
                                BigUint::from(entry.pow(a).to_residue().value()),
                                exact.pow(a) % &m
                            );
                        }
                    }
                }
            }
        }
    }
}
