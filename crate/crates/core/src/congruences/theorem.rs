use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::bernoulli_fermat::{bernoulli_pm3_mod_p, BernoulliResidue};
use crate::check::{CongruenceCheck, Identity};
use crate::error::{out_of_range, Result};
use crate::residue_arith::{
    binom_pm1, central_binomial, BinomialTable, OddPrime, PadicRational, Residue, ResidueRing,
};

/// Running powers are used for a-sweeps up to this bound, per-term exponentiation above.
const RUNNING_POWER_LIMIT: u64 = 64;

/// `a(a-1)(3a-4)/48`, the coefficient of `p^3 B_{p-3}` in the mod `p^4` congruence.
pub fn correction_coefficient(a: u64) -> PadicRational {
    let a = BigInt::from(a);
    let num = &a * (&a - 1) * (BigInt::from(3) * &a - 4);
    PadicRational::new(num, 48)
}

/// The coefficients as stated for `a = 3, 4, 5`.
pub fn corollary_coefficient(a: u64) -> Option<PadicRational> {
    match a {
        3 => Some(PadicRational::new(5, 8)),
        4 => Some(PadicRational::from_integer(2)),
        5 => Some(PadicRational::new(55, 12)),
        _ => None,
    }
}

/// Per-prime state shared by every check on that prime.
///
/// The `binom(p-1, k) mod p^4` table and `B_{p-3}` are built lazily, once, and
/// may be read from several threads.
#[derive(Debug)]
pub struct PrimeContext {
    prime: OddPrime,
    r4: ResidueRing,
    table: OnceLock<BinomialTable>,
    central: OnceLock<Residue>,
    bernoulli: OnceLock<Option<BernoulliResidue>>,
}

impl PrimeContext {
    pub fn new(prime: OddPrime) -> Self {
        Self {
            prime,
            r4: ResidueRing::new(prime, 4).expect("exponent 4 is valid"),
            table: OnceLock::new(),
            central: OnceLock::new(),
            bernoulli: OnceLock::new(),
        }
    }

    pub fn prime(&self) -> OddPrime {
        self.prime
    }

    pub fn ring(&self) -> ResidueRing {
        self.r4
    }

    pub fn table(&self) -> &BinomialTable {
        self.table.get_or_init(|| binom_pm1(&self.r4))
    }

    /// `binom(p-1, (p-1)/2) mod p^4`, from the table when it already exists.
    pub fn central(&self) -> Residue {
        *self.central.get_or_init(|| match self.table.get() {
            Some(t) => t.central(),
            None => central_binomial(&self.r4),
        })
    }

    /// `B_{p-3} mod p`; `None` for `p = 3`, where `B_0 = 1` is used exactly.
    pub fn bernoulli(&self) -> Option<BernoulliResidue> {
        *self
            .bernoulli
            .get_or_init(|| bernoulli_pm3_mod_p(self.prime).ok())
    }

    /// `coefficient * p^3 * B_{p-3}` in `Z/p^4`.
    ///
    /// For `p >= 5` the coefficient's denominator is a unit and `B_{p-3}` is
    /// needed only mod `p`. For `p = 3` the product is formed exactly so that a
    /// factor 3 in the denominator cancels against `27` before reduction.
    pub fn correction(&self, coefficient: &PadicRational) -> Residue {
        match self.bernoulli() {
            Some(b) => {
                let p3 = (self.prime.get() as u128).pow(3);
                let c = coefficient
                    .reduce(&self.r4)
                    .expect("coefficient denominator is coprime to p >= 5");
                c * self.r4.elem(b.value.value()).scale(p3)
            }
            None => {
                let exact = coefficient * &PadicRational::from_integer(27);
                exact
                    .reduce(&self.r4)
                    .expect("the correction term is 3-integral")
            }
        }
    }

    fn two_to_p_minus_1(&self) -> Residue {
        self.r4.elem(2).pow(self.prime.get() - 1)
    }

    /// `sum_{k=0}^{p-1} (-1)^{(a-1)k} binom(p-1,k)^a mod p^4`.
    pub fn lhs_power_sum(&self, a: u64) -> Residue {
        let ring = self.r4;
        let alternate = a % 2 == 0;
        let sum = self
            .table()
            .raw()
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &t)| {
                let term = ring.pow_raw(t, a);
                if alternate && k % 2 == 1 {
                    ring.sub_raw(acc, term)
                } else {
                    ring.add_raw(acc, term)
                }
            });
        ring.wrap(sum)
    }

    /// `lhs_power_sum(a)` for every `a = 1..=a_max`, in O(p a_max).
    pub fn lhs_power_sums(&self, a_max: u64) -> Vec<Residue> {
        let ring = self.r4;
        let table = self.table().raw();
        let mut powers = table.to_vec();
        let mut out = Vec::with_capacity(a_max as usize);
        for a in 1..=a_max {
            if a > 1 {
                for (pw, &t) in powers.iter_mut().zip(table) {
                    *pw = ring.mul_raw(*pw, t);
                }
            }
            let alternate = a % 2 == 0;
            let sum = powers.iter().enumerate().fold(0, |acc, (k, &t)| {
                if alternate && k % 2 == 1 {
                    ring.sub_raw(acc, t)
                } else {
                    ring.add_raw(acc, t)
                }
            });
            out.push(ring.wrap(sum));
        }
        out
    }

    /// `2^{a(p-1)} + a(a-1)(3a-4)/48 p^3 B_{p-3} mod p^4`.
    pub fn rhs_theorem(&self, a: u64) -> Residue {
        self.two_to_p_minus_1().pow(a) + self.correction(&correction_coefficient(a))
    }

    pub fn verify_theorem_1_1(&self, a: u64) -> Result<CongruenceCheck> {
        require_positive(a)?;
        Ok(CongruenceCheck::residues(
            Identity::Theorem11,
            vec![a],
            self.lhs_power_sum(a),
            self.rhs_theorem(a),
        ))
    }

    /// One check per `a`, sharing the table and the running powers.
    pub fn theorem_checks(&self, a_values: &[u64]) -> Result<Vec<CongruenceCheck>> {
        for &a in a_values {
            require_positive(a)?;
        }
        let a_max = a_values.iter().copied().max().unwrap_or(0);
        let lhs: Vec<Residue> = if a_max <= RUNNING_POWER_LIMIT {
            let all = self.lhs_power_sums(a_max);
            a_values.iter().map(|&a| all[a as usize - 1]).collect()
        } else {
            a_values.iter().map(|&a| self.lhs_power_sum(a)).collect()
        };
        Ok(a_values
            .iter()
            .zip(lhs)
            .map(|(&a, lhs)| {
                CongruenceCheck::residues(Identity::Theorem11, vec![a], lhs, self.rhs_theorem(a))
            })
            .collect())
    }

    /// The `a = 3, 4, 5` instances with their stated coefficients.
    pub fn verify_corollary(&self, a: u64) -> Result<CongruenceCheck> {
        let identity = match a {
            3 => Identity::CorollaryA3,
            4 => Identity::CorollaryA4,
            5 => Identity::CorollaryA5,
            _ => return Err(out_of_range("a", a, "3, 4 or 5")),
        };
        let stated = corollary_coefficient(a).expect("a is 3, 4 or 5");
        debug_assert_eq!(stated, correction_coefficient(a));
        let rhs = self.two_to_p_minus_1().pow(a) + self.correction(&stated);
        Ok(CongruenceCheck::residues(
            identity,
            vec![a],
            self.lhs_power_sum(a),
            rhs,
        ))
    }

    /// Mod `p^3` shadow of the theorem, `p >= 5`.
    pub fn verify_cai_granville(&self, a: u64) -> Result<CongruenceCheck> {
        self.prime.require_at_least(5)?;
        require_positive(a)?;
        let r3 = self.r4.with_exponent(3)?;
        let lhs = self.lhs_power_sum(a).reduce_to(&r3)?;
        let rhs = r3.elem(2).pow(self.prime.get() - 1).pow(a);
        Ok(CongruenceCheck::residues(
            Identity::CaiGranville,
            vec![a],
            lhs,
            rhs,
        ))
    }

    fn signed_central(&self) -> Residue {
        let c = self.central();
        if self.prime.half() % 2 == 1 {
            -c
        } else {
            c
        }
    }

    /// `(-1)^{(p-1)/2} binom(p-1, (p-1)/2) = 4^{p-1} (mod p^3)`, `p >= 5`.
    pub fn verify_morley(&self) -> Result<CongruenceCheck> {
        self.prime.require_at_least(5)?;
        let r3 = self.r4.with_exponent(3)?;
        let lhs = self.signed_central().reduce_to(&r3)?;
        let rhs = r3.elem(4).pow(self.prime.get() - 1);
        Ok(CongruenceCheck::residues(
            Identity::Morley,
            vec![],
            lhs,
            rhs,
        ))
    }

    /// The mod `p^4` refinement with correction `p^3 B_{p-3} / 12`.
    pub fn verify_carlitz(&self) -> CongruenceCheck {
        let rhs =
            self.r4.elem(4).pow(self.prime.get() - 1) + self.correction(&PadicRational::new(1, 12));
        CongruenceCheck::residues(Identity::Carlitz, vec![], self.signed_central(), rhs)
    }
}

fn require_positive(a: u64) -> Result<()> {
    if a == 0 {
        Err(out_of_range("a", a, "a >= 1"))
    } else {
        Ok(())
    }
}

pub fn lhs_power_sum(p: OddPrime, a: u64) -> Residue {
    PrimeContext::new(p).lhs_power_sum(a)
}

pub fn rhs_theorem(p: OddPrime, a: u64) -> Residue {
    PrimeContext::new(p).rhs_theorem(a)
}

pub fn verify_theorem_1_1(p: OddPrime, a: u64) -> Result<CongruenceCheck> {
    PrimeContext::new(p).verify_theorem_1_1(a)
}

pub fn verify_corollary(p: OddPrime, a: u64) -> Result<CongruenceCheck> {
    PrimeContext::new(p).verify_corollary(a)
}

pub fn verify_cai_granville(p: OddPrime, a: u64) -> Result<CongruenceCheck> {
    PrimeContext::new(p).verify_cai_granville(a)
}

pub fn verify_morley(p: OddPrime) -> Result<CongruenceCheck> {
    PrimeContext::new(p).verify_morley()
}

pub fn verify_carlitz(p: OddPrime) -> CongruenceCheck {
    PrimeContext::new(p).verify_carlitz()
}
