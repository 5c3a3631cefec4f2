use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::residue_arith::Residue;

/// Which identity a [`CongruenceCheck`] instantiates. Declaration order is report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    Morley,
    Carlitz,
    CaiGranville,
    Theorem11,
    CorollaryA3,
    CorollaryA4,
    CorollaryA5,
    ChamberlandDilcher,
    Lemma21I,
    Lemma21Ii,
    Lemma22A,
    Lemma22B,
    Eq27,
    Eq28,
    Eq29,
    Eq210,
    Exact13,
    Exact14,
    P3Special,
}

impl Identity {
    pub const ALL: [Identity; 19] = [
        Identity::Morley,
        Identity::Carlitz,
        Identity::CaiGranville,
        Identity::Theorem11,
        Identity::CorollaryA3,
        Identity::CorollaryA4,
        Identity::CorollaryA5,
        Identity::ChamberlandDilcher,
        Identity::Lemma21I,
        Identity::Lemma21Ii,
        Identity::Lemma22A,
        Identity::Lemma22B,
        Identity::Eq27,
        Identity::Eq28,
        Identity::Eq29,
        Identity::Eq210,
        Identity::Exact13,
        Identity::Exact14,
        Identity::P3Special,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Identity::Morley => "morley",
            Identity::Carlitz => "carlitz",
            Identity::CaiGranville => "cai_granville",
            Identity::Theorem11 => "theorem_1_1",
            Identity::CorollaryA3 => "corollary_a3",
            Identity::CorollaryA4 => "corollary_a4",
            Identity::CorollaryA5 => "corollary_a5",
            Identity::ChamberlandDilcher => "chamberland_dilcher",
            Identity::Lemma21I => "lemma_2_1_i",
            Identity::Lemma21Ii => "lemma_2_1_ii",
            Identity::Lemma22A => "lemma_2_2_a",
            Identity::Lemma22B => "lemma_2_2_b",
            Identity::Eq27 => "eq_2_7",
            Identity::Eq28 => "eq_2_8",
            Identity::Eq29 => "eq_2_9",
            Identity::Eq210 => "eq_2_10",
            Identity::Exact13 => "exact_1_3",
            Identity::Exact14 => "exact_1_4",
            Identity::P3Special => "p3_special",
        }
    }

    /// Identities indexed by `n` rather than by a prime.
    pub fn is_exact(self) -> bool {
        matches!(self, Identity::Exact13 | Identity::Exact14)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownIdentity(pub String);

impl fmt::Display for UnknownIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown identity tag `{}`", self.0)
    }
}

impl std::error::Error for UnknownIdentity {}

impl FromStr for Identity {
    type Err = UnknownIdentity;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Identity::ALL
            .into_iter()
            .find(|id| id.tag() == s)
            .ok_or_else(|| UnknownIdentity(s.to_owned()))
    }
}

/// One evaluated instance of an identity. Both sides are kept for auditing.
///
/// `modulus == 0` means the comparison is in exact integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceCheck {
    pub identity: Identity,
    pub p: u64,
    pub params: Vec<u64>,
    pub modulus: u128,
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub verdict: bool,
}

impl CongruenceCheck {
    /// Panics if the two residues live in different rings.
    pub fn residues(identity: Identity, params: Vec<u64>, lhs: Residue, rhs: Residue) -> Self {
        assert_eq!(
            lhs.ring(),
            rhs.ring(),
            "{identity}: sides in different rings"
        );
        Self {
            identity,
            p: lhs.ring().prime().get(),
            params,
            modulus: lhs.ring().modulus(),
            lhs: BigInt::from(lhs.value()),
            rhs: BigInt::from(rhs.value()),
            verdict: lhs == rhs,
        }
    }

    pub fn exact(identity: Identity, n: u64, params: Vec<u64>, lhs: BigInt, rhs: BigInt) -> Self {
        let verdict = lhs == rhs;
        Self {
            identity,
            p: n,
            params,
            modulus: 0,
            lhs,
            rhs,
            verdict,
        }
    }

    /// Report order: `(p, identity, params)`.
    pub fn sort_key(&self) -> (u64, Identity, &[u64]) {
        (self.p, self.identity, &self.params)
    }
}

impl fmt::Display for CongruenceCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = if self.modulus == 0 {
            "exact".to_owned()
        } else {
            format!("mod {}", self.modulus)
        };
        write!(
            f,
            "{} p={} params={:?} {}: lhs={} rhs={} {}",
            self.identity,
            self.p,
            self.params,
            ring,
            self.lhs,
            self.rhs,
            if self.verdict { "match" } else { "MISMATCH" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.tag().parse::<Identity>().unwrap(), id);
        }
        assert!("lemma_9".parse::<Identity>().is_err());
    }

    #[test]
    fn all_is_in_declaration_order() {
        let mut sorted = Identity::ALL;
        sorted.sort();
        assert_eq!(sorted, Identity::ALL);
    }
}
