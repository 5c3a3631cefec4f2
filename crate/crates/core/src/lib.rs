//! Exact verification of binomial-sum congruences modulo prime powers.
//!
//! The central statement is, for an odd prime `p` and `a >= 1`,
//!
//! ```text
//! sum_{k=0}^{p-1} (-1)^{(a-1)k} binom(p-1,k)^a = 2^{a(p-1)} + a(a-1)(3a-4)/48 p^3 B_{p-3}  (mod p^4)
//! ```
//!
//! together with the classical congruences it specialises to (Morley, Carlitz,
//! Cai-Granville) and the harmonic-sum congruences used to derive it. All
//! arithmetic is exact: residues in `Z/p^e` for `e <= 4`, big-integer
//! rationals for coefficients.

pub mod bernoulli_fermat;
pub mod check;
pub mod congruences;
mod error;
pub mod harmonic;
pub mod oracle;
pub mod residue_arith;

pub use check::{CongruenceCheck, Identity, UnknownIdentity};
pub use error::{Error, Result};
pub use residue_arith::{OddPrime, PadicRational, Residue, ResidueRing};
