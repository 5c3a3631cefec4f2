//! Arithmetic in `Z/p^e` for `e <= 4`, exact rationals, and the binomial and
//! symmetric-sum tables built on top of them.

mod binomial;
mod prime;
mod rational;
mod ring;
mod symmetric;
mod wide;

pub use binomial::{binom_pm1, central_binomial, valued_binomial_row, BinomialTable, Valued};
pub use prime::{is_prime, odd_primes_in, OddPrime, PRIME_LIMIT};
pub use rational::{reduce_rational, PadicRational};
pub use ring::{Residue, ResidueRing};
pub use symmetric::{symmetric_inverse_sums, symmetric_sweep, SymmetricSums};
