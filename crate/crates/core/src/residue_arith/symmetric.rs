use super::ring::{Residue, ResidueRing};
use crate::error::{out_of_range, Result};

/// Elementary symmetric functions of `{1/k : 1 <= k <= r}` up to degree three.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricSums {
    pub sigma1: Residue,
    pub sigma2: Residue,
    pub sigma3: Residue,
}

impl SymmetricSums {
    fn empty(ring: &ResidueRing) -> Self {
        Self {
            sigma1: ring.zero(),
            sigma2: ring.zero(),
            sigma3: ring.zero(),
        }
    }

    /// Adjoins `x` to the underlying set.
    #[inline]
    fn extend(&mut self, x: Residue) {
        self.sigma3 = self.sigma3 + self.sigma2 * x;
        self.sigma2 = self.sigma2 + self.sigma1 * x;
        self.sigma1 = self.sigma1 + x;
    }
}

/// `(sigma1, sigma2, sigma3)` for the reciprocals of `1..=r`, `0 <= r <= p-1`.
pub fn symmetric_inverse_sums(ring: &ResidueRing, r: u64) -> Result<SymmetricSums> {
    let p = ring.prime().get();
    if r >= p {
        return Err(out_of_range("r", r, format!("0..={}", p - 1)));
    }
    Ok(*symmetric_sweep(ring, r)
        .last()
        .expect("sweep includes r = 0"))
}

/// All prefixes `r = 0..=r_max` in one O(r_max) pass.
pub fn symmetric_sweep(ring: &ResidueRing, r_max: u64) -> Vec<SymmetricSums> {
    let invs = ring.inverses_upto(r_max).expect("1..p-1 are units");
    let mut acc = SymmetricSums::empty(ring);
    let mut out = Vec::with_capacity(r_max as usize + 1);
    out.push(acc);
    for x in invs {
        acc.extend(x);
        out.push(acc);
    }
    out
}
