//! Both sides of each binomial-sum congruence and exact identity.
//!
//! Mismatches come back as `verdict == false`, never as errors; errors are
//! reserved for arguments outside an identity's domain.

mod chamberland;
mod exact;
mod theorem;

pub use chamberland::{chamberland_dilcher_sum, is_exceptional, verify_chamberland_dilcher};
pub use exact::{
    alternating_square_sum, binomial_row, exact_identity_1_3, exact_identity_1_4,
    p3_cancellation_holds, p3_correction_sum, verify_p3_special, EXACT_1_3_CAP, EXACT_1_4_CAP,
};
pub use theorem::{
    corollary_coefficient, correction_coefficient, lhs_power_sum, rhs_theorem,
    verify_cai_granville, verify_carlitz, verify_corollary, verify_morley, verify_theorem_1_1,
    PrimeContext,
};
