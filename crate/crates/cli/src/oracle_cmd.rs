use std::io::Write;

use carlitz_core::bernoulli_fermat::{bernoulli_table, BERNOULLI_EXACT_CAP};
use carlitz_core::oracle::{cross_check, Comparison, OracleScope};
use carlitz_core::residue_arith::odd_primes_in;
use rayon::prelude::*;

use crate::config::{usage, CliError, ScanConfig};

pub struct OracleSummary {
    pub primes: usize,
    pub comparisons: usize,
    /// first disagreement in prime order
    pub disagreement: Option<(u64, String)>,
}

pub fn scope_of(config: &ScanConfig) -> OracleScope {
    if config.default_identities {
        return OracleScope::all();
    }
    config
        .identities
        .iter()
        .fold(OracleScope::default(), |s, &id| {
            s.union(OracleScope::for_identity(id))
        })
}

/// Recomputes the fast-path quantities naively for every prime in range.
pub fn run_oracle(config: &ScanConfig, out: &mut impl Write) -> Result<OracleSummary, CliError> {
    if config.p_max > config.oracle_cap {
        return Err(usage(format!(
            "--p-max {} exceeds --oracle-cap {}",
            config.p_max, config.oracle_cap
        )));
    }
    let scope = scope_of(config);
    let core = |e: carlitz_core::Error| usage(e.to_string());
    let table = if scope.constants {
        Some(
            bernoulli_table(config.p_max.saturating_sub(3).min(BERNOULLI_EXACT_CAP))
                .map_err(core)?,
        )
    } else {
        None
    };
    let primes = odd_primes_in(config.p_min, config.p_max).map_err(core)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| usage(format!("cannot start {} workers: {e}", config.jobs)))?;
    let results: Vec<Result<Vec<Comparison>, carlitz_core::Error>> = pool.install(|| {
        primes
            .par_iter()
            .map(|&p| cross_check(p, scope, table.as_deref()))
            .collect()
    });
    let mut summary = OracleSummary {
        primes: primes.len(),
        comparisons: 0,
        disagreement: None,
    };
    for (p, result) in primes.iter().zip(results) {
        let comparisons = result.map_err(core)?;
        summary.comparisons += comparisons.len();
        if let Some(c) = comparisons.iter().find(|c| !c.agree) {
            summary.disagreement = Some((p.get(), c.quantity.clone()));
            break;
        }
        writeln!(out, "p = {p}: {} quantities agree", comparisons.len())?;
    }
    Ok(summary)
}
