use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use carlitz_core::congruences::{
    exact_identity_1_3, exact_identity_1_4, is_exceptional, verify_chamberland_dilcher,
    verify_p3_special, PrimeContext,
};
use carlitz_core::harmonic::{
    verify_derived_sums, verify_lemma_2_1, verify_lemma_2_2, HarmonicProfile, DEFAULT_N_CAP,
};
use carlitz_core::residue_arith::odd_primes_in;
use carlitz_core::{CongruenceCheck, Identity, OddPrime};
use rayon::prelude::*;

use crate::config::{usage, CliError, ScanConfig};
use crate::report::{ReportRecord, ReportWriter};

/// Work sharing one sort key: the prime-indexed checks for `p` and the exact
/// identities for `n = p`.
#[derive(Clone, Copy, Debug, Default)]
struct Group {
    prime: Option<OddPrime>,
    exact: bool,
}

/// Groups handed to the pool per round; bounds memory for long scans.
const CHUNK: usize = 256;

pub struct ScanSummary {
    pub records: usize,
    pub mismatches: usize,
}

fn wants(config: &ScanConfig, ids: &[Identity]) -> bool {
    ids.iter().any(|id| config.identities.contains(id))
}

fn core_err(e: carlitz_core::Error) -> CliError {
    usage(e.to_string())
}

/// Runs `f`, stamping every record it returns with its share of the elapsed time.
fn timed(
    out: &mut Vec<ReportRecord>,
    timing: bool,
    f: impl FnOnce() -> Result<Vec<CongruenceCheck>, carlitz_core::Error>,
) -> Result<(), CliError> {
    let start = Instant::now();
    let checks = f().map_err(core_err)?;
    let us = if timing && !checks.is_empty() {
        start.elapsed().as_micros() as u64 / checks.len() as u64
    } else {
        0
    };
    out.extend(checks.iter().map(|c| ReportRecord::new(c, us)));
    Ok(())
}

fn run_prime(
    config: &ScanConfig,
    p: OddPrime,
    out: &mut Vec<ReportRecord>,
) -> Result<(), CliError> {
    use Identity::*;
    let t = config.timing;
    let ids = &config.identities;
    let big = p.get() >= 5;
    let ctx = PrimeContext::new(p);
    if ids.contains(&Theorem11) {
        timed(out, t, || ctx.theorem_checks(&config.a_values))?;
    }
    for (id, a) in [(CorollaryA3, 3), (CorollaryA4, 4), (CorollaryA5, 5)] {
        if ids.contains(&id) {
            timed(out, t, || ctx.verify_corollary(a).map(|c| vec![c]))?;
        }
    }
    if big && ids.contains(&CaiGranville) {
        for &a in &config.a_values {
            timed(out, t, || ctx.verify_cai_granville(a).map(|c| vec![c]))?;
        }
    }
    if big && ids.contains(&Morley) {
        timed(out, t, || ctx.verify_morley().map(|c| vec![c]))?;
    }
    if ids.contains(&Carlitz) {
        timed(out, t, || Ok(vec![ctx.verify_carlitz()]))?;
    }
    if big && ids.contains(&ChamberlandDilcher) {
        for eps in 0..=1u8 {
            for a in 0..=3u32 {
                for b in 0..=3u32 {
                    if !is_exceptional(eps, a, b) {
                        timed(out, t, || {
                            verify_chamberland_dilcher(p, eps, a, b).map(|c| vec![c])
                        })?;
                    }
                }
            }
        }
    }
    if big
        && wants(
            config,
            &[
                Lemma21I, Lemma21Ii, Lemma22A, Lemma22B, Eq27, Eq28, Eq29, Eq210,
            ],
        )
    {
        let start = Instant::now();
        let n_cap = if ids.contains(&Lemma21Ii) {
            DEFAULT_N_CAP
        } else {
            0
        };
        let profile = HarmonicProfile::with_cap(p, n_cap).map_err(core_err)?;
        let setup = start.elapsed();
        let keep = |checks: Vec<CongruenceCheck>| {
            checks
                .into_iter()
                .filter(|c| ids.contains(&c.identity))
                .collect::<Vec<_>>()
        };
        let mut harmonic = Vec::new();
        if wants(config, &[Lemma21I, Lemma21Ii]) {
            timed(&mut harmonic, t, || verify_lemma_2_1(&profile).map(keep))?;
        }
        if wants(config, &[Lemma22A, Lemma22B]) {
            timed(&mut harmonic, t, || Ok(keep(verify_lemma_2_2(&profile))))?;
        }
        if wants(config, &[Eq27, Eq28, Eq29, Eq210]) {
            timed(&mut harmonic, t, || verify_derived_sums(&profile).map(keep))?;
        }
        if t && !harmonic.is_empty() {
            let share = setup.as_micros() as u64 / harmonic.len() as u64;
            harmonic.iter_mut().for_each(|r| r.us += share);
        }
        out.append(&mut harmonic);
    }
    if p.get() == 3 && ids.contains(&P3Special) {
        for &a in &config.a_values {
            timed(out, t, || verify_p3_special(a))?;
        }
    }
    Ok(())
}

fn run_group(config: &ScanConfig, key: u64, group: Group) -> Result<Vec<ReportRecord>, CliError> {
    let mut out = Vec::new();
    if let Some(p) = group.prime {
        run_prime(config, p, &mut out)?;
    }
    if group.exact {
        if config.identities.contains(&Identity::Exact13) {
            timed(&mut out, config.timing, || exact_identity_1_3(key))?;
        }
        if config.identities.contains(&Identity::Exact14) {
            timed(&mut out, config.timing, || {
                exact_identity_1_4(key).map(|c| vec![c])
            })?;
        }
    }
    out.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    Ok(out)
}

fn groups(config: &ScanConfig) -> Result<BTreeMap<u64, Group>, CliError> {
    let mut map: BTreeMap<u64, Group> = BTreeMap::new();
    let any_prime = config.identities.iter().any(|id| !id.is_exact());
    if any_prime {
        for p in odd_primes_in(config.p_min, config.p_max).map_err(core_err)? {
            map.entry(p.get()).or_default().prime = Some(p);
        }
    }
    if wants(config, &[Identity::Exact13, Identity::Exact14]) {
        for n in 1..=config.n_max {
            map.entry(n).or_default().exact = true;
        }
    }
    Ok(map)
}

/// Runs every selected check and streams the sorted records to `writer`.
pub fn scan<W: Write>(
    config: &ScanConfig,
    writer: &mut ReportWriter<W>,
) -> Result<ScanSummary, CliError> {
    if config.identities.contains(&Identity::Exact13) {
        eprintln!(
            "note: exact_1_3 sums the alternating squares over 0..=2n; \
             the printed upper limit n does not give the stated value"
        );
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| usage(format!("cannot start {} workers: {e}", config.jobs)))?;
    let groups: Vec<(u64, Group)> = groups(config)?.into_iter().collect();
    let mut summary = ScanSummary {
        records: 0,
        mismatches: 0,
    };
    for chunk in groups.chunks(CHUNK * config.jobs) {
        let results: Vec<Result<Vec<ReportRecord>, CliError>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&(key, group)| run_group(config, key, group))
                .collect()
        });
        for records in results {
            for record in records? {
                summary.records += 1;
                summary.mismatches += usize::from(!record.matched);
                writer.write(&record)?;
            }
        }
    }
    Ok(summary)
}
