use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

use carlitz_core::congruences::{EXACT_1_3_CAP, EXACT_1_4_CAP};
use carlitz_core::residue_arith::PRIME_LIMIT;
use carlitz_core::Identity;
use clap::{Args, ValueEnum};

/// Naive triple sums are O(p^3); the oracle refuses anything above this.
pub const MAX_ORACLE_CAP: u64 = 1000;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

/// Flags shared by `verify` and `oracle`.
#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 3)]
    pub p_min: u64,
    #[arg(long, default_value_t = 100)]
    pub p_max: u64,
    /// Values of `a`: a comma list, ranges `lo..hi` (inclusive), or both, e.g. `1,3..5`.
    #[arg(long = "a", default_value = "1..8")]
    pub a: String,
    /// Largest `n` for the exact identities.
    #[arg(long, default_value_t = 50)]
    pub n_max: u64,
    /// Identity tag or group (`lemma_2_1`, `lemma_2_2`, `corollary`, `all`); repeatable.
    #[arg(long = "identity")]
    pub identities: Vec<String>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    pub oracle_cap: u64,
    /// Report `us` as 0 so runs can be diffed.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanConfig {
    pub p_min: u64,
    pub p_max: u64,
    pub a_values: Vec<u64>,
    pub n_max: u64,
    pub identities: BTreeSet<Identity>,
    /// true when `--identity` was not given
    pub default_identities: bool,
    pub jobs: usize,
    pub oracle_cap: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub timing: bool,
}

const DEFAULT_IDENTITIES: [Identity; 9] = [
    Identity::Theorem11,
    Identity::Carlitz,
    Identity::Morley,
    Identity::Lemma21I,
    Identity::Lemma21Ii,
    Identity::Lemma22A,
    Identity::Lemma22B,
    Identity::Eq29,
    Identity::Eq210,
];

fn expand_tag(tag: &str) -> Result<Vec<Identity>, CliError> {
    use Identity::*;
    Ok(match tag {
        "all" => Identity::ALL.to_vec(),
        "lemma_2_1" => vec![Lemma21I, Lemma21Ii],
        "lemma_2_2" => vec![Lemma22A, Lemma22B],
        "corollary" => vec![CorollaryA3, CorollaryA4, CorollaryA5],
        other => vec![other
            .parse::<Identity>()
            .map_err(|e| usage(e.to_string()))?],
    })
}

pub fn parse_a_values(list: &str) -> Result<Vec<u64>, CliError> {
    let mut out = BTreeSet::new();
    for part in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || usage(format!("bad --a entry `{part}`"));
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            out.extend(lo..=hi);
        } else {
            out.insert(part.parse::<u64>().map_err(|_| bad())?);
        }
    }
    if out.is_empty() || out.contains(&0) {
        return Err(usage("--a needs positive integers"));
    }
    Ok(out.into_iter().collect())
}

impl ScanConfig {
    pub fn from_args(args: &ScanArgs) -> Result<Self, CliError> {
        if args.p_min < 3 {
            return Err(usage("--p-min must be at least 3"));
        }
        if args.p_min > args.p_max {
            return Err(usage(format!(
                "empty prime range [{}, {}]",
                args.p_min, args.p_max
            )));
        }
        if args.p_max >= PRIME_LIMIT {
            return Err(usage("--p-max must be below 2^31"));
        }
        let jobs = args
            .jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        if args.oracle_cap > MAX_ORACLE_CAP {
            return Err(usage(format!(
                "--oracle-cap must be at most {MAX_ORACLE_CAP}"
            )));
        }
        let default_identities = args.identities.is_empty();
        let identities: BTreeSet<Identity> = if default_identities {
            DEFAULT_IDENTITIES.into_iter().collect()
        } else {
            let mut set = BTreeSet::new();
            for tag in &args.identities {
                set.extend(expand_tag(tag)?);
            }
            set
        };
        let n_cap = if identities.contains(&Identity::Exact14) {
            EXACT_1_4_CAP
        } else {
            EXACT_1_3_CAP
        };
        if identities.iter().any(|id| id.is_exact()) && args.n_max > n_cap {
            return Err(usage(format!("--n-max must be at most {n_cap}")));
        }
        Ok(Self {
            p_min: args.p_min,
            p_max: args.p_max,
            a_values: parse_a_values(&args.a)?,
            n_max: args.n_max,
            identities,
            default_identities,
            jobs,
            oracle_cap: args.oracle_cap,
            format: args.format,
            out: args.out.clone(),
            timing: !args.no_timing,
        })
    }
}
