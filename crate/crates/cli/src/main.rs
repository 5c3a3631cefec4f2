//! `carlitz`: scan primes and check the binomial power-sum congruences.

mod config;
mod oracle_cmd;
mod report;
mod scan;
mod sums;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CliError, ScanArgs, ScanConfig};
use report::ReportWriter;

#[derive(Parser)]
#[command(
    name = "carlitz",
    version,
    about = "Verify binomial power-sum congruences over ranges of primes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the selected identities and write one record per check.
    Verify(ScanArgs),
    /// Print the harmonic and even-restricted sums for one prime.
    Sums { p: u64 },
    /// Compare the fast computations against naive recomputation.
    Oracle(ScanArgs),
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

fn verify(args: &ScanArgs) -> Result<bool, CliError> {
    let config = ScanConfig::from_args(args)?;
    let sink: Box<dyn Write> = match &config.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut writer = ReportWriter::new(config.format, BufWriter::new(sink))?;
    let summary = scan::scan(&config, &mut writer)?;
    writer.finish()?;
    eprintln!(
        "{} records, {} mismatches",
        summary.records, summary.mismatches
    );
    Ok(summary.mismatches == 0)
}

fn oracle(args: &ScanArgs) -> Result<bool, CliError> {
    let config = ScanConfig::from_args(args)?;
    let mut out = io::stdout().lock();
    let summary = oracle_cmd::run_oracle(&config, &mut out)?;
    if let Some((p, quantity)) = summary.disagreement {
        eprintln!("oracle disagreement at p = {p}: {quantity}");
        return Ok(false);
    }
    writeln!(
        out,
        "{} comparisons over {} primes agree",
        summary.comparisons, summary.primes
    )?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Sums { p } => sums::print_sums(*p, &mut io::stdout().lock()).map(|()| true),
        Command::Oracle(args) => oracle(args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_MISMATCH),
        Err(e) => {
            eprintln!("carlitz: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Io(_) => EXIT_IO,
            })
        }
    }
}
