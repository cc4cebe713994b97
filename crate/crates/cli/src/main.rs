//! Command-line driver: censuses, verification suites, constant reports,
//! and the prime-record cache.
//!
//! Exit-code policy: 0 on success, where for `verify` success means every
//! sharp (provable) invariant held — violations of claimed growth bounds are
//! warnings, recorded in the report, never failures; 1 for runtime errors or
//! sharp-invariant failures; 2 for unusable arguments.

mod cache_cmd;
mod census_cmd;
mod constants_cmd;
mod util;
mod verify_cmd;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sftlab", version, about = "Verification laboratory for primitive-root \
densities over primes with squarefree totient", propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count primes, squarefree totients, and primitive-root memberships at
    /// checkpoints; emit CSV rows and a JSON summary.
    Census(CensusArgs),
    /// Run the verification suites and write a pass/fail report.
    Verify(VerifyArgs),
    /// Compute both truncated Euler products with tail bounds.
    Constants(ConstantsArgs),
    /// Build, export, or inspect the on-disk prime-record cache.
    Cache(CacheArgs),
}

#[derive(clap::Args)]
struct CensusArgs {
    /// Largest checkpoint (and default sieve limit).
    #[arg(long, default_value_t = 1_000_000)]
    x_max: u64,
    /// Bases u to census, comma-separated; each must avoid +-1, 0, and
    /// perfect squares.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,6,7")]
    u: Vec<i64>,
    /// Explicit checkpoint list (ascending, <= x-max); default is powers of
    /// 10 from 1000 up to x-max.
    #[arg(long, value_delimiter = ',')]
    checkpoints: Option<Vec<u64>>,
    /// Euler-product truncation for the candidate constants; 0 means "use
    /// the largest checkpoint".
    #[arg(long, default_value_t = 0)]
    constants_p: u64,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
    /// Worker threads; 0 keeps the library default.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Largest prime for the suites (per-family ceilings apply on top; see
    /// the README).
    #[arg(long, default_value_t = 2000)]
    p_max: u64,
    /// Which suite family to run.
    #[arg(long, value_enum, default_value_t = verify_cmd::FamilyArg::All)]
    family: verify_cmd::FamilyArg,
    /// Interval start for the decomposition family (window [x, 2x]).
    #[arg(long, default_value_t = 1000)]
    x: u64,
    /// Bases u for the decomposition family.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,6,7")]
    u: Vec<i64>,
    /// Seed for every randomized sample in the run.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Agreement tolerance for the complex characteristic-function routes.
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    /// Exponent slack for growth bounds p^(1/2+delta); must lie in (0, 0.5).
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    /// Euler-product truncation for the constants family (doubling check
    /// runs at 2x this).
    #[arg(long, default_value_t = 100_000)]
    constants_p: u64,
    /// Load prime records from this cache file instead of recomputing them.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Also write per-evaluation characteristic-function rows
    /// (charfn_rows.csv, primes capped at 200).
    #[arg(long, default_value_t = false)]
    emit_rows: bool,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
    /// Worker threads; 0 keeps the library default.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(clap::Args)]
struct ConstantsArgs {
    /// Truncation limit for both Euler products.
    #[arg(long = "P", default_value_t = 1_000_000)]
    p: u64,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
    /// Worker threads; 0 keeps the library default.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(clap::Args)]
struct CacheArgs {
    #[command(subcommand)]
    action: CacheAction,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Sieve and factor up to --p-max and write the binary record cache.
    Build {
        #[arg(long, default_value_t = 10_000)]
        p_max: u64,
        #[arg(long)]
        path: PathBuf,
    },
    /// Export a cache file as CSV.
    Export {
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Validate a cache file (structure and primitive-root property) and
    /// print its shape.
    Info {
        #[arg(long)]
        path: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Census(args) => census_cmd::run(&args),
        Command::Verify(args) => verify_cmd::run(&args),
        Command::Constants(args) => constants_cmd::run(&args),
        Command::Cache(args) => cache_cmd::run(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
