//! The `constants` subcommand: both truncated Euler products at the
//! configured limit, printed and written as JSON.

use crate::util::{output_file, usage_error, write_json};
use crate::ConstantsArgs;
use anyhow::{Context, Result};
use serde::Serialize;
use sftlab::arith::sieve_primes;
use sftlab::constants::{euler_product, EulerKind, EulerProductValue};
use sftlab::exec;

#[derive(Serialize)]
struct ConstantsReport {
    schema_version: &'static str,
    mode: &'static str,
    truncation_limit: u64,
    a0: EulerProductValue,
    a1: EulerProductValue,
}

pub fn run(args: &ConstantsArgs) -> Result<u8> {
    if args.p < 2 {
        return Ok(usage_error("--P must be >= 2".into()));
    }
    exec::set_threads(args.threads);
    let table = sieve_primes(args.p).context("sieving the prime table")?;
    let a0 = euler_product(EulerKind::A0ArtinType, args.p, &table)?;
    let a1 = euler_product(EulerKind::A1SquarefreeType, args.p, &table)?;

    let path = output_file(&args.output_dir, "constants.json")?;
    write_json(
        &path,
        &ConstantsReport {
            schema_version: "1",
            mode: exec::MODE,
            truncation_limit: args.p,
            a0,
            a1,
        },
    )?;

    for v in [&a0, &a1] {
        println!(
            "{} (P = {}): {:.12} +- {:.3e} ({} digits trusted)",
            v.kind.as_str(),
            v.truncation_limit,
            v.value,
            v.tail_bound,
            v.digits_trusted
        );
    }
    println!("wrote {}", path.display());
    Ok(0)
}
