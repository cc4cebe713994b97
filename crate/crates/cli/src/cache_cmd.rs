//! The `cache` subcommand: build, export, and validate the binary
//! prime-record cache.

use crate::{CacheAction, CacheArgs};
use anyhow::{bail, Context, Result};
use sftlab::arith::{
    export_records_csv, is_primitive_root, read_records, records_up_to, sieve_primes,
    write_records,
};
use std::fs::File;
use std::io::BufWriter;

pub fn run(args: &CacheArgs) -> Result<u8> {
    match &args.action {
        CacheAction::Build { p_max, path } => {
            let table = sieve_primes((*p_max).max(2)).context("sieving the prime table")?;
            let records = records_up_to(*p_max, &table)?;
            write_records(path, &records)?;
            println!("wrote {} records (p <= {p_max}) to {}", records.len(), path.display());
            Ok(0)
        }
        CacheAction::Export { path, output } => {
            let records = read_records(path)?;
            let file = File::create(output)
                .with_context(|| format!("creating {}", output.display()))?;
            export_records_csv(BufWriter::new(file), &records)?;
            println!("exported {} records to {}", records.len(), output.display());
            Ok(0)
        }
        CacheAction::Info { path } => {
            let records = read_records(path)?;
            // The reader validates structure; re-prove the stored generators.
            for r in &records {
                if !is_primitive_root(r.tau, r.p, &r.pm1)? {
                    bail!("cache {}: tau = {} is not a generator mod {}", path.display(), r.tau, r.p);
                }
            }
            let max_p = records.last().map_or(0, |r| r.p);
            println!(
                "{}: {} records, p <= {max_p}, all tau values verified as primitive roots",
                path.display(),
                records.len()
            );
            Ok(0)
        }
    }
}
