//! The `census` subcommand: checkpointed counting runs with exact weighted
//! sums, written as CSV rows plus a JSON summary. A census never "fails" —
//! it measures; nonzero exits here mean unusable arguments or I/O trouble.

use crate::util::{output_file, usage_error, write_csv, write_json};
use crate::CensusArgs;
use anyhow::{Context, Result};
use serde::Serialize;
use sftlab::arith::sieve_primes;
use sftlab::census::{self, CensusRow, DensityReport};
use sftlab::exec;

#[derive(Serialize)]
struct CensusSummary<'a> {
    schema_version: &'static str,
    mode: &'static str,
    x_max: u64,
    u_list: &'a [i64],
    checkpoints: &'a [u64],
    constants_truncation: u64,
    report: &'a DensityReport,
}

pub fn run(args: &CensusArgs) -> Result<u8> {
    for &u in &args.u {
        if let Err(e) = census::check_fixed_u(u) {
            return Ok(usage_error(e.to_string()));
        }
    }
    let checkpoints = match &args.checkpoints {
        Some(cps) => {
            let mut cps = cps.clone();
            cps.sort_unstable();
            cps.dedup();
            if cps.first().is_some_and(|&c| c < 2) {
                return Ok(usage_error("checkpoints must be >= 2".into()));
            }
            if cps.last().is_some_and(|&c| c > args.x_max) {
                return Ok(usage_error(format!(
                    "checkpoint beyond --x-max {}",
                    args.x_max
                )));
            }
            if cps.is_empty() {
                return Ok(usage_error("empty checkpoint list".into()));
            }
            cps
        }
        None => census::default_checkpoints(args.x_max),
    };
    let constants_p = match args.constants_p {
        0 => *checkpoints.last().unwrap(),
        p if p < 2 => return Ok(usage_error("--constants-p must be >= 2".into())),
        p => p,
    };

    exec::set_threads(args.threads);
    let limit = args.x_max.max(constants_p).max(2);
    let table = sieve_primes(limit).context("sieving the prime table")?;
    let report = census::density_report(&checkpoints, &args.u, constants_p, &table)
        .context("running the census")?;

    let csv_path = output_file(&args.output_dir, "census.csv")?;
    write_csv(&csv_path, &csv_lines(&report.rows, &args.u))?;
    let json_path = output_file(&args.output_dir, "census_summary.json")?;
    write_json(
        &json_path,
        &CensusSummary {
            schema_version: "1",
            mode: exec::MODE,
            x_max: args.x_max,
            u_list: &args.u,
            checkpoints: &checkpoints,
            constants_truncation: constants_p,
            report: &report,
        },
    )?;

    for row in &report.rows {
        println!(
            "x = {:>10}: pi = {}, pi_sf = {} (ratio {:.6}), weighted/li = {:.6}",
            row.x, row.pi, row.pi_sf, row.ratio_sf, row.weighted_over_li
        );
    }
    let c = &report.candidates;
    println!(
        "candidates at P = {}: a0 = {:.9}, a1 = {:.9}, a0^2 = {:.9}, a1^2 = {:.9}",
        c.truncation_limit, c.a0, c.a1, c.a0_squared, c.a1_squared
    );
    println!("wrote {} and {}", csv_path.display(), json_path.display());
    Ok(0)
}

fn csv_lines(rows: &[CensusRow], u_list: &[i64]) -> Vec<String> {
    let mut header = String::from("x,pi,pi_sf");
    for u in u_list {
        header.push_str(&format!(",pi_sf_u_{u}"));
    }
    header.push_str(",weighted_sum_num,weighted_sum_den,li_x,ratio_sf");
    for u in u_list {
        header.push_str(&format!(",ratio_sf_u_{u}"));
    }
    header.push_str(",weighted_over_li");

    let mut lines = vec![header];
    for row in rows {
        let mut line = format!("{},{},{}", row.x, row.pi, row.pi_sf);
        for u in u_list {
            line.push_str(&format!(",{}", row.pi_sf_u[u]));
        }
        line.push_str(&format!(
            ",{},{},{},{}",
            row.weighted_sum.numerator, row.weighted_sum.denominator, row.li_x, row.ratio_sf
        ));
        for u in u_list {
            line.push_str(&format!(",{}", row.ratio_sf_u[u]));
        }
        line.push_str(&format!(",{}", row.weighted_over_li));
        lines.push(line);
    }
    lines
}
