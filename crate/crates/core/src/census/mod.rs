//! Prime censuses over intervals: the counting functions pi(x), pi_sf(x),
//! pi_sf(x,q,a), pi_sf(x,u), the weighted totient sum, the logarithmic
//! integral, the exact main-term/error-term decomposition over [x, 2x], and
//! empirical density reports.
//!
//! Every census is a parallel map over disjoint chunks of the ascending prime
//! list with an ordered reduce; all accumulators are associative (integer
//! counts and exact rationals), so parallel and sequential runs agree exactly.

pub mod exact;

use crate::arith::{factorize, is_primitive_root, PrimeTable};
use crate::error::{Error, Result};
use crate::exec;
use exact::{ratio_to_f64, sum_terms, ExactSum};
use num::integer::gcd;
use num::rational::BigRational;
use num::{BigInt, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::str::FromStr;

/// Primes per work chunk; counts are associative so the value only affects
/// scheduling granularity, never results.
const CENSUS_CHUNK: usize = 1024;

fn check_limit(x: u64, table: &PrimeTable) -> Result<()> {
    if x > table.limit() {
        return Err(Error::OutOfTable { n: x, limit: table.limit() });
    }
    Ok(())
}

fn pm1_of(p: u64, table: &PrimeTable) -> crate::arith::FactoredInteger {
    factorize(p - 1, table).expect("p - 1 is within the sieved range")
}

/// Exact count of primes <= x.
pub fn pi_count(x: u64, table: &PrimeTable) -> Result<u64> {
    check_limit(x, table)?;
    Ok(table.primes_in(2, x).len() as u64)
}

/// Exact count of primes p <= x with p - 1 squarefree.
pub fn pi_sf(x: u64, table: &PrimeTable) -> Result<u64> {
    check_limit(x, table)?;
    let primes = table.primes_in(2, x);
    let partials = exec::chunk_map(primes, CENSUS_CHUNK, |chunk| {
        chunk.iter().filter(|&&p| pm1_of(p, table).is_squarefree()).count() as u64
    });
    Ok(partials.into_iter().sum())
}

/// Exact count of primes p <= x, p = a (mod q), with p - 1 squarefree.
/// q = 1 makes the congruence vacuous and the count equals [`pi_sf`].
pub fn pi_sf_progression(x: u64, q: u64, a: u64, table: &PrimeTable) -> Result<u64> {
    if q == 0 {
        return Err(Error::InvalidArgument("progression modulus q = 0".into()));
    }
    if gcd(a, q) != 1 {
        return Err(Error::InvalidArgument(format!(
            "residue a = {a} shares a factor with q = {q}; the progression holds finitely many primes"
        )));
    }
    check_limit(x, table)?;
    let r = a % q;
    let primes = table.primes_in(2, x);
    let partials = exec::chunk_map(primes, CENSUS_CHUNK, |chunk| {
        chunk
            .iter()
            .filter(|&&p| p % q == r && pm1_of(p, table).is_squarefree())
            .count() as u64
    });
    Ok(partials.into_iter().sum())
}

fn is_perfect_square(v: u64) -> bool {
    let r = (v as f64).sqrt() as u64;
    for c in r.saturating_sub(1)..=r + 1 {
        if c * c == v {
            return true;
        }
    }
    false
}

/// Screen a census base: u must avoid the excluded set {-1, 0, 1} and the
/// perfect squares (u != +-1, v^2), for which no prime has u of full order.
pub fn check_fixed_u(u: i64) -> Result<()> {
    if (-1..=1).contains(&u) {
        return Err(Error::Domain(format!(
            "u = {u} is excluded: the census requires u != +-1, v^2"
        )));
    }
    if u > 1 && is_perfect_square(u as u64) {
        return Err(Error::Domain(format!(
            "u = {u} is a perfect square, excluded by u != +-1, v^2"
        )));
    }
    Ok(())
}

/// A primitive-root census outcome: the count plus how many primes were
/// skipped because they divide u (u = 0 mod p has no order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimrootCensus {
    pub count: u64,
    pub skipped: u64,
}

/// Census of primes p <= x with p not dividing u, p - 1 squarefree, and
/// u mod p a primitive root. Primes dividing u are skipped and counted
/// separately; p = 2 counts exactly when u is odd (u = 1 mod 2 has order
/// 1 = p - 1, and 1 is squarefree).
pub fn pi_sf_primroot_detailed(x: u64, u: i64, table: &PrimeTable) -> Result<PrimrootCensus> {
    check_fixed_u(u)?;
    check_limit(x, table)?;
    let primes = table.primes_in(2, x);
    let partials = exec::chunk_map(primes, CENSUS_CHUNK, |chunk| {
        let mut out = PrimrootCensus { count: 0, skipped: 0 };
        for &p in chunk {
            let r = u.rem_euclid(p as i64) as u64;
            if r == 0 {
                out.skipped += 1;
                continue;
            }
            let pm1 = pm1_of(p, table);
            if pm1.is_squarefree()
                && is_primitive_root(r, p, &pm1).expect("r is a unit mod p")
            {
                out.count += 1;
            }
        }
        out
    });
    Ok(partials.into_iter().fold(PrimrootCensus { count: 0, skipped: 0 }, |a, b| {
        PrimrootCensus { count: a.count + b.count, skipped: a.skipped + b.skipped }
    }))
}

/// [`pi_sf_primroot_detailed`] reduced to the bare count.
pub fn pi_sf_primroot(x: u64, u: i64, table: &PrimeTable) -> Result<u64> {
    Ok(pi_sf_primroot_detailed(x, u, table)?.count)
}

/// Exact rational Sum over primes p <= x of phi(p-1)/(p-1) restricted to
/// squarefree p - 1.
pub fn weighted_totient_sum(x: u64, table: &PrimeTable) -> Result<BigRational> {
    check_limit(x, table)?;
    let primes = table.primes_in(2, x);
    let chunks = exec::chunk_map(primes, CENSUS_CHUNK, |chunk| {
        let mut acc = ExactSum::zero();
        for &p in chunk {
            let pm1 = pm1_of(p, table);
            if pm1.is_squarefree() {
                acc.add(&ExactSum::term(pm1.totient as i64, &pm1.factors));
            }
        }
        acc
    });
    Ok(sum_terms(chunks).to_ratio())
}

/// The logarithmic integral li(x) = integral from 2 to x of dz/ln z, by
/// adaptive Simpson quadrature to absolute error <= 1e-8. The lower limit 2
/// keeps the integrand smooth, so no principal value is involved.
pub fn log_integral(x: f64) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("log_integral needs x >= 2, got {x}")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    let f = |z: f64| 1.0 / z.ln();
    Ok(adaptive_simpson(&f, 2.0, x, 1e-9))
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    adaptive_step(f, a, b, fa, fm, fb, whole, eps, 60)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1)
        + adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1)
}

/// An exact rational carried as decimal strings (float-loss-free external
/// form) next to its nearest-f64 image.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactRational {
    pub numerator: String,
    pub denominator: String,
    pub value: f64,
}

impl ExactRational {
    pub fn from_ratio(r: &BigRational) -> Self {
        Self {
            numerator: r.numer().to_string(),
            denominator: r.denom().to_string(),
            value: ratio_to_f64(r),
        }
    }

    /// Parse back to the exact rational (inverse of [`Self::from_ratio`]).
    pub fn to_ratio(&self) -> BigRational {
        let n = BigInt::from_str(&self.numerator).expect("stored numerator is decimal");
        let d = BigInt::from_str(&self.denominator).expect("stored denominator is decimal");
        BigRational::new(n, d)
    }
}

/// The exact split of the primitive-root census over [x, 2x] into the t = 0
/// main term M and the t != 0 oscillatory term E. Per prime the inner index
/// sum collapses exactly, so count - (M + E) = 0 is an arithmetic identity,
/// not an approximation.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionRecord {
    pub x: u64,
    pub u: i64,
    pub count: u64,
    pub m: ExactRational,
    pub e: ExactRational,
    pub residual: ExactRational,
}

/// Decompose the census of mu^2(p-1) * Psi_p(u) over primes p in [x, 2x]
/// (p not dividing u) as M + E with
/// M = Sum mu^2(p-1) phi(p-1)/p and E = Sum mu^2(p-1) (p Psi - phi(p-1))/p.
/// The main term here is the bare weighted sum with no density factor: the
/// split is the literal t = 0 / t != 0 partition of the collapsed index sum.
pub fn interval_decomposition(x: u64, u: i64, table: &PrimeTable) -> Result<DecompositionRecord> {
    check_fixed_u(u)?;
    if x == 0 {
        return Err(Error::InvalidArgument("interval start x = 0".into()));
    }
    let hi = x.checked_mul(2).ok_or_else(|| {
        Error::InvalidArgument(format!("interval end 2x overflows for x = {x}"))
    })?;
    check_limit(hi, table)?;

    struct Part {
        count: u64,
        m: ExactSum,
        e: ExactSum,
    }
    let primes = table.primes_in(x, hi);
    let parts = exec::chunk_map(primes, CENSUS_CHUNK, |chunk| {
        let mut part = Part { count: 0, m: ExactSum::zero(), e: ExactSum::zero() };
        for &p in chunk {
            let r = u.rem_euclid(p as i64) as u64;
            if r == 0 {
                continue;
            }
            let pm1 = pm1_of(p, table);
            if !pm1.is_squarefree() {
                continue;
            }
            let psi =
                is_primitive_root(r, p, &pm1).expect("r is a unit mod p") as u64;
            part.count += psi;
            let phi = pm1.totient;
            part.m.add(&ExactSum::term(phi as i64, &[(p, 1)]));
            let e_num = BigInt::from(p) * BigInt::from(psi) - BigInt::from(phi);
            part.e.add(&ExactSum::term(e_num, &[(p, 1)]));
        }
        part
    });

    let mut count = 0u64;
    let mut m_terms = Vec::with_capacity(parts.len());
    let mut e_terms = Vec::with_capacity(parts.len());
    for part in parts {
        count += part.count;
        m_terms.push(part.m);
        e_terms.push(part.e);
    }
    let m = sum_terms(m_terms).to_ratio();
    let e = sum_terms(e_terms).to_ratio();
    let residual = BigRational::from(BigInt::from(count)) - (&m + &e);
    if !residual.is_zero() {
        // The decomposition is an exact identity; a nonzero residual means
        // the arithmetic itself is broken.
        return Err(Error::IdentityViolation {
            residual: ratio_to_f64(&residual).abs(),
            tolerance: 0.0,
        });
    }
    Ok(DecompositionRecord {
        x,
        u,
        count,
        m: ExactRational::from_ratio(&m),
        e: ExactRational::from_ratio(&e),
        residual: ExactRational::from_ratio(&residual),
    })
}

/// One checkpoint of the density report.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub x: u64,
    pub pi: u64,
    pub pi_sf: u64,
    /// Counts per tested base u.
    pub pi_sf_u: BTreeMap<i64, u64>,
    /// Primes skipped per base because they divide u.
    pub skipped_u: BTreeMap<i64, u64>,
    pub weighted_sum: ExactRational,
    pub li_x: f64,
    pub ratio_sf: f64,
    pub ratio_sf_u: BTreeMap<i64, f64>,
    pub weighted_over_li: f64,
}

/// Truncated Euler-product values reported next to the empirical ratios.
/// Nothing asserts a ratio equals any of these; the report is side-by-side
/// comparison only.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CandidateConstants {
    pub truncation_limit: u64,
    pub a0: f64,
    pub a1: f64,
    pub a0_squared: f64,
    pub a1_squared: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub rows: Vec<CensusRow>,
    pub candidates: CandidateConstants,
}

/// The default checkpoint schedule: powers of 10 from 10^3 up to x_max, or
/// just {x_max} when x_max is below the first power.
pub fn default_checkpoints(x_max: u64) -> Vec<u64> {
    let mut cps = Vec::new();
    let mut c = 1000u64;
    while c <= x_max {
        cps.push(c);
        match c.checked_mul(10) {
            Some(next) => c = next,
            None => break,
        }
    }
    if cps.is_empty() {
        cps.push(x_max);
    }
    cps
}

/// Census rows at each checkpoint plus candidate constants truncated at
/// `constants_p`. Checkpoints must be ascending, >= 2, and within the table.
pub fn density_report(
    checkpoints: &[u64],
    u_list: &[i64],
    constants_p: u64,
    table: &PrimeTable,
) -> Result<DensityReport> {
    if checkpoints.is_empty() {
        return Err(Error::InvalidArgument("no checkpoints given".into()));
    }
    for w in checkpoints.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidArgument(format!(
                "checkpoints must ascend strictly: {} then {}",
                w[0], w[1]
            )));
        }
    }
    if checkpoints[0] < 2 {
        return Err(Error::InvalidArgument("checkpoints start below 2".into()));
    }
    check_limit(*checkpoints.last().unwrap(), table)?;
    for &u in u_list {
        check_fixed_u(u)?;
    }

    let mut rows = Vec::with_capacity(checkpoints.len());
    for &x in checkpoints {
        rows.push(census_row(x, u_list, table)?);
    }

    let p = constants_p.min(table.limit()).max(2);
    let a0 = crate::constants::euler_product(crate::constants::EulerKind::A0ArtinType, p, table)?;
    let a1 =
        crate::constants::euler_product(crate::constants::EulerKind::A1SquarefreeType, p, table)?;
    Ok(DensityReport {
        rows,
        candidates: CandidateConstants {
            truncation_limit: p,
            a0: a0.value,
            a1: a1.value,
            a0_squared: a0.value * a0.value,
            a1_squared: a1.value * a1.value,
        },
    })
}

/// One fused pass per checkpoint: squarefree count, per-u primitive-root
/// counts, and the exact weighted sum share a single factorization per prime.
fn census_row(x: u64, u_list: &[i64], table: &PrimeTable) -> Result<CensusRow> {
    struct Part {
        sf: u64,
        per_u: Vec<PrimrootCensus>,
        weighted: ExactSum,
    }
    let primes = table.primes_in(2, x);
    let parts = exec::chunk_map(primes, CENSUS_CHUNK, |chunk| {
        let mut part = Part {
            sf: 0,
            per_u: vec![PrimrootCensus { count: 0, skipped: 0 }; u_list.len()],
            weighted: ExactSum::zero(),
        };
        for &p in chunk {
            let pm1 = pm1_of(p, table);
            let sf = pm1.is_squarefree();
            if sf {
                part.sf += 1;
                part.weighted.add(&ExactSum::term(pm1.totient as i64, &pm1.factors));
            }
            for (slot, &u) in part.per_u.iter_mut().zip(u_list) {
                let r = u.rem_euclid(p as i64) as u64;
                if r == 0 {
                    slot.skipped += 1;
                } else if sf && is_primitive_root(r, p, &pm1).expect("r is a unit mod p") {
                    slot.count += 1;
                }
            }
        }
        part
    });

    let pi = primes.len() as u64;
    let mut sf = 0u64;
    let mut per_u = vec![PrimrootCensus { count: 0, skipped: 0 }; u_list.len()];
    let mut weighted_chunks = Vec::with_capacity(parts.len());
    for part in parts {
        sf += part.sf;
        for (acc, add) in per_u.iter_mut().zip(&part.per_u) {
            acc.count += add.count;
            acc.skipped += add.skipped;
        }
        weighted_chunks.push(part.weighted);
    }
    let weighted = sum_terms(weighted_chunks).to_ratio();
    let li_x = log_integral(x as f64)?;

    let div = |n: u64, d: u64| if d == 0 { 0.0 } else { n as f64 / d as f64 };
    Ok(CensusRow {
        x,
        pi,
        pi_sf: sf,
        pi_sf_u: u_list.iter().zip(&per_u).map(|(&u, c)| (u, c.count)).collect(),
        skipped_u: u_list.iter().zip(&per_u).map(|(&u, c)| (u, c.skipped)).collect(),
        weighted_sum: ExactRational::from_ratio(&weighted),
        li_x,
        ratio_sf: div(sf, pi),
        ratio_sf_u: u_list.iter().zip(&per_u).map(|(&u, c)| (u, div(c.count, pi))).collect(),
        weighted_over_li: if li_x > 0.0 { ratio_to_f64(&weighted) / li_x } else { 0.0 },
    })
}
