//! Truncated Euler products for the two density constants, with rigorous
//! tail bounds, and partial sums of the companion L-series.
//!
//! No numeric value of either constant is hard-coded anywhere: each is a
//! computed artifact published as value +- tail_bound. The tail estimates
//! come from comparison series that telescope, so they are proved bounds,
//! not heuristics.

use crate::arith::{factorize, PrimeTable};
use crate::census::exact::{ratio_to_f64, sum_terms, ExactSum};
use crate::error::{Error, Result};
use crate::exec;
use crate::kahan::KahanSum;
use num::rational::BigRational;
use serde::Serialize;

/// Primes per chunk in the log-domain product; the reduce order over chunks
/// is fixed, so results are bit-identical across thread counts.
const PRODUCT_CHUNK: usize = 4096;

/// Which Euler product: the Artin-type constant with factors
/// 1 - 1/(p(p-1)), or the squarefree-totient constant with factors
/// 1 - 1/(p(p-1)^2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EulerKind {
    #[serde(rename = "a0_artin_type")]
    A0ArtinType,
    #[serde(rename = "a1_squarefree_type")]
    A1SquarefreeType,
}

impl EulerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EulerKind::A0ArtinType => "a0_artin_type",
            EulerKind::A1SquarefreeType => "a1_squarefree_type",
        }
    }

    fn factor_deficit(self, p: f64) -> f64 {
        match self {
            EulerKind::A0ArtinType => 1.0 / (p * (p - 1.0)),
            EulerKind::A1SquarefreeType => 1.0 / (p * (p - 1.0) * (p - 1.0)),
        }
    }

    /// Upper bound on Sum_{p > P} f_p under a comparison series.
    /// a0: Sum_{n > P} 1/(n(n-1)) telescopes to exactly 1/P.
    /// a1: Sum_{n > P} 1/(n(n-1)^2) < Sum_{n > P} 1/(n-1)^3
    ///     < integral_{P-1}^inf dt/t^3 = 1/(2(P-1)^2).
    fn tail_bound(self, p_limit: u64) -> f64 {
        let p = p_limit as f64;
        match self {
            EulerKind::A0ArtinType => 1.0 / p,
            EulerKind::A1SquarefreeType => 1.0 / (2.0 * (p - 1.0) * (p - 1.0)),
        }
    }
}

/// A truncated Euler product with its provenance: the truncation point, the
/// bound on what the discarded tail can move the value, and how many decimal
/// digits that bound leaves trustworthy.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EulerProductValue {
    pub kind: EulerKind,
    pub truncation_limit: u64,
    pub value: f64,
    pub tail_bound: f64,
    pub digits_trusted: i32,
}

/// Rounding budget added to the tail before counting trusted digits: the
/// compensated log-domain accumulation is good to a few ulp, far below this.
const ROUNDING_BUDGET: f64 = 1e-12;

/// The product over primes p <= P of (1 - f_p), accumulated as compensated
/// ln(1 - f_p) partial sums over fixed prime chunks and exponentiated once.
///
/// Tail rigor: with F = Sum_{p > P} f_p, the full product lies within
/// [value * (1 - F), value], since Prod(1 - f_p) >= 1 - F; value <= 1 then
/// gives |full - truncated| <= F <= tail_bound.
pub fn euler_product(kind: EulerKind, p_limit: u64, table: &PrimeTable) -> Result<EulerProductValue> {
    if p_limit < 2 {
        return Err(Error::InvalidArgument(format!(
            "Euler product truncation {p_limit} < 2"
        )));
    }
    if p_limit > table.limit() {
        return Err(Error::OutOfTable { n: p_limit, limit: table.limit() });
    }
    let primes = table.primes_in(2, p_limit);
    let partials = exec::chunk_map(primes, PRODUCT_CHUNK, |chunk| {
        let mut acc = KahanSum::new();
        for &p in chunk {
            acc.add((-kind.factor_deficit(p as f64)).ln_1p());
        }
        acc.value()
    });
    // Ordered sequential fold over chunk partials: the same additions in the
    // same order whether the chunks were computed in parallel or not.
    let mut log_total = KahanSum::new();
    for part in partials {
        log_total.add(part);
    }
    let value = log_total.value().exp();
    let tail_bound = kind.tail_bound(p_limit);
    let digits_trusted = (-(tail_bound + ROUNDING_BUDGET).log10()).floor() as i32;
    Ok(EulerProductValue { kind, truncation_limit: p_limit, value, tail_bound, digits_trusted })
}

/// Exact partial sum Sum_{n <= z} mu(n)/(n phi(n)), returned as its nearest
/// f64 image next to the exact rational.
pub fn l_series_partial_sum(z: u64, table: &PrimeTable) -> Result<(f64, BigRational)> {
    if z < 1 {
        return Err(Error::InvalidArgument("L-series partial sum needs z >= 1".into()));
    }
    if z > table.limit() {
        return Err(Error::OutOfTable { n: z, limit: table.limit() });
    }
    let ns: Vec<u64> = (1..=z).collect();
    let chunks = exec::chunk_map(&ns, PRODUCT_CHUNK, |chunk| {
        let mut acc = ExactSum::zero();
        for &n in chunk {
            let fac = factorize(n, table).expect("n is within the sieved range");
            if !fac.is_squarefree() {
                continue;
            }
            let phi = factorize(fac.totient, table).expect("phi(n) <= n is in range");
            let mut den = fac.factors.clone();
            den.extend_from_slice(&phi.factors);
            acc.add(&ExactSum::term(fac.mobius as i64, &den));
        }
        acc
    });
    let exact = sum_terms(chunks).to_ratio();
    Ok((ratio_to_f64(&exact), exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve_primes;
    use num::BigInt;

    fn table(limit: u64) -> PrimeTable {
        sieve_primes(limit).unwrap()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn single_factor_products_match_hand_values() {
        let t = table(100);
        let a1 = euler_product(EulerKind::A1SquarefreeType, 2, &t).unwrap();
        assert!((a1.value - 0.5).abs() < 1e-12);
        let a0 = euler_product(EulerKind::A0ArtinType, 3, &t).unwrap();
        assert!((a0.value - 5.0 / 12.0).abs() < 1e-12);
        assert!(matches!(
            euler_product(EulerKind::A0ArtinType, 1, &t),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn values_stay_in_unit_interval_and_a1_exceeds_a0() {
        let t = table(100_000);
        for p in [10u64, 1000, 100_000] {
            let a0 = euler_product(EulerKind::A0ArtinType, p, &t).unwrap();
            let a1 = euler_product(EulerKind::A1SquarefreeType, p, &t).unwrap();
            assert!(a0.value > 0.0 && a0.value <= 1.0);
            assert!(a1.value > 0.0 && a1.value <= 1.0);
            assert!(a1.value > a0.value, "P = {p}");
        }
    }

    #[test]
    fn doubling_p_moves_value_less_than_previous_tail_bound() {
        let t = table(400_000);
        for kind in [EulerKind::A0ArtinType, EulerKind::A1SquarefreeType] {
            let mut prev = euler_product(kind, 1000, &t).unwrap();
            for p in [2000u64, 10_000, 100_000, 400_000] {
                let next = euler_product(kind, p, &t).unwrap();
                // Every factor < 1: values decrease in P.
                assert!(next.value < prev.value, "{} at P = {p}", kind.as_str());
                assert!(
                    (next.value - prev.value).abs() <= prev.tail_bound,
                    "{} at P = {p}: moved {} > tail {}",
                    kind.as_str(),
                    (next.value - prev.value).abs(),
                    prev.tail_bound
                );
                prev = next;
            }
        }
    }

    #[test]
    fn digits_trusted_tracks_tail_magnitude() {
        let t = table(1_000_000);
        let a0 = euler_product(EulerKind::A0ArtinType, 1_000_000, &t).unwrap();
        assert_eq!(a0.tail_bound, 1e-6);
        assert!(a0.digits_trusted >= 5);
        let a1 = euler_product(EulerKind::A1SquarefreeType, 1_000_000, &t).unwrap();
        assert!(a1.tail_bound < 1e-11);
        assert!(a1.digits_trusted >= a0.digits_trusted);
    }

    #[test]
    fn l_series_small_values_are_exact() {
        let t = table(100);
        let (v1, r1) = l_series_partial_sum(1, &t).unwrap();
        assert_eq!(r1, ratio(1, 1));
        assert_eq!(v1, 1.0);
        let (v2, r2) = l_series_partial_sum(2, &t).unwrap();
        assert_eq!(r2, ratio(1, 2));
        assert_eq!(v2, 0.5);
        // n = 4 contributes nothing (mu = 0): sums at z = 4 and z = 5 differ
        // by exactly mu(5)/(5*4) = -1/20.
        let (_, r4) = l_series_partial_sum(4, &t).unwrap();
        let (_, r5) = l_series_partial_sum(5, &t).unwrap();
        assert_eq!(&r5 - &r4, ratio(-1, 20));
    }

    #[test]
    fn l_series_converges_to_a0_within_stated_window() {
        let t = table(100_000);
        let a0 = euler_product(EulerKind::A0ArtinType, 100_000, &t).unwrap();
        for z in [1000u64, 10_000, 100_000] {
            let (v, _) = l_series_partial_sum(z, &t).unwrap();
            let window = 10.0 * (z as f64).ln() / z as f64;
            assert!(
                (v - a0.value).abs() <= window,
                "z = {z}: |{v} - {}| > {window}",
                a0.value
            );
        }
    }

    #[test]
    fn serialized_kind_uses_snake_case_names() {
        let t = table(100);
        let a0 = euler_product(EulerKind::A0ArtinType, 10, &t).unwrap();
        let json = serde_json::to_string(&a0).unwrap();
        assert!(json.contains("\"a0_artin_type\""), "{json}");
        assert_eq!(EulerKind::A1SquarefreeType.as_str(), "a1_squarefree_type");
    }
}
