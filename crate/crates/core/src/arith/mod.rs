//! Modular arithmetic over the multiplicative groups (Z/pZ)*: factorization
//! bookkeeping, multiplicative orders, primitive roots, and the Legendre
//! symbol. Everything downstream (characteristic functions, censuses,
//! exponential sums) builds on these primitives.

mod cache;
mod sieve;

pub use cache::{export_records_csv, read_records, write_records};
pub use sieve::{sieve_primes, sieve_primes_with, PrimeTable, SieveConfig};

use crate::error::{Error, Result};
use crate::exec;

/// A positive integer with its full factorization and the multiplicative
/// invariants every caller ends up needing: Moebius mu and Euler phi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInteger {
    pub value: u64,
    /// Ascending (prime, exponent) pairs; empty exactly for value = 1.
    pub factors: Vec<(u64, u32)>,
    /// mu(value): 0 if any exponent exceeds 1, else (-1)^(number of primes).
    pub mobius: i32,
    /// phi(value).
    pub totient: u64,
}

impl FactoredInteger {
    pub fn is_squarefree(&self) -> bool {
        self.mobius != 0
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let snapshot = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..snapshot {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    /// Squarefree divisors with their Moebius values, ascending by divisor.
    pub fn squarefree_divisors(&self) -> Vec<(u64, i32)> {
        let mut divs = vec![(1u64, 1i32)];
        for &(p, _) in &self.factors {
            let snapshot = divs.len();
            for i in 0..snapshot {
                let (d, mu) = divs[i];
                divs.push((d * p, -mu));
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Factor n by walking the smallest-prime-factor table.
pub fn factorize(n: u64, table: &PrimeTable) -> Result<FactoredInteger> {
    if n == 0 {
        return Err(Error::InvalidArgument("factorize(0) is undefined".into()));
    }
    if n > table.limit() {
        return Err(Error::OutOfTable { n, limit: table.limit() });
    }
    let mut factors = Vec::new();
    let mut mobius = 1i32;
    let mut totient = 1u64;
    let mut m = n;
    while m > 1 {
        let p = table.smallest_prime_factor(m)?;
        let mut e = 0u32;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        totient *= (p - 1) * p.pow(e - 1);
        mobius = if e > 1 { 0 } else { -mobius };
        factors.push((p, e));
    }
    Ok(FactoredInteger { value: n, factors, mobius, totient })
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// base^exp mod modulus by binary exponentiation; modulus need only be >= 1.
#[inline]
pub(crate) fn pow_mod_raw(base: u64, exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % modulus;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, b, modulus);
        }
        b = mul_mod(b, b, modulus);
        e >>= 1;
    }
    result
}

/// base^exp mod modulus. The empty product convention applies: exp = 0 gives
/// 1 mod modulus, even for base = 0.
pub fn pow_mod(base: u64, exp: u64, modulus: u64) -> Result<u64> {
    if modulus == 0 {
        return Err(Error::InvalidArgument("pow_mod with modulus 0".into()));
    }
    Ok(pow_mod_raw(base, exp, modulus))
}

fn check_group_element(u: u64, p: u64, pm1: &FactoredInteger) -> Result<u64> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if pm1.value != p - 1 {
        return Err(Error::InvalidArgument(format!(
            "factorization given for {} but p - 1 = {}",
            pm1.value,
            p - 1
        )));
    }
    let r = u % p;
    if r == 0 {
        return Err(Error::InvalidArgument(format!(
            "u = {u} is 0 mod {p}; it has no multiplicative order"
        )));
    }
    Ok(r)
}

/// Multiplicative order of u mod p, by divide-and-reduce over the factorization
/// of p - 1: start at t = p - 1 and strip each prime q while u^(t/q) = 1.
/// Never a linear scan — those exist only as test oracles.
pub fn mul_order(u: u64, p: u64, pm1: &FactoredInteger) -> Result<u64> {
    let r = check_group_element(u, p, pm1)?;
    let mut t = p - 1;
    for &(q, _) in &pm1.factors {
        while t % q == 0 && pow_mod_raw(r, t / q, p) == 1 {
            t /= q;
        }
    }
    Ok(t)
}

/// u is a primitive root mod p iff u^((p-1)/q) != 1 for every prime q | p - 1.
pub fn is_primitive_root(u: u64, p: u64, pm1: &FactoredInteger) -> Result<bool> {
    let r = check_group_element(u, p, pm1)?;
    for &(q, _) in &pm1.factors {
        if pow_mod_raw(r, (p - 1) / q, p) == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest positive primitive root of p. For p = 2 the group is trivial and
/// the answer is 1; otherwise candidates 2, 3, ... are tested in order.
pub fn least_primitive_root(p: u64, pm1: &FactoredInteger) -> Result<u64> {
    if p == 2 {
        return Ok(1);
    }
    for c in 2..p {
        if is_primitive_root(c, p, pm1)? {
            return Ok(c);
        }
    }
    Err(Error::InvalidArgument(format!("no primitive root found; {p} is not prime")))
}

/// Legendre symbol (a | p) for odd prime p, by Euler's criterion
/// a^((p-1)/2) mod p, mapped {1 -> 1, p-1 -> -1, 0 -> 0}.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i32> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "legendre symbol requires an odd prime, got {p}"
        )));
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    let e = pow_mod_raw(r, (p - 1) / 2, p);
    if e == 1 {
        Ok(1)
    } else if e == p - 1 {
        Ok(-1)
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime (Euler criterion gave {e})")))
    }
}

/// Per-prime record: p, the factored p - 1, and the least primitive root tau.
/// This is the unit the characteristic-function and exponential-sum modules
/// consume, and the unit the binary cache stores.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRecord {
    pub p: u64,
    pub pm1: FactoredInteger,
    pub tau: u64,
}

/// Build the record for a single prime.
pub fn prime_record(p: u64, table: &PrimeTable) -> Result<PrimeRecord> {
    if !table.is_prime(p)? {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let pm1 = factorize(p - 1, table)?;
    let tau = least_primitive_root(p, &pm1)?;
    Ok(PrimeRecord { p, pm1, tau })
}

const RECORD_CHUNK: usize = 256;

/// Records for every prime <= p_max, ascending. Chunked over the prime list;
/// chunk outputs are concatenated in order, so the result is identical in
/// parallel and sequential builds.
pub fn records_up_to(p_max: u64, table: &PrimeTable) -> Result<Vec<PrimeRecord>> {
    if p_max > table.limit() {
        return Err(Error::OutOfTable { n: p_max, limit: table.limit() });
    }
    let primes = table.primes_in(2, p_max);
    let chunks: Vec<Result<Vec<PrimeRecord>>> = exec::chunk_map(primes, RECORD_CHUNK, |ps| {
        ps.iter().map(|&p| prime_record(p, table)).collect()
    });
    let mut out = Vec::with_capacity(primes.len());
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> PrimeTable {
        sieve_primes(10_000).unwrap()
    }

    #[test]
    fn sieve_small_examples() {
        let t = sieve_primes(10).unwrap();
        assert_eq!(t.primes(), &[2, 3, 5, 7]);
        let t = sieve_primes(2).unwrap();
        assert_eq!(t.primes(), &[2]);
        assert!(sieve_primes(1).is_err());
    }

    #[test]
    fn sieve_respects_memory_ceiling() {
        let cfg = SieveConfig { segment_len: 1 << 12, memory_ceiling: 1_000 };
        assert!(matches!(sieve_primes_with(2_000, &cfg), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn sieve_segment_boundaries_do_not_matter() {
        // Same table for segment lengths that do and do not divide the limit.
        let a = sieve_primes_with(50_000, &SieveConfig { segment_len: 1 << 20, ..Default::default() })
            .unwrap();
        let b = sieve_primes_with(50_000, &SieveConfig { segment_len: 777, ..Default::default() })
            .unwrap();
        assert_eq!(a.primes(), b.primes());
        for n in 2..=50_000u64 {
            assert_eq!(
                a.smallest_prime_factor(n).unwrap(),
                b.smallest_prime_factor(n).unwrap()
            );
        }
    }

    #[test]
    fn factorize_examples() {
        let t = table();
        let f = factorize(12, &t).unwrap();
        assert_eq!(f.factors, vec![(2, 2), (3, 1)]);
        assert_eq!(f.mobius, 0);
        assert_eq!(f.totient, 4);

        let f = factorize(1, &t).unwrap();
        assert_eq!(f.factors, vec![]);
        assert_eq!(f.mobius, 1);
        assert_eq!(f.totient, 1);

        let f = factorize(10, &t).unwrap();
        assert_eq!(f.factors, vec![(2, 1), (5, 1)]);
        assert_eq!(f.mobius, 1);
        assert_eq!(f.totient, 4);

        assert!(factorize(0, &t).is_err());
        assert!(matches!(factorize(20_000, &t), Err(Error::OutOfTable { .. })));
    }

    #[test]
    fn divisor_enumeration() {
        let t = table();
        let f = factorize(60, &t).unwrap();
        assert_eq!(f.divisors(), vec![1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60]);
        assert_eq!(
            f.squarefree_divisors(),
            vec![(1, 1), (2, -1), (3, -1), (5, -1), (6, 1), (10, 1), (15, 1), (30, -1)]
        );
    }

    #[test]
    fn pow_mod_examples() {
        assert_eq!(pow_mod(2, 10, 1000).unwrap(), 24);
        assert_eq!(pow_mod(3, 0, 7).unwrap(), 1);
        assert_eq!(pow_mod(0, 0, 5).unwrap(), 1);
        assert_eq!(pow_mod(5, 3, 1).unwrap(), 0);
        assert!(pow_mod(2, 2, 0).is_err());
    }

    #[test]
    fn orders_and_primitive_roots() {
        let t = table();
        let pm1 = factorize(10, &t).unwrap();
        assert_eq!(mul_order(2, 11, &pm1).unwrap(), 10);
        let pm1 = factorize(6, &t).unwrap();
        assert_eq!(mul_order(2, 7, &pm1).unwrap(), 3);
        let pm1 = factorize(1, &t).unwrap();
        assert_eq!(mul_order(1, 2, &pm1).unwrap(), 1);

        let pm1 = factorize(6, &t).unwrap();
        let roots: Vec<u64> =
            (1..7).filter(|&u| is_primitive_root(u, 7, &pm1).unwrap()).collect();
        assert_eq!(roots, vec![3, 5]);

        assert_eq!(least_primitive_root(2, &factorize(1, &t).unwrap()).unwrap(), 1);
        assert_eq!(least_primitive_root(7, &factorize(6, &t).unwrap()).unwrap(), 3);
        assert_eq!(least_primitive_root(11, &factorize(10, &t).unwrap()).unwrap(), 2);
    }

    #[test]
    fn order_rejects_zero_and_mismatched_factorization() {
        let t = table();
        let pm1 = factorize(10, &t).unwrap();
        assert!(mul_order(0, 11, &pm1).is_err());
        assert!(mul_order(22, 11, &pm1).is_err());
        let wrong = factorize(6, &t).unwrap();
        assert!(mul_order(2, 11, &wrong).is_err());
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(2, 7).unwrap(), 1);
        assert_eq!(legendre_symbol(3, 7).unwrap(), -1);
        assert_eq!(legendre_symbol(7, 7).unwrap(), 0);
        assert_eq!(legendre_symbol(-1, 11).unwrap(), -1);
        assert_eq!(legendre_symbol(-1, 13).unwrap(), 1);
        assert!(legendre_symbol(3, 2).is_err());
    }

    #[test]
    fn prime_records() {
        let t = table();
        let r = prime_record(11, &t).unwrap();
        assert_eq!(r.tau, 2);
        assert_eq!(r.pm1.factors, vec![(2, 1), (5, 1)]);
        assert!(prime_record(12, &t).is_err());

        let rs = records_up_to(20, &t).unwrap();
        assert_eq!(rs.iter().map(|r| r.p).collect::<Vec<_>>(), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(rs[0].tau, 1);
    }
}
