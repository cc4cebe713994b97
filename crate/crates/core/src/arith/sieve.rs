//! Segmented smallest-prime-factor sieve.

use crate::error::{Error, Result};
use crate::exec;

/// Sieve construction knobs. `segment_len` is the number of table entries each
/// segment covers (cache-sized, and the unit of parallel work); `memory_ceiling`
/// caps the sieved limit so a census cannot silently allocate past commodity
/// memory.
#[derive(Clone, Copy, Debug)]
pub struct SieveConfig {
    pub segment_len: usize,
    pub memory_ceiling: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self { segment_len: 1 << 20, memory_ceiling: 100_000_000 }
    }
}

/// Smallest-prime-factor table for [2, limit] plus the ascending prime list.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Smallest prime factor of n (n itself when n is prime).
    pub fn smallest_prime_factor(&self, n: u64) -> Result<u64> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("spf undefined for n = {n}")));
        }
        if n > self.limit {
            return Err(Error::OutOfTable { n, limit: self.limit });
        }
        Ok(u64::from(self.spf[n as usize]))
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        if n > self.limit {
            return Err(Error::OutOfTable { n, limit: self.limit });
        }
        Ok(n >= 2 && self.spf[n as usize] == n as u32)
    }

    /// Primes p with lo <= p <= hi, as a subslice of the ascending prime list.
    pub fn primes_in(&self, lo: u64, hi: u64) -> &[u64] {
        let a = self.primes.partition_point(|&p| p < lo);
        let b = self.primes.partition_point(|&p| p <= hi);
        &self.primes[a..b]
    }
}

/// Sieve [2, limit] with the default configuration.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    sieve_primes_with(limit, &SieveConfig::default())
}

/// Sieve [2, limit]: segments are filled independently (in parallel when the
/// `parallel` feature is on) and the result does not depend on scheduling.
pub fn sieve_primes_with(limit: u64, cfg: &SieveConfig) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::InvalidArgument(format!("sieve limit {limit} < 2")));
    }
    if limit > cfg.memory_ceiling {
        return Err(Error::ResourceLimit(format!(
            "sieve limit {limit} exceeds memory ceiling {}",
            cfg.memory_ceiling
        )));
    }

    // Base primes up to sqrt(limit) from a small non-segmented sieve.
    let root = limit.isqrt();
    let base = simple_primes(root);

    let mut spf = vec![0u32; (limit + 1) as usize];
    exec::for_each_chunk_mut(&mut spf, cfg.segment_len, |idx, seg| {
        let lo = idx * cfg.segment_len;
        let hi = lo + seg.len();
        for &p in &base {
            let p = p as usize;
            // Every composite's smallest factor p first divides it at p^2.
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            while m < hi {
                if seg[m - lo] == 0 {
                    seg[m - lo] = p as u32;
                }
                m += p;
            }
        }
        for off in 0..seg.len() {
            let n = lo + off;
            if n >= 2 && seg[off] == 0 {
                seg[off] = n as u32;
            }
        }
    });

    // Collect primes per segment, in segment order.
    let per_seg: Vec<Vec<u64>> = exec::chunk_map_indexed(&spf, cfg.segment_len, |idx, seg| {
        let lo = idx * cfg.segment_len;
        seg.iter()
            .enumerate()
            .filter_map(|(off, &f)| {
                let n = lo + off;
                (n >= 2 && f == n as u32).then_some(n as u64)
            })
            .collect()
    });
    let mut primes = Vec::with_capacity(per_seg.iter().map(Vec::len).sum());
    for v in per_seg {
        primes.extend(v);
    }

    Ok(PrimeTable { limit, spf, primes })
}

/// Plain sieve of Eratosthenes for the base primes (bounded by sqrt(limit)).
fn simple_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut m = i * i;
            while m <= n {
                composite[m] = true;
                m += i;
            }
        }
    }
    primes
}
