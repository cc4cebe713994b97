//! On-disk prime-record cache: a versioned little-endian binary stream plus a
//! CSV export.
//!
//! Layout: the 5 magic bytes "SFTL1", then per record a sequence of 64-bit
//! little-endian words: p, the number k of (prime, exponent) pairs in the
//! factorization of p - 1, the 2k pair words in ascending prime order, and
//! the least primitive root tau.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{FactoredInteger, PrimeRecord};
use crate::error::{Error, Result};

const MAGIC: &[u8; 5] = b"SFTL1";
/// 2*3*5*...*47 already exceeds 6e17, so no u64-sized p - 1 has more
/// distinct prime factors than this.
const MAX_FACTORS: u64 = 15;

pub fn write_records(path: &Path, records: &[PrimeRecord]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    for r in records {
        let mut words = Vec::with_capacity(3 + 2 * r.pm1.factors.len());
        words.push(r.p);
        words.push(r.pm1.factors.len() as u64);
        for &(q, e) in &r.pm1.factors {
            words.push(q);
            words.push(u64::from(e));
        }
        words.push(r.tau);
        for word in words {
            w.write_all(&word.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_records(path: &Path) -> Result<Vec<PrimeRecord>> {
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 5];
    r.read_exact(&mut magic)
        .map_err(|_| Error::CacheFormat("file too short for magic bytes".into()))?;
    if &magic != MAGIC {
        return Err(Error::CacheFormat(format!(
            "bad magic {:?}, expected {:?}",
            magic, MAGIC
        )));
    }
    let mut body = Vec::new();
    r.read_to_end(&mut body)?;
    if body.len() % 8 != 0 {
        return Err(Error::CacheFormat("body length is not a multiple of 8".into()));
    }
    let words: Vec<u64> = body
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();

    let mut records = Vec::new();
    let mut i = 0usize;
    while i < words.len() {
        if words.len() - i < 3 {
            return Err(Error::CacheFormat(format!("truncated record at word {i}")));
        }
        let p = words[i];
        let k = words[i + 1];
        if p < 2 {
            return Err(Error::CacheFormat(format!("record with p = {p}")));
        }
        if k > MAX_FACTORS {
            return Err(Error::CacheFormat(format!("record p = {p} claims {k} factors")));
        }
        let k = k as usize;
        if words.len() - i < 2 + 2 * k + 1 {
            return Err(Error::CacheFormat(format!("truncated record for p = {p}")));
        }
        let mut factors = Vec::with_capacity(k);
        let mut product: u128 = 1;
        let mut mobius = 1i32;
        let mut totient = 1u64;
        let mut prev_q = 0u64;
        for j in 0..k {
            let q = words[i + 2 + 2 * j];
            let e = words[i + 3 + 2 * j];
            if q <= prev_q {
                return Err(Error::CacheFormat(format!(
                    "record p = {p}: factor primes not ascending"
                )));
            }
            if e == 0 || e > 63 {
                return Err(Error::CacheFormat(format!(
                    "record p = {p}: exponent {e} out of range"
                )));
            }
            prev_q = q;
            for _ in 0..e {
                product = product.saturating_mul(q as u128);
            }
            if product > (p - 1) as u128 {
                return Err(Error::CacheFormat(format!(
                    "record p = {p}: factor product exceeds p - 1"
                )));
            }
            mobius = if e > 1 { 0 } else { -mobius };
            totient *= (q - 1) * q.pow(e as u32 - 1);
            factors.push((q, e as u32));
        }
        if product != (p - 1) as u128 {
            return Err(Error::CacheFormat(format!(
                "record p = {p}: factor product {product} != p - 1"
            )));
        }
        let tau = words[i + 2 + 2 * k];
        if tau == 0 || tau >= p {
            return Err(Error::CacheFormat(format!("record p = {p}: tau = {tau} out of range")));
        }
        records.push(PrimeRecord {
            p,
            pm1: FactoredInteger { value: p - 1, factors, mobius, totient },
            tau,
        });
        i += 2 + 2 * k + 1;
    }
    Ok(records)
}

/// CSV export: columns p, pm1_factorization ("q1^e1*q2^e2", "1" for p = 2),
/// mobius, phi, tau. RFC-4180 line endings; no field ever needs quoting.
pub fn export_records_csv<W: Write>(mut w: W, records: &[PrimeRecord]) -> Result<()> {
    w.write_all(b"p,pm1_factorization,mobius,phi,tau\r\n")?;
    for r in records {
        let factorization = if r.pm1.factors.is_empty() {
            "1".to_string()
        } else {
            r.pm1
                .factors
                .iter()
                .map(|&(q, e)| format!("{q}^{e}"))
                .collect::<Vec<_>>()
                .join("*")
        };
        write!(
            w,
            "{},{},{},{},{}\r\n",
            r.p, factorization, r.pm1.mobius, r.pm1.totient, r.tau
        )?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{records_up_to, sieve_primes};

    #[test]
    fn roundtrip_and_csv() {
        let table = sieve_primes(200).unwrap();
        let records = records_up_to(200, &table).unwrap();
        let dir = std::env::temp_dir().join("sftlab-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("records.bin");
        write_records(&path, &records).unwrap();
        let back = read_records(&path).unwrap();
        assert_eq!(records, back);

        let mut csv = Vec::new();
        export_records_csv(&mut csv, &records[..5]).unwrap();
        let text = String::from_utf8(csv).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "p,pm1_factorization,mobius,phi,tau");
        assert_eq!(lines.next().unwrap(), "2,1,1,1,1");
        assert_eq!(lines.next().unwrap(), "3,2^1,-1,1,2");
        assert_eq!(lines.next().unwrap(), "5,2^2,0,2,2");
        assert_eq!(lines.next().unwrap(), "7,2^1*3^1,1,2,3");
        assert_eq!(lines.next().unwrap(), "11,2^1*5^1,1,4,2");
    }

    #[test]
    fn read_rejects_corruption() {
        let table = sieve_primes(50).unwrap();
        let records = records_up_to(50, &table).unwrap();
        let dir = std::env::temp_dir().join("sftlab-cache-test");
        std::fs::create_dir_all(&dir).unwrap();

        let path = dir.join("bad-magic.bin");
        write_records(&path, &records).unwrap();
        let mut bytes = std::fs::read(&path).unwrap();
        bytes[0] = b'X';
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(read_records(&path), Err(Error::CacheFormat(_))));

        let path = dir.join("truncated.bin");
        write_records(&path, &records).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 8]).unwrap();
        assert!(matches!(read_records(&path), Err(Error::CacheFormat(_))));

        let path = dir.join("bad-product.bin");
        let mut broken = records.clone();
        broken[4].pm1.factors[0].1 = 2; // claims 2^2 * 5 = 20 != 10
        write_records(&path, &broken).unwrap();
        assert!(matches!(read_records(&path), Err(Error::CacheFormat(_))));
    }
}
