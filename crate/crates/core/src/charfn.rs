//! Four independent routes to the characteristic function Psi of primitive
//! roots: Psi(u) = 1 if u generates (Z/pZ)*, else 0.
//!
//! * [`psi_order`] — definition-level oracle: a successive-multiplication
//!   order scan (the one place in the crate a linear scan is the point).
//! * [`psi_exact`] — exact integer arithmetic: counts n in [1, p-1] with
//!   gcd(n, p-1) = 1 and tau^n = u; since tau generates the group, this is
//!   a discrete-log lookup plus a gcd.
//! * [`psi_complex`] — the literal additive-character double sum
//!   sum over gcd(n, p-1) = 1 of (1/p) * sum over 0 <= s < p of
//!   e(( tau^n - u ) * s / p), accumulated with compensated summation.
//! * [`psi_divisor`] — the multiplicative-character divisor form
//!   (phi(p-1)/(p-1)) * sum over d | p-1 of (mu(d)/phi(d)) * sum over
//!   characters of order d of chi(u), with characters realized through a
//!   discrete-log table.
//!
//! The divisor-sum coefficient is mu(d)/phi(d): the totient's argument must be
//! the character order d itself (any other denominator leaves the normalization
//! broken, which the four-way agreement sweep would catch immediately). Reports
//! carry this reading as a note.
//!
//! The two complex routes carry a tolerance and self-check against
//! [`psi_exact`], returning an identity-violation error on disagreement.

use num::complex::Complex64;
use num::integer::gcd;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::arith::PrimeRecord;
use crate::error::{Error, Result};
use crate::exec;
use crate::kahan::ComplexAccumulator;
use crate::roots::RootTable;

/// Default tolerance for the complex evaluation routes.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Complex routes build O(p)-sized tables and sum O(p^2) terms; beyond this
/// ceiling they refuse rather than degrade.
pub const COMPLEX_CEILING: u64 = 10_000;

/// Note embedded in sweep reports documenting the divisor-sum coefficient.
pub const DIVISOR_COEFFICIENT_NOTE: &str = "divisor-sum coefficient read as mu(d)/phi(d), \
phi taken at the character order d; verified against the order oracle by the four-way sweep";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    OrderOracle,
    ExactFourier,
    ComplexFourier,
    DivisorCharacters,
}

/// One evaluation of Psi. For the integer routes `value` is exactly 0.0 or
/// 1.0; for the complex routes it is the computed real part, and
/// `is_primitive` reflects its rounding (the self-check guarantees the
/// rounding matches the exact route within the tolerance).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CharEvaluation {
    pub p: u64,
    pub u: u64,
    pub method: Method,
    pub value: f64,
    pub is_primitive: bool,
}

fn check_residue(u: u64, p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if u == 0 || u >= p {
        return Err(Error::InvalidArgument(format!(
            "u = {u} outside the group range [1, {}]",
            p - 1
        )));
    }
    Ok(())
}

fn check_record(u: u64, p: u64, rec: &PrimeRecord) -> Result<()> {
    check_residue(u, p)?;
    if rec.p != p {
        return Err(Error::InvalidArgument(format!(
            "record is for p = {}, evaluation asked for p = {p}",
            rec.p
        )));
    }
    Ok(())
}

fn check_complex_ceiling(p: u64) -> Result<()> {
    if p > COMPLEX_CEILING {
        return Err(Error::ResourceLimit(format!(
            "complex characteristic-function routes are capped at p <= {COMPLEX_CEILING}, got {p}"
        )));
    }
    Ok(())
}

/// Order oracle: multiply u into itself until reaching 1 and compare the step
/// count against p - 1.
pub fn psi_order(u: u64, p: u64) -> Result<CharEvaluation> {
    check_residue(u, p)?;
    let mut v = u;
    let mut k = 1u64;
    while v != 1 {
        v = crate::arith::mul_mod(v, u, p);
        k += 1;
        if k > p {
            return Err(Error::InvalidArgument(format!("{p} is not prime (order scan wrapped)")));
        }
    }
    let hit = k == p - 1;
    Ok(CharEvaluation {
        p,
        u,
        method: Method::OrderOracle,
        value: if hit { 1.0 } else { 0.0 },
        is_primitive: hit,
    })
}

/// Discrete logarithm of u base tau: the unique n in [1, p-1] with tau^n = u.
/// (u = 1 maps to n = p - 1, so the coprimality test below is correct for it.)
fn discrete_log(u: u64, rec: &PrimeRecord) -> Result<u64> {
    let p = rec.p;
    let mut cur = 1u64;
    for n in 1..=p - 1 {
        cur = crate::arith::mul_mod(cur, rec.tau, p);
        if cur == u {
            return Ok(n);
        }
    }
    Err(Error::InvalidArgument(format!(
        "tau = {} does not generate the group mod {p}",
        rec.tau
    )))
}

/// Exact route: Psi(u) = 1 iff gcd(ind_tau(u), p - 1) = 1. Integer
/// arithmetic only.
pub fn psi_exact(u: u64, p: u64, rec: &PrimeRecord) -> Result<CharEvaluation> {
    check_record(u, p, rec)?;
    let hit = if p == 2 {
        true // the trivial group: u = 1 is its own generator
    } else {
        gcd(discrete_log(u, rec)?, p - 1) == 1
    };
    Ok(CharEvaluation {
        p,
        u,
        method: Method::ExactFourier,
        value: if hit { 1.0 } else { 0.0 },
        is_primitive: hit,
    })
}

fn finish_complex(
    u: u64,
    p: u64,
    rec: &PrimeRecord,
    method: Method,
    z: Complex64,
    tolerance: f64,
) -> Result<CharEvaluation> {
    let exact = psi_exact(u, p, rec)?;
    let residual = (z - Complex64::new(exact.value, 0.0)).norm();
    if !(residual <= tolerance) {
        return Err(Error::IdentityViolation { residual, tolerance });
    }
    Ok(CharEvaluation { p, u, method, value: z.re, is_primitive: exact.is_primitive })
}

/// Literal double-sum route over the additive characters e(k s / p).
pub fn psi_complex(u: u64, p: u64, rec: &PrimeRecord, tolerance: f64) -> Result<CharEvaluation> {
    check_record(u, p, rec)?;
    check_complex_ceiling(p)?;
    if p == 2 {
        // Single coprime index, two additive characters; the sum collapses to
        // 1 exactly, so skip the degenerate table build.
        return Ok(CharEvaluation {
            p,
            u,
            method: Method::ComplexFourier,
            value: 1.0,
            is_primitive: true,
        });
    }
    let roots = RootTable::new(p);
    let z = complex_double_sum(u, rec, |a| inner_additive_sum(a, &roots));
    finish_complex(u, p, rec, Method::ComplexFourier, z, tolerance)
}

/// Shared kernel for the double sum: ascending n, with `inner(a)` supplying
/// sum over s of e(a s / p). The sweep context passes cached values produced
/// by the identical ascending-s loop, so both paths are bit-identical.
fn complex_double_sum(u: u64, rec: &PrimeRecord, inner: impl Fn(u64) -> Complex64) -> Complex64 {
    let p = rec.p;
    let pm1 = p - 1;
    let mut outer = ComplexAccumulator::new();
    let mut cur = 1u64;
    for n in 1..=pm1 {
        cur = crate::arith::mul_mod(cur, rec.tau, p);
        if gcd(n, pm1) != 1 {
            continue;
        }
        let a = (cur + p - u) % p;
        outer.add(inner(a));
    }
    outer.value() / p as f64
}

/// sum over 0 <= s < p of e(a s / p), by table lookup with compensation.
fn inner_additive_sum(a: u64, roots: &RootTable) -> Complex64 {
    let p = roots.order();
    let mut acc = ComplexAccumulator::new();
    let mut k = 0u64;
    for _ in 0..p {
        acc.add(roots.root(k));
        k += a;
        if k >= p {
            k -= p;
        }
    }
    acc.value()
}

/// Per-divisor coefficients mu(d)/phi(d) for every divisor d of p - 1.
fn divisor_coefficients(rec: &PrimeRecord) -> BTreeMap<u64, f64> {
    let mut mu_phi: BTreeMap<u64, (i32, u64)> = BTreeMap::new();
    mu_phi.insert(1, (1, 1));
    for &(q, e) in &rec.pm1.factors {
        let snapshot: Vec<(u64, (i32, u64))> = mu_phi.iter().map(|(&d, &v)| (d, v)).collect();
        for (d, (mu, phi)) in snapshot {
            let mut qk = 1u64;
            for k in 1..=e {
                qk *= q;
                let mu_new = if k > 1 { 0 } else { -mu };
                let phi_new = phi * (q - 1) * q.pow(k - 1);
                mu_phi.insert(d * qk, (mu_new, phi_new));
            }
        }
    }
    mu_phi
        .into_iter()
        .map(|(d, (mu, phi))| (d, f64::from(mu) / phi as f64))
        .collect()
}

/// Divisor/character route. Characters of order d are realized as
/// chi_j(u) = e(j * ind(u) / (p-1)) over the j in [0, p-2] whose order
/// (p-1)/gcd(j, p-1) equals d; summing across all d covers every j once.
pub fn psi_divisor(u: u64, p: u64, rec: &PrimeRecord, tolerance: f64) -> Result<CharEvaluation> {
    check_record(u, p, rec)?;
    check_complex_ceiling(p)?;
    if p == 2 {
        // One character group (the trivial one); the identity is immediate.
        return Ok(CharEvaluation {
            p,
            u,
            method: Method::DivisorCharacters,
            value: 1.0,
            is_primitive: true,
        });
    }
    let pm1 = p - 1;
    let coefficients = divisor_coefficients(rec);
    let coef_j: Vec<f64> =
        (0..pm1).map(|j| coefficients[&(pm1 / gcd(j, pm1))]).collect();
    let roots = RootTable::new(pm1);
    let ind = discrete_log(u, rec)?;
    let z = divisor_character_sum(rec, &coef_j, &roots, ind);
    finish_complex(u, p, rec, Method::DivisorCharacters, z, tolerance)
}

/// (phi(p-1)/(p-1)) * sum over j of coef(j) * e(j * ind / (p-1)),
/// ascending j.
fn divisor_character_sum(
    rec: &PrimeRecord,
    coef_j: &[f64],
    roots_pm1: &RootTable,
    ind: u64,
) -> Complex64 {
    let pm1 = rec.p - 1;
    let mut acc = ComplexAccumulator::new();
    let mut k = 0u64;
    let stride = ind % pm1;
    for &c in coef_j.iter() {
        if c != 0.0 {
            acc.add(roots_pm1.root(k).scale(c));
        }
        k += stride;
        if k >= pm1 {
            k -= pm1;
        }
    }
    acc.value().scale(rec.pm1.totient as f64 / pm1 as f64)
}

/// Immutable per-prime evaluation context for all-u sweeps: discrete-log
/// table, root tables, per-j character coefficients, and the p cached inner
/// additive sums. Evaluations for different u may run in parallel against a
/// shared context; results are bit-identical to the free functions.
pub struct CharContext {
    rec: PrimeRecord,
    dlog: Vec<u32>,
    coef_j: Vec<f64>,
    roots_pm1: RootTable,
    inner: Vec<Complex64>,
}

impl CharContext {
    pub fn new(rec: &PrimeRecord) -> Result<Self> {
        let p = rec.p;
        check_complex_ceiling(p)?;
        if p == 2 {
            return Ok(Self {
                rec: rec.clone(),
                dlog: vec![0, 1],
                coef_j: vec![1.0],
                roots_pm1: RootTable::new(1),
                inner: Vec::new(),
            });
        }
        let pm1 = p - 1;
        let mut dlog = vec![0u32; p as usize];
        let mut cur = 1u64;
        for n in 1..=pm1 {
            cur = crate::arith::mul_mod(cur, rec.tau, p);
            if dlog[cur as usize] != 0 {
                return Err(Error::InvalidArgument(format!(
                    "tau = {} does not generate the group mod {p}",
                    rec.tau
                )));
            }
            dlog[cur as usize] = n as u32;
        }
        let coefficients = divisor_coefficients(rec);
        let coef_j: Vec<f64> =
            (0..pm1).map(|j| coefficients[&(pm1 / gcd(j, pm1))]).collect();
        let roots_p = RootTable::new(p);
        let inner: Vec<Complex64> =
            (0..p).map(|a| inner_additive_sum(a, &roots_p)).collect();
        Ok(Self { rec: rec.clone(), dlog, coef_j, roots_pm1: RootTable::new(pm1), inner })
    }

    pub fn record(&self) -> &PrimeRecord {
        &self.rec
    }

    pub fn psi_order(&self, u: u64) -> Result<CharEvaluation> {
        psi_order(u, self.rec.p)
    }

    pub fn psi_exact(&self, u: u64) -> Result<CharEvaluation> {
        let p = self.rec.p;
        check_record(u, p, &self.rec)?;
        let hit = if p == 2 { true } else { gcd(u64::from(self.dlog[u as usize]), p - 1) == 1 };
        Ok(CharEvaluation {
            p,
            u,
            method: Method::ExactFourier,
            value: if hit { 1.0 } else { 0.0 },
            is_primitive: hit,
        })
    }

    pub fn psi_complex(&self, u: u64, tolerance: f64) -> Result<CharEvaluation> {
        let p = self.rec.p;
        check_record(u, p, &self.rec)?;
        if p == 2 {
            return psi_complex(u, p, &self.rec, tolerance);
        }
        let z = complex_double_sum(u, &self.rec, |a| self.inner[a as usize]);
        finish_complex(u, p, &self.rec, Method::ComplexFourier, z, tolerance)
    }

    pub fn psi_divisor(&self, u: u64, tolerance: f64) -> Result<CharEvaluation> {
        let p = self.rec.p;
        check_record(u, p, &self.rec)?;
        if p == 2 {
            return psi_divisor(u, p, &self.rec, tolerance);
        }
        let ind = u64::from(self.dlog[u as usize]);
        let z = divisor_character_sum(&self.rec, &self.coef_j, &self.roots_pm1, ind);
        finish_complex(u, p, &self.rec, Method::DivisorCharacters, z, tolerance)
    }
}

/// Four-way agreement sweep over every prime p <= p_max and every
/// u in [1, p-1], plus the mass identity sum over u of Psi(u) = phi(p-1).
#[derive(Clone, Debug, Serialize)]
pub struct CharSweepReport {
    pub p_max: u64,
    pub primes_checked: u64,
    pub evaluations: u64,
    pub tolerance: f64,
    /// (p, u) pairs where the order oracle and the exact route disagreed.
    pub exact_order_mismatches: u64,
    pub max_complex_residual: f64,
    pub max_divisor_residual: f64,
    pub mass_identity_failures: u64,
    pub divisor_coefficient_note: String,
}

impl CharSweepReport {
    pub fn passed(&self) -> bool {
        self.exact_order_mismatches == 0
            && self.mass_identity_failures == 0
            && self.max_complex_residual <= self.tolerance
            && self.max_divisor_residual <= self.tolerance
    }
}

const SWEEP_CHUNK: usize = 8;

/// Run the sweep. Primes are processed in fixed chunks (parallel when
/// enabled); per-prime work builds one context and walks u ascending.
pub fn sweep(records: &[PrimeRecord], tolerance: f64) -> Result<CharSweepReport> {
    struct Partial {
        evaluations: u64,
        mismatches: u64,
        max_complex: f64,
        max_divisor: f64,
        mass_failures: u64,
    }

    let partials: Vec<Result<Partial>> = exec::chunk_map(records, SWEEP_CHUNK, |chunk| {
        let mut part = Partial {
            evaluations: 0,
            mismatches: 0,
            max_complex: 0.0,
            max_divisor: 0.0,
            mass_failures: 0,
        };
        for rec in chunk {
            let ctx = CharContext::new(rec)?;
            let mut mass = 0u64;
            for u in 1..rec.p {
                let order = ctx.psi_order(u)?;
                let exact = ctx.psi_exact(u)?;
                // The complex routes self-check against psi_exact; a residual
                // above the tolerance surfaces as an error here.
                let complex = ctx.psi_complex(u, tolerance)?;
                let divisor = ctx.psi_divisor(u, tolerance)?;
                part.evaluations += 1;
                if order.is_primitive != exact.is_primitive {
                    part.mismatches += 1;
                }
                let rc = (complex.value - exact.value).abs();
                let rd = (divisor.value - exact.value).abs();
                part.max_complex = part.max_complex.max(rc);
                part.max_divisor = part.max_divisor.max(rd);
                mass += u64::from(exact.is_primitive);
            }
            if mass != rec.pm1.totient {
                part.mass_failures += 1;
            }
        }
        Ok(part)
    });

    let mut report = CharSweepReport {
        p_max: records.last().map_or(0, |r| r.p),
        primes_checked: records.len() as u64,
        evaluations: 0,
        tolerance,
        exact_order_mismatches: 0,
        max_complex_residual: 0.0,
        max_divisor_residual: 0.0,
        mass_identity_failures: 0,
        divisor_coefficient_note: DIVISOR_COEFFICIENT_NOTE.to_string(),
    };
    for part in partials {
        let part = part?;
        report.evaluations += part.evaluations;
        report.exact_order_mismatches += part.mismatches;
        report.max_complex_residual = report.max_complex_residual.max(part.max_complex);
        report.max_divisor_residual = report.max_divisor_residual.max(part.max_divisor);
        report.mass_identity_failures += part.mass_failures;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{prime_record, records_up_to, sieve_primes, PrimeTable};

    fn table() -> PrimeTable {
        sieve_primes(3_000).unwrap()
    }

    #[test]
    fn known_values_mod_7() {
        let t = table();
        let rec = prime_record(7, &t).unwrap();
        // Primitive roots mod 7 are exactly {3, 5}.
        for (u, expect) in [(1, false), (2, false), (3, true), (4, false), (5, true), (6, false)] {
            assert_eq!(psi_order(u, 7).unwrap().is_primitive, expect, "order u={u}");
            assert_eq!(psi_exact(u, 7, &rec).unwrap().is_primitive, expect, "exact u={u}");
            let c = psi_complex(u, 7, &rec, DEFAULT_TOLERANCE).unwrap();
            assert_eq!(c.is_primitive, expect, "complex u={u}");
            assert!((c.value - if expect { 1.0 } else { 0.0 }).abs() < 1e-9);
            let d = psi_divisor(u, 7, &rec, DEFAULT_TOLERANCE).unwrap();
            assert_eq!(d.is_primitive, expect, "divisor u={u}");
            assert!((d.value - if expect { 1.0 } else { 0.0 }).abs() < 1e-9);
        }
    }

    #[test]
    fn trivial_group_p2() {
        let t = table();
        let rec = prime_record(2, &t).unwrap();
        for eval in [
            psi_order(1, 2).unwrap(),
            psi_exact(1, 2, &rec).unwrap(),
            psi_complex(1, 2, &rec, DEFAULT_TOLERANCE).unwrap(),
            psi_divisor(1, 2, &rec, DEFAULT_TOLERANCE).unwrap(),
        ] {
            assert!(eval.is_primitive);
            assert_eq!(eval.value, 1.0);
        }
    }

    #[test]
    fn p3_values() {
        let t = table();
        let rec = prime_record(3, &t).unwrap();
        assert!(!psi_complex(1, 3, &rec, DEFAULT_TOLERANCE).unwrap().is_primitive);
        assert!(psi_complex(2, 3, &rec, DEFAULT_TOLERANCE).unwrap().is_primitive);
    }

    #[test]
    fn rejects_out_of_range_residues() {
        let t = table();
        let rec = prime_record(7, &t).unwrap();
        assert!(psi_order(0, 7).is_err());
        assert!(psi_order(7, 7).is_err());
        assert!(psi_exact(9, 7, &rec).is_err());
        let rec11 = prime_record(11, &t).unwrap();
        assert!(psi_exact(3, 7, &rec11).is_err());
    }

    #[test]
    fn complex_ceiling_enforced() {
        let t = sieve_primes(20_000).unwrap();
        let rec = prime_record(10_007, &t).unwrap();
        assert!(matches!(
            psi_complex(2, 10_007, &rec, DEFAULT_TOLERANCE),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(
            psi_divisor(2, 10_007, &rec, DEFAULT_TOLERANCE),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn context_matches_free_functions_bit_for_bit() {
        let t = table();
        for p in [2u64, 3, 13, 61, 97] {
            let rec = prime_record(p, &t).unwrap();
            let ctx = CharContext::new(&rec).unwrap();
            for u in 1..p {
                let free_c = psi_complex(u, p, &rec, DEFAULT_TOLERANCE).unwrap();
                let ctx_c = ctx.psi_complex(u, DEFAULT_TOLERANCE).unwrap();
                assert_eq!(free_c.value.to_bits(), ctx_c.value.to_bits(), "complex p={p} u={u}");
                let free_d = psi_divisor(u, p, &rec, DEFAULT_TOLERANCE).unwrap();
                let ctx_d = ctx.psi_divisor(u, DEFAULT_TOLERANCE).unwrap();
                assert_eq!(free_d.value.to_bits(), ctx_d.value.to_bits(), "divisor p={p} u={u}");
            }
        }
    }

    #[test]
    fn sweep_small_range_clean() {
        let t = table();
        let records = records_up_to(199, &t).unwrap();
        let report = sweep(&records, DEFAULT_TOLERANCE).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.primes_checked, 46);
        assert_eq!(report.exact_order_mismatches, 0);
        assert_eq!(report.mass_identity_failures, 0);
        assert!(report.max_complex_residual < 1e-9);
        assert!(report.max_divisor_residual < 1e-9);
    }
}
