//! Exact rational accumulation with factored denominators.
//!
//! Summing many fractions with a general-purpose rational type reduces by gcd
//! on every addition; with thousands of terms whose denominators share most
//! of their prime content, that is quadratically wasteful. Here a sum is kept
//! as numerator / Π q^e with the denominator as an exponent map, merges take
//! least common multiples by comparing exponents, and a single gcd reduction
//! happens at the very end in [`ExactSum::to_ratio`].

use crate::exec;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// An exact rational numer / Π q^e under construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactSum {
    numer: BigInt,
    den: BTreeMap<u64, u32>,
}

impl ExactSum {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The term numer / Π q^e. Factor bases must be distinct; zero exponents
    /// are dropped.
    pub fn term(numer: impl Into<BigInt>, den_factors: &[(u64, u32)]) -> Self {
        let mut den = BTreeMap::new();
        for &(q, e) in den_factors {
            if e > 0 {
                *den.entry(q).or_insert(0) += e;
            }
        }
        Self { numer: numer.into(), den }
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// Add `other` into self over the lcm of the two denominators.
    pub fn add(&mut self, other: &Self) {
        let mut target = self.den.clone();
        for (&q, &e) in &other.den {
            let t = target.entry(q).or_insert(0);
            *t = (*t).max(e);
        }
        let scale_self = scale_to(&self.den, &target);
        let scale_other = scale_to(&other.den, &target);
        self.numer = &self.numer * scale_self + &other.numer * scale_other;
        self.den = target;
    }

    /// Reduce to a canonical rational; the single gcd of the whole
    /// computation.
    pub fn to_ratio(&self) -> BigRational {
        let mut d = BigInt::one();
        for (&q, &e) in &self.den {
            d *= num::pow::pow(BigInt::from(q), e as usize);
        }
        BigRational::new(self.numer.clone(), d)
    }
}

fn scale_to(from: &BTreeMap<u64, u32>, target: &BTreeMap<u64, u32>) -> BigInt {
    let mut s = BigInt::one();
    for (&q, &te) in target {
        let fe = from.get(&q).copied().unwrap_or(0);
        if te > fe {
            s *= num::pow::pow(BigInt::from(q), (te - fe) as usize);
        }
    }
    s
}

/// Fold a list of terms with the fixed-shape merge tree, so parallel and
/// sequential builds produce the same (exact) result along the same shapes.
pub fn sum_terms(terms: Vec<ExactSum>) -> ExactSum {
    exec::tree_fold(terms, |mut a, b| {
        a.add(&b);
        a
    })
    .unwrap_or_else(ExactSum::zero)
}

/// Round an exact rational to the nearest f64, robust to numerators and
/// denominators far beyond f64 range: the quotient is computed to ~96
/// significant bits and scaled back by the applied shift.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.numer().is_zero() {
        return 0.0;
    }
    let neg = r.numer().is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    let shift = (den.bits() as i64 - num.bits() as i64 + 96).max(0) as usize;
    let q = (num << shift) / den;
    let qf = q.to_f64().unwrap_or(f64::INFINITY);
    let v = qf * 2f64.powi(-(shift.min(i32::MAX as usize) as i32));
    if neg {
        -v
    } else {
        v
    }
}
