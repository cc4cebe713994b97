//! Compensated (Kahan) summation for real and complex accumulators.

use num::complex::Complex64;
use serde::Serialize;

/// Kahan accumulator: `sum` carries the running total, `compensation` the
/// low-order bits lost to rounding. Error after n additions is O(eps), not
/// O(n·eps), provided no single term dwarfs the running sum catastrophically.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Complex compensated accumulator: one Kahan track per component.
/// Addition order is the caller's iteration order, which every summation in
/// this crate fixes explicitly — results are bit-reproducible.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexAccumulator {
    re: KahanSum,
    im: KahanSum,
}

impl ComplexAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    #[inline]
    pub fn magnitude(&self) -> f64 {
        self.value().norm()
    }
}
