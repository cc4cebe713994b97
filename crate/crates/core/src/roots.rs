//! Precomputed complex roots of unity.
//!
//! Summations over e^(2*pi*i*k/n) index into one table built per modulus
//! instead of rotating a running phase, so no rounding drift accumulates and
//! every term's value is independent of iteration order.

use num::complex::Complex64;

pub(crate) struct RootTable {
    n: u64,
    roots: Vec<Complex64>,
}

impl RootTable {
    /// Table of e^(2*pi*i*k/n) for k in [0, n).
    pub fn new(n: u64) -> Self {
        assert!(n >= 1);
        let step = 2.0 * std::f64::consts::PI / n as f64;
        let roots = (0..n)
            .map(|k| {
                let (s, c) = (step * k as f64).sin_cos();
                Complex64::new(c, s)
            })
            .collect();
        Self { n, roots }
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.n
    }

    /// Root for an already-reduced index k in [0, n).
    #[inline]
    pub fn root(&self, k: u64) -> Complex64 {
        self.roots[k as usize]
    }
}
