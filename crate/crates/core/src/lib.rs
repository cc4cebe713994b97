//! Verification laboratory for the analytic number theory of primitive roots
//! over primes with squarefree totient.
//!
//! The library cross-checks every quantity it computes along independent routes:
//! the characteristic function of primitive roots is evaluated four ways
//! ([`charfn`]), exponential-sum magnitudes are measured against both claimed
//! and provable bounds ([`expsums`]), prime censuses are decomposed into exact
//! rational main/error terms that must cancel to zero ([`census`]), and
//! Euler-product density constants carry rigorous tail bounds ([`constants`]).
//!
//! All randomness is seed-driven and all reductions use fixed chunk sizes and
//! fixed-shape merge trees, so every result is byte-reproducible regardless of
//! thread count or whether the `parallel` feature is enabled.

pub mod arith;
pub mod census;
pub mod charfn;
pub mod constants;
pub mod error;
pub mod exec;
pub mod expsums;
pub mod kahan;
mod roots;

pub use error::{Error, Result};
