//! Exact-arithmetic toolkit for Belyi maps on the projective line over ℚ,
//! heights and radicals of abc triples, and S-integral points on genus-0
//! affine curves.
//!
//! Module map:
//!
//! - [`exact`]: big integers, rationals, integer factorization, valuations, certified logs.
//! - [`upoly`]: polynomials and rational functions over ℚ, factorization, divisors, ramification.
//! - [`belyi`]: Belyi certificates and the explicit construction on P¹.
//! - [`heights`]: projective heights, radicals, abc checking and scanning.
//! - [`siegel`]: S-integral points, fiber-divisor decomposition, bad primes and audits.

pub mod belyi;
pub mod error;
pub mod exact;
pub mod heights;
pub mod siegel;
pub mod upoly;

pub use error::{Error, Result};
