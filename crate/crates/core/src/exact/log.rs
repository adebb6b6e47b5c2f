use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Significant digits used for every logarithm that appears in a report.
pub const REPORT_DIGITS: usize = 15;

/// Decimal approximation of a natural logarithm.
///
/// `value` is the exact decimal truncation of the true logarithm to
/// `decimals` places: `value <= ln n < value + 10^-decimals`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogApprox {
    pub value: String,
    pub decimals: usize,
}

impl LogApprox {
    pub fn to_f64(&self) -> f64 {
        self.value.parse().expect("decimal literal")
    }

    /// Exact enclosure `[value, value + 10^-decimals]` of the logarithm.
    pub fn bounds(&self) -> (BigRational, BigRational) {
        let digits: BigInt = self.value.replace('.', "").parse().expect("decimal literal");
        let scale = num_traits::pow(BigInt::from(10), self.decimals);
        let lo = BigRational::new(digits.clone(), scale.clone());
        (lo, BigRational::new(digits + 1, scale))
    }
}

/// `2^w * atanh(z)` for `z = zfp / 2^w`, plus an error bound in ulps.
fn atanh_fixed(zfp: &BigInt, w: u64) -> (BigInt, u64) {
    let z2 = (zfp * zfp) >> w;
    let mut term = zfp.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    let mut terms = 0u64;
    while !term.is_zero() {
        sum += &term / k;
        term = (term * &z2) >> w;
        k += 2;
        terms += 1;
    }
    (sum, 3 * terms + 3)
}

/// `2^w * ln(n)` with an error bound in ulps.
fn ln_fixed(n: &BigUint, w: u64) -> (BigInt, u64) {
    let k = n.bits() - 1;
    let n = BigInt::from(n.clone());
    let pk = BigInt::one() << k;
    let zfp = ((&n - &pk) << w) / (&n + &pk);
    let (at_y, err_y) = atanh_fixed(&zfp, w);
    let third = (BigInt::one() << w) / 3;
    let (at_2, err_2) = atanh_fixed(&third, w);
    let value = (at_2 * BigInt::from(k) + at_y) * 2;
    let err = 2 * (err_2 * (k + 1) + err_y + 2);
    (value, err)
}

/// Natural logarithm of a positive integer, truncated (not rounded) to
/// `digits` significant digits. Precision is raised until the truncation is
/// certified by the error bound.
pub fn log_approx(n: &BigInt, digits: usize) -> Result<LogApprox> {
    if !n.is_positive() {
        return domain(format!("log of non-positive integer {n}"));
    }
    if n.is_one() {
        return Ok(LogApprox {
            value: "0".into(),
            decimals: 0,
        });
    }
    let digits = digits.max(1);
    let mag = n.magnitude();
    // ln n < bits(n); the integer part has at most this many decimal digits
    let int_digits_max = (mag.bits() as f64).log10().floor() as u64 + 1;
    let mut w = 64 + ((digits as u64 + int_digits_max) as f64 * 3.33).ceil() as u64;
    loop {
        let (v, e) = ln_fixed(mag, w);
        let int_part = &v >> w;
        let decimals = if int_part.is_zero() {
            digits
        } else {
            digits.saturating_sub(int_part.to_string().len())
        };
        let scale = num_traits::pow(BigInt::from(10), decimals);
        let lo = ((&v - BigInt::from(e)) * &scale) >> w;
        let hi = ((&v + BigInt::from(e)) * &scale) >> w;
        if lo == hi {
            let mut s = lo.to_string();
            if decimals > 0 {
                if s.len() <= decimals {
                    s = format!("{}{}", "0".repeat(decimals + 1 - s.len()), s);
                }
                s.insert(s.len() - decimals, '.');
            }
            return Ok(LogApprox { value: s, decimals });
        }
        w += 64;
    }
}

/// Report-grade `ln n` as a float (15 significant digits, truncated).
pub fn log_f64(n: &BigInt) -> f64 {
    if let Some(v) = n.to_u64() {
        if v == 1 {
            return 0.0;
        }
    }
    log_approx(n, REPORT_DIGITS)
        .map(|l| l.to_f64())
        .unwrap_or(f64::NAN)
}
