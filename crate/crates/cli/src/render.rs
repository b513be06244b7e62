//! Decimal rendering of exact rationals. Exact numerators and denominators
//! travel through the tables untouched; this is presentation only.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use wecken_core::formulas::Exact;

/// Rounds `value` to `sig` significant digits (half away from zero) and
/// renders it in plain decimal notation, trailing fractional zeros trimmed.
pub fn decimal_string(value: &Exact, sig: usize) -> String {
    let sig = sig.max(1);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let num = value.numer().abs();
    let den = value.denom().abs();

    // Exponent of the leading significant digit: 10^exp <= |value| < 10^(exp+1).
    let int_part: BigInt = &num / &den;
    let exp: i64 = if !int_part.is_zero() {
        int_part.to_string().len() as i64 - 1
    } else {
        let mut scaled = num.clone();
        let mut exp = 0i64;
        loop {
            scaled *= 10;
            exp -= 1;
            if scaled >= den {
                break exp;
            }
        }
    };

    // Keep `t` digits after the decimal point (negative: round above it).
    let t = sig as i64 - 1 - exp;
    let (scaled_num, scaled_den) = if t >= 0 {
        (num * BigInt::from(10).pow(t as u32), den)
    } else {
        (num, den * BigInt::from(10).pow((-t) as u32))
    };
    let rounded: BigInt = (scaled_num * 2 + &scaled_den) / (scaled_den * 2);
    let digits = rounded.to_string();

    let text = if t <= 0 {
        format!("{}{}", digits, "0".repeat((-t) as usize))
    } else {
        let t = t as usize;
        let padded = if digits.len() <= t {
            format!("{}{}", "0".repeat(t + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_str, frac_str) = padded.split_at(padded.len() - t);
        let frac_trimmed = frac_str.trim_end_matches('0');
        if frac_trimmed.is_empty() {
            int_str.to_string()
        } else {
            format!("{int_str}.{frac_trimmed}")
        }
    };
    if negative {
        format!("-{text}")
    } else {
        text
    }
}
