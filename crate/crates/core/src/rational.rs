//! Exact rational scalars.
//!
//! Every computation in this crate is exact: scalars are arbitrary-precision
//! rationals, never floats.  This module fixes the scalar type and the
//! conversion conventions used across the crate, in particular the canonical
//! `"p/q"` string form used by all JSON interfaces.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// The exact scalar type: an arbitrary-precision rational number.
pub type Q = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exact fraction `n/d` (reduced).
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise, with the
/// sign on the numerator.  This is the form used in every JSON report.
pub fn q_str(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse the canonical string form produced by [`q_str`].
pub fn q_parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
    }
}

/// Exact factorial as a rational.
pub fn factorial(n: u32) -> Q {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Q::from_integer(acc)
}

/// Exact binomial coefficient `C(n, k)` for integer `n` (possibly negative,
/// via the falling-factorial definition) and `k >= 0`.
pub fn binomial(n: i64, k: u32) -> Q {
    let mut num = Q::one();
    for j in 0..k as i64 {
        num *= q(n - j);
    }
    num / factorial(k)
}

/// Decimal approximation of `x` to `digits` fractional digits, computed by
/// exact integer division (round half away from zero).  Display-only helper;
/// no computation path consumes the result.
pub fn q_decimal(x: &Q, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = x * Q::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let mag = rounded.abs();
    let (int_part, frac_part) = (mag.clone() / &scale, mag % &scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        let frac = frac_part.to_string();
        let pad = digits as usize - frac.len();
        format!("{sign}{int_part}.{}{frac}", "0".repeat(pad))
    }
}

/// `x` as `f64`, for displays that want a quick magnitude check.
pub fn q_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for s in ["0", "5", "-5", "1/3", "-4/3", "52360/3", "-12320/3"] {
            let x = q_parse(s).unwrap();
            assert_eq!(q_str(&x), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(q_parse("4/6"), Some(qr(2, 3)));
        assert_eq!(q_parse("-4/-6"), Some(qr(2, 3)));
        assert_eq!(q_parse("3/0"), None);
        assert_eq!(q_parse("x"), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), q(6));
        assert_eq!(binomial(3, 0), q(1));
        assert_eq!(binomial(2, 3), q(0));
        assert_eq!(binomial(-1, 2), q(1));
    }

    #[test]
    fn decimal_display() {
        assert_eq!(q_decimal(&qr(-5, 3), 4), "-1.6667");
        assert_eq!(q_decimal(&qr(1, 2), 0), "1");
        assert_eq!(q_decimal(&q(2), 3), "2.000");
    }
}
