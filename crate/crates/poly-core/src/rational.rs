//! Helpers around `BigRational`: literals, parsing, formatting, rounding.

use crate::error::PolyError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer as a rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den` as a rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"-3"`, `"1/6"` or `"+7/2"`.
pub fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let bad = || PolyError::BadRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
/// Like [`parse_rational`], but also takes exact decimals with an optional
/// exponent: `"0.031999"`, `"1e-5"`, `"-2.5E3"`.
pub fn parse_number(s: &str) -> Result<BigRational, PolyError> {
    let t = s.trim();
    if t.contains('/') || !t.contains(['.', 'e', 'E']) {
        return parse_rational(t);
    }
    let bad = || PolyError::BadRational(s.to_string());
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let r = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(if neg { -r } else { r })
}

/// Serde adapter storing a rational as a `"p/q"` string.
pub mod as_string {
    use super::{format_rational, parse_rational};
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via continued fractions.
pub fn round_to_rational(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let mut y = x.abs();
    // convergents h/k
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let max_den = max_den as i128;
    let mut best = (y.round() as i128, 1i128);
    for _ in 0..64 {
        let a = y.floor();
        if a > 1e18 {
            break;
        }
        let a = a as i128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den {
            // semiconvergent check
            let m = (max_den - k0) / k1.max(1);
            if m > 0 {
                let hs = m * h1 + h0;
                let ks = m * k1 + k0;
                let e_semi = (x.abs() - hs as f64 / ks as f64).abs();
                let e_conv = (x.abs() - h1 as f64 / k1 as f64).abs();
                if e_semi < e_conv {
                    best = (hs, ks);
                }
            }
            break;
        }
        best = (h2, k2);
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = y - a as f64;
        if frac < 1e-300 {
            break;
        }
        y = 1.0 / frac;
    }
    let (h, k) = best;
    let r = BigRational::new(BigInt::from(h), BigInt::from(k));
    Some(if neg { -r } else { r })
}

/// Simplest continued-fraction convergent of `x` within `tol`, with
/// denominator at most `max_den`.
pub fn simplest_rational(x: f64, tol: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let mut y = x.abs();
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    for _ in 0..64 {
        let a = y.floor();
        if a > 1e18 {
            return None;
        }
        let a = a as i128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den as i128 {
            return None;
        }
        if (x.abs() - h2 as f64 / k2 as f64).abs() <= tol {
            let r = BigRational::new(BigInt::from(h2), BigInt::from(k2));
            return Some(if x < 0.0 { -r } else { r });
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a as f64;
        if frac < 1e-300 {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `r^e` for a non-negative exponent.
pub fn pow(r: &BigRational, e: u32) -> BigRational {
    num_traits::pow::pow(r.clone(), e as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert_eq!(parse_rational("2/12").unwrap(), ratio(1, 6));
        assert_eq!(format_rational(&ratio(-4, 6)), "-2/3");
        assert_eq!(format_rational(&rat(5)), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(parse_number("0.031999").unwrap(), ratio(31999, 1_000_000));
        assert_eq!(parse_number("1e-5").unwrap(), ratio(1, 100_000));
        assert_eq!(parse_number("-2.5E3").unwrap(), rat(-2500));
        assert_eq!(parse_number(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_number("7/2").unwrap(), ratio(7, 2));
        assert!(parse_number("1.2.3").is_err());
        assert!(parse_number("e5").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn continued_fraction_rounding() {
        assert_eq!(round_to_rational(1063.0 / 592.0, 1_000_000).unwrap(), ratio(1063, 592));
        assert_eq!(round_to_rational(-2.0 / 3.0 + 1e-13, 1_000_000).unwrap(), ratio(-2, 3));
        assert_eq!(round_to_rational(0.0, 10).unwrap(), rat(0));
        assert_eq!(simplest_rational(0.6666691, 1e-5, 10_000).unwrap(), ratio(2, 3));
        assert_eq!(simplest_rational(-1.000003, 1e-5, 10_000).unwrap(), rat(-1));
        assert!(simplest_rational(std::f64::consts::PI, 1e-12, 100).is_none());
        let pi = round_to_rational(std::f64::consts::PI, 1000).unwrap();
        assert_eq!(pi, ratio(355, 113));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::from(0));
    }
}
