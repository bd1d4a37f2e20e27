//! Scalars: arbitrary-precision integers and fractions.
//!
//! `Rational` is `num_rational::BigRational`, which is kept in lowest terms
//! with a positive denominator. Its `Display` already prints integers without
//! a denominator (`"3"`, not `"3/1"`), which is the wire format used
//! throughout.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serializer;

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Integer {
    BigInt::from(n)
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(n.into())
}

/// `"num/den"`, or plain `"n"` for integers.
pub fn to_exact_string(r: &Rational) -> String {
    r.to_string()
}

/// Floor of a rational as a big integer.
pub fn floor(r: &Rational) -> Integer {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rational) -> Integer {
    -((-r.numer()).div_floor(r.denom()))
}

/// Decimal rendering with `sig` significant digits, rounded half away from
/// zero. Computed exactly from the fraction.
pub fn to_decimal(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = (a.numer().bits() as i64 - a.denom().bits() as i64) * 3 / 10;
    let ten = rat_int(10);
    loop {
        let p = pow10(e);
        if a < p {
            e -= 1;
        } else if a >= &p * &ten {
            e += 1;
        } else {
            break;
        }
    }
    let shift = sig as i64 - 1 - e;
    let scaled = &a * pow10(shift);
    let mut digits = floor(&(scaled + rat(1, 2)));
    let mut shift = shift;
    if digits.to_string().len() > sig {
        digits /= 10;
        shift -= 1;
    }
    let mut s = digits.to_string();
    let out = if shift <= 0 {
        s.push_str(&"0".repeat((-shift) as usize));
        s
    } else {
        let shift = shift as usize;
        if s.len() <= shift {
            let pad = "0".repeat(shift - s.len());
            format!("0.{pad}{s}")
        } else {
            let (ip, fp) = s.split_at(s.len() - shift);
            format!("{ip}.{fp}")
        }
    };
    if neg {
        format!("-{out}")
    } else {
        out
    }
}

fn pow10(e: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
    if e >= 0 {
        rat_int(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"27/7"`, `"-3"`, `"0.125"` or `"1e-6"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}").parse().map_err(|_| bad())?;
    let mut v = rat_int(digits) * pow10(exp - fp.len() as i64);
    if neg {
        v = -v;
    }
    Ok(v)
}

pub(crate) fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&to_exact_string(r))
}

pub(crate) fn serialize_integer<S: Serializer>(n: &Integer, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}
