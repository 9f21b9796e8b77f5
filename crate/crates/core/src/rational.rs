//! Exact scalar helpers on top of `BigRational`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// `num / den` as a reduced rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

pub fn from_biguint(n: BigUint) -> Rational {
    Rational::from_integer(BigInt::from_biguint(Sign::Plus, n))
}

/// `x^e` for a non-negative exponent.
pub fn pow(x: &Rational, e: usize) -> Rational {
    num_traits::pow(x.clone(), e)
}

/// Always `numer/denom`, including integers (`5/1`).
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `a/b` or a bare integer `a`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Truncated decimal expansion with `digits` fractional digits (rounded toward zero).
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (r.numer().abs() * &scale) / r.denom();
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let sign = if r.is_negative() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac_part.to_string();
    format!("{sign}{int_part}.{}{frac}", "0".repeat(digits - frac.len()))
}

fn floor_log2(x: &Rational) -> i64 {
    // x > 0
    let n = x.numer().bits() as i64;
    let d = x.denom().bits() as i64;
    let mut e = n - d;
    // 2^(n-1) <= num < 2^n, 2^(d-1) <= den < 2^d, so log2(x) lies in (e-1, e+1)
    if pow2(e) > *x {
        e -= 1;
    }
    e
}

fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << (e as usize))
    } else {
        Rational::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

/// Largest dyadic rational `<= x` with at most `bits` significant bits.
pub fn round_down_sig(x: &Rational, bits: u32) -> Rational {
    round_sig(x, bits, false)
}

/// Smallest dyadic rational `>= x` with at most `bits` significant bits.
pub fn round_up_sig(x: &Rational, bits: u32) -> Rational {
    round_sig(x, bits, true)
}

fn round_sig(x: &Rational, bits: u32, up: bool) -> Rational {
    if x.is_zero() {
        return x.clone();
    }
    if x.is_negative() {
        return -round_sig(&-x, bits, !up);
    }
    let shift = bits as i64 - 1 - floor_log2(x);
    let scale = pow2(shift);
    let scaled = x * &scale;
    let r = if up { scaled.ceil() } else { scaled.floor() };
    r / scale
}
