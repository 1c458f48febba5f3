//! Exact rationals.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses `p`, `-p` or `p/q` (optionally signed) into a reduced rational.
pub fn parse(text: &str) -> Option<Rat> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).ok()?;
            let den = BigInt::from_str(den.trim()).ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rat::new(num, den))
        }
        None => BigInt::from_str(text).ok().map(Rat::from_integer),
    }
}

/// Exact text form: `p` for integers, `p/q` otherwise.
pub fn show(r: &Rat) -> String {
    r.to_string()
}

pub fn show_point(point: &[Rat]) -> String {
    let parts: Vec<String> = point.iter().map(show).collect();
    format!("({})", parts.join(", "))
}

pub fn max(a: &Rat, b: &Rat) -> Rat {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}
