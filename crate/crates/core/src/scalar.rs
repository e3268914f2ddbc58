//! Integer types usable behind exact rational scores.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed};

use crate::error::{Error, Result};

/// Signed integer type usable as the numerator/denominator of a score.
///
/// Implemented for `i64`, `i128` and `num_bigint::BigInt`.
pub trait ExactInt:
    Integer + Signed + Clone + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync
{
}

impl<T> ExactInt for T where
    T: Integer + Signed + Clone + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync
{
}

pub(crate) fn int<T: ExactInt>(x: i128) -> Result<T> {
    T::from_i128(x).ok_or(Error::Overflow)
}

pub(crate) fn ratio<T: ExactInt>(num: i128, den: i128) -> Result<Ratio<T>> {
    Ok(Ratio::new(int(num)?, int(den)?))
}

/// Formats a rational as `num/den` in lowest terms, always with a denominator.
pub fn format_rational<T: ExactInt>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_rational<T: ExactInt + std::str::FromStr>(text: &str) -> Option<Ratio<T>> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: T = n.trim().parse().ok()?;
            let d: T = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Ratio::new(n, d))
        }
        None => Some(Ratio::from_integer(text.parse().ok()?)),
    }
}
