//! Exact scalars and half-integer degrees.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational scalar. Always reduced with a positive denominator.
pub type Rational = BigRational;

/// A density weight (λ, μ or δ = μ − λ).
pub type Weight = Rational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`. Decimals are rejected to keep inputs exact.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let t = text.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("invalid rational literal `{t}`"),
    };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("zero denominator in `{t}`"),
        });
    }
    Ok(Rational::new(num, den))
}

/// Renders as `p` or `p/q` in lowest terms.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A non-negative half-integer, stored doubled: `HalfInt(3)` is 3/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(pub u32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);

    pub fn from_twice(twice: u32) -> Self {
        HalfInt(twice)
    }

    pub fn from_int(n: u32) -> Self {
        HalfInt(2 * n)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Integer part.
    pub fn floor(self) -> u32 {
        self.0 / 2
    }

    pub fn to_rational(self) -> Rational {
        rat(self.0 as i64, 2)
    }

    /// `self - other`, or `None` when negative.
    pub fn checked_sub(self, other: HalfInt) -> Option<HalfInt> {
        self.0.checked_sub(other.0).map(HalfInt)
    }

    /// All half-integers `0, 1/2, ..., self` in increasing order.
    pub fn steps_up_to(self) -> impl DoubleEndedIterator<Item = HalfInt> {
        (0..=self.0).map(HalfInt)
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;

    fn add(self, other: HalfInt) -> HalfInt {
        HalfInt(self.0 + other.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r = parse_rational(s)?;
        let doubled = r * int(2);
        if !doubled.is_integer() || doubled.is_negative() {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("`{s}` is not a non-negative half-integer"),
            });
        }
        let v: u32 = doubled
            .to_integer()
            .try_into()
            .map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("`{s}` is out of range"),
            })?;
        Ok(HalfInt(v))
    }
}
