//! Exact rational arithmetic used for every density and mean-cycle value.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExactRational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_counts(count: u64, total: u64) -> Self {
        assert!(total != 0, "zero denominator");
        ExactRational(BigRational::new(BigInt::from(count), BigInt::from(total)))
    }

    pub fn from_integer(n: i64) -> Self {
        ExactRational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Self {
        ExactRational(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Compares against an `f64` threshold without rounding the rational.
    pub fn cmp_f64(&self, x: f64) -> Option<Ordering> {
        let other = BigRational::from_float(x)?;
        Some(self.0.cmp(&other))
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(String::from("expected a rational of the form p/q: ") + s);
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(ExactRational(BigRational::new(num, den)))
    }
}

impl ExactRational {
    /// The `p/q` text form used in certificates.
    pub fn to_ratio_string(&self) -> String {
        self.to_string()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl core::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}
