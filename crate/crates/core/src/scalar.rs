//! Scalar fields used throughout the crate.
//!
//! Every geometric routine is generic over [`Scalar`]. Two instances exist:
//! [`Rational`] (arbitrary precision, exact zero test) and `f64` (used by the
//! convex solver, zero test with a tolerance).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Exact rational with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// Absolute tolerance used by the float instance, relative to a caller-supplied scale.
pub const FLOAT_EPS: f64 = 1e-10;

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True when the arithmetic is exact.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;

    /// Zero test. `scale` is the magnitude of the quantities that produced
    /// `self`; exact scalars ignore it.
    fn is_negligible(&self, scale: f64) -> bool;

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// -1, 0 or 1 under the same zero test as [`Scalar::is_negligible`].
    fn sign(&self, scale: f64) -> i8 {
        if self.is_negligible(scale) {
            0
        } else if *self > Self::zero() {
            1
        } else {
            -1
        }
    }

    /// Rescales a homogeneous tuple to its canonical representative in place.
    ///
    /// Exact: coprime integers whose first nonzero entry is positive.
    /// Float: unit max-norm with positive first significant entry.
    fn normalize_homogeneous(coords: &mut [Self]);
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).expect("finite float")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn normalize_homogeneous(coords: &mut [Self]) {
        let Some(lead) = coords.iter().find(|c| !c.is_zero()).cloned() else {
            return;
        };
        let mut denom_lcm = BigInt::one();
        for c in coords.iter_mut() {
            *c = &*c / &lead;
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        let ints: Vec<BigInt> = coords
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        for i in &ints {
            num_gcd = num_gcd.gcd(i);
        }
        for (c, i) in coords.iter_mut().zip(ints) {
            *c = Rational::from_integer(i / &num_gcd);
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= FLOAT_EPS * scale.max(1.0)
    }

    fn normalize_homogeneous(coords: &mut [Self]) {
        let max = coords.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        if max == 0.0 {
            return;
        }
        let lead = coords
            .iter()
            .copied()
            .find(|c| c.abs() > FLOAT_EPS * max)
            .unwrap_or(max);
        let s = lead.signum() / max;
        for c in coords.iter_mut() {
            *c *= s;
        }
    }
}

/// Largest absolute value of a slice, as a float. Used as the tolerance scale.
pub fn magnitude<S: Scalar>(v: &[S]) -> f64 {
    v.iter().fold(0.0f64, |m, c| m.max(c.to_f64().abs()))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Converts a slice of small integers into rationals.
pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Parses `a`, `a/b`, or a finite decimal such as `-0.25`, exactly.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let frac = BigInt::from_str(frac).map_err(|_| bad())?;
        let frac = if negative { -frac } else { frac };
        return Ok(Rational::new(whole * &scale + frac, scale));
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

/// Formats a rational as `a` or `a/b`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True when all entries of a rational tuple are integers.
pub fn all_integral(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_integer())
}

/// Sign of a rational.
pub fn rsign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}
