//! Exact quantum numbers of the collective rotation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::scalar::{lit, Real};

/// An integer or half-odd-integer, stored exactly as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn to_real<T: Real>(self) -> T {
        lit::<T>(self.twice as f64) / lit(2.0)
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl std::str::FromStr for HalfInt {
    type Err = String;

    /// Accepts `3`, `-1/2` or `2.5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            match den.trim() {
                "1" => Ok(HalfInt::from_int(num)),
                "2" => Ok(HalfInt::from_twice(num)),
                _ => Err(format!("{s}: denominator must be 1 or 2")),
            }
        } else if let Ok(n) = s.parse::<i64>() {
            Ok(HalfInt::from_int(n))
        } else {
            let x: f64 = s.parse().map_err(|e| format!("{s}: {e}"))?;
            let twice = 2.0 * x;
            if twice.fract() != 0.0 || twice.abs() > 1e15 {
                return Err(format!("{s}: not an integer or half-integer"));
            }
            Ok(HalfInt::from_twice(twice as i64))
        }
    }
}

/// Ordering helper for sorting by distance from a real flux value.
pub(crate) fn cmp_distance(a: HalfInt, b: HalfInt, alpha: f64) -> Ordering {
    let da = (a.to_f64() - alpha).abs();
    let db = (b.to_f64() - alpha).abs();
    da.partial_cmp(&db).unwrap_or(Ordering::Equal).then(a.cmp(&b))
}
