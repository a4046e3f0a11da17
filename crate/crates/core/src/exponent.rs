//! Exponents on a ramified grid `(1/ρ)·ℤ`.
//!
//! An exponent is stored as a reduced fraction `num/den` with `den ≥ 1`.
//! Comparison is by cross-multiplication, never through floating point.
//! `den = 1` is an ordinary Laurent exponent; `den = 2` appears after the
//! substitution `t = √z`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_rational::Rational64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RamifiedExponent {
    num: i64,
    den: u32,
}

impl RamifiedExponent {
    /// Reduced exponent `num/den`. Panics on `den = 0`.
    pub fn new(num: i64, den: u32) -> Self {
        assert!(den > 0, "ramification must be positive");
        let g = num.unsigned_abs().gcd(&u64::from(den));
        if g <= 1 {
            return Self { num, den };
        }
        Self {
            num: num / g as i64,
            den: den / g as u32,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// One grid step of size `1/ram` downward.
    pub fn step_down(&self, ram: u32) -> Self {
        *self - Self::new(1, ram)
    }

    /// Scale by an integer (used when substituting `z = t^m`).
    pub fn times(&self, k: i64) -> Self {
        Self::new(
            self.num.checked_mul(k).expect("exponent overflow"),
            self.den,
        )
    }

    /// Exact value as a `Rational64` (for slope arithmetic).
    pub fn as_ratio(&self) -> Rational64 {
        Rational64::new(self.num, i64::from(self.den))
    }

    /// Numerator on the grid `(1/ram)·ℤ`; errors if the exponent does not lie
    /// on that grid.
    pub fn numerator_on(&self, ram: u32) -> Option<i64> {
        if !ram.is_multiple_of(self.den) {
            return None;
        }
        Some(self.num * i64::from(ram / self.den))
    }
}

impl Add for RamifiedExponent {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let den = i64::from(self.den).lcm(&i64::from(rhs.den));
        let num = self.num * (den / i64::from(self.den)) + rhs.num * (den / i64::from(rhs.den));
        Self::new(num, den as u32)
    }
}

impl Sub for RamifiedExponent {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for RamifiedExponent {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Ord for RamifiedExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = i128::from(self.num) * i128::from(other.den);
        let rhs = i128::from(other.num) * i128::from(self.den);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for RamifiedExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RamifiedExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
