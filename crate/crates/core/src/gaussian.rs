//! Gaussian rationals: the coefficient field.
//!
//! `re + im·i` with both parts arbitrary-precision rationals, always stored
//! reduced with positive denominator (num-rational maintains that form).
//! Equality is exact structural equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|self|²`, an exact nonnegative rational.
    pub fn abs_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = self.abs_sq();
        Self::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv()
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Formats one part of an imaginary term without its sign: `i`, `3*i`, `2/5*i`.
fn fmt_im_abs(im: &BigRational) -> String {
    let a = im.abs();
    if a.is_one() {
        "i".to_string()
    } else {
        format!("{}*i", fmt_rat(&a))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{}{}", sign, fmt_im_abs(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}", fmt_rat(&self.re), sign, fmt_im_abs(&self.im))
    }
}

/// Parses constants like `2`, `-3/2`, `i`, `-i`, `3i`, `2+3i`, `1/2-2/3i`.
/// A trailing `i` may optionally be written `*i`.
impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Invalid {
                detail: "empty constant".into(),
            });
        }
        // Split an optional second signed part. Skip index 0 so a leading
        // sign stays attached to the first part.
        let bytes = text.as_bytes();
        let mut split = None;
        for idx in 1..bytes.len() {
            if (bytes[idx] == b'+' || bytes[idx] == b'-') && bytes[idx - 1] != b'/' {
                split = Some(idx);
            }
        }
        let parse_rat = |part: &str| -> Result<BigRational, Error> {
            let (num, den) = match part.split_once('/') {
                Some((n, d)) => (n, d),
                None => (part, "1"),
            };
            let n = BigInt::from_str(num).map_err(|_| Error::Invalid {
                detail: format!("bad rational `{part}`"),
            })?;
            let d = BigInt::from_str(den).map_err(|_| Error::Invalid {
                detail: format!("bad rational `{part}`"),
            })?;
            if d.is_zero() {
                return Err(Error::Invalid {
                    detail: format!("zero denominator in `{part}`"),
                });
            }
            Ok(BigRational::new(n, d))
        };
        let parse_part = |part: &str| -> Result<(BigRational, bool), Error> {
            if let Some(head) = part.strip_suffix('i') {
                let head = head.strip_suffix('*').unwrap_or(head);
                let r = match head {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    other => parse_rat(other)?,
                };
                Ok((r, true))
            } else {
                Ok((parse_rat(part)?, false))
            }
        };
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        let parts: Vec<&str> = match split {
            Some(idx) => vec![&text[..idx], &text[idx..]],
            None => vec![text.as_str()],
        };
        let mut seen_re = false;
        let mut seen_im = false;
        for part in parts {
            let (value, imaginary) = parse_part(part)?;
            if imaginary {
                if seen_im {
                    return Err(Error::Invalid {
                        detail: format!("two imaginary parts in `{s}`"),
                    });
                }
                im = value;
                seen_im = true;
            } else {
                if seen_re {
                    return Err(Error::Invalid {
                        detail: format!("two real parts in `{s}`"),
                    });
                }
                re = value;
                seen_re = true;
            }
        }
        Ok(Self::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
        let z = GaussianRational::from_str("2+3i").unwrap();
        assert_eq!(&z * &z.inv(), GaussianRational::one());
        assert_eq!(z.abs_sq(), BigRational::from_integer(BigInt::from(13)));
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in ["2", "-3/2", "i", "-i", "3*i", "2+3*i", "1/2-2/3*i", "-1+i"] {
            let v = GaussianRational::from_str(s).unwrap();
            let again = GaussianRational::from_str(&v.to_string()).unwrap();
            assert_eq!(v, again, "roundtrip failed for {s}");
        }
    }

    #[test]
    fn pow_of_i_cycles() {
        let i = GaussianRational::i();
        assert_eq!(i.pow(4), GaussianRational::one());
        assert_eq!(i.pow(2), GaussianRational::from_int(-1));
    }
}
