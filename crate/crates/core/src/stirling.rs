//! Stirling transition matrices between operator bases.
//!
//! In the vector space of linear differential operators the two natural
//! bases are the Euler powers `D^j` (`D = z·d/dz`) and the weighted
//! derivatives `z^j·d^j/dz^j`. They are related by
//!
//! ```text
//! D^j            = Σ_k S(j,k) · z^k d^k/dz^k          (second kind)
//! z^j d^j/dz^j   = Σ_k s(j,k) · D^k                   (signed first kind)
//! ```
//!
//! where `s(j,k) = (-1)^{j-k}·c(j,k)` are the falling-factorial coefficients.
//! Both matrices are lower triangular with unit diagonal and are mutually
//! inverse; both facts are enforced by tests against the action on monomials
//! (`z^j d^j/dz^j` acts on `z^m` as `m(m-1)⋯(m-j+1)`, `D` as `m`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub struct StirlingTables {
    max: usize,
    s2: Vec<Vec<BigInt>>,
    s1_signed: Vec<Vec<BigInt>>,
}

impl StirlingTables {
    /// Tables for all `0 ≤ k ≤ j ≤ max`.
    pub fn new(max: usize) -> Self {
        let n = max + 1;
        let mut s2 = vec![vec![BigInt::zero(); n]; n];
        let mut s1 = vec![vec![BigInt::zero(); n]; n];
        s2[0][0] = BigInt::one();
        s1[0][0] = BigInt::one();
        for j in 1..n {
            for k in 1..=j {
                // S(j,k) = S(j-1,k-1) + k·S(j-1,k)
                s2[j][k] = &s2[j - 1][k - 1] + BigInt::from(k) * &s2[j - 1][k];
                // s(j,k) = s(j-1,k-1) - (j-1)·s(j-1,k)
                s1[j][k] = &s1[j - 1][k - 1] - BigInt::from(j - 1) * &s1[j - 1][k];
            }
        }
        Self {
            max,
            s2,
            s1_signed: s1,
        }
    }

    pub fn max(&self) -> usize {
        self.max
    }

    /// Stirling number of the second kind `S(j,k)`.
    pub fn stirling2(&self, j: usize, k: usize) -> Result<&BigInt> {
        self.check(j, k)?;
        Ok(&self.s2[j][k])
    }

    /// Signed Stirling number of the first kind `s(j,k)`.
    pub fn stirling1_signed(&self, j: usize, k: usize) -> Result<&BigInt> {
        self.check(j, k)?;
        Ok(&self.s1_signed[j][k])
    }

    fn check(&self, j: usize, k: usize) -> Result<()> {
        if k > j || j > self.max {
            return Err(Error::StirlingRange {
                j,
                k,
                max: self.max,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_is_one() {
        let t = StirlingTables::new(12);
        for j in 0..=12 {
            assert_eq!(*t.stirling2(j, j).unwrap(), BigInt::one());
            assert_eq!(*t.stirling1_signed(j, j).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn partitions_of_three_into_two_blocks() {
        let t = StirlingTables::new(5);
        assert_eq!(*t.stirling2(3, 2).unwrap(), BigInt::from(3));
        assert_eq!(*t.stirling2(4, 2).unwrap(), BigInt::from(7));
        assert_eq!(*t.stirling1_signed(2, 1).unwrap(), BigInt::from(-1));
        assert_eq!(*t.stirling1_signed(3, 1).unwrap(), BigInt::from(2));
    }

    #[test]
    fn matrices_are_inverse() {
        let t = StirlingTables::new(12);
        for j in 0..=12 {
            for i in 0..=12 {
                let mut acc = BigInt::zero();
                for k in i..=j {
                    acc += t.stirling1_signed(j, k).unwrap() * t.stirling2(k, i).unwrap();
                }
                let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                assert_eq!(acc, expect, "inverse identity failed at ({j},{i})");
            }
        }
    }

    #[test]
    fn out_of_range_rejected() {
        let t = StirlingTables::new(4);
        assert!(t.stirling2(5, 1).is_err());
        assert!(t.stirling2(3, 4).is_err());
    }
}
