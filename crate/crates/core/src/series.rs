//! Finite descending Puiseux series with certified truncation.
//!
//! A `PuiseuxSeries` stores finitely many terms `c·z^q` with exponents on the
//! grid `(1/ρ)·ℤ`, descending toward `-∞`. `valid_below` records how far down
//! the coefficients are certified:
//!
//! - `None`: the series is exact; every unstored coefficient is zero;
//! - `Some(v)`: coefficients at exponents `≥ v` are exact, anything below `v`
//!   is unknown (truncated away).
//!
//! Invariants: no stored zero coefficients, every stored exponent `≥ v`, and
//! every stored exponent lies on the grid of the declared ramification.
//! Arithmetic propagates the certification threshold, so the leading exponent
//! of any series with at least one stored term is always trustworthy.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;

use crate::exponent::RamifiedExponent;
use crate::gaussian::GaussianRational;

#[derive(Clone, PartialEq, Debug)]
pub struct PuiseuxSeries {
    ram: u32,
    terms: BTreeMap<RamifiedExponent, GaussianRational>,
    valid_below: Option<RamifiedExponent>,
}

impl PuiseuxSeries {
    /// The exact zero series on the given grid.
    pub fn zero(ram: u32) -> Self {
        assert!(ram > 0);
        Self {
            ram,
            terms: BTreeMap::new(),
            valid_below: None,
        }
    }

    /// The exact monomial `c·z^q`.
    pub fn monomial(c: GaussianRational, q: RamifiedExponent) -> Self {
        let ram = q.den();
        let mut s = Self::zero(ram);
        if !c.is_zero() {
            s.terms.insert(q, c);
        }
        s
    }

    /// Exact series from a term list; exponents may repeat (summed).
    pub fn from_terms(ram: u32, items: impl IntoIterator<Item = (RamifiedExponent, GaussianRational)>) -> Self {
        let mut s = Self::zero(ram);
        for (q, c) in items {
            s.ram = lcm_u32(s.ram, q.den());
            s.add_term(q, c);
        }
        s
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RamifiedExponent, &GaussianRational)> {
        self.terms.iter().rev()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn valid_below(&self) -> Option<RamifiedExponent> {
        self.valid_below
    }

    /// True when the series is exactly zero (no terms, no truncation).
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.valid_below.is_none()
    }

    /// True when at least one certified nonzero coefficient is stored.
    pub fn has_certified_term(&self) -> bool {
        !self.terms.is_empty()
    }

    /// Largest stored exponent with its coefficient.
    pub fn leading(&self) -> Option<(RamifiedExponent, &GaussianRational)> {
        self.terms.iter().next_back().map(|(q, c)| (*q, c))
    }

    /// Coefficient at `q` when certified: `Some(0)` for a certified gap,
    /// `None` when `q` lies below the certification threshold.
    pub fn coeff_at(&self, q: RamifiedExponent) -> Option<GaussianRational> {
        if let Some(c) = self.terms.get(&q) {
            return Some(c.clone());
        }
        match self.valid_below {
            None => Some(GaussianRational::zero()),
            Some(v) if q >= v => Some(GaussianRational::zero()),
            Some(_) => None,
        }
    }

    /// Same coefficients, declared on a coarser/finer grid (lcm of both).
    pub fn lift_to(&self, ram: u32) -> Self {
        let mut out = self.clone();
        out.ram = lcm_u32(self.ram, ram);
        out
    }

    /// Forget the truncation threshold, treating the stored terms as exact.
    pub fn as_exact(&self) -> Self {
        Self {
            ram: self.ram,
            terms: self.terms.clone(),
            valid_below: None,
        }
    }

    /// Declare a certification threshold and drop everything below it.
    pub fn with_valid_below(&self, v: RamifiedExponent) -> Self {
        let mut out = self.clone();
        out.valid_below = Some(match out.valid_below {
            Some(old) if old > v => old,
            _ => v,
        });
        out.prune();
        out
    }

    fn add_term(&mut self, q: RamifiedExponent, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(q) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn prune(&mut self) {
        if let Some(v) = self.valid_below {
            self.terms.retain(|q, _| *q >= v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let ram = lcm_u32(self.ram, other.ram);
        let valid_below = max_threshold(self.valid_below, other.valid_below);
        let mut out = Self {
            ram,
            terms: self.terms.clone(),
            valid_below,
        };
        for (q, c) in &other.terms {
            out.add_term(*q, c.clone());
        }
        out.prune();
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            ram: self.ram,
            terms: self.terms.iter().map(|(q, c)| (*q, -c)).collect(),
            valid_below: self.valid_below,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product. Contamination from the unknown tail of one factor
    /// starts below `tail_threshold + other.leading`, so the product is
    /// certified down to the larger of those bounds.
    pub fn mul(&self, other: &Self) -> Self {
        let ram = lcm_u32(self.ram, other.ram);
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero(ram);
        }
        let mut bounds: Vec<RamifiedExponent> = Vec::new();
        if let Some(va) = self.valid_below {
            bounds.push(va + effective_lead(other));
        }
        if let Some(vb) = other.valid_below {
            bounds.push(vb + effective_lead(self));
        }
        let valid_below = bounds.into_iter().max();
        let mut out = Self {
            ram,
            terms: BTreeMap::new(),
            valid_below,
        };
        for (qa, ca) in &self.terms {
            // pairs landing below the certified threshold are never kept
            match valid_below {
                Some(v) => {
                    let qb_min = v - *qa;
                    for (qb, cb) in other.terms.range(qb_min..) {
                        out.add_term(*qa + *qb, ca * cb);
                    }
                }
                None => {
                    for (qb, cb) in &other.terms {
                        out.add_term(*qa + *qb, ca * cb);
                    }
                }
            }
        }
        out
    }

    /// Multiply by the exact monomial `c·z^q` (a grid shift plus scaling).
    pub fn mul_monomial(&self, c: &GaussianRational, q: RamifiedExponent) -> Self {
        self.mul(&Self::monomial(c.clone(), q))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            // Unknown tail times zero is still zero.
            return Self::zero(self.ram);
        }
        Self {
            ram: self.ram,
            terms: self.terms.iter().map(|(q, v)| (*q, v * c)).collect(),
            valid_below: self.valid_below,
        }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        self.scale(&GaussianRational::from_rational(r.clone()))
    }

    /// Term-wise `d/dz`: `c·z^q ↦ c·q·z^{q-1}`.
    pub fn diff(&self) -> Self {
        let one = RamifiedExponent::from_int(1);
        let mut out = Self {
            ram: self.ram,
            terms: BTreeMap::new(),
            valid_below: self.valid_below.map(|v| v - one),
        };
        for (q, c) in &self.terms {
            out.add_term(*q - one, c.scale(&q.as_ratio().into_big()));
        }
        out.prune();
        out
    }

    /// The Euler operator `D = z·d/dz`: `c·z^q ↦ c·q·z^q`.
    pub fn euler(&self) -> Self {
        let mut out = Self {
            ram: self.ram,
            terms: BTreeMap::new(),
            valid_below: self.valid_below,
        };
        for (q, c) in &self.terms {
            out.add_term(*q, c.scale(&q.as_ratio().into_big()));
        }
        out.prune();
        out
    }

    /// `n`-fold derivative.
    pub fn diff_n(&self, n: u8) -> Self {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.diff();
        }
        out
    }

    /// Rewrite the series under `z = t^m`: every exponent is scaled by `m`.
    /// The grid `(1/ρ)·ℤ` maps into `(1/ρ')·ℤ` with `ρ' = ρ/gcd(ρ, m)`.
    pub fn substitute_power(&self, m: i64) -> Self {
        assert!(m > 0);
        let g = self.ram.gcd(&(m as u32));
        Self {
            ram: (self.ram / g).max(1),
            terms: self.terms.iter().map(|(q, c)| (q.times(m), c.clone())).collect(),
            valid_below: self.valid_below.map(|v| v.times(m)),
        }
    }
}

/// Truncated-empty series still bound the product by their own threshold.
fn effective_lead(s: &PuiseuxSeries) -> RamifiedExponent {
    match s.leading() {
        Some((q, _)) => q,
        None => s
            .valid_below
            .expect("exact zero handled by caller"),
    }
}

fn max_threshold(
    a: Option<RamifiedExponent>,
    b: Option<RamifiedExponent>,
) -> Option<RamifiedExponent> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    (u64::from(a).lcm(&u64::from(b))) as u32
}

trait IntoBig {
    fn into_big(self) -> BigRational;
}

impl IntoBig for num_rational::Rational64 {
    fn into_big(self) -> BigRational {
        BigRational::new((*self.numer()).into(), (*self.denom()).into())
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (q, c) in self.terms.iter().rev() {
                let (sign, body) = term_text(c);
                if first {
                    if sign < 0 {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if sign < 0 {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                if q.is_zero() {
                    write!(f, "{body}")?;
                } else if body == "1" {
                    write!(f, "{}", power_text(*q))?;
                } else {
                    write!(f, "{body}*{}", power_text(*q))?;
                }
            }
        }
        if let Some(v) = self.valid_below {
            write!(f, " + O(z^<{v})")?;
        }
        Ok(())
    }
}

fn power_text(q: RamifiedExponent) -> String {
    if q == RamifiedExponent::from_int(1) {
        "z".to_string()
    } else if q.is_integer() {
        format!("z^{}", q.num())
    } else {
        format!("z^({q})")
    }
}

/// Sign/body split for rendering: mixed complex values render with sign +1
/// and a parenthesized body.
fn term_text(c: &GaussianRational) -> (i32, String) {
    use num_traits::{Signed, Zero};
    if c.is_real() {
        let sign = if c.re().is_negative() { -1 } else { 1 };
        let a = c.re().abs();
        let body = if a.denom() == &num_bigint::BigInt::from(1) {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        };
        (sign, body)
    } else if c.re().is_zero() {
        let sign = if c.im().is_negative() { -1 } else { 1 };
        let a = c.im().abs();
        let body = if a == BigRational::from_integer(1.into()) {
            "i".to_string()
        } else if a.denom() == &num_bigint::BigInt::from(1) {
            format!("{}*i", a.numer())
        } else {
            format!("{}/{}*i", a.numer(), a.denom())
        };
        (sign, body)
    } else {
        (1, format!("({c})"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> RamifiedExponent {
        RamifiedExponent::from_int(n)
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn mono(n: i64, e: RamifiedExponent) -> PuiseuxSeries {
        PuiseuxSeries::monomial(g(n), e)
    }

    #[test]
    fn additive_inverse_cancels() {
        let a = mono(1, q(-1));
        let b = mono(-1, q(-1));
        let s = a.add(&b);
        assert!(s.is_exact_zero());
    }

    #[test]
    fn constants_cancel() {
        let a = PuiseuxSeries::from_terms(1, [(q(0), g(-1)), (q(-1), g(4))]);
        let b = mono(1, q(0));
        let s = a.add(&b);
        assert_eq!(s, mono(4, q(-1)));
    }

    #[test]
    fn ramification_lift_on_add() {
        let a = mono(1, q(-1));
        let b = mono(1, RamifiedExponent::new(-1, 2));
        let s = a.add(&b);
        assert_eq!(s.ram(), 2);
        assert_eq!(s.term_count(), 2);
        assert_eq!(s.leading().unwrap().0, RamifiedExponent::new(-1, 2));
    }

    #[test]
    fn monomials_multiply_to_one() {
        let s = mono(1, q(1)).mul(&mono(1, q(-1)));
        assert_eq!(s, mono(1, q(0)));
    }

    #[test]
    fn binomial_square() {
        let a = PuiseuxSeries::from_terms(1, [(q(0), g(1)), (q(-1), g(1))]);
        let sq = a.mul(&a);
        assert_eq!(sq.coeff_at(q(0)), Some(g(1)));
        assert_eq!(sq.coeff_at(q(-1)), Some(g(2)));
        assert_eq!(sq.coeff_at(q(-2)), Some(g(1)));
    }

    #[test]
    fn product_truncation_threshold() {
        // (z + O(z^<-2)) · (z + O(z^<-2)) = z² + O(z^<-1)
        let a = mono(1, q(1)).with_valid_below(q(-2));
        let p = a.mul(&a);
        assert_eq!(p.valid_below(), Some(q(-1)));
        assert_eq!(p.leading().unwrap().0, q(2));
    }

    #[test]
    fn exact_monomial_shifts_certification() {
        let a = PuiseuxSeries::from_terms(1, [(q(0), g(1))]).with_valid_below(q(-5));
        let shifted = a.mul(&mono(1, q(2)));
        assert_eq!(shifted.valid_below(), Some(q(-3)));
    }

    #[test]
    fn derivative_power_rule_on_half_grid() {
        let a = PuiseuxSeries::monomial(g(1), RamifiedExponent::new(-1, 2));
        let d = a.diff();
        let (lead, c) = d.leading().unwrap();
        assert_eq!(lead, RamifiedExponent::new(-3, 2));
        assert_eq!(*c, GaussianRational::from_ratio(-1, 2));
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        assert!(mono(7, q(0)).diff().is_exact_zero());
        assert_eq!(mono(1, q(2)).diff(), mono(2, q(1)));
    }

    #[test]
    fn euler_eigenvalues() {
        assert_eq!(mono(1, q(3)).euler(), mono(3, q(3)));
        assert!(mono(1, q(0)).euler().is_exact_zero());
        assert_eq!(mono(1, q(-5)).euler(), mono(-5, q(-5)));
    }

    #[test]
    fn add_prunes_uncertified_terms() {
        let a = PuiseuxSeries::from_terms(1, [(q(0), g(1)), (q(-5), g(3))]);
        let b = mono(1, q(0)).with_valid_below(q(-2));
        let s = a.add(&b);
        assert_eq!(s.valid_below(), Some(q(-2)));
        assert_eq!(s.coeff_at(q(-5)), None);
        assert_eq!(s.coeff_at(q(-1)), Some(g(0)));
    }
}
