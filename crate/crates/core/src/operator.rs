//! Linear operators with Puiseux-series coefficients and the construction of
//! the linearized operator at a formal solution.
//!
//! `build_l0` follows the five-step recipe: take the first variation of the
//! differential sum, evaluate each coefficient on the series, rewrite in the
//! weighted basis `z^l·d^l/dz^l` (the order-`l` coefficient picks up `z^{-l}`),
//! then convert to Euler powers `D^k` through the signed Stirling matrix. The
//! result is the operator whose Newton polygon Theorem-level classification
//! reads from.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::diffsum::{evaluate_on_series, partial_highest_nonzero, DiffSum};
use crate::error::{Error, Result};
use crate::exponent::RamifiedExponent;
use crate::gaussian::GaussianRational;
use crate::polygon::SupportPoint;
use crate::series::PuiseuxSeries;
use crate::stirling::StirlingTables;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesBasis {
    /// Coefficients of `z^l·d^l/dz^l`.
    Weighted,
    /// Coefficients of `D^l`, `D = z·d/dz`.
    Euler,
}

/// `Σ_k a_k(z)·B^k` with `a_k` Puiseux series, `B` fixed by the basis tag.
#[derive(Clone, PartialEq, Debug)]
pub struct OperatorOnSeries {
    basis: SeriesBasis,
    coeffs: BTreeMap<u8, PuiseuxSeries>,
}

impl OperatorOnSeries {
    pub fn new(basis: SeriesBasis, coeffs: BTreeMap<u8, PuiseuxSeries>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(_, s)| !s.is_exact_zero())
            .collect();
        Self { basis, coeffs }
    }

    pub fn basis(&self) -> SeriesBasis {
        self.basis
    }

    pub fn coeff(&self, k: u8) -> Option<&PuiseuxSeries> {
        self.coeffs.get(&k)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u8, &PuiseuxSeries)> {
        self.coeffs.iter().map(|(k, s)| (*k, s))
    }

    pub fn order(&self) -> u8 {
        self.coeffs.keys().copied().max().unwrap_or(0)
    }

    /// All coefficients share one ramification grid.
    pub fn ram(&self) -> u32 {
        self.coeffs.values().map(|s| s.ram()).max().unwrap_or(1)
    }

    /// Convert weighted-basis coefficients to the Euler basis:
    /// `z^l d^l/dz^l = Σ_k s(l,k)·D^k`.
    pub fn to_euler(&self, tables: &StirlingTables) -> Result<Self> {
        assert_eq!(self.basis, SeriesBasis::Weighted);
        self.convert(tables, SeriesBasis::Euler, |t, l, k| t.stirling1_signed(l, k))
    }

    /// Convert Euler-basis coefficients back to the weighted basis:
    /// `D^j = Σ_k S(j,k)·z^k d^k/dz^k`.
    pub fn from_euler(&self, tables: &StirlingTables) -> Result<Self> {
        assert_eq!(self.basis, SeriesBasis::Euler);
        self.convert(tables, SeriesBasis::Weighted, |t, l, k| t.stirling2(l, k))
    }

    fn convert<'t, F>(&self, tables: &'t StirlingTables, to: SeriesBasis, entry: F) -> Result<Self>
    where
        F: Fn(&'t StirlingTables, usize, usize) -> Result<&'t num_bigint::BigInt>,
    {
        let ram = self.ram();
        let mut out: BTreeMap<u8, PuiseuxSeries> = BTreeMap::new();
        for (l, series) in &self.coeffs {
            for k in 0..=*l {
                let m = entry(tables, *l as usize, k as usize)?;
                if num_traits::Zero::is_zero(m) {
                    continue;
                }
                let scaled = series.scale_rational(&BigRational::from_integer(m.clone()));
                let slot = out.entry(k).or_insert_with(|| PuiseuxSeries::zero(ram));
                *slot = slot.add(&scaled);
            }
        }
        // Exact-zero slots carry no information; truncated-but-empty ones do.
        out.retain(|_, s| !s.is_exact_zero());
        Ok(Self { basis: to, coeffs: out })
    }

    /// Apply the operator to a series (used by the basis-change oracles).
    pub fn apply(&self, s: &PuiseuxSeries) -> PuiseuxSeries {
        let mut acc = PuiseuxSeries::zero(self.ram().max(s.ram()));
        for (k, a) in &self.coeffs {
            let transformed = match self.basis {
                SeriesBasis::Euler => {
                    let mut v = s.clone();
                    for _ in 0..*k {
                        v = v.euler();
                    }
                    v
                }
                SeriesBasis::Weighted => s
                    .diff_n(*k)
                    .mul_monomial(&GaussianRational::one(), RamifiedExponent::from_int(i64::from(*k))),
            };
            acc = acc.add(&a.mul(&transformed));
        }
        acc
    }

    /// Support of an Euler-basis operator: one point `(k, j_{k,0})` per order
    /// with a nonzero coefficient, where `j_{k,0}` is the negated certified
    /// leading exponent of `a_k`.
    pub fn support(&self) -> Result<Vec<SupportPoint>> {
        assert_eq!(
            self.basis,
            SeriesBasis::Euler,
            "support is read in the Euler basis"
        );
        let mut points = Vec::new();
        for (k, series) in &self.coeffs {
            match series.leading() {
                Some((lead, _)) => points.push(SupportPoint {
                    k: u32::from(*k),
                    j0: -lead,
                }),
                None => {
                    if series.valid_below().is_some() {
                        return Err(Error::UncertifiedLeading { order: *k });
                    }
                    // exact zero: no point
                }
            }
        }
        Ok(points)
    }
}

/// Linearize `F` at `w` and express the operator in the Euler basis.
///
/// Fails with `DegenerateLeadingCoefficient` when `∂F/∂w^(n)` vanishes on `w`
/// (no certified nonzero coefficient), in which case the polygon of the
/// linearization would not reflect an order-`n` operator.
pub fn build_l0(f: &DiffSum, w: &PuiseuxSeries, tables: &StirlingTables) -> Result<OperatorOnSeries> {
    if !partial_highest_nonzero(f, w) {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let variation = f.first_variation();
    let mut coeffs = BTreeMap::new();
    for (l, coeff_sum) in variation.coeffs() {
        let evaluated = evaluate_on_series(coeff_sum, w);
        // plain d^l/dz^l = z^{-l} · (z^l d^l/dz^l)
        let weighted = evaluated.mul_monomial(
            &GaussianRational::one(),
            RamifiedExponent::from_int(-i64::from(l)),
        );
        coeffs.insert(l, weighted);
    }
    OperatorOnSeries::new(SeriesBasis::Weighted, coeffs).to_euler(tables)
}
