//! Formal-solution extension by the linear recurrence the equation induces.
//!
//! Given a seed (prescribed leading behaviour), each further coefficient `c`
//! at exponent `q` is found by injecting a probe term `c·z^q` and extracting
//! the part linear in `c`: writing `R = F(w)` for the current residual and
//! `T = L_w[z^q]` for the first variation applied to the probe,
//! `c = -R[τ]/T[τ]` at the target exponent `τ = lead(T)`. The divisor
//! `T[τ]` is the characteristic value of the step; its vanishing is a
//! resonance and is reported, never skipped. This solves the triangular
//! linear system one row at a time without deriving per-equation recurrences.
//!
//! The seed prescribes the leading term and optionally further printed
//! coefficients; everything after the leading term is re-derived and
//! cross-checked against the prescription, failing loudly on mismatch.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::diffsum::{evaluate_dual, evaluate_on_series, DiffSum};
use crate::error::{Error, Result};
use crate::exponent::RamifiedExponent;
use crate::gaussian::GaussianRational;
use crate::series::PuiseuxSeries;

/// Prescribed leading terms of a formal solution, fixing the branch.
#[derive(Clone, PartialEq, Debug)]
pub struct SeedExpansion {
    ram: u32,
    leading_exp: RamifiedExponent,
    terms: BTreeMap<RamifiedExponent, GaussianRational>,
    branch: Option<i64>,
}

impl SeedExpansion {
    /// `terms` must be nonempty with nonzero coefficients on the `(1/ram)·ℤ`
    /// grid; the largest exponent is the leading one.
    pub fn new(
        ram: u32,
        terms: impl IntoIterator<Item = (RamifiedExponent, GaussianRational)>,
        branch: Option<i64>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (q, c) in terms {
            if q.numerator_on(ram).is_none() {
                return Err(Error::Invalid {
                    detail: format!("seed exponent {q} is not on the 1/{ram} grid"),
                });
            }
            if c.is_zero() {
                return Err(Error::Invalid {
                    detail: format!("seed coefficient at {q} is zero"),
                });
            }
            if map.insert(q, c).is_some() {
                return Err(Error::Invalid {
                    detail: format!("duplicate seed exponent {q}"),
                });
            }
        }
        let leading_exp = *map.keys().next_back().ok_or_else(|| Error::Invalid {
            detail: "empty seed".into(),
        })?;
        Ok(Self {
            ram,
            leading_exp,
            terms: map,
            branch,
        })
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn leading_exp(&self) -> RamifiedExponent {
        self.leading_exp
    }

    pub fn leading_coeff(&self) -> &GaussianRational {
        &self.terms[&self.leading_exp]
    }

    pub fn branch(&self) -> Option<i64> {
        self.branch
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RamifiedExponent, &GaussianRational)> {
        self.terms.iter().rev()
    }

    /// The prescribed terms as an exact series.
    pub fn series(&self) -> PuiseuxSeries {
        PuiseuxSeries::from_terms(self.ram, self.terms.iter().map(|(q, c)| (*q, c.clone())))
    }
}

/// A solution extended to finitely many certified coefficients.
#[derive(Clone, Debug)]
pub struct ExtendedSolution {
    /// Certified truncation of the formal solution (`valid_below` marks the
    /// extension frontier).
    pub series: PuiseuxSeries,
    /// `(exponent, divisor)` per derivation step, all divisors nonzero.
    pub characteristic_values: Vec<(RamifiedExponent, GaussianRational)>,
    /// Leading exponent of the exact residual after each derivation step
    /// (`None` when the residual vanishes identically).
    pub residual_leads: Vec<Option<RamifiedExponent>>,
    pub seed: SeedExpansion,
}

/// Extend `seed` by `n_new` coefficients beyond the prescribed ones.
///
/// Every prescribed non-leading coefficient is re-derived on the way down and
/// compared; a mismatch is a `SeedInconsistent` error, as is a seed whose
/// residual carries a term above the first solvable target.
pub fn extend(f: &DiffSum, seed: &SeedExpansion, n_new: usize) -> Result<ExtendedSolution> {
    let ram = seed.ram;
    let step = RamifiedExponent::new(1, ram);
    let last_prescribed = *seed.terms.keys().next().expect("seed is nonempty");

    let mut w = PuiseuxSeries::monomial(seed.leading_coeff().clone(), seed.leading_exp);
    let mut frontier = seed.leading_exp;
    let mut remaining = n_new;
    let mut prev_target: Option<RamifiedExponent> = None;
    let mut characteristic_values = Vec::new();
    let mut residual_leads = Vec::new();
    let margin = floor_margin(f, seed);

    while remaining > 0 || frontier > last_prescribed {
        let q = frontier - step;
        let probe = PuiseuxSeries::monomial(GaussianRational::one(), q);
        // Evaluating on a floored copy of `w` lets the certification
        // thresholds prune product tails that no step will ever read; the
        // margin keeps the coefficients we do read certified. The fallback
        // recomputes exactly if the margin ever proves too small.
        let floored = match prev_target {
            Some(prev) => w.with_valid_below(prev - step - margin),
            None => w.clone(),
        };
        let (mut residual, mut tangent) = evaluate_dual(f, &floored, &probe);
        if let Some(prev) = prev_target {
            let expected = prev - step;
            if residual.coeff_at(expected).is_none() || tangent.coeff_at(expected).is_none() {
                let exact = evaluate_dual(f, &w, &probe);
                residual = exact.0;
                tangent = exact.1;
            }
        }
        if prev_target.is_some() {
            // residual after the previous step; if flooring pruned every term
            // the true lead may sit further down, so recompute it exactly
            let recorded = if residual.has_certified_term() || residual.valid_below().is_none() {
                residual.leading().map(|(e, _)| e)
            } else {
                evaluate_on_series(f, &w).leading().map(|(e, _)| e)
            };
            residual_leads.push(recorded);
        }

        let target = match prev_target {
            None => match tangent.leading() {
                Some((lead, _)) => lead,
                None => return Err(Error::Resonance { exponent: q }),
            },
            Some(prev) => {
                let expected = prev - step;
                match tangent.leading() {
                    Some((lead, _)) if lead == expected => expected,
                    Some((lead, _)) if lead > expected => {
                        // adding lower-order terms to the solution never
                        // raises operator leading exponents; a risen pivot
                        // still means the system is not triangular here
                        debug_assert!(false, "tangent lead rose from {expected} to {lead}");
                        return Err(Error::Resonance { exponent: q });
                    }
                    _ => return Err(Error::Resonance { exponent: q }),
                }
            }
        };

        if let Some((res_lead, _)) = residual.leading() {
            if res_lead > target {
                return Err(Error::SeedInconsistent {
                    detail: format!(
                        "residual carries a term at exponent {res_lead}, above the first solvable \
                         target {target}; the prescribed terms do not balance the equation"
                    ),
                });
            }
        }

        let kappa = tangent
            .coeff_at(target)
            .expect("tangent certified at the target");
        debug_assert!(!kappa.is_zero());
        let r = residual
            .coeff_at(target)
            .expect("residual certified at the target");
        let c = &(-&r) / &kappa;

        if let Some(prescribed) = seed.terms.get(&q) {
            if *prescribed != c {
                return Err(Error::SeedInconsistent {
                    detail: format!(
                        "prescribed coefficient {prescribed} at exponent {q} disagrees with the \
                         recurrence value {c}"
                    ),
                });
            }
        } else {
            remaining = remaining.saturating_sub(1);
        }

        characteristic_values.push((q, kappa));
        if !c.is_zero() {
            w = w.add(&PuiseuxSeries::monomial(c, q));
        }
        frontier = q;
        prev_target = Some(target);
    }

    // exact residual after the final step
    residual_leads.push(
        evaluate_on_series(f, &w)
            .leading()
            .map(|(e, _)| e),
    );

    Ok(ExtendedSolution {
        series: w.with_valid_below(frontier),
        characteristic_values,
        residual_leads,
        seed: seed.clone(),
    })
}

/// How far below the current target the evaluation floor sits. Threshold
/// propagation raises `valid_below` by up to `lead(w)` per factor and by the
/// monomial's own `z` exponent, so the margin covers the worst chain in `F`
/// with room to spare.
fn floor_margin(f: &DiffSum, seed: &SeedExpansion) -> RamifiedExponent {
    let degree: i64 = f
        .monomials()
        .iter()
        .map(|m| m.derivs().values().map(|v| i64::from(*v)).sum::<i64>())
        .max()
        .unwrap_or(1)
        .max(1);
    let zmax: i64 = f
        .monomials()
        .iter()
        .map(|m| m.z_exp().num().abs() / i64::from(m.z_exp().den()) + 1)
        .max()
        .unwrap_or(1);
    let lead = seed.leading_exp;
    let lead_abs = lead.num().abs() / i64::from(lead.den()) + 1;
    let steps = (degree + 2) * (lead_abs + 1) + zmax + i64::from(f.order()) + 4;
    RamifiedExponent::new(steps, 1)
}

/// Leading exponent of the exact residual of the truncated solution
/// (`None` when the truncation solves the equation exactly).
pub fn residual_order(f: &DiffSum, sol: &ExtendedSolution) -> Option<RamifiedExponent> {
    evaluate_on_series(f, &sol.series.as_exact())
        .leading()
        .map(|(e, _)| e)
}

/// Exact squared magnitude and floating log-magnitude of one coefficient.
#[derive(Clone, Debug)]
pub struct GrowthPoint {
    pub exponent: RamifiedExponent,
    pub abs_sq: BigRational,
    pub log_magnitude: f64,
}

/// Coefficient magnitudes of the solution, leading term first. Magnitudes are
/// computed exactly as `|c|²` and only rounded in `log_magnitude`. Meaningful
/// divergence diagnostics need at least ~20 coefficients; the polygon, not
/// this profile, is the rigorous classifier.
pub fn growth_profile(sol: &ExtendedSolution) -> Vec<GrowthPoint> {
    sol.series
        .terms()
        .map(|(q, c)| {
            let abs_sq = c.abs_sq();
            GrowthPoint {
                exponent: *q,
                abs_sq: abs_sq.clone(),
                log_magnitude: 0.5 * ln_rational(&abs_sq),
            }
        })
        .collect()
}

/// Natural log of a positive rational that may far exceed `f64` range.
pub fn ln_rational(r: &BigRational) -> f64 {
    use num_traits::{Signed, ToPrimitive, Zero};
    assert!(r.is_positive() || r.is_zero());
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    let scale = |n: &num_bigint::BigInt| -> (f64, i64) {
        let bits = n.bits() as i64;
        let shift = (bits - 53).max(0);
        let top = (n >> shift).to_f64().unwrap_or(f64::MAX);
        (top, shift)
    };
    let (nf, ns) = scale(r.numer());
    let (df, ds) = scale(r.denom());
    (nf / df).ln() + (ns - ds) as f64 * std::f64::consts::LN_2
}
