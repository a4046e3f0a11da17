//! Evaluation of differential sums on Puiseux series.
//!
//! `evaluate_dual` runs the same computation over dual numbers
//! `(value, tangent)` with `tangent² = 0`, producing `F(w)` together with the
//! derivative of `F` at `w` in the direction `h` in one pass. The solver uses
//! it with a probe monomial to extract characteristic values; the test suite
//! uses it as an independent oracle against the symbolic first variation.

use crate::series::PuiseuxSeries;

use super::{DiffOperatorBasis, DiffSum, LinearDiffOperator};

/// Substitute `w` (and its term-wise derivatives) into `F`.
pub fn evaluate_on_series(f: &DiffSum, w: &PuiseuxSeries) -> PuiseuxSeries {
    let derivs = derivative_table(w, f.order());
    let powers = PowerCache::new(&derivs, f);
    let mut acc = PuiseuxSeries::zero(w.ram());
    for m in f.monomials() {
        let mut term = PuiseuxSeries::monomial(m.coeff().clone(), m.z_exp());
        for (o, mult) in m.derivs() {
            term = term.mul(powers.get(*o, *mult));
        }
        acc = acc.add(&term);
    }
    acc
}

/// Powers of each derivative series, shared across the monomials of one
/// evaluation (the same `w^k` shows up in many terms).
struct PowerCache {
    by_order: Vec<Vec<PuiseuxSeries>>,
}

impl PowerCache {
    fn new(derivs: &[PuiseuxSeries], f: &DiffSum) -> Self {
        let mut max_mult = vec![0u32; derivs.len()];
        for m in f.monomials() {
            for (o, mult) in m.derivs() {
                let slot = &mut max_mult[*o as usize];
                *slot = (*slot).max(*mult);
            }
        }
        let by_order = derivs
            .iter()
            .zip(max_mult)
            .map(|(d, top)| {
                let mut powers = vec![d.clone()];
                for k in 1..top {
                    let next = powers[k as usize - 1].mul(d);
                    powers.push(next);
                }
                powers
            })
            .collect();
        Self { by_order }
    }

    fn get(&self, order: u8, mult: u32) -> &PuiseuxSeries {
        &self.by_order[order as usize][mult as usize - 1]
    }
}

/// `(F(w), d/dε F(w + εh)|_{ε=0})` by dual-number evaluation.
pub fn evaluate_dual(
    f: &DiffSum,
    w: &PuiseuxSeries,
    h: &PuiseuxSeries,
) -> (PuiseuxSeries, PuiseuxSeries) {
    let n = f.order();
    let w_derivs = derivative_table(w, n);
    let h_derivs = derivative_table(h, n);
    let ram = w.ram().max(h.ram());
    let powers = DualPowerCache::new(&w_derivs, &h_derivs, f, ram);
    let mut value = PuiseuxSeries::zero(ram);
    let mut tangent = PuiseuxSeries::zero(ram);
    for m in f.monomials() {
        let mut term = Dual {
            value: PuiseuxSeries::monomial(m.coeff().clone(), m.z_exp()),
            tangent: PuiseuxSeries::zero(ram),
        };
        for (o, mult) in m.derivs() {
            term = term.mul(powers.get(*o, *mult));
        }
        value = value.add(&term.value);
        tangent = tangent.add(&term.tangent);
    }
    (value, tangent)
}

struct DualPowerCache {
    by_order: Vec<Vec<Dual>>,
}

impl DualPowerCache {
    fn new(w_derivs: &[PuiseuxSeries], h_derivs: &[PuiseuxSeries], f: &DiffSum, ram: u32) -> Self {
        let _ = ram;
        let mut max_mult = vec![0u32; w_derivs.len()];
        for m in f.monomials() {
            for (o, mult) in m.derivs() {
                let slot = &mut max_mult[*o as usize];
                *slot = (*slot).max(*mult);
            }
        }
        let by_order = w_derivs
            .iter()
            .zip(h_derivs)
            .zip(max_mult)
            .map(|((wd, hd), top)| {
                let base = Dual {
                    value: wd.clone(),
                    tangent: hd.clone(),
                };
                let mut powers = vec![base.clone()];
                for k in 1..top {
                    let next = powers[k as usize - 1].mul(&powers[0]);
                    powers.push(next);
                }
                powers
            })
            .collect();
        Self { by_order }
    }

    fn get(&self, order: u8, mult: u32) -> &Dual {
        &self.by_order[order as usize][mult as usize - 1]
    }
}

/// Apply a plain-basis operator with differential-sum coefficients:
/// `Σ_l (coeff_l evaluated on w) · h^(l)`.
pub fn apply_plain_operator(
    op: &LinearDiffOperator,
    w: &PuiseuxSeries,
    h: &PuiseuxSeries,
) -> PuiseuxSeries {
    assert_eq!(op.basis(), DiffOperatorBasis::Plain);
    let mut acc = PuiseuxSeries::zero(w.ram().max(h.ram()));
    for (l, coeff) in op.coeffs() {
        debug_assert!(coeff.order() <= op.order());
        let evaluated = evaluate_on_series(coeff, w);
        acc = acc.add(&evaluated.mul(&h.diff_n(l)));
    }
    acc
}

/// True iff `∂F/∂w^(n)` evaluated on `w` has a certified nonzero coefficient
/// (`n` the order of `F`).
pub fn partial_highest_nonzero(f: &DiffSum, w: &PuiseuxSeries) -> bool {
    let top = f.partial_derivative(f.order());
    evaluate_on_series(&top, w).has_certified_term()
}

fn derivative_table(w: &PuiseuxSeries, order: u8) -> Vec<PuiseuxSeries> {
    let mut table = Vec::with_capacity(order as usize + 1);
    table.push(w.clone());
    for j in 1..=order {
        let prev: &PuiseuxSeries = &table[j as usize - 1];
        table.push(prev.diff());
    }
    table
}

#[derive(Clone)]
struct Dual {
    value: PuiseuxSeries,
    tangent: PuiseuxSeries,
}

impl Dual {
    fn mul(&self, other: &Self) -> Self {
        Dual {
            value: self.value.mul(&other.value),
            tangent: self
                .value
                .mul(&other.tangent)
                .add(&self.tangent.mul(&other.value)),
        }
    }
}

#[allow(dead_code)]
fn _assert_send_sync(s: PuiseuxSeries) -> impl Send + Sync {
    s
}
