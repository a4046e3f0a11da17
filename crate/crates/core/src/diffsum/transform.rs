//! Change of independent variable `z = t^m` for differential sums.
//!
//! Derivatives transform through `d/dz = (1/(m·t^{m-1}))·d/dt`, iterated for
//! higher orders, and `z^a` becomes `t^{m·a}`. The substitution can create
//! negative powers of `t`; the returned `clearing_exponent` is the smallest
//! `N ≥ 0` such that multiplying the whole sum by `t^N` clears them.
//! Classification is unaffected by that monomial factor; it only translates
//! operator supports vertically.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::exponent::RamifiedExponent;
use crate::gaussian::GaussianRational;

use super::{DiffMonomial, DiffSum, Var};

#[derive(Clone, Debug)]
pub struct VariableChange {
    /// The substituted sum, in `t`, exactly as the chain rule produces it.
    pub sum: DiffSum,
    /// `t^N` clears all negative exponents of `sum`.
    pub clearing_exponent: RamifiedExponent,
}

impl VariableChange {
    /// The sum multiplied through by `t^clearing_exponent`.
    pub fn cleared(&self) -> DiffSum {
        if self.clearing_exponent.is_zero() {
            return self.sum.clone();
        }
        let shift = DiffSum::from_monomials(
            self.sum.var(),
            [DiffMonomial::new(
                GaussianRational::one(),
                self.clearing_exponent,
                BTreeMap::new(),
            )],
        );
        self.sum.mul(&shift)
    }
}

pub fn change_variable(f: &DiffSum, m: u32) -> VariableChange {
    assert!(m >= 1, "substitution power must be positive");
    if m == 1 {
        return VariableChange {
            sum: f.clone(),
            clearing_exponent: RamifiedExponent::zero(),
        };
    }
    assert_eq!(f.var(), Var::Z, "variable already changed");
    let order = f.order();
    // chain[j] expresses w^(j) (z-derivative) as a t-differential sum.
    let mut chain: Vec<DiffSum> = Vec::with_capacity(order as usize + 1);
    chain.push(DiffSum::from_monomials(
        Var::T,
        [DiffMonomial::new(
            GaussianRational::one(),
            RamifiedExponent::zero(),
            BTreeMap::from([(0u8, 1u32)]),
        )],
    ));
    for _ in 0..order {
        let prev = chain.last().unwrap();
        chain.push(apply_conversion_operator(prev, m));
    }

    let mut out = DiffSum::zero(Var::T);
    for mono in f.monomials() {
        let mut term = DiffSum::from_monomials(
            Var::T,
            [DiffMonomial::new(
                mono.coeff().clone(),
                mono.z_exp().times(i64::from(m)),
                BTreeMap::new(),
            )],
        );
        for (o, mult) in mono.derivs() {
            for _ in 0..*mult {
                term = term.mul(&chain[*o as usize]);
            }
        }
        out = out.add(&term);
    }

    let min_exp = out
        .monomials()
        .iter()
        .map(|m| m.z_exp())
        .min()
        .unwrap_or_else(RamifiedExponent::zero);
    let clearing_exponent = if min_exp < RamifiedExponent::zero() {
        -min_exp
    } else {
        RamifiedExponent::zero()
    };
    VariableChange {
        sum: out,
        clearing_exponent,
    }
}

/// `(1/(m·t^{m-1}))·d/dt` applied term-wise to a sum of `c·t^e·w^(i)` terms.
fn apply_conversion_operator(sum: &DiffSum, m: u32) -> DiffSum {
    let inv_m = BigRational::new(1.into(), i64::from(m).into());
    let drop = RamifiedExponent::from_int(i64::from(m));
    let mut out = Vec::new();
    for mono in sum.monomials() {
        debug_assert_eq!(mono.derivs().len(), 1);
        let (&ord, &mult) = mono.derivs().iter().next().unwrap();
        debug_assert_eq!(mult, 1);
        let e = mono.z_exp();
        // product-rule part: c·e/m · t^{e-m} · w^(ord)
        let scaled = mono
            .coeff()
            .scale(&(&inv_m * bigrat(e)));
        out.push(DiffMonomial::new(
            scaled,
            e - drop,
            BTreeMap::from([(ord, 1)]),
        ));
        // derivative-raising part: c/m · t^{e-m+1} · w^(ord+1)
        out.push(DiffMonomial::new(
            mono.coeff().scale(&inv_m),
            e - drop + RamifiedExponent::from_int(1),
            BTreeMap::from([(ord + 1, 1)]),
        ));
    }
    DiffSum::from_monomials(Var::T, out)
}

fn bigrat(e: RamifiedExponent) -> BigRational {
    BigRational::new(e.num().into(), i64::from(e.den()).into())
}
