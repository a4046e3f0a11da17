//! Differential sums: polynomials in `z, w, w', …, w^(n)` with exact
//! Gaussian-rational coefficients.
//!
//! This is the normal form of an ODE throughout the crate: all terms on one
//! side, denominators cleared by a monomial factor. Sums are kept canonical
//! (merged monomials, no zero coefficients, deterministic order), so printing
//! and re-parsing is a fixpoint.

mod eval;
mod parse;
mod transform;

pub use eval::{apply_plain_operator, evaluate_dual, evaluate_on_series, partial_highest_nonzero};
pub use parse::{parse_diffsum, parse_diffsum_with, Bindings};
pub use transform::{change_variable, VariableChange};

use std::collections::BTreeMap;
use std::fmt;

use crate::exponent::RamifiedExponent;
use crate::gaussian::GaussianRational;

/// Display symbol of the independent variable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    Z,
    T,
}

impl Var {
    pub fn symbol(&self) -> char {
        match self {
            Var::Z => 'z',
            Var::T => 't',
        }
    }
}

/// One term `c · z^a · ∏_j (w^(j))^{m_j}` with `c ≠ 0` and all `m_j ≥ 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffMonomial {
    coeff: GaussianRational,
    z_exp: RamifiedExponent,
    derivs: BTreeMap<u8, u32>,
}

impl DiffMonomial {
    pub fn new(coeff: GaussianRational, z_exp: RamifiedExponent, derivs: BTreeMap<u8, u32>) -> Self {
        let derivs = derivs.into_iter().filter(|(_, m)| *m > 0).collect();
        Self {
            coeff,
            z_exp,
            derivs,
        }
    }

    pub fn constant(coeff: GaussianRational) -> Self {
        Self::new(coeff, RamifiedExponent::zero(), BTreeMap::new())
    }

    pub fn coeff(&self) -> &GaussianRational {
        &self.coeff
    }

    pub fn z_exp(&self) -> RamifiedExponent {
        self.z_exp
    }

    pub fn derivs(&self) -> &BTreeMap<u8, u32> {
        &self.derivs
    }

    fn key(&self) -> (RamifiedExponent, Vec<(u8, u32)>) {
        (
            self.z_exp,
            self.derivs.iter().map(|(o, m)| (*o, *m)).collect(),
        )
    }

    fn mul(&self, other: &Self) -> Self {
        let mut derivs = self.derivs.clone();
        for (o, m) in &other.derivs {
            *derivs.entry(*o).or_insert(0) += m;
        }
        Self {
            coeff: &self.coeff * &other.coeff,
            z_exp: self.z_exp + other.z_exp,
            derivs,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct DiffSum {
    var: Var,
    monomials: Vec<DiffMonomial>,
}

impl DiffSum {
    pub fn zero(var: Var) -> Self {
        Self {
            var,
            monomials: Vec::new(),
        }
    }

    pub fn from_monomials(var: Var, monos: impl IntoIterator<Item = DiffMonomial>) -> Self {
        let mut acc: BTreeMap<(RamifiedExponent, Vec<(u8, u32)>), GaussianRational> =
            BTreeMap::new();
        for m in monos {
            if m.coeff.is_zero() {
                continue;
            }
            let entry = acc.entry(m.key()).or_insert_with(GaussianRational::zero);
            *entry = &*entry + &m.coeff;
        }
        let mut monomials: Vec<DiffMonomial> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((z_exp, derivs), coeff)| DiffMonomial {
                coeff,
                z_exp,
                derivs: derivs.into_iter().collect(),
            })
            .collect();
        // Deterministic print order: descending powers of z, then by the
        // derivative signature.
        monomials.sort_by(|a, b| b.z_exp.cmp(&a.z_exp).then_with(|| a.key().1.cmp(&b.key().1)));
        Self { var, monomials }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Same sum, declared in the other variable symbol (used only when the
    /// caller has already performed the substitution on exponents).
    pub(crate) fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn monomials(&self) -> &[DiffMonomial] {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Highest derivative order present (0 for purely algebraic sums).
    pub fn order(&self) -> u8 {
        self.monomials
            .iter()
            .flat_map(|m| m.derivs.keys().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var, "mixed variables in differential sums");
        Self::from_monomials(
            self.var,
            self.monomials.iter().chain(other.monomials.iter()).cloned(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussianRational::from_int(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        Self {
            var: self.var,
            monomials: self
                .monomials
                .iter()
                .map(|m| DiffMonomial {
                    coeff: &m.coeff * c,
                    z_exp: m.z_exp,
                    derivs: m.derivs.clone(),
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.var, other.var, "mixed variables in differential sums");
        let mut products = Vec::with_capacity(self.monomials.len() * other.monomials.len());
        for a in &self.monomials {
            for b in &other.monomials {
                products.push(a.mul(b));
            }
        }
        Self::from_monomials(self.var, products)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc =
            Self::from_monomials(self.var, [DiffMonomial::constant(GaussianRational::one())]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative with respect to `w^(l)` (product rule over
    /// monomials).
    pub fn partial_derivative(&self, l: u8) -> Self {
        let monos: Vec<_> = self
            .monomials
            .iter()
            .filter_map(|m| {
                let mult = *m.derivs.get(&l)?;
                let mut derivs = m.derivs.clone();
                if mult == 1 {
                    derivs.remove(&l);
                } else {
                    derivs.insert(l, mult - 1);
                }
                Some(DiffMonomial {
                    coeff: m
                        .coeff
                        .scale(&num_rational::BigRational::from_integer(mult.into())),
                    z_exp: m.z_exp,
                    derivs,
                })
            })
            .collect();
        Self::from_monomials(self.var, monos)
    }

    /// The first variation `δF/δw = Σ_l (∂F/∂w^(l)) d^l/dz^l`, an operator in
    /// the plain-derivative basis with differential-sum coefficients.
    pub fn first_variation(&self) -> LinearDiffOperator {
        let mut coeffs = BTreeMap::new();
        for l in 0..=self.order() {
            let c = self.partial_derivative(l);
            if !c.is_zero() {
                coeffs.insert(l, c);
            }
        }
        LinearDiffOperator {
            basis: DiffOperatorBasis::Plain,
            coeffs,
        }
    }
}

/// Basis tag for operators with differential-sum coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiffOperatorBasis {
    /// `d^l/dz^l`
    Plain,
    /// `z^l·d^l/dz^l`
    Weighted,
    /// `D^l` with `D = z·d/dz`
    Euler,
}

/// Linear differential operator whose coefficients are differential sums.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearDiffOperator {
    basis: DiffOperatorBasis,
    coeffs: BTreeMap<u8, DiffSum>,
}

impl LinearDiffOperator {
    pub fn basis(&self) -> DiffOperatorBasis {
        self.basis
    }

    pub fn coeff(&self, l: u8) -> Option<&DiffSum> {
        self.coeffs.get(&l)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u8, &DiffSum)> {
        self.coeffs.iter().map(|(l, c)| (*l, c))
    }

    pub fn order(&self) -> u8 {
        self.coeffs.keys().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for LinearDiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let sym = self
            .coeffs
            .values()
            .next()
            .map(|c| c.var().symbol())
            .unwrap_or('z');
        let mut first = true;
        for (l, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let op = match (self.basis, *l) {
                (_, 0) => String::new(),
                (DiffOperatorBasis::Plain, 1) => format!(" d/d{sym}"),
                (DiffOperatorBasis::Plain, l) => format!(" d^{l}/d{sym}^{l}"),
                (DiffOperatorBasis::Weighted, 1) => format!(" {sym} d/d{sym}"),
                (DiffOperatorBasis::Weighted, l) => format!(" {sym}^{l} d^{l}/d{sym}^{l}"),
                (DiffOperatorBasis::Euler, 1) => " D".to_string(),
                (DiffOperatorBasis::Euler, l) => format!(" D^{l}"),
            };
            write!(f, "({c}){op}")?;
        }
        Ok(())
    }
}

fn deriv_text(order: u8) -> String {
    match order {
        0 => "w".to_string(),
        1 => "w'".to_string(),
        2 => "w''".to_string(),
        3 => "w'''".to_string(),
        k => format!("w'{{{k}}}"),
    }
}

/// Sign/body split of a coefficient for printing; mixed complex values are
/// parenthesized and carry sign `+1`.
fn coeff_text(c: &GaussianRational) -> (i32, Option<String>) {
    use num_traits::{One, Signed, Zero};
    if c.is_real() {
        let sign = if c.re().is_negative() { -1 } else { 1 };
        let a = c.re().abs();
        if a.is_one() {
            return (sign, None);
        }
        let body = if a.denom() == &num_bigint::BigInt::one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        };
        (sign, Some(body))
    } else if c.re().is_zero() {
        let sign = if c.im().is_negative() { -1 } else { 1 };
        let a = c.im().abs();
        if a.is_one() {
            return (sign, Some("i".to_string()));
        }
        let body = if a.denom() == &num_bigint::BigInt::one() {
            format!("{}*i", a.numer())
        } else {
            format!("{}/{}*i", a.numer(), a.denom())
        };
        (sign, Some(body))
    } else {
        (1, Some(format!("({c})")))
    }
}

impl fmt::Display for DiffSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return write!(f, "0");
        }
        let sym = self.var.symbol();
        let mut first = true;
        for m in &self.monomials {
            let (sign, coeff_body) = coeff_text(&m.coeff);
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
            let mut factors: Vec<String> = Vec::new();
            if let Some(body) = coeff_body {
                factors.push(body);
            }
            if !m.z_exp.is_zero() {
                if m.z_exp == RamifiedExponent::from_int(1) {
                    factors.push(sym.to_string());
                } else if m.z_exp.is_integer() {
                    factors.push(format!("{sym}^{}", m.z_exp.num()));
                } else {
                    factors.push(format!("{sym}^({})", m.z_exp));
                }
            }
            for (o, mult) in &m.derivs {
                if *mult == 1 {
                    factors.push(deriv_text(*o));
                } else {
                    factors.push(format!("{}^{}", deriv_text(*o), mult));
                }
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    #[test]
    fn order_and_canonical_merge() {
        let f = parse_diffsum("w*w' + w'*w - 2*w*w'").unwrap();
        assert!(f.is_zero());
        let g = parse_diffsum("w''^2 + z*w").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(parse_diffsum("w").unwrap().order(), 0);
    }

    #[test]
    fn first_variation_of_square() {
        let f = parse_diffsum("w^2").unwrap();
        let v = f.first_variation();
        assert_eq!(v.order(), 0);
        assert_eq!(v.coeff(0).unwrap(), &parse_diffsum("2*w").unwrap());
    }

    #[test]
    fn variation_product_rule() {
        let f = parse_diffsum("z*w*w''").unwrap();
        let v = f.first_variation();
        assert_eq!(v.coeff(2).unwrap(), &parse_diffsum("z*w").unwrap());
        assert_eq!(v.coeff(0).unwrap(), &parse_diffsum("z*w''").unwrap());
        assert!(v.coeff(1).is_none());
    }

    #[test]
    fn display_signs_and_complex_coeffs() {
        let f = parse_diffsum("-z^2*w + 3/2*w'^2 - i*w").unwrap();
        let printed = f.to_string();
        let again = parse_diffsum(&printed).unwrap();
        assert_eq!(f, again);
        let c = GaussianRational::from_str("1+2i").unwrap();
        let g = DiffSum::from_monomials(
            Var::Z,
            [DiffMonomial::new(
                c,
                RamifiedExponent::from_int(2),
                BTreeMap::new(),
            )],
        );
        assert_eq!(parse_diffsum(&g.to_string()).unwrap(), g);
    }
}
