//! Textual seed specifications for the CLI and the browser demo.
//!
//! Format: comma-separated `exponent=coefficient` pairs, e.g.
//! `-1=2`, `1=i,0=2+i`, `-1/2=-2`. Exponents are integers or halves/thirds/…
//! written `p/q`; coefficients are Gaussian rationals (`3`, `-1/2`, `i`,
//! `2-3i`). The grid is the lcm of the exponent denominators unless an
//! explicit ramification is given.

use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exponent::RamifiedExponent;
use crate::gaussian::GaussianRational;
use crate::solver::SeedExpansion;

pub fn parse_seed_spec(spec: &str, ram: Option<u32>, branch: Option<i64>) -> Result<SeedExpansion> {
    let mut terms = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (exp_text, coeff_text) = part.split_once('=').ok_or_else(|| Error::Invalid {
            detail: format!("seed term `{part}` is not of the form exponent=coefficient"),
        })?;
        let exponent = parse_exponent(exp_text.trim())?;
        let coeff = GaussianRational::from_str(coeff_text.trim())?;
        terms.push((exponent, coeff));
    }
    if terms.is_empty() {
        return Err(Error::Invalid {
            detail: "empty seed specification".into(),
        });
    }
    let inferred = terms
        .iter()
        .map(|(q, _)| q.den())
        .fold(1u32, |acc, d| (u64::from(acc).lcm(&u64::from(d))) as u32);
    let ram = match ram {
        Some(r) if r % inferred == 0 => r,
        Some(r) => {
            return Err(Error::Invalid {
                detail: format!("seed exponents need ramification {inferred}, got {r}"),
            })
        }
        None => inferred,
    };
    SeedExpansion::new(ram, terms, branch)
}

fn parse_exponent(text: &str) -> Result<RamifiedExponent> {
    let bad = || Error::Invalid {
        detail: format!("bad exponent `{text}`"),
    };
    match text.split_once('/') {
        None => text.parse::<i64>().map(RamifiedExponent::from_int).map_err(|_| bad()),
        Some((num, den)) => {
            let n = num.parse::<i64>().map_err(|_| bad())?;
            let d = den.parse::<u32>().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(RamifiedExponent::new(n, d))
        }
    }
}
