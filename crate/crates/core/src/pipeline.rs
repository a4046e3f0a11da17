//! End-to-end classification: extend the seed, linearize, read the polygon.

use num_rational::Rational64;

use crate::diffsum::DiffSum;
use crate::error::Result;
use crate::operator::{build_l0, OperatorOnSeries};
use crate::polygon::{gevrey_candidates, polygon, NewtonPolygon, SupportPoint};
use crate::solver::{extend, ExtendedSolution, SeedExpansion};
use crate::stirling::StirlingTables;

#[derive(Clone, Debug)]
pub struct Classification {
    pub solution: ExtendedSolution,
    pub operator: OperatorOnSeries,
    pub support: Vec<SupportPoint>,
    pub polygon: NewtonPolygon,
    pub candidates: Vec<Rational64>,
}

/// Run the whole pipeline on one equation/seed pair.
///
/// ```
/// use gevrey_core::diffsum::parse_diffsum;
/// use gevrey_core::exponent::RamifiedExponent;
/// use gevrey_core::gaussian::GaussianRational;
/// use gevrey_core::solver::SeedExpansion;
/// use gevrey_core::stirling::StirlingTables;
///
/// // z·w' + w = 0 has the exact solution 1/z; its linearization is the
/// // constant-coefficient operator D + 1, whose polygon has no positive
/// // slopes: the candidate set is {0} alone.
/// let f = parse_diffsum("z*w' + w").unwrap();
/// let seed = SeedExpansion::new(
///     1,
///     [(RamifiedExponent::from_int(-1), GaussianRational::one())],
///     None,
/// )
/// .unwrap();
/// let tables = StirlingTables::new(8);
/// let c = gevrey_core::pipeline::classify(&f, &seed, 4, &tables).unwrap();
/// assert_eq!(c.candidates.len(), 1);
/// assert!(c.candidates[0] == num_rational::Rational64::from_integer(0));
/// ```
pub fn classify(
    f: &DiffSum,
    seed: &SeedExpansion,
    n: usize,
    tables: &StirlingTables,
) -> Result<Classification> {
    let solution = extend(f, seed, n)?;
    let operator = build_l0(f, &solution.series, tables)?;
    let support = operator.support()?;
    let poly = polygon(&support)?;
    let candidates = gevrey_candidates(&poly);
    Ok(Classification {
        solution,
        operator,
        support,
        polygon: poly,
        candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffsum::parse_diffsum;
    use crate::exponent::RamifiedExponent;
    use crate::gaussian::GaussianRational;

    #[test]
    fn euler_equation_has_no_positive_slopes() {
        // z·w' + w = 0, solution c/z: constant-coefficient Euler operator
        let f = parse_diffsum("z*w' + w").unwrap();
        let seed = SeedExpansion::new(
            1,
            [(RamifiedExponent::from_int(-1), GaussianRational::from_int(1))],
            None,
        )
        .unwrap();
        let tables = StirlingTables::new(4);
        let c = classify(&f, &seed, 3, &tables).unwrap();
        assert!(c.polygon.positive_slopes().is_empty());
        assert_eq!(c.candidates, vec![Rational64::from_integer(0)]);
    }
}
