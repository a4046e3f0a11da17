//! Newton polygon of a linear differential operator.
//!
//! The operator support is a set of points `(k, j_{k,0})`. The polygon is the
//! boundary of the convex hull of `⋃_k {q1 ≤ k, q2 ≥ j_{k,0}}` clipped to the
//! half-plane `q1 ≥ 0`. Because each quadrant extends left and up, the only
//! informative part is the lower boundary: at abscissa `k` the region floor is
//! `env(k) = min { j_{k',0} : k' ≥ k }`, and the polygon's lower chain is the
//! lower convex hull of the points `(k, env(k))`. Slopes along it are
//! non-negative exact rationals; the positive ones are `k_1 < … < k_N` and
//! the candidate Gevrey orders are `{0} ∪ {1/k_i}`.

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exponent::RamifiedExponent;

/// One support point `(k, j_{k,0})` of an operator; `j0` is the negated
/// leading exponent of the order-`k` coefficient series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SupportPoint {
    pub k: u32,
    pub j0: RamifiedExponent,
}

impl SupportPoint {
    pub fn new(k: u32, j0: RamifiedExponent) -> Self {
        Self { k, j0 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PolygonEdge {
    pub from: (u32, RamifiedExponent),
    pub to: (u32, RamifiedExponent),
    pub slope: Rational64,
}

#[derive(Clone, PartialEq, Debug)]
pub struct NewtonPolygon {
    points: Vec<SupportPoint>,
    /// Vertices of the lower boundary, left to right. Vertical rays extend
    /// upward from the first and last vertex.
    vertices: Vec<(u32, RamifiedExponent)>,
    edges: Vec<PolygonEdge>,
    positive_slopes: Vec<Rational64>,
}

impl NewtonPolygon {
    pub fn points(&self) -> &[SupportPoint] {
        &self.points
    }

    pub fn vertices(&self) -> &[(u32, RamifiedExponent)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[PolygonEdge] {
        &self.edges
    }

    /// Strictly positive finite slopes of the lower boundary, increasing.
    pub fn positive_slopes(&self) -> &[Rational64] {
        &self.positive_slopes
    }
}

/// Build the polygon from a support. Requires a nonempty list with exactly
/// one point per derivative order.
pub fn polygon(points: &[SupportPoint]) -> Result<NewtonPolygon> {
    if points.is_empty() {
        return Err(Error::InvalidSupport {
            detail: "empty support".into(),
        });
    }
    let mut sorted: Vec<SupportPoint> = points.to_vec();
    sorted.sort_by_key(|p| p.k);
    for pair in sorted.windows(2) {
        if pair[0].k == pair[1].k {
            return Err(Error::InvalidSupport {
                detail: format!("two points share order {}", pair[0].k),
            });
        }
    }

    // Region floor at each present order: suffix minimum of j0.
    let mut env = vec![RamifiedExponent::zero(); sorted.len()];
    let mut run = sorted.last().unwrap().j0;
    for idx in (0..sorted.len()).rev() {
        run = run.min(sorted[idx].j0);
        env[idx] = run;
    }
    let floor: Vec<(u32, RamifiedExponent)> = sorted
        .iter()
        .zip(env.iter())
        .map(|(p, e)| (p.k, *e))
        .collect();

    // Lower convex hull of the floor points (slopes strictly increase).
    let mut chain: Vec<(u32, RamifiedExponent)> = Vec::new();
    for &pt in &floor {
        while chain.len() >= 2 {
            let a = chain[chain.len() - 2];
            let b = chain[chain.len() - 1];
            if turns_right_or_straight(a, b, pt) {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(pt);
    }

    let edges: Vec<PolygonEdge> = chain
        .windows(2)
        .map(|w| PolygonEdge {
            from: w[0],
            to: w[1],
            slope: slope(w[0], w[1]),
        })
        .collect();
    let mut positive_slopes: Vec<Rational64> = edges
        .iter()
        .map(|e| e.slope)
        .filter(|s| *s > Rational64::zero())
        .collect();
    positive_slopes.dedup();

    Ok(NewtonPolygon {
        points: sorted,
        vertices: chain,
        edges,
        positive_slopes,
    })
}

/// Candidate Gevrey orders from the polygon: `{0} ∪ {1/k_i}` over positive
/// slopes, ascending. The series either converges or has one of these orders.
pub fn gevrey_candidates(p: &NewtonPolygon) -> Vec<Rational64> {
    let mut out = vec![Rational64::zero()];
    for s in p.positive_slopes() {
        out.push(s.recip());
    }
    out.sort();
    out.dedup();
    out
}

fn slope(a: (u32, RamifiedExponent), b: (u32, RamifiedExponent)) -> Rational64 {
    let rise = b.1.as_ratio() - a.1.as_ratio();
    let run = Rational64::from_integer(i64::from(b.0) - i64::from(a.0));
    rise / run
}

/// `a → b → c` fails to turn strictly left (counterclockwise), so `b` is not
/// a lower-hull vertex.
fn turns_right_or_straight(
    a: (u32, RamifiedExponent),
    b: (u32, RamifiedExponent),
    c: (u32, RamifiedExponent),
) -> bool {
    // cross = (b - a) × (c - a), computed exactly over a common denominator
    let den = i128::from(a.1.den()) * i128::from(b.1.den()) * i128::from(c.1.den());
    let ya = i128::from(a.1.num()) * (den / i128::from(a.1.den()));
    let yb = i128::from(b.1.num()) * (den / i128::from(b.1.den()));
    let yc = i128::from(c.1.num()) * (den / i128::from(c.1.den()));
    let (xa, xb, xc) = (i128::from(a.0), i128::from(b.0), i128::from(c.0));
    let cross = (xb - xa) * (yc - ya) - (yb - ya) * (xc - xa);
    cross <= 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(k: u32, j: i64) -> SupportPoint {
        SupportPoint::new(k, RamifiedExponent::from_int(j))
    }

    fn slopes_of(points: &[SupportPoint]) -> Vec<Rational64> {
        polygon(points).unwrap().positive_slopes().to_vec()
    }

    #[test]
    fn single_slope_one_edge() {
        let p = polygon(&[pt(0, -1), pt(1, 1), pt(2, 1)]).unwrap();
        assert_eq!(p.vertices(), &[(0, RamifiedExponent::from_int(-1)), (2, RamifiedExponent::from_int(1))]);
        assert_eq!(p.edges().len(), 1);
        assert_eq!(p.edges()[0].slope, Rational64::from_integer(1));
        assert_eq!(p.positive_slopes(), &[Rational64::from_integer(1)]);
    }

    #[test]
    fn degenerate_single_point() {
        let p = polygon(&[pt(0, 0)]).unwrap();
        assert!(p.edges().is_empty());
        assert!(p.positive_slopes().is_empty());
        assert_eq!(gevrey_candidates(&p), vec![Rational64::zero()]);
    }

    #[test]
    fn vertical_translation_invariance() {
        let a = slopes_of(&[pt(0, -2), pt(1, 0), pt(2, 0)]);
        let b = slopes_of(&[pt(0, -1), pt(1, 1), pt(2, 1)]);
        assert_eq!(a, b);
    }

    #[test]
    fn floor_uses_suffix_minimum() {
        // A high point at a low order sits above the region floor and must
        // not generate a negative-slope edge.
        let p = polygon(&[pt(0, 5), pt(1, 0), pt(2, 3)]).unwrap();
        assert_eq!(
            p.vertices(),
            &[
                (0, RamifiedExponent::from_int(0)),
                (1, RamifiedExponent::from_int(0)),
                (2, RamifiedExponent::from_int(3)),
            ]
        );
        assert_eq!(p.positive_slopes(), &[Rational64::from_integer(3)]);
    }

    #[test]
    fn candidates_invert_slopes() {
        let p = polygon(&[pt(0, 0), pt(1, 0), pt(3, 1), pt(4, 5)]).unwrap();
        // slopes 0, 1/2, 4 → candidates {0, 1/4, 2}
        assert_eq!(
            gevrey_candidates(&p),
            vec![
                Rational64::zero(),
                Rational64::new(1, 4),
                Rational64::from_integer(2),
            ]
        );
        // slopes {1/2, 2} → candidates {0, 1/2, 2}
        let p = polygon(&[pt(0, 0), pt(2, 1), pt(3, 3)]).unwrap();
        assert_eq!(
            p.positive_slopes(),
            &[Rational64::new(1, 2), Rational64::from_integer(2)]
        );
        assert_eq!(
            gevrey_candidates(&p),
            vec![
                Rational64::zero(),
                Rational64::new(1, 2),
                Rational64::from_integer(2),
            ]
        );
    }

    #[test]
    fn rejects_bad_supports() {
        assert!(polygon(&[]).is_err());
        assert!(polygon(&[pt(1, 0), pt(1, 2)]).is_err());
    }
}
