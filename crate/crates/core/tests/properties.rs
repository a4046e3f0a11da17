//! Property tests: exact algebraic invariants on random inputs.

use proptest::prelude::*;

use num_bigint::BigInt;
use num_rational::BigRational;

use gevrey_core::diffsum::{
    apply_plain_operator, change_variable, evaluate_dual, evaluate_on_series, parse_diffsum,
    DiffMonomial, DiffSum, Var,
};
use gevrey_core::exponent::RamifiedExponent;
use gevrey_core::gaussian::GaussianRational;
use gevrey_core::polygon::{polygon, SupportPoint};
use gevrey_core::series::PuiseuxSeries;

fn gauss(re_n: i64, re_d: i64, im_n: i64) -> GaussianRational {
    GaussianRational::new(
        BigRational::new(BigInt::from(re_n), BigInt::from(re_d)),
        BigRational::from_integer(BigInt::from(im_n)),
    )
}

fn small_gaussian() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(n, d, im)| gauss(n, d, im))
}

fn nonzero_gaussian() -> impl Strategy<Value = GaussianRational> {
    small_gaussian().prop_filter("nonzero", |g| !g.is_zero())
}

/// Random exact series on the grid `(1/ram)·ℤ` with `k` terms.
fn series(ram: u32, terms: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = PuiseuxSeries> {
    prop::collection::vec((-6i64..=6, nonzero_gaussian()), terms).prop_map(move |items| {
        PuiseuxSeries::from_terms(
            ram,
            items
                .into_iter()
                .map(|(n, c)| (RamifiedExponent::new(n, ram), c)),
        )
    })
}

/// Random differential sum of order ≤ 2 with ≤ 6 monomials.
fn diffsum() -> impl Strategy<Value = DiffSum> {
    let monomial = (
        nonzero_gaussian(),
        -2i64..=3,
        prop::collection::btree_map(0u8..=2, 1u32..=2, 0..=2),
    )
        .prop_map(|(c, z, derivs)| DiffMonomial::new(c, RamifiedExponent::from_int(z), derivs));
    prop::collection::vec(monomial, 1..=6)
        .prop_map(|monos| DiffSum::from_monomials(Var::Z, monos))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_is_z_times_derivative(a in series(2, 3..=8)) {
        let z = PuiseuxSeries::monomial(GaussianRational::one(), RamifiedExponent::from_int(1));
        prop_assert_eq!(a.euler(), a.diff().mul(&z));
    }

    #[test]
    fn product_commutes_and_associates(
        a in series(1, 1..=5),
        b in series(1, 1..=5),
        c in series(1, 1..=5),
    ) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn monomials_are_euler_eigenvectors(n in -20i64..=20, d in 1u32..=4, c in nonzero_gaussian()) {
        let q = RamifiedExponent::new(n, d);
        let m = PuiseuxSeries::monomial(c.clone(), q);
        let expect = m.scale(&GaussianRational::new(
            BigRational::new(BigInt::from(q.num()), BigInt::from(q.den())),
            BigRational::from_integer(0.into()),
        ));
        prop_assert_eq!(m.euler(), expect);
    }

    #[test]
    fn print_parse_is_a_fixpoint(f in diffsum()) {
        let printed = f.to_string();
        let reparsed = parse_diffsum(&printed).unwrap();
        prop_assert_eq!(&reparsed, &f, "printed as `{}`", printed);
        prop_assert_eq!(reparsed.to_string(), printed);
    }

    /// The central linearity property: the symbolic first variation applied
    /// to `h` equals the `ε`-linear part of `F(w + εh)` computed by dual
    /// arithmetic, exactly.
    #[test]
    fn first_variation_linearizes(
        f in diffsum(),
        w in series(1, 1..=4),
        h in series(1, 1..=4),
    ) {
        let (value, tangent) = evaluate_dual(&f, &w, &h);
        prop_assert_eq!(value, evaluate_on_series(&f, &w));
        let via_operator = apply_plain_operator(&f.first_variation(), &w, &h);
        prop_assert_eq!(tangent, via_operator);
    }

    /// Substituting `z = t²` commutes with evaluation.
    #[test]
    fn change_variable_commutes_with_evaluation(
        f in diffsum().prop_filter("nonneg z powers", |f| {
            f.monomials().iter().all(|m| m.z_exp() >= RamifiedExponent::from_int(0))
        }),
        w in series(2, 1..=4),
    ) {
        let ft = change_variable(&f, 2).sum;
        let wt = w.substitute_power(2);
        let lhs = evaluate_on_series(&ft, &wt);
        let rhs = evaluate_on_series(&f, &w).substitute_power(2);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn change_variable_composes_with_identity(f in diffsum()) {
        let once = change_variable(&f, 1);
        prop_assert_eq!(&once.sum, &f);
        // identity first, then the real substitution, equals the substitution
        let via = change_variable(&once.sum, 2);
        let direct = change_variable(&f, 2);
        prop_assert_eq!(via.sum, direct.sum);
    }

    #[test]
    fn polygon_ignores_vertical_translation(
        raw in prop::collection::btree_map(0u32..=6, -10i64..=10, 1..=7),
        shift in -5i64..=5,
    ) {
        let base: Vec<SupportPoint> = raw
            .iter()
            .map(|(k, j)| SupportPoint::new(*k, RamifiedExponent::from_int(*j)))
            .collect();
        let moved: Vec<SupportPoint> = raw
            .iter()
            .map(|(k, j)| SupportPoint::new(*k, RamifiedExponent::from_int(*j + shift)))
            .collect();
        let a = polygon(&base).unwrap();
        let b = polygon(&moved).unwrap();
        prop_assert_eq!(a.positive_slopes(), b.positive_slopes());
    }
}
