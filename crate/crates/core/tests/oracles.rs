//! Cross-checks between exhaustive generation, closed forms, exact series and
//! singularity analysis.

use num_bigint::BigInt;
use num_rational::BigRational;

use distree_core::asymptotics::{
    count_asymptote, height_richardson, mean_height_exact, parameter_constant, ratio_to_f64,
    structural_constants, ConstantKind, ExactOracle, Singularity, Status,
};
use distree_core::closed_forms::{
    catalan, dist_count, dist_count_by_leaves, leftmost_edge_count, leftmost_edge_count_kn_variant,
};
use distree_core::marked::{
    marked_dist_cubic, marked_dist_series, marked_series, skew_validate, tree_to_skew,
};
use distree_core::models;
use distree_core::series::{lagrange_coefficient, marker_derivative_at_one, Marker, PowerSeries};
use distree_core::tree::{aggregate, count, gen_marked, Guard};
use distree_core::{Family, LeafConvention, Parameter};

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[test]
fn distinguished_counts_by_every_route() {
    let a = models::dist_series(12).unwrap();
    let phi = models::distinguished_phi();
    for n in 1..=10 {
        let generated = count(Family::Distinguished, n, Guard::Enforce).unwrap();
        assert_eq!(int(generated), a.coeffs()[n], "series n={n}");
        assert_eq!(
            BigInt::from(generated),
            dist_count(n).unwrap(),
            "closed form n={n}"
        );
        assert_eq!(
            lagrange_coefficient(&phi, n).unwrap(),
            a.coeffs()[n],
            "Lagrange n={n}"
        );
    }
}

#[test]
fn leaves_distribution_matches_closed_form() {
    for n in 1..=9 {
        let agg = aggregate(
            n,
            Family::Distinguished,
            Parameter::Leaves,
            LeafConvention::SingleNodeIsLeaf,
            Guard::Enforce,
        )
        .unwrap();
        for j in 0..=n {
            let brute = agg.distribution.get(&(j as u64)).copied().unwrap_or(0);
            assert_eq!(
                BigInt::from(brute),
                dist_count_by_leaves(n, j).unwrap(),
                "n={n} j={j}"
            );
        }
    }
}

#[test]
fn leftmost_edges_adjudicate_the_binomial() {
    let mut refuted = false;
    for n in 1..=12 {
        let agg = aggregate(
            n,
            Family::Ordered,
            Parameter::LeftmostEdges,
            LeafConvention::SingleNodeNotLeaf,
            Guard::Enforce,
        )
        .unwrap();
        assert_eq!(BigInt::from(agg.count), catalan(n - 1));
        for k in 0..=n {
            let brute = agg.distribution.get(&(k as u64)).copied().unwrap_or(0);
            assert_eq!(
                BigInt::from(brute),
                leftmost_edge_count(n, k).unwrap(),
                "n={n} k={k}"
            );
            if n <= 4 && k <= 2 && int(brute) != leftmost_edge_count_kn_variant(n, k).unwrap() {
                refuted = true;
            }
        }
    }
    assert!(refuted);
}

#[test]
fn pathlength_series_and_brute_force() {
    let y = models::gf_series(&models::pathlength_gf(), 9).unwrap();
    let expected = [0u64, 0, 1, 7, 41, 230, 1261, 6824, 36627, 195504];
    for (n, &e) in expected.iter().enumerate() {
        assert_eq!(y.coeffs()[n], int(e), "n={n}");
    }
    for n in 1..=9 {
        let agg = aggregate(
            n,
            Family::Distinguished,
            Parameter::Pathlength,
            LeafConvention::SingleNodeIsLeaf,
            Guard::Enforce,
        )
        .unwrap();
        assert_eq!(int(agg.total as u64), y.coeffs()[n], "n={n}");
    }
}

#[test]
fn parameter_totals_match_brute_force() {
    let cases = [
        (Parameter::Leaves, models::leaves_gf()),
        (Parameter::RootDegree, models::root_degree_gf()),
        (Parameter::LeftmostPath, models::leftmost_path_gf()),
        (Parameter::OldLeaves, models::old_leaves_gf()),
    ];
    for (param, gf) in cases {
        let s = models::gf_series(&gf, 9).unwrap();
        for n in 1..=9 {
            let agg = aggregate(
                n,
                Family::Distinguished,
                param,
                LeafConvention::SingleNodeIsLeaf,
                Guard::Enforce,
            )
            .unwrap();
            assert_eq!(int(agg.total as u64), s.coeffs()[n], "{param} n={n}");
        }
    }
}

#[test]
fn leaf_cubic_branch_matches_marker_derivative() {
    let order = 60;
    let from_cubic = models::leaves_series_from_cubic(order).unwrap();
    let from_markers =
        marker_derivative_at_one(&models::leaves_bivariate(order).unwrap(), Marker::U);
    assert_eq!(from_cubic, from_markers);
}

#[test]
fn marked_families_match_series() {
    let m = marked_series(9).unwrap();
    for n in 1..=9 {
        assert_eq!(
            int(count(Family::Marked, n, Guard::Enforce).unwrap()),
            m.coeffs()[n]
        );
    }
    let md = marked_dist_series(64).unwrap();
    assert!(marked_dist_cubic()
        .eval_series(&PowerSeries::z(64), &md)
        .is_zero());
    for n in 1..=8 {
        assert_eq!(
            int(count(Family::MarkedDist, n, Guard::Enforce).unwrap()),
            md.coeffs()[n]
        );
    }
}

#[test]
fn skew_images_are_valid_and_distinct() {
    for n in 1..=8 {
        let trees = gen_marked(n).unwrap();
        let mut paths = std::collections::BTreeSet::new();
        for t in &trees {
            let p = tree_to_skew(t);
            assert_eq!(skew_validate(&p), Ok(()));
            let l_steps = p.steps.iter().filter(|s| s.letter() == 'L').count();
            assert_eq!(l_steps, t.marked_edges());
            assert!(paths.insert(p));
        }
        assert_eq!(
            paths.len() as u64,
            count(Family::Marked, n, Guard::Enforce).unwrap()
        );
    }
}

#[test]
fn count_asymptotics() {
    let sd = structural_constants(&models::distinguished_phi(), 30).unwrap();
    let oracle = ExactOracle::new(200).unwrap();
    let sing = Singularity::new(&models::distinguished_phi(), 30).unwrap();
    let ratio = oracle.count_ratio(&sing, 200).unwrap();
    assert!((ratio - 1.0).abs() < 0.02, "{ratio}");
    let cat = structural_constants(&models::ordered_phi(), 30).unwrap();
    // [z^n] of the ordered-tree series is Catalan(n - 1) ~ 4^(n-1) n^(-3/2) / sqrt(pi).
    let n = 300;
    let bits = cat.tau.bits() + 700;
    let asym = count_asymptote(&cat, n).with_bits(bits);
    let exact_r = distree_core::Real::from_ratio(&BigRational::from_integer(catalan(n - 1)), bits);
    let r = (&exact_r / &asym).to_f64();
    assert!((r - 1.0).abs() < 0.01, "{r}");
    assert!(sd.amplitude.to_f64() > 0.0);
}

#[test]
fn means_at_two_hundred() {
    let sing = Singularity::new(&models::distinguished_phi(), 30).unwrap();
    let oracle = ExactOracle::new(200).unwrap();
    let n = 200;
    let mean = |k| oracle.mean_f64(k, n).unwrap();
    assert!((mean(ConstantKind::Leaves) - 106.19485627693761).abs() < 1e-9);
    assert!((mean(ConstantKind::RootDegree) - 2.9408553815880243).abs() < 1e-12);
    assert!((mean(ConstantKind::LeftmostPath) - 3.7384012264532815).abs() < 1e-12);
    assert!((mean(ConstantKind::Pathlength) - 2391.261439351727).abs() < 1e-7);
    assert!((mean(ConstantKind::OldLeaves) - 49.95261921520982).abs() < 1e-9);
    // With exact binomial coefficients, six singular terms reproduce every
    // exact mean.
    for kind in [
        ConstantKind::Leaves,
        ConstantKind::RootDegree,
        ConstantKind::LeftmostPath,
        ConstantKind::Pathlength,
        ConstantKind::OldLeaves,
    ] {
        let e = sing.expand(&kind.total_gf().unwrap()).unwrap();
        let predicted = sing.predict_mean_exact(&e, n, 6).to_f64();
        assert!(
            (predicted / mean(kind) - 1.0).abs() < 1e-10,
            "{kind}: {predicted}"
        );
    }
    for kind in [
        ConstantKind::Leaves,
        ConstantKind::RootDegree,
        ConstantKind::LeftmostPath,
    ] {
        let c = parameter_constant(&sing, kind).unwrap();
        assert_eq!(c.status, Status::Confirmed);
    }
}

#[test]
fn heights_at_two_hundred() {
    let h = mean_height_exact(200).unwrap();
    let at = |n: usize| ratio_to_f64(&h[n - 1]);
    assert!((at(50) - 10.686073).abs() < 1e-5);
    assert!((at(100) - 15.872023).abs() < 1e-5);
    assert!((at(200) - 23.228315).abs() < 1e-5);
    let fitted = height_richardson(at(100), 100, at(200), 200);
    assert!((fitted - 1.009922004).abs() < 0.01, "{fitted}");
}
