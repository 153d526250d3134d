//! Generating functions of the tree families, expanded exactly.
//!
//! Trees with distinguished children satisfy `A = z Phi(A)` with
//! `Phi(y) = 1 + y / (1 - y)^2`; every parameter studied here has a
//! generating function that is rational in `z` and `A`, collected as
//! [`RationalZA`] so that the same expressions feed both the exact series and
//! the singular expansions.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::series::{
    algebraic_branch_solve, solve_fixpoint, solve_simply_generated, Coeff, Marker, MarkerPoly,
    MultiSeries, PowerSeries, RationalFunction, RationalZA, Series, ZAPoly,
};

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Degree weights of the distinguished model, `(1 - y + y^2) / (1 - y)^2`.
pub fn distinguished_phi() -> RationalFunction<BigRational> {
    RationalFunction::new(
        alloc::vec![rat(1), rat(-1), rat(1)],
        alloc::vec![rat(1), rat(-2), rat(1)],
    )
    .expect("nonzero denominator")
}

/// Degree weights of ordered trees, `1 / (1 - y)`.
pub fn ordered_phi() -> RationalFunction<BigRational> {
    RationalFunction::new(alloc::vec![rat(1)], alloc::vec![rat(1), rat(-1)])
        .expect("nonzero denominator")
}

/// `u + y / (1 - y)^2`: the distinguished model with `u` marking leaves.
pub fn leaf_marked_phi() -> RationalFunction<MarkerPoly> {
    let u = MarkerPoly::marker(Marker::U);
    let int = MarkerPoly::integer;
    RationalFunction::new(
        alloc::vec![u.clone(), int(1).minus(&u.times(&int(2))), u],
        alloc::vec![int(1), int(-2), int(1)],
    )
    .expect("nonzero denominator")
}

/// `1 + u y / (1 - y)`: ordered trees with `u` marking leftmost edges.
pub fn leftmost_edge_phi() -> RationalFunction<MarkerPoly> {
    let u = MarkerPoly::marker(Marker::U);
    let int = MarkerPoly::integer;
    RationalFunction::new(
        alloc::vec![int(1), u.minus(&int(1))],
        alloc::vec![int(1), int(-1)],
    )
    .expect("nonzero denominator")
}

/// `A(z)`, trees with distinguished children counted by nodes.
pub fn dist_series(order: usize) -> Result<PowerSeries> {
    solve_simply_generated(&distinguished_phi(), order)
}

/// `A(z, u)` with `u` marking leaves (the single node is a leaf).
pub fn leaves_bivariate(order: usize) -> Result<MultiSeries> {
    solve_simply_generated(&leaf_marked_phi(), order)
}

/// `F(z, u)`: ordered trees by nodes, `u` marking leftmost edges.
pub fn leftmost_edge_bivariate(order: usize) -> Result<MultiSeries> {
    solve_simply_generated(&leftmost_edge_phi(), order)
}

/// `(1 + z(1 - u) - sqrt(1 - 2(1 + u) z + (1 - u)^2 z^2)) / 2`, the explicit
/// form of [`leftmost_edge_bivariate`].
pub fn leftmost_edge_closed_form(order: usize) -> Result<MultiSeries> {
    let int = MarkerPoly::integer;
    let u = MarkerPoly::marker(Marker::U);
    let one_u = int(1).plus(&u);
    let one_minus_u = int(1).minus(&u);
    let radicand = alloc::vec![
        int(1),
        one_u.times(&int(-2)),
        one_minus_u.times(&one_minus_u),
    ];
    let root = Series::from_prefix(radicand, &int(0), order).sqrt()?;
    let head = Series::from_prefix(alloc::vec![int(1), one_minus_u], &int(0), order);
    let half = MarkerPoly::constant(BigRational::new(1.into(), 2.into()));
    Ok(head.sub(&root).scale(&half))
}

/// `A(z, u, v) = z u + z A / (1 - A + z u - z v)^2`: `u` marks old leaves
/// (leftmost children, and the single node) and `v` young leaves.
pub fn old_young_trivariate(order: usize) -> Result<MultiSeries> {
    let u = MarkerPoly::marker(Marker::U);
    let v = MarkerPoly::marker(Marker::V);
    old_leaves_equation(u, v, order)
}

/// `A(z, u) = z u + z A / (1 - A + z u - z)^2`: `u` marks old leaves only.
pub fn old_leaves_bivariate(order: usize) -> Result<MultiSeries> {
    old_leaves_equation(MarkerPoly::marker(Marker::U), MarkerPoly::integer(1), order)
}

fn old_leaves_equation(u: MarkerPoly, v: MarkerPoly, order: usize) -> Result<MultiSeries> {
    let zero = MarkerPoly::zero();
    let zu = Series::monomial(u.clone(), 1, order);
    let shift = Series::from_prefix(
        alloc::vec![MarkerPoly::integer(1), u.minus(&v)],
        &zero,
        order,
    );
    solve_fixpoint(
        |a: &MultiSeries| {
            let base = shift.sub(a);
            let tail = a.div(&base.mul(&base))?.mul_z_pow(1);
            Ok(zu.add(&tail))
        },
        &zero,
        order,
    )
}

/// `B = (z A^2 - 2 z A + z) / (3 A^2 - 2 (2 + z) A + 1 + z)`: total number of
/// leaves.
pub fn leaves_gf() -> RationalZA {
    RationalZA::new(
        ZAPoly::from_int_terms(&[(1, 2, 1), (1, 1, -2), (1, 0, 1)]),
        ZAPoly::from_int_terms(&[(0, 2, 3), (0, 1, -4), (1, 1, -2), (0, 0, 1), (1, 0, 1)]),
    )
}

/// `B = z (6z + 2z^2 - 6A^2 + 10A + 4zA^2 - 2zA - z^2 A - 4) / q(z)`, the
/// same series with the denominator expressed through `q(z)` only.
pub fn leaves_gf_reduced() -> RationalZA {
    RationalZA::new(
        ZAPoly::from_int_terms(&[
            (2, 0, 6),
            (3, 0, 2),
            (1, 2, -6),
            (1, 1, 10),
            (2, 2, 4),
            (2, 1, -2),
            (3, 1, -1),
            (1, 0, -4),
        ]),
        singular_cubic_za(),
    )
}

/// `q(z) = 3z^3 + 4z^2 + 20z - 4`, which vanishes at the dominant singularity.
pub fn singular_cubic() -> [i64; 4] {
    [-4, 20, 4, 3]
}

fn singular_cubic_za() -> ZAPoly {
    let q = singular_cubic();
    ZAPoly::from_int_terms(&[(0, 0, q[0]), (1, 0, q[1]), (2, 0, q[2]), (3, 0, q[3])])
}

/// `-q B^3 + z q B^2 - z^3 (3z + 5) B + z^4`, the cubic satisfied by the
/// leaves series `B`, as a polynomial in `(z, B)`.
pub fn leaves_cubic() -> ZAPoly {
    ZAPoly::from_int_terms(&[
        (0, 3, 4),
        (1, 3, -20),
        (2, 3, -4),
        (3, 3, -3),
        (1, 2, -4),
        (2, 2, 20),
        (3, 2, 4),
        (4, 2, 3),
        (3, 1, -5),
        (4, 1, -3),
        (4, 0, 1),
    ])
}

/// `-z + z (z + 5) B + q (B^2 + B^3)`: an alternative cubic for `B`, kept so
/// that its residual on the true series can be exhibited.
pub fn leaves_cubic_alternative() -> ZAPoly {
    let q = singular_cubic();
    let mut terms = alloc::vec![(1, 0, -1), (1, 1, 5), (2, 1, 1)];
    for (i, &c) in q.iter().enumerate() {
        terms.push((i as u32, 2, c));
        terms.push((i as u32, 3, c));
    }
    ZAPoly::from_int_terms(&terms)
}

/// `B(z)` by Newton iteration on [`leaves_cubic`] from the seed `z`.
pub fn leaves_series_from_cubic(order: usize) -> Result<PowerSeries> {
    algebraic_branch_solve(&leaves_cubic(), &PowerSeries::z(order), order)
}

/// `z A (A + 1) / (1 - A)^3`: sum of root degrees.
pub fn root_degree_gf() -> RationalZA {
    RationalZA::new(
        ZAPoly::from_int_terms(&[(1, 2, 1), (1, 1, 1)]),
        ZAPoly::from_int_terms(&[(0, 0, 1), (0, 1, -3), (0, 2, 3), (0, 3, -1)]),
    )
}

/// `F(z, w) = z + z w A / (1 - w A)^2`: `w` marks the root degree.
pub fn root_degree_bivariate(order: usize) -> Result<MultiSeries> {
    let a = MultiSeries::lift(&dist_series(order)?);
    let w = MultiSeries::marker_series(Marker::W, order);
    let wa = w.mul(&a);
    let one = Series::constant(MarkerPoly::integer(1), order);
    let base = one.sub(&wa);
    let z = Series::var(&MarkerPoly::zero(), order);
    Ok(z.add(&z.mul(&wa).div(&base.mul(&base))?))
}

/// `A^2 / z`: sum over trees of the number of nodes on the path to the
/// leftmost leaf.
pub fn leftmost_path_gf() -> RationalZA {
    RationalZA::new(
        ZAPoly::from_int_terms(&[(0, 2, 1)]),
        ZAPoly::from_int_terms(&[(1, 0, 1)]),
    )
}

/// `F = z w (1 - A)^2 / (1 - z w - 2A + A^2)`: `w` marks nodes on the path to
/// the leftmost leaf.
pub fn leftmost_path_bivariate(order: usize) -> Result<MultiSeries> {
    let a = MultiSeries::lift(&dist_series(order)?);
    let zw = Series::monomial(MarkerPoly::marker(Marker::W), 1, order);
    let one = Series::constant(MarkerPoly::integer(1), order);
    let one_a = one.sub(&a);
    let sq = one_a.mul(&one_a);
    zw.mul(&sq).div(&sq.sub(&zw))
}

/// `Y = -(2zA^2 - 2A^2 + z^2 A + 3zA + 2A + z^2 - 2z) / q(z)`: total
/// pathlength (depths in edges).
pub fn pathlength_gf() -> RationalZA {
    RationalZA::new(
        ZAPoly::from_int_terms(&[
            (1, 2, -2),
            (0, 2, 2),
            (2, 1, -1),
            (1, 1, -3),
            (0, 1, -2),
            (2, 0, -1),
            (1, 0, 2),
        ]),
        singular_cubic_za(),
    )
}

/// [`pathlength_gf`] with `zA` in place of `3zA`; it does not reproduce the
/// brute-force pathlengths and exists to show that.
pub fn pathlength_gf_variant() -> RationalZA {
    let mut gf = pathlength_gf();
    gf.num.add_term(1, 1, rat(2));
    gf
}

/// `(z (1 - A)^3 - 2 z^2 A) / ((1 - A)^3 - z (1 - A) - 2 z A)`: total number
/// of old leaves, obtained by differentiating the old-leaves equation in `u`.
pub fn old_leaves_gf() -> RationalZA {
    RationalZA::new(
        ZAPoly::from_int_terms(&[(1, 0, 1), (1, 1, -3), (1, 2, 3), (1, 3, -1), (2, 1, -2)]),
        ZAPoly::from_int_terms(&[
            (0, 0, 1),
            (0, 1, -3),
            (0, 2, 3),
            (0, 3, -1),
            (1, 0, -1),
            (1, 1, 1),
            (1, 1, -2),
        ]),
    )
}

/// [`old_leaves_gf`] with the cubic in `A` eliminated from the denominator:
/// `-z (2A^2 z^2 + 2A^2 z + 2A^2 - 2Az^3 - 5Az^2 - 12Az - 2A - 2z^3 - 14z + 4) / q(z)`.
pub fn old_leaves_gf_reduced() -> RationalZA {
    RationalZA::new(old_leaves_reduced_numerator(2), singular_cubic_za())
}

/// [`old_leaves_gf_reduced`] with coefficient 1 on the `A^2` term; kept to
/// show that it does not match the brute-force counts.
pub fn old_leaves_gf_variant() -> RationalZA {
    RationalZA::new(old_leaves_reduced_numerator(1), singular_cubic_za())
}

fn old_leaves_reduced_numerator(a_squared: i64) -> ZAPoly {
    // -z * (...), written out term by term.
    ZAPoly::from_int_terms(&[
        (3, 2, -2),
        (2, 2, -2),
        (1, 2, -a_squared),
        (4, 1, 2),
        (3, 1, 5),
        (2, 1, 12),
        (1, 1, 2),
        (4, 0, 2),
        (2, 0, 14),
        (1, 0, -4),
    ])
}

/// Exact series of a parameter generating function to `order`.
pub fn gf_series(gf: &RationalZA, order: usize) -> Result<PowerSeries> {
    let a = dist_series(order + 2)?;
    Ok(gf.eval_exact(&a)?.truncated(order))
}

/// Coefficient ratio `[z^n] num / [z^n] den`.
pub fn coefficient_ratio(num: &PowerSeries, den: &PowerSeries, n: usize) -> Result<BigRational> {
    let d = den.coeff(n)?;
    if num_traits::Zero::is_zero(d) {
        return Err(Error::Domain(alloc::format!(
            "coefficient {n} of the base series is 0"
        )));
    }
    Ok(num.coeff(n)? / d)
}
