use num_rational::BigRational;

use super::poly::{horner, poly_derivative};
use super::{Coeff, PowerSeries, RationalFunction, Series, ZAPoly};
use crate::error::{Error, Result};

/// Number of Newton steps after which an order-doubling iteration to `order`
/// is declared divergent.
fn newton_budget(order: usize) -> usize {
    (usize::BITS - order.leading_zeros()) as usize + 2
}

/// The series `A = z Phi(A) + O(z^{order+1})` for `Phi = N / D`.
///
/// Newton iteration on `G(A) = A D(A) - z N(A)` with the working order doubled
/// each step; the result is checked by substitution, so any returned series
/// satisfies the equation exactly to `order`.
pub fn solve_simply_generated<C: Coeff>(
    phi: &RationalFunction<C>,
    order: usize,
) -> Result<Series<C>> {
    let num = phi.numerator();
    let den = phi.denominator();
    let proto = num[0].zero_like();
    let inv_d0 = den[0]
        .try_inverse()
        .ok_or_else(|| Error::Domain("Phi needs an invertible denominator at 0".into()))?;
    let phi0 = num[0].times(&inv_d0);
    if phi0.is_zero() {
        return Err(Error::Domain("Phi(0) must be nonzero".into()));
    }
    let dnum = poly_derivative(num);
    let dden = poly_derivative(den);

    let residual = |a: &Series<C>| -> Series<C> {
        let z = Series::var(&proto, a.order());
        a.mul(&horner(den, a)).sub(&z.mul(&horner(num, a)))
    };

    let mut a = Series::monomial(phi0, 1, order.min(1));
    let mut prec = a.order();
    let mut steps = 0;
    while prec < order {
        steps += 1;
        if steps > newton_budget(order) {
            return Err(Error::NonConvergence { steps });
        }
        prec = (2 * prec).min(order);
        let cur = a.truncate(prec);
        let z = Series::var(&proto, prec);
        let g = residual(&cur);
        let dg = horner(den, &cur)
            .add(&cur.mul(&horner(&dden, &cur)))
            .sub(&z.mul(&horner(&dnum, &cur)));
        a = cur.sub(&g.div(&dg)?);
    }
    if !residual(&a).is_zero() {
        return Err(Error::NonConvergence { steps });
    }
    Ok(a)
}

/// Iterates `a <- f(a)` from zero until the series stops changing.
///
/// `f` must raise the agreement order by at least one per application (as
/// `z`-multiplied right-hand sides do); otherwise the iteration fails after
/// `order + 2` rounds.
pub fn solve_fixpoint<C: Coeff>(
    f: impl Fn(&Series<C>) -> Result<Series<C>>,
    proto: &C,
    order: usize,
) -> Result<Series<C>> {
    let mut a = Series::zero(proto, order);
    for _ in 0..order + 2 {
        let next = f(&a)?.truncate(order);
        if next == a {
            return Ok(a);
        }
        a = next;
    }
    Err(Error::NonConvergence { steps: order + 2 })
}

/// The power-series root of `P(z, A) = 0` that starts with `seed`.
///
/// Newton iteration in which `dP/dA` at the branch may vanish to some order
/// `v` at `z = 0`: the equation is worked at order `order + v` and the
/// correction obtained after removing `z^v` from both sides. The seed must
/// make `P` vanish beyond `z^v`, and the derivative's valuation must stay
/// `v` throughout.
pub fn algebraic_branch_solve(p: &ZAPoly, seed: &PowerSeries, order: usize) -> Result<PowerSeries> {
    let dp = p.derivative_a();
    let zero = BigRational::from_integer(0.into());
    let mut b = seed.truncate(order);

    // The derivative's valuation is decided by the seed; probe it generously.
    let probe = order + 8;
    let v = dp
        .eval_series(&Series::var(&zero, probe), &b.truncate(probe))
        .valuation()
        .ok_or_else(|| Error::Branch("dP/dA vanishes identically on the seed".into()))?;
    if v > order + 7 {
        return Err(Error::Branch(alloc::format!(
            "dP/dA vanishes to order {v} on the seed"
        )));
    }
    let work = order + v;
    let z = Series::var(&zero, work);

    for _ in 0..order + 2 {
        let padded = b.truncate(work);
        let value = p.eval_series(&z, &padded);
        if value.is_zero() {
            return Ok(b);
        }
        let low = value.valuation().unwrap_or(work + 1);
        if low <= v {
            return Err(Error::Branch(alloc::format!(
                "seed inconsistent with P: residual has a z^{low} term but dP/dA vanishes to order {v}"
            )));
        }
        let slope = dp.eval_series(&z, &padded);
        if slope.valuation() != Some(v) {
            return Err(Error::Branch(
                "dP/dA changed valuation along the iteration".into(),
            ));
        }
        let step = value.drop_low(v).div(&slope.drop_low(v))?;
        b = b.sub(&step);
    }
    Err(Error::NonConvergence { steps: order + 2 })
}

/// `(1/n) [y^{n-1}] Phi(y)^n`, the `n`-th coefficient of the solution of
/// `A = z Phi(A)`.
pub fn lagrange_coefficient<C: Coeff>(phi: &RationalFunction<C>, n: usize) -> Result<C> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let proto = phi.numerator()[0].zero_like();
    let y = Series::var(&proto, n - 1);
    let power = phi.eval_series(&y)?.pow(n as u32);
    let inv_n = BigRational::new(1.into(), (n as i64).into());
    Ok(power.coeffs()[n - 1].times(&proto.from_rational(&inv_n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Marker, MarkerPoly, MultiSeries};
    use alloc::vec;
    use alloc::vec::Vec;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| i64::try_from(c.to_integer()).unwrap())
            .collect()
    }

    fn dist_phi() -> RationalFunction<BigRational> {
        RationalFunction::new(vec![r(1), r(-1), r(1)], vec![r(1), r(-2), r(1)]).unwrap()
    }

    #[test]
    fn distinguished_model_coefficients() {
        let a = solve_simply_generated(&dist_phi(), 7).unwrap();
        assert_eq!(ints(&a), vec![0, 1, 1, 3, 10, 37, 146, 602]);
    }

    #[test]
    fn constant_phi_gives_z() {
        let phi = RationalFunction::polynomial(vec![r(1)]).unwrap();
        assert_eq!(solve_simply_generated(&phi, 6).unwrap(), PowerSeries::z(6));
        let zero = RationalFunction::polynomial(vec![r(0), r(1)]).unwrap();
        assert!(solve_simply_generated(&zero, 6).is_err());
    }

    #[test]
    fn leaf_marked_model_matches_lagrange() {
        // Phi = u + y / (1 - y)^2 = (u (1 - y)^2 + y) / (1 - y)^2
        let u = MarkerPoly::marker(Marker::U);
        let int = MarkerPoly::integer;
        let num = vec![u.clone(), int(1).minus(&u.times(&int(2))), u.clone()];
        let den = vec![int(1), int(-2), int(1)];
        let phi = RationalFunction::new(num, den).unwrap();
        let a: MultiSeries = solve_simply_generated(&phi, 6).unwrap();
        let c5 = &a.coeffs()[5];
        for (k, want) in [(1, 1), (2, 12), (3, 20), (4, 4)] {
            assert_eq!(c5.univariate_coefficient(Marker::U, k), r(want));
        }
        for n in 1..=6 {
            assert_eq!(lagrange_coefficient(&phi, n).unwrap(), a.coeffs()[n]);
        }
    }

    #[test]
    fn lagrange_classical() {
        let phi = RationalFunction::new(vec![r(1)], vec![r(1), r(-1)]).unwrap();
        assert_eq!(lagrange_coefficient(&phi, 6).unwrap(), r(42));
        assert_eq!(lagrange_coefficient(&dist_phi(), 5).unwrap(), r(37));
        assert!(lagrange_coefficient(&phi, 0).is_err());
    }

    #[test]
    fn fixpoint_catalan() {
        // A = z / (1 - A)
        let one = PowerSeries::one(8);
        let a = solve_fixpoint(
            |a: &PowerSeries| one.sub(a).reciprocal().map(|s| s.mul_z_pow(1)),
            &r(0),
            8,
        )
        .unwrap();
        assert_eq!(ints(&a), vec![0, 1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn branch_solve_catalan_and_marked_dist() {
        let catalan = ZAPoly::from_int_terms(&[(0, 1, 1), (0, 2, -1), (1, 0, -1)]);
        let b = algebraic_branch_solve(&catalan, &PowerSeries::z(6), 6).unwrap();
        assert_eq!(ints(&b), vec![0, 1, 1, 2, 5, 14, 42]);

        let cubic = ZAPoly::from_int_terms(&[
            (0, 3, -1),
            (0, 2, 2),
            (0, 1, -1),
            (1, 2, 1),
            (1, 0, 1),
            (2, 0, -1),
        ]);
        let a = algebraic_branch_solve(&cubic, &PowerSeries::z(8), 8).unwrap();
        assert_eq!(ints(&a), vec![0, 1, 1, 4, 17, 78, 378, 1906, 9901]);
    }

    #[test]
    fn branch_solve_with_degenerate_derivative() {
        // P = (B - z)^2 - z^4 = (B - z - z^2)(B - z + z^2); on either branch
        // dP/dB = 2(B - z) vanishes to order 2.
        let p = ZAPoly::from_int_terms(&[(0, 2, 1), (1, 1, -2), (2, 0, 1), (4, 0, -1)]);
        let seed = PowerSeries::from_ints(&[0, 1, 1], 6);
        let b = algebraic_branch_solve(&p, &seed, 6).unwrap();
        assert_eq!(ints(&b), vec![0, 1, 1, 0, 0, 0, 0]);
        // From 2z Newton only halves the distance to the double root in the
        // z coefficient and never lands on it.
        assert!(algebraic_branch_solve(&p, &PowerSeries::from_ints(&[0, 2], 6), 6).is_err());
    }
}
