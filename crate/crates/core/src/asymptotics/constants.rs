//! Leading constants of the parameters of trees with distinguished children,
//! compared with reference values, and exact finite-`n` means to test them
//! against.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, ToPrimitive, Zero};

use super::{count_asymptote, height_constant, Singularity};
use crate::error::{Error, Result};
use crate::models;
use crate::real::Real;
use crate::series::{solve_simply_generated, Coeff, RationalZA, Series};

/// Relative difference below which a recomputed constant confirms a
/// reference value.
pub const CONFIRM_TOLERANCE: f64 = 1e-6;

/// The quantities with a leading asymptotic constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstantKind {
    /// `[z^n] A ~ c rho^{-n} n^{-3/2}`.
    Count,
    /// Mean number of leaves `~ c n`.
    Leaves,
    /// Mean height `~ c sqrt(pi n)`.
    Height,
    /// Mean root degree `~ c`.
    RootDegree,
    /// Mean number of nodes on the leftmost path `~ c`.
    LeftmostPath,
    /// Mean pathlength `~ c n^{3/2}`.
    Pathlength,
    /// Mean number of old leaves `~ c n`.
    OldLeaves,
}

impl ConstantKind {
    pub const ALL: [ConstantKind; 7] = [
        ConstantKind::Count,
        ConstantKind::Leaves,
        ConstantKind::Height,
        ConstantKind::RootDegree,
        ConstantKind::LeftmostPath,
        ConstantKind::Pathlength,
        ConstantKind::OldLeaves,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstantKind::Count => "count",
            ConstantKind::Leaves => "leaves",
            ConstantKind::Height => "height",
            ConstantKind::RootDegree => "root-degree",
            ConstantKind::LeftmostPath => "leftmost-path",
            ConstantKind::Pathlength => "pathlength",
            ConstantKind::OldLeaves => "old-leaves",
        }
    }

    /// Twice the exponent of `n` in the leading term (`-3` for the count,
    /// whose leading term also carries `rho^{-n}`).
    pub fn exponent_twice(self) -> i64 {
        match self {
            ConstantKind::Count => -3,
            ConstantKind::Leaves | ConstantKind::OldLeaves => 2,
            ConstantKind::Height => 1,
            ConstantKind::RootDegree | ConstantKind::LeftmostPath => 0,
            ConstantKind::Pathlength => 3,
        }
    }

    /// Generating function of the parameter summed over all trees, for the
    /// kinds that have one.
    pub fn total_gf(self) -> Option<RationalZA> {
        match self {
            ConstantKind::Leaves => Some(models::leaves_gf()),
            ConstantKind::RootDegree => Some(models::root_degree_gf()),
            ConstantKind::LeftmostPath => Some(models::leftmost_path_gf()),
            ConstantKind::Pathlength => Some(models::pathlength_gf()),
            ConstantKind::OldLeaves => Some(models::old_leaves_gf()),
            ConstantKind::Count | ConstantKind::Height => None,
        }
    }
}

impl fmt::Display for ConstantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstantKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstantKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Domain(alloc::format!("unknown constant `{s}`")))
    }
}

/// Reference value of each constant, as a decimal string.
pub fn reference_value(kind: ConstantKind) -> &'static str {
    match kind {
        ConstantKind::Count => "0.3046050464",
        ConstantKind::Leaves => "0.5306035756",
        ConstantKind::Height => "1.009922004",
        ConstantKind::RootDegree => "2.960894939",
        ConstantKind::LeftmostPath => "3.769292351",
        ConstantKind::Pathlength => "0.3022802536",
        ConstantKind::OldLeaves => "0.01611715258",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Confirmed,
    Discrepant,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "confirmed",
            Status::Discrepant => "discrepant",
        })
    }
}

/// A recomputed constant next to its reference value.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticConstant {
    pub kind: ConstantKind,
    pub reference: &'static str,
    pub recomputed: Real,
    pub exponent_twice: i64,
    /// `|reference - recomputed| / recomputed`.
    pub relative_difference: f64,
    pub status: Status,
    pub note: &'static str,
}

/// How each constant is obtained, and what differs from the reference.
pub fn note(kind: ConstantKind) -> &'static str {
    match kind {
        ConstantKind::Count => {
            "sqrt(Phi/(2 pi Phi'')) = amplitude/(2 sqrt(pi)); the reference is -1.079796775/Gamma(-1/2), the amplitude of the root-degree total"
        }
        ConstantKind::Leaves => "dominant s^-1 term of the leaf total over the count",
        ConstantKind::Height => "sqrt(2/(Phi Phi'')) Phi' at tau; mean height ~ c sqrt(pi n)",
        ConstantKind::RootDegree => "zA(A+1)/(1-A)^3 over the count",
        ConstantKind::LeftmostPath => "A^2/z over the count; nodes on the path, root included",
        ConstantKind::Pathlength => {
            "0.09207609067 (the (1-z/rho)^-1 amplitude of the pathlength total) over the count constant; the reference divides by the root-degree amplitude 0.3046050464"
        }
        ConstantKind::OldLeaves => {
            "s^-1 amplitude of the old-leaf total over the count amplitude; the reference divides by q'(rho) instead of rho q'(rho) and by the root-degree amplitude"
        }
    }
}

/// Recomputes the constant of `kind` from the singular expansion.
pub fn parameter_constant(sing: &Singularity, kind: ConstantKind) -> Result<AsymptoticConstant> {
    let sd = &sing.data;
    let bits = sd.tau.bits();
    let recomputed = match kind {
        ConstantKind::Count => {
            let two_pi = &Real::pi(bits) * &Real::from_i64(2, bits);
            (&sd.phi0 / &(&two_pi * &sd.phi2)).sqrt().expect("positive")
        }
        ConstantKind::Height => height_constant(sd),
        _ => {
            let gf = kind
                .total_gf()
                .expect("parameter kinds have a generating function");
            let mean = sing.mean(&gf)?;
            if mean.exponent_twice != kind.exponent_twice() {
                return Err(Error::Model(alloc::format!(
                    "{kind}: mean grows like n^({}/2), expected n^({}/2)",
                    mean.exponent_twice,
                    kind.exponent_twice()
                )));
            }
            mean.constant
        }
    };
    let reference = reference_value(kind);
    let reference_value = Real::from_decimal(reference, bits).expect("valid decimal");
    let relative_difference = (&(&reference_value - &recomputed) / &recomputed)
        .abs()
        .to_f64();
    let status = if relative_difference < CONFIRM_TOLERANCE {
        Status::Confirmed
    } else {
        Status::Discrepant
    };
    Ok(AsymptoticConstant {
        kind,
        reference,
        recomputed,
        exponent_twice: kind.exponent_twice(),
        relative_difference,
        status,
        note: note(kind),
    })
}

/// An exact finite-`n` value next to its asymptotic prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub n: usize,
    pub exact: f64,
    pub predicted: f64,
    /// `|predicted - exact| / |exact|`.
    pub relative_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl fmt::Display for CrossCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} exact={:.9} predicted={:.9} rel_err={:.3e} tol={:.1e} {}",
            self.n,
            self.exact,
            self.predicted,
            self.relative_error,
            self.tolerance,
            if self.pass { "pass" } else { "fail" }
        )
    }
}

/// Exact coefficient types whose ratios can be formed.
pub trait ExactCoefficient: Coeff {
    fn to_rational(&self) -> BigRational;
}

impl ExactCoefficient for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

impl ExactCoefficient for BigInt {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }
}

fn coefficient_ratio<C: ExactCoefficient>(
    num: &Series<C>,
    base: &Series<C>,
    n: usize,
) -> Result<BigRational> {
    let d = base.coeff(n)?.to_rational();
    if Zero::is_zero(&d) {
        return Err(Error::Domain(alloc::format!(
            "coefficient {n} of the base series is 0"
        )));
    }
    Ok(num.coeff(n)?.to_rational() / d)
}

/// Compares `[z^n] num / [z^n] base` with `prediction(n)`.
pub fn cross_validate<C: ExactCoefficient>(
    num: &Series<C>,
    base: &Series<C>,
    prediction: impl Fn(usize) -> f64,
    n: usize,
    tolerance: f64,
) -> Result<CrossCheck> {
    let exact = ratio_to_f64(&coefficient_ratio(num, base, n)?);
    Ok(compare(exact, prediction(n), n, tolerance))
}

/// A [`CrossCheck`] from an already computed exact value.
pub fn compare(exact: f64, predicted: f64, n: usize, tolerance: f64) -> CrossCheck {
    let relative_error = ((predicted - exact) / exact).abs();
    CrossCheck {
        n,
        exact,
        predicted,
        relative_error,
        tolerance,
        pass: relative_error <= tolerance,
    }
}

/// `gf(z, A)` over the integers; when the denominator's leading coefficient
/// is not a unit, the quotient is formed over the rationals and must come out
/// integral.
fn integer_total(gf: &RationalZA, a: &Series<BigInt>) -> Result<Series<BigInt>> {
    match gf.eval_exact(a) {
        Err(Error::Domain(_)) => {
            let a_q = a.map_into(|c| BigRational::from_integer(c.clone()));
            let total = gf.eval_exact(&a_q)?;
            if let Some(c) = total.coeffs().iter().find(|c| !c.is_integer()) {
                return Err(Error::FormulaIntegrity(alloc::format!(
                    "parameter total has the non-integral coefficient {c}"
                )));
            }
            Ok(total.map_into(BigRational::to_integer))
        }
        other => other,
    }
}

/// Exact coefficients of `A` and of the parameter totals up to a fixed size.
///
/// Every series involved has integer coefficients, and integer arithmetic
/// avoids the gcd work of rationals.
#[derive(Debug, Clone)]
pub struct ExactOracle {
    a: Series<BigInt>,
    totals: Vec<(ConstantKind, Series<BigInt>)>,
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    // Both parts may exceed f64 range; scale them down together.
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

impl ExactOracle {
    /// Exact data for sizes up to `max_n`.
    pub fn new(max_n: usize) -> Result<Self> {
        let phi = models::distinguished_phi().map_into(BigRational::to_integer);
        let a = solve_simply_generated(&phi, max_n + 2)?;
        let totals = ConstantKind::ALL
            .into_iter()
            .filter_map(|kind| kind.total_gf().map(|gf| (kind, gf)))
            .map(|(kind, gf)| Ok((kind, integer_total(&gf, &a)?)))
            .collect::<Result<_>>()?;
        Ok(ExactOracle { a, totals })
    }

    /// The exact series of `A`.
    pub fn base(&self) -> &Series<BigInt> {
        &self.a
    }

    /// The exact series of the parameter total of `kind`.
    pub fn total(&self, kind: ConstantKind) -> Result<&Series<BigInt>> {
        self.totals
            .iter()
            .find(|(k, _)| *k == kind)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::Domain(alloc::format!("{kind} has no total generating function")))
    }

    pub fn count(&self, n: usize) -> Result<BigInt> {
        Ok(self.a.coeff(n)?.clone())
    }

    /// Exact mean of the parameter of `kind` over trees with `n` nodes.
    pub fn mean(&self, kind: ConstantKind, n: usize) -> Result<BigRational> {
        coefficient_ratio(self.total(kind)?, &self.a, n)
    }

    pub fn mean_f64(&self, kind: ConstantKind, n: usize) -> Result<f64> {
        self.mean(kind, n).map(|r| ratio_to_f64(&r))
    }

    /// `[z^n] A` divided by `count_asymptote(n)`.
    pub fn count_ratio(&self, sing: &Singularity, n: usize) -> Result<f64> {
        let exact = BigRational::from_integer(self.count(n)?);
        let bits = sing.data.tau.bits();
        let exact_r = Real::from_ratio(&exact, bits + 8 * n as u32);
        let asym = count_asymptote(&sing.data, n).with_bits(bits + 8 * n as u32);
        Ok((&exact_r / &asym).to_f64())
    }
}

/// Exact mean heights (in edges) of trees with distinguished children for
/// every size `1..=max_n`; entry `n - 1` belongs to size `n`.
///
/// With `A_0 = z` and `A_{h+1} = z + z A_h / (1 - A_h)^2`, `A_h` counts trees
/// of height at most `h`, so the mean is
/// `sum_h ([z^n] A - [z^n] A_h) / [z^n] A`.
pub fn mean_height_exact(max_n: usize) -> Result<Vec<BigRational>> {
    if max_n == 0 {
        return Err(Error::EmptyInput);
    }
    let order = max_n;
    let one = BigInt::from(1);
    let z: Series<BigInt> = Series::var(&one, order);
    let phi = models::distinguished_phi().map_into(BigRational::to_integer);
    let full = solve_simply_generated(&phi, order)?.into_coeffs();
    let mut excess: Vec<BigInt> = alloc::vec![BigInt::zero(); order + 1];
    let mut a_h = z.clone();
    // Trees with n nodes have height at most n - 1.
    for _ in 0..order.saturating_sub(1) {
        let mut stable = true;
        for (n, e) in excess.iter_mut().enumerate().skip(1) {
            let d = &full[n] - &a_h.coeffs()[n];
            if !Zero::is_zero(&d) {
                stable = false;
            }
            *e += d;
        }
        if stable {
            break;
        }
        let inv = Series::constant(one.clone(), order)
            .sub(&a_h)
            .reciprocal()?;
        a_h = z.add(&z.mul(&a_h).mul(&inv.mul(&inv)));
    }
    Ok((1..=max_n)
        .map(|n| BigRational::new(excess[n].clone(), full[n].clone()))
        .collect())
}

/// The height constant `c` fitted from exact means at two sizes, assuming
/// `mean = c sqrt(pi n) + O(1)`.
pub fn height_richardson(h1: f64, n1: usize, h2: f64, n2: usize) -> f64 {
    let sqrt_pi = Float::sqrt(core::f64::consts::PI);
    (h2 - h1) / (sqrt_pi * (Float::sqrt(n2 as f64) - Float::sqrt(n1 as f64)))
}

/// One-line summary of a constant for reports.
pub fn describe(c: &AsymptoticConstant, digits: usize) -> String {
    alloc::format!(
        "{} recomputed={} reference={} rel_diff={:.3e} {}",
        c.kind,
        c.recomputed.to_decimal(digits),
        c.reference,
        c.relative_difference,
        c.status
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sing() -> Singularity {
        Singularity::new(&models::distinguished_phi(), 30).unwrap()
    }

    #[test]
    fn recomputed_constants() {
        let s = sing();
        let expected = [
            (
                ConstantKind::Count,
                0.102_876_006_276_773_7,
                Status::Discrepant,
            ),
            (ConstantKind::Leaves, 0.53060357543, Status::Confirmed),
            (ConstantKind::Height, 1.00992200468, Status::Confirmed),
            (ConstantKind::RootDegree, 2.96089493987, Status::Confirmed),
            (ConstantKind::LeftmostPath, 3.76929235424, Status::Confirmed),
            (ConstantKind::Pathlength, 0.89502007315, Status::Discrepant),
            (ConstantKind::OldLeaves, 0.24906342117, Status::Discrepant),
        ];
        for (kind, value, status) in expected {
            let c = parameter_constant(&s, kind).unwrap();
            let got = c.recomputed.to_f64();
            assert!(
                (got - value).abs() < 1e-9 * value,
                "{kind}: {got} vs {value}"
            );
            assert_eq!(c.status, status, "{kind}");
        }
    }

    #[test]
    fn exact_means_small() {
        let o = ExactOracle::new(10).unwrap();
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(o.mean(ConstantKind::Leaves, 4).unwrap(), q(22, 10));
        assert_eq!(o.mean(ConstantKind::RootDegree, 4).unwrap(), q(2, 1));
        assert_eq!(o.mean(ConstantKind::OldLeaves, 4).unwrap(), q(12, 10));
        assert_eq!(o.mean(ConstantKind::Pathlength, 4).unwrap(), q(41, 10));
        assert_eq!(o.mean(ConstantKind::LeftmostPath, 2).unwrap(), q(2, 1));
        assert_eq!(o.mean(ConstantKind::LeftmostPath, 3).unwrap(), q(7, 3));
        assert_eq!(o.mean(ConstantKind::LeftmostPath, 4).unwrap(), q(26, 10));
    }

    #[test]
    fn exact_heights_small() {
        let h = mean_height_exact(4).unwrap();
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(h[0], q(0, 1));
        assert_eq!(h[1], q(1, 1));
        assert_eq!(h[2], q(4, 3));
    }

    #[test]
    fn cross_validation_reports_range() {
        let o = ExactOracle::new(20).unwrap();
        let total = o.total(ConstantKind::RootDegree).unwrap();
        let check = cross_validate(total, o.base(), |_| 2.0, 4, 1e-12).unwrap();
        assert!(check.pass);
        assert!(matches!(
            cross_validate(total, o.base(), |_| 2.0, 500, 0.01),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ConstantKind::ALL {
            assert_eq!(k.name().parse::<ConstantKind>().unwrap(), k);
        }
    }
}
