//! Singularity analysis for simply generated families `A = z Phi(A)`.
//!
//! Near the dominant singularity `rho`, `A` is a power series in
//! `s = sqrt(1 - z / rho)`. Any generating function rational in `z` and `A`
//! then becomes a Laurent series in `s`; its first term that is not an
//! analytic function of `z` (a negative or odd power of `s`) fixes the
//! growth of its coefficients by transfer:
//! `c s^k = c (1 - z/rho)^{k/2}  =>  c n^{-k/2 - 1} rho^{-n} / Gamma(-k/2)`.
//! All arithmetic is fixed-point [`Real`] at a per-call precision.

mod constants;

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::real::{bits_for_digits, Real};
use crate::series::{Coeff, RationalFunction, RationalZA, Series};

pub use constants::{
    compare, cross_validate, describe, height_richardson, mean_height_exact, note,
    parameter_constant, ratio_to_f64, reference_value, AsymptoticConstant, ConstantKind,
    CrossCheck, ExactOracle, Status, CONFIRM_TOLERANCE,
};

/// Decimal digits used when none are requested.
pub const DEFAULT_DIGITS: u32 = 30;

/// Number of powers of `s` carried in singular expansions.
const EXPANSION_ORDER: usize = 12;

/// Constants of the dominant singularity of `A = z Phi(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularData {
    /// Root of `Phi(tau) = tau Phi'(tau)`.
    pub tau: Real,
    /// `tau / Phi(tau)`.
    pub rho: Real,
    pub phi0: Real,
    pub phi1: Real,
    pub phi2: Real,
    /// `sqrt(2 Phi(tau) / Phi''(tau))`, so that `A ~ tau - amplitude s`.
    pub amplitude: Real,
    /// Requested decimal digits.
    pub digits: u32,
}

fn to_reals(p: &[BigRational], bits: u32) -> Vec<Real> {
    p.iter().map(|c| Real::from_ratio(c, bits)).collect()
}

fn eval_real(p: &[Real], y: &Real) -> Real {
    p.iter()
        .rev()
        .fold(Real::zero(y.bits()), |acc, c| &(&acc * y) + c)
}

fn derivative_real(p: &[Real]) -> Vec<Real> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * &Real::from_i64(k as i64, c.bits()))
        .collect()
}

fn real_from_f64(x: f64, bits: u32) -> Real {
    const SCALE: f64 = (1u64 << 52) as f64;
    Real::from_fraction(Float::round(x * SCALE) as i64, 1 << 52, bits)
}

/// Smallest root in `(0, limit)` of the polynomial `p`, located by a sign
/// scan and refined by bisection and Newton's method at `bits` precision.
fn first_root_in(p: &[BigRational], limit: f64, bits: u32) -> Result<Option<Real>> {
    const GRID: usize = 4096;
    let pr = to_reals(p, bits);
    let pf: Vec<f64> = pr.iter().map(Real::to_f64).collect();
    let at = |y: f64| pf.iter().rev().fold(0.0, |acc, c| acc * y + c);
    let mut prev_y = 0.0;
    let mut prev_v = at(0.0);
    let mut bracket = None;
    for i in 1..GRID {
        let y = limit * i as f64 / GRID as f64;
        let v = at(y);
        if prev_v == 0.0 && i > 1 {
            bracket = Some((prev_y, prev_y));
            break;
        }
        if prev_v * v < 0.0 {
            bracket = Some((prev_y, y));
            break;
        }
        prev_y = y;
        prev_v = v;
    }
    let Some((lo_f, hi_f)) = bracket else {
        return Ok(None);
    };

    let mut lo = real_from_f64(lo_f, bits);
    let mut hi = real_from_f64(hi_f, bits);
    let lo_negative = eval_real(&pr, &lo).is_negative();
    let half = Real::from_fraction(1, 2, bits);
    for _ in 0..48 {
        let mid = &(&lo + &hi) * &half;
        if eval_real(&pr, &mid).is_negative() == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let dp = derivative_real(&pr);
    let mut y = &(&lo + &hi) * &half;
    for steps in 1..=200 {
        let slope = eval_real(&dp, &y);
        if slope.is_zero() {
            return Err(Error::Model(
                "characteristic root is a multiple root".into(),
            ));
        }
        let step = &eval_real(&pr, &y) / &slope;
        y = &y - &step;
        if step.below_pow2(bits.saturating_sub(8)) {
            return Ok(Some(y));
        }
        if steps == 200 {
            return Err(Error::NonConvergence { steps });
        }
    }
    unreachable!("the loop returns")
}

/// `tau`, `rho`, `Phi` and its first two derivatives at `tau`, and the
/// singular amplitude of `A`, to `digits` decimal digits.
///
/// `tau` is the smallest root of `Phi(y) = y Phi'(y)` in `(0, R)`, with `R`
/// the smaller of 1 and the first positive pole of `Phi`.
pub fn structural_constants(
    phi: &RationalFunction<BigRational>,
    digits: u32,
) -> Result<SingularData> {
    let bits = bits_for_digits(digits) + 32;
    let den: Vec<BigRational> = phi.denominator().to_vec();
    let limit = match first_root_in(&den, 1.0, 64)? {
        Some(r) => r.to_f64().min(1.0),
        None => 1.0,
    };
    let chi = phi.characteristic_polynomial();
    let tau = first_root_in(&chi, limit, bits)?.ok_or_else(|| {
        Error::Model(alloc::format!(
            "Phi(y) = y Phi'(y) has no root in (0, {limit})"
        ))
    })?;

    let phi_r = phi.map_into(|c| Real::from_ratio(c, bits));
    let d1 = phi_r.derivative();
    let d2 = d1.derivative();
    let pole = || Error::Model("Phi has a pole at tau".into());
    let phi0 = phi_r.eval(&tau).ok_or_else(pole)?;
    let phi1 = d1.eval(&tau).ok_or_else(pole)?;
    let phi2 = d2.eval(&tau).ok_or_else(pole)?;
    if phi0.is_negative() || phi0.is_zero() || phi2.is_negative() || phi2.is_zero() {
        return Err(Error::Model(
            "Phi(tau) and Phi''(tau) must be positive".into(),
        ));
    }
    let rho = &tau / &phi0;
    let amplitude = (&(&phi0 * &Real::from_i64(2, bits)) / &phi2)
        .sqrt()
        .expect("positive radicand");
    Ok(SingularData {
        tau,
        rho,
        phi0,
        phi1,
        phi2,
        amplitude,
        digits,
    })
}

/// `sqrt(Phi(tau) / (2 pi Phi''(tau))) rho^{-n} n^{-3/2}`.
pub fn count_asymptote(sd: &SingularData, n: usize) -> Real {
    let bits = sd.tau.bits();
    let two_pi = &Real::pi(bits) * &Real::from_i64(2, bits);
    let lead = (&sd.phi0 / &(&two_pi * &sd.phi2)).sqrt().expect("positive");
    let n_r = Real::from_i64(n as i64, bits);
    let n_pow = n_r.sqrt().expect("positive").powi(-3);
    &(&lead * &sd.rho.powi(-(n as i64))) * &n_pow
}

/// `sqrt(2 / (Phi(tau) Phi''(tau))) Phi'(tau)`: mean height is asymptotic
/// to this constant times `sqrt(pi n)`.
pub fn height_constant(sd: &SingularData) -> Real {
    let bits = sd.tau.bits();
    let two = Real::from_i64(2, bits);
    let root = (&two / &(&sd.phi0 * &sd.phi2)).sqrt().expect("positive");
    &root * &sd.phi1
}

/// A Laurent series `sum_i coeffs[i] s^{start + i}` in
/// `s = sqrt(1 - z / rho)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularExpansion {
    pub start: i64,
    pub coeffs: Vec<Real>,
}

impl SingularExpansion {
    pub fn coefficient(&self, k: i64) -> Option<&Real> {
        usize::try_from(k - self.start)
            .ok()
            .and_then(|i| self.coeffs.get(i))
    }

    /// Terms that contribute to coefficient asymptotics: nonzero, with a
    /// negative or odd power of `s`.
    pub fn singular_terms(&self) -> impl Iterator<Item = (i64, &Real)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.start + i as i64, c))
            .filter(|(k, c)| !c.is_zero() && (*k < 0 || k % 2 != 0))
    }

    /// The leading singular term.
    pub fn dominant(&self) -> Option<(i64, &Real)> {
        self.singular_terms().next()
    }

    /// `c n^{-k/2 - 1} / Gamma(-k/2)` summed over the first `terms` singular
    /// terms: the transferred coefficient asymptotics without `rho^{-n}`.
    pub fn transfer(&self, n: usize, terms: usize) -> Real {
        let bits = self.coeffs.first().map(Real::bits).unwrap_or(64);
        let root_n = Real::from_i64(n as i64, bits).sqrt().expect("positive");
        self.singular_terms()
            .take(terms)
            .fold(Real::zero(bits), |acc, (k, c)| {
                let gamma = Real::gamma_half(-k, bits).expect("singular terms avoid poles");
                &acc + &(&(c * &root_n.powi(-k - 2)) / &gamma)
            })
    }
}

/// `[z^n] (1 - z)^{k/2} = prod_{j=1}^{n} (j - 1 - k/2) / j`.
fn binomial_coefficient_half(k: i64, n: usize, bits: u32) -> Real {
    (1..=n as i64).fold(Real::one(bits), |acc, j| {
        &acc * &Real::from_fraction(2 * j - 2 - k, 2 * j, bits)
    })
}

impl SingularExpansion {
    /// `sum c [z^n] (1 - z)^{k/2}` over the first `terms` singular terms: the
    /// same truncated expansion as [`SingularExpansion::transfer`], with the
    /// exact binomial coefficient of each term in place of its leading order.
    pub fn transfer_exact(&self, n: usize, terms: usize) -> Real {
        let bits = self.coeffs.first().map(Real::bits).unwrap_or(64);
        self.singular_terms()
            .take(terms)
            .fold(Real::zero(bits), |acc, (k, c)| {
                &acc + &(c * &binomial_coefficient_half(k, n, bits))
            })
    }
}

/// Leading behaviour of the mean of a parameter: `constant n^{exponent_twice / 2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeanAsymptotic {
    pub constant: Real,
    pub exponent_twice: i64,
    pub expansion: SingularExpansion,
}

/// The singular expansion of `A` for one simply generated family, reusable
/// for every generating function rational in `z` and `A`.
#[derive(Debug, Clone)]
pub struct Singularity {
    pub data: SingularData,
    /// `z` as a series in `s`: `rho (1 - s^2)`.
    z: Series<Real>,
    /// `A` as a series in `s`.
    a: Series<Real>,
}

fn clean(s: &Series<Real>) -> Series<Real> {
    s.map(|c| {
        if c.negligible() {
            c.zero_like()
        } else {
            c.clone()
        }
    })
}

impl Singularity {
    pub fn new(phi: &RationalFunction<BigRational>, digits: u32) -> Result<Self> {
        let data = structural_constants(phi, digits)?;
        let bits = data.tau.bits();
        let order = EXPANSION_ORDER;
        let one = Real::one(bits);

        // psi(y) = y / Phi(y) around y = tau - t.
        let phi_r = phi.map_into(|c| Real::from_ratio(c, bits));
        let y = Series::from_prefix(alloc::vec![data.tau.clone(), -&one], &one, order + 2);
        let psi = y.mul(&phi_r.eval_series(&y)?.reciprocal()?);
        // s^2 = 1 - psi(tau - t) / rho = t^2 g(t).
        let rho_inv = data.rho.recip().expect("rho > 0");
        let s2 = Series::constant(one.clone(), order + 2).sub(&psi.scale(&rho_inv));
        if !s2.coeffs()[0].negligible() || !s2.coeffs()[1].negligible() {
            return Err(Error::Model(
                "tau is not a critical point of y / Phi(y)".into(),
            ));
        }
        let g = s2.drop_low(2);
        let root_g = g.sqrt()?;
        let inv_root = root_g.reciprocal()?;
        // Revert s = t sqrt(g(t)): t = s / sqrt(g(t)).
        let s = Series::var(&one, order);
        let mut t = Series::zero(&one, order);
        for _ in 0..=order {
            t = s.mul(&inv_root.compose(&t)?);
        }
        let a = Series::constant(data.tau.clone(), order).sub(&t);
        let z = Series::from_prefix(
            alloc::vec![data.rho.clone(), Real::zero(bits), -&data.rho],
            &one,
            order,
        );
        Ok(Singularity { data, z, a })
    }

    /// `A` as a series in `s`.
    pub fn a_series(&self) -> &Series<Real> {
        &self.a
    }

    pub fn count_expansion(&self) -> SingularExpansion {
        SingularExpansion {
            start: 0,
            coeffs: clean(&self.a).into_coeffs(),
        }
    }

    /// Laurent expansion in `s` of `gf(z, A)`.
    pub fn expand(&self, gf: &RationalZA) -> Result<SingularExpansion> {
        let num = clean(&gf.num.eval_series(&self.z, &self.a));
        let den = clean(&gf.den.eval_series(&self.z, &self.a));
        let vd = den.valuation().ok_or_else(|| {
            Error::Domain("denominator vanishes on the singular expansion".into())
        })?;
        let Some(vn) = num.valuation() else {
            return Ok(SingularExpansion {
                start: 0,
                coeffs: num.into_coeffs(),
            });
        };
        let quotient = num.drop_low(vn).div(&den.drop_low(vd))?;
        Ok(SingularExpansion {
            start: vn as i64 - vd as i64,
            coeffs: clean(&quotient).into_coeffs(),
        })
    }

    /// Leading asymptotics of `[z^n] gf / [z^n] A`.
    pub fn mean(&self, gf: &RationalZA) -> Result<MeanAsymptotic> {
        let expansion = self.expand(gf)?;
        let (k, c) = expansion
            .dominant()
            .ok_or_else(|| Error::Model("generating function has no singular term".into()))?;
        let count = self.count_expansion();
        let (k_a, c_a) = count.dominant().expect("A has a square-root singularity");
        debug_assert_eq!(k_a, 1);
        let bits = c.bits();
        let g = Real::gamma_half(-k, bits).expect("singular term");
        let g_a = Real::gamma_half(-k_a, bits).expect("singular term");
        let constant = &(c / &g) / &(c_a / &g_a);
        Ok(MeanAsymptotic {
            constant,
            exponent_twice: k_a - k,
            expansion,
        })
    }

    /// The mean predicted from the first `terms` singular terms of both the
    /// parameter and the count expansions, each transferred to leading order.
    pub fn predict_mean(&self, expansion: &SingularExpansion, n: usize, terms: usize) -> Real {
        &expansion.transfer(n, terms) / &self.count_expansion().transfer(n, terms)
    }

    /// As [`Singularity::predict_mean`], with exact binomial coefficients.
    pub fn predict_mean_exact(
        &self,
        expansion: &SingularExpansion,
        n: usize,
        terms: usize,
    ) -> Real {
        &expansion.transfer_exact(n, terms) / &self.count_expansion().transfer_exact(n, terms)
    }
}

/// `q(z) = (z - rho) r(z)` by synthetic division: returns `(r(rho), rho r(rho))`,
/// the slopes of `q` against `z - rho` and against `-(1 - z/rho)`, after
/// checking that `q(rho)` vanishes.
pub fn factor_at_singularity(q: &[i64], sd: &SingularData) -> Result<(Real, Real)> {
    let bits = sd.rho.bits();
    let qr: Vec<Real> = q.iter().map(|&c| Real::from_i64(c, bits)).collect();
    if !eval_real(&qr, &sd.rho).negligible() {
        return Err(Error::Model("polynomial does not vanish at rho".into()));
    }
    // Horner's scheme on descending coefficients yields the quotient.
    let mut quotient = Vec::with_capacity(q.len() - 1);
    let mut acc = Real::zero(bits);
    for c in qr.iter().rev().take(q.len() - 1) {
        acc = &(&acc * &sd.rho) + c;
        quotient.push(acc.clone());
    }
    quotient.reverse();
    let r_rho = eval_real(&quotient, &sd.rho);
    let scaled = &r_rho * &sd.rho;
    Ok((r_rho, scaled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    fn close(x: &Real, text: &str, tol_exp: u32) -> bool {
        let want = Real::from_decimal(text, x.bits()).unwrap();
        (x - &want).below_pow2(tol_exp)
    }

    #[test]
    fn distinguished_structural_constants() {
        let sd = structural_constants(&models::distinguished_phi(), 40).unwrap();
        assert!(close(&sd.tau, "0.36110308052864737763", 64));
        assert!(close(&sd.rho, "0.19160258562728943447", 64));
        assert!(close(&sd.amplitude, "0.36468594698209518370", 64));
    }

    #[test]
    fn ordered_structural_constants() {
        let sd = structural_constants(&models::ordered_phi(), 30).unwrap();
        assert!(close(&sd.tau, "0.5", 90));
        assert!(close(&sd.rho, "0.25", 90));
        assert!(close(&height_constant(&sd), "1", 90));
    }

    #[test]
    fn refinement_is_monotone() {
        let phi = models::distinguished_phi();
        let a = structural_constants(&phi, 30).unwrap();
        let b = structural_constants(&phi, 60).unwrap();
        assert!((&a.tau - &b.tau).below_pow2(99));
        assert!((&a.rho - &b.rho).below_pow2(99));
    }

    #[test]
    fn count_expansion_starts_with_minus_amplitude() {
        let sing = Singularity::new(&models::distinguished_phi(), 30).unwrap();
        let a = sing.a_series();
        assert!(close(&a.coeffs()[0], "0.36110308052864737763", 60));
        assert!(close(&-&a.coeffs()[1], "0.36468594698209518370", 60));
    }

    #[test]
    fn factorization_of_the_singular_cubic() {
        let sd = structural_constants(&models::distinguished_phi(), 30).unwrap();
        let (slope, scaled) = factor_at_singularity(&models::singular_cubic(), &sd).unwrap();
        assert!(close(&slope, "21.8632246423898805", 50));
        assert!(close(&scaled, "4.18905037163217150", 50));
    }

    #[test]
    fn no_root_is_a_model_error() {
        // Phi = 1 + y: Phi - y Phi' = 1 never vanishes.
        let phi = RationalFunction::polynomial(alloc::vec![
            BigRational::from_integer(1.into()),
            BigRational::from_integer(1.into()),
        ])
        .unwrap();
        assert!(matches!(
            structural_constants(&phi, 20),
            Err(Error::Model(_))
        ));
    }
}
