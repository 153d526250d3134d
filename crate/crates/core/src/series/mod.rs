//! Truncated power series over exact (or fixed-point) coefficient rings, and
//! the solvers that produce the generating functions of the tree families.

mod coeff;
mod marker;
mod poly;
mod solve;

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use crate::error::{Error, Result};

pub use coeff::Coeff;
pub use marker::{marker_derivative_at_one, Marker, MarkerPoly, Monomial};
pub use poly::{RationalFunction, RationalZA, ZAPoly};
pub use solve::{
    algebraic_branch_solve, lagrange_coefficient, solve_fixpoint, solve_simply_generated,
};

/// Power series with rational coefficients.
pub type PowerSeries = Series<BigRational>;

/// Power series whose coefficients are polynomials in the markers u, v, w.
pub type MultiSeries = Series<MarkerPoly>;

/// A power series `c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})`.
///
/// Exactly `N + 1` coefficients are stored. Binary operations truncate to the
/// smaller of the two orders and never extend it.
#[derive(Clone, PartialEq, Eq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Series<C> {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector: a series always knows its truncation order.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Series { coeffs }
    }

    /// Pads `coeffs` with zeros (or truncates it) to the given order.
    pub fn from_prefix(mut coeffs: Vec<C>, proto: &C, order: usize) -> Self {
        coeffs.resize(order + 1, proto.zero_like());
        Series { coeffs }
    }

    pub fn zero(proto: &C, order: usize) -> Self {
        Series {
            coeffs: alloc::vec![proto.zero_like(); order + 1],
        }
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Series::zero(&c, order);
        s.coeffs[0] = c;
        s
    }

    /// `c z^k`, or the zero series when `k` exceeds the order.
    pub fn monomial(c: C, k: usize, order: usize) -> Self {
        let mut s = Series::zero(&c, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The series variable `z`.
    pub fn var(proto: &C, order: usize) -> Self {
        Series::monomial(proto.one_like(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Result<&C> {
        self.coeffs.get(k).ok_or(Error::Range {
            index: k,
            order: self.order(),
        })
    }

    fn proto(&self) -> &C {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series::from_prefix(self.coeffs.clone(), self.proto(), order)
    }

    /// Lowers the order without padding; a no-op when already at or below it.
    pub fn truncated(mut self, order: usize) -> Self {
        self.coeffs.truncate(order + 1);
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].plus(&other.coeffs[k]))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].minus(&other.coeffs[k]))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(Coeff::negate)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.times(c))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Coefficient-wise map into another ring.
    pub fn map_into<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = alloc::vec![self.proto().zero_like(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Series::constant(self.proto().one_like(), self.order());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by `z^k`, keeping the order.
    pub fn mul_z_pow(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = alloc::vec![self.proto().zero_like(); n + 1];
        for (i, c) in self
            .coeffs
            .iter()
            .enumerate()
            .take((n + 1).saturating_sub(k))
        {
            out[i + k] = c.clone();
        }
        Series { coeffs: out }
    }

    /// Divides by `z^k`; the first `k` coefficients must vanish, and the order
    /// drops by `k`.
    pub fn div_z_pow(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::Range {
                index: k,
                order: self.order(),
            });
        }
        if let Some(bad) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(Error::Domain(alloc::format!(
                "cannot divide by z^{k}: coefficient {bad} is nonzero"
            )));
        }
        Ok(self.drop_low(k))
    }

    /// Drops the first `k` coefficients without checking them.
    pub(crate) fn drop_low(&self, k: usize) -> Self {
        Series {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].try_inverse().ok_or_else(|| {
            Error::Domain(alloc::format!(
                "reciprocal needs an invertible constant term, found {:?}",
                self.coeffs[0]
            ))
        })?;
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = self.proto().zero_like();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.plus(&self.coeffs[j].times(&out[k - j]));
                }
            }
            out.push(acc.times(&inv0).negate());
        }
        Ok(Series { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.reciprocal()?))
    }

    /// Square root with the constant term's principal root.
    pub fn sqrt(&self) -> Result<Self> {
        let root0 = self.coeffs[0].try_sqrt().ok_or_else(|| {
            Error::Domain(alloc::format!(
                "sqrt needs a square constant term, found {:?}",
                self.coeffs[0]
            ))
        })?;
        let inv_twice = root0
            .plus(&root0)
            .try_inverse()
            .ok_or_else(|| Error::Domain("sqrt needs a nonzero constant term".into()))?;
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(root0);
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc = acc.minus(&out[j].times(&out[k - j]));
            }
            out.push(acc.times(&inv_twice));
        }
        Ok(Series { coeffs: out })
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Domain(alloc::format!(
                "compose needs an inner series without constant term, found {:?}",
                inner.coeffs[0]
            )));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Series::zero(self.proto(), n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].plus(c);
        }
        Ok(acc)
    }

    /// Formal derivative `d/dz`; the order drops by one.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Series::zero(self.proto(), 0);
        }
        Series {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c.times(&c.from_int(k as i64 + 1)))
                .collect(),
        }
    }
}

impl PowerSeries {
    pub fn from_ints(values: &[i64], order: usize) -> Self {
        let coeffs = values
            .iter()
            .map(|&v| BigRational::from_integer(v.into()))
            .collect();
        Series::from_prefix(coeffs, &rational_zero(), order)
    }

    /// `z` with rational coefficients.
    pub fn z(order: usize) -> Self {
        Series::var(&rational_zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::constant(BigRational::from_integer(1.into()), order)
    }
}

pub(crate) fn rational_zero() -> BigRational {
    BigRational::from_integer(0.into())
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()?;
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

impl<C: Coeff> Add for &Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: Self) -> Series<C> {
        Series::add(self, rhs)
    }
}

impl<C: Coeff> Sub for &Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: Self) -> Series<C> {
        Series::sub(self, rhs)
    }
}

impl<C: Coeff> Mul for &Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: Self) -> Series<C> {
        Series::mul(self, rhs)
    }
}

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "{c} is not an integer");
                i64::try_from(c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn reciprocal_of_one_minus_z() {
        let s = PowerSeries::from_ints(&[1, -1], 8).reciprocal().unwrap();
        assert_eq!(ints(&s), vec![1; 9]);
    }

    #[test]
    fn reciprocal_needs_unit() {
        let err = PowerSeries::z(4).reciprocal().unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn sqrt_form_of_marked_trees() {
        // (1 - z - sqrt(1 - 6z + 5z^2)) / 2
        let n = 7;
        let root = PowerSeries::from_ints(&[1, -6, 5], n).sqrt().unwrap();
        let num = PowerSeries::from_ints(&[1, -1], n).sub(&root);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(ints(&num.scale(&half)), vec![0, 1, 1, 3, 10, 36, 137, 543]);
    }

    #[test]
    fn sqrt_rejects_non_square_constant() {
        assert!(PowerSeries::from_ints(&[2, 1], 4).sqrt().is_err());
        assert!(PowerSeries::from_ints(&[0, 1], 4).sqrt().is_err());
    }

    #[test]
    fn compose_geometric_with_z_over_one_minus_z() {
        // 1/(1 - y) at y = z/(1 - z) is (1 - z)/(1 - 2z).
        let n = 6;
        let geo = PowerSeries::from_ints(&[1, -1], n).reciprocal().unwrap();
        let inner = geo.mul_z_pow(1);
        let composed = geo.compose(&inner).unwrap();
        assert_eq!(ints(&composed), vec![1, 1, 2, 4, 8, 16, 32]);
        assert!(geo.compose(&geo).is_err());
    }

    #[test]
    fn truncation_order_is_the_minimum() {
        let a = PowerSeries::from_ints(&[1, 1], 3);
        let b = PowerSeries::from_ints(&[1, 2, 3], 5);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
        assert_eq!(b.div_z_pow(0).unwrap().order(), 5);
        assert!(b.div_z_pow(1).is_err());
        assert_eq!(PowerSeries::z(5).div_z_pow(1).unwrap().order(), 4);
    }

    #[test]
    fn derivative_and_valuation() {
        let s = PowerSeries::from_ints(&[0, 0, 3, 1], 3);
        assert_eq!(s.valuation(), Some(2));
        assert_eq!(ints(&s.derivative()), vec![0, 6, 3]);
        assert_eq!(PowerSeries::zero(&rational_zero(), 3).valuation(), None);
    }

    #[test]
    fn coefficient_out_of_range() {
        let s = PowerSeries::one(2);
        assert_eq!(s.coeff(3), Err(Error::Range { index: 3, order: 2 }));
    }
}
