use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::{Coeff, Series};
use crate::error::{Error, Result};

/// Horner evaluation of a dense polynomial (coefficients by ascending degree)
/// at a series argument.
pub(crate) fn horner<C: Coeff>(poly: &[C], x: &Series<C>) -> Series<C> {
    let mut acc = Series::zero(&x.coeffs()[0], x.order());
    for c in poly.iter().rev() {
        acc = acc.mul(x);
        let head = acc.coeffs[0].plus(c);
        acc.coeffs[0] = head;
    }
    acc
}

pub(crate) fn poly_derivative<C: Coeff>(poly: &[C]) -> Vec<C> {
    poly.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.times(&c.from_int(k as i64)))
        .collect()
}

fn poly_mul<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![a[0].zero_like(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].plus(&x.times(y));
        }
    }
    out
}

fn poly_sub<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let proto = a.first().or(b.first()).expect("nonempty polynomial");
    (0..a.len().max(b.len()))
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(|| proto.zero_like());
            match b.get(k) {
                Some(y) => x.minus(y),
                None => x,
            }
        })
        .collect()
}

/// A rational function `num(y) / den(y)` with coefficients in a ring `C`;
/// the degree-weight function of a simply generated family.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<C> {
    num: Vec<C>,
    den: Vec<C>,
}

impl<C: Coeff> RationalFunction<C> {
    pub fn new(num: Vec<C>, den: Vec<C>) -> Result<Self> {
        if num.is_empty() || den.is_empty() || den.iter().all(Coeff::is_zero) {
            return Err(Error::Domain(
                "rational function needs a nonzero denominator".into(),
            ));
        }
        Ok(RationalFunction { num, den })
    }

    pub fn polynomial(num: Vec<C>) -> Result<Self> {
        let one = num
            .first()
            .map(Coeff::one_like)
            .ok_or_else(|| Error::Domain("empty polynomial".into()))?;
        RationalFunction::new(num, alloc::vec![one])
    }

    pub fn numerator(&self) -> &[C] {
        &self.num
    }

    pub fn denominator(&self) -> &[C] {
        &self.den
    }

    pub fn eval_series(&self, y: &Series<C>) -> Result<Series<C>> {
        horner(&self.num, y).div(&horner(&self.den, y))
    }

    pub fn eval(&self, y: &C) -> Option<C> {
        let at = |p: &[C]| {
            p.iter()
                .rev()
                .fold(y.zero_like(), |acc, c| acc.times(y).plus(c))
        };
        Some(at(&self.num).times(&at(&self.den).try_inverse()?))
    }

    /// Quotient rule: `(N'D - ND') / D^2`.
    pub fn derivative(&self) -> Self {
        let mut num = poly_sub(
            &poly_mul(&poly_derivative(&self.num), &self.den),
            &poly_mul(&self.num, &poly_derivative(&self.den)),
        );
        if num.is_empty() {
            num.push(self.den[0].zero_like());
        }
        RationalFunction {
            num,
            den: poly_mul(&self.den, &self.den),
        }
    }

    pub fn map_into<D: Coeff>(&self, f: impl Fn(&C) -> D) -> RationalFunction<D> {
        RationalFunction {
            num: self.num.iter().map(&f).collect(),
            den: self.den.iter().map(&f).collect(),
        }
    }

    /// `Phi(y) - y Phi'(y)`, cleared of denominators:
    /// `N D - y (N' D - N D')`.
    pub fn characteristic_polynomial(&self) -> Vec<C> {
        let nd = poly_mul(&self.num, &self.den);
        let wronskian = poly_sub(
            &poly_mul(&poly_derivative(&self.num), &self.den),
            &poly_mul(&self.num, &poly_derivative(&self.den)),
        );
        let mut shifted = Vec::with_capacity(wronskian.len() + 1);
        shifted.push(self.den[0].zero_like());
        shifted.extend(wronskian);
        poly_sub(&nd, &shifted)
    }
}

/// A polynomial in `z` and `A` with rational coefficients, used for the
/// algebraic equations and the parameter generating functions written in
/// terms of `A(z)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZAPoly {
    /// `(z exponent, A exponent) -> coefficient`
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl ZAPoly {
    /// Builds from integer terms `(z exponent, A exponent, coefficient)`.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        let mut p = ZAPoly::default();
        for &(i, j, c) in terms {
            p.add_term(i, j, BigRational::from_integer(c.into()));
        }
        p
    }

    pub fn add_term(&mut self, z_exp: u32, a_exp: u32, c: BigRational) {
        let entry = self
            .terms
            .entry((z_exp, a_exp))
            .or_insert_with(BigRational::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.terms.remove(&(z_exp, a_exp));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_in_a(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn derivative_a(&self) -> Self {
        let mut out = ZAPoly::default();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c * BigRational::from_integer(j.into()));
            }
        }
        out
    }

    pub fn derivative_z(&self) -> Self {
        let mut out = ZAPoly::default();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * BigRational::from_integer(i.into()));
            }
        }
        out
    }

    /// Coefficients of `A^j` as dense polynomials in `z`.
    fn by_a_power<C: Coeff>(&self, proto: &C) -> Vec<Vec<C>> {
        let deg_a = self.degree_in_a() as usize;
        let mut rows: Vec<Vec<C>> = alloc::vec![Vec::new(); deg_a + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, proto.zero_like());
            }
            row[i as usize] = proto.from_rational(c);
        }
        for row in &mut rows {
            if row.is_empty() {
                row.push(proto.zero_like());
            }
        }
        rows
    }

    /// Evaluates at series arguments `z = z(t)`, `A = a(t)`.
    pub fn eval_series<C: Coeff>(&self, z: &Series<C>, a: &Series<C>) -> Series<C> {
        let proto = &z.coeffs()[0];
        let order = z.order().min(a.order());
        let rows: Vec<Series<C>> = self
            .by_a_power(proto)
            .iter()
            .map(|row| horner(row, z).truncate(order))
            .collect();
        let mut acc = Series::zero(proto, order);
        for row in rows.iter().rev() {
            acc = acc.mul(a).add(row);
        }
        acc
    }

    pub fn eval<C: Coeff>(&self, z: &C, a: &C) -> C {
        let mut acc = z.zero_like();
        for row in self.by_a_power(z).iter().rev() {
            let zpart = row
                .iter()
                .rev()
                .fold(z.zero_like(), |s, c| s.times(z).plus(c));
            acc = acc.times(a).plus(&zpart);
        }
        acc
    }
}

/// `num(z, A) / den(z, A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalZA {
    pub num: ZAPoly,
    pub den: ZAPoly,
}

impl RationalZA {
    pub fn new(num: ZAPoly, den: ZAPoly) -> Self {
        RationalZA { num, den }
    }

    /// Series of the quotient at `z` = the series variable and `A = a`.
    ///
    /// When the denominator vanishes to order `v` at `z = 0` the numerator
    /// must too; the result then has order `a.order() - v`.
    pub fn eval_exact<C: Coeff>(&self, a: &Series<C>) -> Result<Series<C>> {
        let z = Series::var(&a.coeffs()[0], a.order());
        let num = self.num.eval_series(&z, a);
        let den = self.den.eval_series(&z, a);
        let v = den
            .valuation()
            .ok_or_else(|| Error::Domain("denominator vanishes identically".into()))?;
        num.div_z_pow(v)?.div(&den.div_z_pow(v)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::PowerSeries;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn characteristic_polynomial_of_the_distinguished_model() {
        // Phi = (1 - y + y^2) / (1 - y)^2; the characteristic polynomial is
        // (1 - y)(1 - 3y + y^2 - y^3).
        let phi = RationalFunction::new(
            alloc::vec![r(1), r(-1), r(1)],
            alloc::vec![r(1), r(-2), r(1)],
        )
        .unwrap();
        let chi = phi.characteristic_polynomial();
        let expected = poly_mul(&[r(1), r(-1)], &[r(1), r(-3), r(1), r(-1)]);
        assert_eq!(chi, expected);
    }

    #[test]
    fn derivative_of_geometric() {
        let phi = RationalFunction::new(alloc::vec![r(1)], alloc::vec![r(1), r(-1)]).unwrap();
        let d = phi.derivative();
        assert_eq!(d.eval(&r(0)), Some(r(1)));
        assert_eq!(d.eval(&BigRational::new(1.into(), 2.into())), Some(r(4)));
    }

    #[test]
    fn zapoly_evaluation_matches_scalar() {
        // 3 z A^2 - A + z^2
        let p = ZAPoly::from_int_terms(&[(1, 2, 3), (0, 1, -1), (2, 0, 1)]);
        assert_eq!(p.eval(&r(2), &r(5)), r(3 * 2 * 25 - 5 + 4));
        let z = PowerSeries::z(4);
        let a = PowerSeries::from_ints(&[0, 1, 1], 4);
        let s = p.eval_series(&z, &a);
        // 3z(z + z^2)^2 - (z + z^2) + z^2 = -z + 3z^3 + 6z^4 + O(z^5)
        assert_eq!(s, PowerSeries::from_ints(&[0, -1, 0, 3, 6], 4));
        assert_eq!(p.derivative_a().eval(&r(1), &r(1)), r(5));
        assert_eq!(p.derivative_z().eval(&r(1), &r(1)), r(5));
    }

    #[test]
    fn quotient_with_vanishing_denominator() {
        // A^2 / z with A = z + z^2
        let q = RationalZA::new(
            ZAPoly::from_int_terms(&[(0, 2, 1)]),
            ZAPoly::from_int_terms(&[(1, 0, 1)]),
        );
        let a = PowerSeries::from_ints(&[0, 1, 1], 5);
        let s = q.eval_exact(&a).unwrap();
        assert_eq!(s, PowerSeries::from_ints(&[0, 1, 2, 1], 4));
    }
}
