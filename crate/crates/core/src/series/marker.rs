use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Coeff, MultiSeries, PowerSeries, Series};
use crate::error::{Error, Result};

/// A marker variable attached to a tree parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    U,
    V,
    W,
}

impl Marker {
    pub const ALL: [Marker; 3] = [Marker::U, Marker::V, Marker::W];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Marker::U => "u",
            Marker::V => "v",
            Marker::W => "w",
        }
    }
}

impl FromStr for Marker {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "u" => Ok(Marker::U),
            "v" => Ok(Marker::V),
            "w" => Ok(Marker::W),
            other => Err(Error::Domain(alloc::format!("unknown marker `{other}`"))),
        }
    }
}

/// Exponents of (u, v, w).
pub type Monomial = [u32; 3];

/// A polynomial in the markers u, v, w with rational coefficients.
///
/// Stored sparsely; zero coefficients are never kept.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MarkerPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MarkerPoly {
    pub fn zero() -> Self {
        MarkerPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = MarkerPoly::zero();
        p.insert_add([0; 3], c);
        p
    }

    pub fn integer(v: i64) -> Self {
        MarkerPoly::constant(BigRational::from_integer(v.into()))
    }

    pub fn marker(m: Marker) -> Self {
        let mut mono = [0; 3];
        mono[m.index()] = 1;
        MarkerPoly::term(mono, BigRational::one())
    }

    pub fn term(mono: Monomial, c: BigRational) -> Self {
        let mut p = MarkerPoly::zero();
        p.insert_add(mono, c);
        p
    }

    fn insert_add(&mut self, mono: Monomial, c: BigRational) {
        if Zero::is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(BigRational::zero);
        if entry.is_integer() && c.is_integer() {
            *entry = BigRational::from_integer(entry.numer() + c.numer());
        } else {
            *entry += c;
        }
        if Zero::is_zero(entry) {
            self.terms.remove(&mono);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: Monomial) -> BigRational {
        self.terms
            .get(&mono)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of the pure power `m^k`.
    pub fn univariate_coefficient(&self, m: Marker, k: u32) -> BigRational {
        let mut mono = [0; 3];
        mono[m.index()] = k;
        self.coefficient(mono)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&[0; 3]).cloned(),
            _ => None,
        }
    }

    pub fn involves(&self, m: Marker) -> bool {
        self.terms.keys().any(|mono| mono[m.index()] > 0)
    }

    pub fn degree_in(&self, m: Marker) -> u32 {
        self.terms
            .keys()
            .map(|mono| mono[m.index()])
            .max()
            .unwrap_or(0)
    }

    /// Sets every marker to 1.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms
            .values()
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn derivative(&self, m: Marker) -> Self {
        let i = m.index();
        let mut out = MarkerPoly::zero();
        for (mono, c) in &self.terms {
            if mono[i] == 0 {
                continue;
            }
            let mut lowered = *mono;
            lowered[i] -= 1;
            out.insert_add(lowered, c * BigRational::from_integer(mono[i].into()));
        }
        out
    }

    /// Replaces marker `m` by the polynomial `by`.
    pub fn substitute(&self, m: Marker, by: &MarkerPoly) -> Self {
        let i = m.index();
        let mut out = MarkerPoly::zero();
        for (mono, c) in &self.terms {
            let mut rest = *mono;
            rest[i] = 0;
            let mut piece = MarkerPoly::term(rest, c.clone());
            for _ in 0..mono[i] {
                piece = piece.times(by);
            }
            out = out.plus(&piece);
        }
        out
    }
}

impl Coeff for MarkerPoly {
    fn zero_like(&self) -> Self {
        MarkerPoly::zero()
    }
    fn one_like(&self) -> Self {
        MarkerPoly::integer(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.insert_add(*mono, c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.insert_add(*mono, -c);
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = MarkerPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
                // Integer products need no reduction.
                let product = if ca.is_integer() && cb.is_integer() {
                    BigRational::from_integer(ca.numer() * cb.numer())
                } else {
                    ca * cb
                };
                out.insert_add(mono, product);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        MarkerPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
    fn from_rational(&self, r: &BigRational) -> Self {
        MarkerPoly::constant(r.clone())
    }
    fn try_inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        (!Zero::is_zero(&c)).then(|| MarkerPoly::constant(c.recip()))
    }
    fn try_sqrt(&self) -> Option<Self> {
        self.as_constant()?.try_sqrt().map(MarkerPoly::constant)
    }
}

impl fmt::Debug for MarkerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MarkerPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (mono, c) in &self.terms {
            let mut s = alloc::format!("{c}");
            for m in Marker::ALL {
                match mono[m.index()] {
                    0 => {}
                    1 => s = alloc::format!("{s}*{}", m.name()),
                    e => s = alloc::format!("{s}*{}^{e}", m.name()),
                }
            }
            parts.push(s);
        }
        f.write_str(&parts.join(" + "))
    }
}

impl MultiSeries {
    /// The ring morphism setting every marker to 1.
    pub fn collapse(&self) -> PowerSeries {
        self.map_into(MarkerPoly::eval_at_one)
    }

    pub fn substitute(&self, m: Marker, by: &MarkerPoly) -> MultiSeries {
        self.map(|c| c.substitute(m, by))
    }

    /// Lifts a rational series into the marker ring.
    pub fn lift(s: &PowerSeries) -> MultiSeries {
        s.map_into(|c| MarkerPoly::constant(c.clone()))
    }

    pub fn marker_series(m: Marker, order: usize) -> MultiSeries {
        Series::constant(MarkerPoly::marker(m), order)
    }
}

/// `d/dm s(z; u, v, w)` evaluated at u = v = w = 1.
pub fn marker_derivative_at_one(s: &MultiSeries, m: Marker) -> PowerSeries {
    s.map_into(|c| c.derivative(m).eval_at_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn ring_laws_on_small_polys() {
        let u = MarkerPoly::marker(Marker::U);
        let v = MarkerPoly::marker(Marker::V);
        let p = u.plus(&MarkerPoly::integer(1)).times(&u.minus(&v));
        // (u + 1)(u - v) = u^2 - uv + u - v
        assert_eq!(p.coefficient([2, 0, 0]), rat(1));
        assert_eq!(p.coefficient([1, 1, 0]), rat(-1));
        assert_eq!(p.coefficient([1, 0, 0]), rat(1));
        assert_eq!(p.coefficient([0, 1, 0]), rat(-1));
        assert_eq!(p.eval_at_one(), rat(0));
        assert!(p.minus(&p).is_zero());
    }

    #[test]
    fn derivative_and_substitution() {
        let u = MarkerPoly::marker(Marker::U);
        let v = MarkerPoly::marker(Marker::V);
        let p = u.times(&u).times(&v); // u^2 v
        assert_eq!(p.derivative(Marker::U).coefficient([1, 1, 0]), rat(2));
        assert_eq!(p.substitute(Marker::V, &u).coefficient([3, 0, 0]), rat(1));
        assert!(p.derivative(Marker::W).is_zero());
        assert!("x".parse::<Marker>().is_err());
        assert_eq!("v".parse::<Marker>().unwrap(), Marker::V);
    }

    #[test]
    fn only_constants_invert() {
        assert!(MarkerPoly::marker(Marker::U).try_inverse().is_none());
        assert_eq!(
            MarkerPoly::integer(4).try_sqrt(),
            Some(MarkerPoly::integer(2))
        );
        assert!(MarkerPoly::zero().try_inverse().is_none());
    }

    #[test]
    fn derivative_of_marker_free_series_is_zero() {
        let s = MultiSeries::lift(&PowerSeries::from_ints(&[1, 2, 3], 4));
        assert!(marker_derivative_at_one(&s, Marker::U).is_zero());
    }
}
