use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::real::Real;

/// The ring operations a series coefficient must provide.
///
/// Constructors take `&self` as a prototype so that rings whose elements carry
/// context (the precision of a [`Real`]) can build compatible constants.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// `r` in the coefficient ring of `self`, which serves as the prototype.
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, r: &BigRational) -> Self;
    fn try_inverse(&self) -> Option<Self>;
    fn try_sqrt(&self) -> Option<Self>;

    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, v: i64) -> Self {
        self.from_rational(&BigRational::from_integer(v.into()))
    }
}

impl Coeff for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_rational(&self, r: &BigRational) -> Self {
        r.clone()
    }
    fn try_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(BigRational::new(n, d))
    }
}

fn exact_isqrt(v: &BigInt) -> Option<BigInt> {
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

impl Coeff for Real {
    fn zero_like(&self) -> Self {
        Real::zero(self.bits())
    }
    fn one_like(&self) -> Self {
        Real::one(self.bits())
    }
    fn is_zero(&self) -> bool {
        Real::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_rational(&self, r: &BigRational) -> Self {
        Real::from_ratio(r, self.bits())
    }
    fn try_inverse(&self) -> Option<Self> {
        self.recip()
    }
    fn try_sqrt(&self) -> Option<Self> {
        self.sqrt()
    }
}

/// Integer coefficients, for series known to have integer coefficients
/// (counting series); only `±1` is invertible.
impl Coeff for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    /// Panics on a non-integer: integer series only ever meet integer
    /// constants.
    fn from_rational(&self, r: &BigRational) -> Self {
        assert!(r.is_integer(), "integer series met the non-integer {r}");
        r.to_integer()
    }
    fn try_inverse(&self) -> Option<Self> {
        (self.abs() == BigInt::one()).then(|| self.clone())
    }
    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        exact_isqrt(self)
    }
    fn from_int(&self, v: i64) -> Self {
        BigInt::from(v)
    }
}
