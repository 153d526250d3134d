//! Fixed-point real numbers over big integers.
//!
//! A [`Real`] is `mantissa / 2^bits`. The precision travels with the value,
//! so two computations at different precisions never interfere. Binary
//! operations on mixed precisions are carried out at the finer one.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Guard bits added on top of the requested decimal precision.
const GUARD_BITS: u32 = 32;

/// Number of fractional bits needed to carry `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    // log2(10) < 3.3220
    (digits as u64 * 33220).div_ceil(10000) as u32 + GUARD_BITS
}

#[derive(Clone, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    bits: u32,
}

impl Real {
    pub fn zero(bits: u32) -> Self {
        Real {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn one(bits: u32) -> Self {
        Real::from_i64(1, bits)
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        Real {
            mant: BigInt::from(v) << bits,
            bits,
        }
    }

    pub fn from_ratio(r: &BigRational, bits: u32) -> Self {
        let num = r.numer() << bits;
        Real {
            mant: div_round(&num, r.denom()),
            bits,
        }
    }

    pub fn from_fraction(num: i64, den: i64, bits: u32) -> Self {
        Real::from_ratio(&BigRational::new(num.into(), den.into()), bits)
    }

    /// Parses a plain decimal literal such as `-0.3646859471`.
    pub fn from_decimal(text: &str, bits: u32) -> Option<Self> {
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits: String = int_part.chars().chain(frac_part.chars()).collect();
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut num: BigInt = digits.parse().ok()?;
        if neg {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        Some(Real::from_ratio(&BigRational::new(num, den), bits))
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Real {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    /// Re-expresses the value with `bits` fractional bits.
    pub fn with_bits(&self, bits: u32) -> Self {
        let mant = match bits.cmp(&self.bits) {
            Ordering::Equal => self.mant.clone(),
            Ordering::Greater => &self.mant << (bits - self.bits),
            Ordering::Less => &self.mant >> (self.bits - bits),
        };
        Real { mant, bits }
    }

    /// True when `|self| < 2^-exp`.
    pub fn below_pow2(&self, exp: u32) -> bool {
        if exp >= self.bits {
            return self.mant.is_zero();
        }
        self.mant.abs() < (BigInt::one() << (self.bits - exp))
    }

    /// The tolerance used to decide that a computed quantity is zero: half the
    /// working precision.
    pub fn negligible(&self) -> bool {
        self.below_pow2(self.bits / 2)
    }

    pub fn sqrt(&self) -> Option<Self> {
        if self.mant.is_negative() {
            return None;
        }
        let scaled = &self.mant << self.bits;
        Some(Real {
            mant: scaled.sqrt(),
            bits: self.bits,
        })
    }

    pub fn recip(&self) -> Option<Self> {
        if self.mant.is_zero() {
            return None;
        }
        Some(&Real::one(self.bits) / self)
    }

    pub fn powi(&self, exp: i64) -> Self {
        let base = if exp < 0 {
            self.recip().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Real::one(self.bits);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        // Keep 64 significant bits before handing over to floating point.
        let len = self.mant.bits() as i64;
        let drop = (len - 64).max(0);
        let head = (&self.mant >> drop as usize).to_f64().unwrap_or(f64::NAN);
        head * pow2(drop - self.bits as i64)
    }

    /// Decimal rendering rounded to `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = div_round(&(&self.mant * scale), &(BigInt::one() << self.bits));
        let negative = scaled.is_negative();
        let mut body = scaled.abs().to_str_radix(10);
        if body.len() <= digits {
            let pad = digits + 1 - body.len();
            let mut padded = String::with_capacity(digits + 1);
            padded.extend(core::iter::repeat_n('0', pad));
            padded.push_str(&body);
            body = padded;
        }
        let split = body.len() - digits;
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&body[..split]);
        if digits > 0 {
            out.push('.');
            out.push_str(&body[split..]);
        }
        out
    }

    /// pi via Machin's formula at the given precision.
    pub fn pi(bits: u32) -> Self {
        let work = bits + 16;
        let a = arctan_inv(5, work);
        let b = arctan_inv(239, work);
        let mant = (a * 16u32) - (b * 4u32);
        Real { mant, bits: work }.with_bits(bits)
    }

    /// Gamma at a half-integer or positive integer, `Gamma(twice / 2)`.
    /// Returns `None` at the poles (zero and negative integers).
    pub fn gamma_half(twice: i64, bits: u32) -> Option<Self> {
        if twice <= 0 && twice % 2 == 0 {
            return None;
        }
        // Start from Gamma(1) = 1 or Gamma(1/2) = sqrt(pi) and walk with
        // Gamma(x + 1) = x Gamma(x).
        let (mut acc, mut cur) = if twice % 2 == 0 {
            (Real::one(bits), 2i64)
        } else {
            (Real::pi(bits).sqrt()?, 1i64)
        };
        while cur < twice {
            acc = &acc * &Real::from_fraction(cur, 2, bits);
            cur += 2;
        }
        while cur > twice {
            cur -= 2;
            acc = &acc / &Real::from_fraction(cur, 2, bits);
        }
        Some(acc)
    }

    fn aligned<'a>(&'a self, other: &'a Real) -> (BigInt, BigInt, u32) {
        let bits = self.bits.max(other.bits);
        (self.with_bits(bits).mant, other.with_bits(bits).mant, bits)
    }
}

fn pow2(exp: i64) -> f64 {
    let mut v = 1.0f64;
    let step = if exp < 0 { 0.5 } else { 2.0 };
    for _ in 0..exp.unsigned_abs() {
        v *= step;
    }
    v
}

/// Rounds `num / den` to the nearest integer, ties away from zero.
fn div_round(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    let twice = r.abs() * 2u32;
    if twice >= den.abs() {
        let same_sign = (num.sign() == Sign::Minus) == (den.sign() == Sign::Minus);
        if same_sign {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// `arctan(1/k) * 2^bits` by the alternating Taylor series.
fn arctan_inv(k: u32, bits: u32) -> BigInt {
    let k2 = BigInt::from(k) * BigInt::from(k);
    let mut power = (BigInt::one() << bits) / BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut n = 1u32;
    let mut add = true;
    while !power.is_zero() {
        let term = &power / BigInt::from(n);
        if add {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &k2;
        n += 2;
        add = !add;
    }
    sum
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12);
        f.write_str(&self.to_decimal(digits))
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        let (a, b, bits) = self.aligned(rhs);
        Real { mant: a + b, bits }
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        let (a, b, bits) = self.aligned(rhs);
        Real { mant: a - b, bits }
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        let (a, b, bits) = self.aligned(rhs);
        Real {
            mant: (a * b) >> bits,
            bits,
        }
    }
}

impl Div for &Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        let (a, b, bits) = self.aligned(rhs);
        assert!(!b.is_zero(), "division of a Real by zero");
        Real {
            mant: div_round(&(a << bits), &b),
            bits,
        }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            mant: -&self.mant,
            bits: self.bits,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real { (&self).$m(&rhs) }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}
