//! Exact Gaussian rationals, the field `Q(i)`.
//!
//! Every coefficient that appears in the catalogued tables is representable
//! here, so all checks in this crate are exact.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// A Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from(1)
    }

    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    /// `p/q` as a real scalar. Panics when `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::new(Rational::new(BigInt::from(p), BigInt::from(q)), Rational::zero())
    }

    pub fn complex(re: Rational, im: Rational) -> Self {
        Scalar::new(re, im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Four decimal strings `[re_num, re_den, im_num, im_den]`.
    pub fn to_parts(&self) -> [String; 4] {
        [
            self.re.numer().to_string(),
            self.re.denom().to_string(),
            self.im.numer().to_string(),
            self.im.denom().to_string(),
        ]
    }

    pub fn from_parts(parts: &[String]) -> Result<Self> {
        if parts.len() != 4 {
            return Err(Error::parse(
                format!("{parts:?}"),
                "expected four integer strings",
            ));
        }
        let int = |s: &str| {
            BigInt::from_str(s).map_err(|_| Error::parse(s, "not a decimal integer"))
        };
        let rat = |n: &str, d: &str| -> Result<Rational> {
            let d = int(d)?;
            if d.is_zero() {
                return Err(Error::parse(format!("{n}/0"), "zero denominator"));
            }
            Ok(Rational::new(int(n)?, d))
        };
        Ok(Scalar::new(rat(&parts[0], &parts[1])?, rat(&parts[2], &parts[3])?))
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::new(Rational::from_integer(BigInt::from(v)), Rational::zero())
    }
}

impl From<Rational> for Scalar {
    fn from(v: Rational) -> Self {
        Scalar::new(v, Rational::zero())
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Imaginary part written as a coefficient of `i`; unit magnitudes are elided.
fn fmt_imag(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mag = r.abs();
    if r.is_negative() {
        f.write_str("-")?;
    }
    if !mag.is_one() {
        fmt_rational(&mag, f)?;
    }
    f.write_str("i")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => fmt_rational(&self.re, f),
            (true, false) => fmt_imag(&self.im, f),
            (false, false) => {
                fmt_rational(&self.re, f)?;
                if self.im.is_positive() {
                    f.write_str("+")?;
                }
                fmt_imag(&self.im, f)
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<Rational> {
    let bad = || Error::parse(whole, "expected a rational p/q");
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let valid = |t: &str| {
        let t = t.strip_prefix(['+', '-']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(n) || !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
        return Err(bad());
    }
    let n = BigInt::from_str(n.trim_start_matches('+')).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::parse(whole, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

fn parse_imag(s: &str, whole: &str) -> Result<Rational> {
    let body = s.strip_suffix('i').ok_or_else(|| Error::parse(whole, "expected imaginary part"))?;
    match body {
        "" | "+" => Ok(Rational::one()),
        "-" => Ok(-Rational::one()),
        _ => parse_rational(body, whole),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p/q`, `r/si` and `p/q+r/si` with optional signs, e.g. `-1+1/2i`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Err(Error::parse(s, "empty scalar"));
        }
        if !t.ends_with('i') {
            return Ok(Scalar::from(parse_rational(t, s)?));
        }
        // split at the last sign that is not leading
        let split = t
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            Some(k) => Ok(Scalar::new(parse_rational(&t[..k], s)?, parse_imag(&t[k..], s)?)),
            None => Ok(Scalar::new(Rational::zero(), parse_imag(t, s)?)),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_parts().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(deserializer)?;
        Scalar::from_parts(&parts).map_err(D::Error::custom)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::from(&self.re * &rhs.re);
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a `Result`.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}
