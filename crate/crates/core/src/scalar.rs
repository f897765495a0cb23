//! Gaussian rationals `a + b i` with arbitrary-precision rational parts.
//!
//! Every matrix in the crate lives over this field. `BigRational` keeps its
//! denominators positive and reduced, so equality is structural.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar {input:?} at position {position}: {reason}")]
pub struct ScalarParseError {
    pub input: String,
    pub position: usize,
    pub reason: String,
}

impl ScalarParseError {
    fn new(input: &str, position: usize, reason: impl Into<String>) -> Self {
        Self {
            input: input.to_string(),
            position,
            reason: reason.into(),
        }
    }
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num / den` as a real scalar. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
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
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2 = a^2 + b^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::new(self.re.recip(), BigRational::zero()));
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Serialized text of one rational part: `"p/q"`, with `q` dropped when 1.
    pub fn rational_text(r: &BigRational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    pub fn parse_rational(s: &str) -> Result<BigRational, ScalarParseError> {
        parse_rational_at(s, s, 0)
    }
}

fn parse_rational_at(full: &str, s: &str, offset: usize) -> Result<BigRational, ScalarParseError> {
    let trimmed = s.trim();
    let lead = s.len() - s.trim_start().len();
    let offset = offset + lead;
    if trimmed.is_empty() {
        return Err(ScalarParseError::new(full, offset, "empty number"));
    }
    let (num_str, den_str, slash) = match trimmed.find('/') {
        Some(k) => (&trimmed[..k], Some(&trimmed[k + 1..]), k),
        None => (trimmed, None, trimmed.len()),
    };
    let num = parse_int(full, num_str, offset, true)?;
    let den = match den_str {
        Some(d) => parse_int(full, d, offset + slash + 1, false)?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ScalarParseError::new(full, offset + slash + 1, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn parse_int(full: &str, s: &str, offset: usize, allow_sign: bool) -> Result<BigInt, ScalarParseError> {
    let digits = match s.strip_prefix(['+', '-']) {
        Some(rest) if allow_sign => rest,
        Some(_) => return Err(ScalarParseError::new(full, offset, "unexpected sign")),
        None => s,
    };
    let sign_len = s.len() - digits.len();
    if digits.is_empty() {
        return Err(ScalarParseError::new(full, offset + sign_len, "expected digits"));
    }
    if let Some(bad) = digits.find(|c: char| !c.is_ascii_digit()) {
        return Err(ScalarParseError::new(
            full,
            offset + sign_len + bad,
            format!("unexpected character {:?}", digits[bad..].chars().next().unwrap()),
        ));
    }
    Ok(s.parse::<BigInt>().expect("validated digits"))
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    /// Accepts a rational (`-3/2`), a pure imaginary (`2/3i`, `-i`) or a sum
    /// `a/b+c/d i`. Whitespace is ignored.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ScalarParseError::new(input, 0, "empty number"));
        }
        let Some(body) = compact.strip_suffix('i') else {
            return Ok(Scalar::new(parse_rational_at(input, &compact, 0)?, BigRational::zero()));
        };
        // split point: last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_part, im_part, im_offset) = match split {
            Some(k) => (Some(&body[..k]), &body[k..], k),
            None => (None, body, 0),
        };
        let re = match re_part {
            Some(r) => parse_rational_at(input, r, 0)?,
            None => BigRational::zero(),
        };
        let im = match im_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational_at(input, other, im_offset)?,
        };
        Ok(Scalar::new(re, im))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", Self::rational_text(&self.re));
        }
        let im_abs = self.im.abs();
        let im_text = if im_abs.is_one() {
            String::new()
        } else {
            Self::rational_text(&im_abs)
        };
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{im_text}i");
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{sign}{im_text}i", Self::rational_text(&self.re))
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarText {
    re: String,
    im: String,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ScalarText {
            re: Self::rational_text(&self.re),
            im: Self::rational_text(&self.im),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = ScalarText::deserialize(deserializer)?;
        let re = Scalar::parse_rational(&text.re).map_err(serde::de::Error::custom)?;
        let im = Scalar::parse_rational(&text.im).map_err(serde::de::Error::custom)?;
        Ok(Scalar::new(re, im))
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::new(r, BigRational::zero())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::new(&self.re * &rhs.re, BigRational::zero());
        }
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
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
