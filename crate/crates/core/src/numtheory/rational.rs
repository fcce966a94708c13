use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default number of significant digits used when rendering decimals.
pub const DEFAULT_DECIMAL_DIGITS: usize = 12;

/// A reduced fraction over arbitrary-precision integers.
///
/// The denominator is always positive and coprime to the numerator; equality
/// and ordering compare values. Serializes as the string `"num/den"` (or
/// `"num"` when the denominator is one).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        Ok(ExactRational(BigRational::new(numer.into(), denom)))
    }

    /// Panics on a zero denominator; for literals and internal formulas.
    pub fn frac(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Self::new(numer, denom).expect("nonzero denominator")
    }

    /// Wraps parts already known to be coprime with a positive denominator.
    pub(crate) fn from_reduced(numer: BigInt, denom: BigInt) -> Self {
        debug_assert!(denom.is_positive());
        ExactRational(BigRational::new_raw(numer, denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("reciprocal of zero"));
        }
        Ok(ExactRational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        ExactRational(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    /// Lossy conversion for diagnostics and plotting.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Renders the value with `digits` significant digits, rounding half away
    /// from zero. Very large or small magnitudes switch to scientific form.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.0.is_negative();
        let num = self.numer().magnitude().clone();
        let den = self.denom().magnitude().clone();

        // e = floor(log10(|x|)); start from the bit-length estimate and fix up.
        let bit_gap = num.bits() as f64 - den.bits() as f64;
        let mut exp = (bit_gap * std::f64::consts::LOG10_2).floor() as i64;
        let ten = BigUint::from(10u32);
        let ge_pow10 = |e: i64| -> bool {
            // |x| >= 10^e
            if e >= 0 {
                num >= &den * num_traits::pow(ten.clone(), e as usize)
            } else {
                &num * num_traits::pow(ten.clone(), (-e) as usize) >= den
            }
        };
        while !ge_pow10(exp) {
            exp -= 1;
        }
        while ge_pow10(exp + 1) {
            exp += 1;
        }

        // Scale so that the integer part carries `digits` digits.
        let shift = digits as i64 - 1 - exp;
        let (scaled_num, scaled_den) = if shift >= 0 {
            (
                &num * num_traits::pow(ten.clone(), shift as usize),
                den.clone(),
            )
        } else {
            (
                num.clone(),
                &den * num_traits::pow(ten.clone(), (-shift) as usize),
            )
        };
        let (mut q, r) = scaled_num.div_rem(&scaled_den);
        if &r * 2u32 >= scaled_den {
            q += 1u32;
        }
        let mut mantissa = q.to_string();
        if mantissa.len() > digits {
            // Rounding carried into a new digit (e.g. 9.99 -> 10.0).
            mantissa.truncate(digits);
            exp += 1;
        }

        let body = if (-6..=15).contains(&exp) {
            if exp >= 0 {
                let int_len = exp as usize + 1;
                if mantissa.len() <= int_len {
                    let zeros = int_len - mantissa.len();
                    format!("{mantissa}{}", "0".repeat(zeros))
                } else {
                    let (a, b) = mantissa.split_at(int_len);
                    trim_fraction(format!("{a}.{b}"))
                }
            } else {
                let zeros = (-exp - 1) as usize;
                trim_fraction(format!("0.{}{mantissa}", "0".repeat(zeros)))
            }
        } else {
            let (a, b) = mantissa.split_at(1);
            let m = if b.is_empty() {
                a.to_string()
            } else {
                trim_fraction(format!("{a}.{b}"))
            };
            format!("{m}e{exp}")
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }
}

fn trim_fraction(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `a/b`, integers, and exact decimals such as `0.25`, `-1.5e-3`.
impl FromStr for ExactRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::parse(format!("`{s}`"), msg.to_string());
        if s.is_empty() {
            return Err(bad("empty number"));
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad("invalid numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("invalid denominator"))?;
            return ExactRational::new(n, d).map_err(|_| bad("zero denominator"));
        }

        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = s[i + 1..].parse().map_err(|_| bad("invalid exponent"))?;
                (&s[..i], e)
            }
            None => (s, 0),
        };
        let (sign, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (Sign::Minus, rest),
            None => (Sign::Plus, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad("no digits"));
        }
        if !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
        {
            return Err(bad("invalid digit"));
        }
        let all: BigUint = format!("{int_part}{frac_part}0")
            .parse::<BigUint>()
            .map_err(|_| bad("invalid digits"))?
            / 10u32;
        let scale = exp - frac_part.len() as i64;
        if scale.unsigned_abs() > 10_000 {
            return Err(bad("exponent out of range"));
        }
        let ten = BigUint::from(10u32);
        let value = if scale >= 0 {
            BigRational::from_integer(BigInt::from_biguint(
                sign,
                all * num_traits::pow(ten, scale as usize),
            ))
        } else {
            BigRational::new(
                BigInt::from_biguint(sign, all),
                BigInt::from(num_traits::pow(ten, (-scale) as usize)),
            )
        };
        Ok(ExactRational(value))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for ExactRational {
            fn from(n: $t) -> Self {
                ExactRational::from_integer(n)
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, usize, BigInt, BigUint);

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

// Division by zero panics, as for the underlying `Ratio`; use `recip` for a
// checked variant.
binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Product for ExactRational {
    fn product<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::one(), |a, b| a * b)
    }
}

impl<'a> Product<&'a ExactRational> for ExactRational {
    fn product<I: Iterator<Item = &'a ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::one(), |a, b| a * b)
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |a, b| a + b)
    }
}
