//! Exact roots of unity.
//!
//! A [`Phase`] is an element of ℚ/ℤ standing for the unit complex number
//! `e^{2πix}`. Multiplication of roots of unity is addition of phases, so all
//! cocycles, characters and quadratic forms in this crate are written
//! additively. An [`FValue`] adds a rational square-root magnitude, which is
//! exactly what is needed for Tambara-Yamagami associators.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `num/den` of ℚ/ℤ, always reduced with `0 ≤ num < den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase {
    num: i64,
    den: i64,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };
    pub const HALF: Phase = Phase { num: 1, den: 2 };

    /// Builds the class of `num/den` modulo 1.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Phase {
        assert!(den != 0, "phase with zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Phase {
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        Phase { num: i64::try_from(num).expect("phase numerator overflow"), den: i64::try_from(den).expect("phase denominator overflow") }
    }

    pub fn from_ratio(r: Rational64) -> Phase {
        Phase::new(*r.numer(), *r.denom())
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// The representative in `[0, 1)` as a rational number.
    pub fn to_ratio(self) -> Rational64 {
        Rational64::new_raw(self.num, self.den)
    }

    /// Additive order in ℚ/ℤ, which is the denominator.
    pub fn order(self) -> i64 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `e^{2πi·self}`. Quarter turns are returned exactly.
    pub fn to_complex(self) -> Complex64 {
        match (self.num, self.den) {
            (0, 1) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            _ => {
                // reduce to (-1/2, 1/2] for accuracy
                let x = if 2 * self.num > self.den { (self.num - self.den) as f64 / self.den as f64 } else { self.to_f64() };
                let (s, c) = (2.0 * std::f64::consts::PI * x).sin_cos();
                Complex64::new(c, s)
            }
        }
    }

    /// The phase `x/2` for the representative `x ∈ [0,1)`. One of the two
    /// solutions of `2y = x`; the other is `half_of() + 1/2`.
    pub fn half_of(self) -> Phase {
        Phase::from_i128(self.num as i128, 2 * self.den as i128)
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Ord for Phase {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.num as i128) * (other.den as i128)).cmp(&((other.num as i128) * (self.den as i128)))
    }
}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let l = (self.den as i128).lcm(&(rhs.den as i128));
        let n = self.num as i128 * (l / self.den as i128) + rhs.num as i128 * (l / rhs.den as i128);
        Phase::from_i128(n, l)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        if self.num == 0 {
            self
        } else {
            Phase { num: self.den - self.num, den: self.den }
        }
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl SubAssign for Phase {
    fn sub_assign(&mut self, rhs: Phase) {
        *self = *self - rhs;
    }
}

impl Mul<i64> for Phase {
    type Output = Phase;
    fn mul(self, rhs: i64) -> Phase {
        Phase::from_i128(self.num as i128 * rhs as i128, self.den as i128)
    }
}

impl Mul<Phase> for i64 {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        rhs * self
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({}/{})", self.num, self.den)
    }
}

fn parse_fraction(s: &str) -> Option<(i64, i64)> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => Some((n.trim().parse().ok()?, d.trim().parse().ok()?)),
        None => Some((s.parse().ok()?, 1)),
    }
}

impl FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Phase> {
        match parse_fraction(s) {
            Some((_, 0)) | None => Err(Error::Parse(format!("invalid phase {s:?}"))),
            Some((n, d)) => Ok(Phase::new(n, d)),
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Phase, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_ratio(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Result<Rational64> {
    match parse_fraction(s) {
        Some((_, 0)) | None => Err(Error::Parse(format!("invalid rational {s:?}"))),
        Some((n, d)) => Ok(Rational64::new(n, d)),
    }
}

/// `√radicand · e^{2πi·phase}` with a positive rational radicand.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FValue {
    pub phase: Phase,
    pub radicand: Rational64,
}

impl FValue {
    pub const ONE: FValue = FValue { phase: Phase::ZERO, radicand: Rational64::new_raw(1, 1) };

    pub fn new(phase: Phase, radicand: Rational64) -> Result<FValue> {
        if *radicand.numer() <= 0 {
            return Err(Error::InvalidInput(format!("radicand must be positive, got {radicand}")));
        }
        Ok(FValue { phase, radicand })
    }

    pub fn from_phase(phase: Phase) -> FValue {
        FValue { phase, radicand: Rational64::from_integer(1) }
    }

    pub fn inverse(self) -> FValue {
        FValue { phase: -self.phase, radicand: self.radicand.recip() }
    }

    /// Double-precision value `√r·(cos 2πx, sin 2πx)`.
    pub fn eval(self) -> Complex64 {
        let r = *self.radicand.numer() as f64 / *self.radicand.denom() as f64;
        self.phase.to_complex() * r.sqrt()
    }

    /// Evaluation at a requested binary precision. Only the native 53-bit
    /// precision of `f64` is available.
    pub fn eval_with_precision(self, bits: u32) -> Result<Complex64> {
        match bits {
            0..=52 => Err(Error::InvalidInput(format!("precision must be at least 53 bits, got {bits}"))),
            53 => Ok(self.eval()),
            _ => Err(Error::Unsupported(format!("{bits}-bit evaluation; only 53 bits are available"))),
        }
    }
}

impl Mul for FValue {
    type Output = FValue;
    fn mul(self, rhs: FValue) -> FValue {
        FValue { phase: self.phase + rhs.phase, radicand: self.radicand * rhs.radicand }
    }
}

#[derive(Serialize, Deserialize)]
struct FValueRepr {
    phase: Phase,
    radicand: String,
}

impl Serialize for FValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FValueRepr { phase: self.phase, radicand: format_ratio(self.radicand) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<FValue, D::Error> {
        let r = FValueRepr::deserialize(d)?;
        let radicand = parse_ratio(&r.radicand).map_err(serde::de::Error::custom)?;
        FValue::new(r.phase, radicand).map_err(serde::de::Error::custom)
    }
}
