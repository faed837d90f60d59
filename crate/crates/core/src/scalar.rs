//! Dual arithmetic backend: `f64` for fast numerics and arbitrary-precision
//! rationals for exact certificates.
//!
//! Every density computation in this crate is generic over [`Scalar`]. The
//! `f64` backend accumulates long sums with Kahan compensation in a fixed
//! order so results are reproducible across thread counts; the [`Rat`]
//! backend never rounds.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Arbitrary-precision rational scalar (the exact backend).
pub type Rat = num_rational::BigRational;

/// Name tag for a scalar backend, used in reports and JSON output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    F64,
    Exact,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::F64 => write!(f, "f64"),
            Backend::Exact => write!(f, "exact"),
        }
    }
}

/// Accumulates a sum of scalars. The f64 implementation compensates for
/// rounding; the exact implementation is a plain sum.
pub trait Accumulator<T>: Default {
    fn push(&mut self, value: T);
    fn total(&self) -> T;
}

/// Kahan compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    compensation: f64,
}

impl Accumulator<f64> for Kahan {
    #[inline]
    fn push(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    fn total(&self) -> f64 {
        self.sum
    }
}

/// Plain summation for exact scalars.
#[derive(Debug, Clone)]
pub struct ExactSum<T> {
    sum: T,
}

impl<T: Zero> Default for ExactSum<T> {
    fn default() -> Self {
        Self { sum: T::zero() }
    }
}

impl<T: Zero + Clone + Add<Output = T>> Accumulator<T> for ExactSum<T> {
    fn push(&mut self, value: T) {
        let current = std::mem::replace(&mut self.sum, T::zero());
        self.sum = current + value;
    }

    fn total(&self) -> T {
        self.sum.clone()
    }
}

/// The scalar interface shared by both backends.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact (no rounding anywhere).
    const EXACT: bool;
    const BACKEND: Backend;

    type Accum: Accumulator<Self>;

    fn from_int(n: i64) -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self;
    fn from_biguint(n: &BigUint) -> Self;
    /// Exact conversion from the binary value of an `f64`.
    fn from_f64_exact(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Parse `"p/q"`, a plain integer, or a decimal string, exactly.
    fn parse(text: &str) -> Result<Self, String>;
    fn to_json(&self) -> serde_json::Value;
    fn from_json(value: &serde_json::Value) -> Result<Self, String>;

    /// Integer power with the convention `x^0 = 1` for every `x`.
    fn powu(&self, exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        result
    }

    /// `2^exp` for any integer exponent, exact in both backends.
    fn pow2(exp: i32) -> Self {
        if exp >= 0 {
            Self::from_int(2).powu(exp as u32)
        } else {
            Self::from_ratio(1, 2).powu((-exp) as u32)
        }
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const BACKEND: Backend = Backend::F64;

    type Accum = Kahan;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn from_biguint(n: &BigUint) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }

    fn from_f64_exact(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse(text: &str) -> Result<Self, String> {
        parse_rational_text(text).map(|r| rat_to_f64(&r))
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(*self)
            .map(serde_json::Value::Number)
            .unwrap_or(serde_json::Value::Null)
    }

    fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        match value {
            serde_json::Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| format!("number {n} is not representable as f64")),
            serde_json::Value::String(s) => Self::parse(s),
            other => Err(format!("expected number or \"p/q\" string, got {other}")),
        }
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;
    const BACKEND: Backend = Backend::Exact;

    type Accum = ExactSum<Rat>;

    fn from_int(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn from_biguint(n: &BigUint) -> Self {
        Rat::from_integer(BigInt::from(n.clone()))
    }

    fn from_f64_exact(x: f64) -> Self {
        Rat::from_float(x).expect("finite float")
    }

    fn to_f64(&self) -> f64 {
        rat_to_f64(self)
    }

    fn parse(text: &str) -> Result<Self, String> {
        parse_rational_text(text)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }

    fn from_json(value: &serde_json::Value) -> Result<Self, String> {
        match value {
            serde_json::Value::String(s) => Self::parse(s),
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Self::from_int(i))
                } else {
                    let x = n
                        .as_f64()
                        .ok_or_else(|| format!("number {n} is not representable"))?;
                    Ok(Self::from_f64_exact(x))
                }
            }
            other => Err(format!("expected \"p/q\" string or number, got {other}")),
        }
    }
}

/// Parse `"p/q"`, `"n"`, or a decimal such as `"0.05"` into an exact rational.
pub fn parse_rational_text(text: &str) -> Result<Rat, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty numeric literal".to_string());
    }
    if let Some((numer, denom)) = s.split_once('/') {
        let n = BigInt::from_str(numer.trim())
            .map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
        let d = BigInt::from_str(denom.trim())
            .map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') { -1 } else { 1 };
        let w = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|e| format!("bad number {s:?}: {e}"))?
        };
        if frac.is_empty() {
            return Ok(Rat::from_integer(w));
        }
        let digits =
            BigInt::from_str(frac).map_err(|e| format!("bad fractional part in {s:?}: {e}"))?;
        if digits.is_negative() {
            return Err(format!("bad fractional part in {s:?}"));
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Rat::from_integer(w) + Rat::new(digits * sign, scale));
    }
    let n = BigInt::from_str(s).map_err(|e| format!("bad number {s:?}: {e}"))?;
    Ok(Rat::from_integer(n))
}

/// Rational to nearest f64, robust to numerators/denominators far outside
/// the f64 range (scales both sides down before dividing).
pub fn rat_to_f64(r: &Rat) -> f64 {
    if let Some(x) = ToPrimitive::to_f64(r) {
        if x.is_finite() || r.denom().is_one() {
            return x;
        }
    }
    let numer = r.numer();
    let denom = r.denom();
    if numer.is_zero() {
        return 0.0;
    }
    let nbits = numer.bits() as i64;
    let dbits = denom.bits() as i64;
    // Keep ~80 significant bits on each side and track the shifted exponents.
    let keep = 80i64;
    let nshift = (nbits - keep).max(0);
    let dshift = (dbits - keep).max(0);
    let nh = ToPrimitive::to_f64(&(numer.abs() >> nshift as u64)).unwrap_or(f64::MAX);
    let dh = ToPrimitive::to_f64(&(denom.clone() >> dshift as u64)).unwrap_or(f64::MAX);
    let sign = if numer.is_negative() { -1.0 } else { 1.0 };
    sign * (nh / dh) * 2f64.powi((nshift - dshift) as i32)
}

/// Multinomial coefficient `k! / (c_1! c_2! ...)` where `k = sum(counts)`.
pub fn multinomial(counts: &[u32]) -> BigUint {
    let mut result = BigUint::one();
    let mut total: u32 = 0;
    for &c in counts {
        // Multiply by C(total + c, c) one factor at a time.
        for i in 1..=c {
            total += 1;
            result = result * BigUint::from(total) / BigUint::from(i);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(<Rat as Scalar>::parse("1/20").unwrap(), Rat::from_ratio(1, 20));
        assert_eq!(<Rat as Scalar>::parse("0.05").unwrap(), Rat::from_ratio(1, 20));
        assert_eq!(<Rat as Scalar>::parse("3").unwrap(), Rat::from_int(3));
        assert_eq!(<Rat as Scalar>::parse("-0.25").unwrap(), Rat::from_ratio(-1, 4));
        assert_eq!(<Rat as Scalar>::parse(" 19/60 ").unwrap(), Rat::from_ratio(19, 60));
        assert!(<Rat as Scalar>::parse("1/0").is_err());
        assert!(<Rat as Scalar>::parse("").is_err());
        assert_eq!(<f64 as Scalar>::parse("1/4").unwrap(), 0.25);
        assert_eq!(<f64 as Scalar>::parse("0.5").unwrap(), 0.5);
    }

    #[test]
    fn display_round_trips_exact() {
        let r = Rat::from_ratio(19, 60);
        assert_eq!(r.to_string(), "19/60");
        assert_eq!(<Rat as Scalar>::parse(&r.to_string()).unwrap(), r);
        let i = Rat::from_int(2);
        assert_eq!(i.to_string(), "2");
        assert_eq!(<Rat as Scalar>::parse(&i.to_string()).unwrap(), i);
    }

    #[test]
    fn powu_and_pow2() {
        assert_eq!(0f64.powu(0), 1.0);
        assert_eq!(Rat::zero().powu(0), Rat::one());
        assert_eq!(Rat::from_ratio(1, 2).powu(13), Rat::from_ratio(1, 8192));
        assert_eq!(<Rat as Scalar>::pow2(-13), Rat::from_ratio(1, 8192));
        assert_eq!(<f64 as Scalar>::pow2(-13), 2f64.powi(-13));
        assert_eq!(<Rat as Scalar>::pow2(4), Rat::from_int(16));
    }

    #[test]
    fn kahan_beats_naive_on_adversarial_sum() {
        let mut acc = Kahan::default();
        acc.push(1.0);
        for _ in 0..10_000 {
            acc.push(1e-16);
        }
        let expected = 1.0 + 10_000.0 * 1e-16;
        assert!((acc.total() - expected).abs() < 1e-15);
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&[0, 0]), BigUint::one());
        assert_eq!(multinomial(&[2, 1]), BigUint::from(3u32));
        assert_eq!(multinomial(&[1, 1, 1]), BigUint::from(6u32));
        assert_eq!(multinomial(&[4, 4, 4]), BigUint::from(34650u32));
        assert_eq!(multinomial(&[12]), BigUint::one());
    }

    #[test]
    fn rat_to_f64_handles_huge_terms() {
        let big = BigInt::from(10u32).pow(400);
        let r = Rat::new(big.clone() * 3, big);
        assert!((rat_to_f64(&r) - 3.0).abs() < 1e-12);
        let tiny = Rat::new(BigInt::one(), BigInt::from(10u32).pow(200));
        assert!(rat_to_f64(&tiny) >= 0.0 && rat_to_f64(&tiny) < 1e-190);
    }

    #[test]
    fn json_round_trip_per_backend() {
        let x = 0.030980119989701052f64;
        let v = x.to_json();
        assert_eq!(f64::from_json(&v).unwrap(), x);
        let r = Rat::from_ratio(144, 8192);
        let v = r.to_json();
        assert_eq!(Rat::from_json(&v).unwrap(), r);
        // each backend also reads the other's encoding
        assert_eq!(f64::from_json(&serde_json::json!("1/2")).unwrap(), 0.5);
        assert_eq!(
            Rat::from_json(&serde_json::json!(0.5)).unwrap(),
            Rat::from_ratio(1, 2)
        );
    }
}
