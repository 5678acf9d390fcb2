//! Working precision and decimal conversion.

use rug::float::Round;
use rug::ops::Pow;
use rug::{Assign, Float, Integer, Rational};

use crate::error::{Error, Result};

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Requested decimal digits plus guard digits; every floating evaluation in
/// the crate runs at `digits + guard` decimal digits of working precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < 10 {
            return Err(Error::Precision(digits));
        }
        Ok(Self { digits, guard: (digits / 5).max(10) })
    }

    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if digits < 10 {
            return Err(Error::Precision(digits));
        }
        Ok(Self { digits, guard })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Working precision in bits.
    pub fn bits(&self) -> u32 {
        ((self.digits + self.guard) as f64 * BITS_PER_DIGIT).ceil() as u32 + 16
    }

    /// A context with `extra` more requested digits and the same guard.
    pub fn boosted(&self, extra: u32) -> Self {
        Self { digits: self.digits + extra, guard: self.guard }
    }

    pub fn float<T>(&self, value: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits(), value)
    }

    /// `10^-(digits + guard)`: the working epsilon.
    pub fn working_eps(&self) -> Float {
        pow10(self.bits(), -((self.digits + self.guard) as i32))
    }

    /// `10^-digits`: the tolerance promised to callers.
    pub fn target_eps(&self) -> Float {
        pow10(self.bits(), -(self.digits as i32))
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(50).expect("50 digits is a valid precision")
    }
}

pub fn pow10(bits: u32, exp: i32) -> Float {
    Float::with_val(bits, 10).pow(exp)
}

/// Scientific decimal string with `digits` significant digits, e.g.
/// `-1.2345e-7`. Stable across runs and platforms.
pub fn to_decimal(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf".into() } else { "inf".into() };
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp_round(10, Some(digits as usize), Round::Nearest);
    let exp = exp.unwrap_or(0) - 1;
    let mut out = String::with_capacity(mantissa.len() + 8);
    if neg {
        out.push('-');
    }
    let mut chars = mantissa.chars();
    if let Some(first) = chars.next() {
        out.push(first);
    }
    let rest: String = chars.collect();
    if !rest.is_empty() {
        out.push('.');
        out.push_str(&rest);
    }
    out.push('e');
    out.push_str(&exp.to_string());
    out
}

/// Parses `"p/q"`, an integer, or a decimal such as `"-0.25"` / `"1.5e-3"`
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::InvalidArgument(format!("not a number: `{text}`"));
    if t.is_empty() {
        return Err(bad());
    }
    if t.contains('/') {
        return t.parse::<Rational>().map_err(|_| bad());
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: Integer = if digits.is_empty() { Integer::new() } else { digits.parse().map_err(|_| bad())? };
    let scale = exp - frac_part.len() as i32;
    let ten = Integer::from(10);
    let mut value = if scale >= 0 {
        Rational::from(numer * ten.pow(scale as u32))
    } else {
        Rational::from((numer, ten.pow((-scale) as u32)))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

/// Decimal string for an exact rational at `digits` significant digits.
pub fn rational_to_decimal(q: &Rational, digits: u32) -> String {
    let bits = (digits as f64 * BITS_PER_DIGIT).ceil() as u32 + 32;
    to_decimal(&Float::with_val(bits, q), digits)
}
