//! Scalar abstraction shared by every evaluator in the crate.
//!
//! The family, classifier and bounds code is written once against [`Real`]
//! and instantiated for `f32`, `f64` (through `num_traits::Float`) and for the
//! MPFR-backed [`Hp`] used as the ground-truth oracle.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Float, FloatConst};
use rug::float::{Constant, Round};
use rug::ops::Pow;

/// Real-number operations needed by the evaluators.
///
/// Constants are produced through an existing value (`x.lift(0.5)`) so that a
/// high-precision computation stays at the precision of its inputs without a
/// global context.
pub trait Real:
    Clone
    + PartialOrd
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Converts `v` at the precision of `self`.
    fn lift(&self, v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn pi(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn ln_1p(&self) -> Self;
    fn exp(&self) -> Self;
    fn atan(&self) -> Self;
    fn powf(&self, e: &Self) -> Self;
    fn abs(&self) -> Self;
    fn is_finite(&self) -> bool;
    /// Relative resolution of the representation.
    fn resolution(&self) -> f64;

    /// Endpoint-stable arc cosine.
    ///
    /// Uses `2 atan(sqrt((1-x)/(1+x)))` on `[0, 1]` and the reflection
    /// `pi - acos(-x)` below zero, so `1 - x` is never formed from a rounded
    /// cosine-like quantity.
    fn acos(&self) -> Self {
        let zero = self.lift(0.0);
        if *self < zero {
            let reflected = (-self.clone()).acos();
            return self.pi() - reflected;
        }
        let one = self.lift(1.0);
        let ratio = (one.clone() - self.clone()) / (one + self.clone());
        self.lift(2.0) * ratio.sqrt().atan()
    }

    /// `(1 + self)^t` via `exp(t * ln_1p(self))`.
    fn pow1p(&self, t: &Self) -> Self {
        (t.clone() * self.ln_1p()).exp()
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl<T> Real for T
where
    T: Float + FloatConst + fmt::Debug + Send + Sync + 'static,
{
    fn lift(&self, v: f64) -> Self {
        T::from(v).expect("f64 is representable in every float type")
    }

    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn pi(&self) -> Self {
        T::PI()
    }

    fn sqrt(&self) -> Self {
        Float::sqrt(*self)
    }

    fn ln_1p(&self) -> Self {
        Float::ln_1p(*self)
    }

    fn exp(&self) -> Self {
        Float::exp(*self)
    }

    fn atan(&self) -> Self {
        Float::atan(*self)
    }

    fn powf(&self, e: &Self) -> Self {
        Float::powf(*self, *e)
    }

    fn abs(&self) -> Self {
        Float::abs(*self)
    }

    fn is_finite(&self) -> bool {
        Float::is_finite(*self)
    }

    fn resolution(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&T::epsilon()).unwrap_or(f64::EPSILON)
    }
}

/// Guard bits added on top of the decimal request.
const GUARD_BITS: u32 = 16;

/// Binary precision carrying `digits` significant decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
}

/// Arbitrary-precision binary float.
///
/// Binary operations run at the larger of the two operand precisions.
#[derive(Clone, PartialEq)]
pub struct Hp(rug::Float);

impl Hp {
    pub fn with_digits(v: f64, digits: u32) -> Self {
        Hp(rug::Float::with_val(bits_for_digits(digits), v))
    }

    pub fn with_bits(v: f64, bits: u32) -> Self {
        Hp(rug::Float::with_val(bits.max(53), v))
    }

    /// Parses a decimal string such as `"0.99999999999999999999"`.
    pub fn parse(s: &str, digits: u32) -> Option<Self> {
        let parsed = rug::Float::parse(s.trim()).ok()?;
        Some(Hp(rug::Float::with_val(bits_for_digits(digits), parsed)))
    }

    pub fn pi_with_bits(bits: u32) -> Self {
        Hp(rug::Float::with_val(bits, Constant::Pi))
    }

    pub fn bits(&self) -> u32 {
        self.0.prec()
    }

    pub fn inner(&self) -> &rug::Float {
        &self.0
    }

    /// Nearest double not above the value.
    pub fn to_f64_down(&self) -> f64 {
        self.0.to_f64_round(Round::Down)
    }

    /// Nearest double not below the value.
    pub fn to_f64_up(&self) -> f64 {
        self.0.to_f64_round(Round::Up)
    }

    /// Positional decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        let sci = self.0.to_string_radix(10, Some(digits as usize));
        positional(&sci)
    }

    fn prec_with(&self, other: &Hp) -> u32 {
        self.0.prec().max(other.0.prec())
    }
}

impl fmt::Debug for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hp({})", self.0)
    }
}

impl fmt::Display for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl PartialOrd for Hp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! hp_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for Hp {
            type Output = Hp;

            fn $method(self, rhs: Hp) -> Hp {
                let prec = self.prec_with(&rhs);
                Hp(rug::Float::with_val(prec, &self.0 $op &rhs.0))
            }
        }
    };
}

hp_binop!(Add, add, +);
hp_binop!(Sub, sub, -);
hp_binop!(Mul, mul, *);
hp_binop!(Div, div, /);

impl Neg for Hp {
    type Output = Hp;

    fn neg(self) -> Hp {
        Hp(-self.0)
    }
}

impl Real for Hp {
    fn lift(&self, v: f64) -> Self {
        Hp(rug::Float::with_val(self.0.prec(), v))
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    fn pi(&self) -> Self {
        Hp::pi_with_bits(self.0.prec())
    }

    fn sqrt(&self) -> Self {
        Hp(self.0.clone().sqrt())
    }

    fn ln_1p(&self) -> Self {
        Hp(self.0.clone().ln_1p())
    }

    fn exp(&self) -> Self {
        Hp(self.0.clone().exp())
    }

    fn atan(&self) -> Self {
        Hp(self.0.clone().atan())
    }

    fn powf(&self, e: &Self) -> Self {
        let prec = self.prec_with(e);
        Hp(rug::Float::with_val(prec, (&self.0).pow(&e.0)))
    }

    fn abs(&self) -> Self {
        Hp(self.0.clone().abs())
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    fn resolution(&self) -> f64 {
        2f64.powi(1 - self.0.prec() as i32)
    }
}

/// Rewrites `-1.2345e-2` as `-0.012345`; non-finite values pass through.
fn positional(sci: &str) -> String {
    let (mantissa, exp) = match sci.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (sci, 0),
    };
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    if !mantissa.starts_with(|c: char| c.is_ascii_digit()) {
        return sci.to_string();
    }
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: String = format!("{int_part}{frac_part}");
    let point = int_part.len() as i64 + exp;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (head, tail) = digits.split_at(point as usize);
        format!("{head}.{tail}")
    };
    format!("{sign}{body}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positional_rendering() {
        assert_eq!(positional("6.3661977e-1"), "0.63661977");
        assert_eq!(positional("-1.25e-3"), "-0.00125");
        assert_eq!(positional("1.5e2"), "150");
        assert_eq!(positional("3.1415"), "3.1415");
        assert_eq!(positional("1.25e1"), "12.5");
        assert_eq!(positional("inf"), "inf");
    }

    #[test]
    fn digits_map_to_enough_bits() {
        assert!(bits_for_digits(17) >= 57 + GUARD_BITS);
        assert_eq!(bits_for_digits(40), 133 + GUARD_BITS);
    }

    #[test]
    fn hp_ops_use_wider_precision() {
        let a = Hp::with_bits(1.0, 64);
        let b = Hp::with_bits(3.0, 200);
        assert_eq!((a / b).bits(), 200);
    }

    #[test]
    fn generic_acos_matches_std_in_the_interior() {
        for &x in &[-0.75f64, -0.2, 0.0, 0.3, 0.5, 0.9] {
            let ours = Real::acos(&x);
            assert!((ours - x.acos()).abs() <= 4.0 * f64::EPSILON, "x = {x}");
        }
        let x32 = 0.25f32;
        assert!((Real::acos(&x32) - x32.acos()).abs() <= 4.0 * f32::EPSILON);
    }

    #[test]
    fn hp_parse_and_round_outward() {
        let third = Hp::parse("0.333333333333333333333333333333", 40).unwrap();
        assert!(third.to_f64_down() < third.to_f64_up());
        assert!(Hp::parse("not a number", 40).is_none());
        let exact = Hp::with_digits(0.5, 40);
        assert_eq!(exact.to_f64_down(), exact.to_f64_up());
    }
}
