//! Ground-truth arc cosine at configurable precision, plus a double-precision
//! evaluator that stays accurate within a few ulp of the endpoints.
//!
//! Both paths use the half-angle identity `acos x = 2 atan(sqrt((1-x)/(1+x)))`
//! on `[0, 1]` and the reflection `acos x = pi - acos(-x)` for negative `x`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::scalar::{bits_for_digits, Hp, Real};

pub const MIN_DIGITS: u32 = 17;
pub const MAX_DIGITS: u32 = 200;
pub const DEFAULT_DIGITS: u32 = 40;

/// A high-precision result together with the number of significant decimal
/// digits it is accurate to.
#[derive(Clone, Debug)]
pub struct HpValue {
    pub digits: u32,
    pub value: Hp,
}

impl HpValue {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

impl fmt::Display for HpValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value.to_decimal(self.digits))
    }
}

pub fn check_digits(digits: u32) -> Result<()> {
    if (MIN_DIGITS..=MAX_DIGITS).contains(&digits) {
        Ok(())
    } else {
        Err(Error::Precision {
            digits,
            min: MIN_DIGITS,
            max: MAX_DIGITS,
        })
    }
}

/// `acos x` with relative error at most `10^(1-digits)`.
pub fn arccos_hp(x: &Hp, digits: u32) -> Result<HpValue> {
    check_digits(digits)?;
    let x = Hp::with_bits(0.0, bits_for_digits(digits).max(x.bits())) + x.clone();
    let one = x.lift(1.0);
    if x > one || x < -one.clone() || !x.is_finite() {
        return Err(domain(x.to_f64(), "[-1, 1]"));
    }
    Ok(HpValue {
        digits,
        value: x.acos(),
    })
}

/// [`arccos_hp`] for a double argument (converted exactly).
pub fn arccos_hp_f64(x: f64, digits: u32) -> Result<HpValue> {
    check_digits(digits)?;
    arccos_hp(&Hp::with_digits(x, digits), digits)
}

// pi = PI_HI + PI_LO to about 2^-106.
const PI_HI: f64 = std::f64::consts::PI;
const PI_LO: f64 = 1.224_646_799_147_353_2e-16;

/// Double-precision `acos x`, accurate to a few ulp up to the endpoints.
pub fn arccos_stable(x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(domain(x, "[-1, 1]"));
    }
    if x < 0.0 {
        let reflected = half_angle(-x);
        return Ok((PI_HI - reflected) + PI_LO);
    }
    Ok(half_angle(x))
}

fn half_angle(x: f64) -> f64 {
    2.0 * ((1.0 - x) / (1.0 + x)).sqrt().atan()
}

/// Named constants available from [`const_hp`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Constant {
    Pi,
    TwoOverPi,
    FourOverPiSq,
    OneThird,
    Cbrt4,
    TwoSqrt2,
    /// `(1/2 + sqrt 2) pi`, the supremum of the radical family ratio.
    BestUpperThm3,
}

impl Constant {
    pub const ALL: [Constant; 7] = [
        Constant::Pi,
        Constant::TwoOverPi,
        Constant::FourOverPiSq,
        Constant::OneThird,
        Constant::Cbrt4,
        Constant::TwoSqrt2,
        Constant::BestUpperThm3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "PI",
            Constant::TwoOverPi => "TWO_OVER_PI",
            Constant::FourOverPiSq => "FOUR_OVER_PI_SQ",
            Constant::OneThird => "ONE_THIRD",
            Constant::Cbrt4 => "CBRT4",
            Constant::TwoSqrt2 => "TWO_SQRT2",
            Constant::BestUpperThm3 => "BEST_UPPER_THM3",
        }
    }

    /// Value at the precision of `like`.
    pub fn eval<T: Real>(self, like: &T) -> T {
        let pi = like.pi();
        match self {
            Constant::Pi => pi,
            Constant::TwoOverPi => like.lift(2.0) / pi,
            Constant::FourOverPiSq => like.lift(4.0) / (pi.clone() * pi),
            Constant::OneThird => like.lift(1.0) / like.lift(3.0),
            Constant::Cbrt4 => like.lift(4.0).powf(&(like.lift(1.0) / like.lift(3.0))),
            Constant::TwoSqrt2 => like.lift(8.0).sqrt(),
            Constant::BestUpperThm3 => (like.lift(0.5) + like.lift(2.0).sqrt()) * pi,
        }
    }
}

impl FromStr for Constant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Constant::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownConstant(s.to_string()))
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn const_hp(name: Constant, digits: u32) -> Result<HpValue> {
    check_digits(digits)?;
    let like = Hp::with_digits(0.0, digits);
    Ok(HpValue {
        digits,
        value: name.eval(&like),
    })
}

/// [`const_hp`] looked up by its identifier, e.g. `"TWO_OVER_PI"`.
pub fn const_hp_by_name(name: &str, digits: u32) -> Result<HpValue> {
    const_hp(name.parse()?, digits)
}

/// Distance between `approx` and `exact` in units of the last place of `exact`.
pub fn ulp_distance(approx: f64, exact: &Hp) -> f64 {
    let nearest = exact.to_f64();
    let ulp = if nearest == 0.0 {
        f64::MIN_POSITIVE * f64::EPSILON
    } else {
        (nearest.abs().next_up() - nearest.abs()).abs()
    };
    let diff = Hp::with_bits(approx, exact.bits()) - exact.clone();
    diff.to_f64().abs() / ulp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close_rel(a: &Hp, b: &Hp, rel: f64) -> bool {
        let diff = (a.clone() - b.clone()).abs().to_f64();
        diff <= rel * b.abs().to_f64().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn acos_zero_is_half_pi() {
        let v = arccos_hp_f64(0.0, 50).unwrap();
        let half_pi = Hp::pi_with_bits(v.value.bits()) / v.value.lift(2.0);
        assert!(close_rel(&v.value, &half_pi, 1e-49));
        assert!(v.to_string().starts_with("1.570796326794896619231321691639751442098584699687"));
    }

    #[test]
    fn acos_one_is_zero() {
        let v = arccos_hp_f64(1.0, 50).unwrap();
        assert_eq!(v.to_f64(), 0.0);
        let v = arccos_hp_f64(-1.0, 50).unwrap();
        assert_eq!(v.to_f64(), std::f64::consts::PI);
    }

    #[test]
    fn acos_near_one_matches_series() {
        // acos(1 - t) = sqrt(2t) (1 + t/12 + 3t^2/160 + ...), t = 1e-20.
        let x = Hp::parse("0.99999999999999999999", 60).unwrap();
        let v = arccos_hp(&x, 50).unwrap();
        let t = Hp::parse("1e-20", 60).unwrap();
        let series = (t.lift(2.0) * t.clone()).sqrt() * (t.lift(1.0) + t.clone() / t.lift(12.0));
        assert!(close_rel(&v.value, &series, 1e-38));
        assert!((v.to_f64() - 2f64.sqrt() * 1e-10).abs() < 1e-25);
    }

    #[test]
    fn rejects_out_of_domain_and_bad_precision() {
        assert!(matches!(arccos_hp_f64(1.0 + 1e-15, 40), Err(Error::Domain { .. })));
        assert!(matches!(arccos_hp_f64(0.5, 16), Err(Error::Precision { .. })));
        assert!(matches!(arccos_hp_f64(0.5, 201), Err(Error::Precision { .. })));
        assert!(matches!(arccos_stable(-1.5), Err(Error::Domain { .. })));
        assert!(arccos_stable(f64::NAN).is_err());
    }

    #[test]
    fn stable_values() {
        assert_eq!(arccos_stable(0.0).unwrap(), std::f64::consts::FRAC_PI_2);
        assert_eq!(arccos_stable(-1.0).unwrap(), std::f64::consts::PI);
        assert_eq!(arccos_stable(1.0).unwrap(), 0.0);
        let x = 0.99999999;
        let exact = arccos_hp_f64(x, 30).unwrap();
        assert!(ulp_distance(arccos_stable(x).unwrap(), &exact.value) <= 4.0);
    }

    #[test]
    fn constants() {
        let v = const_hp(Constant::TwoOverPi, 20).unwrap();
        assert!(v.to_string().starts_with("0.63661977236758134308"));
        let v = const_hp(Constant::Cbrt4, 20).unwrap();
        assert!(v.to_string().starts_with("1.5874010519681994748"));
        let v = const_hp_by_name("BEST_UPPER_THM3", 20).unwrap();
        assert!(v.to_string().starts_with("6.0136792649532628662"), "{v}");
        let v = const_hp(Constant::FourOverPiSq, 20).unwrap();
        assert!((v.to_f64() - 4.0 / (std::f64::consts::PI * std::f64::consts::PI)).abs() < 1e-16);
        assert!(matches!(
            const_hp_by_name("E", 20),
            Err(Error::UnknownConstant(_))
        ));
    }

    #[test]
    fn reflection_identity() {
        for &x in &[0.1, 0.5, 0.999, 1.0 - 1e-12] {
            let a = arccos_hp_f64(x, 40).unwrap().value;
            let b = arccos_hp_f64(-x, 40).unwrap().value;
            let pi = a.pi();
            assert!(close_rel(&(a + b), &pi, 1e-38));
        }
    }
}
