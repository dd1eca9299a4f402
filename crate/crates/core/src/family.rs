//! Evaluators for the generalized family `f(x) = (1+x)^b (1-x)^(-a) acos x`
//! and every auxiliary function used to analyse it: the sign factor `g` of
//! `f'`, its derivative, the proof-chain functions `h`, `q`, `g''`, the
//! critical-value envelope, and the radical ratio `F` with its factor `G`.
//!
//! Each function has a generic form over [`Real`] (`*_value`) and a
//! point-based form (`*_eval`) that selects double or high precision from an
//! [`EvalPoint`]. Double-precision requests within [`PROMOTION_BAND`] of an
//! endpoint are evaluated at [`DEFAULT_DIGITS`] and rounded back.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::oracle::{check_digits, DEFAULT_DIGITS};
use crate::scalar::{Hp, Real};

/// Distance from 0 or 1 inside which double requests are promoted.
pub const PROMOTION_BAND: f64 = 1e-8;

/// Parameter pair `(a, b)` of the family. Any finite reals are allowed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Params<T> {
    pub a: T,
    pub b: T,
}

impl<T: Real> Params<T> {
    pub fn new(a: T, b: T) -> Self {
        Params { a, b }
    }

    pub fn sum(&self) -> T {
        self.a.clone() + self.b.clone()
    }

    pub fn diff(&self) -> T {
        self.a.clone() - self.b.clone()
    }
}

impl Params<f64> {
    /// The same pair at the precision of `like`.
    pub fn lift<U: Real>(&self, like: &U) -> Params<U> {
        Params {
            a: like.lift(self.a),
            b: like.lift(self.b),
        }
    }

    pub fn to_hp(&self, digits: u32) -> Params<Hp> {
        self.lift(&Hp::with_digits(0.0, digits))
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    Hp(u32),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalPoint {
    pub x: f64,
    pub precision: Precision,
}

impl EvalPoint {
    pub fn double(x: f64) -> Self {
        EvalPoint {
            x,
            precision: Precision::Double,
        }
    }

    pub fn hp(x: f64, digits: u32) -> Self {
        EvalPoint {
            x,
            precision: Precision::Hp(digits),
        }
    }

    /// Digits to evaluate at, or `None` for plain double arithmetic.
    fn working_digits(&self) -> Result<Option<u32>> {
        match self.precision {
            Precision::Hp(d) => check_digits(d).map(|_| Some(d)),
            Precision::Double => {
                let near_end = self.x.abs() < PROMOTION_BAND || (1.0 - self.x).abs() < PROMOTION_BAND;
                Ok(near_end.then_some(DEFAULT_DIGITS))
            }
        }
    }
}

/// Runs a generic evaluation at the precision an [`EvalPoint`] asks for.
macro_rules! at_point {
    ($pt:expr, |$x:ident| $body:expr) => {{
        let pt: EvalPoint = $pt;
        match pt.working_digits()? {
            None => {
                let $x = pt.x;
                $body
            }
            Some(d) => {
                let $x = Hp::with_digits(pt.x, d);
                ($body).map(|v: Hp| v.to_f64())
            }
        }
    }};
}

fn open_unit<T: Real>(x: &T) -> Result<()> {
    if *x > x.lift(0.0) && *x < x.lift(1.0) {
        Ok(())
    } else {
        Err(domain(x.to_f64(), "(0, 1)"))
    }
}

fn half_open_unit<T: Real>(x: &T) -> Result<()> {
    if *x >= x.lift(0.0) && *x < x.lift(1.0) {
        Ok(())
    } else {
        Err(domain(x.to_f64(), "[0, 1)"))
    }
}

fn is_zero<T: Real>(x: &T) -> bool {
    *x == x.lift(0.0)
}

/// `sqrt(1 - x^2)` formed as `sqrt((1-x)(1+x))`.
fn co_sqrt<T: Real>(x: &T) -> T {
    let one = x.lift(1.0);
    ((one.clone() - x.clone()) * (one + x.clone())).sqrt()
}

/// `(1+x)^b (1-x)^(-a) acos x` on `(0, 1)`.
pub fn f_value<T: Real>(p: &Params<T>, x: &T) -> Result<T> {
    open_unit(x)?;
    let log_part = p.b.clone() * x.ln_1p() - p.a.clone() * (-x.clone()).ln_1p();
    Ok(log_part.exp() * x.acos())
}

pub fn f_eval(p: &Params<f64>, pt: EvalPoint) -> Result<f64> {
    at_point!(pt, |x| f_value(&p.lift(&x), &x))
}

/// `lim_{x->0+} f = pi/2` for every parameter pair.
pub fn f_limit_at_0<T: Real>(like: &T) -> T {
    like.pi() / like.lift(2.0)
}

/// Behaviour of a family member as `x -> 1-`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum EndpointLimit {
    Finite(f64),
    Zero,
    Infinity,
}

/// `2^(b+1/2)` when `a = 1/2`, zero below, infinite above.
pub fn f_limit_at_1(p: &Params<f64>) -> EndpointLimit {
    if p.a < 0.5 {
        EndpointLimit::Zero
    } else if p.a > 0.5 {
        EndpointLimit::Infinity
    } else {
        EndpointLimit::Finite(2f64.powf(p.b + 0.5))
    }
}

/// Sign factor of `f'`: `a + b + (a-b)x - sqrt(1-x^2)/acos x` on `[0, 1)`.
///
/// At `x = 0` the closed form `a + b - 2/pi` is returned.
pub fn g_value<T: Real>(p: &Params<T>, x: &T) -> Result<T> {
    half_open_unit(x)?;
    if is_zero(x) {
        return Ok(p.sum() - x.lift(2.0) / x.pi());
    }
    Ok(p.sum() + p.diff() * x.clone() - co_sqrt(x) / x.acos())
}

pub fn g_eval(p: &Params<f64>, pt: EvalPoint) -> Result<f64> {
    at_point!(pt, |x| g_value(&p.lift(&x), &x))
}

/// `lim_{x->1-} g = 2a - 1`.
pub fn g_limit_at_1<T: Real>(p: &Params<T>) -> T {
    p.a.lift(2.0) * p.a.clone() - p.a.lift(1.0)
}

/// `g'(x) = a - b - 1/acos^2 x + x/(sqrt(1-x^2) acos x)`; `a - b - 4/pi^2` at 0.
pub fn g_prime_value<T: Real>(p: &Params<T>, x: &T) -> Result<T> {
    half_open_unit(x)?;
    if is_zero(x) {
        return Ok(g_prime_limit_at_0(p));
    }
    let ac = x.acos();
    let one = x.lift(1.0);
    Ok(p.diff() - one / (ac.clone() * ac.clone()) + x.clone() / (co_sqrt(x) * ac))
}

pub fn g_prime_eval(p: &Params<f64>, pt: EvalPoint) -> Result<f64> {
    at_point!(pt, |x| g_prime_value(&p.lift(&x), &x))
}

pub fn g_prime_limit_at_0<T: Real>(p: &Params<T>) -> T {
    let pi = p.a.pi();
    p.diff() - p.a.lift(4.0) / (pi.clone() * pi)
}

/// `lim_{x->1-} g' = a - b - 1/3`.
pub fn g_prime_limit_at_1<T: Real>(p: &Params<T>) -> T {
    p.diff() - p.a.lift(1.0) / p.a.lift(3.0)
}

/// Parameter-free functions of the monotonicity argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chain {
    /// `acos^2 x + x sqrt(1-x^2) acos x + 2x^2 - 2`
    H,
    /// `3x sqrt(1-x^2)/(1+2x^2) - acos x`
    Q,
    /// `h(x) / ((1-x^2)^(3/2) acos^3 x)`, the second derivative of `g`.
    /// It does not depend on `(a, b)`.
    GSecond,
    /// `acos x - (sqrt(1+x) + 2 sqrt 2) sqrt(1-x) / (1 + sqrt(2(1+x)))`
    BigG,
}

impl FromStr for Chain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "h" => Ok(Chain::H),
            "q" => Ok(Chain::Q),
            "g_second" => Ok(Chain::GSecond),
            "big_g" => Ok(Chain::BigG),
            other => Err(Error::UnknownSelector(other.to_string())),
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chain::H => "h",
            Chain::Q => "q",
            Chain::GSecond => "g_second",
            Chain::BigG => "big_g",
        })
    }
}

pub fn chain_value<T: Real>(which: Chain, x: &T) -> Result<T> {
    half_open_unit(x)?;
    let one = x.lift(1.0);
    let two = x.lift(2.0);
    let ac = x.acos();
    let s = co_sqrt(x);
    let x2 = x.clone() * x.clone();
    let h = |ac: &T, s: &T| {
        ac.clone() * ac.clone() + x.clone() * s.clone() * ac.clone() + two.clone() * x2.clone() - two.clone()
    };
    Ok(match which {
        Chain::H => h(&ac, &s),
        Chain::Q => x.lift(3.0) * x.clone() * s / (one + two * x2.clone()) - ac,
        Chain::GSecond => {
            let num = h(&ac, &s);
            let s3 = s.clone() * s.clone() * s;
            let ac3 = ac.clone() * ac.clone() * ac;
            num / (s3 * ac3)
        }
        Chain::BigG => {
            let up = one.clone() + x.clone();
            let num = (up.sqrt() + x.lift(8.0).sqrt()) * (one.clone() - x.clone()).sqrt();
            ac - num / (one + (two * up).sqrt())
        }
    })
}

/// Chain evaluation; the parameters are accepted for interface symmetry but
/// none of the selected functions depends on them.
pub fn chain_eval(which: Chain, _p: Option<&Params<f64>>, pt: EvalPoint) -> Result<f64> {
    at_point!(pt, |x| chain_value(which, &x))
}

/// Critical value of `f` as a function of the critical point:
/// `(1+x)^(b+1/2) (1-x)^(1/2-a) / (a + b + (a-b)x)`.
pub fn envelope_value<T: Real>(p: &Params<T>, x: &T) -> Result<T> {
    open_unit(x)?;
    let den = p.sum() + p.diff() * x.clone();
    if is_zero(&den) {
        return Err(Error::Pole { x: x.to_f64() });
    }
    let half = x.lift(0.5);
    let log_part = (p.b.clone() + half.clone()) * x.ln_1p() + (half - p.a.clone()) * (-x.clone()).ln_1p();
    Ok(log_part.exp() / den)
}

pub fn envelope_eval(p: &Params<f64>, pt: EvalPoint) -> Result<f64> {
    at_point!(pt, |x| envelope_value(&p.lift(&x), &x))
}

/// `lim_{x->0+}` of the envelope, `1/(a+b)`.
pub fn envelope_limit_at_0<T: Real>(p: &Params<T>) -> T {
    p.a.lift(1.0) / p.sum()
}

/// Lower bound `a + b - 2(a-b)^(3/2)/sqrt(4(a-b)-1)` on the minimum of `g`
/// when `1/3 < a - b < 4/pi^2`. Requires `a - b > 1/4`.
pub fn g_min_lower_bound<T: Real>(p: &Params<T>) -> Result<T> {
    let c = p.diff();
    let rad = p.a.lift(4.0) * c.clone() - p.a.lift(1.0);
    if rad <= p.a.lift(0.0) {
        return Err(domain(c.to_f64(), "a - b > 1/4"));
    }
    let c32 = c.clone() * c.sqrt();
    Ok(p.sum() - p.a.lift(2.0) * c32 / rad.sqrt())
}

/// `(2 sqrt 2 + sqrt(1+x)) acos x / sqrt(1-x)` on `(0, 1)`.
pub fn big_f_value<T: Real>(x: &T) -> Result<T> {
    open_unit(x)?;
    let one = x.lift(1.0);
    let num = x.lift(8.0).sqrt() + (one.clone() + x.clone()).sqrt();
    Ok(num * x.acos() / (one - x.clone()).sqrt())
}

pub fn big_f_eval(pt: EvalPoint) -> Result<f64> {
    at_point!(pt, |x| big_f_value(&x))
}

/// `lim_{x->0+} F = (1/2 + sqrt 2) pi`.
pub fn big_f_limit_at_0<T: Real>(like: &T) -> T {
    (like.lift(0.5) + like.lift(2.0).sqrt()) * like.pi()
}

/// `lim_{x->1-} F = 6`.
pub fn big_f_limit_at_1<T: Real>(like: &T) -> T {
    like.lift(6.0)
}
