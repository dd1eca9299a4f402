//! Monotonicity classification of `f(x) = (1+x)^b (1-x)^(-a) acos x` on `(0, 1)`.
//!
//! Three independent routes are provided:
//!
//! * [`classify_symbolic`] evaluates the closed-form parameter conditions in a
//!   fixed order (decreasing, increasing, unique max, unique min, max-then-min)
//!   and returns the first match. The increasing condition is read as the
//!   union of its three displayed sets.
//! * [`classify_numeric`] rebuilds the class from signs: `g'` is strictly
//!   increasing from `a-b-4/pi^2` to `a-b-1/3`, so `g` is monotone or has a
//!   single interior minimum, and the endpoint values `a+b-2/pi`, `2a-1`
//!   together with that minimum fix the number of sign changes of `f'`.
//! * [`classify_behavioral`] scans `f` itself and reads the sign pattern of
//!   consecutive differences.
//!
//! [`extrema_points`] computes the critical points of the envelope, which give
//! coefficient bounds for `acos`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{self, envelope_value, g_value, Params};
use crate::oracle::DEFAULT_DIGITS;
use crate::scalar::{Hp, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RegionClass {
    StrictlyDecreasing,
    StrictlyIncreasing,
    UniqueMax,
    UniqueMin,
    MaxThenMin,
    Indeterminate,
}

impl RegionClass {
    pub const DETERMINATE: [RegionClass; 5] = [
        RegionClass::StrictlyDecreasing,
        RegionClass::StrictlyIncreasing,
        RegionClass::UniqueMax,
        RegionClass::UniqueMin,
        RegionClass::MaxThenMin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegionClass::StrictlyDecreasing => "StrictlyDecreasing",
            RegionClass::StrictlyIncreasing => "StrictlyIncreasing",
            RegionClass::UniqueMax => "UniqueMax",
            RegionClass::UniqueMin => "UniqueMin",
            RegionClass::MaxThenMin => "MaxThenMin",
            RegionClass::Indeterminate => "Indeterminate",
        }
    }

    /// Signs of consecutive differences of `f` that witness the class.
    pub fn pattern(self) -> &'static [Sign] {
        use Sign::*;
        match self {
            RegionClass::StrictlyDecreasing => &[Neg],
            RegionClass::StrictlyIncreasing => &[Pos],
            RegionClass::UniqueMax => &[Pos, Neg],
            RegionClass::UniqueMin => &[Neg, Pos],
            RegionClass::MaxThenMin => &[Pos, Neg, Pos],
            RegionClass::Indeterminate => &[],
        }
    }

    fn from_pattern(runs: &[Sign]) -> Option<RegionClass> {
        RegionClass::DETERMINATE
            .into_iter()
            .find(|c| c.pattern() == runs)
    }
}

impl fmt::Display for RegionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RegionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RegionClass::DETERMINATE
            .into_iter()
            .chain([RegionClass::Indeterminate])
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "unknown region class".into(),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(v: f64) -> Sign {
        if v > 0.0 {
            Sign::Pos
        } else if v < 0.0 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    fn of_real<T: Real>(v: &T) -> Sign {
        let zero = v.lift(0.0);
        if *v > zero {
            Sign::Pos
        } else if *v < zero {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }
}

/// `2 (a-b)^(3/2) / sqrt(4(a-b) - 1)`, defined for `a - b > 1/4`.
fn split_bound<T: Real>(c: &T) -> Option<T> {
    let rad = c.lift(4.0) * c.clone() - c.lift(1.0);
    (rad > c.lift(0.0)).then(|| c.lift(2.0) * c.clone() * c.sqrt() / rad.sqrt())
}

/// Closed-form classification. Overlapping boundaries resolve to the earliest
/// class in the order decreasing, increasing, max, min, max-then-min; points
/// covered by none of the conditions are [`RegionClass::Indeterminate`].
pub fn classify_symbolic<T: Real>(p: &Params<T>) -> RegionClass {
    let (a, b) = (p.a.clone(), p.b.clone());
    let pi = a.pi();
    let two_over_pi = a.lift(2.0) / pi.clone();
    let four_over_pi_sq = a.lift(4.0) / (pi.clone() * pi);
    let third = a.lift(1.0) / a.lift(3.0);
    let half = a.lift(0.5);
    let s = p.sum();
    let c = p.diff();

    if b <= two_over_pi.clone() - a.clone() && a <= half {
        return RegionClass::StrictlyDecreasing;
    }

    let middle = third < c && c < four_over_pi_sq;
    let bound = split_bound(&c);
    let above_bound = bound.as_ref().is_some_and(|m| s >= *m);
    let below_bound = bound.as_ref().is_some_and(|m| s < *m);

    let increasing = (two_over_pi.clone() - a.clone() <= b && b <= a.clone() - four_over_pi_sq)
        || (half <= a && a <= b.clone() + third)
        || (middle && above_bound);
    if increasing {
        return RegionClass::StrictlyIncreasing;
    }
    if middle && two_over_pi.clone() - b.clone() < a && a <= half {
        return RegionClass::UniqueMax;
    }
    if middle && half < a && a <= two_over_pi.clone() - b {
        return RegionClass::UniqueMin;
    }
    if middle && two_over_pi < s && below_bound && a > half {
        return RegionClass::MaxThenMin;
    }
    RegionClass::Indeterminate
}

/// Magnitude at 40 digits below which a sign is treated as an exact zero.
const ZERO_FLOOR: f64 = 1e-30;

/// Sign of a quantity computed in double, escalated to high precision when its
/// magnitude is below `tol`.
fn resolve(v: f64, tol: f64, hp: impl FnOnce() -> Hp) -> Sign {
    if v.abs() >= tol {
        return Sign::of(v);
    }
    let precise = hp();
    if precise.abs().to_f64() <= ZERO_FLOOR {
        Sign::Zero
    } else {
        Sign::of_real(&precise)
    }
}

/// Sign-based classification following the structure of `g`.
///
/// Exact zeros at the endpoints (e.g. `a = 1/2`) follow the non-strict
/// reading: a strictly monotone `g` that vanishes only at an endpoint keeps a
/// constant sign inside. An interior minimum of `g` that cannot be separated
/// from zero at 40 digits yields [`RegionClass::Indeterminate`].
pub fn classify_numeric(p: &Params<f64>, tol: f64) -> RegionClass {
    if !p.is_finite() {
        return RegionClass::Indeterminate;
    }
    let hp = || p.to_hp(DEFAULT_DIGITS);
    let c = p.a - p.b;
    let d0 = resolve(c - 4.0 / (PI * PI), tol, || family::g_prime_limit_at_0(&hp()));
    let d1 = resolve(c - 1.0 / 3.0, tol, || family::g_prime_limit_at_1(&hp()));
    let s0 = resolve(p.a + p.b - 2.0 / PI, tol, || {
        let q = hp();
        let two_over_pi = q.a.lift(2.0) / q.a.pi();
        q.sum() - two_over_pi
    });
    let s1 = resolve(2.0 * p.a - 1.0, tol, || family::g_limit_at_1(&hp()));

    use RegionClass::*;
    use Sign::*;
    if d0 != Neg {
        // g increasing
        return if s0 != Neg {
            StrictlyIncreasing
        } else if s1 != Pos {
            StrictlyDecreasing
        } else {
            UniqueMin
        };
    }
    if d1 != Pos {
        // g decreasing
        return if s0 != Pos {
            StrictlyDecreasing
        } else if s1 != Neg {
            StrictlyIncreasing
        } else {
            UniqueMax
        };
    }

    let Some(x0) = locate_g_prime_root(p, None) else {
        return Indeterminate;
    };
    let g_min = match g_value(p, &x0) {
        Ok(v) => resolve(v, tol, || {
            let q = hp();
            let x = Hp::with_digits(x0, DEFAULT_DIGITS);
            g_value(&q, &x).unwrap_or_else(|_| x.lift(0.0))
        }),
        Err(_) => return Indeterminate,
    };
    match g_min {
        Zero => Indeterminate,
        Pos => StrictlyIncreasing,
        Neg => match (s0 == Pos, s1 == Pos) {
            (true, true) => MaxThenMin,
            (true, false) => UniqueMax,
            (false, true) => UniqueMin,
            (false, false) => StrictlyDecreasing,
        },
    }
}

/// Bisection for the zero of the strictly increasing `g'` on `(0, 1)`.
///
/// Stops when the bracket is narrower than `tol`, or at double resolution
/// when `tol` is `None`.
fn locate_g_prime_root(p: &Params<f64>, tol: Option<f64>) -> Option<f64> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    loop {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi || tol.is_some_and(|t| hi - lo <= t) {
            return Some(mid);
        }
        let v = family::g_prime_eval(p, family::EvalPoint::double(mid)).ok()?;
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// The unique zero of `g'` in `(0, 1)` to absolute tolerance `tol`, present
/// exactly when the endpoint limits `a-b-4/pi^2 < 0 < a-b-1/3` bracket zero.
pub fn critical_point_g(p: &Params<f64>, tol: f64) -> Option<f64> {
    let c = p.a - p.b;
    let bracketed = c - 4.0 / (PI * PI) < 0.0 && c - 1.0 / 3.0 > 0.0;
    if !bracketed || !(tol > 0.0) {
        return None;
    }
    locate_g_prime_root(p, Some(tol))
}

/// Discriminants and critical points of the envelope
/// `(1+x)^(b+1/2) (1-x)^(1/2-a) / (a+b+(a-b)x)`.
///
/// The envelope's derivative has the sign of the quadratic
/// `(a-b)^2 x^2 + (a+b)(2a-2b-1) x + (a+b)^2 - a + b`; `x1` is its local
/// maximum and `x2` its local minimum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremaReport {
    /// `16ab(b-a) + (a+b)^2`
    pub disc_closed: f64,
    /// Discriminant formed from the quadratic's coefficients.
    pub disc_quadratic: f64,
    pub x1: Option<f64>,
    pub x2: Option<f64>,
    pub max_coeff: Option<f64>,
    pub min_coeff: Option<f64>,
}

/// Generic form of [`ExtremaReport`].
#[derive(Clone, Debug)]
pub struct Extrema<T> {
    pub disc_closed: T,
    pub disc_quadratic: T,
    pub x1: Option<T>,
    pub x2: Option<T>,
    pub max_coeff: Option<T>,
    pub min_coeff: Option<T>,
}

pub fn discriminants<T: Real>(p: &Params<T>) -> (T, T) {
    let (a, b) = (p.a.clone(), p.b.clone());
    let s = p.sum();
    let c = p.diff();
    let closed = a.lift(16.0) * a * b.clone() * (b - p.a.clone()) + s.clone() * s.clone();
    let qa = c.clone() * c.clone();
    let qb = s.clone() * (c.lift(2.0) * c.clone() - c.lift(1.0));
    let qc = s.clone() * s - c.clone();
    let quadratic = qb.clone() * qb - c.lift(4.0) * qa * qc;
    (closed, quadratic)
}

/// Snaps roots lying within a few ulp of 0 or 1 onto the endpoint; the
/// quadratic has an exact root at 1 whenever `a = 1/2`.
fn snap<T: Real>(x: T) -> T {
    let band = x.lift(8.0 * x.resolution());
    for end in [x.lift(0.0), x.lift(1.0)] {
        if (x.clone() - end.clone()).abs() <= band {
            return end;
        }
    }
    x
}

fn coefficient_at<T: Real>(p: &Params<T>, x: &Option<T>) -> Option<T> {
    let x = x.as_ref()?;
    envelope_value(p, x).ok().filter(|v| v.is_finite())
}

pub fn extrema<T: Real>(p: &Params<T>) -> Result<Extrema<T>> {
    let (disc_closed, disc_quadratic) = discriminants(p);
    let s = p.sum();
    let c = p.diff();
    let zero = c.lift(0.0);

    let (x1, x2) = if c == zero {
        // Linear case: the quadratic reduces to s (s - x).
        if s == zero {
            return Err(Error::DegenerateParams);
        }
        if s > zero {
            (Some(snap(s)), None)
        } else {
            (None, Some(snap(s)))
        }
    } else if disc_closed > zero {
        let root = disc_closed.sqrt();
        let base = s * (c.lift(1.0) - c.lift(2.0) * c.clone());
        let den = c.lift(2.0) * c.clone() * c;
        (
            Some(snap((base.clone() - root.clone()) / den.clone())),
            Some(snap((base + root) / den)),
        )
    } else {
        (None, None)
    };

    let inside = |x: &Option<T>| {
        x.clone()
            .filter(|v| *v > v.lift(0.0) && *v < v.lift(1.0))
    };
    let max_coeff = coefficient_at(p, &inside(&x1));
    let min_coeff = coefficient_at(p, &inside(&x2));
    Ok(Extrema {
        disc_closed,
        disc_quadratic,
        x1,
        x2,
        max_coeff,
        min_coeff,
    })
}

/// Double-precision report, computed at [`DEFAULT_DIGITS`] and rounded to
/// nearest. The closed-form roots cancel badly in double near `x = 1`.
pub fn extrema_points(p: &Params<f64>) -> Result<ExtremaReport> {
    let e = extrema(&p.to_hp(DEFAULT_DIGITS))?;
    let f = |v: Option<Hp>| v.map(|v| v.to_f64());
    Ok(ExtremaReport {
        disc_closed: e.disc_closed.to_f64(),
        disc_quadratic: e.disc_quadratic.to_f64(),
        x1: f(e.x1),
        x2: f(e.x2),
        max_coeff: f(e.max_coeff),
        min_coeff: f(e.min_coeff),
    })
}

/// Necessary condition for `f` to be strictly increasing:
/// `b >= 2/pi - a` and `a >= 1/2`.
pub fn necessary_increasing<T: Real>(p: &Params<T>) -> bool {
    let two_over_pi = p.a.lift(2.0) / p.a.pi();
    p.b >= two_over_pi - p.a.clone() && p.a >= p.a.lift(0.5)
}

fn in_middle_band(c: f64) -> bool {
    1.0 / 3.0 < c && c < 4.0 / (PI * PI)
}

/// Parameter condition for a unique interior maximum:
/// `1/3 < a-b < 4/pi^2` and `2/pi - b < a <= 1/2`.
pub fn condition_unique_max(p: &Params<f64>) -> bool {
    in_middle_band(p.a - p.b) && 2.0 / PI - p.b < p.a && p.a <= 0.5
}

/// Parameter condition for a unique interior minimum:
/// `1/3 < a-b < 4/pi^2` and `1/2 < a <= 2/pi - b`.
pub fn condition_unique_min(p: &Params<f64>) -> bool {
    in_middle_band(p.a - p.b) && 0.5 < p.a && p.a <= 2.0 / PI - p.b
}

/// Smallest distance from `p` to one of the curves that delimit the closed-form
/// conditions.
pub fn distance_to_boundary(p: &Params<f64>) -> f64 {
    let s = p.a + p.b;
    let c = p.a - p.b;
    let mut d = [
        (s - 2.0 / PI).abs(),
        (p.a - 0.5).abs(),
        (c - 4.0 / (PI * PI)).abs(),
        (c - 1.0 / 3.0).abs(),
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min);
    if let Some(m) = split_bound(&c) {
        d = d.min((s - m).abs());
    }
    d
}

/// Result of scanning `f` on a grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BehaviorScan {
    /// Run-length compressed signs of consecutive differences.
    pub runs: Vec<Sign>,
    pub class: Option<RegionClass>,
    /// Grid points where the runs change sign.
    pub turning_points: Vec<f64>,
    /// Smallest `|f(x_{i+1}) - f(x_i)| / max(|f|)` seen, in double.
    pub weakest_step: f64,
}

/// Scan grid clustered at both endpoints: `x_i = sin^2(pi i / (2(n+1)))`.
pub fn scan_grid(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|i| {
            let t = (PI * i as f64 / (2.0 * (n + 1) as f64)).sin();
            t * t
        })
        .collect()
}

/// Relative size below which a double difference is re-checked at 40 digits.
const DIFF_RESOLUTION: f64 = 1e-9;
/// Points this close to 1 are always compared at 40 digits.
const NEAR_ONE: f64 = 1e-3;

/// Behavioral classification from the sign pattern of `f(x_{i+1}) - f(x_i)`
/// on [`scan_grid`]. Differences near `x = 1`, or too small to trust in
/// double precision, are recomputed at 40 digits.
pub fn classify_behavioral(p: &Params<f64>, n: usize) -> Result<BehaviorScan> {
    let grid = scan_grid(n);
    let hp_params = p.to_hp(DEFAULT_DIGITS);
    let hp_f = |x: f64| family::f_value(&hp_params, &Hp::with_digits(x, DEFAULT_DIGITS));
    let values: Vec<f64> = grid
        .iter()
        .map(|&x| family::f_value(p, &x))
        .collect::<Result<_>>()?;

    let mut runs: Vec<Sign> = Vec::new();
    let mut turning_points = Vec::new();
    let mut weakest_step = f64::INFINITY;
    for i in 0..grid.len().saturating_sub(1) {
        let (fa, fb) = (values[i], values[i + 1]);
        let diff = fb - fa;
        let scale = fa.abs().max(fb.abs());
        if scale > 0.0 && diff.is_finite() {
            weakest_step = weakest_step.min(diff.abs() / scale);
        }
        let trust_double = 1.0 - grid[i + 1] >= NEAR_ONE
            && diff.is_finite()
            && diff.abs() > DIFF_RESOLUTION * scale;
        let sign = if trust_double {
            Sign::of(diff)
        } else {
            let d = hp_f(grid[i + 1])? - hp_f(grid[i])?;
            Sign::of_real(&d)
        };
        if sign == Sign::Zero {
            continue;
        }
        if runs.last() != Some(&sign) {
            if !runs.is_empty() {
                turning_points.push(grid[i]);
            }
            runs.push(sign);
        }
    }
    let class = RegionClass::from_pattern(&runs);
    Ok(BehaviorScan {
        runs,
        class,
        turning_points,
        weakest_step,
    })
}
