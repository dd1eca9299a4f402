//! Two-sided bounds for `acos` from the generalized Carlson family, an
//! envelope combiner over several families, and a midpoint approximation
//! with a certified radius.
//!
//! Double-precision bounds are widened outward by [`WIDEN_ULPS`] relative ulps
//! after evaluation, which dominates the accumulated rounding error of the
//! handful of `sqrt`/`ln_1p`/`exp` calls each expression needs.

use std::f64::consts::PI;
use std::fmt;
use std::io;
use std::str::FromStr;

use serde::Serialize;

use crate::classifier::{self, RegionClass};
use crate::error::{domain, Error, Result};
use crate::family::Params;
use crate::oracle::{arccos_hp_f64, DEFAULT_DIGITS};
use crate::scalar::{Hp, Real};

/// Relative widening, in units of `f64::EPSILON`, applied to double bounds.
pub const WIDEN_ULPS: f64 = 32.0;

/// Exponent `b` of the power families. The two sharp thresholds are kept
/// symbolic so high-precision evaluation does not inherit their double
/// rounding.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    OneSixth,
    TwoOverPiMinusHalf,
    Value(f64),
}

impl Exponent {
    pub fn value<T: Real>(&self, like: &T) -> T {
        match *self {
            Exponent::OneSixth => like.lift(1.0) / like.lift(6.0),
            Exponent::TwoOverPiMinusHalf => like.lift(2.0) / like.pi() - like.lift(0.5),
            Exponent::Value(v) => like.lift(v),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.value(&0.0f64)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::OneSixth => f.write_str("1/6"),
            Exponent::TwoOverPiMinusHalf => f.write_str("2/pi-1/2"),
            Exponent::Value(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "1/6" => Ok(Exponent::OneSixth),
            "2/pi-1/2" => Ok(Exponent::TwoOverPiMinusHalf),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(Exponent::Value)
                .ok_or_else(|| Error::Parse {
                    input: s.to_string(),
                    reason: "expected a finite number, `1/6` or `2/pi-1/2`".into(),
                }),
        }
    }
}

/// A double inequality (or one side of one) for `acos` on `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundFamily {
    /// `6 sqrt(1-x) / (2 sqrt 2 + sqrt(1+x)) < acos x < 4^(1/3) sqrt(1-x) / (1+x)^(1/6)`
    Carlson,
    /// `pi/2 w(x) < acos x < 2^(b+1/2) w(x)` with `w = sqrt(1-x)/(1+x)^b`, for `b >= 1/6`.
    Thm2(Exponent),
    /// `2^(b+1/2) w(x) < acos x < pi/2 w(x)`, for `b <= 2/pi - 1/2`.
    Thm2Reversed(Exponent),
    /// `6 r(x) < acos x < (1/2 + sqrt 2) pi r(x)` with `r = sqrt(1-x)/(2 sqrt 2 + sqrt(1+x))`.
    Thm3,
    /// Upper bound `M (1-x)^a / (1+x)^b`, `M` the envelope value at `x1`.
    Thm2MaxCoef(Params<f64>),
    /// Lower bound `m (1-x)^a / (1+x)^b`, `m` the envelope value at `x2`.
    Thm2MinCoef(Params<f64>),
}

impl BoundFamily {
    pub fn id(&self) -> String {
        self.to_string()
    }

    /// The four concrete double inequalities combined by default.
    pub fn defaults() -> Vec<BoundFamily> {
        vec![
            BoundFamily::Carlson,
            BoundFamily::Thm2(Exponent::OneSixth),
            BoundFamily::Thm2Reversed(Exponent::TwoOverPiMinusHalf),
            BoundFamily::Thm3,
        ]
    }

    /// Checks the parameter condition under which the family is a valid
    /// inequality. Exponent thresholds are compared at 40 digits.
    pub fn validate(&self) -> Result<()> {
        let invalid = |reason: &str| Error::InvalidFamily {
            family: self.id(),
            reason: reason.to_string(),
        };
        let like = Hp::with_digits(0.0, DEFAULT_DIGITS);
        match self {
            BoundFamily::Carlson | BoundFamily::Thm3 => Ok(()),
            BoundFamily::Thm2(b) => {
                if b.value(&like) >= Exponent::OneSixth.value(&like) {
                    Ok(())
                } else {
                    Err(invalid("requires b >= 1/6"))
                }
            }
            BoundFamily::Thm2Reversed(b) => {
                if b.value(&like) <= Exponent::TwoOverPiMinusHalf.value(&like) {
                    Ok(())
                } else {
                    Err(invalid("requires b <= 2/pi - 1/2"))
                }
            }
            BoundFamily::Thm2MaxCoef(p) => {
                if !classifier::condition_unique_max(p) {
                    return Err(invalid("parameters outside the unique-maximum region"));
                }
                let report = classifier::extrema_points(p)?;
                if report.disc_closed > 0.0 && report.max_coeff.is_some() {
                    Ok(())
                } else {
                    Err(invalid("requires a positive discriminant and x1 in (0, 1)"))
                }
            }
            BoundFamily::Thm2MinCoef(p) => {
                if !classifier::condition_unique_min(p) {
                    return Err(invalid("parameters outside the unique-minimum region"));
                }
                let report = classifier::extrema_points(p)?;
                if report.disc_closed > 0.0 && report.min_coeff.is_some() {
                    Ok(())
                } else {
                    Err(invalid("requires a positive discriminant and x2 in (0, 1)"))
                }
            }
        }
    }

    /// Lower and upper expressions at `x`, without validity or domain checks.
    ///
    /// Every expression is continuous on `[0, 1)`, so `x = 0` yields the
    /// closed-form limits (e.g. `pi/2` for the lower power bound).
    pub fn raw<T: Real>(&self, x: &T) -> (Option<T>, Option<T>) {
        let one = x.lift(1.0);
        let root_lo = (one.clone() - x.clone()).sqrt();
        let radical = || root_lo.clone() / (x.lift(8.0).sqrt() + (one.clone() + x.clone()).sqrt());
        let power = |b: &T| root_lo.clone() * x.pow1p(&(-b.clone()));
        let half_pi = || x.pi() / x.lift(2.0);
        let two_pow = |b: &T| x.lift(2.0).powf(&(b.clone() + x.lift(0.5)));
        match self {
            BoundFamily::Carlson => {
                let sixth = x.lift(1.0) / x.lift(6.0);
                let cbrt4 = x.lift(4.0).powf(&(x.lift(1.0) / x.lift(3.0)));
                (
                    Some(x.lift(6.0) * radical()),
                    Some(cbrt4 * power(&sixth)),
                )
            }
            BoundFamily::Thm2(b) => {
                let b = b.value(x);
                let w = power(&b);
                (Some(half_pi() * w.clone()), Some(two_pow(&b) * w))
            }
            BoundFamily::Thm2Reversed(b) => {
                let b = b.value(x);
                let w = power(&b);
                (Some(two_pow(&b) * w.clone()), Some(half_pi() * w))
            }
            BoundFamily::Thm3 => {
                let best = (x.lift(0.5) + x.lift(2.0).sqrt()) * x.pi();
                let r = radical();
                (Some(x.lift(6.0) * r.clone()), Some(best * r))
            }
            BoundFamily::Thm2MaxCoef(p) => {
                let q = p.lift(x);
                let coeff = classifier::extrema(&q).ok().and_then(|e| e.max_coeff);
                (None, coeff.map(|m| m * weight(&q, x)))
            }
            BoundFamily::Thm2MinCoef(p) => {
                let q = p.lift(x);
                let coeff = classifier::extrema(&q).ok().and_then(|e| e.min_coeff);
                (coeff.map(|m| m * weight(&q, x)), None)
            }
        }
    }
}

/// `(1-x)^a / (1+x)^b`
fn weight<T: Real>(p: &Params<T>, x: &T) -> T {
    ((-x.clone()).ln_1p() * p.a.clone() - x.ln_1p() * p.b.clone()).exp()
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundFamily::Carlson => f.write_str("carlson"),
            BoundFamily::Thm2(b) => write!(f, "thm2({b})"),
            BoundFamily::Thm2Reversed(b) => write!(f, "thm2_reversed({b})"),
            BoundFamily::Thm3 => f.write_str("thm3"),
            BoundFamily::Thm2MaxCoef(p) => write!(f, "thm2_maxcoef({},{})", p.a, p.b),
            BoundFamily::Thm2MinCoef(p) => write!(f, "thm2_mincoef({},{})", p.a, p.b),
        }
    }
}

impl FromStr for BoundFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim();
        match s {
            "carlson" => return Ok(BoundFamily::Carlson),
            "thm3" => return Ok(BoundFamily::Thm3),
            _ => {}
        }
        let (name, rest) = s.split_once('(').ok_or_else(|| bad("unknown bound family"))?;
        let args = rest
            .strip_suffix(')')
            .ok_or_else(|| bad("missing closing parenthesis"))?;
        let pair = || -> Result<Params<f64>> {
            let (a, b) = args.split_once(',').ok_or_else(|| bad("expected two arguments"))?;
            let num = |v: &str| v.trim().parse::<f64>().map_err(|_| bad("expected numbers"));
            Ok(Params::new(num(a)?, num(b)?))
        };
        match name {
            "thm2" => Ok(BoundFamily::Thm2(args.parse()?)),
            "thm2_reversed" => Ok(BoundFamily::Thm2Reversed(args.parse()?)),
            "thm2_maxcoef" => Ok(BoundFamily::Thm2MaxCoef(pair()?)),
            "thm2_mincoef" => Ok(BoundFamily::Thm2MinCoef(pair()?)),
            _ => Err(bad("unknown bound family")),
        }
    }
}

/// Parses a comma-separated family list, respecting parentheses.
pub fn parse_family_list(s: &str) -> Result<Vec<BoundFamily>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(s[start..i].parse()?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() {
        out.push(s[start..].parse()?);
    }
    Ok(out)
}

/// One family's certified bounds at a point; either side may be absent.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyBounds {
    pub family: String,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

impl FamilyBounds {
    pub fn width(&self) -> Option<f64> {
        Some(self.upper? - self.lower?)
    }
}

fn widen_down(v: f64) -> f64 {
    (v * (1.0 - WIDEN_ULPS * f64::EPSILON)).next_down()
}

fn widen_up(v: f64) -> f64 {
    (v * (1.0 + WIDEN_ULPS * f64::EPSILON)).next_up()
}

fn certified(fam: &BoundFamily, x: f64) -> FamilyBounds {
    let (lower, upper) = match fam {
        // The coefficient is a stationary value; take it from 40 digits and
        // round it outward before the double weight is applied.
        BoundFamily::Thm2MaxCoef(p) | BoundFamily::Thm2MinCoef(p) => {
            let like = Hp::with_digits(0.0, DEFAULT_DIGITS);
            let e = classifier::extrema(&p.lift(&like)).ok();
            let w = weight(p, &x);
            match fam {
                BoundFamily::Thm2MaxCoef(_) => {
                    (None, e.and_then(|e| e.max_coeff).map(|m| m.to_f64_up() * w))
                }
                _ => (e.and_then(|e| e.min_coeff).map(|m| m.to_f64_down() * w), None),
            }
        }
        _ => fam.raw(&x),
    };
    FamilyBounds {
        family: fam.id(),
        lower: lower.map(|v| widen_down(v).max(0.0)),
        upper: upper.map(widen_up),
    }
}

/// Certified bounds of a valid family at `x` in `(0, 1)`.
pub fn family_bounds(fam: &BoundFamily, x: f64) -> Result<FamilyBounds> {
    fam.validate()?;
    if !(x > 0.0 && x < 1.0) {
        return Err(domain(x, "(0, 1)"));
    }
    Ok(certified(fam, x))
}

/// Certified enclosure of `acos x` with the family that supplied each side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundInterval {
    pub lower: f64,
    pub upper: f64,
    pub lower_family: String,
    pub upper_family: String,
}

impl BoundInterval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

const TRIVIAL: &str = "trivial";
const ENDPOINT: &str = "endpoint";

fn envelope_on_unit(x: f64, enabled: &[BoundFamily]) -> BoundInterval {
    let mut best = BoundInterval {
        lower: 0.0,
        upper: (PI / 2.0).next_up(),
        lower_family: TRIVIAL.into(),
        upper_family: TRIVIAL.into(),
    };
    for fam in enabled {
        let fb = certified(fam, x);
        if let Some(lo) = fb.lower.filter(|&lo| lo > best.lower) {
            best.lower = lo;
            best.lower_family = fb.family.clone();
        }
        if let Some(up) = fb.upper.filter(|&up| up < best.upper) {
            best.upper = up;
            best.upper_family = fb.family;
        }
    }
    best
}

/// Tightest enclosure of `acos x` over the enabled families, for `x` in
/// `(-1, 1]`. Non-positive `x` is reflected through `acos x = pi - acos(-x)`
/// with `pi` rounded outward by one ulp on each side.
pub fn best_envelope(x: f64, enabled: &[BoundFamily]) -> Result<BoundInterval> {
    if enabled.is_empty() {
        return Err(Error::EmptyFamilies);
    }
    for fam in enabled {
        fam.validate()?;
    }
    if !(x > -1.0 && x <= 1.0) {
        return Err(domain(x, "(-1, 1]"));
    }
    if x == 1.0 {
        return Ok(BoundInterval {
            lower: 0.0,
            upper: 0.0,
            lower_family: ENDPOINT.into(),
            upper_family: ENDPOINT.into(),
        });
    }
    if x > 0.0 {
        return Ok(envelope_on_unit(x, enabled));
    }
    let mirrored = envelope_on_unit(-x, enabled);
    let pi_lo = PI.next_down();
    let pi_hi = PI.next_up();
    Ok(BoundInterval {
        lower: (pi_lo - mirrored.upper).next_down(),
        upper: (pi_hi - mirrored.lower).next_up(),
        lower_family: mirrored.upper_family,
        upper_family: mirrored.lower_family,
    })
}

/// Midpoint of the default envelope and a radius guaranteed to cover `acos x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Approx {
    pub value: f64,
    pub radius: f64,
}

pub fn approx_arccos(x: f64) -> Result<Approx> {
    approx_with(x, &BoundFamily::defaults())
}

pub fn approx_with(x: f64, enabled: &[BoundFamily]) -> Result<Approx> {
    let env = best_envelope(x, enabled)?;
    let value = env.lower + (env.upper - env.lower) / 2.0;
    let spread = (value - env.lower).max(env.upper - value);
    let radius = if spread > 0.0 { spread.next_up() } else { 0.0 };
    Ok(Approx { value, radius })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub x: f64,
    pub lower: f64,
    pub upper: f64,
    pub reference: f64,
    pub width: f64,
    pub lower_family: String,
    pub upper_family: String,
}

pub const TABLE_HEADER: &str = "x,lower,upper,reference,width,lower_family,upper_family";

/// One row per grid point; `reference` is the 40-digit oracle rounded to double.
pub fn bound_table(grid: &[f64], enabled: &[BoundFamily]) -> Result<Vec<TableRow>> {
    if let Some(i) = grid.windows(2).position(|w| !(w[0] < w[1])) {
        return Err(Error::UnorderedGrid { index: i + 1 });
    }
    grid.iter()
        .map(|&x| {
            if !(x > 0.0 && x < 1.0) {
                return Err(domain(x, "(0, 1)"));
            }
            let env = best_envelope(x, enabled)?;
            Ok(TableRow {
                x,
                lower: env.lower,
                upper: env.upper,
                reference: arccos_hp_f64(x, DEFAULT_DIGITS)?.to_f64(),
                width: env.width(),
                lower_family: env.lower_family,
                upper_family: env.upper_family,
            })
        })
        .collect()
}

/// `n` points at spacing `1/(n+1)` strictly inside `(0, 1)`.
pub fn uniform_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|i| i as f64 / (n + 1) as f64).collect()
}

pub fn write_table_csv<W: io::Write>(rows: &[TableRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)
            .map_err(|e| Error::Serialization(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Serialization(e.to_string()))
}

pub fn table_json(rows: &[TableRow]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(|e| Error::Serialization(e.to_string()))
}

/// Checks that the family is usable in a region classified as `class`.
pub fn family_region(fam: &BoundFamily) -> Option<RegionClass> {
    match fam {
        BoundFamily::Thm2MaxCoef(_) => Some(RegionClass::UniqueMax),
        BoundFamily::Thm2MinCoef(_) => Some(RegionClass::UniqueMin),
        _ => None,
    }
}
