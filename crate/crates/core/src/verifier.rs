//! Desk-scale property harness. Every check samples deterministically from a
//! seed, evaluates at high precision, and returns a [`VerificationReport`].

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{BoundFamily, Exponent};
use crate::classifier::{self, RegionClass};
use crate::error::{Error, Result};
use crate::family::{self, Chain, Params};
use crate::oracle::{check_digits, DEFAULT_DIGITS};
use crate::scalar::{Hp, Real};

/// Relative margins at or below this are not counted as strict.
pub const STRICT_MARGIN: f64 = 1e-30;
/// Reports keep at most this many witnesses.
pub const MAX_WITNESSES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Violation,
    Demonstration,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Location {
    X { x: f64 },
    Params { a: f64, b: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub at: Location,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub samples: usize,
    /// Minimum signed margin observed; positive means healthy.
    pub worst_margin: f64,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

impl VerificationReport {
    pub fn violations(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses
            .iter()
            .filter(|w| w.kind == WitnessKind::Violation)
    }
}

/// Accumulates margins and witnesses for one check.
struct Tally {
    check_id: String,
    samples: usize,
    worst: f64,
    violations: usize,
    witnesses: Vec<Witness>,
}

impl Tally {
    fn new(check_id: impl Into<String>) -> Self {
        Tally {
            check_id: check_id.into(),
            samples: 0,
            worst: f64::INFINITY,
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    fn margin(&mut self, m: f64) {
        self.worst = self.worst.min(m);
    }

    fn violation(&mut self, at: Location, detail: String) {
        self.violations += 1;
        self.push(WitnessKind::Violation, at, detail);
    }

    fn demonstration(&mut self, at: Location, detail: String) {
        self.push(WitnessKind::Demonstration, at, detail);
    }

    fn push(&mut self, kind: WitnessKind, at: Location, detail: String) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { kind, at, detail });
        }
    }

    fn finish(self) -> VerificationReport {
        self.finish_with(true)
    }

    /// `extra` is an additional success condition beyond "no violations".
    fn finish_with(self, extra: bool) -> VerificationReport {
        let worst_margin = if self.worst.is_finite() { self.worst } else { 0.0 };
        VerificationReport {
            passed: self.violations == 0 && extra,
            check_id: self.check_id,
            samples: self.samples,
            worst_margin,
            witnesses: self.witnesses,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SharpnessKind {
    BUpper16,
    BLower2Pi,
    Thm3Constants,
}

impl SharpnessKind {
    pub const ALL: [SharpnessKind; 3] = [
        SharpnessKind::BUpper16,
        SharpnessKind::BLower2Pi,
        SharpnessKind::Thm3Constants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SharpnessKind::BUpper16 => "b_upper_1_6",
            SharpnessKind::BLower2Pi => "b_lower_2pi",
            SharpnessKind::Thm3Constants => "thm3_constants",
        }
    }
}

impl fmt::Display for SharpnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SharpnessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SharpnessKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownSelector(s.to_string()))
    }
}

/// Deepest power of ten used by the geometric endpoint sweeps.
pub const SWEEP_DEPTH: u32 = 12;

/// Seeded verifier. Each check derives its own stream from the seed and its
/// id, so reports do not depend on which other checks ran first.
#[derive(Clone, Copy, Debug)]
pub struct Verifier {
    pub seed: u64,
    pub digits: u32,
}

impl Default for Verifier {
    fn default() -> Self {
        Verifier {
            seed: 0,
            digits: DEFAULT_DIGITS,
        }
    }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

fn relative(num: &Hp, den: &Hp) -> f64 {
    (num.clone() / den.clone()).to_f64()
}

impl Verifier {
    pub fn new(seed: u64, digits: u32) -> Result<Self> {
        check_digits(digits)?;
        if digits < DEFAULT_DIGITS {
            return Err(Error::Precision {
                digits,
                min: DEFAULT_DIGITS,
                max: crate::oracle::MAX_DIGITS,
            });
        }
        Ok(Verifier { seed, digits })
    }

    fn rng(&self, check_id: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ fnv1a(check_id))
    }

    fn hp(&self, x: f64) -> Hp {
        Hp::with_digits(x, self.digits)
    }

    /// `10^-k` at working precision.
    fn tiny(&self, k: u32) -> Hp {
        let one = self.hp(1.0);
        one.clone() / one.lift(10.0).powf(&one.lift(k as f64))
    }

    fn uniform_open(rng: &mut ChaCha8Rng) -> f64 {
        loop {
            let x: f64 = rng.gen();
            if x > 0.0 {
                return x;
            }
        }
    }

    /// `1 - 10^-k` and `10^-k` for `k = 1..=depth`, then `n` seeded uniform
    /// points in `(0, 1)`.
    fn unit_samples(&self, check_id: &str, n: usize, depth: u32) -> Vec<Hp> {
        let mut xs: Vec<Hp> = (1..=depth).map(|k| self.hp(1.0) - self.tiny(k)).collect();
        xs.extend((1..=depth).map(|k| self.tiny(k)));
        let mut rng = self.rng(check_id);
        xs.extend((0..n).map(|_| self.hp(Self::uniform_open(&mut rng))));
        xs
    }

    /// Strict containment of `acos` between the family's sides. Exponent
    /// conditions are deliberately not enforced, so invalid exponents can be
    /// shown to fail.
    pub fn check_double_inequality(
        &self,
        fam: &BoundFamily,
        n: usize,
        endpoint_depth: u32,
    ) -> Result<VerificationReport> {
        if let BoundFamily::Thm2MaxCoef(_) | BoundFamily::Thm2MinCoef(_) = fam {
            fam.validate()?;
        }
        let id = format!("double_inequality:{}", fam.id());
        let mut tally = Tally::new(id.clone());
        for x in self.unit_samples(&id, n, endpoint_depth) {
            let exact = x.acos();
            let (lower, upper) = fam.raw(&x);
            let at = Location::X { x: x.to_f64() };
            if let Some(lo) = lower {
                let m = relative(&(exact.clone() - lo), &exact);
                tally.margin(m);
                if !(m > STRICT_MARGIN) {
                    tally.violation(at, format!("lower side fails, relative margin {m:e}"));
                }
            }
            if let Some(up) = upper {
                let m = relative(&(up - exact.clone()), &exact);
                tally.margin(m);
                if !(m > STRICT_MARGIN) {
                    tally.violation(at, format!("upper side fails, relative margin {m:e}"));
                }
            }
            tally.samples += 1;
        }
        Ok(tally.finish())
    }

    /// Sign pattern of `f` differences on an `n`-point scan must match `expected`.
    pub fn check_class(
        &self,
        p: &Params<f64>,
        expected: RegionClass,
        n: usize,
    ) -> Result<VerificationReport> {
        let scan = classifier::classify_behavioral(p, n)?;
        let mut tally = Tally::new(format!("class:({},{}):{}", p.a, p.b, expected));
        tally.samples = n;
        let at = Location::Params { a: p.a, b: p.b };
        let observed = scan.class.unwrap_or(RegionClass::Indeterminate);
        let step = if scan.weakest_step.is_finite() { scan.weakest_step } else { 0.0 };
        if observed == expected {
            tally.margin(step);
            for &x in &scan.turning_points {
                tally.demonstration(Location::X { x }, "turning point of f".into());
            }
        } else {
            tally.margin(-1.0);
            tally.violation(at, format!("observed {observed}, expected {expected}"));
        }
        Ok(tally.finish())
    }

    /// Signs and monotonicity of `q`, `h`, `g''` on `[0, 1 - 1e-8]`, and the
    /// vanishing of `q`, `h` at `1 - 1e-10`.
    pub fn check_sign_chain(&self, n: usize) -> Result<VerificationReport> {
        let id = "sign_chain";
        let mut rng = self.rng(id);
        let last = 1.0 - 1e-8;
        let mut xs: Vec<f64> = vec![0.0, last];
        xs.extend((0..n.saturating_sub(2)).map(|_| rng.gen::<f64>() * last));
        xs.sort_by(f64::total_cmp);
        xs.dedup();

        let mut tally = Tally::new(id);
        let mut prev: Option<(Hp, Hp)> = None;
        for &x in &xs {
            let xh = self.hp(x);
            let q = family::chain_value(Chain::Q, &xh)?;
            let h = family::chain_value(Chain::H, &xh)?;
            let g2 = family::chain_value(Chain::GSecond, &xh)?;
            let at = Location::X { x };
            for (name, v) in [("-q", -q.clone()), ("h", h.clone()), ("g''", g2)] {
                let m = v.to_f64();
                tally.margin(m);
                if !(v > xh.lift(0.0)) {
                    tally.violation(at, format!("{name} = {m:e} is not positive"));
                }
            }
            if let Some((pq, ph)) = &prev {
                if !(q > *pq) {
                    tally.violation(at, "q is not increasing".into());
                }
                if !(h < *ph) {
                    tally.violation(at, "h is not decreasing".into());
                }
            }
            prev = Some((q, h));
            tally.samples += 1;
        }

        let near = self.hp(1.0) - self.tiny(10);
        let q = family::chain_value(Chain::Q, &near)?.to_f64();
        let h = family::chain_value(Chain::H, &near)?.to_f64();
        let at = Location::X { x: near.to_f64() };
        if !(q < 0.0 && q > -1e-4) {
            tally.violation(at, format!("q(1 - 1e-10) = {q:e} not in (-1e-4, 0)"));
        }
        if !(h > 0.0 && h < 1e-4) {
            tally.violation(at, format!("h(1 - 1e-10) = {h:e} not in (0, 1e-4)"));
        }
        Ok(tally.finish())
    }

    /// Shows that a sharp constant cannot be moved by `epsilon`.
    pub fn check_sharpness(&self, kind: SharpnessKind, epsilon: f64) -> Result<VerificationReport> {
        if !(epsilon > 0.0 && epsilon <= 1e-2) {
            return Err(crate::error::domain(epsilon, "(0, 1e-2]"));
        }
        let mut tally = Tally::new(format!("sharpness:{kind}"));
        let one = self.hp(1.0);
        let eps = one.lift(epsilon);
        let found = match kind {
            SharpnessKind::BUpper16 => {
                let b = Exponent::OneSixth.value(&one) - eps;
                self.sweep_exponent(&mut tally, &b, true)
            }
            SharpnessKind::BLower2Pi => {
                let b = Exponent::TwoOverPiMinusHalf.value(&one) + eps;
                self.sweep_exponent(&mut tally, &b, false)
            }
            SharpnessKind::Thm3Constants => self.sweep_thm3(&mut tally, &eps)?,
        };
        Ok(tally.finish_with(found))
    }

    /// Sweeps `x = 1 - 10^-k` against `2^(b+1/2) w` or `x = 10^-k` against
    /// `pi/2 w`, `w = sqrt(1-x)/(1+x)^b`, until `acos` exceeds the bound.
    fn sweep_exponent(&self, tally: &mut Tally, b: &Hp, near_one: bool) -> bool {
        let one = self.hp(1.0);
        let scale = if near_one {
            one.lift(2.0).powf(&(b.clone() + one.lift(0.5)))
        } else {
            one.pi() / one.lift(2.0)
        };
        let mut best = f64::NEG_INFINITY;
        for k in 1..=SWEEP_DEPTH {
            let x = if near_one { one.clone() - self.tiny(k) } else { self.tiny(k) };
            let w = (one.clone() - x.clone()).sqrt() * x.pow1p(&(-b.clone()));
            let exact = x.acos();
            let excess = relative(&(exact.clone() - scale.clone() * w), &exact);
            tally.samples += 1;
            best = best.max(excess);
            if excess > 0.0 {
                tally.margin(excess);
                tally.demonstration(
                    Location::X { x: x.to_f64() },
                    format!("acos exceeds the bound by relative {excess:e}"),
                );
                return true;
            }
        }
        tally.margin(best);
        false
    }

    /// `F` approaches `(1/2 + sqrt 2) pi` at 0 and 6 at 1 within `eps`, and is
    /// strictly decreasing on a 1000-point grid.
    fn sweep_thm3(&self, tally: &mut Tally, eps: &Hp) -> Result<bool> {
        let one = self.hp(1.0);
        let sup = family::big_f_limit_at_0(&one);
        let inf = family::big_f_limit_at_1(&one);
        let mut found_sup = false;
        let mut found_inf = false;
        let mut gap_sup = f64::INFINITY;
        let mut gap_inf = f64::INFINITY;
        for k in 1..=SWEEP_DEPTH {
            let x0 = self.tiny(k);
            let x1 = one.clone() - self.tiny(k);
            let f0 = family::big_f_value(&x0)?;
            let f1 = family::big_f_value(&x1)?;
            tally.samples += 2;
            let g0 = sup.clone() - f0.clone();
            let g1 = f1.clone() - inf.clone();
            if !(g0 > one.lift(0.0)) || !(g1 > one.lift(0.0)) {
                tally.violation(Location::X { x: x0.to_f64() }, "F outside its limits".into());
            }
            gap_sup = gap_sup.min(g0.to_f64());
            gap_inf = gap_inf.min(g1.to_f64());
            if !found_sup && g0 < *eps {
                found_sup = true;
                tally.demonstration(
                    Location::X { x: x0.to_f64() },
                    format!("F = {} within epsilon of (1/2+sqrt 2) pi", f0.to_decimal(20)),
                );
            }
            if !found_inf && g1 < *eps {
                found_inf = true;
                tally.demonstration(
                    Location::X { x: x1.to_f64() },
                    format!("F = {} within epsilon of 6", f1.to_decimal(20)),
                );
            }
        }
        let grid = 1000;
        let mut prev: Option<Hp> = None;
        for i in 1..=grid {
            let x = one.lift(i as f64) / one.lift((grid + 1) as f64);
            let f = family::big_f_value(&x)?;
            if let Some(p) = &prev {
                if !(f < *p) {
                    tally.violation(Location::X { x: x.to_f64() }, "F is not decreasing".into());
                }
            }
            prev = Some(f);
            tally.samples += 1;
        }
        let eps = eps.to_f64();
        tally.margin(eps - gap_sup.max(gap_inf));
        Ok(found_sup && found_inf)
    }

    /// Discriminant identity, pairwise non-domination of the four concrete
    /// double inequalities, and their two exact coincidences.
    pub fn check_identities(&self, n: usize) -> Result<VerificationReport> {
        let id = "identities";
        let mut tally = Tally::new(id);
        let mut rng = self.rng(id);
        let one = self.hp(1.0);

        let tol = 1e-10;
        let mut drawn = 0;
        while drawn < n {
            let a: f64 = rng.gen_range(-1.0..=1.0);
            let b: f64 = rng.gen_range(-1.0..=1.0);
            if (a - b).abs() < 1e-6 {
                continue;
            }
            drawn += 1;
            let (closed, quad) = classifier::discriminants(&Params::new(a, b).lift(&one));
            let scale = closed.clone().abs().max_of(quad.clone().abs()).max_of(one.lift(1e-300));
            let err = relative(&(closed - quad).abs(), &scale);
            tally.margin(tol - err);
            if !(err <= tol) {
                tally.violation(Location::Params { a, b }, format!("relative mismatch {err:e}"));
            }
            tally.samples += 1;
        }

        let fams = BoundFamily::defaults();
        let xs = self.unit_samples("identities:points", 1000, SWEEP_DEPTH);
        let sides: Vec<Vec<(Hp, Hp)>> = xs
            .iter()
            .map(|x| {
                fams.iter()
                    .map(|f| {
                        let (lo, up) = f.raw(x);
                        (lo.expect("two-sided"), up.expect("two-sided"))
                    })
                    .collect()
            })
            .collect();
        tally.samples += xs.len();

        let coincident = |side: Side, i: usize, j: usize| -> bool {
            let (lo_pair, up_pair) = ((0, 3), (0, 1));
            let pair = (i.min(j), i.max(j));
            match side {
                Side::Lower => pair == lo_pair,
                Side::Upper => pair == up_pair,
            }
        };
        // The Carlson lower side, and the identical thm3 lower side, beat the reversed lower side.
        let dominating = |side: Side, i: usize, j: usize| -> Option<(usize, usize)> {
            match (side, i.min(j), i.max(j)) {
                (Side::Lower, 0, 2) => Some((0, 2)),
                (Side::Lower, 2, 3) => Some((3, 2)),
                _ => None,
            }
        };
        let coincidence_tol = 1e-12;
        for side in [Side::Lower, Side::Upper] {
            for i in 0..fams.len() {
                for j in i + 1..fams.len() {
                    let pick = |row: &Vec<(Hp, Hp)>, k: usize| match side {
                        Side::Lower => row[k].0.clone(),
                        Side::Upper => row[k].1.clone(),
                    };
                    // tighter(k) is true when family k gives the tighter side.
                    let tighter = |row: &Vec<(Hp, Hp)>, k: usize, other: usize| match side {
                        Side::Lower => pick(row, k) > pick(row, other),
                        Side::Upper => pick(row, k) < pick(row, other),
                    };
                    let label = format!("{} {} vs {}", side.name(), fams[i].id(), fams[j].id());
                    if coincident(side, i, j) {
                        for (x, row) in xs.iter().zip(&sides) {
                            let (u, v) = (pick(row, i), pick(row, j));
                            let err = relative(&(u.clone() - v).abs(), &u.abs());
                            tally.margin(coincidence_tol - err);
                            if !(err <= coincidence_tol) {
                                tally.violation(
                                    Location::X { x: x.to_f64() },
                                    format!("{label}: expected equal, relative gap {err:e}"),
                                );
                            }
                        }
                    } else if let Some((win, lose)) = dominating(side, i, j) {
                        for (x, row) in xs.iter().zip(&sides) {
                            if !tighter(row, win, lose) {
                                tally.violation(
                                    Location::X { x: x.to_f64() },
                                    format!("{label}: {} expected tighter", fams[win].id()),
                                );
                            }
                        }
                    } else {
                        for (k, other) in [(i, j), (j, i)] {
                            match xs.iter().zip(&sides).find(|(_, row)| tighter(row, k, other)) {
                                Some((x, _)) => tally.demonstration(
                                    Location::X { x: x.to_f64() },
                                    format!("{label}: {} tighter", fams[k].id()),
                                ),
                                None => tally.violation(
                                    Location::X { x: 0.5 },
                                    format!("{label}: no point where {} is tighter", fams[k].id()),
                                ),
                            }
                        }
                    }
                }
            }
        }
        Ok(tally.finish())
    }

    /// Every check at default sizes.
    pub fn run_suite(&self) -> Result<Vec<VerificationReport>> {
        let mut reports = Vec::new();
        let mut containment = BoundFamily::defaults();
        containment.extend([
            BoundFamily::Thm2(Exponent::Value(0.2)),
            BoundFamily::Thm2(Exponent::Value(0.5)),
            BoundFamily::Thm2MaxCoef(Params::new(0.5, 0.14)),
            BoundFamily::Thm2MinCoef(Params::new(0.51, 0.12)),
        ]);
        for fam in &containment {
            reports.push(self.check_double_inequality(fam, 10_000, 10)?);
        }
        let classes = [
            (Params::new(0.0, 0.0), RegionClass::StrictlyDecreasing, 512),
            (Params::new(0.5, 0.2), RegionClass::StrictlyIncreasing, 1024),
            (Params::new(0.5, 0.14), RegionClass::UniqueMax, 2048),
            (Params::new(0.51, 0.12), RegionClass::UniqueMin, 2048),
            (Params::new(0.502, 0.142), RegionClass::MaxThenMin, 4096),
        ];
        for (p, class, n) in classes {
            reports.push(self.check_class(&p, class, n)?);
        }
        reports.push(self.check_sign_chain(1000)?);
        reports.push(self.check_sharpness(SharpnessKind::BUpper16, 1e-3)?);
        reports.push(self.check_sharpness(SharpnessKind::BLower2Pi, 1e-3)?);
        reports.push(self.check_sharpness(SharpnessKind::Thm3Constants, 1e-6)?);
        reports.push(self.check_identities(10_000)?);
        Ok(reports)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Lower,
    Upper,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> Verifier {
        Verifier::new(7, DEFAULT_DIGITS).unwrap()
    }

    #[test]
    fn carlson_and_thm3_contain_acos() {
        for fam in [BoundFamily::Carlson, BoundFamily::Thm3] {
            let r = v().check_double_inequality(&fam, 1000, 10).unwrap();
            assert!(r.passed, "{r:?}");
            assert!(r.worst_margin > 0.0);
            assert_eq!(r.samples, 1020);
        }
    }

    #[test]
    fn exponent_below_one_sixth_fails_near_one() {
        let fam = BoundFamily::Thm2(Exponent::Value(0.16));
        let r = v().check_double_inequality(&fam, 1000, 10).unwrap();
        assert!(!r.passed);
        let w = r.violations().next().unwrap();
        let Location::X { x } = w.at else { panic!() };
        assert!(x >= 0.9, "{x}");
    }

    #[test]
    fn class_checks() {
        let r = v().check_class(&Params::new(0.0, 0.0), RegionClass::StrictlyDecreasing, 512).unwrap();
        assert!(r.passed);
        let r = v().check_class(&Params::new(0.5, 0.14), RegionClass::UniqueMax, 2048).unwrap();
        assert!(r.passed);
        // Argmax of f at (0.5, 0.14), from an independent 30-digit root solve of f'.
        let Location::X { x } = r.witnesses[0].at else { panic!() };
        assert!((x - 0.0835897978).abs() < 2e-3, "{x}");
        // The closed-form max-then-min condition fails at (0.52, 0.135), so the tag fails.
        let p = Params::new(0.52, 0.135);
        assert_ne!(classifier::classify_symbolic(&p), RegionClass::MaxThenMin);
        let r = v().check_class(&p, RegionClass::MaxThenMin, 4096).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn sign_chain_passes() {
        let r = v().check_sign_chain(1000).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.worst_margin > 0.0);
    }

    #[test]
    fn sharpness_witnesses() {
        let r = v().check_sharpness(SharpnessKind::BUpper16, 1e-3).unwrap();
        assert!(r.passed, "{r:?}");
        let Location::X { x } = r.witnesses[0].at else { panic!() };
        assert!(x >= 1.0 - 1e-2);

        let r = v().check_sharpness(SharpnessKind::BLower2Pi, 1e-3).unwrap();
        assert!(r.passed, "{r:?}");
        let Location::X { x } = r.witnesses[0].at else { panic!() };
        assert!(x <= 1e-2);

        let r = v().check_sharpness(SharpnessKind::Thm3Constants, 1e-6).unwrap();
        assert!(r.passed, "{r:?}");

        assert!(v().check_sharpness(SharpnessKind::BUpper16, 0.5).is_err());
    }

    #[test]
    fn identities_pass() {
        let r = v().check_identities(1000).unwrap();
        assert!(r.passed, "{r:#?}");
        assert!(r.witnesses.iter().all(|w| w.kind == WitnessKind::Demonstration));
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = v().check_identities(1000).unwrap();
        let b = v().check_identities(1000).unwrap();
        assert_eq!(a, b);
        assert!(Verifier::new(0, 20).is_err());
    }
}
