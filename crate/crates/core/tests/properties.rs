use carlson_bounds::bounds::{self, BoundFamily, Exponent};
use carlson_bounds::classifier::{self, RegionClass};
use carlson_bounds::family::{self, Chain};
use carlson_bounds::oracle::{arccos_hp, arccos_hp_f64, arccos_stable, ulp_distance, DEFAULT_DIGITS};
use carlson_bounds::{Hp, Params32, Params64, Real};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn hp(x: f64) -> Hp {
    Hp::with_digits(x, DEFAULT_DIGITS)
}

fn acos_hp(x: f64) -> Hp {
    arccos_hp_f64(x, DEFAULT_DIGITS).unwrap().value
}

fn unit() -> impl Strategy<Value = f64> {
    (1e-12f64..1.0 - 1e-12).prop_filter("open unit", |x| *x > 0.0 && *x < 1.0)
}

fn signed_unit() -> impl Strategy<Value = f64> {
    -1.0f64..=1.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reflection_identity(x in signed_unit()) {
        let lhs = acos_hp(-x);
        let rhs = lhs.pi() - acos_hp(x);
        prop_assert!((lhs - rhs).abs().to_f64() < 1e-38);
    }

    #[test]
    fn arccos_is_decreasing(x in signed_unit(), y in signed_unit()) {
        prop_assume!(x < y);
        prop_assert!(acos_hp(x) > acos_hp(y));
    }

    #[test]
    fn precision_refinement_agrees(x in signed_unit()) {
        let lo = arccos_hp(&hp(x), 40).unwrap().value;
        let hi = arccos_hp(&Hp::with_digits(x, 80), 80).unwrap().value;
        prop_assert!((lo - hi).abs().to_f64() < 1e-39);
    }

    #[test]
    fn g_prime_matches_difference_quotient(a in -1.0f64..1.5, b in -1.0f64..1.5, x in 0.01f64..0.99) {
        let p = Params64::new(a, b).to_hp(60);
        let xh = Hp::with_digits(x, 60);
        let step = xh.lift(1e-20);
        let fd = (family::g_value(&p, &(xh.clone() + step.clone())).unwrap()
            - family::g_value(&p, &(xh.clone() - step.clone())).unwrap())
            / (xh.lift(2.0) * step);
        let exact = family::g_prime_value(&p, &xh).unwrap();
        let scale = exact.clone().abs().max_of(xh.lift(1.0));
        prop_assert!(((fd - exact) / scale).abs().to_f64() < 1e-15);
    }

    #[test]
    fn chain_signs(x in 0.0f64..1.0 - 1e-8) {
        let xh = hp(x);
        prop_assert!(family::chain_value(Chain::Q, &xh).unwrap() < xh.lift(0.0));
        prop_assert!(family::chain_value(Chain::H, &xh).unwrap() > xh.lift(0.0));
        prop_assert!(family::chain_value(Chain::GSecond, &xh).unwrap() > xh.lift(0.0));
    }

    #[test]
    fn certified_bounds_contain_arccos(x in unit()) {
        let exact = acos_hp(x);
        for fam in BoundFamily::defaults() {
            let fb = bounds::family_bounds(&fam, x).unwrap();
            prop_assert!(hp(fb.lower.unwrap()) < exact, "{} lower at {}", fam, x);
            prop_assert!(hp(fb.upper.unwrap()) > exact, "{} upper at {}", fam, x);
        }
    }

    #[test]
    fn envelope_dominates_members(x in unit()) {
        let fams = BoundFamily::defaults();
        let env = bounds::best_envelope(x, &fams).unwrap();
        for fam in &fams {
            let fb = bounds::family_bounds(fam, x).unwrap();
            prop_assert!(env.width() <= fb.width().unwrap());
        }
        prop_assert!(env.lower > 0.0 && env.lower < env.upper);
    }

    #[test]
    fn approximation_radius_covers_arccos(x in -1.0f64..=1.0) {
        prop_assume!(x > -1.0);
        let a = bounds::approx_arccos(x).unwrap();
        let err = (hp(a.value) - acos_hp(x)).abs();
        prop_assert!(err <= hp(a.radius));
    }

    #[test]
    fn power_family_valid_above_one_sixth(b in 1.0f64 / 6.0 + 1e-9..2.0, x in unit()) {
        let fam = BoundFamily::Thm2(Exponent::Value(b));
        prop_assert!(fam.validate().is_ok());
        let fb = bounds::family_bounds(&fam, x).unwrap();
        let exact = acos_hp(x);
        prop_assert!(hp(fb.lower.unwrap()) < exact && exact < hp(fb.upper.unwrap()));
    }

    #[test]
    fn max_coefficient_dominates(a in 0.49f64..=0.5, c in 0.34f64..0.36, x in unit()) {
        let p = Params64::new(a, a - c);
        let fam = BoundFamily::Thm2MaxCoef(p);
        prop_assume!(fam.validate().is_ok());
        let (_, upper) = fam.raw(&hp(x));
        prop_assert!(upper.unwrap() > acos_hp(x));
    }

    #[test]
    fn increasing_implies_necessary_condition(a in -0.2f64..1.2, b in -0.2f64..1.2) {
        let p = Params64::new(a, b);
        prop_assume!(classifier::distance_to_boundary(&p) > 1e-6);
        if classifier::classify_numeric(&p, 1e-12) == RegionClass::StrictlyIncreasing {
            prop_assert!(classifier::necessary_increasing(&p));
        }
    }

    #[test]
    fn extremal_points_solve_the_quadratic(a in -1.0f64..1.0, b in -1.0f64..1.0) {
        prop_assume!((a - b).abs() > 1e-6);
        let p = Params64::new(a, b).to_hp(DEFAULT_DIGITS);
        let e = classifier::extrema(&p).unwrap();
        let (s, c) = (p.sum(), p.diff());
        for x in [e.x1, e.x2].into_iter().flatten() {
            let r = c.clone() * c.clone() * x.clone() * x.clone()
                + s.clone() * (c.lift(2.0) * c.clone() - c.lift(1.0)) * x.clone()
                + s.clone() * s.clone() - c.clone();
            let scale = c.clone() * c.clone() * x.clone() * x.clone() + s.clone().abs() + c.clone().abs();
            prop_assert!((r / scale).abs().to_f64() < 1e-25);
        }
    }

    #[test]
    fn family_ids_round_trip(b in -3.0f64..3.0, a in -3.0f64..3.0) {
        for fam in [
            BoundFamily::Thm2(Exponent::Value(b)),
            BoundFamily::Thm2Reversed(Exponent::Value(b)),
            BoundFamily::Thm2MaxCoef(Params64::new(a, b)),
        ] {
            prop_assert_eq!(fam.id().parse::<BoundFamily>().unwrap(), fam);
        }
    }

    #[test]
    fn single_precision_agrees_away_from_boundaries(a in -0.2f32..1.2, b in -0.2f32..1.2) {
        let p64 = Params64::new(a as f64, b as f64);
        prop_assume!(classifier::distance_to_boundary(&p64) > 1e-4);
        prop_assert_eq!(
            classifier::classify_symbolic(&Params32::new(a, b)),
            classifier::classify_symbolic(&p64)
        );
    }
}

#[test]
fn stable_arccos_within_four_ulp() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..100_000 {
        let x: f64 = rng.gen_range(-1.0..=1.0);
        let d = ulp_distance(arccos_stable(x).unwrap(), &acos_hp(x));
        worst = worst.max(d);
    }
    assert!(worst <= 4.0, "worst {worst} ulp");
}

#[test]
fn widths_shrink_toward_one() {
    for fam in [
        BoundFamily::Carlson,
        BoundFamily::Thm2(Exponent::OneSixth),
        BoundFamily::Thm2(Exponent::Value(0.3)),
    ] {
        let widths: Vec<f64> = (2..=10)
            .map(|k| {
                let x = 1.0 - 10f64.powi(-k);
                bounds::family_bounds(&fam, x).unwrap().width().unwrap()
            })
            .collect();
        assert!(widths.windows(2).all(|w| w[1] < w[0]), "{fam}: {widths:?}");
    }
}

#[test]
fn reflected_envelope_mirrors_positive_side() {
    let fams = BoundFamily::defaults();
    for x in [1e-9, 0.1, 0.5, 0.9, 1.0 - 1e-9] {
        let pos = bounds::best_envelope(x, &fams).unwrap();
        let neg = bounds::best_envelope(-x, &fams).unwrap();
        assert!(neg.contains((hp(x).pi() - acos_hp(x)).to_f64()));
        assert_eq!(neg.lower_family, pos.upper_family);
        assert_eq!(neg.upper_family, pos.lower_family);
    }
}
