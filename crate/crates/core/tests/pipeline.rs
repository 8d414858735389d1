use mwrank::algebra::PrimeField;
use mwrank::betti::{self, BettiInputs};
use mwrank::curve;
use mwrank::hodge;
use mwrank::sections;
use mwrank::singular;
use mwrank::wps_count::{self, CountMethod, WeightedSpace};
use mwrank::{CountOptions, Error};

#[test]
fn rank_from_scratch_at_seven_and_nineteen() {
    let f = curve::threefold::<mwrank::algebra::EisensteinInt>().unwrap();
    let space = WeightedSpace::new(&curve::THREEFOLD_WEIGHTS).unwrap();
    let opts = CountOptions::default();
    for p in [7u64, 19] {
        let field = PrimeField::new(p).unwrap();
        let n =
            wps_count::count_projective(&field, &f, &space, CountMethod::WeierstrassFast, &opts)
                .unwrap()
                .projective_count;
        let sing = singular::singular_points(&field, &f, &space, &opts).unwrap();
        let coh = hodge::builtin_cohomology(sing.points.len()).unwrap();
        let inp = BettiInputs::new(p, n as i64, coh.h4_sigma as i64, coh.chi).unwrap();
        let r = betti::resolve(&inp).unwrap();
        assert_eq!((r.w23, r.w33, r.h4, r.rank), (12, 0, 7, 6));
    }
}

#[test]
fn wrong_h4_sigma_is_caught() {
    // dropping the singular contribution makes the model inconsistent with 610
    let inp = BettiInputs::new(7, 610, 0, -38).unwrap();
    assert!(matches!(
        betti::resolve(&inp),
        Err(Error::InconsistentInputs) | Err(Error::Inconclusive { .. })
    ));
}

#[test]
fn closed_form_matches_squared_form_near_headline() {
    for n in 400..900 {
        let inp = BettiInputs::builtin(7, n).unwrap();
        assert_eq!(
            betti::feasible_w23_unchecked(&inp),
            betti::feasible_w23_closed_form(&inp)
        );
    }
}

#[test]
fn sections_survive_reduction() {
    for p in [7u64, 13, 19] {
        let field = PrimeField::new(p).unwrap();
        let w = field.primitive_cube_root().unwrap();
        let rhs = curve::affine_rhs::<mwrank::algebra::EisensteinInt>().unwrap();
        for pt in sections::builtin_sections() {
            for (s, t) in [(0, 0), (1, 2), (p - 1, 3), (5, p - 2)] {
                let x = pt.x.evaluate_mod_p(&field, &[s, t], Some(w)).unwrap();
                let y = pt.y.evaluate_mod_p(&field, &[s, t], Some(w)).unwrap();
                let r = rhs.evaluate_mod_p(&field, &[s, t], Some(w)).unwrap();
                assert_eq!(field.mul(y, y), field.add(field.pow(x, 3), r));
            }
        }
    }
}
