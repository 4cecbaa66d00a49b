use std::sync::Arc;

use proptest::prelude::*;
use veronese_core::poly::{scalar, Polynomial, Scalar};
use veronese_core::random;
use veronese_core::veronese::{
    check_locally_nilpotent, lift_automorphism, lift_derivation, restrict_automorphism, restrict_derivation, Context,
    GeneratorSet, LiftOptions, LndVerdict, ObstructionReason, VeroneseAutomorphism, VeroneseDerivation,
    DEFAULT_LND_CAP,
};

fn generators(n: usize, d: u32) -> Arc<GeneratorSet> {
    Arc::new(GeneratorSet::build(Context::polynomial(n).unwrap(), d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derivations_lift_back(seed in any::<u64>(), n in 2usize..=3, d in 2u32..=3) {
        let mut rng = random::rng(seed);
        let s = random::graded_derivation(&mut rng, n, d, 2 * d + 1);
        let gens = generators(n, d);
        let map = restrict_derivation(gens.clone(), &s).unwrap();
        let lift = lift_derivation(&map).unwrap().into_lift().unwrap();
        prop_assert_eq!(lift.generator_images(), s);
        // restricting the lift gives the Veronese map back
        let again = restrict_derivation(gens, &lift.generator_images()).unwrap();
        prop_assert_eq!(again.images(), map.images());
    }

    #[test]
    fn automorphisms_lift_up_to_sign(seed in any::<u64>(), n in 2usize..=3, d in 2u32..=3) {
        let mut rng = random::rng(seed);
        let beta = random::tame_automorphism(&mut rng, n, d, 2, 5);
        let map = restrict_automorphism(generators(n, d), &beta.images).unwrap();
        let lift = lift_automorphism(&map, LiftOptions::default()).unwrap().into_lift().unwrap();
        let images = lift.generator_images();
        let plus = images == beta.images;
        let minus = images.iter().zip(&beta.images).all(|(a, b)| a == &-b);
        prop_assert!(plus || (minus && d % 2 == 0));
        // the other sign convention gives the other lift
        let other = lift_automorphism(&map, LiftOptions::negative()).unwrap().into_lift().unwrap();
        if d % 2 == 0 {
            prop_assert!(other.generator_images().iter().zip(&images).all(|(a, b)| a == &-b));
        } else {
            prop_assert_eq!(other.generator_images(), images);
        }
    }

    #[test]
    fn triangular_lifts_are_locally_nilpotent(seed in any::<u64>(), n in 2usize..=3, d in 2u32..=3) {
        let mut rng = random::rng(seed);
        let s = random::triangular_derivation(&mut rng, n, d, 2 * d + 1);
        let map = restrict_derivation(generators(n, d), &s).unwrap();
        let lift = lift_derivation(&map).unwrap().into_lift().unwrap();
        let report = check_locally_nilpotent(&lift, DEFAULT_LND_CAP).unwrap();
        prop_assert_eq!(report.verdict, LndVerdict::LocallyNilpotent);
        prop_assert!(report.indices.iter().all(|k| k.is_some_and(|k| k <= DEFAULT_LND_CAP)));
    }

    #[test]
    fn one_variable_constants_are_obstructed(c in (1i64..=9, 1i64..=5), d in 2u32..=4) {
        let gens = generators(1, d);
        let value = Polynomial::constant(1, Scalar::new(c.0.into(), c.1.into()));
        let der = VeroneseDerivation::new(gens, vec![value]).unwrap();
        let obs = lift_derivation(&der).unwrap().obstruction().cloned().unwrap();
        prop_assert_eq!(obs.reason, ObstructionReason::NotDivisible);
    }

    #[test]
    fn scalings_need_rational_roots(t in 1i64..=6, extra in 2i64..=7) {
        // t^2 * extra is a square only when extra is
        let c = scalar(t * t * extra);
        let gens = generators(2, 2);
        let images = (0..gens.len()).map(|i| gens.generator_poly(i).scale(&c)).collect();
        let map = VeroneseAutomorphism::new(gens, images).unwrap();
        let out = lift_automorphism(&map, LiftOptions::default()).unwrap();
        let square = [4, 9].contains(&extra);
        if square {
            let root = scalar(t * if extra == 4 { 2 } else { 3 });
            let lift = out.into_lift().unwrap();
            prop_assert_eq!(lift.generator_images()[0].clone(), Polynomial::var(2, 0).scale(&root));
        } else {
            prop_assert_eq!(out.obstruction().unwrap().reason, ObstructionReason::NoRationalDthRoot);
        }
    }
}
