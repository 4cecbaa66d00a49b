use std::sync::Arc;

use proptest::prelude::*;
use veronese_core::lie::LieBasis;
use veronese_core::poisson::{bracket, PoissonDerivation, PoissonError, PoissonMorphism};
use veronese_core::poly::Polynomial;
use veronese_core::random;

fn table(n: usize) -> Arc<LieBasis> {
    LieBasis::shared(n, 6).unwrap()
}

fn weight_of(basis: &LieBasis, p: &Polynomial) -> u64 {
    p.terms().map(|(m, _)| m.weighted_degree(basis.degrees())).max().unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_leibniz_antisymmetry(seed in any::<u64>(), n in 2usize..=3) {
        let basis = table(n);
        let mut rng = random::rng(seed);
        let f = random::poisson_element(&mut rng, &basis, 2, 3);
        let g = random::poisson_element(&mut rng, &basis, 2, 3);
        let h = random::poisson_element(&mut rng, &basis, 2, 3);
        let br = |a: &Polynomial, b: &Polynomial| bracket(&basis, a, b).unwrap();
        let jacobi = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        prop_assert!(jacobi.is_zero());
        let leibniz = &br(&f, &(&g * &h)) - &(&(&br(&f, &g) * &h) + &(&g * &br(&f, &h)));
        prop_assert!(leibniz.is_zero());
        prop_assert_eq!(br(&f, &g), -&br(&g, &f));
        prop_assert!(br(&f, &f).is_zero());
    }

    #[test]
    fn brackets_add_weights(seed in any::<u64>(), wa in 1u64..=3, wb in 1u64..=3) {
        let basis = table(2);
        let mut rng = random::rng(seed);
        let p = random::homogeneous_poisson(&mut rng, &basis, wa, 3);
        let q = random::homogeneous_poisson(&mut rng, &basis, wb, 3);
        let pq = bracket(&basis, &p, &q).unwrap();
        prop_assert!(pq.terms().all(|(m, _)| m.weighted_degree(basis.degrees()) == wa + wb));
    }

    #[test]
    fn derivations_satisfy_the_bracket_law(seed in any::<u64>()) {
        let basis = table(2);
        let mut rng = random::rng(seed);
        let images: Vec<Polynomial> = (0..2)
            .map(|_| random::weighted_polynomial(&mut rng, basis.degrees(), 1, 2, 2))
            .collect();
        let s = PoissonDerivation::from_generators(basis.clone(), &images).unwrap();
        let f = random::poisson_element(&mut rng, &basis, 2, 2);
        let g = random::poisson_element(&mut rng, &basis, 2, 2);
        let fg = bracket(&basis, &f, &g).unwrap();
        match (s.apply(&fg), s.apply(&f), s.apply(&g)) {
            (Ok(lhs), Ok(sf), Ok(sg)) => {
                let rhs = match (bracket(&basis, &sf, &g), bracket(&basis, &f, &sg)) {
                    (Ok(a), Ok(b)) => &a + &b,
                    _ => return Ok(()),
                };
                prop_assert_eq!(lhs, rhs);
            }
            (Err(PoissonError::Undefined(_)), _, _) | (_, Err(PoissonError::Undefined(_)), _) | (_, _, Err(PoissonError::Undefined(_))) => {}
            (a, b, c) => prop_assert!(false, "{a:?} {b:?} {c:?}"),
        }
    }

    #[test]
    fn morphisms_preserve_brackets(seed in any::<u64>()) {
        let basis = table(2);
        let mut rng = random::rng(seed);
        // linear images keep every defined image inside the table
        let images: Vec<Polynomial> = (0..2)
            .map(|_| random::weighted_polynomial(&mut rng, basis.degrees(), 1, 1, 2))
            .collect();
        let phi = PoissonMorphism::from_generators(basis.clone(), &images).unwrap();
        let f = random::poisson_element(&mut rng, &basis, 3, 2);
        let g = random::poisson_element(&mut rng, &basis, 3, 2);
        if weight_of(&basis, &f) + weight_of(&basis, &g) > 6 {
            return Ok(());
        }
        let fg = bracket(&basis, &f, &g).unwrap();
        let lhs = phi.apply(&fg).unwrap();
        let rhs = bracket(&basis, &phi.apply(&f).unwrap(), &phi.apply(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(phi.apply(&(&f * &g)).unwrap(), &phi.apply(&f).unwrap() * &phi.apply(&g).unwrap());
    }
}
