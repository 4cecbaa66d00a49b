use proptest::prelude::*;
use veronese_core::poly::{dth_root, gcd, reduce_fraction, Monomial, PolyError, Polynomial, Scalar};

const ARITY: usize = 3;

fn coefficient() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
}

fn poly(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, ARITY), coefficient()), 0..=max_terms)
        .prop_map(|terms| Polynomial::from_terms(ARITY, terms.into_iter().map(|(e, c)| (Monomial::from_dense(&e), c))))
}

fn nonzero(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(max_exp, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn nonconstant(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(max_exp, max_terms).prop_filter("nonconstant", |p| !p.is_constant())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(2, 4), b in poly(2, 4), c in poly(2, 4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(2, 4), b in nonzero(2, 3)) {
        prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
    }

    #[test]
    fn division_witness_is_honest(a in nonzero(2, 4), b in nonconstant(2, 3)) {
        match a.divide_exact(&b) {
            Ok(q) => prop_assert_eq!(&q * &b, a),
            Err(PolyError::NotDivisible { remainder }) => prop_assert!(!remainder.is_zero()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn gcd_divides_and_contains_common_factor(a in nonzero(2, 3), b in nonzero(2, 3), g in nonzero(2, 3)) {
        let p = &a * &g;
        let q = &b * &g;
        let h = gcd(&p, &q).unwrap();
        prop_assert!(h.divides(&p) && h.divides(&q));
        prop_assert!(g.divides(&h), "gcd {h} misses the common factor {g}");
        prop_assert!(h.leading_coefficient().unwrap() == &Scalar::from_integer(1.into()));
        // the cofactors are coprime
        let cp = p.divide_exact(&h).unwrap();
        let cq = q.divide_exact(&h).unwrap();
        prop_assert!(gcd(&cp, &cq).unwrap().is_one());
    }

    #[test]
    fn gcd_is_symmetric(a in nonzero(3, 4), b in nonzero(3, 4)) {
        prop_assert_eq!(gcd(&a, &b).unwrap(), gcd(&b, &a).unwrap());
    }

    #[test]
    fn grading_parts_sum_and_sit_in_components(p in poly(4, 6), d in 2u32..=4) {
        let parts = p.grade(d).unwrap();
        prop_assert_eq!(parts.sum(), p);
        for (i, part) in parts.parts().iter().enumerate() {
            prop_assert!(part.terms().all(|(m, _)| m.total_degree() % d == i as u32));
        }
    }

    #[test]
    fn products_add_residues(a in poly(3, 3), b in poly(3, 3), d in 2u32..=3) {
        let ga = a.grade(d).unwrap();
        let gb = b.grade(d).unwrap();
        for i in 0..d {
            for j in 0..d {
                let prod = ga.part(i) * gb.part(j);
                prop_assert!(prod.in_component(d, (i + j) % d, &[1; ARITY]));
            }
        }
    }

    #[test]
    fn roots_of_powers(p in nonconstant(2, 3), d in 2u32..=3) {
        let r = dth_root(&p.pow(d), d).unwrap();
        prop_assert_eq!(r.pow(d), p.pow(d));
        if d % 2 == 0 {
            prop_assert!(r.leading_coefficient().unwrap() > &Scalar::from_integer(0.into()));
        }
    }

    #[test]
    fn reduced_fractions_are_equal_and_coprime(a in nonzero(2, 3), b in nonzero(2, 3), g in nonzero(2, 2)) {
        let r = reduce_fraction(&(&a * &g), &(&b * &g)).unwrap();
        prop_assert_eq!(r.num() * &b, &a * r.den());
        prop_assert!(gcd(r.num(), r.den()).unwrap().is_one());
        prop_assert!(r.den().leading_coefficient().unwrap() == &Scalar::from_integer(1.into()));
    }

    #[test]
    fn substitution_composes(p in poly(2, 4), f in prop::collection::vec(poly(2, 2), ARITY), g in prop::collection::vec(poly(1, 3), ARITY)) {
        // p(f(g)) = (p(f))(g)
        let fg: Vec<Polynomial> = f.iter().map(|fi| fi.substitute(&g).unwrap()).collect();
        prop_assert_eq!(p.substitute(&fg).unwrap(), p.substitute(&f).unwrap().substitute(&g).unwrap());
    }
}
