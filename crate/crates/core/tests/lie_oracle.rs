use std::collections::BTreeMap;

use proptest::prelude::*;
use veronese_core::lie::{bracket_words, lie_bracket, LieBasis, LieCombination};
use veronese_core::poly::Scalar;
use veronese_oracles::{necklace_count, oracle_bracket};

fn as_map(c: &LieCombination) -> BTreeMap<Vec<u8>, Scalar> {
    c.terms().map(|(w, s)| (w.clone(), s.clone())).collect()
}

#[test]
fn basis_counts_match_necklaces() {
    for n in 1..=3 {
        let table = LieBasis::new(n, 7).unwrap();
        for m in 1..=7 {
            assert_eq!(
                table.count_of_degree(m) as u64,
                necklace_count(n as u64, m as u64),
                "n={n} m={m}"
            );
        }
    }
}

#[test]
fn brackets_match_associative_embedding_n2() {
    let table = LieBasis::new(2, 5).unwrap();
    for a in table.elements() {
        for b in table.elements() {
            if a.degree() + b.degree() > 5 {
                continue;
            }
            let ours = as_map(&bracket_words(&a.word, &b.word));
            assert_eq!(ours, oracle_bracket(&a.word, &b.word, 2), "{:?} {:?}", a.word, b.word);
        }
    }
}

#[test]
fn bracket_of_degree_two_and_three() {
    // [[x1,x2],[x1,[x1,x2]]]
    let ours = as_map(&bracket_words(&[0, 1], &[0, 0, 1]));
    assert_eq!(ours, oracle_bracket(&[0, 1], &[0, 0, 1], 2));
}

fn combination(max_len: usize) -> impl Strategy<Value = LieCombination> {
    let words = veronese_core::lie::lyndon_words(3, max_len);
    prop::collection::vec((0..words.len(), -3i64..=3), 1..4).prop_map(move |picks| {
        let mut c = LieCombination::zero();
        for (i, k) in picks {
            c.add_term(words[i].clone(), veronese_core::poly::scalar(k));
        }
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antisymmetry(a in combination(3), b in combination(2)) {
        prop_assert_eq!(lie_bracket(&a, &b), lie_bracket(&b, &a).neg());
    }

    #[test]
    fn jacobi(a in combination(2), b in combination(2), c in combination(3)) {
        let mut sum = lie_bracket(&lie_bracket(&a, &b), &c);
        sum.add_scaled(&lie_bracket(&lie_bracket(&b, &c), &a), &veronese_core::poly::scalar(1));
        sum.add_scaled(&lie_bracket(&lie_bracket(&c, &a), &b), &veronese_core::poly::scalar(1));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn multihomogeneous(i in 0usize..20, j in 0usize..20) {
        let table = LieBasis::new(3, 3).unwrap();
        let (i, j) = (i % table.len(), j % table.len());
        let (a, b) = (table.element(i), table.element(j));
        let want: Vec<u32> = a.multidegree.iter().zip(&b.multidegree).map(|(x, y)| x + y).collect();
        for (w, _) in bracket_words(&a.word, &b.word).terms() {
            prop_assert_eq!(veronese_core::lie::multidegree(w, 3), want.clone());
        }
    }
}
