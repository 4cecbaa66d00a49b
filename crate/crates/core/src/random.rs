//! Seeded random inputs for property checks.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::lie::LieBasis;
use crate::poly::{ratio, Monomial, Polynomial, Scalar};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Small nonzero rational.
pub fn coefficient(rng: &mut impl Rng) -> Scalar {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-5..=5);
    }
    let den = *[1, 1, 1, 2, 3].choose(rng).unwrap();
    ratio(num, den)
}

/// Sum of up to `max_terms` random terms whose weighted degree lies in
/// `min_weight..=max_weight`.
pub fn weighted_polynomial(
    rng: &mut impl Rng,
    weights: &[u32],
    min_weight: u64,
    max_weight: u64,
    max_terms: usize,
) -> Polynomial {
    let arity = weights.len();
    let mut p = Polynomial::zero(arity);
    let terms = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..terms {
        let w = rng.gen_range(min_weight..=max_weight);
        let ms = Monomial::all_of_weight(weights, w);
        if let Some(m) = ms.choose(rng) {
            p = &p + &Polynomial::monomial(arity, m.clone(), coefficient(rng));
        }
    }
    p
}

/// Random polynomial in `arity` variables of total degree at most `max_degree`.
pub fn polynomial(rng: &mut impl Rng, arity: usize, max_degree: u32, max_terms: usize) -> Polynomial {
    weighted_polynomial(rng, &vec![1; arity], 0, max_degree as u64, max_terms)
}

/// Random nonzero polynomial.
pub fn nonzero_polynomial(rng: &mut impl Rng, arity: usize, max_degree: u32, max_terms: usize) -> Polynomial {
    loop {
        let p = polynomial(rng, arity, max_degree, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random element of the free Poisson algebra with weighted degree at most
/// `max_weight`.
pub fn poisson_element(rng: &mut impl Rng, basis: &LieBasis, max_weight: u64, max_terms: usize) -> Polynomial {
    weighted_polynomial(rng, basis.degrees(), 0, max_weight, max_terms)
}

/// Random homogeneous Poisson element of weighted degree exactly `weight`.
pub fn homogeneous_poisson(rng: &mut impl Rng, basis: &LieBasis, weight: u64, max_terms: usize) -> Polynomial {
    weighted_polynomial(rng, basis.degrees(), weight, weight, max_terms)
}

/// Random element whose terms all have weighted degree `residue` modulo `d`,
/// with weighted degree at most `max_weight`.
pub fn in_component(
    rng: &mut impl Rng,
    weights: &[u32],
    d: u32,
    residue: u32,
    max_weight: u64,
    max_terms: usize,
) -> Polynomial {
    let arity = weights.len();
    let admissible: Vec<u64> = (0..=max_weight).filter(|w| w % d as u64 == residue as u64).collect();
    let mut p = Polynomial::zero(arity);
    if admissible.is_empty() {
        return p;
    }
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let w = *admissible.choose(rng).unwrap();
        if let Some(m) = Monomial::all_of_weight(weights, w).choose(rng) {
            p = &p + &Polynomial::monomial(arity, m.clone(), coefficient(rng));
        }
    }
    p
}

/// Images of `x1..xn` for a random `d`-graded derivation of `K[x1..xn]`
/// (each image in residue 1, degree at most `max_degree`).
pub fn graded_derivation(rng: &mut impl Rng, n: usize, d: u32, max_degree: u32) -> Vec<Polynomial> {
    let weights = vec![1; n];
    (0..n)
        .map(|_| {
            if rng.gen_bool(0.15) {
                Polynomial::zero(n)
            } else {
                in_component(rng, &weights, d, 1, max_degree as u64, 3)
            }
        })
        .collect()
}

/// Images of `x1..xn` for a random triangular `d`-graded derivation:
/// `S(x_i)` involves only `x_{i+1}, ..., x_n`, so `S` is locally nilpotent.
pub fn triangular_derivation(rng: &mut impl Rng, n: usize, d: u32, max_degree: u32) -> Vec<Polynomial> {
    (0..n)
        .map(|i| {
            let tail: Vec<u32> = (0..n).map(|j| if j > i { 1 } else { 0 }).collect();
            if i + 1 == n {
                Polynomial::zero(n)
            } else {
                in_component(rng, &tail, d, 1, max_degree as u64, 3)
            }
        })
        .collect()
}

/// A `d`-graded automorphism of `K[x1..xn]` with its inverse, as images of
/// the variables.
#[derive(Clone, Debug)]
pub struct GradedAutomorphism {
    pub images: Vec<Polynomial>,
    pub inverse: Vec<Polynomial>,
}

impl GradedAutomorphism {
    pub fn identity(n: usize) -> Self {
        let id: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
        GradedAutomorphism {
            images: id.clone(),
            inverse: id,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedAutomorphism) -> GradedAutomorphism {
        let images = other
            .images
            .iter()
            .map(|p| p.substitute(&self.images).expect("equal arity"))
            .collect();
        let inverse = self
            .inverse
            .iter()
            .map(|p| p.substitute(&other.inverse).expect("equal arity"))
            .collect();
        GradedAutomorphism { images, inverse }
    }

    pub fn degree(&self) -> u32 {
        self.images.iter().filter_map(|p| p.total_degree()).max().unwrap_or(0)
    }
}

/// One graded elementary step: a variable shift `x_i -> x_i + f` with `f`
/// in residue 1 not involving `x_i`, a rescaling, or a swap.
pub fn elementary_automorphism(rng: &mut impl Rng, n: usize, d: u32, max_degree: u32) -> GradedAutomorphism {
    let mut g = GradedAutomorphism::identity(n);
    match rng.gen_range(0..6) {
        0 => {
            let i = rng.gen_range(0..n);
            let c = coefficient(rng);
            g.images[i] = g.images[i].scale(&c);
            g.inverse[i] = g.inverse[i].scale(&num_traits::Inv::inv(c));
        }
        1 if n >= 2 => {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            g.images.swap(i, j);
            g.inverse.swap(i, j);
        }
        _ => {
            let i = rng.gen_range(0..n);
            let others: Vec<u32> = (0..n).map(|j| if j == i { 0 } else { 1 }).collect();
            let f = in_component(rng, &others, d, 1, max_degree as u64, 2);
            g.images[i] = &g.images[i] + &f;
            g.inverse[i] = &g.inverse[i] - &f;
        }
    }
    g
}

/// Composition of `steps` elementary graded automorphisms, resampled until
/// the total degree stays at most `max_degree`.
pub fn tame_automorphism(rng: &mut impl Rng, n: usize, d: u32, steps: usize, max_degree: u32) -> GradedAutomorphism {
    loop {
        let mut g = GradedAutomorphism::identity(n);
        for _ in 0..steps {
            g = g.compose(&elementary_automorphism(rng, n, d, max_degree));
        }
        if g.degree() <= max_degree {
            return g;
        }
    }
}
