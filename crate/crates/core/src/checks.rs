//! Seeded property suites over the whole kernel.
//!
//! Each suite samples its inputs from a seeded generator and returns a
//! [`SuiteSummary`] listing every failing case; the command-line selftest and
//! the acceptance tests both run them.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use crate::lie::LieBasis;
use crate::poisson::{self, PoissonDerivation, PoissonElement, PoissonFraction};
use crate::poly::{scalar, Polynomial, Scalar};
use crate::random;
use crate::veronese::{
    check_locally_nilpotent, lift_automorphism, lift_derivation, restrict_automorphism_with_inverse,
    restrict_derivation, verify_quotient_kernel, Context, GeneratorSet, LiftOptions, LndVerdict,
    ObstructionReason, VeroneseAutomorphism, VeroneseDerivation, DEFAULT_LND_CAP,
};

#[derive(Clone, Debug)]
pub struct SuiteSummary {
    pub name: &'static str,
    pub cases: usize,
    /// Secondary count, e.g. checked bracket pairs.
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteSummary {
    fn new(name: &'static str) -> Self {
        SuiteSummary {
            name,
            cases: 0,
            checks: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        } else if self.failures.len() == 20 {
            self.failures.push("further failures omitted".to_string());
        }
    }
}

impl fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} cases, {} checks)",
            self.name,
            if self.passed() { "ok" } else { "FAILED" },
            self.cases,
            self.checks
        )?;
        for msg in &self.failures {
            write!(f, "\n  {msg}")?;
        }
        Ok(())
    }
}

fn bases() -> (Arc<LieBasis>, Arc<LieBasis>) {
    (
        LieBasis::shared(2, 6).expect("valid table"),
        LieBasis::shared(3, 6).expect("valid table"),
    )
}

/// Weights `(a, b, c)`, each at least 1, summing to at most `bound`.
fn weight_triple(rng: &mut impl Rng, bound: u64) -> (u64, u64, u64) {
    let a = rng.gen_range(1..=bound - 2);
    let b = rng.gen_range(1..=bound - 1 - a);
    let c = rng.gen_range(1..=bound - a - b);
    (a, b, c)
}

/// Jacobi, Leibniz and antisymmetry on random triples; degree additivity of
/// nonzero brackets of homogeneous pairs.
pub fn poisson_axioms(seed: u64, cases: usize) -> SuiteSummary {
    let mut s = SuiteSummary::new("poisson axioms");
    let mut rng = random::rng(seed);
    let (b2, b3) = bases();
    for case in 0..cases {
        let basis = if rng.gen_bool(0.5) { &b2 } else { &b3 };
        let (wa, wb, wc) = weight_triple(&mut rng, basis.bound() as u64);
        let f = random::poisson_element(&mut rng, basis, wa, 3);
        let g = random::poisson_element(&mut rng, basis, wb, 3);
        let h = random::poisson_element(&mut rng, basis, wc, 3);
        let br = |p: &Polynomial, q: &Polynomial| poisson::bracket(basis, p, q).expect("within table");
        let jacobi = &(&br(&f, &br(&g, &h)) + &br(&g, &br(&h, &f))) + &br(&h, &br(&f, &g));
        if !jacobi.is_zero() {
            s.fail(format!("case {case}: Jacobi fails for n={}", basis.n()));
        }
        let leibniz = &br(&f, &(&g * &h)) - &(&(&br(&f, &g) * &h) + &(&g * &br(&f, &h)));
        if !leibniz.is_zero() {
            s.fail(format!("case {case}: Leibniz fails"));
        }
        if br(&f, &g) != -&br(&g, &f) {
            s.fail(format!("case {case}: antisymmetry fails"));
        }
        s.checks += 3;

        let (wa, wb) = (rng.gen_range(1..=3u64), rng.gen_range(1..=3u64));
        let p = random::homogeneous_poisson(&mut rng, basis, wa, 3);
        let q = random::homogeneous_poisson(&mut rng, basis, wb, 3);
        let pq = br(&p, &q);
        if !pq.is_zero() {
            let degrees = basis.degrees();
            if pq.terms().any(|(m, _)| m.weighted_degree(degrees) != wa + wb) {
                s.fail(format!("case {case}: bracket of weights {wa}, {wb} is not homogeneous of weight {}", wa + wb));
            }
            s.checks += 1;
        }
        s.cases += 1;
    }
    s
}

/// Grading of polynomials and Poisson elements: parts reconstruct the input,
/// lie in their components, and products and brackets add residues.
pub fn grading(seed: u64, cases: usize) -> SuiteSummary {
    let mut s = SuiteSummary::new("grading");
    let mut rng = random::rng(seed);
    let (b2, b3) = bases();
    for case in 0..cases {
        let d = rng.gen_range(2..=3u32);
        let p = random::polynomial(&mut rng, 3, 6, 5);
        let parts = p.grade(d).expect("d >= 2");
        if parts.sum() != p {
            s.fail(format!("case {case}: polynomial parts do not sum to the input"));
        }
        for (i, part) in parts.parts().iter().enumerate() {
            if part.terms().any(|(m, _)| m.total_degree() % d != i as u32) {
                s.fail(format!("case {case}: part {i} has a term of the wrong degree"));
            }
        }

        let basis = if rng.gen_bool(0.5) { &b2 } else { &b3 };
        let e = PoissonElement::new(basis.clone(), random::poisson_element(&mut rng, basis, 6, 5)).unwrap();
        let eparts = e.grade(d).expect("d >= 2");
        let total = eparts
            .iter()
            .fold(PoissonElement::zero(basis.clone()), |acc, x| &acc + x);
        if total != e {
            s.fail(format!("case {case}: Poisson parts do not sum to the input"));
        }
        for (i, part) in eparts.iter().enumerate() {
            if !part.is_d_homogeneous(d, i as u32) {
                s.fail(format!("case {case}: Poisson part {i} leaves its component"));
            }
        }

        let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
        let pi = random::in_component(&mut rng, basis.degrees(), d, i, 3, 3);
        let qj = random::in_component(&mut rng, basis.degrees(), d, j, 3, 3);
        let target = (i + j) % d;
        if !(&pi * &qj).in_component(d, target, basis.degrees()) {
            s.fail(format!("case {case}: product of components {i}, {j} leaves component {target}"));
        }
        let b = poisson::bracket(basis, &pi, &qj).expect("within table");
        if !b.in_component(d, target, basis.degrees()) {
            s.fail(format!("case {case}: bracket of components {i}, {j} leaves component {target}"));
        }
        s.checks += 4;
        s.cases += 1;
    }
    s
}

/// The extension of a Poisson derivation to fractions is a derivation of
/// the fraction bracket.
pub fn fraction_law(seed: u64, cases: usize) -> SuiteSummary {
    let mut s = SuiteSummary::new("fraction derivation law");
    let mut rng = random::rng(seed);
    let basis = LieBasis::shared(2, 6).expect("valid table");
    let el = |p: Polynomial| PoissonElement::new(basis.clone(), p).unwrap();
    for case in 0..cases {
        // degree-preserving derivation keeps every image inside the table
        let images: Vec<Polynomial> = (0..2)
            .map(|_| random::weighted_polynomial(&mut rng, basis.degrees(), 1, 1, 2))
            .collect();
        let der = PoissonDerivation::from_generators(basis.clone(), &images).unwrap();
        let nonzero = |rng: &mut rand::rngs::StdRng| loop {
            let p = random::poisson_element(rng, &basis, 2, 3);
            if !p.is_zero() {
                return p;
            }
        };
        let f = PoissonFraction::new(el(nonzero(&mut rng)), el(nonzero(&mut rng))).unwrap();
        let g = PoissonFraction::new(el(nonzero(&mut rng)), el(nonzero(&mut rng))).unwrap();
        let check = || -> Result<bool, poisson::PoissonError> {
            let lhs = der.apply_fraction(&f.bracket(&g)?)?;
            let rhs = der
                .apply_fraction(&f)?
                .bracket(&g)?
                .add(&f.bracket(&der.apply_fraction(&g)?)?)?;
            Ok(lhs.cross_equal(&rhs))
        };
        s.checks += 1;
        match check() {
            Ok(true) => {}
            Ok(false) => s.fail(format!("case {case}: S{{F,G}} != {{SF,G}} + {{F,SG}} for F = {f}, G = {g}")),
            Err(e) => s.fail(format!("case {case}: {e}")),
        }
        s.cases += 1;
    }
    s
}

/// `lift_derivation(restrict(S)) = S` for random `d`-graded derivations of
/// `K[x1..xn]`, `n, d` in `{2, 3}`.
pub fn derivation_roundtrip(seed: u64, cases: usize) -> SuiteSummary {
    let mut s = SuiteSummary::new("derivation roundtrip");
    let mut rng = random::rng(seed);
    for case in 0..cases {
        let n = rng.gen_range(2..=3usize);
        let d = rng.gen_range(2..=3u32);
        let images = random::graded_derivation(&mut rng, n, d, 2 * d + 1);
        let gens = Arc::new(GeneratorSet::build(Context::polynomial(n).unwrap(), d).unwrap());
        let result = restrict_derivation(gens, &images).and_then(|map| {
            let first = lift_derivation(&map)?;
            let second = lift_derivation(&map)?;
            Ok((first, second))
        });
        match result {
            Ok((first, second)) => match (first.lift(), second.lift()) {
                (Some(a), Some(b)) => {
                    if a.generator_images() != images {
                        s.fail(format!("case {case} (n={n}, d={d}): lift differs from the original"));
                    }
                    if a.images != b.images {
                        s.fail(format!("case {case}: two lifts of one map differ"));
                    }
                    s.checks += a.verification.generators_checked;
                }
                _ => s.fail(format!(
                    "case {case} (n={n}, d={d}): obstructed: {:?}",
                    first.obstruction().map(|o| &o.message)
                )),
            },
            Err(e) => s.fail(format!("case {case}: {e}")),
        }
        s.cases += 1;
    }
    s
}

/// The derivation roundtrip in the free Poisson algebra on two generators
/// with table bound 6, including the bracket law on all in-bound pairs.
pub fn poisson_derivation_roundtrip(seed: u64, cases: usize) -> SuiteSummary {
    let mut s = SuiteSummary::new("Poisson derivation roundtrip");
    let mut rng = random::rng(seed);
    let basis = LieBasis::shared(2, 6).expect("valid table");
    for case in 0..cases {
        let (d, generator_bound, max_weight) = match rng.gen_range(0..3) {
            0 => (2, 6, 1),
            1 => (3, 6, 1),
            _ => (2, 4, 3),
        };
        let ctx = Context::poisson_with_generator_bound(basis.clone(), generator_bound).unwrap();
        let images: Vec<Polynomial> = (0..2)
            .map(|_| random::in_component(&mut rng, basis.degrees(), d, 1, max_weight, 3))
            .collect();
        let gens = Arc::new(GeneratorSet::build(ctx.clone(), d).unwrap());
        let outcome = restrict_derivation(gens, &images).and_then(|map| lift_derivation(&map));
        match outcome {
            Ok(out) => match out.lift() {
                Some(lift) => {
                    let expected = ctx.extend_derivation(&images).unwrap();
                    if lift.generator_images() != images {
                        s.fail(format!("case {case}: generator images differ"));
                    }
                    for (j, img) in lift.images.iter().enumerate() {
                        if let (Some(a), Some(b)) = (img, &expected[j]) {
                            if a != b {
                                s.fail(format!("case {case}: image of {} differs", basis.name(j)));
                            }
                        }
                    }
                    s.checks += lift.verification.bracket_pairs_checked;
                }
                None => s.fail(format!("case {case}: obstructed: {}", out.obstruction().unwrap().message)),
            },
            Err(e) => s.fail(format!("case {case}: {e}")),
        }
        s.cases += 1;
    }
    s
}

/// Lifts of restricted triangular derivations are locally nilpotent; the
/// Euler derivation is not.
pub fn lnd(seed: u64, cases: usize) -> SuiteSummary {
    let mut s = SuiteSummary::new("locally nilpotent lifts");
    let mut rng = random::rng(seed);
    for case in 0..cases {
        let n = rng.gen_range(2..=3usize);
        let d = rng.gen_range(2..=3u32);
        let images = random::triangular_derivation(&mut rng, n, d, 2 * d + 1);
        s.checks += 1;
        match lnd_verdict(n, d, &images) {
            Ok(LndVerdict::LocallyNilpotent) => {}
            Ok(v) => s.fail(format!("case {case}: verdict {v:?}")),
            Err(e) => s.fail(format!("case {case}: {e}")),
        }
        s.cases += 1;
    }
    let euler: Vec<Polynomial> = (0..2).map(|i| Polynomial::var(2, i)).collect();
    match lnd_verdict(2, 2, &euler) {
        Ok(LndVerdict::NotNilpotent { .. }) => {}
        other => s.fail(format!("Euler derivation: {other:?}")),
    }
    s.checks += 1;
    s
}

fn lnd_verdict(n: usize, d: u32, images: &[Polynomial]) -> Result<LndVerdict, String> {
    let gens = Arc::new(GeneratorSet::build(Context::polynomial(n).unwrap(), d).unwrap());
    let map = restrict_derivation(gens, images).map_err(|e| e.to_string())?;
    let lift = lift_derivation(&map)
        .map_err(|e| e.to_string())?
        .into_lift()
        .map_err(|o| o.message)?;
    let report = check_locally_nilpotent(&lift, DEFAULT_LND_CAP).map_err(|e| e.to_string())?;
    Ok(report.verdict)
}

/// Lifting restrictions of random tame `d`-graded automorphisms of degree at
/// most 5 returns `lambda * beta`, and composing with the lifted inverse
/// gives `lambda * id` with `lambda^d = 1`; flipping the sign convention on
/// one side gives `lambda = -1` for even `d`.
pub fn automorphism_roundtrip(seed: u64, cases: usize) -> SuiteSummary {
    let mut s = SuiteSummary::new("automorphism roundtrip and kernel");
    let mut rng = random::rng(seed);
    for case in 0..cases {
        let n = rng.gen_range(2..=3usize);
        let d = rng.gen_range(2..=3u32);
        let steps = rng.gen_range(1..=3usize);
        let beta = random::tame_automorphism(&mut rng, n, d, steps, 5);
        let gens = Arc::new(GeneratorSet::build(Context::polynomial(n).unwrap(), d).unwrap());
        let map = match restrict_automorphism_with_inverse(gens, &beta.images, &beta.inverse) {
            Ok(m) => m,
            Err(e) => {
                s.fail(format!("case {case}: {e}"));
                continue;
            }
        };
        if let Err(msg) = automorphism_case(&map, &beta.images, d) {
            s.fail(format!("case {case} (n={n}, d={d}): {msg}"));
        }
        s.checks += 2 + usize::from(d % 2 == 0);
        s.cases += 1;
    }
    s
}

fn automorphism_case(map: &VeroneseAutomorphism, beta: &[Polynomial], d: u32) -> Result<(), String> {
    let lift = lift_automorphism(map, LiftOptions::default())
        .map_err(|e| e.to_string())?
        .into_lift()
        .map_err(|o| format!("{}: {}", o.reason, o.message))?;
    let images = lift.generator_images();
    let lambda = scalar_ratio(&images[0], &beta[0]).ok_or("first image is not a multiple of beta(x1)")?;
    if !num_traits::pow(lambda.clone(), d as usize).is_one() {
        return Err(format!("lambda = {lambda} but lambda^{d} != 1"));
    }
    if d % 2 == 1 && !lambda.is_one() {
        return Err(format!("lambda = {lambda} for odd d"));
    }
    for (img, b) in images.iter().zip(beta) {
        if img != &b.scale(&lambda) {
            return Err("lift is not lambda * beta".to_string());
        }
    }
    let report = verify_quotient_kernel(map, LiftOptions::default(), LiftOptions::default()).map_err(|e| e.to_string())?;
    if !num_traits::pow(report.lambda.clone(), d as usize).is_one() || (d % 2 == 1 && !report.lambda.is_one()) {
        return Err(format!("kernel lambda = {}", report.lambda));
    }
    if d % 2 == 0 {
        let flipped =
            verify_quotient_kernel(map, LiftOptions::default(), LiftOptions::negative()).map_err(|e| e.to_string())?;
        if flipped.lambda != -&report.lambda {
            return Err(format!("flipped sign gives lambda = {}", flipped.lambda));
        }
    }
    Ok(())
}

fn scalar_ratio(p: &Polynomial, q: &Polynomial) -> Option<Scalar> {
    let (m, c) = q.leading_term()?;
    let r = p.coefficient(m) / c;
    if r.is_zero() || p != &q.scale(&r) {
        None
    } else {
        Some(r)
    }
}

/// The one-variable counterexamples and the scaling-by-2 map are obstructed.
pub fn negative_cases() -> SuiteSummary {
    let mut s = SuiteSummary::new("obstructed inputs");
    for d in 2..=3 {
        let gens = Arc::new(GeneratorSet::build(Context::polynomial(1).unwrap(), d).unwrap());
        let der = VeroneseDerivation::new(gens.clone(), vec![Polynomial::one(1)]).unwrap();
        match lift_derivation(&der).map(|o| o.obstruction().map(|o| o.reason)) {
            Ok(Some(ObstructionReason::NotDivisible)) => {}
            other => s.fail(format!("x^{d} -> 1: {other:?}")),
        }
        let shifted = &Polynomial::var(1, 0).pow(d) + &Polynomial::one(1);
        let aut = VeroneseAutomorphism::new(gens, vec![shifted]).unwrap();
        match lift_automorphism(&aut, LiftOptions::default()).map(|o| o.obstruction().map(|o| o.reason)) {
            Ok(Some(ObstructionReason::SingleVariable)) => {}
            other => s.fail(format!("x^{d} -> x^{d} + 1: {other:?}")),
        }
        s.cases += 2;
        s.checks += 2;
    }
    let gens = Arc::new(GeneratorSet::build(Context::polynomial(2).unwrap(), 2).unwrap());
    let images = (0..gens.len()).map(|i| gens.generator_poly(i).scale(&scalar(2))).collect();
    let aut = VeroneseAutomorphism::new(gens, images).unwrap();
    match lift_automorphism(&aut, LiftOptions::default()).map(|o| o.obstruction().map(|o| o.reason)) {
        Ok(Some(ObstructionReason::NoRationalDthRoot)) => {}
        other => s.fail(format!("scaling by 2: {other:?}")),
    }
    s.cases += 1;
    s.checks += 1;
    s
}

/// Every suite at modest sizes.
pub fn run_all(seed: u64) -> Vec<SuiteSummary> {
    vec![
        poisson_axioms(seed, 100),
        grading(seed, 100),
        fraction_law(seed, 40),
        derivation_roundtrip(seed, 40),
        poisson_derivation_roundtrip(seed, 10),
        lnd(seed, 20),
        automorphism_roundtrip(seed, 20),
        negative_cases(),
    ]
}
