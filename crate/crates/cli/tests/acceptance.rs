//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;

use rand::Rng;
use veronese_cli::parse::{parse_expression, print_expression};
use veronese_cli::report::{ElementJson, Payload, Report, Status};
use veronese_cli::run_args;
use veronese_core::checks::{self, SuiteSummary};
use veronese_core::lie::LieBasis;
use veronese_core::poly::{Polynomial, Scalar};
use veronese_core::random;
use veronese_core::veronese::{
    lift_automorphism, restrict_automorphism_with_inverse, verify_quotient_kernel, Context, GeneratorSet, LiftOptions,
};
use veronese_oracles::{lyndon_words_brute, necklace_count, oracle_bracket};

const SEED: u64 = 20_241_019;

type Verdict = Result<String, String>;

fn suite(s: SuiteSummary) -> Verdict {
    if s.passed() {
        Ok(format!("{} cases, {} checks", s.cases, s.checks))
    } else {
        Err(format!("{s}: {}", s.failures.join("; ")))
    }
}

fn lie_dimensions() -> Verdict {
    let mut compared = 0;
    for n in [2usize, 3] {
        let basis = LieBasis::new(n, 8).map_err(|e| e.to_string())?;
        for m in 1..=8usize {
            let words: Vec<Vec<u8>> = basis
                .elements()
                .iter()
                .filter(|e| e.degree() == m)
                .map(|e| e.word.clone())
                .collect();
            let expected = necklace_count(n as u64, m as u64) as usize;
            if words.len() != expected {
                return Err(format!("n={n}, degree {m}: {} basis elements, oracle says {expected}", words.len()));
            }
            let mut brute = lyndon_words_brute(n, m);
            brute.sort();
            let mut ours = words;
            ours.sort();
            if ours != brute {
                return Err(format!("n={n}, degree {m}: words differ from the brute-force list"));
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} (n, degree) counts match"))
}

fn lie_brackets() -> Verdict {
    let mut pairs = 0;
    for n in [2usize, 3] {
        let basis = LieBasis::new(n, 6).map_err(|e| e.to_string())?;
        let index: BTreeMap<Vec<u8>, usize> = basis.elements().iter().map(|e| (e.word.clone(), e.index)).collect();
        for a in basis.elements() {
            for b in basis.elements() {
                if a.degree() + b.degree() > 6 {
                    continue;
                }
                let ours: BTreeMap<usize, Scalar> = basis
                    .bracket(a.index, b.index)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .cloned()
                    .collect();
                let oracle: BTreeMap<usize, Scalar> = oracle_bracket(&a.word, &b.word, n)
                    .into_iter()
                    .map(|(w, c)| (index[&w], c))
                    .collect();
                if ours != oracle {
                    return Err(format!("n={n}: [{}, {}] differs from the oracle", basis.name(a.index), basis.name(b.index)));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} basis pairs match"))
}

fn derivation_roundtrips() -> Verdict {
    let poly = suite(checks::derivation_roundtrip(SEED, 100))?;
    let poisson = suite(checks::poisson_derivation_roundtrip(SEED, 30))?;
    Ok(format!("polynomial: {poly}; Poisson (bound 6): {poisson}"))
}

/// Criteria 8 and 9 share their cases.
struct AutomorphismCase {
    n: usize,
    d: u32,
    beta: Vec<Polynomial>,
    map: veronese_core::veronese::VeroneseAutomorphism,
}

fn automorphism_cases() -> Vec<AutomorphismCase> {
    let mut rng = random::rng(SEED);
    (0..50)
        .map(|_| {
            let n = rng.gen_range(2..=3usize);
            let d = rng.gen_range(2..=3u32);
            let steps = rng.gen_range(1..=3usize);
            let beta = random::tame_automorphism(&mut rng, n, d, steps, 5);
            let gens = Arc::new(GeneratorSet::build(Context::polynomial(n).unwrap(), d).unwrap());
            let map = restrict_automorphism_with_inverse(gens, &beta.images, &beta.inverse).unwrap();
            AutomorphismCase {
                n,
                d,
                beta: beta.images,
                map,
            }
        })
        .collect()
}

fn is_root_of_unity(lambda: &Scalar, d: u32) -> bool {
    num_traits::One::is_one(&num_traits::pow(lambda.clone(), d as usize))
}

fn automorphism_lifts(cases: &[AutomorphismCase]) -> Verdict {
    let mut odd = 0;
    for (k, c) in cases.iter().enumerate() {
        let lift = lift_automorphism(&c.map, LiftOptions::default())
            .map_err(|e| format!("case {k}: {e}"))?
            .into_lift()
            .map_err(|o| format!("case {k} (n={}, d={}): {}: {}", c.n, c.d, o.reason, o.message))?;
        let images = lift.generator_images();
        let (m, coef) = c.beta[0].leading_term().unwrap();
        let lambda = images[0].coefficient(m) / coef;
        if images.iter().zip(&c.beta).any(|(img, b)| img != &b.scale(&lambda)) {
            return Err(format!("case {k}: lift is not a scalar multiple of beta"));
        }
        if !is_root_of_unity(&lambda, c.d) {
            return Err(format!("case {k}: lambda = {lambda}, lambda^{} != 1", c.d));
        }
        if c.d % 2 == 1 {
            if !num_traits::One::is_one(&lambda) {
                return Err(format!("case {k}: lambda = {lambda} for odd d"));
            }
            odd += 1;
        }
    }
    Ok(format!("{} automorphisms lift to lambda * beta ({odd} with odd d, all lambda = 1)", cases.len()))
}

/// Flipping the sign convention on one side multiplies the composite by
/// `-1`; with matching conventions the composite is `id` or `-id`.
fn kernels(cases: &[AutomorphismCase]) -> Verdict {
    let mut flipped = 0;
    let mut minus = 0;
    for (k, c) in cases.iter().enumerate() {
        let report = verify_quotient_kernel(&c.map, LiftOptions::default(), LiftOptions::default())
            .map_err(|e| format!("case {k}: {e}"))?;
        if !is_root_of_unity(&report.lambda, c.d) {
            return Err(format!("case {k}: lambda = {}", report.lambda));
        }
        if c.d % 2 == 0 {
            let other = verify_quotient_kernel(&c.map, LiftOptions::default(), LiftOptions::negative())
                .map_err(|e| format!("case {k}: {e}"))?;
            if report.lambda != veronese_core::poly::scalar(1) {
                minus += 1;
            }
            if other.lambda != -&report.lambda {
                return Err(format!(
                    "case {k}: lambda = {} with matching signs, {} with a flipped sign",
                    report.lambda, other.lambda
                ));
            }
            flipped += 1;
        }
    }
    let (x, y) = (Polynomial::var(2, 0), Polynomial::var(2, 1));
    let gens = Arc::new(GeneratorSet::build(Context::polynomial(2).unwrap(), 2).unwrap());
    let map = restrict_automorphism_with_inverse(gens, &[x.clone(), &y + &x], &[x.clone(), &y - &x])
        .map_err(|e| e.to_string())?;
    let same = verify_quotient_kernel(&map, LiftOptions::default(), LiftOptions::default()).map_err(|e| e.to_string())?;
    let flip = verify_quotient_kernel(&map, LiftOptions::default(), LiftOptions::negative()).map_err(|e| e.to_string())?;
    if same.lambda != veronese_core::poly::scalar(1) || flip.lambda != veronese_core::poly::scalar(-1) {
        return Err(format!("(x, y + x): lambda = {} and {} after flipping", same.lambda, flip.lambda));
    }
    Ok(format!(
        "{} kernels scalar ({minus} equal to -id), {flipped} sign flips multiply lambda by -1",
        cases.len()
    ))
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn negative_golden() -> Verdict {
    let cases = [
        ("lift-derivation", "kx_derivation.map", "NotDivisible"),
        ("lift-automorphism", "kx_automorphism.map", "SingleVariable"),
        ("lift-automorphism", "scale_by_two.map", "NoRationalDthRoot"),
    ];
    for (command, file, reason) in cases {
        let out = run_args(["veronese", command, &data(file)]);
        if out.code != 2 {
            return Err(format!("{command} {file}: exit {}", out.code));
        }
        match out.report.map(|r| r.payload) {
            Some(Payload::Obstruction { reason: r, message, .. }) if r == reason => {
                if reason == "SingleVariable" && !message.contains("at least two variables") {
                    return Err(format!("{file}: explanation missing: {message}"));
                }
            }
            other => return Err(format!("{command} {file}: {other:?}")),
        }
    }
    Ok("three inputs exit 2 with the expected reasons".to_string())
}

fn fuzz_contexts() -> Vec<Context> {
    let mut out = vec![
        Context::polynomial(1).unwrap(),
        Context::polynomial(2).unwrap(),
        Context::polynomial(3).unwrap(),
    ];
    for n in [2, 3] {
        out.push(Context::poisson(LieBasis::shared(n, 6).unwrap()));
    }
    out
}

fn round_trips() -> Verdict {
    let contexts = fuzz_contexts();
    let mut rng = random::rng(SEED);
    let mut reports = 0;
    for k in 0..500 {
        let ctx = &contexts[k % contexts.len()];
        let p = match ctx.basis() {
            Some(basis) => random::poisson_element(&mut rng, basis, 6, 5),
            None => random::polynomial(&mut rng, ctx.arity(), 6, 5),
        };
        let text = print_expression(&p, ctx);
        let back = parse_expression(&text, ctx).map_err(|e| format!("'{text}': {e}"))?;
        if back != p {
            return Err(format!("'{text}' parses to {}", print_expression(&back, ctx)));
        }
        let element = ElementJson::new(&p, ctx);
        let report = Report {
            command: "bracket".to_string(),
            status: Status::Ok,
            context: None,
            input: vec![text.clone()],
            payload: Payload::Element { value: element },
            elapsed_us: k as u64,
        };
        let reparsed = Report::from_json(&report.to_json()).map_err(|e| e.to_string())?;
        if reparsed != report {
            return Err(format!("report for '{text}' changes on re-parsing"));
        }
        match &reparsed.payload {
            Payload::Element { value } if value.to_polynomial().as_ref() == Ok(&p) => {}
            _ => return Err(format!("terms of '{text}' do not rebuild the element")),
        }
        reports += 1;
    }
    let invocations: [&[&str]; 4] = [
        &["veronese", "--format", "json", "lift-automorphism", &data("poisson_shift.map")],
        &["veronese", "--format", "json", "lift-derivation", &data("kx_derivation.map")],
        &["veronese", "--format", "json", "check-lnd", &data("triangular.map")],
        &["veronese", "--format", "json", "verify-kernel", &data("elementary.map")],
    ];
    for args in invocations {
        let out = run_args(args.iter().copied());
        let report = out.report.ok_or("no report")?;
        if Report::from_json(&out.stdout).map_err(|e| e.to_string())? != report {
            return Err(format!("{} report changes on re-parsing", args[3]));
        }
        reports += 1;
    }
    Ok(format!("500 expressions, {reports} reports"))
}

fn main() {
    let automorphisms = automorphism_cases();
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("Lie dimensions against necklace counts", Box::new(lie_dimensions)),
        ("Lie brackets against the associative oracle", Box::new(lie_brackets)),
        ("Poisson axioms on 500 triples", Box::new(|| suite(checks::poisson_axioms(SEED, 500)))),
        ("grading of elements, products and brackets", Box::new(|| suite(checks::grading(SEED, 500)))),
        ("derivation law on 200 fraction pairs", Box::new(|| suite(checks::fraction_law(SEED, 200)))),
        ("derivation lift roundtrips", Box::new(derivation_roundtrips)),
        ("locally nilpotent lifts and the Euler derivation", Box::new(|| suite(checks::lnd(SEED, 20)))),
        ("automorphism lifts on 50 tame maps", Box::new(|| automorphism_lifts(&automorphisms))),
        ("kernel of the lifting map and sign flips", Box::new(|| kernels(&automorphisms))),
        ("negative golden inputs exit 2", Box::new(negative_golden)),
        ("print/parse and report round trips", Box::new(round_trips)),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail})", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
