use num_traits::{One, Signed, Zero};

use crate::poly::{rational_root, reduce_fraction, Monomial, PolyError, Polynomial, Scalar};

use super::derivation::is_overflow;
use super::maps::{check_relations, VeroneseAutomorphism};
use super::{
    Context, ImageSource, Lift, LiftKind, LiftOutcome, Normalization, Obstruction, ObstructionReason,
    Verification, VeroneseError,
};

/// Which of the `d`-th roots `±mu` scales `f1`. The two choices differ by
/// the scalar automorphism `-id` when `d` is even and coincide otherwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignConvention {
    #[default]
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LiftOptions {
    pub sign: SignConvention,
}

impl LiftOptions {
    pub fn negative() -> Self {
        LiftOptions {
            sign: SignConvention::Negative,
        }
    }
}

/// Result of composing the lifts of an automorphism and of its inverse.
#[derive(Clone, Debug)]
pub struct KernelReport {
    /// The composite is `x_i -> lambda x_i`.
    pub lambda: Scalar,
    pub forward: Lift,
    pub inverse: Lift,
    pub indeterminates_checked: usize,
}

fn obstructed(o: Obstruction) -> Result<LiftOutcome, VeroneseError> {
    Ok(LiftOutcome::Obstructed(o))
}

/// Lifts an automorphism of the Veronese subalgebra to a `d`-graded
/// automorphism of the ambient algebra.
///
/// `f2 / f1` is the reduced form of `alpha(x2 x1^(d-1)) / alpha(x1^d)`; the
/// quotient `v = alpha(x1^d) / f1^d` must be a scalar with a rational `d`-th
/// root `mu`, and `f1` is rescaled by `mu`. Every other indeterminate `e` of
/// weight `s` is recovered as `alpha(e x1^k) / f1^k` with `k = -s mod d`, or
/// from the bracket law past the generator bound.
pub fn lift_automorphism(map: &VeroneseAutomorphism, options: LiftOptions) -> Result<LiftOutcome, VeroneseError> {
    let gens = map.generators();
    let ctx = gens.context();
    let d = gens.d();
    let arity = ctx.arity();
    if ctx.n() < 2 {
        return obstructed(Obstruction::new(
            ObstructionReason::SingleVariable,
            "lifting needs at least two variables: in one variable x^d -> x^d + 1 is an automorphism of the \
             subalgebra induced by no automorphism of K[x]",
        ));
    }
    if let Err(obs) = check_relations(map) {
        return obstructed(obs);
    }
    if let Some(obs) = check_injective(map)? {
        return obstructed(obs);
    }

    let x1 = Monomial::var(0);
    let x2 = Monomial::var(1);
    let a = map.eval_monomial(&x1.pow(d))?;
    let b = map.eval_monomial(&x2.mul(&x1.pow(d - 1)))?;
    let ratio = reduce_fraction(&b, &a)?;
    let f1 = ratio.den().clone();
    let v = match a.divide_exact(&f1.pow(d)) {
        Ok(v) => v,
        Err(PolyError::NotDivisible { .. }) => {
            let msg = format!(
                "image of x1^{d} is not divisible by the {d}-th power of {}",
                ctx.format(&f1)
            );
            return obstructed(
                Obstruction::new(ObstructionReason::NotDivisible, msg)
                    .with("numerator", a)
                    .with("denominator", f1.pow(d)),
            );
        }
        Err(e) => return Err(e.into()),
    };
    let v_scalar = match v.constant_value() {
        Some(c) if !c.is_zero() => c,
        _ => {
            let msg = format!(
                "image of x1^{d} is ({}) * ({})^{d} with a non-constant factor",
                ctx.format(&v),
                ctx.format(&f1)
            );
            return obstructed(
                Obstruction::new(ObstructionReason::UnitNotConstant, msg)
                    .with("v", v)
                    .with("f1", f1),
            );
        }
    };
    let mut mu = match rational_root(&v_scalar, d) {
        Some(mu) => mu,
        None => {
            let msg = format!("no rational mu satisfies mu^{d} = {v_scalar}");
            return obstructed(
                Obstruction::new(ObstructionReason::NoRationalDthRoot, msg)
                    .with("f1", f1)
                    .with_scalar(v_scalar),
            );
        }
    };
    let mut lambda = Scalar::one();
    if options.sign == SignConvention::Negative && d % 2 == 0 {
        mu = -mu;
        lambda = -lambda;
    }
    let f1 = f1.scale(&mu);

    let mut images: Vec<Option<Polynomial>> = vec![None; arity];
    let mut sources = vec![ImageSource::Undetermined; arity];
    images[0] = Some(f1.clone());
    sources[0] = ImageSource::PowerDivision;
    for j in 1..arity {
        let s = ctx.weight(j) as u64;
        let k = ((d as u64 - s % d as u64) % d as u64) as u32;
        if ctx.within_generator_bound(s + k as u64) {
            let ej = Monomial::var(j as u32);
            let num = map.eval_monomial(&ej.mul(&x1.pow(k)))?;
            let den = f1.pow(k);
            match num.divide_exact(&den) {
                Ok(q) => images[j] = Some(q),
                Err(PolyError::NotDivisible { .. }) => {
                    let reduced = reduce_fraction(&num, &den)?;
                    let msg = format!(
                        "image of {} reduces to ({}) / ({}), not a polynomial",
                        ctx.var_name(j),
                        ctx.format(reduced.num()),
                        ctx.format(reduced.den())
                    );
                    let (rn, rd) = reduced.into_parts();
                    return obstructed(
                        Obstruction::new(ObstructionReason::NotDivisible, msg)
                            .with("numerator", num)
                            .with("denominator", den)
                            .with("reduced_numerator", rn)
                            .with("reduced_denominator", rd),
                    );
                }
                Err(e) => return Err(e.into()),
            }
            sources[j] = if k == 0 {
                ImageSource::Generator
            } else {
                ImageSource::MixedDivision
            };
        } else if let Some(basis) = ctx.basis() {
            let (u, v) = basis.element(j).factors.expect("letters are within the bound");
            if let (Some(fu), Some(fv)) = (&images[u], &images[v]) {
                match ctx.bracket(fu, fv) {
                    Ok(f) => {
                        images[j] = Some(f);
                        sources[j] = ImageSource::BracketLaw;
                    }
                    Err(e) if is_overflow(&e) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }

    for (j, img) in images.iter().enumerate() {
        if let Some(img) = img {
            let residue = ctx.weight(j) % d;
            if img.is_zero() || !ctx.in_component(img, d, residue) {
                let msg = format!(
                    "image of {} is not a nonzero element of graded component {residue}: {}",
                    ctx.var_name(j),
                    ctx.format(img)
                );
                return obstructed(Obstruction::new(ObstructionReason::NotGraded, msg).with("image", img.clone()));
            }
        }
    }

    let mut verification = Verification::default();
    for i in 0..gens.len() {
        let y = gens.generator_poly(i);
        match ctx.apply_morphism(&images, &y) {
            Ok(value) => {
                if &value != map.image(i) {
                    let msg = format!(
                        "lift gives {} on {}, expected {}",
                        ctx.format(&value),
                        gens.name(i),
                        ctx.format(map.image(i))
                    );
                    return obstructed(
                        Obstruction::new(ObstructionReason::RelationInconsistent, msg)
                            .with("lifted", value)
                            .with("expected", map.image(i).clone()),
                    );
                }
                verification.generators_checked += 1;
            }
            Err(e) if is_overflow(&e) => verification.generators_skipped += 1,
            Err(e) => return Err(e),
        }
    }

    if ctx.is_poisson() {
        if let Some(obs) = verify_morphism_bracket_law(ctx, &images, &mut verification)? {
            return obstructed(obs);
        }
    }

    Ok(LiftOutcome::Lifted(Lift {
        kind: LiftKind::Automorphism,
        context: ctx.clone(),
        d,
        images,
        sources,
        normalization: Some(Normalization {
            v: v_scalar,
            mu,
            lambda,
        }),
        verification,
    }))
}

/// Images must be nonzero and pairwise distinct; with an inverse supplied,
/// the inverse must undo the map on every generator it can evaluate.
fn check_injective(map: &VeroneseAutomorphism) -> Result<Option<Obstruction>, VeroneseError> {
    let gens = map.generators();
    let ctx = gens.context();
    for i in 0..gens.len() {
        if map.image(i).is_zero() {
            let msg = format!("{} maps to zero", gens.name(i));
            return Ok(Some(Obstruction::new(ObstructionReason::NotInjectiveOnGenerators, msg)));
        }
        for j in 0..i {
            if map.image(i) == map.image(j) {
                let msg = format!("{} and {} share the image {}", gens.name(j), gens.name(i), ctx.format(map.image(i)));
                return Ok(Some(
                    Obstruction::new(ObstructionReason::NotInjectiveOnGenerators, msg).with("image", map.image(i).clone()),
                ));
            }
        }
    }
    if let Some(inv) = map.inverse() {
        for i in 0..gens.len() {
            let back = match inv.apply(map.image(i)) {
                Ok(p) => p,
                Err(VeroneseError::NotDecomposable(_)) => continue,
                Err(e) => return Err(e),
            };
            if back != gens.generator_poly(i) {
                let msg = format!(
                    "the supplied inverse sends the image of {} to {}",
                    gens.name(i),
                    ctx.format(&back)
                );
                return Ok(Some(
                    Obstruction::new(ObstructionReason::NotInjectiveOnGenerators, msg).with("composite", back),
                ));
            }
        }
    }
    Ok(None)
}

/// `phi[e_i, e_j] = {phi e_i, phi e_j}` on basis pairs within the table.
fn verify_morphism_bracket_law(
    ctx: &Context,
    images: &[Option<Polynomial>],
    verification: &mut Verification,
) -> Result<Option<Obstruction>, VeroneseError> {
    let basis = ctx.basis().expect("Poisson context");
    let arity = ctx.arity();
    for i in 0..arity {
        for j in i + 1..arity {
            if basis.degree(i) + basis.degree(j) > basis.bound() {
                continue;
            }
            let (fi, fj) = match (&images[i], &images[j]) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    verification.bracket_pairs_skipped += 1;
                    continue;
                }
            };
            let lie = basis.bracket(i, j)?;
            let mut lhs = Some(Polynomial::zero(arity));
            for (k, c) in lie.iter() {
                lhs = match (lhs, &images[*k]) {
                    (Some(acc), Some(fk)) => Some(&acc + &fk.scale(c)),
                    _ => None,
                };
            }
            let rhs = match ctx.bracket(fi, fj) {
                Ok(r) => r,
                Err(e) if is_overflow(&e) => {
                    verification.bracket_pairs_skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            let Some(lhs) = lhs else {
                verification.bracket_pairs_skipped += 1;
                continue;
            };
            if lhs != rhs {
                let msg = format!("bracket law fails on ({}, {})", ctx.var_name(i), ctx.var_name(j));
                return Ok(Some(
                    Obstruction::new(ObstructionReason::RelationInconsistent, msg)
                        .with("lhs", lhs)
                        .with("rhs", rhs),
                ));
            }
            verification.bracket_pairs_checked += 1;
        }
    }
    Ok(None)
}

/// Lifts the automorphism and its inverse, composes the lifts and checks
/// that the composite is a scalar map `lambda * id` with `lambda^d = 1`
/// (on a Poisson basis element of weight `s` the composite must act as
/// `lambda^s`).
pub fn verify_quotient_kernel(
    map: &VeroneseAutomorphism,
    forward: LiftOptions,
    backward: LiftOptions,
) -> Result<KernelReport, VeroneseError> {
    let inverse_map = map.inverse().ok_or(VeroneseError::MissingInverse)?;
    let lift_or_fail = |m: &VeroneseAutomorphism, opts: LiftOptions, which: &str| {
        lift_automorphism(m, opts)?
            .into_lift()
            .map_err(|o| VeroneseError::LiftFailed {
                which: which.to_string(),
                reason: format!("{}: {}", o.reason, o.message),
            })
    };
    let fwd = lift_or_fail(map, forward, "forward")?;
    let inv = lift_or_fail(&inverse_map, backward, "inverse")?;
    let ctx = map.generators().context();
    let d = map.generators().d();

    let mut lambda: Option<Scalar> = None;
    let mut checked = 0;
    for (j, img) in inv.images.iter().enumerate() {
        let Some(img) = img else { continue };
        let composite = match ctx.apply_morphism(&fwd.images, img) {
            Ok(p) => p,
            Err(e) if is_overflow(&e) => continue,
            Err(e) => return Err(e),
        };
        let ej = ctx.var(j);
        let c = match composite.coefficient(&Monomial::var(j as u32)) {
            c if !c.is_zero() && composite == ej.scale(&c) => c,
            _ => {
                return Err(VeroneseError::CompositeNotScalar(format!(
                    "{} -> {}",
                    ctx.var_name(j),
                    ctx.format(&composite)
                )))
            }
        };
        let weight = ctx.weight(j);
        match &lambda {
            None if weight == 1 => lambda = Some(c),
            None => {
                return Err(VeroneseError::CompositeNotScalar(
                    "no free generator has a defined image".to_string(),
                ))
            }
            Some(l) => {
                if num_traits::pow(l.clone(), weight as usize) != c {
                    return Err(VeroneseError::CompositeNotScalar(format!(
                        "{} -> {} is inconsistent with lambda = {l}",
                        ctx.var_name(j),
                        ctx.format(&composite)
                    )));
                }
            }
        }
        checked += 1;
    }
    let lambda = lambda.ok_or_else(|| VeroneseError::CompositeNotScalar("nothing to compare".to_string()))?;
    if !num_traits::pow(lambda.clone(), d as usize).is_one() {
        return Err(VeroneseError::CompositeNotScalar(format!("lambda = {lambda} but lambda^{d} != 1")));
    }
    debug_assert!(lambda.abs().is_one());
    Ok(KernelReport {
        lambda,
        forward: fwd,
        inverse: inv,
        indeterminates_checked: checked,
    })
}
