use crate::poly::{reduce_fraction, scalar, Monomial, PolyError, Polynomial};

use super::maps::{check_relations, VeroneseDerivation};
use super::{
    Context, ImageSource, Lift, LiftKind, LiftOutcome, Obstruction, ObstructionReason, Verification,
    VeroneseError,
};

fn not_divisible(ctx: &Context, what: String, num: &Polynomial, den: &Polynomial) -> Result<Obstruction, VeroneseError> {
    let reduced = reduce_fraction(num, den)?;
    let msg = format!(
        "{what}: ({}) / ({}) reduces to ({}) / ({}), not a polynomial",
        ctx.format(num),
        ctx.format(den),
        ctx.format(reduced.num()),
        ctx.format(reduced.den())
    );
    let (rn, rd) = reduced.into_parts();
    Ok(Obstruction::new(ObstructionReason::NotDivisible, msg)
        .with("numerator", num.clone())
        .with("denominator", den.clone())
        .with("reduced_numerator", rn)
        .with("reduced_denominator", rd))
}

/// Lifts a derivation of the Veronese subalgebra to a `d`-graded derivation
/// of the ambient algebra, or reports why none exists.
///
/// Each image `S(e)` is recovered by exact division: from
/// `D(e^d) = d e^(d-1) S(e)` when `e^d` lies within the generator bound, from
/// `D(e x1^k) = S(e) x1^k + k e x1^(k-1) S(x1)` for the smallest `k` making
/// `e x1^k` a subalgebra element otherwise, and from the bracket law for
/// Poisson basis elements past the bound. The result is then checked against
/// `D` on every generator and, for Poisson, against the bracket law.
pub fn lift_derivation(map: &VeroneseDerivation) -> Result<LiftOutcome, VeroneseError> {
    let gens = map.generators();
    let ctx = gens.context();
    let d = gens.d();
    if let Err(obs) = check_relations(map) {
        return Ok(LiftOutcome::Obstructed(obs));
    }
    let arity = ctx.arity();
    let mut images: Vec<Option<Polynomial>> = vec![None; arity];
    let mut sources = vec![ImageSource::Undetermined; arity];

    for j in 0..arity {
        let s = ctx.weight(j) as u64;
        let ej = Monomial::var(j as u32);
        let k = ((d as u64 - s % d as u64) % d as u64) as u32;
        if k == 0 && ctx.within_generator_bound(s) {
            images[j] = Some(map.eval_monomial(&ej)?);
            sources[j] = ImageSource::Generator;
        } else if ctx.within_generator_bound(s * d as u64) {
            let num = map.eval_monomial(&ej.pow(d))?;
            let den = Polynomial::monomial(arity, ej.pow(d - 1), scalar(d as i64));
            match num.divide_exact(&den) {
                Ok(q) => images[j] = Some(q),
                Err(PolyError::NotDivisible { .. }) => {
                    let what = format!("image of {} from D({}^{d})", ctx.var_name(j), ctx.var_name(j));
                    return Ok(LiftOutcome::Obstructed(not_divisible(ctx, what, &num, &den)?));
                }
                Err(e) => return Err(e.into()),
            }
            sources[j] = ImageSource::PowerDivision;
        } else if j > 0 && ctx.within_generator_bound(s + k as u64) && images[0].is_some() {
            let s1 = images[0].as_ref().unwrap();
            let x1 = Monomial::var(0);
            let total = map.eval_monomial(&ej.mul(&x1.pow(k)))?;
            let correction = s1.mul_monomial(&ej.mul(&x1.pow(k - 1)), &scalar(k as i64));
            let num = &total - &correction;
            let den = Polynomial::monomial(arity, x1.pow(k), scalar(1));
            match num.divide_exact(&den) {
                Ok(q) => images[j] = Some(q),
                Err(PolyError::NotDivisible { .. }) => {
                    let what = format!("image of {}", ctx.var_name(j));
                    return Ok(LiftOutcome::Obstructed(not_divisible(ctx, what, &num, &den)?));
                }
                Err(e) => return Err(e.into()),
            }
            sources[j] = ImageSource::MixedDivision;
        } else if let Some(basis) = ctx.basis() {
            let (u, v) = basis.element(j).factors.expect("letters are handled above");
            if let (Some(su), Some(sv)) = (&images[u], &images[v]) {
                let left = ctx.bracket(su, &ctx.var(v));
                let right = ctx.bracket(&ctx.var(u), sv);
                match (left, right) {
                    (Ok(l), Ok(r)) => {
                        images[j] = Some(&l + &r);
                        sources[j] = ImageSource::BracketLaw;
                    }
                    (Err(e), _) | (_, Err(e)) if is_overflow(&e) => {}
                    (Err(e), _) | (_, Err(e)) => return Err(e),
                }
            }
        }
    }

    for (j, img) in images.iter().enumerate() {
        if let Some(img) = img {
            let residue = ctx.weight(j) % d;
            if !ctx.in_component(img, d, residue) {
                let msg = format!(
                    "image of {} is not in graded component {residue}: {}",
                    ctx.var_name(j),
                    ctx.format(img)
                );
                return Ok(LiftOutcome::Obstructed(
                    Obstruction::new(ObstructionReason::NotGraded, msg).with("image", img.clone()),
                ));
            }
        }
    }

    let mut verification = Verification::default();
    for i in 0..gens.len() {
        let y = gens.generator_poly(i);
        match ctx.apply_derivation(&images, &y) {
            Ok(value) => {
                if &value != map.image(i) {
                    let msg = format!(
                        "lift gives {} on {}, expected {}",
                        ctx.format(&value),
                        gens.name(i),
                        ctx.format(map.image(i))
                    );
                    return Ok(LiftOutcome::Obstructed(
                        Obstruction::new(ObstructionReason::RelationInconsistent, msg)
                            .with("lifted", value)
                            .with("expected", map.image(i).clone()),
                    ));
                }
                verification.generators_checked += 1;
            }
            Err(e) if is_overflow(&e) => verification.generators_skipped += 1,
            Err(e) => return Err(e),
        }
    }

    if ctx.is_poisson() {
        if let Some(obs) = verify_derivation_bracket_law(ctx, &images, &mut verification)? {
            return Ok(LiftOutcome::Obstructed(obs));
        }
    }

    Ok(LiftOutcome::Lifted(Lift {
        kind: LiftKind::Derivation,
        context: ctx.clone(),
        d,
        images,
        sources,
        normalization: None,
        verification,
    }))
}

pub(crate) fn is_overflow(e: &VeroneseError) -> bool {
    match e {
        VeroneseError::Poisson(p) => p.is_overflow(),
        VeroneseError::Lie(crate::lie::LieError::DegreeOverflow { .. }) => true,
        _ => false,
    }
}

/// `S[e_i, e_j] = {S e_i, e_j} + {e_i, S e_j}` on every basis pair whose
/// bracket lies in the table.
fn verify_derivation_bracket_law(
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
            let (si, sj) = match (&images[i], &images[j]) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    verification.bracket_pairs_skipped += 1;
                    continue;
                }
            };
            let lie = basis.bracket(i, j)?;
            let mut lhs = Polynomial::zero(arity);
            let mut defined = true;
            for (k, c) in lie.iter() {
                match &images[*k] {
                    Some(sk) => lhs = &lhs + &sk.scale(c),
                    None => {
                        defined = false;
                        break;
                    }
                }
            }
            if !defined {
                verification.bracket_pairs_skipped += 1;
                continue;
            }
            let rhs = match (ctx.bracket(si, &ctx.var(j)), ctx.bracket(&ctx.var(i), sj)) {
                (Ok(a), Ok(b)) => &a + &b,
                (Err(e), _) | (_, Err(e)) if is_overflow(&e) => {
                    verification.bracket_pairs_skipped += 1;
                    continue;
                }
                (Err(e), _) | (_, Err(e)) => return Err(e),
            };
            if lhs != rhs {
                let msg = format!(
                    "bracket law fails on ({}, {})",
                    ctx.var_name(i),
                    ctx.var_name(j)
                );
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
