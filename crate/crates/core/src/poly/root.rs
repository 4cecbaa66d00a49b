use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Monomial, PolyError, Polynomial, Scalar};

/// Rational `d`-th root of `c`, positive when `d` is even.
pub fn rational_root(c: &Scalar, d: u32) -> Option<Scalar> {
    if d == 0 {
        return None;
    }
    if c.is_zero() {
        return Some(Scalar::zero());
    }
    if d % 2 == 0 && c.is_negative() {
        return None;
    }
    let num = integer_root(&c.numer().abs(), d)?;
    let den = integer_root(c.denom(), d)?;
    let r = Scalar::new(num, den);
    Some(if c.is_negative() { -r } else { r })
}

fn integer_root(n: &BigInt, d: u32) -> Option<BigInt> {
    let r = n.nth_root(d);
    if num_traits::pow(r.clone(), d as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact `d`-th root of a polynomial over the rationals.
///
/// The root's leading term is the `d`-th root of `p`'s leading term; the
/// remaining terms are recovered one at a time from the leading term of
/// `p - r^d`, which must equal `d * lt(r)^(d-1) * t` for the next term `t`.
/// For even `d` the root is normalized to a positive leading coefficient.
pub fn dth_root(p: &Polynomial, d: u32) -> Result<Polynomial, PolyError> {
    if d == 0 || p.is_zero() {
        return Err(PolyError::BadRootInput);
    }
    if d == 1 {
        return Ok(p.clone());
    }
    let no_root = |reason: String| PolyError::NoRoot { degree: d, reason };
    let n = p.arity();
    let (lm, lc) = p.leading_term().unwrap();
    let root_m = lm
        .root(d)
        .ok_or_else(|| no_root(format!("leading monomial {lm:?} is not a {d}-th power")))?;
    let root_c = rational_root(lc, d)
        .ok_or_else(|| no_root(format!("leading coefficient {lc} is not a rational {d}-th power")))?;

    let lead = Polynomial::monomial(n, root_m.clone(), root_c.clone());
    // d * lt(r)^(d-1): every correction term is divided by this
    let denom_m = root_m.pow(d - 1);
    let denom_c = Scalar::from_integer(BigInt::from(d)) * num_traits::pow(root_c, (d - 1) as usize);
    let min_deg = p.min_total_degree().unwrap();

    let mut root = lead;
    let mut last: Option<Monomial> = None;
    loop {
        let residual = p - &root.pow(d);
        let (rm, rc) = match residual.leading_term() {
            None => break,
            Some((m, c)) => (m.clone(), c.clone()),
        };
        let t = rm
            .div(&denom_m)
            .ok_or_else(|| no_root(format!("residual term {rm:?} is not reachable")))?;
        // Terms of a genuine root have degree >= min_deg / d and strictly decrease.
        if (t.total_degree() as u64) * (d as u64) < min_deg as u64
            || last.as_ref().map_or(false, |l| &t >= l)
            || t >= root_m
        {
            return Err(no_root(format!("residual term {rm:?} does not close")));
        }
        let coef = &rc / &denom_c;
        root = &root + &Polynomial::monomial(n, t.clone(), coef);
        last = Some(t);
    }
    if d % 2 == 0 && root.leading_coefficient().map_or(false, |c| c.is_negative()) {
        root = -root;
    }
    Ok(root)
}
