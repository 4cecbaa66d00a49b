//! Multivariate gcd.
//!
//! The fast path is the heuristic integer gcd: evaluate one variable at a
//! large integer, recurse, and read the candidate back off its digits in
//! that base. A candidate is accepted only if it divides both inputs.
//! Recursive primitive pseudo-remainder sequences are the fallback.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyError, Polynomial, Scalar};

/// Greatest common divisor, normalized to leading coefficient 1.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, PolyError> {
    if p.arity() != q.arity() {
        return Err(PolyError::ArityMismatch {
            left: p.arity(),
            right: q.arity(),
        });
    }
    if p.is_zero() && q.is_zero() {
        return Err(PolyError::ZeroGcd);
    }
    if let (Some(a), Some(b)) = (integer_primitive(p), integer_primitive(q)) {
        let vars: Vec<u32> = p.vars().union(&q.vars()).copied().collect();
        if let Some(g) = heuristic_gcd(&a, &b, &vars) {
            return Ok(g.monic());
        }
    }
    Ok(gcd_rec(p, q).monic())
}

const HEURISTIC_ATTEMPTS: usize = 6;
/// Candidates are abandoned once the evaluation point grows past this many bits.
const HEURISTIC_MAX_BITS: u64 = 4096;

/// `p` scaled to integer coefficients with content 1, or `None` for zero.
fn integer_primitive(p: &Polynomial) -> Option<Polynomial> {
    if p.is_zero() {
        return None;
    }
    let lcm = p.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let scaled = p.scale(&Scalar::from_integer(lcm));
    let content = integer_content(&scaled);
    Some(scaled.scale(&Scalar::from_integer(content).recip()))
}

fn integer_content(p: &Polynomial) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

fn max_norm(p: &Polynomial) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

/// `p` with `v = xi`.
fn evaluate(p: &Polynomial, v: u32, xi: &BigInt) -> Polynomial {
    let mut powers: Vec<BigInt> = vec![BigInt::one()];
    Polynomial::from_terms(
        p.arity(),
        p.terms().map(|(m, c)| {
            let (e, rest) = m.split_var(v);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * xi;
                powers.push(next);
            }
            (rest, c * Scalar::from_integer(powers[e as usize].clone()))
        }),
    )
}

/// Coefficientwise symmetric residue modulo `xi`.
fn symmetric_mod(p: &Polynomial, xi: &BigInt) -> Polynomial {
    let half = xi / 2;
    p.map_coefficients(|c| {
        let mut r = c.numer().mod_floor(xi);
        if r > half {
            r -= xi;
        }
        Scalar::from_integer(r)
    })
}

/// Integer gcd of integer polynomials in `vars`; `None` when the heuristic
/// gives up.
fn heuristic_gcd(a: &Polynomial, b: &Polynomial, vars: &[u32]) -> Option<Polynomial> {
    let n = a.arity();
    if a.is_zero() {
        return Some(b.clone());
    }
    if b.is_zero() {
        return Some(a.clone());
    }
    let ca = integer_content(a);
    let cb = integer_content(b);
    let c = Scalar::from_integer(ca.gcd(&cb));
    let Some((&v, rest)) = vars.split_first() else {
        return Some(Polynomial::constant(n, c));
    };
    if a.is_constant() || b.is_constant() {
        return Some(Polynomial::constant(n, c));
    }
    let a = a.scale(&Scalar::from_integer(ca).recip());
    let b = b.scale(&Scalar::from_integer(cb).recip());
    if a.degree_in(v) == 0 && b.degree_in(v) == 0 {
        return heuristic_gcd(&a, &b, rest).map(|g| g.scale(&c));
    }
    let mut xi: BigInt = 2 * max_norm(&a).min(max_norm(&b)) + 29;
    for _ in 0..HEURISTIC_ATTEMPTS {
        if xi.bits() > HEURISTIC_MAX_BITS {
            return None;
        }
        let gamma = heuristic_gcd(&evaluate(&a, v, &xi), &evaluate(&b, v, &xi), rest)?;
        if let Some(g) = interpolate(&gamma, v, &xi) {
            if g.divides(&a) && g.divides(&b) {
                return Some(g.scale(&c));
            }
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

/// Reads `gamma` as digits in base `xi` (symmetric residues) and rebuilds
/// the polynomial in `v`, made primitive with positive leading coefficient.
fn interpolate(gamma: &Polynomial, v: u32, xi: &BigInt) -> Option<Polynomial> {
    let n = gamma.arity();
    let mut out = Polynomial::zero(n);
    let mut e = gamma.clone();
    let mut k = 0u32;
    while !e.is_zero() {
        let digit = symmetric_mod(&e, xi);
        out = &out + &digit.mul_monomial(&Monomial::var_pow(v, k), &Scalar::one());
        e = (&e - &digit).scale(&Scalar::from_integer(xi.clone()).recip());
        k += 1;
    }
    let content = integer_content(&out);
    if content.is_zero() {
        return None;
    }
    let sign = if out.leading_coefficient()?.numer().sign() == Sign::Minus { -1 } else { 1 };
    Some(out.scale(&Scalar::from_integer(content * sign).recip()))
}

fn gcd_rec(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let n = p.arity();
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(n);
    }
    if p.is_monomial() || q.is_monomial() {
        let (mono, other) = if p.is_monomial() { (p, q) } else { (q, p) };
        let mut g = mono.leading_term().unwrap().0.clone();
        for (m, _) in other.terms() {
            g = g.gcd(m);
            if g.is_one() {
                break;
            }
        }
        return Polynomial::monomial(n, g, Scalar::one());
    }
    // monomial content first
    let mp = monomial_content(p);
    let mq = monomial_content(q);
    if !mp.is_one() || !mq.is_one() {
        let g = mp.gcd(&mq);
        let p1 = p.divide_exact(&Polynomial::monomial(n, mp, Scalar::one())).unwrap();
        let q1 = q.divide_exact(&Polynomial::monomial(n, mq, Scalar::one())).unwrap();
        let h = gcd_rec(&p1, &q1);
        return h.mul_monomial(&g, &Scalar::one());
    }

    let vp = p.vars();
    let vq = q.vars();
    if vp.is_disjoint(&vq) {
        return Polynomial::one(n);
    }
    let v = *vp.iter().chain(vq.iter()).max().unwrap();
    if !vq.contains(&v) {
        return gcd_rec(&content(p, v), q);
    }
    if !vp.contains(&v) {
        return gcd_rec(p, &content(q, v));
    }
    let cp = content(p, v);
    let cq = content(q, v);
    let pp = p.divide_exact(&cp).unwrap();
    let qp = q.divide_exact(&cq).unwrap();
    let c = gcd_rec(&cp, &cq);
    let h = primitive_prs(pp, qp, v);
    (&c * &h).monic()
}

fn monomial_content(p: &Polynomial) -> Monomial {
    let mut it = p.terms();
    let mut g = match it.next() {
        Some((m, _)) => m.clone(),
        None => return Monomial::one(),
    };
    for (m, _) in it {
        if g.is_one() {
            break;
        }
        g = g.gcd(m);
    }
    g
}

/// Coefficients of `p` viewed as a polynomial in `v`; index `k` holds the
/// coefficient of `v^k`.
fn coefficients_in(p: &Polynomial, v: u32) -> Vec<Polynomial> {
    let n = p.arity();
    let deg = p.degree_in(v) as usize;
    let mut parts: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); deg + 1];
    for (m, c) in p.terms() {
        let (e, rest) = m.split_var(v);
        parts[e as usize].push((rest, c.clone()));
    }
    parts
        .into_iter()
        .map(|t| Polynomial::from_terms(n, t))
        .collect()
}

/// Gcd of the coefficients of `p` with respect to `v`.
fn content(p: &Polynomial, v: u32) -> Polynomial {
    let mut g: Option<Polynomial> = None;
    for c in coefficients_in(p, v).into_iter().filter(|c| !c.is_zero()) {
        g = Some(match g {
            None => c.monic(),
            Some(g) => gcd_rec(&g, &c),
        });
        if g.as_ref().map_or(false, |g| g.is_constant()) {
            return Polynomial::one(p.arity());
        }
    }
    g.unwrap_or_else(|| Polynomial::one(p.arity()))
}

fn primitive_part(p: &Polynomial, v: u32) -> Polynomial {
    let c = content(p, v);
    p.divide_exact(&c).unwrap().monic()
}

/// `lc(b)^k * a mod b` with respect to `v`, reduced until `deg_v < deg_v b`.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: u32) -> Polynomial {
    let n = a.arity();
    let db = b.degree_in(v);
    let lc_b = coefficients_in(b, v).pop().unwrap();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lead = coefficients_in(&r, v).pop().unwrap();
        let shift = Polynomial::monomial(n, Monomial::var_pow(v, dr - db), Scalar::one());
        r = &(&lc_b * &r) - &(&(&lead * &shift) * b);
    }
    r
}

fn primitive_prs(a: Polynomial, b: Polynomial, v: u32) -> Polynomial {
    let n = a.arity();
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Polynomial::one(n);
        }
        a = b;
        b = primitive_part(&r, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(3, i)
    }

    #[test]
    fn heuristic_agrees_with_prs() {
        let (a, b, c) = (x(0), x(1), x(2));
        let f = &(&(&a * &b) - &c.scale(&crate::poly::ratio(3, 7))) + &Polynomial::one(3);
        let p = &(&a.pow(3) + &b) * &f;
        let q = &(&(&a * &c) - &b.pow(2)) * &f.pow(2);
        let vars: Vec<u32> = vec![0, 1, 2];
        let h = heuristic_gcd(&integer_primitive(&p).unwrap(), &integer_primitive(&q).unwrap(), &vars).unwrap();
        assert_eq!(h.monic(), f.monic());
        assert_eq!(gcd_rec(&p, &q).monic(), f.monic());
    }

    #[test]
    fn examples() {
        let (a, b) = (x(0), x(1));
        let p = &a.pow(2) - &b.pow(2);
        assert_eq!(gcd(&p, &(&a - &b)).unwrap(), &a - &b);
        assert!(gcd(&a, &b).unwrap().is_one());
        let p = &(&a.pow(2) * &b) + &(&a * &b.pow(2));
        let q = &a * &b;
        let g = gcd(&p, &q).unwrap();
        assert_eq!(g, q);
        assert!(g.divides(&p) && g.divides(&q));
    }

    #[test]
    fn zero_cases() {
        let a = x(0);
        assert_eq!(gcd(&Polynomial::zero(3), &a.scale(&crate::poly::scalar(3))).unwrap(), a);
        assert_eq!(
            gcd(&Polynomial::zero(3), &Polynomial::zero(3)),
            Err(PolyError::ZeroGcd)
        );
    }

    #[test]
    fn multivariate_common_factor() {
        let (a, b, c) = (x(0), x(1), x(2));
        let f = &(&a * &b) + &c; // xy + z
        let g1 = &(&a + &b.pow(2)) * &f;
        let g2 = &(&c.pow(2) - &a) * &f;
        assert_eq!(gcd(&g1, &g2).unwrap(), f.monic());
        let h = &(&a + &c) * &(&a - &c);
        let k = &(&a + &c).pow(2) * &b;
        assert_eq!(gcd(&h, &k).unwrap(), &a + &c);
    }
}
