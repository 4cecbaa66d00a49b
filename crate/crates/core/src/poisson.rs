//! The free Poisson algebra as the polynomial ring on the Lyndon basis.
//!
//! Elements are polynomials whose indeterminate `i` is the basis element
//! `e_{i+1}` of a shared [`LieBasis`]. The bracket is the unique extension of
//! the Lie bracket satisfying the Leibniz rule in each argument:
//! `{f, g} = sum_{i,j} (df/de_i)(dg/de_j) [e_i, e_j]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use crate::lie::{LieBasis, LieError};
use crate::poly::{reduce_fraction, PolyError, Polynomial, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("weighted degree of the zero element is undefined")]
    ZeroElement,
    #[error("operands belong to different basis tables")]
    TableMismatch,
    #[error("map is undefined on {0}: its image leaves the basis table")]
    Undefined(String),
}

impl PoissonError {
    /// True when the failure only reflects the finite degree bound.
    pub fn is_overflow(&self) -> bool {
        matches!(
            self,
            PoissonError::Lie(LieError::DegreeOverflow { .. }) | PoissonError::Undefined(_)
        )
    }
}

/// `{f, g}` for polynomials over the table's indeterminates.
pub fn bracket(basis: &LieBasis, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, PoissonError> {
    let n = basis.len();
    let mut out = Polynomial::zero(n);
    let fv = f.vars();
    let gv = g.vars();
    if fv.is_empty() || gv.is_empty() {
        return Ok(out);
    }
    let gd: Vec<(u32, Polynomial)> = gv.iter().map(|&j| (j, g.derivative(j))).collect();
    for &i in &fv {
        let df = f.derivative(i);
        for (j, dg) in &gd {
            if i == *j {
                continue;
            }
            let lie = basis.bracket(i as usize, *j as usize)?;
            if lie.is_empty() {
                continue;
            }
            let linear = Polynomial::from_terms(
                n,
                lie.iter()
                    .map(|(k, c)| (crate::poly::Monomial::var(*k as u32), c.clone())),
            );
            out = &out + &(&(&df * dg) * &linear);
        }
    }
    Ok(out)
}

/// Highest weighted degree among the terms of `f`.
pub fn weighted_degree(basis: &LieBasis, f: &Polynomial) -> Result<u64, PoissonError> {
    f.terms()
        .map(|(m, _)| m.weighted_degree(basis.degrees()))
        .max()
        .ok_or(PoissonError::ZeroElement)
}

/// An element of the free Poisson algebra tied to its basis table.
#[derive(Clone)]
pub struct PoissonElement {
    basis: Arc<LieBasis>,
    poly: Polynomial,
}

impl PoissonElement {
    pub fn new(basis: Arc<LieBasis>, poly: Polynomial) -> Result<Self, PoissonError> {
        if poly.arity() != basis.len() {
            return Err(PolyError::ArityMismatch {
                left: basis.len(),
                right: poly.arity(),
            }
            .into());
        }
        Ok(PoissonElement { basis, poly })
    }

    pub fn zero(basis: Arc<LieBasis>) -> Self {
        let poly = Polynomial::zero(basis.len());
        PoissonElement { basis, poly }
    }

    pub fn constant(basis: Arc<LieBasis>, c: Scalar) -> Self {
        let poly = Polynomial::constant(basis.len(), c);
        PoissonElement { basis, poly }
    }

    /// The basis element `e_{index+1}`; indices below `n` are the generators.
    pub fn basis_element(basis: Arc<LieBasis>, index: usize) -> Self {
        let poly = Polynomial::var(basis.len(), index);
        PoissonElement { basis, poly }
    }

    pub fn basis(&self) -> &Arc<LieBasis> {
        &self.basis
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn into_poly(self) -> Polynomial {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn same_table(&self, other: &PoissonElement) -> Result<(), PoissonError> {
        if Arc::ptr_eq(&self.basis, &other.basis)
            || (self.basis.n() == other.basis.n() && self.basis.bound() == other.basis.bound())
        {
            Ok(())
        } else {
            Err(PoissonError::TableMismatch)
        }
    }

    fn wrap(&self, poly: Polynomial) -> PoissonElement {
        PoissonElement {
            basis: self.basis.clone(),
            poly,
        }
    }

    pub fn try_add(&self, other: &PoissonElement) -> Result<PoissonElement, PoissonError> {
        self.same_table(other)?;
        Ok(self.wrap(&self.poly + &other.poly))
    }

    pub fn try_mul(&self, other: &PoissonElement) -> Result<PoissonElement, PoissonError> {
        self.same_table(other)?;
        Ok(self.wrap(&self.poly * &other.poly))
    }

    pub fn pow(&self, k: u32) -> PoissonElement {
        self.wrap(self.poly.pow(k))
    }

    pub fn scale(&self, c: &Scalar) -> PoissonElement {
        self.wrap(self.poly.scale(c))
    }

    /// `poisson_bracket`.
    pub fn bracket(&self, other: &PoissonElement) -> Result<PoissonElement, PoissonError> {
        self.same_table(other)?;
        Ok(self.wrap(bracket(&self.basis, &self.poly, &other.poly)?))
    }

    pub fn weighted_degree(&self) -> Result<u64, PoissonError> {
        weighted_degree(&self.basis, &self.poly)
    }

    /// Number of basis factors in each term; the maximum over terms.
    pub fn polynomial_length(&self) -> Option<u32> {
        self.poly.total_degree()
    }

    pub fn is_d_homogeneous(&self, d: u32, residue: u32) -> bool {
        self.poly.in_component(d, residue, self.basis.degrees())
    }

    /// `grade_poisson`: the components of the `d`-grading by weighted degree.
    pub fn grade(&self, d: u32) -> Result<Vec<PoissonElement>, PoissonError> {
        let parts = self.poly.grade_weighted(d, self.basis.degrees())?;
        Ok(parts.into_parts().into_iter().map(|p| self.wrap(p)).collect())
    }
}

impl PartialEq for PoissonElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_table(other).is_ok() && self.poly == other.poly
    }
}

impl Eq for PoissonElement {}

impl fmt::Display for PoissonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis = &self.basis;
        f.write_str(&self.poly.fmt_with(&|i| basis.name(i as usize)))
    }
}

impl fmt::Debug for PoissonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<'a> Add<&'a PoissonElement> for &'a PoissonElement {
    type Output = PoissonElement;
    fn add(self, rhs: &'a PoissonElement) -> PoissonElement {
        self.try_add(rhs).expect("basis table mismatch")
    }
}

impl<'a> Sub<&'a PoissonElement> for &'a PoissonElement {
    type Output = PoissonElement;
    fn sub(self, rhs: &'a PoissonElement) -> PoissonElement {
        self.try_add(&-rhs).expect("basis table mismatch")
    }
}

impl<'a> Mul<&'a PoissonElement> for &'a PoissonElement {
    type Output = PoissonElement;
    fn mul(self, rhs: &'a PoissonElement) -> PoissonElement {
        self.try_mul(rhs).expect("basis table mismatch")
    }
}

impl Neg for &PoissonElement {
    type Output = PoissonElement;
    fn neg(self) -> PoissonElement {
        self.scale(&-Scalar::one())
    }
}

/// An element of the free Poisson field, kept in lowest terms.
#[derive(Clone, PartialEq, Eq)]
pub struct PoissonFraction {
    num: PoissonElement,
    den: PoissonElement,
}

impl PoissonFraction {
    pub fn new(num: PoissonElement, den: PoissonElement) -> Result<Self, PoissonError> {
        num.same_table(&den)?;
        let r = reduce_fraction(&num.poly, &den.poly)?;
        let (n, d) = r.into_parts();
        Ok(PoissonFraction {
            num: num.wrap(n),
            den: num.wrap(d),
        })
    }

    pub fn from_element(e: PoissonElement) -> Self {
        let den = e.wrap(Polynomial::one(e.basis.len()));
        PoissonFraction { num: e, den }
    }

    pub fn num(&self) -> &PoissonElement {
        &self.num
    }

    pub fn den(&self) -> &PoissonElement {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &PoissonFraction) -> Result<PoissonFraction, PoissonError> {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        PoissonFraction::new(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &PoissonFraction) -> Result<PoissonFraction, PoissonError> {
        let num = &(&self.num * &other.den) - &(&other.num * &self.den);
        PoissonFraction::new(num, &self.den * &other.den)
    }

    pub fn mul(&self, other: &PoissonFraction) -> Result<PoissonFraction, PoissonError> {
        PoissonFraction::new(&self.num * &other.num, &self.den * &other.den)
    }

    /// True when `self` and `other` agree after clearing denominators.
    pub fn cross_equal(&self, other: &PoissonFraction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// `fraction_bracket`:
    /// `{a/b, c/d} = ({a,c}bd - {a,d}bc - {b,c}ad + {b,d}ac) / (b^2 d^2)`.
    pub fn bracket(&self, other: &PoissonFraction) -> Result<PoissonFraction, PoissonError> {
        let (a, b) = (&self.num, &self.den);
        let (c, d) = (&other.num, &other.den);
        let t1 = &(&a.bracket(c)? * b) * d;
        let t2 = &(&a.bracket(d)? * b) * c;
        let t3 = &(&b.bracket(c)? * a) * d;
        let t4 = &(&b.bracket(d)? * a) * c;
        let num = &(&(&t1 - &t2) - &t3) + &t4;
        let den = &b.pow(2) * &d.pow(2);
        PoissonFraction::new(num, den)
    }
}

impl fmt::Display for PoissonFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.poly.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for PoissonFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A derivation of the polynomial algebra on the table's indeterminates,
/// given by its value on every basis element it is defined on.
///
/// Entries are `None` where the image would need basis elements beyond the
/// table bound; applying the derivation to an element involving such an
/// entry fails with [`PoissonError::Undefined`].
#[derive(Clone, Debug)]
pub struct PoissonDerivation {
    basis: Arc<LieBasis>,
    images: Vec<Option<Polynomial>>,
}

impl PoissonDerivation {
    /// Associative derivation from explicit images of every table entry.
    pub fn from_images(basis: Arc<LieBasis>, images: Vec<Polynomial>) -> Result<Self, PoissonError> {
        if images.len() != basis.len() || images.iter().any(|p| p.arity() != basis.len()) {
            return Err(PolyError::ArityMismatch {
                left: basis.len(),
                right: images.len(),
            }
            .into());
        }
        Ok(PoissonDerivation {
            basis,
            images: images.into_iter().map(Some).collect(),
        })
    }

    /// Partial images; `None` marks entries left undefined.
    pub fn from_partial(basis: Arc<LieBasis>, images: Vec<Option<Polynomial>>) -> Self {
        assert_eq!(images.len(), basis.len());
        PoissonDerivation { basis, images }
    }

    /// The Poisson derivation with `S(x_i) = generator_images[i]`, extended
    /// to longer basis elements by `S[u,v] = {S u, v} + {u, S v}` along the
    /// standard factorization.
    pub fn from_generators(basis: Arc<LieBasis>, generator_images: &[Polynomial]) -> Result<Self, PoissonError> {
        if generator_images.len() != basis.n() {
            return Err(PolyError::ArityMismatch {
                left: basis.n(),
                right: generator_images.len(),
            }
            .into());
        }
        let mut images: Vec<Option<Polynomial>> = vec![None; basis.len()];
        for (i, g) in generator_images.iter().enumerate() {
            if g.arity() != basis.len() {
                return Err(PoissonError::TableMismatch);
            }
            images[i] = Some(g.clone());
        }
        for idx in basis.n()..basis.len() {
            let (u, v) = basis.element(idx).factors.expect("non-letters factor");
            images[idx] = match (&images[u], &images[v]) {
                (Some(su), Some(sv)) => {
                    let eu = Polynomial::var(basis.len(), u);
                    let ev = Polynomial::var(basis.len(), v);
                    let left = bracket(&basis, su, &ev);
                    let right = bracket(&basis, &eu, sv);
                    match (left, right) {
                        (Ok(l), Ok(r)) => Some(&l + &r),
                        (Err(e), _) | (_, Err(e)) if e.is_overflow() => None,
                        (Err(e), _) | (_, Err(e)) => return Err(e),
                    }
                }
                _ => None,
            };
        }
        Ok(PoissonDerivation { basis, images })
    }

    pub fn basis(&self) -> &Arc<LieBasis> {
        &self.basis
    }

    pub fn image(&self, index: usize) -> Option<&Polynomial> {
        self.images[index].as_ref()
    }

    pub fn images(&self) -> &[Option<Polynomial>] {
        &self.images
    }

    pub fn is_defined_on(&self, f: &Polynomial) -> bool {
        f.vars().iter().all(|&i| self.images[i as usize].is_some())
    }

    /// `S(f) = sum_i (df/de_i) S(e_i)`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, PoissonError> {
        let mut out = Polynomial::zero(self.basis.len());
        for i in f.vars() {
            let img = self.images[i as usize]
                .as_ref()
                .ok_or_else(|| PoissonError::Undefined(self.basis.name(i as usize)))?;
            out = &out + &(&f.derivative(i) * img);
        }
        Ok(out)
    }

    pub fn apply_element(&self, f: &PoissonElement) -> Result<PoissonElement, PoissonError> {
        Ok(f.wrap(self.apply(&f.poly)?))
    }

    /// The unique extension to fractions: `S(a/b) = (S(a) b - a S(b)) / b^2`.
    pub fn apply_fraction(&self, f: &PoissonFraction) -> Result<PoissonFraction, PoissonError> {
        let sa = self.apply_element(&f.num)?;
        let sb = self.apply_element(&f.den)?;
        let num = &(&sa * &f.den) - &(&f.num * &sb);
        PoissonFraction::new(num, f.den.pow(2))
    }
}

/// `extend_derivation_to_fractions`: returns the fraction-level map.
pub fn extend_derivation_to_fractions(
    d: &PoissonDerivation,
) -> impl Fn(&PoissonFraction) -> Result<PoissonFraction, PoissonError> + '_ {
    move |f| d.apply_fraction(f)
}

/// An algebra endomorphism of the polynomial ring on the table, given by
/// (possibly partial) images of the basis elements.
#[derive(Clone, Debug)]
pub struct PoissonMorphism {
    basis: Arc<LieBasis>,
    images: Vec<Option<Polynomial>>,
}

impl PoissonMorphism {
    /// The Poisson endomorphism with `x_i -> generator_images[i]`, extended by
    /// `phi[u,v] = {phi u, phi v}` along standard factorizations.
    pub fn from_generators(basis: Arc<LieBasis>, generator_images: &[Polynomial]) -> Result<Self, PoissonError> {
        if generator_images.len() != basis.n() {
            return Err(PolyError::ArityMismatch {
                left: basis.n(),
                right: generator_images.len(),
            }
            .into());
        }
        let mut images: Vec<Option<Polynomial>> = vec![None; basis.len()];
        for (i, g) in generator_images.iter().enumerate() {
            if g.arity() != basis.len() {
                return Err(PoissonError::TableMismatch);
            }
            images[i] = Some(g.clone());
        }
        for idx in basis.n()..basis.len() {
            let (u, v) = basis.element(idx).factors.expect("non-letters factor");
            images[idx] = match (&images[u], &images[v]) {
                (Some(pu), Some(pv)) => match bracket(&basis, pu, pv) {
                    Ok(b) => Some(b),
                    Err(e) if e.is_overflow() => None,
                    Err(e) => return Err(e),
                },
                _ => None,
            };
        }
        Ok(PoissonMorphism { basis, images })
    }

    pub fn from_partial(basis: Arc<LieBasis>, images: Vec<Option<Polynomial>>) -> Self {
        assert_eq!(images.len(), basis.len());
        PoissonMorphism { basis, images }
    }

    pub fn basis(&self) -> &Arc<LieBasis> {
        &self.basis
    }

    pub fn image(&self, index: usize) -> Option<&Polynomial> {
        self.images[index].as_ref()
    }

    pub fn images(&self) -> &[Option<Polynomial>] {
        &self.images
    }

    pub fn is_defined_on(&self, f: &Polynomial) -> bool {
        f.vars().iter().all(|&i| self.images[i as usize].is_some())
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, PoissonError> {
        let n = self.basis.len();
        let mut map = std::collections::BTreeMap::new();
        for i in f.vars() {
            let img = self.images[i as usize]
                .as_ref()
                .ok_or_else(|| PoissonError::Undefined(self.basis.name(i as usize)))?;
            map.insert(i, img.clone());
        }
        let full: Vec<Polynomial> = (0..n)
            .map(|i| map.remove(&(i as u32)).unwrap_or_else(|| Polynomial::zero(n)))
            .collect();
        Ok(f.substitute(&full)?)
    }

    /// `self ∘ other`, defined wherever both steps are.
    pub fn compose(&self, other: &PoissonMorphism) -> PoissonMorphism {
        let images = other
            .images
            .iter()
            .map(|img| img.as_ref().and_then(|p| self.apply(p).ok()))
            .collect();
        PoissonMorphism {
            basis: self.basis.clone(),
            images,
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar;

    fn table(n: usize, bound: usize) -> Arc<LieBasis> {
        LieBasis::shared(n, bound).unwrap()
    }

    fn e(t: &Arc<LieBasis>, i: usize) -> PoissonElement {
        PoissonElement::basis_element(t.clone(), i)
    }

    #[test]
    fn bracket_examples() {
        let t = table(2, 4);
        let (x1, x2) = (e(&t, 0), e(&t, 1));
        assert_eq!(x1.bracket(&x2).unwrap(), e(&t, 2));
        let f = &(&x1 * &x2) + &x1;
        assert!(f.bracket(&f).unwrap().is_zero());
        // {x1, x1 x2} = x1 [x1,x2]
        assert_eq!(x1.bracket(&(&x1 * &x2)).unwrap(), &x1 * &e(&t, 2));
        assert_eq!(x1.bracket(&(&x1 * &x2)).unwrap().to_string(), "x1*[x1,x2]");
    }

    #[test]
    fn power_bracket_identity() {
        // {e_i^d, e_j^d} = d^2 e_i^(d-1) e_j^(d-1) {e_i, e_j}
        let t = table(2, 4);
        for d in 2..=3u32 {
            let (x1, x2) = (e(&t, 0), e(&t, 1));
            let lhs = x1.pow(d).bracket(&x2.pow(d)).unwrap();
            let rhs = (&(&x1.pow(d - 1) * &x2.pow(d - 1)) * &x1.bracket(&x2).unwrap())
                .scale(&scalar((d * d) as i64));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn overflow_is_reported() {
        let t = table(2, 2);
        let err = e(&t, 0).bracket(&e(&t, 2)).unwrap_err();
        assert!(err.is_overflow());
    }

    #[test]
    fn degrees_and_grading() {
        let t = table(2, 3);
        let (x1, x2, b) = (e(&t, 0), e(&t, 1), e(&t, 2));
        assert_eq!((&x1 * &b).weighted_degree().unwrap(), 3);
        assert_eq!((&x1 * &b).polynomial_length(), Some(2));
        assert!((&(&x1 * &x2) + &b).is_d_homogeneous(2, 0));
        assert!(matches!(
            PoissonElement::zero(t.clone()).weighted_degree(),
            Err(PoissonError::ZeroElement)
        ));
        let parts = (&x1 + &(&x1 * &x2)).grade(2).unwrap();
        assert_eq!(parts[1], x1);
        assert_eq!(parts[0], &x1 * &x2);
        let parts = b.grade(2).unwrap();
        assert_eq!(parts[0], b);
        assert!(parts[1].is_zero());
        assert!(x1.grade(1).is_err());
    }

    #[test]
    fn fraction_bracket_examples() {
        let t = table(2, 4);
        let (x1, x2, b) = (e(&t, 0), e(&t, 1), e(&t, 2));
        let one = PoissonElement::constant(t.clone(), scalar(1));
        let a = PoissonFraction::from_element(x1.clone());
        let c = PoissonFraction::from_element(x2.clone());
        assert_eq!(a.bracket(&c).unwrap(), PoissonFraction::from_element(b.clone()));

        // {x2/x1, x1} = {x2, x1} x1 / x1^2 = -[x1,x2] / x1
        let q = PoissonFraction::new(x2.clone(), x1.clone()).unwrap();
        let r = q.bracket(&a).unwrap();
        let want = PoissonFraction::new(-&b, x1.clone()).unwrap();
        assert_eq!(r, want);
        // Leibniz check on x2 = (x2/x1) * x1: {x2, x1} = {x2/x1, x1} x1
        let lhs = c.bracket(&a).unwrap();
        let rhs = r.mul(&a).unwrap();
        assert!(lhs.cross_equal(&rhs));

        assert!(q.bracket(&q).unwrap().is_zero());
        let _ = one;
    }

    #[test]
    fn derivation_on_fractions() {
        let t = table(2, 4);
        let (x1, x2) = (e(&t, 0), e(&t, 1));
        let s = PoissonDerivation::from_generators(
            t.clone(),
            &[x2.poly().clone(), Polynomial::zero(t.len())],
        )
        .unwrap();
        let a = PoissonFraction::from_element(&x1 * &x1);
        assert_eq!(
            s.apply_fraction(&a).unwrap(),
            PoissonFraction::from_element((&x1 * &x2).scale(&scalar(2)))
        );
        // S(1/b) = -S(b)/b^2
        let one = PoissonElement::constant(t.clone(), scalar(1));
        let inv = PoissonFraction::new(one, x1.clone()).unwrap();
        let got = s.apply_fraction(&inv).unwrap();
        let want = PoissonFraction::new(-&x2, x1.pow(2)).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn morphism_extension() {
        let t = table(2, 3);
        let (x1, x2) = (e(&t, 0), e(&t, 1));
        // swap: [x1,x2] -> [x2,x1] = -[x1,x2]
        let m = PoissonMorphism::from_generators(t.clone(), &[x2.poly().clone(), x1.poly().clone()])
            .unwrap();
        assert_eq!(m.image(2).unwrap(), &(-e(&t, 2).poly()));
    }
}
