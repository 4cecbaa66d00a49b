use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyError, Scalar};

/// Sparse polynomial in `arity` indeterminates with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by graded-lex monomial order, so the
/// leading term is the last entry and structural equality is mathematical
/// equality. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Scalar::one())
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        Self::monomial(arity, Monomial::one(), c)
    }

    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable x{} out of range", index + 1);
        Self::monomial(arity, Monomial::var(index as u32), Scalar::one())
    }

    pub fn monomial(arity: usize, m: Monomial, c: Scalar) -> Self {
        debug_assert!(m.max_var().map_or(true, |v| (v as usize) < arity));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { arity, terms }
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::zero(arity);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Same terms viewed in a ring with more indeterminates.
    pub fn with_arity(&self, arity: usize) -> Self {
        assert!(
            self.terms
                .keys()
                .all(|m| m.max_var().map_or(true, |v| (v as usize) < arity)),
            "polynomial uses variables beyond the requested arity"
        );
        Polynomial {
            arity,
            terms: self.terms.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_value().map_or(false, |c| c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The value of a constant polynomial (`0` for the zero polynomial).
    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.coefficient(&Monomial::one()))
        } else {
            None
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Total degree, `None` standing in for `-inf` on the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).min()
    }

    pub fn degree_in(&self, var: u32) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(i, _)| i))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.arity != other.arity {
            Err(PolyError::ArityMismatch {
                left: self.arity,
                right: other.arity,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(other)?;
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Scalar::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            arity: self.arity,
            terms: acc,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.arity);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Exact quotient `self / q`.
    ///
    /// Runs multivariate division in graded-lex order. When `q` divides
    /// `self` every intermediate remainder is a multiple of `q`, so the first
    /// leading term not divisible by `lm(q)` ends the division; the rest of
    /// the remainder is reported as the witness.
    pub fn divide_exact(&self, q: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_arity(q)?;
        let (lm, lc) = match q.leading_term() {
            None => return Err(PolyError::DivisionByZero),
            Some((m, c)) => (m.clone(), c.clone()),
        };
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero(self.arity);
        while let Some((m, c)) = rem.leading_term() {
            let Some(t) = m.div(&lm) else {
                return Err(PolyError::NotDivisible { remainder: rem });
            };
            let coef = c / &lc;
            for (qm, qc) in &q.terms {
                rem.add_term(qm.mul(&t), -(qc * &coef));
            }
            quotient.add_term(t, coef);
        }
        Ok(quotient)
    }

    pub fn divides(&self, p: &Polynomial) -> bool {
        p.divide_exact(self).is_ok()
    }

    pub fn derivative(&self, var: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(var);
            if e > 0 {
                let m2 = rest.mul(&Monomial::var_pow(var, e - 1));
                out.add_term(m2, c * Scalar::from_integer(e.into()));
            }
        }
        out
    }

    /// Ring homomorphism sending indeterminate `i` to `images[i]`.
    ///
    /// The result lives in the ring of the images, which must all share one
    /// arity.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                left: self.arity,
                right: images.len(),
            });
        }
        let target = images.first().map_or(0, |p| p.arity);
        if let Some(bad) = images.iter().find(|p| p.arity != target) {
            return Err(PolyError::ArityMismatch {
                left: target,
                right: bad.arity,
            });
        }
        let mut powers: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for &(i, e) in m.pairs() {
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i as usize].pow(e));
                term = &term * pw;
                if term.is_zero() {
                    break;
                }
            }
            for (m2, c2) in term.terms {
                out.add_term(m2, c2);
            }
        }
        Ok(out)
    }

    /// Substitutes only the listed variables, leaving the others in place.
    pub fn substitute_partial(&self, images: &BTreeMap<u32, Polynomial>) -> Polynomial {
        let full: Vec<Polynomial> = (0..self.arity)
            .map(|i| {
                images
                    .get(&(i as u32))
                    .cloned()
                    .unwrap_or_else(|| Polynomial::var(self.arity, i))
            })
            .collect();
        self.substitute(&full).expect("images share the arity of self")
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Polynomial {
        Polynomial::from_terms(
            self.arity,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    pub fn retain_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Writes the polynomial with a caller-supplied name for each indeterminate.
    pub fn fmt_with(&self, names: &dyn Fn(u32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for &(i, e) in m.pairs() {
                if e == 1 {
                    factors.push(names(i));
                } else {
                    factors.push(format!("{}^{}", names(i), e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&|i| format!("x{}", i + 1)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// Operator impls panic on arity mismatch; use the `try_*` methods when the
// operands come from untrusted input.
impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial arity mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
