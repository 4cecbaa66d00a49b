use std::sync::Arc;

use crate::lie::LieBasis;
use crate::poisson::{self, PoissonDerivation, PoissonMorphism};
use crate::poly::Polynomial;

use super::VeroneseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContextKind {
    Polynomial,
    Poisson,
}

/// The ambient algebra: `K[x1..xn]`, or the free Poisson algebra on `n`
/// generators truncated by a basis table.
#[derive(Clone, Debug)]
pub struct Context {
    kind: ContextKind,
    n: usize,
    weights: Vec<u32>,
    basis: Option<Arc<LieBasis>>,
    generator_bound: Option<usize>,
}

impl Context {
    pub fn polynomial(n: usize) -> Result<Self, VeroneseError> {
        if n == 0 {
            return Err(VeroneseError::NoVariables);
        }
        Ok(Context {
            kind: ContextKind::Polynomial,
            n,
            weights: vec![1; n],
            basis: None,
            generator_bound: None,
        })
    }

    /// Poisson context whose Veronese generators go up to the table bound.
    pub fn poisson(basis: Arc<LieBasis>) -> Self {
        let bound = basis.bound();
        Self::poisson_with_generator_bound(basis, bound).expect("bound equals table bound")
    }

    /// Poisson context with Veronese generators of weighted degree at most
    /// `generator_bound`; the extra table room absorbs degree-raising maps.
    pub fn poisson_with_generator_bound(
        basis: Arc<LieBasis>,
        generator_bound: usize,
    ) -> Result<Self, VeroneseError> {
        if generator_bound > basis.bound() {
            return Err(VeroneseError::BoundTooSmall {
                bound: basis.bound(),
                d: generator_bound as u32,
            });
        }
        Ok(Context {
            kind: ContextKind::Poisson,
            n: basis.n(),
            weights: basis.degrees().to_vec(),
            basis: Some(basis),
            generator_bound: Some(generator_bound),
        })
    }

    pub fn kind(&self) -> ContextKind {
        self.kind
    }

    pub fn is_poisson(&self) -> bool {
        self.kind == ContextKind::Poisson
    }

    /// Number of free generators `x1..xn`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of polynomial indeterminates: `n`, or the basis table size.
    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, var: usize) -> u32 {
        self.weights[var]
    }

    pub fn basis(&self) -> Option<&Arc<LieBasis>> {
        self.basis.as_ref()
    }

    /// Largest weighted degree of a Veronese generator; `None` means
    /// unbounded (polynomial case).
    pub fn generator_bound(&self) -> Option<usize> {
        self.generator_bound
    }

    pub fn table_bound(&self) -> Option<usize> {
        self.basis.as_ref().map(|b| b.bound())
    }

    pub fn within_generator_bound(&self, weight: u64) -> bool {
        self.generator_bound.map_or(true, |b| weight <= b as u64)
    }

    pub fn var_name(&self, var: usize) -> String {
        match &self.basis {
            Some(b) => b.name(var),
            None => format!("x{}", var + 1),
        }
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.fmt_with(&|i| self.var_name(i as usize))
    }

    pub fn in_component(&self, p: &Polynomial, d: u32, residue: u32) -> bool {
        p.in_component(d, residue, &self.weights)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.arity(), i)
    }

    /// Poisson bracket; zero in the polynomial case is never requested.
    pub(crate) fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, VeroneseError> {
        let basis = self.basis.as_ref().expect("bracket needs a Poisson context");
        Ok(poisson::bracket(basis, f, g)?)
    }

    /// Applies the derivation with the given images of the indeterminates.
    /// Images may be missing (Poisson entries beyond the table).
    pub(crate) fn apply_derivation(
        &self,
        images: &[Option<Polynomial>],
        f: &Polynomial,
    ) -> Result<Polynomial, VeroneseError> {
        match &self.basis {
            Some(b) => Ok(PoissonDerivation::from_partial(b.clone(), images.to_vec()).apply(f)?),
            None => {
                let mut out = Polynomial::zero(self.arity());
                for i in f.vars() {
                    let img = images[i as usize].as_ref().expect("polynomial images are total");
                    out = &out + &(&f.derivative(i) * img);
                }
                Ok(out)
            }
        }
    }

    /// Applies the algebra map with the given images of the indeterminates.
    pub(crate) fn apply_morphism(
        &self,
        images: &[Option<Polynomial>],
        f: &Polynomial,
    ) -> Result<Polynomial, VeroneseError> {
        match &self.basis {
            Some(b) => Ok(PoissonMorphism::from_partial(b.clone(), images.to_vec()).apply(f)?),
            None => {
                let full: Vec<Polynomial> = images
                    .iter()
                    .map(|p| p.clone().expect("polynomial images are total"))
                    .collect();
                Ok(f.substitute(&full)?)
            }
        }
    }

    /// Extends images of `x1..xn` to every indeterminate: identity extension
    /// for polynomials, bracket-law extension for Poisson.
    pub(crate) fn extend_derivation(&self, generator_images: &[Polynomial]) -> Result<Vec<Option<Polynomial>>, VeroneseError> {
        match &self.basis {
            Some(b) => Ok(PoissonDerivation::from_generators(b.clone(), generator_images)?
                .images()
                .to_vec()),
            None => Ok(generator_images.iter().cloned().map(Some).collect()),
        }
    }

    pub(crate) fn extend_morphism(&self, generator_images: &[Polynomial]) -> Result<Vec<Option<Polynomial>>, VeroneseError> {
        match &self.basis {
            Some(b) => Ok(PoissonMorphism::from_generators(b.clone(), generator_images)?
                .images()
                .to_vec()),
            None => Ok(generator_images.iter().cloned().map(Some).collect()),
        }
    }
}
