use std::sync::Arc;

use crate::poly::{Monomial, Polynomial};

use super::{GeneratorSet, Obstruction, ObstructionReason, Relation, VeroneseError};

/// A map on the Veronese subalgebra given by its values on the generators.
pub trait VeroneseMap {
    fn generator_set(&self) -> &GeneratorSet;

    /// Difference of the two sides of `rel` after applying the map; zero
    /// when the map respects the relation.
    fn relation_defect(&self, rel: &Relation) -> Polynomial;
}

/// A derivation of the Veronese subalgebra.
#[derive(Clone, Debug)]
pub struct VeroneseDerivation {
    gens: Arc<GeneratorSet>,
    images: Vec<Polynomial>,
}

/// An algebra map of the Veronese subalgebra, optionally with the values of
/// its inverse on the same generators.
#[derive(Clone, Debug)]
pub struct VeroneseAutomorphism {
    gens: Arc<GeneratorSet>,
    images: Vec<Polynomial>,
    inverse: Option<Vec<Polynomial>>,
}

fn validate_images(gens: &GeneratorSet, images: &[Polynomial]) -> Result<(), VeroneseError> {
    if images.len() != gens.len() {
        return Err(VeroneseError::WrongImageCount {
            expected: gens.len(),
            got: images.len(),
        });
    }
    let ctx = gens.context();
    for (i, img) in images.iter().enumerate() {
        if img.arity() != ctx.arity() {
            return Err(crate::poly::PolyError::ArityMismatch {
                left: ctx.arity(),
                right: img.arity(),
            }
            .into());
        }
        if !ctx.in_component(img, gens.d(), 0) {
            return Err(VeroneseError::ImageOutsideVeronese {
                generator: gens.name(i),
                image: ctx.format(img),
            });
        }
    }
    Ok(())
}

impl VeroneseDerivation {
    pub fn new(gens: Arc<GeneratorSet>, images: Vec<Polynomial>) -> Result<Self, VeroneseError> {
        validate_images(&gens, &images)?;
        Ok(VeroneseDerivation { gens, images })
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    /// `D(m)` for a monomial of the subalgebra, by the Leibniz rule over a
    /// factorization into generators.
    pub fn eval_monomial(&self, m: &Monomial) -> Result<Polynomial, VeroneseError> {
        let arity = self.gens.context().arity();
        let parts = self.gens.decompose(m)?;
        let mut out = Polynomial::zero(arity);
        for (t, &g) in parts.iter().enumerate() {
            if self.images[g].is_zero() {
                continue;
            }
            let mut rest = Monomial::one();
            for (s, &h) in parts.iter().enumerate() {
                if s != t {
                    rest = rest.mul(self.gens.generator(h));
                }
            }
            out = &out + &self.images[g].mul_monomial(&rest, &crate::poly::scalar(1));
        }
        Ok(out)
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, VeroneseError> {
        let mut out = Polynomial::zero(self.gens.context().arity());
        for (m, c) in p.terms() {
            if m.is_one() {
                continue;
            }
            out = &out + &self.eval_monomial(m)?.scale(c);
        }
        Ok(out)
    }
}

impl VeroneseMap for VeroneseDerivation {
    fn generator_set(&self) -> &GeneratorSet {
        &self.gens
    }

    fn relation_defect(&self, rel: &Relation) -> Polynomial {
        let side = |(a, b): (usize, usize)| {
            &(&self.images[a] * &self.gens.generator_poly(b)) + &(&self.gens.generator_poly(a) * &self.images[b])
        };
        &side(rel.left) - &side(rel.right)
    }
}

impl VeroneseAutomorphism {
    pub fn new(gens: Arc<GeneratorSet>, images: Vec<Polynomial>) -> Result<Self, VeroneseError> {
        validate_images(&gens, &images)?;
        Ok(VeroneseAutomorphism {
            gens,
            images,
            inverse: None,
        })
    }

    pub fn with_inverse(
        gens: Arc<GeneratorSet>,
        images: Vec<Polynomial>,
        inverse: Vec<Polynomial>,
    ) -> Result<Self, VeroneseError> {
        validate_images(&gens, &images)?;
        validate_images(&gens, &inverse)?;
        Ok(VeroneseAutomorphism {
            gens,
            images,
            inverse: Some(inverse),
        })
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    pub fn inverse_images(&self) -> Option<&[Polynomial]> {
        self.inverse.as_deref()
    }

    /// The inverse as a map in its own right (its inverse is `self`).
    pub fn inverse(&self) -> Option<VeroneseAutomorphism> {
        self.inverse.as_ref().map(|inv| VeroneseAutomorphism {
            gens: self.gens.clone(),
            images: inv.clone(),
            inverse: Some(self.images.clone()),
        })
    }

    pub fn eval_monomial(&self, m: &Monomial) -> Result<Polynomial, VeroneseError> {
        let arity = self.gens.context().arity();
        let parts = self.gens.decompose(m)?;
        let mut out = Polynomial::one(arity);
        for g in parts {
            out = &out * &self.images[g];
        }
        Ok(out)
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, VeroneseError> {
        let mut out = Polynomial::zero(self.gens.context().arity());
        for (m, c) in p.terms() {
            out = &out + &self.eval_monomial(m)?.scale(c);
        }
        Ok(out)
    }
}

impl VeroneseMap for VeroneseAutomorphism {
    fn generator_set(&self) -> &GeneratorSet {
        &self.gens
    }

    fn relation_defect(&self, rel: &Relation) -> Polynomial {
        let side = |(a, b): (usize, usize)| &self.images[a] * &self.images[b];
        &side(rel.left) - &side(rel.right)
    }
}

/// Checks every quadratic relation among the generators; returns the number
/// of relations checked.
pub fn check_relations(map: &dyn VeroneseMap) -> Result<usize, Obstruction> {
    let gens = map.generator_set();
    let rels = gens.relations();
    for rel in &rels {
        let defect = map.relation_defect(rel);
        if !defect.is_zero() {
            let msg = format!(
                "relation ({})*({}) = ({})*({}) is violated",
                gens.name(rel.left.0),
                gens.name(rel.left.1),
                gens.name(rel.right.0),
                gens.name(rel.right.1)
            );
            return Err(Obstruction::new(ObstructionReason::RelationInconsistent, msg).with("defect", defect));
        }
    }
    Ok(rels.len())
}

fn check_graded(gens: &GeneratorSet, images: &[Polynomial]) -> Result<(), VeroneseError> {
    let ctx = gens.context();
    if images.len() != ctx.n() {
        return Err(VeroneseError::WrongImageCount {
            expected: ctx.n(),
            got: images.len(),
        });
    }
    for (i, img) in images.iter().enumerate() {
        if img.arity() != ctx.arity() {
            return Err(crate::poly::PolyError::ArityMismatch {
                left: ctx.arity(),
                right: img.arity(),
            }
            .into());
        }
        if !ctx.in_component(img, gens.d(), 1) {
            return Err(VeroneseError::NotGraded {
                variable: ctx.var_name(i),
                residue: 1,
                image: ctx.format(img),
            });
        }
    }
    Ok(())
}

/// Restricts the `d`-graded derivation with `S(x_i) = images[i]` to the
/// Veronese subalgebra.
pub fn restrict_derivation(gens: Arc<GeneratorSet>, images: &[Polynomial]) -> Result<VeroneseDerivation, VeroneseError> {
    check_graded(&gens, images)?;
    let ctx = gens.context();
    let full = ctx.extend_derivation(images)?;
    let values = (0..gens.len())
        .map(|i| ctx.apply_derivation(&full, &gens.generator_poly(i)))
        .collect::<Result<Vec<_>, _>>()?;
    VeroneseDerivation::new(gens, values)
}

fn restrict_map(gens: &GeneratorSet, images: &[Polynomial]) -> Result<Vec<Polynomial>, VeroneseError> {
    check_graded(gens, images)?;
    let ctx = gens.context();
    let full = ctx.extend_morphism(images)?;
    (0..gens.len())
        .map(|i| ctx.apply_morphism(&full, &gens.generator_poly(i)))
        .collect()
}

/// Restricts the `d`-graded endomorphism `x_i -> images[i]`.
pub fn restrict_automorphism(gens: Arc<GeneratorSet>, images: &[Polynomial]) -> Result<VeroneseAutomorphism, VeroneseError> {
    let values = restrict_map(&gens, images)?;
    VeroneseAutomorphism::new(gens, values)
}

/// Restricts a `d`-graded automorphism together with its inverse.
pub fn restrict_automorphism_with_inverse(
    gens: Arc<GeneratorSet>,
    images: &[Polynomial],
    inverse: &[Polynomial],
) -> Result<VeroneseAutomorphism, VeroneseError> {
    let values = restrict_map(&gens, images)?;
    let inv = restrict_map(&gens, inverse)?;
    VeroneseAutomorphism::with_inverse(gens, values, inv)
}
