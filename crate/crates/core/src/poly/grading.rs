use super::{PolyError, Polynomial};

/// Splitting of a polynomial by degree residue modulo `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDecomposition {
    d: u32,
    parts: Vec<Polynomial>,
}

impl GradedDecomposition {
    pub fn modulus(&self) -> u32 {
        self.d
    }

    pub fn parts(&self) -> &[Polynomial] {
        &self.parts
    }

    pub fn part(&self, residue: u32) -> &Polynomial {
        &self.parts[(residue % self.d) as usize]
    }

    pub fn into_parts(self) -> Vec<Polynomial> {
        self.parts
    }

    pub fn sum(&self) -> Polynomial {
        let n = self.parts[0].arity();
        self.parts
            .iter()
            .fold(Polynomial::zero(n), |acc, p| &acc + p)
    }
}

impl Polynomial {
    /// The `d`-grading by total degree.
    pub fn grade(&self, d: u32) -> Result<GradedDecomposition, PolyError> {
        let weights = vec![1; self.arity()];
        self.grade_weighted(d, &weights)
    }

    /// The `d`-grading where indeterminate `i` has weight `weights[i]`.
    pub fn grade_weighted(&self, d: u32, weights: &[u32]) -> Result<GradedDecomposition, PolyError> {
        if d < 2 {
            return Err(PolyError::BadModulus(d));
        }
        let parts = (0..d)
            .map(|r| self.retain_terms(|m| m.weighted_degree(weights) % d as u64 == r as u64))
            .collect();
        Ok(GradedDecomposition { d, parts })
    }

    /// True when every term has weighted degree congruent to `residue` mod `d`.
    /// The zero polynomial lies in every component.
    pub fn in_component(&self, d: u32, residue: u32, weights: &[u32]) -> bool {
        self.terms()
            .all(|(m, _)| m.weighted_degree(weights) % d as u64 == (residue % d) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let x = Polynomial::var(1, 0);
        let one = Polynomial::one(1);
        let p = &(&x.pow(2) + &x) + &one;
        let g = p.grade(2).unwrap();
        assert_eq!(g.parts()[0], &x.pow(2) + &one);
        assert_eq!(g.parts()[1], x);

        let g = Polynomial::zero(2).grade(3).unwrap();
        assert!(g.parts().iter().all(Polynomial::is_zero));
        assert_eq!(g.parts().len(), 3);

        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(2, 1);
        let p = &(&a.pow(3) + &(&a.pow(2) * &b)) + &(&a * &b);
        let g = p.grade(3).unwrap();
        assert_eq!(g.parts()[0], &a.pow(3) + &(&a.pow(2) * &b));
        assert!(g.parts()[1].is_zero());
        assert_eq!(g.parts()[2], &a * &b);
        assert_eq!(g.sum(), p);
    }

    #[test]
    fn modulus_below_two_rejected() {
        assert_eq!(
            Polynomial::one(1).grade(1),
            Err(PolyError::BadModulus(1))
        );
    }
}
