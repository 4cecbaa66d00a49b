use std::collections::{BTreeMap, HashMap, HashSet};

use crate::poly::{scalar, Monomial, Polynomial};

use super::{Context, VeroneseError};

/// The monomial generators of a Veronese subalgebra.
///
/// For `K[x1..xn]` these are all monomials of degree `d`. For the free
/// Poisson algebra they are the basis monomials of weighted degree divisible
/// by `d` (up to the generator bound) that do not split into two such
/// monomials.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    context: Context,
    d: u32,
    generators: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// `Y_a * Y_b = Y_c * Y_e` as monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relation {
    pub left: (usize, usize),
    pub right: (usize, usize),
}

impl GeneratorSet {
    /// `build_generators`.
    pub fn build(context: Context, d: u32) -> Result<Self, VeroneseError> {
        if d < 2 {
            return Err(VeroneseError::BadDegree(d));
        }
        if let Some(bound) = context.generator_bound() {
            if bound < d as usize {
                return Err(VeroneseError::BoundTooSmall { bound, d });
            }
        }
        let mut generators = match context.generator_bound() {
            None => Monomial::all_of_weight(context.weights(), d as u64),
            Some(bound) => {
                let mut all = Vec::new();
                let mut w = d as u64;
                while w <= bound as u64 {
                    all.extend(
                        Monomial::all_of_weight(context.weights(), w)
                            .into_iter()
                            .filter(|m| is_indecomposable(m, context.weights(), d)),
                    );
                    w += d as u64;
                }
                all
            }
        };
        let weights = context.weights().to_vec();
        generators.sort_by(|a, b| {
            a.weighted_degree(&weights)
                .cmp(&b.weighted_degree(&weights))
                .then_with(|| b.cmp(a))
        });
        let index = generators
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(GeneratorSet {
            context,
            d,
            generators,
            index,
        })
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Monomial {
        &self.generators[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn weight(&self, m: &Monomial) -> u64 {
        m.weighted_degree(self.context.weights())
    }

    pub fn name(&self, i: usize) -> String {
        self.context.format(&self.generator_poly(i))
    }

    /// Generator `i` as a polynomial of the ambient ring.
    pub fn generator_poly(&self, i: usize) -> Polynomial {
        Polynomial::monomial(self.context.arity(), self.generators[i].clone(), scalar(1))
    }

    /// Every quadratic coincidence `Y_a Y_b = Y_c Y_e` between generator
    /// pairs; within each product class, each pair is related to the first.
    pub fn relations(&self) -> Vec<Relation> {
        let mut classes: BTreeMap<Monomial, Vec<(usize, usize)>> = BTreeMap::new();
        for a in 0..self.generators.len() {
            for b in a..self.generators.len() {
                classes
                    .entry(self.generators[a].mul(&self.generators[b]))
                    .or_default()
                    .push((a, b));
            }
        }
        let mut out = Vec::new();
        for pairs in classes.values() {
            for other in &pairs[1..] {
                out.push(Relation {
                    left: pairs[0],
                    right: *other,
                });
            }
        }
        out
    }

    /// Writes a monomial of the Veronese subalgebra as a product of
    /// generators (as a list of generator indices, with repetition).
    pub fn decompose(&self, m: &Monomial) -> Result<Vec<usize>, VeroneseError> {
        let not_decomposable = || {
            VeroneseError::NotDecomposable(
                self.context
                    .format(&Polynomial::monomial(self.context.arity(), m.clone(), scalar(1))),
            )
        };
        if self.weight(m) % self.d as u64 != 0 {
            return Err(not_decomposable());
        }
        let mut failed = HashSet::new();
        let mut out = Vec::new();
        if self.decompose_into(m, &mut out, &mut failed) {
            Ok(out)
        } else {
            Err(not_decomposable())
        }
    }

    fn decompose_into(&self, m: &Monomial, out: &mut Vec<usize>, failed: &mut HashSet<Monomial>) -> bool {
        if m.is_one() {
            return true;
        }
        if let Some(i) = self.index_of(m) {
            out.push(i);
            return true;
        }
        if failed.contains(m) {
            return false;
        }
        for (i, g) in self.generators.iter().enumerate() {
            if let Some(rest) = m.div(g) {
                out.push(i);
                if self.decompose_into(&rest, out, failed) {
                    return true;
                }
                out.pop();
            }
        }
        failed.insert(m.clone());
        false
    }
}

/// No proper nonconstant factor of `m` has weighted degree divisible by `d`.
fn is_indecomposable(m: &Monomial, weights: &[u32], d: u32) -> bool {
    let pairs = m.pairs();
    let total = m.weighted_degree(weights);
    let mut exps = vec![0u32; pairs.len()];
    loop {
        // next sub-exponent vector in mixed radix
        let mut k = 0;
        loop {
            if k == pairs.len() {
                return true;
            }
            if exps[k] < pairs[k].1 {
                exps[k] += 1;
                break;
            }
            exps[k] = 0;
            k += 1;
        }
        let w: u64 = pairs
            .iter()
            .zip(&exps)
            .map(|(&(i, _), &e)| weights[i as usize] as u64 * e as u64)
            .sum();
        if w != total && w % d as u64 == 0 {
            return false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieBasis;

    #[test]
    fn polynomial_generators() {
        let g = GeneratorSet::build(Context::polynomial(2).unwrap(), 2).unwrap();
        let names: Vec<String> = (0..g.len()).map(|i| g.name(i)).collect();
        assert_eq!(names, vec!["x1^2", "x1*x2", "x2^2"]);

        let g = GeneratorSet::build(Context::polynomial(1).unwrap(), 3).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.name(0), "x1^3");

        // C(n+d-1, d)
        let g = GeneratorSet::build(Context::polynomial(3).unwrap(), 3).unwrap();
        assert_eq!(g.len(), 10);
        assert!(matches!(
            GeneratorSet::build(Context::polynomial(2).unwrap(), 1),
            Err(VeroneseError::BadDegree(1))
        ));
    }

    #[test]
    fn poisson_generators() {
        let basis = LieBasis::shared(2, 4).unwrap();
        let g = GeneratorSet::build(Context::poisson(basis), 2).unwrap();
        let names: Vec<String> = (0..g.len()).map(|i| g.name(i)).collect();
        assert_eq!(&names[..4], &["x1^2", "x1*x2", "x2^2", "[x1,x2]"]);
        assert!(names.contains(&"x1*[x1,[x1,x2]]".to_string()));
        assert!(names.contains(&"[x1,[x1,[x1,x2]]]".to_string()));
        // decomposable products are excluded
        assert!(!names.contains(&"x1^2*[x1,x2]".to_string()));
        assert!(!names.contains(&"x1^4".to_string()));
        for i in 0..g.len() {
            assert_eq!(g.weight(g.generator(i)) % 2, 0);
        }
    }

    #[test]
    fn bound_must_cover_degree() {
        let basis = LieBasis::shared(2, 2).unwrap();
        assert!(matches!(
            GeneratorSet::build(Context::poisson(basis), 3),
            Err(VeroneseError::BoundTooSmall { .. })
        ));
    }

    #[test]
    fn relations_and_decomposition() {
        let g = GeneratorSet::build(Context::polynomial(2).unwrap(), 2).unwrap();
        let rels = g.relations();
        // x1^2 * x2^2 = (x1 x2)^2 is the only coincidence
        assert_eq!(rels, vec![Relation { left: (0, 2), right: (1, 1) }]);
        let m = Monomial::from_dense(&[3, 1]);
        let parts = g.decompose(&m).unwrap();
        let prod = parts
            .iter()
            .fold(Monomial::one(), |acc, &i| acc.mul(g.generator(i)));
        assert_eq!(prod, m);
        assert!(g.decompose(&Monomial::from_dense(&[1, 0])).is_err());
    }
}
