use std::collections::BTreeMap;

use crate::poly::{Monomial, Polynomial, Scalar};

use super::derivation::is_overflow;
use super::{Lift, LiftKind, VeroneseError};

pub const DEFAULT_LND_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LndVerdict {
    /// Every free generator is killed by some iterate within the cap.
    LocallyNilpotent,
    /// `S^iteration(x_variable)` is nonzero and a linear combination of the
    /// earlier iterates, so no power of `S` kills `x_variable`.
    NotNilpotent {
        variable: usize,
        iteration: usize,
        witness: Polynomial,
    },
    /// No verdict: some generator was still alive after `cap` iterations.
    CapExceeded { variable: usize },
    /// No verdict: an iterate left the Poisson basis table.
    BeyondBound { variable: usize, iteration: usize },
}

#[derive(Clone, Debug)]
pub struct LndReport {
    /// Smallest `k` with `S^k(x_i) = 0`, per free generator, where found.
    pub indices: Vec<Option<usize>>,
    pub verdict: LndVerdict,
    pub cap: usize,
}

impl LndReport {
    pub fn is_locally_nilpotent(&self) -> bool {
        self.verdict == LndVerdict::LocallyNilpotent
    }
}

/// Row-reduced span of the iterates seen so far.
struct Echelon {
    rows: Vec<(Monomial, BTreeMap<Monomial, Scalar>)>,
}

impl Echelon {
    /// Reduces `p` against the basis; inserts and returns true when it is
    /// independent.
    fn insert(&mut self, p: &Polynomial) -> bool {
        let mut v: BTreeMap<Monomial, Scalar> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                for (m, rc) in row {
                    let e = v.entry(m.clone()).or_insert_with(num_traits::Zero::zero);
                    *e -= &c * rc;
                    if num_traits::Zero::is_zero(e) {
                        v.remove(m);
                    }
                }
            }
        }
        let Some((pivot, lc)) = v.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
            return false;
        };
        let inv = num_traits::Inv::inv(lc);
        for c in v.values_mut() {
            *c *= &inv;
        }
        // keep rows fully reduced against the new pivot
        for (_, row) in self.rows.iter_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                for (m, vc) in &v {
                    let e = row.entry(m.clone()).or_insert_with(num_traits::Zero::zero);
                    *e -= &c * vc;
                    if num_traits::Zero::is_zero(e) {
                        row.remove(m);
                    }
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Iterates the lifted derivation on each free generator until it vanishes,
/// repeats linearly, or reaches `cap` iterations.
pub fn check_locally_nilpotent(lift: &Lift, cap: usize) -> Result<LndReport, VeroneseError> {
    assert_eq!(lift.kind, LiftKind::Derivation, "nilpotency is a property of derivations");
    let ctx = &lift.context;
    let mut indices = Vec::with_capacity(ctx.n());
    let mut verdict = LndVerdict::LocallyNilpotent;
    for i in 0..ctx.n() {
        let mut current = ctx.var(i);
        let mut echelon = Echelon { rows: Vec::new() };
        echelon.insert(&current);
        let mut index = None;
        for k in 1..=cap {
            current = match ctx.apply_derivation(&lift.images, &current) {
                Ok(p) => p,
                Err(e) if is_overflow(&e) => {
                    if verdict == LndVerdict::LocallyNilpotent {
                        verdict = LndVerdict::BeyondBound {
                            variable: i,
                            iteration: k,
                        };
                    }
                    break;
                }
                Err(e) => return Err(e),
            };
            if current.is_zero() {
                index = Some(k);
                break;
            }
            if !echelon.insert(&current) {
                indices.push(None);
                return Ok(LndReport {
                    indices,
                    verdict: LndVerdict::NotNilpotent {
                        variable: i,
                        iteration: k,
                        witness: current,
                    },
                    cap,
                });
            }
        }
        if index.is_none() && verdict == LndVerdict::LocallyNilpotent {
            verdict = LndVerdict::CapExceeded { variable: i };
        }
        indices.push(index);
    }
    Ok(LndReport { indices, verdict, cap })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::poly::scalar;
    use crate::veronese::{lift_derivation, restrict_derivation, Context, GeneratorSet};

    fn lift_of(n: usize, d: u32, s: &[Polynomial]) -> Lift {
        let g = Arc::new(GeneratorSet::build(Context::polynomial(n).unwrap(), d).unwrap());
        let map = restrict_derivation(g, s).unwrap();
        lift_derivation(&map).unwrap().into_lift().unwrap()
    }

    #[test]
    fn nilpotent_indices() {
        let lift = lift_of(2, 2, &[Polynomial::var(2, 1), Polynomial::zero(2)]);
        let r = check_locally_nilpotent(&lift, DEFAULT_LND_CAP).unwrap();
        assert_eq!(r.indices, vec![Some(2), Some(1)]);
        assert!(r.is_locally_nilpotent());
    }

    #[test]
    fn euler_is_not_nilpotent() {
        let lift = lift_of(2, 2, &[Polynomial::var(2, 0), Polynomial::var(2, 1)]);
        let r = check_locally_nilpotent(&lift, DEFAULT_LND_CAP).unwrap();
        assert!(matches!(r.verdict, LndVerdict::NotNilpotent { variable: 0, iteration: 1, .. }));
    }

    #[test]
    fn triangular_cubic() {
        let n = 3;
        let x = |i| Polynomial::var(n, i);
        // x1 -> x2 + x3^4, x2 -> x3, x3 -> 0
        let s = vec![&x(1) + &x(2).pow(4), x(2).scale(&scalar(3)), Polynomial::zero(n)];
        let lift = lift_of(n, 3, &s);
        let r = check_locally_nilpotent(&lift, DEFAULT_LND_CAP).unwrap();
        assert_eq!(r.indices, vec![Some(3), Some(2), Some(1)]);
    }

    #[test]
    fn rotation_is_caught_by_dependency() {
        // x1 -> x2, x2 -> -x1
        let lift = lift_of(2, 2, &[Polynomial::var(2, 1), Polynomial::var(2, 0).scale(&scalar(-1))]);
        let r = check_locally_nilpotent(&lift, DEFAULT_LND_CAP).unwrap();
        assert!(matches!(r.verdict, LndVerdict::NotNilpotent { iteration: 2, .. }));
    }
}
