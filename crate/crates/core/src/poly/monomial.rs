use std::cmp::Ordering;
use std::fmt;

/// A commutative monomial stored sparsely as `(variable, exponent)` pairs.
///
/// Pairs are sorted by variable index and every exponent is positive, so two
/// equal monomials always have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: u32) -> Self {
        Monomial(vec![(index, 1)])
    }

    pub fn var_pow(index: u32, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(index, exp)])
        }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged
    /// and zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut v: Vec<(u32, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_unstable_by_key(|&(i, _)| i);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (i, e) in v {
            match out.last_mut() {
                Some((j, f)) if *j == i => *f += e,
                _ => out.push((i, e)),
            }
        }
        Monomial(out)
    }

    /// Dense exponent vector of the given length.
    pub fn from_dense(exps: &[u32]) -> Self {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i as u32, e))
                .collect(),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        let mut v = vec![0; len];
        for &(i, e) in &self.0 {
            v[i as usize] = e;
        }
        v
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Degree where variable `i` carries weight `weights[i]`.
    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .map(|&(i, e)| weights[i as usize] as u64 * e as u64)
            .sum()
    }

    pub fn exponent(&self, var: u32) -> u32 {
        match self.0.binary_search_by_key(&var, |&(i, _)| i) {
            Ok(pos) => self.0[pos].1,
            Err(_) => 0,
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        self.0.last().map(|&(i, _)| i)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(i, e)| (i, e * k)).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(i, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < i {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == i {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((i, e - f)),
                }
            } else {
                out.push((i, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.div(self).is_some()
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(i, e) in &self.0 {
            let f = other.exponent(i);
            if f > 0 {
                out.push((i, e.min(f)));
            }
        }
        Monomial(out)
    }

    /// Exact `k`-th root when every exponent is divisible by `k`.
    pub fn root(&self, k: u32) -> Option<Monomial> {
        if k == 0 {
            return None;
        }
        if self.0.iter().any(|&(_, e)| e % k != 0) {
            return None;
        }
        Some(Monomial(self.0.iter().map(|&(i, e)| (i, e / k)).collect()))
    }

    /// Removes variable `var`, returning its exponent and the remaining part.
    pub fn split_var(&self, var: u32) -> (u32, Monomial) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut exp = 0;
        for &(i, e) in &self.0 {
            if i == var {
                exp = e;
            } else {
                rest.push((i, e));
            }
        }
        (exp, Monomial(rest))
    }

    /// Replaces each variable `i` by `map[i]`.
    pub fn rename(&self, map: &[u32]) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(i, e)| (map[i as usize], e)))
    }

    /// Every monomial whose weighted degree is exactly `target`; variable
    /// `i` has weight `weights[i]`.
    pub fn all_of_weight(weights: &[u32], target: u64) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current: Vec<(u32, u32)> = Vec::new();
        fill_weight(weights, 0, target, &mut current, &mut out);
        out
    }
}

/// Graded lexicographic order with `x1 > x2 > ... > xn`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.total_degree().cmp(&other.total_degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a.0 != b.0 {
                // the monomial using the earlier variable is larger
                return if a.0 < b.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

fn fill_weight(weights: &[u32], start: usize, remaining: u64, current: &mut Vec<(u32, u32)>, out: &mut Vec<Monomial>) {
    if remaining == 0 {
        out.push(Monomial::from_pairs(current.iter().copied()));
        return;
    }
    for i in start..weights.len() {
        let w = weights[i] as u64;
        if w == 0 || w > remaining {
            continue;
        }
        let mut e = 1;
        while e as u64 * w <= remaining {
            current.push((i as u32, e));
            fill_weight(weights, i + 1, remaining - e as u64 * w, current, out);
            current.pop();
            e += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(d: &[u32]) -> Monomial {
        Monomial::from_dense(d)
    }

    #[test]
    fn grlex_order() {
        // degree first
        assert!(m(&[0, 2]) > m(&[1]));
        // x1 > x2
        assert!(m(&[1, 0]) > m(&[0, 1]));
        // x1^2 > x1 x2 > x2^2
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        // x1 x3 > x2^2
        assert!(m(&[1, 0, 1]) > m(&[0, 2, 0]));
        assert_eq!(m(&[1, 2]).cmp(&m(&[1, 2])), Ordering::Equal);
    }

    #[test]
    fn division_and_roots() {
        assert_eq!(m(&[2, 1]).div(&m(&[1, 0])), Some(m(&[1, 1])));
        assert_eq!(m(&[2, 0]).div(&m(&[0, 1])), None);
        assert_eq!(m(&[2, 4]).root(2), Some(m(&[1, 2])));
        assert_eq!(m(&[2, 3]).root(2), None);
        assert_eq!(m(&[3, 1]).gcd(&m(&[1, 5])), m(&[1, 1]));
    }

    #[test]
    fn from_pairs_merges() {
        let a = Monomial::from_pairs([(1, 1), (0, 2), (1, 2), (3, 0)]);
        assert_eq!(a, m(&[2, 3]));
    }
}
