//! Slow, independent reference computations for tests.
//!
//! Nothing here shares code with the kernel: Lyndon words are recognized by
//! the rotation definition, Lie elements are expanded into the free
//! associative algebra via `[u, v] = uv - vu`, and membership in the span of
//! the Lyndon basis is decided by Gaussian elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Assoc = BTreeMap<Vec<u8>, BigRational>;

fn mobius(mut k: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            k /= p;
            if k % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if k > 1 {
        result = -result;
    }
    result
}

/// Number of aperiodic necklaces of length `m` over `n` letters:
/// `(1/m) * sum_{k | m} mu(k) n^(m/k)`.
pub fn necklace_count(n: u64, m: u64) -> u64 {
    let mut total: i128 = 0;
    for k in 1..=m {
        if m % k == 0 {
            total += mobius(k) as i128 * (n as i128).pow((m / k) as u32);
        }
    }
    (total / m as i128) as u64
}

/// Lyndon test by rotations: strictly smaller than every nontrivial rotation.
pub fn is_lyndon_by_rotation(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| {
        let rot: Vec<u8> = w[i..].iter().chain(w[..i].iter()).copied().collect();
        w < &rot[..]
    })
}

/// Every Lyndon word of length `m`, found by exhaustive search.
pub fn lyndon_words_brute(n: usize, m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let total = n.pow(m as u32);
    for code in 0..total {
        let mut w = vec![0u8; m];
        let mut c = code;
        for slot in w.iter_mut().rev() {
            *slot = (c % n) as u8;
            c /= n;
        }
        if is_lyndon_by_rotation(&w) {
            out.push(w);
        }
    }
    out
}

fn standard_split(w: &[u8]) -> (&[u8], &[u8]) {
    let i = (1..w.len())
        .find(|&i| is_lyndon_by_rotation(&w[i..]))
        .expect("words of length >= 2 have a Lyndon suffix");
    (&w[..i], &w[i..])
}

fn assoc_mul(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (u, c) in a {
        for (v, e) in b {
            let w: Vec<u8> = u.iter().chain(v.iter()).copied().collect();
            *out.entry(w).or_insert_with(BigRational::zero) += c * e;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn assoc_sub(a: &Assoc, b: &Assoc) -> Assoc {
    let mut out = a.clone();
    for (w, c) in b {
        *out.entry(w.clone()).or_insert_with(BigRational::zero) -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn commutator(a: &Assoc, b: &Assoc) -> Assoc {
    assoc_sub(&assoc_mul(a, b), &assoc_mul(b, a))
}

/// Associative expansion of the standard bracketing of a Lyndon word.
pub fn lyndon_polynomial(w: &[u8]) -> Assoc {
    if w.len() == 1 {
        let mut a = Assoc::new();
        a.insert(w.to_vec(), BigRational::one());
        return a;
    }
    let (u, v) = standard_split(w);
    commutator(&lyndon_polynomial(u), &lyndon_polynomial(v))
}

fn letter_counts(w: &[u8], n: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    for &c in w {
        v[c as usize] += 1;
    }
    v
}

/// Coordinates of `p` in the Lyndon basis, or `None` if `p` is not a Lie
/// element.
pub fn express_in_lyndon_basis(p: &Assoc, n: usize) -> Option<BTreeMap<Vec<u8>, BigRational>> {
    let mut blocks: BTreeMap<Vec<u32>, Assoc> = BTreeMap::new();
    for (w, c) in p {
        blocks
            .entry(letter_counts(w, n))
            .or_default()
            .insert(w.clone(), c.clone());
    }
    let mut result = BTreeMap::new();
    for (md, block) in blocks {
        let m: u32 = md.iter().sum();
        let basis: Vec<Vec<u8>> = lyndon_words_brute(n, m as usize)
            .into_iter()
            .filter(|w| letter_counts(w, n) == md)
            .collect();
        let columns: Vec<Assoc> = basis.iter().map(|w| lyndon_polynomial(w)).collect();
        let coords = solve(&columns, &block)?;
        for (w, c) in basis.into_iter().zip(coords) {
            if !c.is_zero() {
                result.insert(w, c);
            }
        }
    }
    Some(result)
}

/// Solves `sum_j x_j columns[j] = target` exactly, if solvable.
fn solve(columns: &[Assoc], target: &Assoc) -> Option<Vec<BigRational>> {
    let mut rows_index: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for col in columns.iter().chain(std::iter::once(target)) {
        for w in col.keys() {
            let next = rows_index.len();
            rows_index.entry(w.clone()).or_insert(next);
        }
    }
    let rows = rows_index.len();
    let cols = columns.len();
    let mut mat = vec![vec![BigRational::zero(); cols + 1]; rows];
    for (j, col) in columns.iter().enumerate() {
        for (w, c) in col {
            mat[rows_index[w]][j] = c.clone();
        }
    }
    for (w, c) in target {
        mat[rows_index[w]][cols] = c.clone();
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for k in c..=cols {
            mat[r][k] = &mat[r][k] * &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for k in c..=cols {
                    let delta = &f * &mat[r][k];
                    mat[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if mat[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = mat[i][cols].clone();
    }
    Some(x)
}

/// `[P_u, P_v]` in the Lyndon basis, computed through the associative algebra.
pub fn oracle_bracket(u: &[u8], v: &[u8], n: usize) -> BTreeMap<Vec<u8>, BigRational> {
    let p = commutator(&lyndon_polynomial(u), &lyndon_polynomial(v));
    express_in_lyndon_basis(&p, n).expect("a commutator of Lie elements is a Lie element")
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn necklaces() {
        assert_eq!(necklace_count(2, 1), 2);
        assert_eq!(necklace_count(2, 2), 1);
        assert_eq!(necklace_count(2, 3), 2);
        assert_eq!(necklace_count(2, 4), 3);
        assert_eq!(necklace_count(3, 2), 3);
        assert_eq!(necklace_count(2, 6), 9);
    }

    #[test]
    fn brute_force_matches_necklaces() {
        for m in 1..=6 {
            assert_eq!(lyndon_words_brute(2, m).len() as u64, necklace_count(2, m as u64));
        }
    }

    #[test]
    fn non_lie_element_rejected() {
        let mut p = Assoc::new();
        p.insert(vec![0, 1], int(1));
        assert!(express_in_lyndon_basis(&p, 2).is_none());
    }

    #[test]
    fn bracket_112_with_x1() {
        // [[x1,x2],x1] = -[x1,[x1,x2]]
        let r = oracle_bracket(&[0, 1], &[0], 2);
        assert_eq!(r.len(), 1);
        assert_eq!(r[&vec![0, 0, 1]], int(-1));
    }
}
