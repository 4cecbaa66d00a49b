//! Free Lie algebra on `x1..xn` in the Lyndon basis.
//!
//! Words are sequences of 0-based letters; the basis element attached to a
//! Lyndon word is its standard bracketing. Brackets of basis elements are
//! rewritten back into the basis with the classical Jacobi-based procedure.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Scalar;

pub type Word = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("basis element {word} has degree {degree}, above the table bound {bound}")]
    DegreeOverflow {
        word: String,
        degree: usize,
        bound: usize,
    },
    #[error("letter x{letter} outside the alphabet x1..x{n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("{0} is not the standard bracketing of a Lyndon word")]
    NotCanonical(String),
    #[error("alphabet must have at least one letter and the degree bound must be positive")]
    EmptyTable,
}

/// True when `w` is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u8]) -> Option<(&[u8], &[u8])> {
    if w.len() < 2 {
        return None;
    }
    (1..w.len())
        .find(|&i| is_lyndon(&w[i..]))
        .map(|i| (&w[..i], &w[i..]))
}

/// All Lyndon words of length `<= max_len` over `n` letters, ordered by
/// length and then lexicographically (Duval's generation).
pub fn lyndon_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || max_len == 0 {
        return out;
    }
    let top = (n - 1) as u8;
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == top {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Nested bracket notation for the standard bracketing of a Lyndon word.
pub fn bracket_notation(w: &[u8]) -> String {
    match standard_factorization(w) {
        None => format!("x{}", w[0] as usize + 1),
        Some((u, v)) => format!("[{},{}]", bracket_notation(u), bracket_notation(v)),
    }
}

/// Linear combination of Lyndon basis elements.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LieCombination {
    terms: BTreeMap<Word, Scalar>,
}

impl LieCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(word: Word) -> Self {
        debug_assert!(is_lyndon(&word));
        let mut terms = BTreeMap::new();
        terms.insert(word, Scalar::one());
        LieCombination { terms }
    }

    pub fn generator(letter: u8) -> Self {
        Self::basis(vec![letter])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[u8]) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, word: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(word.clone()).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn add_scaled(&mut self, other: &LieCombination, c: &Scalar) {
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> LieCombination {
        let mut out = LieCombination::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> LieCombination {
        self.scale(&-Scalar::one())
    }

    /// Letter counts, when every term shares one multidegree.
    pub fn multidegree(&self, n: usize) -> Option<Vec<u32>> {
        let mut it = self.terms.keys().map(|w| multidegree(w, n));
        let first = it.next()?;
        it.all(|m| m == first).then_some(first)
    }
}

impl fmt::Display for LieCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    bracket_notation(w)
                } else {
                    format!("{}*{}", c, bracket_notation(w))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LieCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub fn multidegree(w: &[u8], n: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    for &c in w {
        v[c as usize] += 1;
    }
    v
}

thread_local! {
    static WORD_BRACKETS: RefCell<HashMap<(Word, Word), LieCombination>> = RefCell::new(HashMap::new());
}

/// Bracket of two basis elements, expanded in the Lyndon basis.
pub fn bracket_words(u: &[u8], v: &[u8]) -> LieCombination {
    if u == v {
        return LieCombination::zero();
    }
    if u > v {
        return bracket_words(v, u).neg();
    }
    let key = (u.to_vec(), v.to_vec());
    if let Some(hit) = WORD_BRACKETS.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let result = match standard_factorization(u) {
        // u < v with u a letter or right(u) >= v: uv is Lyndon with
        // standard factorization (u, v)
        None => LieCombination::basis([u, v].concat()),
        Some((_, right)) if right >= v => LieCombination::basis([u, v].concat()),
        Some((a, b)) => {
            // [[a,b],v] = [a,[b,v]] - [b,[a,v]]
            let mut acc = LieCombination::zero();
            for (m, c) in bracket_words(b, v).terms() {
                acc.add_scaled(&bracket_words(a, m), c);
            }
            for (m, c) in bracket_words(a, v).terms() {
                acc.add_scaled(&bracket_words(b, m), &-c);
            }
            acc
        }
    };
    WORD_BRACKETS.with(|c| c.borrow_mut().insert(key, result.clone()));
    result
}

/// Bilinear extension of [`bracket_words`].
pub fn lie_bracket(a: &LieCombination, b: &LieCombination) -> LieCombination {
    let mut out = LieCombination::zero();
    for (u, c) in a.terms() {
        for (v, e) in b.terms() {
            out.add_scaled(&bracket_words(u, v), &(c * e));
        }
    }
    out
}

/// One entry of a [`LieBasis`] table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyndonElement {
    pub word: Word,
    /// Table indices of the standard factorization, for words of length >= 2.
    pub factors: Option<(usize, usize)>,
    pub multidegree: Vec<u32>,
    pub index: usize,
}

impl LyndonElement {
    pub fn degree(&self) -> usize {
        self.word.len()
    }
}

/// Linear combination of table indices.
pub type IndexedCombination = Vec<(usize, Scalar)>;

/// The Lyndon basis `e_1, e_2, ...` truncated at a degree bound.
///
/// Indices are assigned by (degree, lexicographic word order), so `e_i = x_i`
/// for `i <= n` and the numbering is the same on every run. Bracket
/// expansions between table entries are cached behind a lock; the table is
/// otherwise immutable.
pub struct LieBasis {
    n: usize,
    bound: usize,
    elements: Vec<LyndonElement>,
    index: HashMap<Word, usize>,
    degrees: Vec<u32>,
    brackets: RwLock<HashMap<(usize, usize), Arc<IndexedCombination>>>,
}

impl LieBasis {
    pub fn new(n: usize, bound: usize) -> Result<Self, LieError> {
        if n == 0 || bound == 0 {
            return Err(LieError::EmptyTable);
        }
        let words = lyndon_words(n, bound);
        let index: HashMap<Word, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let elements = words
            .iter()
            .enumerate()
            .map(|(i, w)| LyndonElement {
                word: w.clone(),
                factors: standard_factorization(w).map(|(u, v)| (index[u], index[v])),
                multidegree: multidegree(w, n),
                index: i,
            })
            .collect();
        let degrees = words.iter().map(|w| w.len() as u32).collect();
        Ok(LieBasis {
            n,
            bound,
            elements,
            index,
            degrees,
            brackets: RwLock::new(HashMap::new()),
        })
    }

    pub fn shared(n: usize, bound: usize) -> Result<Arc<Self>, LieError> {
        Self::new(n, bound).map(Arc::new)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[LyndonElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &LyndonElement {
        &self.elements[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.elements[i].word.len()
    }

    /// Degree of every table entry, usable as a weight vector.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn name(&self, i: usize) -> String {
        bracket_notation(&self.elements[i].word)
    }

    pub fn count_of_degree(&self, m: usize) -> usize {
        self.elements.iter().filter(|e| e.word.len() == m).count()
    }

    /// Converts a combination of words into table indices.
    pub fn to_indexed(&self, c: &LieCombination) -> Result<IndexedCombination, LieError> {
        c.terms()
            .map(|(w, s)| {
                self.index_of(w).map(|i| (i, s.clone())).ok_or_else(|| {
                    LieError::DegreeOverflow {
                        word: bracket_notation(w),
                        degree: w.len(),
                        bound: self.bound,
                    }
                })
            })
            .collect()
    }

    /// `[e_i, e_j]` expanded over table indices.
    pub fn bracket(&self, i: usize, j: usize) -> Result<Arc<IndexedCombination>, LieError> {
        if let Some(hit) = self.brackets.read().unwrap().get(&(i, j)) {
            return Ok(hit.clone());
        }
        let (u, v) = (&self.elements[i].word, &self.elements[j].word);
        if u.len() + v.len() > self.bound && u != v {
            return Err(LieError::DegreeOverflow {
                word: format!("[{},{}]", bracket_notation(u), bracket_notation(v)),
                degree: u.len() + v.len(),
                bound: self.bound,
            });
        }
        let expanded = Arc::new(self.to_indexed(&bracket_words(u, v))?);
        self.brackets
            .write()
            .unwrap()
            .insert((i, j), expanded.clone());
        Ok(expanded)
    }

    /// Parses nested bracket notation such as `[x1,[x1,x2]]` and checks it is
    /// the standard bracketing of a Lyndon word within the table.
    pub fn parse_element(&self, text: &str) -> Result<usize, LieError> {
        let tree = BracketTree::parse(text, self.n)?;
        let word = tree.word();
        let canonical = is_lyndon(&word) && tree == BracketTree::standard(&word);
        if !canonical {
            return Err(LieError::NotCanonical(text.trim().to_string()));
        }
        self.index_of(&word).ok_or_else(|| LieError::DegreeOverflow {
            word: bracket_notation(&word),
            degree: word.len(),
            bound: self.bound,
        })
    }
}

impl fmt::Debug for LieBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieBasis")
            .field("n", &self.n)
            .field("bound", &self.bound)
            .field("len", &self.elements.len())
            .finish()
    }
}

/// `enumerate_basis`: the ordered Lyndon basis up to `max_degree`.
pub fn enumerate_basis(n: usize, max_degree: usize) -> Result<Vec<LyndonElement>, LieError> {
    Ok(LieBasis::new(n, max_degree)?.elements)
}

/// A bracket expression tree over letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketTree {
    Letter(u8),
    Bracket(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn standard(w: &[u8]) -> BracketTree {
        match standard_factorization(w) {
            None => BracketTree::Letter(w[0]),
            Some((u, v)) => BracketTree::Bracket(
                Box::new(BracketTree::standard(u)),
                Box::new(BracketTree::standard(v)),
            ),
        }
    }

    pub fn word(&self) -> Word {
        match self {
            BracketTree::Letter(c) => vec![*c],
            BracketTree::Bracket(a, b) => [a.word(), b.word()].concat(),
        }
    }

    /// Evaluates the tree as a Lie element, whether or not it is canonical.
    pub fn evaluate(&self) -> LieCombination {
        match self {
            BracketTree::Letter(c) => LieCombination::generator(*c),
            BracketTree::Bracket(a, b) => lie_bracket(&a.evaluate(), &b.evaluate()),
        }
    }

    pub fn parse(text: &str, n: usize) -> Result<BracketTree, LieError> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let tree = Self::parse_at(&chars, &mut pos, n, text)?;
        if pos != chars.len() {
            return Err(LieError::NotCanonical(text.trim().to_string()));
        }
        Ok(tree)
    }

    fn parse_at(s: &[char], pos: &mut usize, n: usize, text: &str) -> Result<BracketTree, LieError> {
        let bad = || LieError::NotCanonical(text.trim().to_string());
        match s.get(*pos) {
            Some('[') => {
                *pos += 1;
                let a = Self::parse_at(s, pos, n, text)?;
                if s.get(*pos) != Some(&',') {
                    return Err(bad());
                }
                *pos += 1;
                let b = Self::parse_at(s, pos, n, text)?;
                if s.get(*pos) != Some(&']') {
                    return Err(bad());
                }
                *pos += 1;
                Ok(BracketTree::Bracket(Box::new(a), Box::new(b)))
            }
            Some('x') => {
                *pos += 1;
                let start = *pos;
                while s.get(*pos).map_or(false, |c| c.is_ascii_digit()) {
                    *pos += 1;
                }
                let digits: String = s[start..*pos].iter().collect();
                let k: usize = digits.parse().map_err(|_| bad())?;
                if k == 0 || k > n {
                    return Err(LieError::LetterOutOfRange { letter: k, n });
                }
                Ok(BracketTree::Letter((k - 1) as u8))
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::scalar;

    #[test]
    fn lyndon_predicate() {
        assert!(is_lyndon(&[0, 1]));
        assert!(is_lyndon(&[0, 0, 1]));
        assert!(is_lyndon(&[0, 1, 1]));
        assert!(!is_lyndon(&[0, 1, 0]));
        assert!(!is_lyndon(&[0, 0]));
        assert!(!is_lyndon(&[]));
    }

    #[test]
    fn factorization() {
        assert_eq!(standard_factorization(&[0, 0, 1]), Some((&[0][..], &[0, 1][..])));
        assert_eq!(standard_factorization(&[0, 1, 1]), Some((&[0, 1][..], &[1][..])));
        assert_eq!(standard_factorization(&[0]), None);
    }

    #[test]
    fn enumerate_examples() {
        let names = |n, m| -> Vec<String> {
            enumerate_basis(n, m)
                .unwrap()
                .iter()
                .map(|e| bracket_notation(&e.word))
                .collect()
        };
        assert_eq!(names(2, 2), vec!["x1", "x2", "[x1,x2]"]);
        assert_eq!(names(1, 5), vec!["x1"]);
        assert_eq!(
            names(2, 3),
            vec!["x1", "x2", "[x1,x2]", "[x1,[x1,x2]]", "[[x1,x2],x2]"]
        );
    }

    #[test]
    fn bracket_examples() {
        let x1 = LieCombination::generator(0);
        let x2 = LieCombination::generator(1);
        assert_eq!(lie_bracket(&x1, &x2), LieCombination::basis(vec![0, 1]));
        assert!(lie_bracket(&x1, &x1).is_zero());
        let e = LieCombination::basis(vec![0, 1]);
        let r = lie_bracket(&e, &x1);
        assert_eq!(r, LieCombination::basis(vec![0, 0, 1]).scale(&scalar(-1)));
    }

    #[test]
    fn table_indices_and_parsing() {
        let t = LieBasis::new(2, 3).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.index_of(&[0]), Some(0));
        assert_eq!(t.index_of(&[1]), Some(1));
        assert_eq!(t.element(3).factors, Some((0, 2)));
        assert_eq!(t.parse_element("[x1, [x1,x2]]").unwrap(), 3);
        assert!(matches!(
            t.parse_element("[[x1,x2],x1]"),
            Err(LieError::NotCanonical(_))
        ));
        assert!(matches!(
            t.parse_element("[x2,x1]"),
            Err(LieError::NotCanonical(_))
        ));
        assert!(matches!(
            t.parse_element("[x1,x3]"),
            Err(LieError::LetterOutOfRange { .. })
        ));
        assert!(matches!(
            t.parse_element("[x1,[x1,[x1,x2]]]"),
            Err(LieError::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn table_bracket_overflow() {
        let t = LieBasis::new(2, 2).unwrap();
        let b = t.bracket(0, 1).unwrap();
        assert_eq!(b.as_slice(), &[(2, scalar(1))]);
        assert!(matches!(t.bracket(0, 2), Err(LieError::DegreeOverflow { .. })));
        assert!(t.bracket(2, 2).unwrap().is_empty());
    }
}
