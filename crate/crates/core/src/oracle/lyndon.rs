//! Lyndon-word bases of free Lie algebra pieces, with standard (Shirshov)
//! bracketings and exact expansion into the free associative algebra.
//!
//! This is the computational substrate of the oracle: it shares nothing
//! with the character pipeline.

use std::collections::BTreeMap;
use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numbers::witt_dimension;
use crate::oracle::OracleCaps;

pub type Letter = u8;
pub type Word = Vec<Letter>;

/// A bracket expression over alphabet letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketExpr {
    Letter(Letter),
    Bracket(Box<BracketExpr>, Box<BracketExpr>),
}

impl BracketExpr {
    pub fn letter(l: Letter) -> Self {
        BracketExpr::Letter(l)
    }

    pub fn bracket(left: BracketExpr, right: BracketExpr) -> Self {
        BracketExpr::Bracket(Box::new(left), Box::new(right))
    }

    pub fn degree(&self) -> u32 {
        match self {
            BracketExpr::Letter(_) => 1,
            BracketExpr::Bracket(l, r) => l.degree() + r.degree(),
        }
    }
}

/// All Lyndon words of the given exact length, in lexicographic order
/// (Duval's algorithm).
pub fn lyndon_words(alphabet: u32, length: u32) -> Vec<Word> {
    assert!(alphabet >= 1 && length >= 1);
    let n = length as usize;
    let mut out = Vec::new();
    let mut w: Word = vec![0];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last as u32 == alphabet - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(l) => *l += 1,
        }
    }
    out
}

pub fn is_lyndon(w: &[Letter]) -> bool {
    if w.is_empty() {
        return false;
    }
    let mut rotated = w.to_vec();
    for _ in 1..w.len() {
        rotated.rotate_left(1);
        if rotated.as_slice() <= w {
            return false;
        }
    }
    true
}

/// Split index of the standard right factorization w = u·v, where v is the
/// lexicographically least (equivalently, longest Lyndon) proper suffix.
fn standard_split(w: &[Letter]) -> usize {
    debug_assert!(w.len() >= 2);
    let mut best = 1;
    for i in 2..w.len() {
        if w[i..] < w[best..] {
            best = i;
        }
    }
    best
}

/// Standard bracketing of a Lyndon word.
pub fn standard_bracketing(w: &[Letter]) -> BracketExpr {
    if w.len() == 1 {
        return BracketExpr::Letter(w[0]);
    }
    let split = standard_split(w);
    BracketExpr::bracket(standard_bracketing(&w[..split]), standard_bracketing(&w[split..]))
}

/// An ordered basis of one graded piece of the free Lie algebra on
/// `alphabet_size` letters: the Lyndon words of the degree with their
/// standard bracketings.
#[derive(Clone, Debug)]
pub struct LyndonBasis {
    alphabet_size: u32,
    degree: u32,
    words: Vec<Word>,
    bracketings: Vec<BracketExpr>,
}

impl LyndonBasis {
    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn bracketing(&self, i: usize) -> &BracketExpr {
        &self.bracketings[i]
    }

    /// Position of a word in the basis, by binary search.
    pub fn index_of(&self, w: &[Letter]) -> Option<usize> {
        self.words.binary_search_by(|probe| probe.as_slice().cmp(w)).ok()
    }
}

/// Builds the degree-k Lyndon basis of the free Lie algebra on 2g letters.
/// Errors when the projected size (the Witt dimension) exceeds the cap.
pub fn build_lyndon_basis(g: u32, k: u32, caps: &OracleCaps) -> Result<LyndonBasis> {
    assert!(g >= 1 && k >= 1);
    let alphabet = 2 * g;
    let projected = witt_dimension(alphabet as u64, k as u64);
    let cap = caps.max_basis_words as u64;
    let projected_u64 = u64::try_from(&projected).unwrap_or(u64::MAX);
    if projected_u64 > cap {
        return Err(Error::ResourceCap {
            what: format!("Lyndon basis for 2g = {alphabet}, degree {k}"),
            needed: projected_u64,
            cap,
            field: "max_basis_words",
        });
    }
    let words = lyndon_words(alphabet, k);
    assert_eq!(
        words.len() as u64, projected_u64,
        "Lyndon word count must equal the Witt dimension"
    );
    let bracketings = words.iter().map(|w| standard_bracketing(w)).collect();
    Ok(LyndonBasis { alphabet_size: alphabet, degree: k, words, bracketings })
}

/// A noncommutative polynomial: sparse map word → coefficient.
pub type Poly = BTreeMap<Word, BigInt>;

// Zero entries are left in place and purged by `poly_prune`.
fn poly_add(poly: &mut Poly, word: Word, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    *poly.entry(word).or_insert_with(BigInt::zero) += coeff;
}

fn poly_prune(poly: &mut Poly) {
    poly.retain(|_, c| !c.is_zero());
}

/// Shared memo of Lyndon-word expansions into associative words. The
/// expansion of the standard bracketing of a Lyndon word w is triangular:
/// it reads w + (lexicographically larger rearrangements).
#[derive(Default)]
pub struct LieExpander {
    memo: DashMap<Word, Arc<Vec<(Word, BigInt)>>>,
}

impl LieExpander {
    pub fn new() -> Self {
        Self::default()
    }

    /// Expansion of the standard bracketing of the Lyndon word `w`.
    pub fn lyndon_expansion(&self, w: &[Letter]) -> Arc<Vec<(Word, BigInt)>> {
        if let Some(e) = self.memo.get(w) {
            return e.clone();
        }
        let result: Vec<(Word, BigInt)> = if w.len() == 1 {
            vec![(w.to_vec(), BigInt::one())]
        } else {
            let split = standard_split(w);
            let left = self.lyndon_expansion(&w[..split]);
            let right = self.lyndon_expansion(&w[split..]);
            let mut acc: Poly = BTreeMap::new();
            for (wu, cu) in left.iter() {
                for (wv, cv) in right.iter() {
                    let c = cu * cv;
                    let mut uv = wu.clone();
                    uv.extend_from_slice(wv);
                    poly_add(&mut acc, uv, c.clone());
                    let mut vu = wv.clone();
                    vu.extend_from_slice(wu);
                    poly_add(&mut acc, vu, -c);
                }
            }
            poly_prune(&mut acc);
            acc.into_iter().collect()
        };
        debug_assert_eq!(result.first().map(|(word, c)| (word.as_slice(), c.clone())),
            Some((w, BigInt::one())),
            "leading term of a Lyndon expansion is the word itself");
        let arc = Arc::new(result);
        self.memo.insert(w.to_vec(), arc.clone());
        arc
    }

    /// Expansion of an arbitrary bracket expression.
    pub fn expr_expansion(&self, expr: &BracketExpr) -> Poly {
        match expr {
            BracketExpr::Letter(l) => {
                let mut p = BTreeMap::new();
                p.insert(vec![*l], BigInt::one());
                p
            }
            BracketExpr::Bracket(l, r) => {
                let lp = self.expr_expansion(l);
                let rp = self.expr_expansion(r);
                let mut acc: Poly = BTreeMap::new();
                for (wu, cu) in &lp {
                    for (wv, cv) in &rp {
                        let c = cu * cv;
                        let mut uv = wu.clone();
                        uv.extend_from_slice(wv);
                        poly_add(&mut acc, uv, c.clone());
                        let mut vu = wv.clone();
                        vu.extend_from_slice(wu);
                        poly_add(&mut acc, vu, -c);
                    }
                }
                poly_prune(&mut acc);
                acc
            }
        }
    }

    /// Rewrites a homogeneous Lie polynomial (given by its associative
    /// expansion) into Lyndon-basis coordinates. The leading word of what
    /// remains must always be Lyndon; anything else means the input was not
    /// a Lie element.
    pub fn to_lyndon_basis(&self, mut poly: Poly) -> Result<Vec<(Word, BigInt)>> {
        poly_prune(&mut poly);
        let mut out = Vec::new();
        while let Some((w, c)) = poly.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
            if !is_lyndon(&w) {
                return Err(Error::NotALieElement {
                    what: "lyndon rewrite",
                    word: w,
                });
            }
            for (ww, cc) in self.lyndon_expansion(&w).iter() {
                let entry = poly.entry(ww.clone()).or_insert_with(BigInt::zero);
                *entry -= &c * cc;
                if entry.is_zero() {
                    poly.remove(ww);
                }
            }
            out.push((w, c));
        }
        Ok(out)
    }
}

/// Coordinates of a bracket expression in a Lyndon basis, as a sparse
/// vector of exact rationals indexed by basis position.
pub fn expand_bracket(
    expr: &BracketExpr,
    basis: &LyndonBasis,
) -> Result<Vec<(usize, BigRational)>> {
    if expr.degree() != basis.degree() {
        return Err(Error::DegreeMismatch {
            expected: basis.degree(),
            found: expr.degree(),
        });
    }
    let expander = LieExpander::new();
    let poly = expander.expr_expansion(expr);
    let in_basis = expander.to_lyndon_basis(poly)?;
    let mut out = Vec::with_capacity(in_basis.len());
    for (w, c) in in_basis {
        let idx = basis
            .index_of(&w)
            .expect("every Lyndon word of the right degree is a basis element");
        out.push((idx, BigRational::from_integer(c)));
    }
    out.sort_by_key(|(i, _)| *i);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::OracleCaps;

    #[test]
    fn duval_small_counts() {
        assert_eq!(lyndon_words(2, 2), vec![vec![0, 1]]);
        assert_eq!(lyndon_words(2, 3), vec![vec![0, 0, 1], vec![0, 1, 1]]);
        for (alphabet, len) in [(2u32, 5u32), (3, 4), (4, 3), (6, 4)] {
            let words = lyndon_words(alphabet, len);
            assert_eq!(
                words.len() as u64,
                u64::try_from(&witt_dimension(alphabet as u64, len as u64)).unwrap()
            );
            assert!(words.windows(2).all(|w| w[0] < w[1]), "strictly increasing");
            assert!(words.iter().all(|w| is_lyndon(w)));
        }
    }

    #[test]
    fn basis_examples() {
        let caps = OracleCaps::default();
        let b = build_lyndon_basis(1, 2, &caps).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.word(0), &vec![0, 1]);

        let b = build_lyndon_basis(1, 3, &caps).unwrap();
        assert_eq!(b.len(), 2);

        let b = build_lyndon_basis(2, 7, &caps).unwrap();
        assert_eq!(b.len(), 2340);
    }

    #[test]
    fn basis_cap_is_enforced() {
        let caps = OracleCaps { max_basis_words: 100, ..OracleCaps::default() };
        let err = build_lyndon_basis(2, 7, &caps).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("max_basis_words"), "actionable message, got: {msg}");
    }

    #[test]
    fn expand_bracket_basics() {
        let caps = OracleCaps::default();
        let b2 = build_lyndon_basis(1, 2, &caps).unwrap();
        let ab = BracketExpr::bracket(BracketExpr::letter(0), BracketExpr::letter(1));
        let v = expand_bracket(&ab, &b2).unwrap();
        assert_eq!(v, vec![(0, BigRational::from_integer(BigInt::one()))]);

        let aa = BracketExpr::bracket(BracketExpr::letter(0), BracketExpr::letter(0));
        assert!(expand_bracket(&aa, &b2).unwrap().is_empty());

        // [[a,b],b] = −[b,[a,b]]
        let b3 = build_lyndon_basis(1, 3, &caps).unwrap();
        let abb = BracketExpr::bracket(ab.clone(), BracketExpr::letter(1));
        let bab = BracketExpr::bracket(BracketExpr::letter(1), ab.clone());
        let lhs = expand_bracket(&abb, &b3).unwrap();
        let rhs: Vec<(usize, BigRational)> = expand_bracket(&bab, &b3)
            .unwrap()
            .into_iter()
            .map(|(i, c)| (i, -c))
            .collect();
        assert_eq!(lhs, rhs);

        assert!(expand_bracket(&ab, &b3).is_err());
    }

    #[test]
    fn standard_bracketing_of_lyndon_word_expands_triangularly() {
        let expander = LieExpander::new();
        for w in lyndon_words(3, 5) {
            let exp = expander.lyndon_expansion(&w);
            assert_eq!(exp[0].0, w);
            assert_eq!(exp[0].1, BigInt::one());
            for (other, _) in exp.iter().skip(1) {
                assert!(other > &w);
            }
        }
    }
}
