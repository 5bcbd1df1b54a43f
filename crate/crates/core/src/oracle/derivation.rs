//! The bracket map H ⊗ L(k+1) → L(k+2), its kernel (the derivation
//! algebra piece), and sp(2g)-invariants of that kernel — all by explicit
//! exact linear algebra over Lyndon bases.
//!
//! Letters are interleaved: 2i is x_i, 2i+1 is y_i, with ⟨x_i, y_i⟩ = 1.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numbers::{factorial, witt_dimension};
use crate::oracle::lyndon::{build_lyndon_basis, LieExpander, Poly, Word};
use crate::oracle::matrix::{rank_of_int_rows, SparseExactMatrix};
use crate::oracle::OracleCaps;
use crate::partition::{enumerate_partitions, Partition};

/// Image of a ⊗ u under the bracket map, as a Lie polynomial: a·P − P·a
/// where P expands the standard bracketing of u.
fn bracket_image(expander: &LieExpander, a: u8, u: &Word) -> Poly {
    let p = expander.lyndon_expansion(u);
    let mut q: Poly = BTreeMap::new();
    for (w, c) in p.iter() {
        let mut aw = Vec::with_capacity(w.len() + 1);
        aw.push(a);
        aw.extend_from_slice(w);
        *q.entry(aw).or_insert_with(BigInt::zero) += c;
        let mut wa = w.clone();
        wa.push(a);
        *q.entry(wa).or_insert_with(BigInt::zero) -= c;
    }
    q.retain(|_, c| !c.is_zero());
    q
}

/// Full matrix of the bracket map from H ⊗ L(k+1) (columns, indexed
/// a·|basis| + u) to L(k+2) (rows, indexed by Lyndon word position).
pub fn bracket_map_matrix(g: u32, k: u32, caps: &OracleCaps) -> Result<SparseExactMatrix> {
    assert!(g >= 1 && k >= 1);
    let alphabet = 2 * g;
    let basis_mid = build_lyndon_basis(g, k + 1, caps)?;
    let basis_top = build_lyndon_basis(g, k + 2, caps)?;
    let cols = alphabet as usize * basis_mid.len();
    if cols > caps.max_matrix_columns {
        return Err(Error::ResourceCap {
            what: format!("bracket matrix for g = {g}, degree {k}"),
            needed: cols as u64,
            cap: caps.max_matrix_columns as u64,
            field: "max_matrix_columns",
        });
    }
    let expander = LieExpander::new();
    let entries: Vec<(usize, usize, BigRational)> = (0..cols)
        .into_par_iter()
        .flat_map_iter(|ci| {
            let a = (ci / basis_mid.len()) as u8;
            let u = basis_mid.word(ci % basis_mid.len());
            let q = bracket_image(&expander, a, u);
            let in_basis = expander
                .to_lyndon_basis(q)
                .expect("bracket of Lie elements is Lie");
            let mut cells = Vec::with_capacity(in_basis.len());
            for (w, c) in in_basis {
                let row = basis_top
                    .index_of(&w)
                    .expect("expansion stays in the top basis");
                cells.push((row, ci, BigRational::from_integer(c)));
            }
            cells
        })
        .collect();
    SparseExactMatrix::new(basis_top.len(), cols, entries)
}

/// All words with exactly the given content, lexicographically sorted.
fn words_with_content(content: &[u32]) -> Vec<Word> {
    let total: u32 = content.iter().sum();
    let mut out = Vec::new();
    let mut remaining = content.to_vec();
    let mut current: Word = Vec::with_capacity(total as usize);
    fn rec(remaining: &mut [u32], current: &mut Word, total: usize, out: &mut Vec<Word>) {
        if current.len() == total {
            out.push(current.clone());
            return;
        }
        for l in 0..remaining.len() {
            if remaining[l] > 0 {
                remaining[l] -= 1;
                current.push(l as u8);
                rec(remaining, current, total, out);
                current.pop();
                remaining[l] += 1;
            }
        }
    }
    rec(&mut remaining, &mut current, total as usize, &mut out);
    out
}

fn multinomial_words(content: &[u32]) -> BigUint {
    let total: u32 = content.iter().sum();
    let mut acc = factorial(total);
    for &c in content {
        acc /= factorial(c);
    }
    acc
}

/// Number of distinct rearrangements of the content vector over the
/// alphabet (the sorted content plus implicit zeros).
fn content_arrangements(sorted_content: &Partition, alphabet: u32) -> BigUint {
    let mut value_mults: HashMap<u32, u32> = HashMap::new();
    for &p in sorted_content.parts() {
        *value_mults.entry(p).or_insert(0) += 1;
    }
    let zeros = alphabet - sorted_content.len() as u32;
    *value_mults.entry(0).or_insert(0) += zeros;
    let mut acc = factorial(alphabet);
    for (_, m) in value_mults {
        acc /= factorial(m);
    }
    acc
}

fn lyndon_words_with_content(content: &[u32]) -> Vec<Word> {
    words_with_content(content)
        .into_iter()
        .filter(|w| crate::oracle::lyndon::is_lyndon(w))
        .collect()
}

/// Kernel dimension of one weight block of the bracket map: columns are
/// pairs (a, u) with content(a·u) equal to the block content, rows the
/// Lyndon words of that content in degree k+2.
fn block_kernel(
    expander: &LieExpander,
    alphabet: usize,
    content: &[u32],
    caps: &OracleCaps,
) -> Result<u64> {
    let words_bound = multinomial_words(content);
    if words_bound > BigUint::from(caps.max_block_words) {
        return Err(Error::ResourceCap {
            what: format!("weight block {content:?}"),
            needed: u64::try_from(&words_bound).unwrap_or(u64::MAX),
            cap: caps.max_block_words as u64,
            field: "max_block_words",
        });
    }
    let top_words = lyndon_words_with_content(content);
    let row_index: HashMap<&Word, usize> =
        top_words.iter().enumerate().map(|(i, w)| (w, i)).collect();

    let mut int_rows: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); top_words.len()];
    let mut col_count = 0usize;
    for a in 0..alphabet {
        if content[a] == 0 {
            continue;
        }
        let mut sub = content.to_vec();
        sub[a] -= 1;
        for u in lyndon_words_with_content(&sub) {
            let ci = col_count;
            col_count += 1;
            let q = bracket_image(expander, a as u8, &u);
            let in_basis = expander
                .to_lyndon_basis(q)
                .expect("bracket of Lie elements is Lie");
            for (w, c) in in_basis {
                let row = *row_index.get(&w).expect("expansion preserves content");
                int_rows[row].push((ci, c));
            }
        }
    }
    for row in &mut int_rows {
        row.sort_by_key(|(c, _)| *c);
    }
    let rank = rank_of_int_rows(int_rows, col_count);
    Ok((col_count - rank) as u64)
}

/// Kernel dimension of the full bracket map, computed blockwise by GL
/// weight. The map preserves multidegree, blocks with permuted content are
/// isomorphic, and the per-block ranks are certified exactly.
pub fn bracket_kernel_dimension(g: u32, k: u32, caps: &OracleCaps) -> Result<BigUint> {
    assert!(g >= 1 && k >= 1);
    let alphabet = (2 * g) as usize;
    // Guard the overall size the same way the explicit matrix would be.
    let projected = BigUint::from(2 * g as u64)
        * witt_dimension(2 * g as u64, (k + 1) as u64);
    if projected > BigUint::from(caps.max_blocked_columns) {
        return Err(Error::ResourceCap {
            what: format!("blocked bracket kernel for g = {g}, degree {k}"),
            needed: u64::try_from(&projected).unwrap_or(u64::MAX),
            cap: caps.max_blocked_columns as u64,
            field: "max_blocked_columns",
        });
    }
    let contents: Vec<Partition> = enumerate_partitions(k + 2)
        .into_iter()
        .filter(|p| p.len() <= alphabet)
        .collect();
    let expander = LieExpander::new();
    let per_content: Result<Vec<BigUint>> = contents
        .par_iter()
        .map(|sorted| {
            let mut content = vec![0u32; alphabet];
            for (i, &p) in sorted.parts().iter().enumerate() {
                content[i] = p;
            }
            let kernel = block_kernel(&expander, alphabet, &content, caps)?;
            Ok(BigUint::from(kernel) * content_arrangements(sorted, 2 * g))
        })
        .collect();
    Ok(per_content?.into_iter().sum())
}

/// One generator of sp(2g) as a linear map on letters:
/// `images[l]` lists (target letter, coefficient).
struct SpGenerator {
    images: Vec<Vec<(u8, i8)>>,
}

/// Chevalley generators e_i, f_i of sp(2g) in the symplectic basis.
fn sp_generators(g: u32) -> Vec<SpGenerator> {
    let alphabet = (2 * g) as usize;
    let x = |i: u32| (2 * i) as u8;
    let y = |i: u32| (2 * i + 1) as u8;
    let mut gens = Vec::new();
    for i in 0..g - 1 {
        // e_i: x_{i+1} -> x_i, y_i -> -y_{i+1}
        let mut images = vec![Vec::new(); alphabet];
        images[x(i + 1) as usize].push((x(i), 1));
        images[y(i) as usize].push((y(i + 1), -1));
        gens.push(SpGenerator { images });
        // f_i: x_i -> x_{i+1}, y_{i+1} -> -y_i
        let mut images = vec![Vec::new(); alphabet];
        images[x(i) as usize].push((x(i + 1), 1));
        images[y(i + 1) as usize].push((y(i), -1));
        gens.push(SpGenerator { images });
    }
    // Long root: e_g: y_g -> x_g ; f_g: x_g -> y_g
    let mut images = vec![Vec::new(); alphabet];
    images[y(g - 1) as usize].push((x(g - 1), 1));
    gens.push(SpGenerator { images });
    let mut images = vec![Vec::new(); alphabet];
    images[x(g - 1) as usize].push((y(g - 1), 1));
    gens.push(SpGenerator { images });
    gens
}

/// Derivation action of a generator on an associative polynomial.
fn act_on_poly(gen: &SpGenerator, poly: &Poly) -> Poly {
    let mut out: Poly = BTreeMap::new();
    for (w, c) in poly {
        for (pos, &letter) in w.iter().enumerate() {
            for &(target, s) in &gen.images[letter as usize] {
                let mut ww = w.clone();
                ww[pos] = target;
                let term = c * BigInt::from(s);
                *out.entry(ww).or_insert_with(BigInt::zero) += term;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Dimension of the sp(2g)-invariant subspace of h_{g,1}(k): the common
/// kernel of the bracket map and of the Chevalley generators acting on
/// H ⊗ L(k+1). Torus invariance restricts everything to balanced contents
/// (x_i and y_i occurring equally often), which keeps the system small.
pub fn sp_invariant_dimension(g: u32, k: u32, caps: &OracleCaps) -> Result<BigUint> {
    assert!(g >= 1 && k >= 1);
    if (k + 2) % 2 == 1 {
        return Ok(BigUint::zero());
    }
    let alphabet = (2 * g) as usize;
    let half = (k + 2) / 2;

    // Balanced contents: c[2i] = c[2i+1] = s_i for a composition s of half.
    let mut balanced: Vec<Vec<u32>> = Vec::new();
    let mut s = vec![0u32; g as usize];
    fn compositions(i: usize, left: u32, s: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, g: usize) {
        if i == g - 1 {
            s[i] = left;
            let mut c = vec![0u32; 2 * g];
            for (j, &v) in s.iter().enumerate() {
                c[2 * j] = v;
                c[2 * j + 1] = v;
            }
            out.push(c);
            return;
        }
        for v in 0..=left {
            s[i] = v;
            compositions(i + 1, left - v, s, out, g);
        }
    }
    compositions(0, half, &mut s, &mut balanced, g as usize);

    // Columns: (a, u) with content(a·u) balanced.
    let mut columns: Vec<(u8, Word)> = Vec::new();
    for c in &balanced {
        for a in 0..alphabet {
            if c[a] == 0 {
                continue;
            }
            let mut sub = c.clone();
            sub[a] -= 1;
            for u in lyndon_words_with_content(&sub) {
                columns.push((a as u8, u));
            }
        }
    }
    columns.sort();
    columns.dedup();
    if columns.len() > caps.max_exact_columns {
        return Err(Error::ResourceCap {
            what: format!("sp-invariant system for g = {g}, degree {k}"),
            needed: columns.len() as u64,
            cap: caps.max_exact_columns as u64,
            field: "max_exact_columns",
        });
    }

    let expander = LieExpander::new();
    let gens = sp_generators(g);

    // Row keys: bracket-image words of degree k+2, and per-generator basis
    // elements (b, w) of H ⊗ L(k+1).
    #[derive(PartialEq, Eq, Hash)]
    enum RowKey {
        Bracket(Word),
        Gen(usize, u8, Word),
    }
    let mut row_ids: HashMap<RowKey, usize> = HashMap::new();
    let mut rows_sparse: Vec<Vec<(usize, BigInt)>> = Vec::new();

    let per_column: Vec<Vec<(RowKey, BigInt)>> = columns
        .par_iter()
        .map(|(a, u)| {
            let mut cells: Vec<(RowKey, BigInt)> = Vec::new();
            // Bracket rows.
            let q = bracket_image(&expander, *a, u);
            for (w, c) in expander.to_lyndon_basis(q).expect("Lie") {
                cells.push((RowKey::Bracket(w), c));
            }
            // Generator rows: X·(a ⊗ u) = (Xa) ⊗ u + a ⊗ (Xu).
            for (t, gen) in gens.iter().enumerate() {
                let mut target: BTreeMap<(u8, Word), BigInt> = BTreeMap::new();
                for &(b, sgn) in &gen.images[*a as usize] {
                    *target.entry((b, u.clone())).or_insert_with(BigInt::zero) +=
                        BigInt::from(sgn);
                }
                let expansion: Poly = expander
                    .lyndon_expansion(u)
                    .iter()
                    .cloned()
                    .collect();
                let acted = act_on_poly(gen, &expansion);
                if !acted.is_empty() {
                    for (w, c) in expander.to_lyndon_basis(acted).expect("Lie") {
                        *target.entry((*a, w)).or_insert_with(BigInt::zero) += c;
                    }
                }
                for ((b, w), c) in target {
                    if !c.is_zero() {
                        cells.push((RowKey::Gen(t, b, w), c));
                    }
                }
            }
            cells
        })
        .collect();

    for (ci, cells) in per_column.into_iter().enumerate() {
        for (key, c) in cells {
            let next_id = row_ids.len();
            let rid = *row_ids.entry(key).or_insert(next_id);
            if rid == rows_sparse.len() {
                rows_sparse.push(Vec::new());
            }
            rows_sparse[rid].push((ci, c));
        }
    }
    for row in &mut rows_sparse {
        row.sort_by_key(|(c, _)| *c);
    }
    let ncols = columns.len();
    let rank = rank_of_int_rows(rows_sparse, ncols);
    Ok(BigUint::from(ncols - rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::matrix::{kernel_dimension, rank as matrix_rank};
    use num_traits::{One, Zero};

    fn expected_kernel(g: u64, k: u64) -> BigUint {
        let n = 2 * g;
        BigUint::from(n) * witt_dimension(n, k + 1) - witt_dimension(n, k + 2)
    }

    #[test]
    fn bracket_matrix_g1_k2() {
        let caps = OracleCaps::default();
        let m = bracket_map_matrix(1, 2, &caps).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 4));
        assert_eq!(matrix_rank(&m), 3);
        assert_eq!(kernel_dimension(&m), 1);
    }

    #[test]
    fn bracket_matrix_small_cases() {
        let caps = OracleCaps::default();
        for (g, k) in [(1u32, 1u32), (1, 3), (1, 4), (2, 1), (2, 2)] {
            let m = bracket_map_matrix(g, k, &caps).unwrap();
            let expected = expected_kernel(g as u64, k as u64);
            assert_eq!(
                BigUint::from(kernel_dimension(&m)),
                expected,
                "g={g} k={k}"
            );
        }
    }

    #[test]
    fn blocked_kernel_matches_full_matrix() {
        let caps = OracleCaps::default();
        for (g, k) in [(1u32, 2u32), (1, 4), (2, 2), (2, 3)] {
            assert_eq!(
                bracket_kernel_dimension(g, k, &caps).unwrap(),
                expected_kernel(g as u64, k as u64),
                "g={g} k={k}"
            );
        }
    }

    #[test]
    fn sp_invariants_small() {
        let caps = OracleCaps::default();
        // h_{1,1}(2) is one-dimensional and invariant.
        assert!(sp_invariant_dimension(1, 2, &caps).unwrap().is_one());
        // Odd degrees carry no invariants.
        assert_eq!(sp_invariant_dimension(1, 3, &caps).unwrap(), BigUint::zero());
        // Genus-one degree 4: the square two-row diagram is absent.
        assert_eq!(sp_invariant_dimension(1, 4, &caps).unwrap(), BigUint::zero());
    }

    #[test]
    fn sp_generators_kill_omega() {
        // X·ω_0 = 0 for every generator, with ω_0 = Σ [x_i, y_i].
        for g in 1..=3u32 {
            let expander = LieExpander::new();
            let mut omega: Poly = BTreeMap::new();
            for i in 0..g {
                let x = 2 * i as u8;
                let y = x + 1;
                *omega.entry(vec![x, y]).or_insert_with(BigInt::zero) += BigInt::from(1);
                *omega.entry(vec![y, x]).or_insert_with(BigInt::zero) -= BigInt::from(1);
            }
            for gen in sp_generators(g) {
                let acted = act_on_poly(&gen, &omega);
                assert!(acted.is_empty(), "g={g}");
            }
            let _ = expander;
        }
    }
}
