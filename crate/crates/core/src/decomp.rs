//! Irreducible decompositions of the multiplicity modules, obtained from
//! class-weighted inner products over the sparse character supports.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::character::{chi_l, chi_w, mn_character, ClassFunction};
use crate::dims::{gl_dimension, sn_dimension};
use crate::error::{Error, Result};
use crate::numbers::factorial;
use crate::partition::{centralizer_order, enumerate_partitions, Partition};

/// Which module a decomposition describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Degree-k part of the symplectic derivation Lie algebra.
    H { k: u32 },
    /// Degree-k part of the free Lie algebra.
    Lie { k: u32 },
    /// Degree-k symplectic derivations of the free associative algebra.
    Assoc { k: u32 },
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::H { k } => write!(f, "h({k})"),
            Source::Lie { k } => write!(f, "lie({k})"),
            Source::Assoc { k } => write!(f, "assoc({k})"),
        }
    }
}

/// A multiset of Young diagrams with positive exact multiplicities: a
/// stable GL irreducible decomposition. Zero multiplicities are absent.
#[derive(Clone, Debug)]
pub struct Decomposition {
    degree: u32,
    multiplicities: BTreeMap<Partition, BigUint>,
    source: Source,
}

impl Decomposition {
    pub fn from_entries(
        degree: u32,
        source: Source,
        entries: impl IntoIterator<Item = (Partition, BigUint)>,
    ) -> Self {
        let mut multiplicities = BTreeMap::new();
        for (lam, m) in entries {
            assert_eq!(lam.size(), degree, "partition of wrong degree");
            if !m.is_zero() {
                multiplicities.insert(lam, m);
            }
        }
        Decomposition { degree, multiplicities, source }
    }

    /// Size of every indexing partition.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn source(&self) -> Source {
        self.source
    }

    /// Multiplicity of a diagram; zero when absent.
    pub fn multiplicity(&self, lambda: &Partition) -> BigUint {
        self.multiplicities.get(lambda).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Entries in the canonical (decreasing lexicographic) partition order.
    pub fn entries(&self) -> impl Iterator<Item = (&Partition, &BigUint)> {
        self.multiplicities.iter().rev()
    }

    /// Number of distinct irreducible constituents.
    pub fn support_len(&self) -> usize {
        self.multiplicities.len()
    }

    /// Σ_λ mult(λ) · f^λ — the dimension of the underlying S_n module.
    pub fn total_sn_dimension(&self) -> BigUint {
        self.multiplicities
            .iter()
            .map(|(lam, m)| m * sn_dimension(lam))
            .sum()
    }
}

/// Multiplicity of the irreducible λ in the module with character `chi`:
/// Σ_μ chi(μ)·χ_λ(μ)/z_μ over the sparse support. The division by n! is
/// exact for genuine characters; a fractional or negative outcome reports
/// the class function as corrupted.
pub fn multiplicity(lambda: &Partition, chi: &ClassFunction) -> Result<BigUint> {
    let n = chi.degree();
    if lambda.size() != n {
        return Err(Error::DegreeMismatch { expected: n, found: lambda.size() });
    }
    let order = BigInt::from(factorial(n));
    let mut acc = BigInt::zero();
    for (mu, value) in chi.support() {
        let class_size = &order / BigInt::from(centralizer_order(mu));
        acc += value * mn_character(lambda, mu)? * class_size;
    }
    let (q, r) = acc.div_rem(&order);
    if !r.is_zero() || q.is_negative() {
        return Err(Error::CorruptClassFunction {
            partition: lambda.to_string(),
            degree: n,
            value: format!("{acc}/{order}"),
        });
    }
    Ok(q.to_biguint().expect("checked nonnegative"))
}

fn decompose(chi: &ClassFunction, source: Source) -> Decomposition {
    let n = chi.degree();
    let entries: Vec<(Partition, BigUint)> = enumerate_partitions(n)
        .into_par_iter()
        .map(|lam| {
            let m = multiplicity(&lam, chi)
                .expect("engine-built class functions are genuine characters");
            (lam, m)
        })
        .filter(|(_, m)| !m.is_zero())
        .collect();
    Decomposition::from_entries(n, source, entries)
}

/// Stable GL(2g) decomposition of the degree-k symplectic derivation
/// module, as Young diagrams with k+2 boxes. Valid at every genus: rows
/// longer than 2g contribute dimension zero.
pub fn decompose_h(k: u32) -> Decomposition {
    assert!(k >= 1);
    decompose(&chi_w(k), Source::H { k })
}

/// Stable GL decomposition of the degree-k free Lie piece, as Young
/// diagrams with k boxes.
pub fn decompose_lie(k: u32) -> Decomposition {
    assert!(k >= 1);
    decompose(&chi_l(k), Source::Lie { k })
}

/// One conjugate-symmetry violation: a diagram whose multiplicity differs
/// from its conjugate's.
#[derive(Clone, Debug)]
pub struct SymmetryViolation {
    pub partition: Partition,
    pub multiplicity: BigUint,
    pub conjugate: Partition,
    pub conjugate_multiplicity: BigUint,
}

/// Result of checking mult(λ) = mult(λ′) across a decomposition.
#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub symmetric: bool,
    /// Every violating diagram, listed once per orientation.
    pub violations: Vec<SymmetryViolation>,
}

pub fn check_conjugate_symmetry(dec: &Decomposition) -> SymmetryReport {
    let mut violations = Vec::new();
    for (lam, m) in dec.entries() {
        let conj = lam.conjugate();
        let cm = dec.multiplicity(&conj);
        if *m != cm {
            violations.push(SymmetryViolation {
                partition: lam.clone(),
                multiplicity: m.clone(),
                conjugate: conj,
                conjugate_multiplicity: cm,
            });
        }
    }
    SymmetryReport { symmetric: violations.is_empty(), violations }
}

/// Whether conjugate symmetry of this source is a theorem for this degree.
pub fn symmetry_guaranteed(source: Source) -> bool {
    match source {
        Source::H { k } => k % 4 == 2 || k % 4 == 3,
        Source::Lie { k } => k % 4 != 2,
        Source::Assoc { k } => k % 2 == 1,
    }
}

/// Dimension of the module at genus g: Σ_λ mult(λ)·gl_dimension(λ, 2g).
pub fn dimension_of(dec: &Decomposition, genus: u32) -> BigUint {
    assert!(genus >= 1);
    dec.entries()
        .map(|(lam, m)| m * gl_dimension(lam, 2 * genus))
        .sum()
}

/// One checked entry of the two classical multiplicity-one series.
#[derive(Clone, Debug)]
pub struct SeriesEntry {
    /// Degree k of the ambient module h(k).
    pub degree: u32,
    pub partition: Partition,
    pub multiplicity: BigUint,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct SeriesReport {
    pub entries: Vec<SeriesEntry>,
    pub all_ok: bool,
}

/// Verifies the two multiplicity-one series in h: the two-row diagrams
/// [2k, 2] in degree 2k, and the hook-like diagrams [2², 1^{4m}] in degree
/// 4m + 2, for all degrees up to `max_k`.
pub fn multiplicity_series_check(max_k: u32) -> SeriesReport {
    assert!(max_k >= 2);
    let mut entries = Vec::new();
    let mut check = |degree: u32, lam: Partition| {
        let dec = decompose_h(degree);
        let m = dec.multiplicity(&lam);
        let ok = m == BigUint::from(1u32);
        entries.push(SeriesEntry { degree, partition: lam, multiplicity: m, ok });
    };
    let mut two_k = 2;
    while two_k <= max_k {
        check(two_k, Partition::new(vec![two_k, 2]).expect("2k >= 2"));
        two_k += 2;
    }
    let mut m4 = 0;
    while 4 * m4 + 2 <= max_k {
        let mut parts = vec![2, 2];
        parts.extend(std::iter::repeat_n(1, 4 * m4 as usize));
        check(4 * m4 + 2, Partition::new(parts).expect("sorted"));
        m4 += 1;
    }
    let all_ok = entries.iter().all(|e| e.ok);
    SeriesReport { entries, all_ok }
}
