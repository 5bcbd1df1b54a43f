//! Partitions (Young diagrams, cycle types) and conjugacy-class data.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numbers::factorial;

/// An integer partition: a weakly decreasing sequence of positive parts.
///
/// The same object serves as a Young diagram and as a cycle type of a
/// symmetric group, depending on context. The empty partition is valid and
/// denotes the unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    size: u32,
}

impl Partition {
    /// Builds a partition from an already weakly decreasing list of positive parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        let size = parts.iter().sum();
        Ok(Partition { parts, size })
    }

    /// Builds a partition from parts in any order; zeros are dropped.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new(), size: 0 }
    }

    /// Sum of the parts.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The i-th part (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// The conjugate (transposed) diagram: row lengths become column lengths.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut out = Vec::with_capacity(cols);
        for j in 1..=cols as u32 {
            out.push(self.parts.iter().filter(|&&p| p >= j).count() as u32);
        }
        Partition { size: self.size, parts: out }
    }

    /// True iff the diagram of `other` fits inside the diagram of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len()
            && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    /// True iff every column of the diagram has even length, i.e. every part
    /// of the conjugate is even. Marks GL irreducibles with a stable
    /// Sp-invariant vector.
    pub fn has_even_columns(&self) -> bool {
        // Column j (1-based) has length #{i : λ_i >= j}; all columns are even
        // iff every multiplicity jump leaves an even count, which is
        // equivalent to all conjugate parts being even.
        self.conjugate().parts.iter().all(|&p| p % 2 == 0)
    }

    /// Canonical enumeration order: decreasing lexicographic on the part
    /// sequences, so `[n]` comes first and `[1^n]` last.
    pub fn canonical_cmp(&self, other: &Partition) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
///
/// The order is part of the contract: cached artifacts and JSON output rely
/// on it being stable. The list has length p(n).
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
                size: current.iter().sum(),
            });
            return;
        }
        let hi = remaining.min(max_part);
        for first in (1..=hi).rev() {
            current.push(first);
            rec(remaining - first, first, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// Conjugacy-class data of a cycle type in S_n.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub cycle_type: Partition,
    /// The symmetric-group degree n.
    pub degree: u32,
    pub class_size: BigUint,
    /// z_μ = ∏ a^{m_a} · m_a! over distinct parts a with multiplicity m_a.
    pub centralizer_order: BigUint,
    /// (−1)^(n − number of parts).
    pub sign: i8,
}

/// Computes class size, centralizer order and sign of the class with cycle
/// type `mu` in S_n. Errors when `mu` is not a partition of `n`.
pub fn class_data(mu: &Partition, n: u32) -> Result<ConjClass> {
    if mu.size() != n {
        return Err(Error::DegreeMismatch { expected: n, found: mu.size() });
    }
    let centralizer_order = centralizer_order(mu);
    let class_size = factorial(n) / &centralizer_order;
    let sign = class_sign(mu);
    Ok(ConjClass {
        cycle_type: mu.clone(),
        degree: n,
        class_size,
        centralizer_order,
        sign,
    })
}

/// z_μ without the rest of the class record.
pub fn centralizer_order(mu: &Partition) -> BigUint {
    let mut z = BigUint::one();
    let parts = mu.parts();
    let mut i = 0;
    while i < parts.len() {
        let a = parts[i];
        let mut m = 0u32;
        while i < parts.len() && parts[i] == a {
            m += 1;
            i += 1;
        }
        z *= BigUint::from(a).pow(m) * factorial(m);
    }
    z
}

/// Sign of any permutation with cycle type `mu`.
pub fn class_sign(mu: &Partition) -> i8 {
    if (mu.size() as usize - mu.len()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_of_small_n() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let four = enumerate_partitions(4);
        let expected: Vec<Partition> = [
            &[4][..],
            &[3, 1],
            &[2, 2],
            &[2, 1, 1],
            &[1, 1, 1, 1],
        ]
        .iter()
        .map(|s| p(s))
        .collect();
        assert_eq!(four, expected);
    }

    /// Independent oracle for p(n): Euler's pentagonal-number recurrence.
    fn partition_count_oracle(n: usize) -> u64 {
        let mut table = vec![0i64; n + 1];
        table[0] = 1;
        for i in 1..=n {
            let mut sum = 0i64;
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                sum += sign * table[i - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    sum += sign * table[i - g2];
                }
                k += 1;
            }
            table[i] = sum;
        }
        table[n] as u64
    }

    #[test]
    fn enumeration_length_matches_pentagonal_recurrence() {
        assert_eq!(partition_count_oracle(20), 627);
        for n in 0..=22 {
            assert_eq!(
                enumerate_partitions(n).len() as u64,
                partition_count_oracle(n as usize),
                "p({n})"
            );
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[4, 4, 1, 1, 1, 1]).conjugate(), p(&[6, 2, 2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
    }

    #[test]
    fn conjugate_is_an_involution() {
        for n in 0..=25 {
            for lam in enumerate_partitions(n) {
                assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }
    }

    #[test]
    fn class_data_examples() {
        let c = class_data(&p(&[1, 1, 1]), 3).unwrap();
        assert_eq!(c.centralizer_order, BigUint::from(6u32));
        assert_eq!(c.class_size, BigUint::from(1u32));
        assert_eq!(c.sign, 1);

        let c = class_data(&p(&[2, 2]), 4).unwrap();
        assert_eq!(c.centralizer_order, BigUint::from(8u32));
        assert_eq!(c.class_size, BigUint::from(3u32));
        assert_eq!(c.sign, 1);

        let c = class_data(&p(&[3, 1]), 4).unwrap();
        assert_eq!(c.centralizer_order, BigUint::from(3u32));
        assert_eq!(c.class_size, BigUint::from(8u32));
        assert_eq!(c.sign, 1);

        assert!(class_data(&p(&[2, 1]), 4).is_err());
    }

    #[test]
    fn class_size_times_centralizer_is_group_order() {
        for n in 1..=12u32 {
            for mu in enumerate_partitions(n) {
                let c = class_data(&mu, n).unwrap();
                assert_eq!(c.class_size * c.centralizer_order, factorial(n));
            }
        }
    }

    #[test]
    fn even_columns() {
        assert!(p(&[2, 2]).has_even_columns());
        assert!(!p(&[3, 1]).has_even_columns());
        assert!(Partition::empty().has_even_columns());
    }

    #[test]
    fn invalid_partitions_rejected() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }
}
