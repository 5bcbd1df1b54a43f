//! Dimension formulas indexed by Young diagrams: hook lengths, the
//! hook-content formula for GL(N), and the hook-length formula for S_n.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::numbers::factorial;
use crate::partition::Partition;

/// Hook length of every cell, row-major.
pub fn hook_lengths(lambda: &Partition) -> Vec<u64> {
    let conj = lambda.conjugate();
    let mut hooks = Vec::with_capacity(lambda.size() as usize);
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as u64 - 1 - j as u64;
            let leg = conj.part(j) as u64 - 1 - i as u64;
            hooks.push(arm + leg + 1);
        }
    }
    hooks
}

/// Dimension of the irreducible GL(N) module indexed by `lambda`, by the
/// hook-content formula ∏ (N + j − i) / hook(i, j). Zero when the diagram
/// has more than N rows. The division is exact.
pub fn gl_dimension(lambda: &Partition, n: u32) -> BigUint {
    assert!(n >= 1, "gl_dimension requires N >= 1");
    if lambda.len() > n as usize {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            // i < len(λ) <= N, so N + j - i >= 1.
            num *= BigUint::from(n as u64 + j as u64 - i as u64);
        }
    }
    let mut den = BigUint::one();
    for h in hook_lengths(lambda) {
        den *= BigUint::from(h);
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "hook-content division must be exact");
    q
}

/// Dimension f^λ of the irreducible S_n module indexed by `lambda`, by the
/// hook-length formula n! / ∏ hooks.
pub fn sn_dimension(lambda: &Partition) -> BigUint {
    let mut den = BigUint::one();
    for h in hook_lengths(lambda) {
        den *= BigUint::from(h);
    }
    let (q, r) = factorial(lambda.size()).div_rem(&den);
    assert!(r.is_zero(), "hook-length division must be exact");
    q
}
