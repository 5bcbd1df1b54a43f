//! Exact integer utilities: factorials, the Möbius function, divisors and
//! the Witt (necklace) dimension formula.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn factorial(n: u32) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n as u64 {
        acc *= i;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Classical number-theoretic Möbius function, by trial factorization.
pub fn mobius(n: u64) -> Result<i32> {
    if n == 0 {
        return Err(Error::MobiusOfZero);
    }
    let mut n = n;
    let mut m = 1i32;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return Ok(0);
            }
            m = -m;
        }
        d += 1;
    }
    if n > 1 {
        m = -m;
    }
    Ok(m)
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Number of divisors of `n`.
pub fn divisor_count(n: u64) -> u64 {
    divisors(n).len() as u64
}

/// Dimension of the degree-k homogeneous piece of the free Lie algebra on
/// `n` generators: (1/k) Σ_{d|k} μ(d) n^{k/d}.
pub fn witt_dimension(n: u64, k: u64) -> BigUint {
    assert!(n >= 1 && k >= 1, "witt_dimension requires n >= 1, k >= 1");
    let sum = witt_mobius_sum(n, k);
    assert!(
        !sum.is_negative() && (&sum % BigInt::from(k)).is_zero(),
        "Witt sum for n={n}, k={k} is not a nonnegative multiple of k"
    );
    (sum / BigInt::from(k)).to_biguint().unwrap()
}

/// Σ_{d|k} μ(d) n^{k/d}, the numerator of the Witt formula. Exported so the
/// divisibility invariant can be checked against `witt_dimension` directly.
pub fn witt_mobius_sum(n: u64, k: u64) -> BigInt {
    let mut sum = BigInt::zero();
    for d in divisors(k) {
        let mu = mobius(d).expect("d >= 1");
        if mu == 0 {
            continue;
        }
        let term = BigInt::from(n).pow((k / d) as u32);
        sum += BigInt::from(mu) * term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_small_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(2).unwrap(), -1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(10).unwrap(), 1);
        assert_eq!(mobius(20).unwrap(), 0);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_dimension(2, 3), BigUint::from(2u32));
        assert_eq!(witt_dimension(2, 4), BigUint::from(3u32));
        assert_eq!(witt_dimension(4, 7), BigUint::from(2340u32));
        assert_eq!(witt_dimension(2, 1), BigUint::from(2u32));
    }

    #[test]
    fn witt_integrality() {
        for n in 1..=8u64 {
            for k in 1..=16u64 {
                let w = witt_dimension(n, k);
                assert_eq!(
                    BigInt::from(w) * BigInt::from(k),
                    witt_mobius_sum(n, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn divisors_of_12() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisor_count(12), 6);
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(18).to_string(), "6402373705728000");
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
    }

    /// The parity predicate behind the symmetry argument: for c not ≡ 2 mod 4,
    /// every factorization c = a·b with a even and μ(a) ≠ 0 forces b even.
    #[test]
    fn even_divisor_parity_predicate() {
        for c in 1..=10_000u64 {
            if c % 4 == 2 {
                continue;
            }
            for a in divisors(c) {
                if a % 2 == 0 && mobius(a).unwrap() != 0 {
                    let b = c / a;
                    assert_eq!(b % 2, 0, "c={c}, a={a}, b={b}");
                }
            }
        }
    }
}
