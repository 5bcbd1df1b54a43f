//! Exact symmetric-group character values and the sparse class functions
//! attached to the free-Lie and derivation modules.
//!
//! Irreducible character values come from the Murnaghan–Nakayama rule,
//! memoized globally. The class functions `chi_l`, `chi_induced` and
//! `chi_w` are supported on a handful of near-rectangular cycle types and
//! are never materialized densely.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numbers::{factorial, mobius};
use crate::partition::Partition;

/// What a class function is the character of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    /// The degree-k piece of the free Lie algebra (Witt–Brandt).
    L,
    /// The induced module sitting in the middle of the defining sequence.
    Induced,
    /// The multiplicity module of the symplectic derivation algebra.
    W,
    Irreducible(Partition),
    AdHoc,
}

/// A sparse, exact, integer-valued class function on S_n. Absent cycle
/// types have value 0.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    degree: u32,
    values: BTreeMap<Partition, BigInt>,
    label: Label,
}

impl ClassFunction {
    pub fn new(degree: u32, label: Label) -> Self {
        ClassFunction { degree, values: BTreeMap::new(), label }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn label(&self) -> &Label {
        &self.label
    }

    /// Sets the value on a cycle type; zero values are dropped. Panics when
    /// the cycle type has the wrong degree (internal construction error).
    pub fn set(&mut self, class: Partition, value: BigInt) {
        assert_eq!(class.size(), self.degree, "cycle type of wrong degree");
        if value.is_zero() {
            self.values.remove(&class);
        } else {
            self.values.insert(class, value);
        }
    }

    /// Value on a cycle type; zero when absent.
    pub fn value(&self, class: &Partition) -> BigInt {
        self.values.get(class).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The nonzero support, ascending in the derived partition order.
    pub fn support(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.values.iter()
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    /// Pointwise difference, keeping the left operand's degree.
    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        assert_eq!(self.degree, other.degree);
        let mut out = ClassFunction::new(self.degree, Label::AdHoc);
        for (c, v) in &self.values {
            out.set(c.clone(), v.clone());
        }
        for (c, v) in &other.values {
            out.set(c.clone(), out.value(c) - v);
        }
        out
    }

    pub fn eq_pointwise(&self, other: &ClassFunction) -> bool {
        self.degree == other.degree && self.values == other.values
    }
}

static MN_MEMO: LazyLock<DashMap<(Partition, Partition), BigInt>> =
    LazyLock::new(DashMap::new);

/// Irreducible character of S_n: χ_λ evaluated on the cycle type μ, by
/// recursive rim-hook removal. Memoized; safe to call concurrently.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.size() != mu.size() {
        return Err(Error::DegreeMismatch {
            expected: lambda.size(),
            found: mu.size(),
        });
    }
    Ok(mn_rec(lambda, mu))
}

fn mn_rec(lambda: &Partition, mu: &Partition) -> BigInt {
    if mu.is_empty() {
        return BigInt::from(1);
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = MN_MEMO.get(&key) {
        return v.clone();
    }

    // Remove the largest part of μ first; parts are already sorted
    // decreasingly, so that is μ_0.
    let hook_len = mu.part(0) as i64;
    let rest = Partition::new(mu.parts()[1..].to_vec()).expect("suffix stays sorted");

    // First-column beta set: β_i = λ_i + (ℓ − 1 − i). Removing a rim hook of
    // length t means replacing some β_i by β_i − t, provided the target is
    // free; the leg length is the number of β strictly in between.
    let l = lambda.len();
    let beta: Vec<i64> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (l - 1 - i) as i64)
        .collect();

    let mut total = BigInt::zero();
    for (i, &b) in beta.iter().enumerate() {
        let nb = b - hook_len;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let height = beta.iter().filter(|&&c| nb < c && c < b).count();
        let mut new_beta = beta.clone();
        new_beta[i] = nb;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let new_parts: Vec<u32> = new_beta
            .iter()
            .enumerate()
            .map(|(j, &bj)| (bj - (l - 1 - j) as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        let sub = Partition::new(new_parts).expect("rim-hook removal yields a partition");
        let term = mn_rec(&sub, &rest);
        if height % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }

    MN_MEMO.insert(key, total.clone());
    total
}

fn rectangle(a: u32, b: u32) -> Partition {
    Partition::new(vec![a; b as usize]).expect("constant parts are sorted")
}

fn one_plus_rectangle(a: u32, b: u32) -> Partition {
    let mut parts = vec![a; b as usize];
    parts.push(1);
    Partition::new(parts).expect("a >= 2 keeps parts sorted")
}

/// Character of L_k, the multiplicity module of the degree-k free Lie
/// piece: supported on rectangular cycle types a^b with ab = k, where it
/// takes the value (b−1)!·a^{b−1}·μ(a). The identity 1^k is the a = 1 case.
pub fn chi_l(k: u32) -> ClassFunction {
    assert!(k >= 1);
    let mut out = ClassFunction::new(k, Label::L);
    for a in 1..=k {
        if !k.is_multiple_of(a) {
            continue;
        }
        let m = mobius(a as u64).expect("a >= 1");
        if m == 0 {
            continue;
        }
        let b = k / a;
        let value = BigInt::from(m)
            * BigInt::from(factorial(b - 1))
            * BigInt::from(a).pow(b - 1);
        out.set(rectangle(a, b), value);
    }
    out
}

/// Character of the induced module on S_{k+2}: value (k+2)·k! on the
/// identity, (b−1)!·a^{b−1}·μ(a) on classes 1·a^b with a ≥ 2 and
/// ab = k+1, zero elsewhere.
pub fn chi_induced(k: u32) -> ClassFunction {
    assert!(k >= 1);
    let n = k + 2;
    let mut out = ClassFunction::new(n, Label::Induced);
    out.set(
        rectangle(1, n),
        BigInt::from(n) * BigInt::from(factorial(k)),
    );
    for a in 2..=k + 1 {
        if !(k + 1).is_multiple_of(a) {
            continue;
        }
        let m = mobius(a as u64).expect("a >= 2");
        if m == 0 {
            continue;
        }
        let b = (k + 1) / a;
        let value = BigInt::from(m)
            * BigInt::from(factorial(b - 1))
            * BigInt::from(a).pow(b - 1);
        out.set(one_plus_rectangle(a, b), value);
    }
    out
}

/// Character of W_k on S_{k+2}: k! on the identity, (b−1)!·a^{b−1}·μ(a) on
/// 1·a^b with ab = k+1, −(b−1)!·a^{b−1}·μ(a) on a^b with ab = k+2 (a ≥ 2
/// in both families), zero on every other class.
pub fn chi_w(k: u32) -> ClassFunction {
    assert!(k >= 1);
    let n = k + 2;
    let mut out = ClassFunction::new(n, Label::W);
    out.set(rectangle(1, n), BigInt::from(factorial(k)));
    for a in 2..=k + 1 {
        if !(k + 1).is_multiple_of(a) {
            continue;
        }
        let m = mobius(a as u64).expect("a >= 2");
        if m == 0 {
            continue;
        }
        let b = (k + 1) / a;
        let value = BigInt::from(m)
            * BigInt::from(factorial(b - 1))
            * BigInt::from(a).pow(b - 1);
        out.set(one_plus_rectangle(a, b), value);
    }
    for a in 2..=n {
        if !n.is_multiple_of(a) {
            continue;
        }
        let m = mobius(a as u64).expect("a >= 2");
        if m == 0 {
            continue;
        }
        let b = n / a;
        let value = -(BigInt::from(m)
            * BigInt::from(factorial(b - 1))
            * BigInt::from(a).pow(b - 1));
        out.set(rectangle(a, b), value);
    }
    out
}

/// Checks that chi_w(k) equals chi_induced(k) − chi_l(k+2) pointwise on all
/// classes of S_{k+2}.
pub fn verify_difference_identity(k: u32) -> bool {
    chi_w(k).eq_pointwise(&chi_induced(k).sub(&chi_l(k + 2)))
}
