//! Littlewood–Richardson coefficients by lattice-word tableau enumeration.

use std::sync::LazyLock;

use dashmap::DashMap;
use num_bigint::BigUint;

use crate::partition::{enumerate_partitions, Partition};

static LR_CACHE: LazyLock<DashMap<(Partition, Partition, Partition), u64>> =
    LazyLock::new(DashMap::new);

/// The Littlewood–Richardson coefficient c^λ_{μν}: the number of
/// semistandard skew tableaux of shape λ/μ and content ν whose reverse
/// reading word is a lattice word. Returns 0 on size mismatch.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> BigUint {
    if mu.size() + nu.size() != lambda.size() {
        return BigUint::from(0u32);
    }
    if !lambda.contains(mu) || !lambda.contains(nu) {
        return BigUint::from(0u32);
    }
    if nu.is_empty() {
        // Shape λ/μ with no boxes to fill: nonzero only when λ = μ.
        return BigUint::from(u32::from(lambda == mu));
    }
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(v) = LR_CACHE.get(&key) {
        return BigUint::from(*v);
    }
    let count = count_tableaux(lambda, mu, nu);
    LR_CACHE.insert(key, count);
    BigUint::from(count)
}

fn count_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    // Cells of λ/μ in reading order: rows top to bottom, right to left
    // inside each row, so the lattice condition can be enforced as we go.
    let mut cells: Vec<(usize, usize)> = Vec::with_capacity(nu.size() as usize);
    for (i, &row_end) in lambda.parts().iter().enumerate() {
        let row_start = mu.part(i);
        for j in (row_start..row_end).rev() {
            cells.push((i, j as usize));
        }
    }

    let values = nu.len();
    let mut remaining: Vec<u32> = nu.parts().to_vec();
    let mut counts = vec![0u32; values];
    let mut grid: Vec<Vec<Option<u8>>> = lambda
        .parts()
        .iter()
        .map(|&r| vec![None; r as usize])
        .collect();
    let mu_parts: Vec<u32> = (0..lambda.len()).map(|i| mu.part(i)).collect();

    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        remaining: &mut [u32],
        counts: &mut [u32],
        grid: &mut [Vec<Option<u8>>],
        mu_parts: &[u32],
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (i, j) = cells[idx];
        // Row bound: weakly increasing left to right, and the right
        // neighbour (if any, inside the skew) was filled just before.
        let row_max = grid[i].get(j + 1).and_then(|v| *v);
        // Column bound: strictly increasing downwards when the cell above
        // belongs to the skew shape.
        let col_min = if i > 0 && (j as u32) >= mu_parts[i - 1] {
            grid[i - 1][j]
        } else {
            None
        };
        let mut total = 0;
        for v in 0..remaining.len() as u8 {
            if remaining[v as usize] == 0 {
                continue;
            }
            if let Some(m) = row_max {
                if v > m {
                    continue;
                }
            }
            if let Some(m) = col_min {
                if v <= m {
                    continue;
                }
            }
            // Lattice condition on the reading word built so far.
            if v > 0 && counts[v as usize - 1] <= counts[v as usize] {
                continue;
            }
            remaining[v as usize] -= 1;
            counts[v as usize] += 1;
            grid[i][j] = Some(v);
            total += rec(idx + 1, cells, remaining, counts, grid, mu_parts);
            grid[i][j] = None;
            counts[v as usize] -= 1;
            remaining[v as usize] += 1;
        }
        total
    }

    rec(0, &cells, &mut remaining, &mut counts, &mut grid, &mu_parts)
}

/// All partitions of `size` whose columns all have even length, i.e. whose
/// conjugates have only even parts. Empty for odd `size`.
pub fn even_column_partitions(size: u32) -> Vec<Partition> {
    if !size.is_multiple_of(2) {
        return Vec::new();
    }
    enumerate_partitions(size / 2)
        .into_iter()
        .map(|alpha| {
            let doubled: Vec<u32> = alpha.parts().iter().map(|&p| 2 * p).collect();
            Partition::new(doubled).expect("doubling preserves order").conjugate()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn pieri_and_classics() {
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[1, 1])), BigUint::one());
        assert_eq!(lr_coefficient(&p(&[2, 2]), &p(&[1]), &p(&[1])), BigUint::zero());
        assert_eq!(
            lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])),
            BigUint::from(2u32)
        );
        assert_eq!(lr_coefficient(&p(&[2, 2]), &Partition::empty(), &p(&[2, 2])), BigUint::one());
        assert_eq!(lr_coefficient(&p(&[2, 2]), &Partition::empty(), &p(&[3, 1])), BigUint::zero());
    }

    #[test]
    fn symmetry_in_the_two_lower_arguments() {
        use crate::partition::enumerate_partitions;
        for n in 2..=8u32 {
            for lam in enumerate_partitions(n) {
                for a in 0..=n / 2 {
                    for mu in enumerate_partitions(a) {
                        for nu in enumerate_partitions(n - a) {
                            assert_eq!(
                                lr_coefficient(&lam, &mu, &nu),
                                lr_coefficient(&lam, &nu, &mu),
                                "λ={lam} μ={mu} ν={nu}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn even_column_lists() {
        assert_eq!(even_column_partitions(3), Vec::<Partition>::new());
        let four: Vec<Partition> = even_column_partitions(4);
        assert_eq!(four.len(), 2);
        assert!(four.contains(&p(&[2, 2])));
        assert!(four.contains(&p(&[1, 1, 1, 1])));
        for beta in even_column_partitions(10) {
            assert!(beta.has_even_columns());
        }
    }
}
