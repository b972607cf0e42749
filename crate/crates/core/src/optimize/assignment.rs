//! Minimum-cost perfect matching (Hungarian method with potentials) over
//! exact rationals, and its use as the best cyclic partition search.

use num_traits::Zero;

use crate::cycles::{partition_bound, CyclicPartition, PartitionBound};
use crate::model::StrengthMatrix;
use crate::rational::Rational;

/// A permutation `σ` with `σ(k)` the receiver matched to transmitter `k`
/// (the cyclic predecessor of `k`), and its total edge weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub permutation: Vec<usize>,
    pub weight: Rational,
}

/// Solves `min Σ cost[row][col]` over perfect matchings of a square matrix.
/// Returns `row_of[col]`.
pub fn min_cost_matching(cost: &[Vec<Rational>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    // 1-based arrays; index 0 is the virtual root.
    let mut u = vec![Rational::zero(); n + 1];
    let mut v = vec![Rational::zero(); n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        row_of[0] = row;
        let mut col0 = 0usize;
        let mut minv: Vec<Option<Rational>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let r0 = row_of[col0];
            let mut delta: Option<Rational> = None;
            let mut col1 = 0usize;
            for col in 1..=n {
                if used[col] {
                    continue;
                }
                let cur = &cost[r0 - 1][col - 1] - &u[r0] - &v[col];
                if minv[col].as_ref().is_none_or(|m| cur < *m) {
                    minv[col] = Some(cur);
                    way[col] = col0;
                }
                let m = minv[col].as_ref().expect("just set");
                if delta.as_ref().is_none_or(|d| m < d) {
                    delta = Some(m.clone());
                    col1 = col;
                }
            }
            let delta = delta.expect("an unused column remains");
            for col in 0..=n {
                if used[col] {
                    u[row_of[col]] += &delta;
                    v[col] -= &delta;
                } else if let Some(m) = minv[col].as_mut() {
                    *m -= &delta;
                }
            }
            col0 = col1;
            if row_of[col0] == 0 {
                break;
            }
        }
        loop {
            let col1 = way[col0];
            row_of[col0] = row_of[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }
    row_of[1..].iter().map(|r| r - 1).collect()
}

/// Maximum-weight permutation of the interference graph, solved in
/// minimization form on `c_ij = −w(e_ij)` with a zero diagonal.
pub fn max_weight_assignment(matrix: &StrengthMatrix) -> Assignment {
    let k = matrix.users();
    let cost: Vec<Vec<Rational>> = (0..k)
        .map(|rx| {
            (0..k)
                .map(|tx| if rx == tx { Rational::zero() } else { -matrix.get(rx, tx).clone() })
                .collect()
        })
        .collect();
    let permutation = min_cost_matching(&cost);
    let weight = permutation
        .iter()
        .enumerate()
        .filter(|(tx, rx)| *tx != **rx)
        .map(|(tx, &rx)| matrix.get(rx, tx))
        .sum();
    Assignment {
        permutation,
        weight,
    }
}

/// Best cyclic partition bound through the assignment relaxation.
pub fn best_partition_assignment(matrix: &StrengthMatrix) -> (Assignment, PartitionBound) {
    let assignment = max_weight_assignment(matrix);
    let partition =
        CyclicPartition::from_permutation(&assignment.permutation).expect("matching is a permutation");
    let bound = partition_bound(&partition, matrix).expect("same dimension");
    debug_assert_eq!(bound.weight, assignment.weight);
    (assignment, bound)
}
