//! Bundled networks. Row index is the receiver, column the transmitter.
//!
//! In `example1` and `example2` every sub-channel has `Σ n_kk = 9` and best
//! partition weight 3; sub-channel 1 under `{1,2,3}` has three
//! participating input bits and three output levels.

use num_traits::{One, Zero};

use crate::model::{ParallelNetwork, StrengthMatrix};
use crate::optimize::{LinearProgram, Relation, VarSign};
use crate::rational::{frac, int, render, Rational};
use crate::{Error, Result};

const EX1_SUB1: [[i64; 3]; 3] = [[3, 2, 2], [0, 3, 1], [0, 0, 3]];
const EX1_SUB2: [[i64; 3]; 3] = [[3, 2, 2], [0, 3, 0], [0, 1, 3]];
const EX1_SUB3: [[i64; 3]; 3] = [[3, 0, 0], [1, 3, 2], [0, 1, 3]];
const EX2_SUB3: [[i64; 3]; 3] = [[3, 1, 1], [1, 3, 1], [1, 1, 3]];

fn levels3(rows: &[[i64; 3]; 3]) -> StrengthMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    StrengthMatrix::levels(&refs).expect("fixture is valid")
}

fn levels(rows: &[&[i64]]) -> StrengthMatrix {
    StrengthMatrix::levels(rows).expect("fixture is valid")
}

/// Three invertible TIN-optimal sub-channels, sum-capacity 6 each.
pub fn example1() -> ParallelNetwork {
    ParallelNetwork::new(vec![levels3(&EX1_SUB1), levels3(&EX1_SUB2), levels3(&EX1_SUB3)])
        .expect("fixture is valid")
}

/// Optimal partitions of the [`example1`] sub-channels, written as
/// `--partition` strings (1-based `user:predecessor`).
pub const EXAMPLE1_PARTITIONS: [&str; 3] = ["2:1,3:2,1:3", "3:1,2:3,1:2", "3:2,2:3"];

/// Sub-channels 1 and 2 as in [`example1`]; sub-channel 3 is TIN-optimal but
/// not invertible under either optimal partition.
pub fn example2() -> ParallelNetwork {
    ParallelNetwork::new(vec![levels3(&EX1_SUB1), levels3(&EX1_SUB2), levels3(&EX2_SUB3)])
        .expect("fixture is valid")
}

/// Two-sub-channel three-user GDoF network whose combined sum bounds admit
/// `(2, 1/2, 1/2)` although no per-sub-channel split does. Requires
/// `0 < ε ≤ 1/2`.
pub fn gap(epsilon: &Rational) -> Result<ParallelNetwork> {
    if *epsilon <= Rational::zero() || *epsilon > frac(1, 2) {
        return Err(Error::Schema(format!(
            "epsilon must satisfy 0 < ε ≤ 1/2, got {}",
            render(epsilon)
        )));
    }
    let half = frac(1, 2);
    let reverse = &half - epsilon;
    let build = |rev: &Rational| {
        let one = Rational::one();
        StrengthMatrix::gdof(vec![
            vec![one.clone(), half.clone(), rev.clone()],
            vec![rev.clone(), one.clone(), half.clone()],
            vec![half.clone(), rev.clone(), one],
        ])
    };
    ParallelNetwork::new(vec![build(&Rational::zero())?, build(&reverse)?])
}

/// Default gap parameter.
pub fn default_epsilon() -> Rational {
    frac(1, 10)
}

/// Deterministic version of [`gap`]: every level is `10α` with `ε = 1`.
pub fn gap_levels() -> ParallelNetwork {
    ParallelNetwork::new(vec![
        levels(&[&[10, 5, 0], &[0, 10, 5], &[5, 0, 10]]),
        levels(&[&[10, 5, 4], &[4, 10, 5], &[5, 4, 10]]),
    ])
    .expect("fixture is valid")
}

/// Four users whose participating bipartite graph under the optimal
/// partition is a forest; the partition is not dominant.
pub fn acyclic_four_user() -> StrengthMatrix {
    levels(&[&[6, 2, 3, 1], &[0, 4, 2, 0], &[0, 1, 5, 2], &[3, 0, 1, 5]])
}

/// Four users with a dominant optimal partition `{1,2,3,4}` whose
/// participating bipartite graph contains a cycle; invertible nonetheless.
pub fn cyclic_four_user() -> StrengthMatrix {
    levels(&[&[5, 3, 1, 2], &[0, 5, 2, 2], &[1, 2, 5, 3], &[2, 1, 1, 5]])
}

/// `n_kk = 3`, `n_12 = n_21 = 1`.
pub fn two_user() -> StrengthMatrix {
    levels(&[&[3, 1], &[1, 3]])
}

/// `max R1+R2+R3` subject to `R1+R2 ≤ 10`, `R1+R3 ≤ 10`, `R2+R3 ≤ 30`.
pub fn lp_caution(sign: VarSign) -> LinearProgram {
    let mut lp = LinearProgram::new(vec![int(1); 3], vec![sign; 3]).expect("three variables");
    for (row, rhs) in [([1, 1, 0], 10), ([1, 0, 1], 10), ([0, 1, 1], 30)] {
        lp.push(row.iter().map(|&a| int(a)).collect(), Relation::Le, int(rhs))
            .expect("three coefficients");
    }
    lp
}

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 7] = [
    "example1",
    "example2",
    "gap",
    "gap-levels",
    "acyclic",
    "cyclic",
    "two-user",
];

/// Looks up a bundled network; `gap` uses `epsilon`.
pub fn by_name(name: &str, epsilon: &Rational) -> Option<Result<ParallelNetwork>> {
    Some(match name {
        "example1" => Ok(example1()),
        "example2" => Ok(example2()),
        "gap" => gap(epsilon),
        "gap-levels" => Ok(gap_levels()),
        "acyclic" => Ok(ParallelNetwork::single(acyclic_four_user())),
        "cyclic" => Ok(ParallelNetwork::single(cyclic_four_user())),
        "two-user" => Ok(ParallelNetwork::single(two_user())),
        _ => return None,
    })
}
