//! Cycles, cyclic partitions and partition bounds on the interference graph.
//!
//! Edge `e_ij` runs from user `j` to user `i` and weighs the cross strength
//! `(i, j)`; self edges weigh zero. A cycle listed `(u0, u1, …, uL-1)` uses
//! the edges `e_{u0 u1}, e_{u1 u2}, …, e_{uL-1 u0}`, so the cyclic
//! predecessor of `u(t+1)` is `u(t)`.

use std::fmt;

use num_traits::Zero;

use crate::exec::{self, Execution};
use crate::model::StrengthMatrix;
use crate::rational::Rational;
use crate::{Error, Result};

/// Largest K for which cycles and partitions are enumerated exhaustively.
pub const ENUMERATION_LIMIT: usize = 9;

pub(crate) fn check_enumerable(users: usize) -> Result<()> {
    if users == 0 {
        return Err(Error::NoUsers);
    }
    if users > ENUMERATION_LIMIT {
        return Err(Error::EnumerationLimit {
            users,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// A cyclically ordered set of distinct users, rotated so the smallest
/// user comes first. Direction is significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    users: Vec<usize>,
}

impl Cycle {
    pub fn new(mut users: Vec<usize>) -> Result<Self> {
        if users.is_empty() {
            return Err(Error::InvalidCycle("empty cycle".into()));
        }
        let mut seen = users.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCycle(format!("repeated user in {users:?}")));
        }
        let start = users
            .iter()
            .enumerate()
            .min_by_key(|(_, u)| **u)
            .map(|(i, _)| i)
            .unwrap_or(0);
        users.rotate_left(start);
        Ok(Cycle { users })
    }

    pub fn trivial(user: usize) -> Self {
        Cycle { users: vec![user] }
    }

    pub fn users(&self) -> &[usize] {
        &self.users
    }

    pub fn len(&self) -> usize {
        self.users.len()
    }

    pub fn is_empty(&self) -> bool {
        self.users.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.users.len() == 1
    }

    pub fn contains(&self, user: usize) -> bool {
        self.users.contains(&user)
    }

    /// Bitmask of the users in the cycle.
    pub fn mask(&self) -> u64 {
        self.users.iter().fold(0, |m, &u| m | (1 << u))
    }

    /// `(receiver, transmitter)` pairs of the cycle's cross edges.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let l = self.users.len();
        (0..l)
            .filter(move |_| l > 1)
            .map(move |t| (self.users[t], self.users[(t + 1) % l]))
    }

    pub fn max_user(&self) -> usize {
        *self.users.iter().max().expect("cycles are nonempty")
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.users.iter().map(|u| (u + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Every directed cycle on `users` vertices, each once in canonical form,
/// in lexicographic order of the listing.
pub fn enumerate_cycles(users: usize) -> Result<Vec<Cycle>> {
    check_enumerable(users)?;
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(users);
    for start in 0..users {
        path.clear();
        path.push(start);
        extend_cycles(users, &mut path, &mut out);
    }
    Ok(out)
}

fn extend_cycles(users: usize, path: &mut Vec<usize>, out: &mut Vec<Cycle>) {
    out.push(Cycle {
        users: path.clone(),
    });
    for next in path[0] + 1..users {
        if !path.contains(&next) {
            path.push(next);
            extend_cycles(users, path, out);
            path.pop();
        }
    }
}

/// Number of directed cycles, `Σ_L C(K,L)·(L−1)!`.
pub fn cycle_count(users: usize) -> u128 {
    let k = users as u128;
    let mut total = 0u128;
    let mut binom = 1u128;
    for l in 1..=k {
        binom = binom * (k - l + 1) / l;
        total += binom * (1..l).product::<u128>();
    }
    total
}

pub fn cycle_weight(cycle: &Cycle, matrix: &StrengthMatrix) -> Rational {
    cycle.edges().map(|(rx, tx)| matrix.get(rx, tx)).sum()
}

/// A vertex-disjoint cycle cover of all users. Stored both as cycles and as
/// the predecessor map; user `k` in a trivial cycle has no predecessor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicPartition {
    cycles: Vec<Cycle>,
    predecessor: Vec<Option<usize>>,
}

impl CyclicPartition {
    /// From a permutation `perm[k] = Π(k)`; fixed points are trivial cycles.
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let k = perm.len();
        if k == 0 {
            return Err(Error::NoUsers);
        }
        let mut inverse = vec![usize::MAX; k];
        for (user, &p) in perm.iter().enumerate() {
            if p >= k || inverse[p] != usize::MAX {
                return Err(Error::InvalidPartition(format!(
                    "predecessor map {perm:?} is not a permutation"
                )));
            }
            inverse[p] = user;
        }
        let mut visited = vec![false; k];
        let mut cycles = Vec::new();
        for start in 0..k {
            if visited[start] {
                continue;
            }
            let mut users = vec![start];
            visited[start] = true;
            let mut cur = inverse[start];
            while cur != start {
                visited[cur] = true;
                users.push(cur);
                cur = inverse[cur];
            }
            cycles.push(Cycle { users });
        }
        let predecessor = perm
            .iter()
            .enumerate()
            .map(|(user, &p)| (p != user).then_some(p))
            .collect();
        Ok(CyclicPartition {
            cycles,
            predecessor,
        })
    }

    /// From an explicit predecessor map (`None` for trivial cycles).
    pub fn from_predecessors(pred: &[Option<usize>]) -> Result<Self> {
        let perm: Vec<usize> = pred
            .iter()
            .enumerate()
            .map(|(user, p)| p.unwrap_or(user))
            .collect();
        if pred.iter().enumerate().any(|(u, p)| *p == Some(u)) {
            return Err(Error::InvalidPartition(
                "a user cannot be its own cyclic predecessor".into(),
            ));
        }
        Self::from_permutation(&perm)
    }

    /// From cycles that must cover `0..users` exactly once.
    pub fn from_cycles(users: usize, cycles: Vec<Cycle>) -> Result<Self> {
        let mut perm = vec![usize::MAX; users];
        let mut covered = vec![false; users];
        for cycle in &cycles {
            let l = cycle.len();
            for &u in &cycle.users {
                if u >= users {
                    return Err(Error::InvalidPartition(format!(
                        "user {} outside 1..={users}",
                        u + 1
                    )));
                }
                if covered[u] {
                    return Err(Error::InvalidPartition(format!(
                        "user {} covered twice",
                        u + 1
                    )));
                }
                covered[u] = true;
            }
            for t in 0..l {
                perm[cycle.users[(t + 1) % l]] = cycle.users[t];
            }
        }
        if let Some(missing) = perm.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "user {} not covered",
                missing + 1
            )));
        }
        Self::from_permutation(&perm)
    }

    /// All users in trivial cycles.
    pub fn identity(users: usize) -> Self {
        Self::from_permutation(&(0..users).collect::<Vec<_>>()).expect("identity is a permutation")
    }

    pub fn users(&self) -> usize {
        self.predecessor.len()
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn predecessor(&self, user: usize) -> Option<usize> {
        self.predecessor[user]
    }

    pub fn predecessors(&self) -> &[Option<usize>] {
        &self.predecessor
    }

    /// The predecessor map as a permutation, fixed points for trivial cycles.
    pub fn permutation(&self) -> Vec<usize> {
        self.predecessor
            .iter()
            .enumerate()
            .map(|(u, p)| p.unwrap_or(u))
            .collect()
    }

    pub fn weight(&self, matrix: &StrengthMatrix) -> Rational {
        self.predecessor
            .iter()
            .enumerate()
            .filter_map(|(k, p)| p.map(|p| matrix.get(p, k)))
            .sum()
    }

    pub fn is_all_trivial(&self) -> bool {
        self.predecessor.iter().all(Option::is_none)
    }
}

impl fmt::Display for CyclicPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cycles.iter().map(Cycle::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Parses `k1:p1,k2:p2,…` (1-based user:predecessor pairs); unlisted users
/// sit in trivial cycles.
pub fn parse_partition(users: usize, text: &str) -> Result<CyclicPartition> {
    let mut pred = vec![None; users];
    for pair in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, p) = pair
            .split_once(':')
            .ok_or_else(|| Error::InvalidPartition(format!("expected user:predecessor, got {pair:?}")))?;
        let parse = |s: &str| -> Result<usize> {
            let v: usize = s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidPartition(format!("bad user index {s:?}")))?;
            if v == 0 || v > users {
                return Err(Error::InvalidPartition(format!("user {v} outside 1..={users}")));
            }
            Ok(v - 1)
        };
        let (k, p) = (parse(k)?, parse(p)?);
        if pred[k].is_some() {
            return Err(Error::InvalidPartition(format!("user {} listed twice", k + 1)));
        }
        pred[k] = (k != p).then_some(p);
    }
    CyclicPartition::from_predecessors(&pred)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Visits every permutation whose first entry is `first`, in lexicographic
/// order.
fn for_each_permutation_from(users: usize, first: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = std::iter::once(first)
        .chain((0..users).filter(|&u| u != first))
        .collect();
    loop {
        visit(&perm);
        if !next_permutation(&mut perm[1..]) {
            break;
        }
    }
}

/// Every cyclic partition of `users`, ordered lexicographically by
/// predecessor permutation.
pub fn enumerate_partitions(users: usize) -> Result<Vec<CyclicPartition>> {
    enumerate_partitions_with(users, Execution::default())
}

pub fn enumerate_partitions_with(users: usize, exec: Execution) -> Result<Vec<CyclicPartition>> {
    check_enumerable(users)?;
    let chunks = exec::map_range(exec, users, |first| {
        let mut out = Vec::new();
        for_each_permutation_from(users, first, |perm| {
            out.push(CyclicPartition::from_permutation(perm).expect("valid permutation"));
        });
        out
    });
    Ok(chunks.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionBound {
    pub partition: CyclicPartition,
    pub weight: Rational,
    /// `Σ diag − weight`.
    pub bound: Rational,
}

pub fn partition_bound(partition: &CyclicPartition, matrix: &StrengthMatrix) -> Result<PartitionBound> {
    if partition.users() != matrix.users() {
        return Err(Error::DimensionMismatch {
            expected: matrix.users(),
            found: partition.users(),
        });
    }
    let weight: Rational = partition.cycles().iter().map(|c| cycle_weight(c, matrix)).sum();
    let bound = matrix.diagonal_sum() - &weight;
    Ok(PartitionBound {
        partition: partition.clone(),
        weight,
        bound,
    })
}

/// The heaviest partitions found by exhaustive search over permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalPartitions {
    pub weight: Rational,
    pub bound: Rational,
    /// All partitions attaining `weight`, lexicographic by permutation; the
    /// first is the reported tie-break winner.
    pub partitions: Vec<CyclicPartition>,
}

impl OptimalPartitions {
    pub fn best(&self) -> &CyclicPartition {
        &self.partitions[0]
    }
}

/// Exhaustive best cyclic partition bound (K ≤ 9), with every exact tie.
pub fn optimal_partitions(matrix: &StrengthMatrix) -> Result<OptimalPartitions> {
    optimal_partitions_with(matrix, Execution::default())
}

pub fn optimal_partitions_with(matrix: &StrengthMatrix, exec: Execution) -> Result<OptimalPartitions> {
    let k = matrix.users();
    check_enumerable(k)?;
    let per_first = exec::map_range(exec, k, |first| {
        let mut best: Option<Rational> = None;
        let mut ties: Vec<Vec<usize>> = Vec::new();
        for_each_permutation_from(k, first, |perm| {
            let w: Rational = perm
                .iter()
                .enumerate()
                .filter(|(tx, rx)| **rx != *tx)
                .map(|(tx, &rx)| matrix.get(rx, tx))
                .sum();
            match &best {
                Some(b) if w < *b => {}
                Some(b) if w == *b => ties.push(perm.to_vec()),
                _ => {
                    best = Some(w);
                    ties = vec![perm.to_vec()];
                }
            }
        });
        (best.expect("at least one permutation"), ties)
    });
    let weight = per_first
        .iter()
        .map(|(w, _)| w)
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let partitions = per_first
        .into_iter()
        .filter(|(w, _)| *w == weight)
        .flat_map(|(_, ties)| ties)
        .map(|p| CyclicPartition::from_permutation(&p).expect("valid permutation"))
        .collect();
    Ok(OptimalPartitions {
        bound: matrix.diagonal_sum() - &weight,
        weight,
        partitions,
    })
}
