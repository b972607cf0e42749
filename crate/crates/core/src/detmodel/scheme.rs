use crate::exec::{self, Execution};
use crate::model::{Mode, StrengthMatrix};
use crate::{Error, Result};

/// Largest number of offset vectors [`best_tin_scheme`] will visit.
pub const SEARCH_LIMIT: u128 = 1 << 24;

/// Power control at integer levels: user `k` backs off its top `δ_k`
/// levels and sends `R_k` bits just below.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerControlScheme {
    pub offsets: Vec<u64>,
    pub rates: Vec<u64>,
}

impl PowerControlScheme {
    pub fn silent(users: usize) -> Self {
        PowerControlScheme {
            offsets: vec![0; users],
            rates: vec![0; users],
        }
    }

    pub fn total_rate(&self) -> u64 {
        self.rates.iter().sum()
    }
}

/// Interference level left at receiver `rx` after every other transmitter
/// backs off.
fn residual(n: &[Vec<u64>], offsets: &[u64], rx: usize) -> u64 {
    (0..n.len())
        .filter(|&j| j != rx)
        .map(|j| n[rx][j].saturating_sub(offsets[j]))
        .max()
        .unwrap_or(0)
}

/// Each active user's bits fit below its backed-off level and land
/// strictly above the strongest residual interference. Silent users impose
/// nothing.
pub fn tin_feasible(matrix: &StrengthMatrix, scheme: &PowerControlScheme) -> Result<bool> {
    let n = matrix.level_table()?;
    let k = n.len();
    for v in [&scheme.offsets, &scheme.rates] {
        if v.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: v.len(),
            });
        }
    }
    Ok((0..k).all(|u| {
        let rate = scheme.rates[u];
        if rate == 0 {
            return true;
        }
        let Some(top) = n[u][u].checked_sub(scheme.offsets[u]) else {
            return false;
        };
        top >= rate && top - rate >= residual(&n, &scheme.offsets, u)
    }))
}

fn rates_for(n: &[Vec<u64>], offsets: &[u64]) -> Vec<u64> {
    (0..n.len())
        .map(|u| {
            n[u][u]
                .saturating_sub(offsets[u])
                .saturating_sub(residual(n, offsets, u))
        })
        .collect()
}

/// Exhaustive search over offsets `0 ≤ δ_k ≤ max_{j≠k} n_jk` with the best
/// rates for each offset vector. Ties go to the lexicographically smallest
/// offsets.
pub fn best_tin_scheme(matrix: &StrengthMatrix) -> Result<PowerControlScheme> {
    best_tin_scheme_with(matrix, Execution::default())
}

pub fn best_tin_scheme_with(matrix: &StrengthMatrix, exec: Execution) -> Result<PowerControlScheme> {
    matrix.require(Mode::Deterministic)?;
    let n = matrix.level_table()?;
    let k = n.len();
    let caps: Vec<u64> = (0..k)
        .map(|tx| (0..k).filter(|&j| j != tx).map(|j| n[j][tx]).max().unwrap_or(0))
        .collect();
    let size = caps
        .iter()
        .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128 + 1))
        .unwrap_or(u128::MAX);
    if size > SEARCH_LIMIT {
        return Err(Error::SearchLimit {
            size,
            limit: SEARCH_LIMIT,
        });
    }
    let firsts: Vec<u64> = (0..=caps[0]).collect();
    let per_first = exec::map(exec, &firsts, |&d0| {
        let mut offsets = vec![0u64; k];
        offsets[0] = d0;
        let mut best: Option<PowerControlScheme> = None;
        loop {
            let rates = rates_for(&n, &offsets);
            let total: u64 = rates.iter().sum();
            if best.as_ref().is_none_or(|b| total > b.total_rate()) {
                best = Some(PowerControlScheme {
                    offsets: offsets.clone(),
                    rates,
                });
            }
            // odometer over users 1.., last user fastest
            let mut pos = k;
            loop {
                if pos == 1 {
                    return best.expect("at least one offset vector");
                }
                pos -= 1;
                if offsets[pos] < caps[pos] {
                    offsets[pos] += 1;
                    break;
                }
                offsets[pos] = 0;
            }
        }
    });
    let mut best: Option<PowerControlScheme> = None;
    for s in per_first {
        if best.as_ref().is_none_or(|b| s.total_rate() > b.total_rate()) {
            best = Some(s);
        }
    }
    Ok(best.unwrap_or_else(|| PowerControlScheme::silent(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn two_user_scheme() {
        let m = fixtures::two_user();
        let s = PowerControlScheme {
            offsets: vec![0, 0],
            rates: vec![2, 2],
        };
        assert!(tin_feasible(&m, &s).unwrap());
        let greedy = PowerControlScheme {
            offsets: vec![0, 0],
            rates: vec![3, 2],
        };
        assert!(!tin_feasible(&m, &greedy).unwrap());
        assert_eq!(best_tin_scheme(&m).unwrap().total_rate(), 4);
    }

    #[test]
    fn silence_is_feasible() {
        let m = fixtures::example1().channel(0).clone();
        assert!(tin_feasible(&m, &PowerControlScheme::silent(3)).unwrap());
    }

    #[test]
    fn diagonal_uses_full_levels() {
        let m = StrengthMatrix::levels(&[&[2, 0], &[0, 5]]).unwrap();
        let s = best_tin_scheme(&m).unwrap();
        assert_eq!(s.offsets, vec![0, 0]);
        assert_eq!(s.rates, vec![2, 5]);
    }

    #[test]
    fn example_one_reaches_six() {
        for ch in fixtures::example1().channels() {
            let s = best_tin_scheme(ch).unwrap();
            assert_eq!(s.total_rate(), 6);
            assert!(tin_feasible(ch, &s).unwrap());
        }
    }

    #[test]
    fn sequential_matches_parallel() {
        let m = fixtures::cyclic_four_user();
        assert_eq!(
            best_tin_scheme_with(&m, Execution::Sequential).unwrap(),
            best_tin_scheme_with(&m, Execution::Parallel).unwrap()
        );
    }
}
