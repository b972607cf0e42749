//! GDoF / capacity regions as explicit cycle-bound lists, membership,
//! combined sum bounds of parallel networks, and the separate-TIN
//! decomposition test.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::cycles::{check_enumerable, cycle_weight, enumerate_cycles, Cycle};
use crate::exec::{self, Execution};
use crate::model::{check_tin, ParallelNetwork, StrengthMatrix};
use crate::optimize::{best_partition_assignment, LinearProgram, LpSolution, Relation, VarSign};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// `Σ_{k∈π} d_k ≤ rhs` with `rhs = Σ_{k∈π} α_kk − w(π)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionConstraint {
    pub cycle: Cycle,
    pub rhs: Rational,
}

impl RegionConstraint {
    pub fn lhs(&self, d: &[Rational]) -> Rational {
        self.cycle.users().iter().map(|&k| &d[k]).sum()
    }

    pub fn holds(&self, d: &[Rational]) -> bool {
        self.lhs(d) <= self.rhs
    }
}

impl fmt::Display for RegionConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≤ {}", sum_label(self.cycle.users()), rational::render(&self.rhs))
    }
}

/// `d_1+d_3` style label, 1-based.
pub fn sum_label(users: &[usize]) -> String {
    let mut sorted = users.to_vec();
    sorted.sort_unstable();
    let parts: Vec<String> = sorted.iter().map(|u| format!("d_{}", u + 1)).collect();
    parts.join("+")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    /// TIN-optimal sub-channel: the constraints describe the full region.
    TinRegion,
    /// TIN condition fails: only an achievable region.
    AchievableOnly,
}

impl RegionLabel {
    pub fn of(matrix: &StrengthMatrix) -> Self {
        if check_tin(matrix).holds {
            RegionLabel::TinRegion
        } else {
            RegionLabel::AchievableOnly
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            RegionLabel::TinRegion => "TIN-optimal: GDoF/capacity region",
            RegionLabel::AchievableOnly => "TIN-achievable region, not capacity region",
        }
    }
}

/// One constraint per directed cycle, in enumeration order.
pub fn region_constraints(matrix: &StrengthMatrix) -> Result<Vec<RegionConstraint>> {
    Ok(enumerate_cycles(matrix.users())?
        .into_iter()
        .map(|cycle| {
            let diag: Rational = cycle.users().iter().map(|&k| matrix.desired(k)).sum();
            let rhs = diag - cycle_weight(&cycle, matrix);
            RegionConstraint { cycle, rhs }
        })
        .collect())
}

/// A nonnegative GDoF (or rate) tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GdofTuple(Vec<Rational>);

impl GdofTuple {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidTuple("tuple is empty".into()));
        }
        if let Some(pos) = values.iter().position(Signed::is_negative) {
            return Err(Error::InvalidTuple(format!(
                "d_{} = {} is negative",
                pos + 1,
                rational::render(&values[pos])
            )));
        }
        Ok(GdofTuple(values))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(rational::parse_list(text)?)
    }

    pub fn zero(users: usize) -> Self {
        GdofTuple(vec![Rational::zero(); users])
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GdofTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", rational::render_all(&self.0).join(", "))
    }
}

fn check_len(users: usize, tuple: &GdofTuple) -> Result<()> {
    if tuple.len() == users {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: users,
            found: tuple.len(),
        })
    }
}

/// Constraints violated by `tuple`; empty iff the tuple is in the region.
pub fn violations<'a>(
    constraints: &'a [RegionConstraint],
    tuple: &GdofTuple,
) -> Vec<&'a RegionConstraint> {
    constraints.iter().filter(|c| !c.holds(tuple.values())).collect()
}

/// Exact membership: every constraint holds.
pub fn contains(constraints: &[RegionConstraint], tuple: &GdofTuple) -> Result<bool> {
    let users = constraints.iter().map(|c| c.cycle.max_user() + 1).max().unwrap_or(0);
    if tuple.len() < users {
        return Err(Error::DimensionMismatch {
            expected: users,
            found: tuple.len(),
        });
    }
    Ok(constraints.iter().all(|c| c.holds(tuple.values())))
}

/// Tightest bound on `Σ_{k∈S} d_k` per sub-channel (the best cyclic
/// partition bound of the sub-network on `S`) and its sum over sub-channels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetBound {
    pub users: Vec<usize>,
    pub per_subchannel: Vec<Rational>,
    pub total: Rational,
}

impl fmt::Display for SubsetBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≤ {}", sum_label(&self.users), rational::render(&self.total))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinedSumBounds {
    /// Every nonempty subset, ordered by size and then lexicographically.
    pub bounds: Vec<SubsetBound>,
    /// False when some sub-channel fails the TIN condition.
    pub tight: bool,
}

impl CombinedSumBounds {
    pub fn violated(&self, tuple: &GdofTuple) -> Vec<&SubsetBound> {
        self.bounds
            .iter()
            .filter(|b| b.users.iter().map(|&k| &tuple.values()[k]).sum::<Rational>() > b.total)
            .collect()
    }

    pub fn contains(&self, tuple: &GdofTuple) -> Result<bool> {
        let users = self.bounds.iter().filter(|b| b.users.len() == 1).count();
        check_len(users, tuple)?;
        Ok(self.violated(tuple).is_empty())
    }

    pub fn bound(&self, users: &[usize]) -> Option<&SubsetBound> {
        let mut key = users.to_vec();
        key.sort_unstable();
        self.bounds.iter().find(|b| b.users == key)
    }
}

/// Nonempty subsets of `0..users`, by size then lexicographically.
pub fn subsets(users: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u64..1 << users)
        .map(|mask| (0..users).filter(|k| mask >> k & 1 == 1).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Best cyclic partition bound of the sub-network on `users`.
pub fn subset_bound(matrix: &StrengthMatrix, users: &[usize]) -> Rational {
    best_partition_assignment(&matrix.submatrix(users)).1.bound
}

pub fn combined_sum_bounds(network: &ParallelNetwork) -> Result<CombinedSumBounds> {
    combined_sum_bounds_with(network, Execution::default())
}

pub fn combined_sum_bounds_with(network: &ParallelNetwork, exec: Execution) -> Result<CombinedSumBounds> {
    check_enumerable(network.users())?;
    let sets = subsets(network.users());
    let per_channel: Vec<Vec<Rational>> = exec::map(exec, network.channels(), |ch| {
        sets.iter().map(|s| subset_bound(ch, s)).collect()
    });
    let bounds = sets
        .into_iter()
        .enumerate()
        .map(|(i, users)| {
            let per_subchannel: Vec<Rational> = per_channel.iter().map(|v| v[i].clone()).collect();
            let total = per_subchannel.iter().sum();
            SubsetBound {
                users,
                per_subchannel,
                total,
            }
        })
        .collect();
    let tight = network.channels().iter().all(|ch| check_tin(ch).holds);
    Ok(CombinedSumBounds { bounds, tight })
}

/// Outcome of the separate-TIN decomposition test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// `parts[m]` lies in sub-channel `m`'s region and the parts sum to the
    /// tuple.
    Feasible { parts: Vec<Vec<Rational>> },
    /// Farkas multipliers over [`decomposition_lp`], in full and as the
    /// labeled nonzero entries.
    Infeasible {
        farkas: Vec<Rational>,
        certificate: Vec<(String, Rational)>,
    },
}

impl Decomposition {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Decomposition::Feasible { .. })
    }
}

/// Decides whether `tuple = Σ_m d^[m]` with each `d^[m] ≥ 0` inside
/// sub-channel `m`'s region.
pub fn separate_tin_decomposable(network: &ParallelNetwork, tuple: &GdofTuple) -> Result<Decomposition> {
    let k = network.users();
    check_len(k, tuple)?;
    let regions: Vec<Vec<RegionConstraint>> =
        network.channels().iter().map(region_constraints).collect::<Result<_>>()?;

    if let Some(parts) = proportional_split(network, tuple, &regions)? {
        return Ok(Decomposition::Feasible { parts });
    }

    let (lp, labels) = decomposition_lp(network, tuple)?;
    match lp.solve() {
        LpSolution::Optimal { point, .. } => Ok(Decomposition::Feasible {
            parts: point.chunks(k).map(<[Rational]>::to_vec).collect(),
        }),
        LpSolution::Infeasible { farkas } => {
            debug_assert!(lp.check_farkas(&farkas));
            Ok(Decomposition::Infeasible {
                certificate: labels
                    .into_iter()
                    .zip(farkas.iter().cloned())
                    .filter(|(_, y)| !y.is_zero())
                    .collect(),
                farkas,
            })
        }
        LpSolution::Unbounded => unreachable!("zero objective is bounded"),
    }
}

/// Feasibility LP over `d^[m]_k` (variable `m·K + k`): every sub-channel
/// cycle bound, then one equality per user. Returns one label per
/// constraint.
pub fn decomposition_lp(network: &ParallelNetwork, tuple: &GdofTuple) -> Result<(LinearProgram, Vec<String>)> {
    let k = network.users();
    check_len(k, tuple)?;
    let m_count = network.subchannels();
    let vars = m_count * k;
    let var = |m: usize, user: usize| m * k + user;
    let mut lp = LinearProgram::new(vec![Rational::zero(); vars], vec![VarSign::NonNegative; vars])?;
    let mut labels = Vec::new();
    for (m, ch) in network.channels().iter().enumerate() {
        for c in region_constraints(ch)? {
            let mut row = vec![Rational::zero(); vars];
            for &u in c.cycle.users() {
                row[var(m, u)] = Rational::one();
            }
            lp.push(row, Relation::Le, c.rhs.clone())?;
            labels.push(format!("sub-channel {}: {c}", m + 1));
        }
    }
    for user in 0..k {
        let mut row = vec![Rational::zero(); vars];
        for m in 0..m_count {
            row[var(m, user)] = Rational::one();
        }
        let target = tuple.values()[user].clone();
        labels.push(format!("total d_{} = {}", user + 1, rational::render(&target)));
        lp.push(row, Relation::Eq, target)?;
    }
    Ok((lp, labels))
}

/// Splits the tuple across sub-channels in proportion to their sum values
/// and keeps the split if every part is in its region.
fn proportional_split(
    network: &ParallelNetwork,
    tuple: &GdofTuple,
    regions: &[Vec<RegionConstraint>],
) -> Result<Option<Vec<Vec<Rational>>>> {
    let sums: Vec<Rational> = network
        .channels()
        .iter()
        .map(|ch| best_partition_assignment(ch).1.bound)
        .collect();
    let total: Rational = sums.iter().sum();
    if !total.is_positive() {
        return Ok(None);
    }
    let parts: Vec<Vec<Rational>> = sums
        .iter()
        .map(|s| {
            let share = s / &total;
            tuple.values().iter().map(|t| t * &share).collect()
        })
        .collect();
    for (part, region) in parts.iter().zip(regions) {
        if !contains(region, &GdofTuple(part.clone()))? {
            return Ok(None);
        }
    }
    Ok(Some(parts))
}

/// Checks a decomposition independently of how it was found.
pub fn verify_decomposition(network: &ParallelNetwork, tuple: &GdofTuple, parts: &[Vec<Rational>]) -> Result<bool> {
    if parts.len() != network.subchannels() {
        return Ok(false);
    }
    for (part, ch) in parts.iter().zip(network.channels()) {
        if part.len() != network.users() || part.iter().any(Signed::is_negative) {
            return Ok(false);
        }
        if !contains(&region_constraints(ch)?, &GdofTuple(part.clone()))? {
            return Ok(false);
        }
    }
    Ok((0..network.users()).all(|k| parts.iter().map(|p| &p[k]).sum::<Rational>() == tuple.values()[k]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{frac, int};

    fn tuple(v: &[Rational]) -> GdofTuple {
        GdofTuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn three_user_region_has_eight_constraints() {
        let m = fixtures::example1().channel(0).clone();
        let r = region_constraints(&m).unwrap();
        assert_eq!(r.len(), 8);
        // d_1 + d_2 ≤ n_11 + n_22 − n_12 − n_21
        let pair = r.iter().find(|c| c.cycle.users() == [0, 1]).unwrap();
        assert_eq!(pair.rhs, int(3 + 3 - 2));
    }

    #[test]
    fn gap_first_subchannel_region() {
        let net = fixtures::gap(&frac(1, 10)).unwrap();
        for c in region_constraints(net.channel(0)).unwrap() {
            let expect = match c.cycle.len() {
                1 => int(1),
                _ => frac(3, 2),
            };
            if c.cycle.len() == 3 && c.cycle.users() == [0, 2, 1] {
                // reverse orientation has weight 0
                assert_eq!(c.rhs, int(3));
            } else {
                assert_eq!(c.rhs, expect, "{c}");
            }
        }
    }

    #[test]
    fn second_subchannel_membership() {
        let eps = frac(1, 10);
        let net = fixtures::gap(&eps).unwrap();
        let region = region_constraints(net.channel(1)).unwrap();
        assert!(contains(&region, &tuple(&[int(1), eps.clone(), eps.clone()])).unwrap());
        let outside = tuple(&[int(1), &eps * int(2), int(0)]);
        assert!(!contains(&region, &outside).unwrap());
        let broken = violations(&region, &outside);
        assert_eq!(broken.len(), 1);
        assert_eq!(broken[0].cycle.users(), [0, 1]);
        assert_eq!(broken[0].rhs, int(1) + &eps);
    }

    #[test]
    fn zero_tuple_is_inside() {
        let region = region_constraints(&fixtures::two_user()).unwrap();
        assert!(contains(&region, &GdofTuple::zero(2)).unwrap());
    }

    #[test]
    fn negative_tuple_rejected() {
        assert!(GdofTuple::parse("1,-1/2").is_err());
        assert_eq!(GdofTuple::parse("2, 1/2, 0.5").unwrap().values()[2], frac(1, 2));
    }

    #[test]
    fn subset_order() {
        assert_eq!(
            subsets(3),
            vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]
        );
    }

    #[test]
    fn example_one_full_set_is_eighteen() {
        let b = combined_sum_bounds(&fixtures::example1()).unwrap();
        assert!(b.tight);
        assert_eq!(b.bound(&[0, 1, 2]).unwrap().total, int(18));
    }

    #[test]
    fn zero_tuple_decomposes() {
        let net = fixtures::gap(&frac(1, 10)).unwrap();
        match separate_tin_decomposable(&net, &GdofTuple::zero(3)).unwrap() {
            Decomposition::Feasible { parts } => {
                assert!(parts.iter().flatten().all(Zero::is_zero));
            }
            other => panic!("{other:?}"),
        }
    }
}
