//! Sum-GDoF / sum-capacity computation and its cross-checks.
//!
//! Three independent routes to the same number on TIN-optimal networks:
//! the cycle-bound LP, the assignment relaxation, and exhaustive cyclic
//! partitions. [`sum_gdof`] runs all that apply and insists they agree.

pub mod assignment;
pub mod lp;

use num_traits::{One, Zero};

use crate::cycles::{self, enumerate_cycles, CyclicPartition, ENUMERATION_LIMIT};
use crate::model::{check_tin, StrengthMatrix};
use crate::rational::{self, Rational};
use crate::{Error, Result};

pub use assignment::{best_partition_assignment, Assignment};
pub use lp::{solve_lp, LinearProgram, LpSolution, LpStatus, Relation, VarSign};

/// Largest K for which [`sum_gdof`] also runs the exhaustive partition
/// search.
pub const BRUTE_FORCE_LIMIT: usize = 7;

/// Sum-rate LP over every cycle bound:
/// `max Σ d_k  s.t.  Σ_{k∈π} d_k ≤ Σ_{k∈π} α_kk − w(π)` for all cycles `π`,
/// optionally with `d ≥ 0`.
pub fn cycle_bound_lp(matrix: &StrengthMatrix, nonnegative: bool) -> Result<LinearProgram> {
    let k = matrix.users();
    let sign = if nonnegative { VarSign::NonNegative } else { VarSign::Free };
    let mut lp = LinearProgram::new(vec![Rational::one(); k], vec![sign; k])?;
    for cycle in enumerate_cycles(k)? {
        let mut row = vec![Rational::zero(); k];
        let mut rhs = Rational::zero();
        for &u in cycle.users() {
            row[u] = Rational::one();
            rhs += matrix.desired(u);
        }
        rhs -= cycles::cycle_weight(&cycle, matrix);
        lp.push(row, Relation::Le, rhs)?;
    }
    Ok(lp)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumLabel {
    /// TIN-optimal: the value is the sum-GDoF (sum-capacity).
    Exact,
    /// TIN condition fails; the value is only the best cyclic partition
    /// bound.
    BoundOnly,
}

impl SumLabel {
    pub fn describe(self) -> &'static str {
        match self {
            SumLabel::Exact => "exact",
            SumLabel::BoundOnly => "bound-only: TIN condition fails",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumGdof {
    pub value: Rational,
    pub label: SumLabel,
    /// LP optimum with nonnegativity; `None` when K exceeds the enumeration
    /// limit or the LP has no optimum.
    pub lp: Option<Rational>,
    pub lp_point: Option<Vec<Rational>>,
    pub assignment: Rational,
    pub brute_force: Option<Rational>,
    /// Whether every method that ran produced the same value.
    pub methods_agree: bool,
    /// Reported optimal partition (lexicographically smallest permutation
    /// when the exhaustive search ran).
    pub partition: CyclicPartition,
}

pub fn sum_gdof(matrix: &StrengthMatrix) -> Result<SumGdof> {
    let tin = check_tin(matrix);
    let k = matrix.users();
    let (_, assigned) = best_partition_assignment(matrix);

    let (lp, lp_point) = if k <= ENUMERATION_LIMIT {
        match cycle_bound_lp(matrix, true)?.solve() {
            LpSolution::Optimal { value, point, .. } => (Some(value), Some(point)),
            _ => (None, None),
        }
    } else {
        (None, None)
    };
    let (brute_force, partition) = if k <= BRUTE_FORCE_LIMIT {
        let opt = cycles::optimal_partitions(matrix)?;
        let best = opt.best().clone();
        (Some(opt.bound), best)
    } else {
        (None, assigned.partition.clone())
    };

    let mut values = vec![("assignment", &assigned.bound)];
    if let Some(v) = &lp {
        values.push(("cycle-bound LP", v));
    }
    if let Some(v) = &brute_force {
        values.push(("exhaustive partitions", v));
    }
    let methods_agree = values.iter().all(|(_, v)| *v == values[0].1);
    let lp_missing = k <= ENUMERATION_LIMIT && lp.is_none();

    if tin.holds && (!methods_agree || lp_missing) {
        let detail: Vec<String> = values
            .iter()
            .map(|(name, v)| format!("{name} = {}", rational::render(v)))
            .collect();
        return Err(Error::MethodDisagreement(detail.join(", ")));
    }
    Ok(SumGdof {
        value: assigned.bound.clone(),
        label: if tin.holds { SumLabel::Exact } else { SumLabel::BoundOnly },
        lp,
        lp_point,
        assignment: assigned.bound,
        brute_force,
        methods_agree: methods_agree && !lp_missing,
        partition,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RedundancyRegime {
    /// Strict TIN condition: equality of the two optima is guaranteed.
    Strict,
    /// TIN holds only with equality somewhere; equality is expected in the
    /// limit of a strictly TIN-optimal perturbation.
    Continuity,
    /// TIN condition fails; no claim.
    NotTin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedundancyCheck {
    pub with_nonnegativity: LpSolution,
    pub without_nonnegativity: LpSolution,
    pub equal: bool,
    pub regime: RedundancyRegime,
}

/// Solves the cycle-bound LP with and without `d ≥ 0` and compares optima.
pub fn nonnegativity_redundancy_check(matrix: &StrengthMatrix) -> Result<RedundancyCheck> {
    let tin = check_tin(matrix);
    let with_nonnegativity = cycle_bound_lp(matrix, true)?.solve();
    let without_nonnegativity = cycle_bound_lp(matrix, false)?.solve();
    let equal = matches!(
        (with_nonnegativity.value(), without_nonnegativity.value()),
        (Some(a), Some(b)) if a == b
    );
    let regime = if tin.strict {
        RedundancyRegime::Strict
    } else if tin.holds {
        RedundancyRegime::Continuity
    } else {
        RedundancyRegime::NotTin
    };
    Ok(RedundancyCheck {
        with_nonnegativity,
        without_nonnegativity,
        equal,
        regime,
    })
}
