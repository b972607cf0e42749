use crate::cycles::{optimal_partitions, CyclicPartition};
use crate::detmodel::conditions::{check_3user_condition, dominant_partition_check};
use crate::detmodel::invert::{invertible_gf2, InvertibilityCertificate};
use crate::exec::{self, Execution};
use crate::model::{check_tin, quantize, Mode, ParallelNetwork, TinVerdict};
use crate::optimize::{sum_gdof, SumGdof};
use crate::rational::Rational;
use crate::Result;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeparabilityOptions {
    /// `log2(P)` for checking the three-user condition on quantized levels
    /// in gdof mode; exponents are used directly when absent.
    pub log2_p: Option<Rational>,
    pub exec: Execution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvertibilityMethod {
    /// A single sub-channel needs no invertibility.
    Trivial,
    ExactGf2,
    SufficientCondition,
}

impl InvertibilityMethod {
    pub fn label(self) -> &'static str {
        match self {
            InvertibilityMethod::Trivial => "trivial",
            InvertibilityMethod::ExactGf2 => "exact-gf2",
            InvertibilityMethod::SufficientCondition => "sufficient-condition",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvertibilityStatus {
    Invertible,
    NotInvertible,
    /// No sufficient condition applies; the exact question is left open.
    Undetermined,
}

impl InvertibilityStatus {
    pub fn label(self) -> &'static str {
        match self {
            InvertibilityStatus::Invertible => "invertible",
            InvertibilityStatus::NotInvertible => "not invertible",
            InvertibilityStatus::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubchannelAnalysis {
    pub tin: TinVerdict,
    pub sum: SumGdof,
    /// Every optimal cyclic partition, tie-break order.
    pub optimal_partitions: Vec<CyclicPartition>,
    pub status: InvertibilityStatus,
    pub method: InvertibilityMethod,
    /// GF(2) certificates per optimal partition (deterministic mode).
    pub certificates: Vec<InvertibilityCertificate>,
    /// Sufficient conditions found to hold, by name.
    pub conditions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    /// Sum-capacity (or sum-GDoF) of the parallel network is the sum of the
    /// per-sub-channel values, achieved by separate TIN.
    Separable { total: Rational },
    /// A premise fails; each reason names the sub-channel (1-based).
    Inapplicable { reasons: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityVerdict {
    pub mode: Mode,
    pub subchannels: Vec<SubchannelAnalysis>,
    pub conclusion: Conclusion,
}

impl SeparabilityVerdict {
    pub fn is_separable(&self) -> bool {
        matches!(self.conclusion, Conclusion::Separable { .. })
    }
}

fn analyze(
    ch: &crate::model::StrengthMatrix,
    single: bool,
    options: &SeparabilityOptions,
) -> Result<SubchannelAnalysis> {
    let tin = check_tin(ch);
    let sum = sum_gdof(ch)?;
    let optimal = optimal_partitions(ch)?.partitions;
    let mut certificates = Vec::new();
    let mut conditions = Vec::new();
    let (status, method) = if single {
        (InvertibilityStatus::Invertible, InvertibilityMethod::Trivial)
    } else if ch.mode() == Mode::Deterministic {
        certificates = optimal
            .iter()
            .map(|p| invertible_gf2(ch, p))
            .collect::<Result<Vec<_>>>()?;
        let status = if certificates.iter().any(|c| c.invertible) {
            InvertibilityStatus::Invertible
        } else {
            InvertibilityStatus::NotInvertible
        };
        (status, InvertibilityMethod::ExactGf2)
    } else {
        if let Some(p) = optimal.iter().find(|p| dominant_partition_check(ch, p)) {
            conditions.push(format!("dominant optimal partition {p}"));
        }
        if ch.users() == 3 {
            let holds = match &options.log2_p {
                Some(l) => check_3user_condition(&quantize(ch, l)?)?,
                None => check_3user_condition(ch)?,
            };
            if holds {
                conditions.push("three-user shift sums differ".to_string());
            }
        }
        let status = if conditions.is_empty() {
            InvertibilityStatus::Undetermined
        } else {
            InvertibilityStatus::Invertible
        };
        (status, InvertibilityMethod::SufficientCondition)
    };
    Ok(SubchannelAnalysis {
        tin,
        sum,
        optimal_partitions: optimal,
        status,
        method,
        certificates,
        conditions,
    })
}

/// Per-sub-channel TIN, sum and invertibility analysis, and the resulting
/// separability conclusion.
pub fn separability_verdict(network: &ParallelNetwork, options: &SeparabilityOptions) -> Result<SeparabilityVerdict> {
    let single = network.subchannels() == 1;
    let subchannels = exec::map(options.exec, network.channels(), |ch| analyze(ch, single, options))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut reasons = Vec::new();
    for (m, a) in subchannels.iter().enumerate() {
        if !a.tin.holds {
            let users: Vec<String> = a.tin.violations.iter().map(|v| (v.user + 1).to_string()).collect();
            reasons.push(format!(
                "sub-channel {}: TIN condition fails for user(s) {}",
                m + 1,
                users.join(",")
            ));
        }
        match a.status {
            InvertibilityStatus::Invertible => {}
            InvertibilityStatus::NotInvertible => reasons.push(format!(
                "sub-channel {}: not invertible under any optimal cyclic partition",
                m + 1
            )),
            InvertibilityStatus::Undetermined => reasons.push(format!(
                "sub-channel {}: invertibility undetermined (no sufficient condition holds)",
                m + 1
            )),
        }
    }
    let conclusion = if reasons.is_empty() {
        Conclusion::Separable {
            total: subchannels.iter().map(|a| &a.sum.value).sum(),
        }
    } else {
        Conclusion::Inapplicable { reasons }
    };
    Ok(SeparabilityVerdict {
        mode: network.mode(),
        subchannels,
        conclusion,
    })
}
