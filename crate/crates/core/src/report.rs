//! The serialized analysis report. Every number is an exact rational
//! rendered as `"p"` or `"p/q"`; users and sub-channels are 1-based.

use serde::{Deserialize, Serialize};

use crate::cycles::CyclicPartition;
use crate::detmodel::{
    Conclusion, InvertibilityCertificate, SeparabilityVerdict, SubchannelAnalysis,
};
use crate::model::TinVerdict;
use crate::rational::{render, render_all};
use crate::{Error, Result};

/// Predecessor array: entry `k−1` is `Π(k)`, `null` for a trivial cycle.
pub type PredecessorArray = Vec<Option<usize>>;

pub fn predecessor_array(partition: &CyclicPartition) -> PredecessorArray {
    partition.predecessors().iter().map(|p| p.map(|p| p + 1)).collect()
}

pub fn partition_from_array(array: &[Option<usize>]) -> Result<CyclicPartition> {
    let pred = array
        .iter()
        .map(|p| match p {
            Some(0) => Err(Error::InvalidPartition("predecessors are 1-based".into())),
            Some(p) => Ok(Some(p - 1)),
            None => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?;
    CyclicPartition::from_predecessors(&pred)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub user: usize,
    pub desired: String,
    pub incoming: String,
    pub outgoing: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TinReport {
    pub holds: bool,
    pub strict: bool,
    pub violations: Vec<ViolationReport>,
}

impl From<&TinVerdict> for TinReport {
    fn from(v: &TinVerdict) -> Self {
        TinReport {
            holds: v.holds,
            strict: v.strict,
            violations: v
                .violations
                .iter()
                .map(|x| ViolationReport {
                    user: x.user + 1,
                    desired: render(&x.desired),
                    incoming: render(&x.incoming),
                    outgoing: render(&x.outgoing),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumReport {
    pub value: String,
    pub label: String,
    pub lp: Option<String>,
    pub assignment: String,
    pub brute_force: Option<String>,
    pub methods_agree: bool,
    pub partition: PredecessorArray,
    pub lp_point: Option<Vec<String>>,
}

impl From<&crate::optimize::SumGdof> for SumReport {
    fn from(s: &crate::optimize::SumGdof) -> Self {
        SumReport {
            value: render(&s.value),
            label: s.label.describe().to_string(),
            lp: s.lp.as_ref().map(render),
            assignment: render(&s.assignment),
            brute_force: s.brute_force.as_ref().map(render),
            methods_agree: s.methods_agree,
            partition: predecessor_array(&s.partition),
            lp_point: s.lp_point.as_deref().map(render_all),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub partition: PredecessorArray,
    pub input_bits: usize,
    pub output_bits: usize,
    pub rank: usize,
    pub invertible: bool,
    /// Input bits set to one in a nonzero assignment with zero output.
    pub kernel: Option<Vec<String>>,
}

impl From<&InvertibilityCertificate> for CertificateReport {
    fn from(c: &InvertibilityCertificate) -> Self {
        CertificateReport {
            partition: predecessor_array(&c.partition),
            input_bits: c.input_bits,
            output_bits: c.output_bits,
            rank: c.rank,
            invertible: c.invertible,
            kernel: c
                .kernel
                .as_ref()
                .map(|k| k.iter().map(ToString::to_string).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvertibilityReport {
    pub status: String,
    pub method: String,
    pub conditions: Vec<String>,
    pub certificates: Vec<CertificateReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubchannelReport {
    pub subchannel: usize,
    pub tin: TinReport,
    pub sum: SumReport,
    pub optimal_partitions: Vec<PredecessorArray>,
    pub invertibility: InvertibilityReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparabilityReport {
    pub separable: bool,
    pub total: Option<String>,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub mode: String,
    pub users: usize,
    pub subchannels: Vec<SubchannelReport>,
    pub separability: SeparabilityReport,
    pub warnings: Vec<String>,
}

fn subchannel_report(m: usize, a: &SubchannelAnalysis) -> SubchannelReport {
    SubchannelReport {
        subchannel: m + 1,
        tin: (&a.tin).into(),
        sum: (&a.sum).into(),
        optimal_partitions: a.optimal_partitions.iter().map(predecessor_array).collect(),
        invertibility: InvertibilityReport {
            status: a.status.label().to_string(),
            method: a.method.label().to_string(),
            conditions: a.conditions.clone(),
            certificates: a.certificates.iter().map(Into::into).collect(),
        },
    }
}

impl AnalysisReport {
    pub fn new(users: usize, verdict: &SeparabilityVerdict, warnings: Vec<String>) -> Self {
        let separability = match &verdict.conclusion {
            Conclusion::Separable { total } => SeparabilityReport {
                separable: true,
                total: Some(render(total)),
                reasons: Vec::new(),
            },
            Conclusion::Inapplicable { reasons } => SeparabilityReport {
                separable: false,
                total: None,
                reasons: reasons.clone(),
            },
        };
        AnalysisReport {
            mode: verdict.mode.to_string(),
            users,
            subchannels: verdict
                .subchannels
                .iter()
                .enumerate()
                .map(|(m, a)| subchannel_report(m, a))
                .collect(),
            separability,
            warnings,
        }
    }
}

pub fn save_report(report: &AnalysisReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn load_report(text: &str) -> Result<AnalysisReport> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}
