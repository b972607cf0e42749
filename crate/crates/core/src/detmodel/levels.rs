use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cycles::CyclicPartition;
use crate::model::StrengthMatrix;
use crate::{Error, Result};

/// Fraction bit `X_{user,(bit)}`; `bit` is 1-based, `user` 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InputBit {
    pub user: usize,
    pub bit: usize,
}

impl fmt::Display for InputBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_{},({})", self.user + 1, self.bit)
    }
}

/// One participating output bit: the XOR of `contributors` at value
/// position `level` of a receiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OutputLevel {
    pub receiver: usize,
    pub level: u64,
    pub contributors: Vec<InputBit>,
}

impl fmt::Display for OutputLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.contributors.iter().map(InputBit::to_string).collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParticipatingLevels {
    /// Per transmitter, bits `1..=n_{Π(i)i}` (empty in a trivial cycle).
    pub inputs: Vec<Vec<InputBit>>,
    /// Per receiver, participating interference levels in descending order.
    pub outputs: Vec<Vec<OutputLevel>>,
}

impl ParticipatingLevels {
    pub fn input_bits(&self) -> impl Iterator<Item = &InputBit> {
        self.inputs.iter().flatten()
    }

    pub fn output_levels(&self) -> impl Iterator<Item = &OutputLevel> {
        self.outputs.iter().flatten()
    }

    pub fn input_count(&self) -> usize {
        self.inputs.iter().map(Vec::len).sum()
    }

    pub fn output_count(&self) -> usize {
        self.outputs.iter().map(Vec::len).sum()
    }

    /// Number of (input bit, output level) incidences.
    pub fn edge_count(&self) -> usize {
        self.output_levels().map(|o| o.contributors.len()).sum()
    }
}

/// Participating inputs and the interference they cause: bit `(i, b)`
/// reaches receiver `k ≠ i` at value position `n_ki − b` when `b ≤ n_ki`.
pub fn participating_levels(matrix: &StrengthMatrix, partition: &CyclicPartition) -> Result<ParticipatingLevels> {
    let k = matrix.users();
    if partition.users() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: partition.users(),
        });
    }
    let n = matrix.level_table()?;
    let inputs: Vec<Vec<InputBit>> = (0..k)
        .map(|user| match partition.predecessor(user) {
            Some(p) => (1..=n[p][user] as usize).map(|bit| InputBit { user, bit }).collect(),
            None => Vec::new(),
        })
        .collect();
    let outputs = (0..k)
        .map(|rx| {
            let mut by_level: BTreeMap<u64, Vec<InputBit>> = BTreeMap::new();
            for (tx, bits) in inputs.iter().enumerate() {
                if tx == rx {
                    continue;
                }
                let level = n[rx][tx];
                for ib in bits.iter().filter(|ib| ib.bit as u64 <= level) {
                    by_level.entry(level - ib.bit as u64).or_default().push(*ib);
                }
            }
            by_level
                .into_iter()
                .rev()
                .map(|(level, contributors)| OutputLevel {
                    receiver: rx,
                    level,
                    contributors,
                })
                .collect()
        })
        .collect();
    Ok(ParticipatingLevels { inputs, outputs })
}
