use crate::cycles::{optimal_partitions, CyclicPartition};
use crate::detmodel::gf2::Gf2Matrix;
use crate::detmodel::levels::{participating_levels, InputBit, ParticipatingLevels};
use crate::model::{Mode, StrengthMatrix};
use crate::rational::Rational;
use crate::{Error, Result};

/// Largest participating-bit count handled by elimination.
pub const BIT_LIMIT: usize = 4096;

/// The GF(2) map from participating input bits (columns) to participating
/// output bits (rows, as `(receiver, level)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2System {
    pub inputs: Vec<InputBit>,
    pub outputs: Vec<(usize, u64)>,
    pub matrix: Gf2Matrix,
}

impl Gf2System {
    pub fn from_levels(levels: &ParticipatingLevels) -> Self {
        let inputs: Vec<InputBit> = levels.input_bits().copied().collect();
        let outputs: Vec<(usize, u64)> = levels.output_levels().map(|o| (o.receiver, o.level)).collect();
        let mut matrix = Gf2Matrix::zeros(outputs.len(), inputs.len());
        for (r, out) in levels.output_levels().enumerate() {
            for ib in &out.contributors {
                let c = inputs.binary_search(ib).expect("contributor is a participating input");
                matrix.set(r, c, true);
            }
        }
        Gf2System {
            inputs,
            outputs,
            matrix,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertibilityCertificate {
    pub partition: CyclicPartition,
    pub input_bits: usize,
    pub output_bits: usize,
    pub rank: usize,
    pub invertible: bool,
    /// On failure, input bits set to one in a nonzero assignment producing
    /// all-zero participating outputs.
    pub kernel: Option<Vec<InputBit>>,
}

impl InvertibilityCertificate {
    /// Re-checks the kernel witness against the system it came from.
    pub fn kernel_verified(&self, matrix: &StrengthMatrix) -> Result<bool> {
        let Some(kernel) = &self.kernel else {
            return Ok(false);
        };
        let system = Gf2System::from_levels(&participating_levels(matrix, &self.partition)?);
        let x: Vec<bool> = system.inputs.iter().map(|ib| kernel.contains(ib)).collect();
        Ok(!kernel.is_empty() && x.iter().any(|&b| b) && system.matrix.apply(&x).iter().all(|&b| !b))
    }
}

/// Decides whether participating outputs determine participating inputs
/// (column rank equals the number of input bits).
pub fn invertible_gf2(matrix: &StrengthMatrix, partition: &CyclicPartition) -> Result<InvertibilityCertificate> {
    matrix.require(Mode::Deterministic)?;
    let levels = participating_levels(matrix, partition)?;
    let bits = levels.input_count().max(levels.output_count());
    if bits > BIT_LIMIT {
        return Err(Error::BitLimit {
            bits,
            limit: BIT_LIMIT,
        });
    }
    let system = Gf2System::from_levels(&levels);
    let rank = system.matrix.rank();
    let invertible = rank == system.inputs.len();
    let kernel = if invertible {
        None
    } else {
        system.matrix.kernel_vector().map(|x| {
            system
                .inputs
                .iter()
                .zip(x)
                .filter(|(_, set)| *set)
                .map(|(ib, _)| *ib)
                .collect()
        })
    };
    Ok(InvertibilityCertificate {
        partition: partition.clone(),
        input_bits: system.inputs.len(),
        output_bits: system.outputs.len(),
        rank,
        invertible,
        kernel,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertibilityVerdict {
    pub invertible: bool,
    /// Best cyclic partition bound.
    pub bound: Rational,
    /// One certificate per optimal partition, in tie-break order.
    pub certificates: Vec<InvertibilityCertificate>,
}

impl InvertibilityVerdict {
    /// First invertible optimal partition.
    pub fn witness(&self) -> Option<&InvertibilityCertificate> {
        self.certificates.iter().find(|c| c.invertible)
    }
}

/// Invertible iff some optimal cyclic partition is invertible.
pub fn invertibility_verdict(matrix: &StrengthMatrix) -> Result<InvertibilityVerdict> {
    matrix.require(Mode::Deterministic)?;
    let opt = optimal_partitions(matrix)?;
    let certificates = opt
        .partitions
        .iter()
        .map(|p| invertible_gf2(matrix, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(InvertibilityVerdict {
        invertible: certificates.iter().any(|c| c.invertible),
        bound: opt.bound,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::parse_partition;
    use crate::fixtures;

    #[test]
    fn example_one_all_invertible_under_listed_partitions() {
        let net = fixtures::example1();
        for (ch, p) in net.channels().iter().zip(fixtures::EXAMPLE1_PARTITIONS) {
            let cert = invertible_gf2(ch, &parse_partition(3, p).unwrap()).unwrap();
            assert!(cert.invertible, "{p}");
            assert!(cert.kernel.is_none());
        }
    }

    #[test]
    fn example_two_third_subchannel_fails() {
        let ch = fixtures::example2().channel(2).clone();
        let v = invertibility_verdict(&ch).unwrap();
        assert!(!v.invertible);
        assert_eq!(v.certificates.len(), 2);
        for cert in &v.certificates {
            assert_eq!((cert.input_bits, cert.rank), (3, 2));
            assert!(cert.kernel_verified(&ch).unwrap());
        }
    }

    #[test]
    fn diagonal_is_vacuously_invertible() {
        let m = StrengthMatrix::levels(&[&[2, 0], &[0, 1]]).unwrap();
        let v = invertibility_verdict(&m).unwrap();
        assert!(v.invertible);
        assert_eq!(v.witness().unwrap().input_bits, 0);
    }
}
