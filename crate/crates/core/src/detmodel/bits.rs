use std::fmt;

use crate::model::{Mode, StrengthMatrix};
use crate::{Error, Result};

/// Bits of a binary fraction or integer, most significant first. For an
/// input, index 0 is `X_(1)`; for an output of length `L`, index `t` holds
/// the bit of value `2^(L−1−t)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BitVector {
    pub bits: Vec<bool>,
}

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Self {
        BitVector { bits }
    }

    pub fn zeros(len: usize) -> Self {
        BitVector { bits: vec![false; len] }
    }

    /// Parses `"101"`; a leading `0.` is accepted.
    pub fn parse(text: &str) -> Option<Self> {
        let digits = text.strip_prefix("0.").unwrap_or(text);
        digits
            .chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(BitVector::new)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Fraction bit `X_(b)`, 1-based; zero past the end.
    pub fn fraction_bit(&self, b: usize) -> bool {
        b >= 1 && self.bits.get(b - 1).copied().unwrap_or(false)
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let len = self.len().max(other.len());
        BitVector {
            bits: (0..len)
                .map(|t| self.bits.get(t).copied().unwrap_or(false) ^ other.bits.get(t).copied().unwrap_or(false))
                .collect(),
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Receiver outputs `Y_k = Σ_i 2^{n_ki} X_i` with carry-free (XOR)
/// addition, keeping only the integer part. `Y_k` has `max_i n_ki` bits.
pub fn channel_output(matrix: &StrengthMatrix, inputs: &[BitVector]) -> Result<Vec<BitVector>> {
    matrix.require(Mode::Deterministic)?;
    let k = matrix.users();
    if inputs.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: inputs.len(),
        });
    }
    let n = matrix.level_table()?;
    let mut out = Vec::with_capacity(k);
    for (rx, row) in n.iter().enumerate() {
        let len = row.iter().copied().max().unwrap_or(0) as usize;
        let mut y = vec![false; len];
        for (tx, &level) in row.iter().enumerate() {
            let level = level as usize;
            for b in 1..=level {
                // value position level − b sits at index len − 1 − (level − b)
                if inputs[tx].fraction_bit(b) {
                    let idx = len - 1 - (level - b);
                    y[idx] ^= true;
                }
            }
        }
        debug_assert_eq!(out.len(), rx);
        out.push(BitVector::new(y));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_user_identity_shift() {
        let m = StrengthMatrix::levels(&[&[3]]).unwrap();
        let y = channel_output(&m, &[BitVector::parse("0.101").unwrap()]).unwrap();
        assert_eq!(y[0].to_string(), "101");
    }

    #[test]
    fn collision_is_xor() {
        // both transmitters land their first bit at the top of receiver 1
        let m = StrengthMatrix::levels(&[&[1, 1], &[0, 0]]).unwrap();
        for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
            let y = channel_output(&m, &[BitVector::new(vec![a]), BitVector::new(vec![b])]).unwrap();
            assert_eq!(y[0].bits, vec![a ^ b]);
            assert!(y[1].is_empty());
        }
    }

    #[test]
    fn weaker_link_lands_lower() {
        let m = StrengthMatrix::levels(&[&[3, 1], &[0, 2]]).unwrap();
        let y = channel_output(&m, &[BitVector::parse("000").unwrap(), BitVector::parse("11").unwrap()])
            .unwrap();
        assert_eq!(y[0].to_string(), "001");
        assert_eq!(y[1].to_string(), "11");
    }

    #[test]
    fn gdof_rejected() {
        let m = StrengthMatrix::gdof(vec![vec![crate::rational::int(1)]]).unwrap();
        assert!(channel_output(&m, &[BitVector::zeros(1)]).is_err());
    }
}
