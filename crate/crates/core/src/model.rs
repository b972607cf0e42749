//! Network definitions, the TIN-optimality condition, and quantization from
//! strength exponents to deterministic bit levels.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Strength exponents α relative to a nominal power P.
    Gdof,
    /// Integer ADT signal levels n.
    Deterministic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Gdof => "gdof",
            Mode::Deterministic => "deterministic",
        })
    }
}

/// K×K link strengths of one sub-channel. Entry `(rx, tx)` is the strength
/// from transmitter `tx` to receiver `rx`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrengthMatrix {
    users: usize,
    mode: Mode,
    entries: Vec<Rational>,
}

impl StrengthMatrix {
    /// Builds a matrix from receiver-indexed rows. Negative entries are
    /// clamped to zero.
    pub fn new(mode: Mode, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let users = rows.len();
        if users == 0 {
            return Err(Error::NoUsers);
        }
        let mut entries = Vec::with_capacity(users * users);
        for (rx, row) in rows.into_iter().enumerate() {
            if row.len() != users {
                return Err(Error::NotSquare {
                    subchannel: 1,
                    users,
                    row: rx + 1,
                    len: row.len(),
                });
            }
            for (tx, value) in row.into_iter().enumerate() {
                let value = if value.is_negative() { Rational::zero() } else { value };
                if mode == Mode::Deterministic && !rational::is_integer(&value) {
                    return Err(Error::NonIntegerLevel {
                        subchannel: 1,
                        receiver: rx + 1,
                        transmitter: tx + 1,
                        value: rational::render(&value),
                    });
                }
                entries.push(value);
            }
        }
        Ok(StrengthMatrix {
            users,
            mode,
            entries,
        })
    }

    /// Deterministic matrix from integer levels.
    pub fn levels(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            Mode::Deterministic,
            rows.iter()
                .map(|r| r.iter().map(|&v| rational::int(v)).collect())
                .collect(),
        )
    }

    pub fn gdof(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(Mode::Gdof, rows)
    }

    pub fn users(&self) -> usize {
        self.users
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn get(&self, rx: usize, tx: usize) -> &Rational {
        &self.entries[rx * self.users + tx]
    }

    pub fn row(&self, rx: usize) -> &[Rational] {
        &self.entries[rx * self.users..(rx + 1) * self.users]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.users)
    }

    /// Strength of the desired link of `user`.
    pub fn desired(&self, user: usize) -> &Rational {
        self.get(user, user)
    }

    pub fn diagonal_sum(&self) -> Rational {
        (0..self.users).map(|k| self.desired(k)).sum()
    }

    /// Strongest interference caused by `tx` at any other receiver.
    pub fn max_outgoing(&self, tx: usize) -> Rational {
        rational::max_of((0..self.users).filter(|&j| j != tx).map(|j| self.get(j, tx)))
    }

    /// Strongest interference suffered at receiver `rx`.
    pub fn max_incoming(&self, rx: usize) -> Rational {
        rational::max_of((0..self.users).filter(|&k| k != rx).map(|k| self.get(rx, k)))
    }

    /// Integer level of a deterministic entry.
    pub fn level(&self, rx: usize, tx: usize) -> Result<u64> {
        let v = self.get(rx, tx);
        v.to_integer()
            .to_u64()
            .ok_or_else(|| Error::LevelOverflow(rational::render(v)))
    }

    /// All levels as a dense `u64` table; deterministic mode only.
    pub fn level_table(&self) -> Result<Vec<Vec<u64>>> {
        self.require(Mode::Deterministic)?;
        (0..self.users)
            .map(|rx| (0..self.users).map(|tx| self.level(rx, tx)).collect())
            .collect()
    }

    pub fn require(&self, mode: Mode) -> Result<()> {
        if self.mode == mode {
            Ok(())
        } else {
            Err(Error::ModeMismatch { expected: mode })
        }
    }

    /// Relabels users: new user `perm[k]` is old user `k`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let k = self.users;
        let mut entries = vec![Rational::zero(); k * k];
        for rx in 0..k {
            for tx in 0..k {
                entries[perm[rx] * k + perm[tx]] = self.get(rx, tx).clone();
            }
        }
        StrengthMatrix {
            users: k,
            mode: self.mode,
            entries,
        }
    }

    /// The sub-network on `users` (in the given order).
    pub fn submatrix(&self, users: &[usize]) -> Self {
        let entries = users
            .iter()
            .flat_map(|&rx| users.iter().map(move |&tx| self.get(rx, tx).clone()))
            .collect();
        StrengthMatrix {
            users: users.len(),
            mode: self.mode,
            entries,
        }
    }

    /// Multiplies every strength by a nonnegative rational. The result is in
    /// gdof mode unless the scaled entries stay integral.
    pub fn scaled(&self, factor: &Rational) -> Self {
        let entries: Vec<Rational> = self.entries.iter().map(|e| e * factor).collect();
        let mode = if self.mode == Mode::Deterministic && entries.iter().all(rational::is_integer)
        {
            Mode::Deterministic
        } else {
            Mode::Gdof
        };
        StrengthMatrix {
            users: self.users,
            mode,
            entries,
        }
    }

    /// Same strengths with every desired link raised by `amount`.
    pub fn with_boosted_diagonal(&self, amount: &Rational) -> Self {
        let mut out = self.clone();
        for k in 0..self.users {
            out.entries[k * self.users + k] += amount;
        }
        if !rational::is_integer(amount) {
            out.mode = Mode::Gdof;
        }
        out
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }
}

/// M parallel sub-channels over the same K users.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelNetwork {
    users: usize,
    mode: Mode,
    channels: Vec<StrengthMatrix>,
}

impl ParallelNetwork {
    pub fn new(channels: Vec<StrengthMatrix>) -> Result<Self> {
        let first = channels.first().ok_or(Error::NoSubchannels)?;
        let (users, mode) = (first.users(), first.mode());
        for (m, ch) in channels.iter().enumerate() {
            if ch.users() != users {
                return Err(Error::UserCount {
                    subchannel: m + 1,
                    expected: users,
                    found: ch.users(),
                });
            }
            if ch.mode() != mode {
                return Err(Error::MixedModes {
                    subchannel: m + 1,
                    expected: mode,
                    found: ch.mode(),
                });
            }
        }
        Ok(ParallelNetwork {
            users,
            mode,
            channels,
        })
    }

    pub fn single(channel: StrengthMatrix) -> Self {
        ParallelNetwork {
            users: channel.users(),
            mode: channel.mode(),
            channels: vec![channel],
        }
    }

    pub fn users(&self) -> usize {
        self.users
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn subchannels(&self) -> usize {
        self.channels.len()
    }

    pub fn channels(&self) -> &[StrengthMatrix] {
        &self.channels
    }

    pub fn channel(&self, m: usize) -> &StrengthMatrix {
        &self.channels[m]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TinViolation {
    pub user: usize,
    #[serde(with = "rational::serde_string")]
    pub incoming: Rational,
    #[serde(with = "rational::serde_string")]
    pub outgoing: Rational,
    #[serde(with = "rational::serde_string")]
    pub desired: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TinVerdict {
    pub holds: bool,
    pub strict: bool,
    pub violations: Vec<TinViolation>,
}

/// Per user, the desired strength must be at least the strongest
/// interference caused plus the strongest interference suffered.
pub fn check_tin(matrix: &StrengthMatrix) -> TinVerdict {
    let mut violations = Vec::new();
    let mut strict = true;
    for user in 0..matrix.users() {
        let incoming = matrix.max_incoming(user);
        let outgoing = matrix.max_outgoing(user);
        let desired = matrix.desired(user).clone();
        let needed = &incoming + &outgoing;
        if desired <= needed {
            strict = false;
        }
        if desired < needed {
            violations.push(TinViolation {
                user,
                incoming,
                outgoing,
                desired,
            });
        }
    }
    TinVerdict {
        holds: violations.is_empty(),
        strict: strict && violations.is_empty(),
        violations,
    }
}

/// Quantizes exponents to levels, `n = ⌊α · log2(P) / 2⌋`. The caller
/// supplies `log2(P)` as an exact rational.
pub fn quantize(matrix: &StrengthMatrix, log2_p: &Rational) -> Result<StrengthMatrix> {
    matrix.require(Mode::Gdof)?;
    if !log2_p.is_positive() {
        return Err(Error::NonPositiveLog(rational::render(log2_p)));
    }
    let half = log2_p / Rational::from_integer(BigInt::from(2));
    let rows = matrix
        .rows()
        .map(|row| {
            row.iter()
                .map(|a| Rational::from_integer(rational::floor(&(a * &half))))
                .collect()
        })
        .collect();
    StrengthMatrix::new(Mode::Deterministic, rows)
}
