use thiserror::Error;

use crate::model::Mode;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed network document: {0}")]
    Schema(String),

    #[error("invalid rational {0:?} (expected an integer, a decimal or \"p/q\")")]
    InvalidRational(String),

    #[error("K ≥ 1 required")]
    NoUsers,

    #[error("M ≥ 1 required")]
    NoSubchannels,

    #[error("sub-channel {subchannel}: matrix must be {users}×{users}, row {row} has {len} entries")]
    NotSquare {
        subchannel: usize,
        users: usize,
        row: usize,
        len: usize,
    },

    #[error("sub-channel {subchannel}: expected {expected} rows, found {found}")]
    RowCount {
        subchannel: usize,
        expected: usize,
        found: usize,
    },

    #[error("document declares {declared} sub-channels but holds {found} matrices")]
    SubchannelCount { declared: usize, found: usize },

    #[error("sub-channel {subchannel} has {found} users, expected {expected}")]
    UserCount {
        subchannel: usize,
        expected: usize,
        found: usize,
    },

    #[error("mixed modes: sub-channel {subchannel} is {found}, network is {expected}")]
    MixedModes {
        subchannel: usize,
        expected: Mode,
        found: Mode,
    },

    #[error("deterministic entry ({receiver},{transmitter}) of sub-channel {subchannel} is not an integer: {value}")]
    NonIntegerLevel {
        subchannel: usize,
        receiver: usize,
        transmitter: usize,
        value: String,
    },

    #[error("operation requires {expected} mode")]
    ModeMismatch { expected: Mode },

    #[error("log2(P) must be positive (P > 1), got {0}")]
    NonPositiveLog(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("invalid cyclic partition: {0}")]
    InvalidPartition(String),

    #[error("invalid GDoF tuple: {0}")]
    InvalidTuple(String),

    #[error("malformed linear program: {0}")]
    InvalidProgram(String),

    #[error("operation requires K = 3, network has K = {0}")]
    RequiresThreeUsers(usize),

    #[error("exhaustive enumeration limit: K = {users} exceeds {limit}")]
    EnumerationLimit { users: usize, limit: usize },

    #[error("participating bit limit: {bits} bits exceed {limit}")]
    BitLimit { bits: usize, limit: usize },

    #[error("power-control search space of {size} offsets exceeds {limit}")]
    SearchLimit { size: u128, limit: u128 },

    #[error("level {0} does not fit a machine integer")]
    LevelOverflow(String),

    #[error("sum-GDoF methods disagree: {0}")]
    MethodDisagreement(String),
}

impl Error {
    /// Errors caused by a search or enumeration guard rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::EnumerationLimit { .. } | Error::BitLimit { .. } | Error::SearchLimit { .. }
        )
    }
}
