//! ADT deterministic bit-level machinery.
//!
//! A transmit signal is a binary fraction `X = 0.X_(1)X_(2)…`; a link of
//! level `n` delivers `⌊2^n X⌋`, and a receiver sees the bitwise XOR of all
//! its incoming links. Under a cyclic partition each transmitter's
//! participating bits are the top `n_{Π(i)i}` bits, and a sub-channel is
//! invertible when the participating interference they cause determines
//! them uniquely.

mod bits;
mod conditions;
mod gf2;
mod invert;
mod levels;
mod scheme;
mod separability;

pub use bits::{channel_output, BitVector};
pub use conditions::{bipartite_acyclic, check_3user_condition, dominant_partition_check, shift_sums};
pub use gf2::Gf2Matrix;
pub use invert::{
    invertibility_verdict, invertible_gf2, Gf2System, InvertibilityCertificate, InvertibilityVerdict,
    BIT_LIMIT,
};
pub use levels::{participating_levels, InputBit, OutputLevel, ParticipatingLevels};
pub use scheme::{best_tin_scheme, best_tin_scheme_with, tin_feasible, PowerControlScheme, SEARCH_LIMIT};
pub use separability::{
    separability_verdict, Conclusion, InvertibilityMethod, InvertibilityStatus, SeparabilityOptions,
    SeparabilityVerdict, SubchannelAnalysis,
};
