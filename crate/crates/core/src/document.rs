//! The JSON network document:
//!
//! ```json
//! {"mode": "deterministic", "users": 2, "subchannels": 1,
//!  "matrices": [[[3, 1], [1, 3]]]}
//! ```
//!
//! Row index is the receiver, column index the transmitter. Entries are JSON
//! integers, decimals, or `"p/q"` strings. Negative entries are clamped to
//! zero and reported as warnings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::model::{Mode, ParallelNetwork, StrengthMatrix};
use crate::rational::{self, Rational};
use crate::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    mode: Mode,
    users: usize,
    subchannels: usize,
    matrices: Vec<Vec<Vec<Value>>>,
}

#[derive(Debug, Serialize)]
struct OutDocument<'a> {
    mode: Mode,
    users: usize,
    subchannels: usize,
    matrices: &'a [Vec<Vec<Value>>],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClampWarning {
    pub subchannel: usize,
    pub receiver: usize,
    pub transmitter: usize,
    pub value: Rational,
}

impl std::fmt::Display for ClampWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "sub-channel {}, entry ({},{}): negative strength {} clamped to 0",
            self.subchannel,
            self.receiver,
            self.transmitter,
            rational::render(&self.value)
        )
    }
}

#[derive(Clone, Debug)]
pub struct LoadedNetwork {
    pub network: ParallelNetwork,
    pub warnings: Vec<ClampWarning>,
}

fn entry(value: &Value) -> Result<Rational> {
    match value {
        Value::Number(n) => rational::parse(&n.to_string()),
        Value::String(s) => rational::parse(s),
        other => Err(Error::Schema(format!("matrix entry must be a number or \"p/q\" string, got {other}"))),
    }
}

pub fn load_network(text: &str) -> Result<LoadedNetwork> {
    let raw: RawDocument =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    if raw.users == 0 {
        return Err(Error::NoUsers);
    }
    if raw.matrices.is_empty() || raw.subchannels == 0 {
        return Err(Error::NoSubchannels);
    }
    if raw.matrices.len() != raw.subchannels {
        return Err(Error::SubchannelCount {
            declared: raw.subchannels,
            found: raw.matrices.len(),
        });
    }
    let k = raw.users;
    let mut warnings = Vec::new();
    let mut channels = Vec::with_capacity(raw.matrices.len());
    for (m, rows) in raw.matrices.iter().enumerate() {
        if rows.len() != k {
            return Err(Error::RowCount {
                subchannel: m + 1,
                expected: k,
                found: rows.len(),
            });
        }
        let mut parsed = Vec::with_capacity(k);
        for (rx, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::NotSquare {
                    subchannel: m + 1,
                    users: k,
                    row: rx + 1,
                    len: row.len(),
                });
            }
            let mut out = Vec::with_capacity(k);
            for (tx, v) in row.iter().enumerate() {
                let value = entry(v)?;
                if rational::is_negative(&value) {
                    warnings.push(ClampWarning {
                        subchannel: m + 1,
                        receiver: rx + 1,
                        transmitter: tx + 1,
                        value: value.clone(),
                    });
                } else if raw.mode == Mode::Deterministic && !rational::is_integer(&value) {
                    return Err(Error::NonIntegerLevel {
                        subchannel: m + 1,
                        receiver: rx + 1,
                        transmitter: tx + 1,
                        value: rational::render(&value),
                    });
                }
                out.push(value);
            }
            parsed.push(out);
        }
        channels.push(StrengthMatrix::new(raw.mode, parsed)?);
    }
    Ok(LoadedNetwork {
        network: ParallelNetwork::new(channels)?,
        warnings,
    })
}

fn encode(value: &Rational) -> Value {
    if rational::is_integer(value) {
        // integers that fit i64 stay JSON numbers
        if let Ok(n) = value.to_integer().to_string().parse::<i64>() {
            return Value::from(n);
        }
    }
    Value::String(rational::render(value))
}

/// Serializes a network; integers stay numbers, other rationals become
/// `"p/q"` strings.
pub fn save_network(network: &ParallelNetwork) -> String {
    let matrices: Vec<Vec<Vec<Value>>> = network
        .channels()
        .iter()
        .map(|ch| ch.rows().map(|r| r.iter().map(encode).collect()).collect())
        .collect();
    let doc = OutDocument {
        mode: network.mode(),
        users: network.users(),
        subchannels: network.subchannels(),
        matrices: &matrices,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("network document serializes");
    s.push('\n');
    s
}
