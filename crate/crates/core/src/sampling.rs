//! Seeded random network generators for property tests, acceptance runs and
//! benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Mode, StrengthMatrix};
use crate::rational::{frac, int, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random exponents `p/den` in `[0, 1]` off the diagonal; each diagonal is
/// the TIN requirement plus a positive margin, so the result is strictly
/// TIN-optimal.
pub fn strict_tin_gdof(rng: &mut impl Rng, users: usize, den: i64) -> StrengthMatrix {
    let mut rows: Vec<Vec<Rational>> = (0..users)
        .map(|rx| {
            (0..users)
                .map(|tx| if rx == tx { int(0) } else { frac(rng.gen_range(0..=den), den) })
                .collect()
        })
        .collect();
    inflate_diagonal(&mut rows, |rng: &mut dyn rand::RngCore| frac(rng.gen_range(1..=den), den), rng);
    StrengthMatrix::gdof(rows).expect("square nonnegative matrix")
}

/// Random integer levels in `0..=max_cross` off the diagonal, diagonals at
/// the TIN requirement plus a margin in `min_margin..=min_margin + 2`.
pub fn tin_levels(rng: &mut impl Rng, users: usize, max_cross: i64, min_margin: i64) -> StrengthMatrix {
    let mut rows: Vec<Vec<Rational>> = (0..users)
        .map(|rx| {
            (0..users)
                .map(|tx| if rx == tx { int(0) } else { int(rng.gen_range(0..=max_cross)) })
                .collect()
        })
        .collect();
    inflate_diagonal(
        &mut rows,
        |rng: &mut dyn rand::RngCore| int(rng.gen_range(min_margin..=min_margin + 2)),
        rng,
    );
    levels_from(rows)
}

/// Arbitrary integer levels in `0..=max`, diagonal included; no TIN
/// guarantee.
pub fn any_levels(rng: &mut impl Rng, users: usize, max: i64) -> StrengthMatrix {
    let rows = (0..users)
        .map(|_| (0..users).map(|_| int(rng.gen_range(0..=max))).collect())
        .collect();
    levels_from(rows)
}

/// One directed cycle through a random subset of at least two users;
/// every other cross link is absent. TIN-optimal.
pub fn cyclic_levels(rng: &mut impl Rng, users: usize, max_cross: i64) -> StrengthMatrix {
    let mut order: Vec<usize> = (0..users).collect();
    order.shuffle(rng);
    let len = if users < 2 { users } else { rng.gen_range(2..=users) };
    let cycle = &order[..len];
    let mut rows = vec![vec![int(0); users]; users];
    for t in 0..len {
        if len > 1 {
            let (pred, user) = (cycle[t], cycle[(t + 1) % len]);
            rows[pred][user] = int(rng.gen_range(1..=max_cross));
        }
    }
    inflate_diagonal(&mut rows, |rng: &mut dyn rand::RngCore| int(rng.gen_range(0..=2)), rng);
    levels_from(rows)
}

/// TIN-optimal levels built around a random permutation whose edges are the
/// strict column maxima, which makes a dominant optimal partition likely
/// (callers still check).
pub fn dominant_levels(rng: &mut impl Rng, users: usize, max_cross: i64) -> StrengthMatrix {
    let mut perm: Vec<usize> = (0..users).collect();
    perm.shuffle(rng);
    let mut rows = vec![vec![int(0); users]; users];
    for tx in 0..users {
        let strong = rng.gen_range(1..=max_cross);
        for (rx, row) in rows.iter_mut().enumerate() {
            if rx == tx {
                continue;
            }
            row[tx] = if rx == perm[tx] {
                int(strong)
            } else {
                int(rng.gen_range(0..strong))
            };
        }
    }
    inflate_diagonal(&mut rows, |rng: &mut dyn rand::RngCore| int(rng.gen_range(0..=2)), rng);
    levels_from(rows)
}

fn inflate_diagonal<R: Rng>(
    rows: &mut [Vec<Rational>],
    mut margin: impl FnMut(&mut dyn rand::RngCore) -> Rational,
    rng: &mut R,
) {
    let k = rows.len();
    let column_max = |rows: &[Vec<Rational>], u: usize| {
        (0..k).filter(|&j| j != u).map(|j| rows[j][u].clone()).max().unwrap_or_else(|| int(0))
    };
    for u in 0..k {
        let outgoing = column_max(rows, u);
        let row = &mut rows[u];
        let incoming = (0..k).filter(|&j| j != u).map(|j| row[j].clone()).max().unwrap_or_else(|| int(0));
        row[u] = incoming + outgoing + margin(rng);
    }
}

fn levels_from(rows: Vec<Vec<Rational>>) -> StrengthMatrix {
    StrengthMatrix::new(Mode::Deterministic, rows).expect("integral square matrix")
}
