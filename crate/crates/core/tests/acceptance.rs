//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use tin_core::cycles::{
    enumerate_cycles, enumerate_partitions, optimal_partitions, parse_partition, partition_bound, CyclicPartition,
};
use tin_core::detmodel::{
    best_tin_scheme, bipartite_acyclic, channel_output, check_3user_condition, dominant_partition_check,
    invertibility_verdict, invertible_gf2, participating_levels, separability_verdict, tin_feasible, BitVector,
    Conclusion, SeparabilityOptions,
};
use tin_core::fixtures;
use tin_core::model::{Mode, StrengthMatrix};
use tin_core::optimize::{
    best_partition_assignment, cycle_bound_lp, nonnegativity_redundancy_check, sum_gdof, LpSolution, VarSign,
};
use tin_core::rational::{frac, int, Rational};
use tin_core::region::{
    combined_sum_bounds, decomposition_lp, separate_tin_decomposable, verify_decomposition, Decomposition, GdofTuple,
};
use tin_core::{check_tin, sampling};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn show(m: &StrengthMatrix) -> String {
    let rows: Vec<String> = m
        .rows()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

/// Strictly TIN-optimal corpus shared by criteria 1 and 2.
fn tin_corpus() -> Vec<StrengthMatrix> {
    let mut rng = sampling::rng(0x7133);
    (0..1008)
        .map(|i| {
            let k = 2 + i % 6;
            let den = rng.gen_range(1..=6);
            sampling::strict_tin_gdof(&mut rng, k, den)
        })
        .collect()
}

fn brute_force_bound(m: &StrengthMatrix) -> Rational {
    enumerate_partitions(m.users())
        .unwrap()
        .iter()
        .map(|p| partition_bound(p, m).unwrap().bound)
        .min()
        .unwrap()
}

fn criterion_1(corpus: &[StrengthMatrix]) -> Outcome {
    let start = Instant::now();
    for m in corpus {
        let lp = match cycle_bound_lp(m, true).unwrap().solve() {
            LpSolution::Optimal { value, .. } => value,
            other => return Err(format!("LP not optimal on {}: {:?}", show(m), other.status())),
        };
        let assignment = best_partition_assignment(m).1.bound;
        let brute = brute_force_bound(m);
        ensure(lp == assignment && assignment == brute, || {
            format!("mismatch on {}: lp {lp}, assignment {assignment}, brute force {brute}", show(m))
        })?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{} instances, K=2..7, three-way exact agreement in {secs:.1} s", corpus.len()))
}

fn criterion_2(corpus: &[StrengthMatrix]) -> Outcome {
    let with = fixtures::lp_caution(VarSign::NonNegative).solve();
    let without = fixtures::lp_caution(VarSign::Free).solve();
    ensure(with.value() == Some(&int(20)), || format!("nonnegative optimum {:?}", with.value()))?;
    ensure(without.value() == Some(&int(25)), || format!("free optimum {:?}", without.value()))?;
    ensure(with.point() == Some(&[int(0), int(10), int(10)][..]), || format!("{:?}", with.point()))?;
    for m in corpus {
        let r = nonnegativity_redundancy_check(m).unwrap();
        ensure(r.equal, || format!("nonnegativity not redundant on {}", show(m)))?;
    }
    Ok(format!("caution LP 20 vs 25; redundancy holds on all {} instances", corpus.len()))
}

fn criterion_3() -> Outcome {
    let net = fixtures::example1();
    for (i, (ch, p)) in net.channels().iter().zip(fixtures::EXAMPLE1_PARTITIONS).enumerate() {
        ensure(check_tin(ch).holds, || format!("sub-channel {} fails TIN", i + 1))?;
        let s = sum_gdof(ch).map_err(|e| e.to_string())?;
        ensure(s.value == int(6), || format!("sub-channel {} sum {}", i + 1, s.value))?;
        let partition = parse_partition(3, p).unwrap();
        ensure(partition_bound(&partition, ch).unwrap().bound == int(6), || {
            format!("listed partition {p} is not optimal")
        })?;
        let cert = invertible_gf2(ch, &partition).unwrap();
        ensure(cert.invertible, || format!("sub-channel {} not invertible under {p}", i + 1))?;
    }
    let v = separability_verdict(&net, &SeparabilityOptions::default()).unwrap();
    ensure(v.conclusion == Conclusion::Separable { total: int(18) }, || format!("{:?}", v.conclusion))?;
    Ok("TIN holds, 6 per sub-channel, invertible under listed partitions, separable total 18".into())
}

fn criterion_4() -> Outcome {
    let net = fixtures::example2();
    for m in 0..2 {
        ensure(invertibility_verdict(net.channel(m)).unwrap().invertible, || {
            format!("sub-channel {} not invertible", m + 1)
        })?;
    }
    let third = net.channel(2);
    let v = invertibility_verdict(third).unwrap();
    ensure(!v.invertible, || "sub-channel 3 invertible".into())?;
    for cert in &v.certificates {
        ensure(cert.kernel_verified(third).unwrap(), || {
            format!("kernel witness under {} fails verification", cert.partition)
        })?;
    }
    let witness: Vec<String> = v.certificates[0]
        .kernel
        .as_ref()
        .unwrap()
        .iter()
        .map(ToString::to_string)
        .collect();
    Ok(format!(
        "sub-channels 1-2 invertible; sub-channel 3 rank {}/{} under {} optimal partitions, kernel {{{}}}",
        v.certificates[0].rank,
        v.certificates[0].input_bits,
        v.certificates.len(),
        witness.join(", ")
    ))
}

fn criterion_5() -> Outcome {
    let eps = frac(1, 10);
    let net = fixtures::gap(&eps).unwrap();
    let bounds = combined_sum_bounds(&net).unwrap();
    for b in &bounds.bounds {
        let expect = match b.users.len() {
            1 => int(2),
            2 => frac(5, 2) + &eps,
            _ => int(3),
        };
        ensure(b.total == expect, || format!("bound {b}, expected {expect}"))?;
    }
    let target = GdofTuple::new(vec![int(2), frac(1, 2), frac(1, 2)]).unwrap();
    ensure(bounds.contains(&target).unwrap(), || "(2,1/2,1/2) outside combined bounds".into())?;
    match separate_tin_decomposable(&net, &target).unwrap() {
        Decomposition::Infeasible { farkas, .. } => {
            let (lp, _) = decomposition_lp(&net, &target).unwrap();
            ensure(lp.check_farkas(&farkas), || "Farkas certificate invalid".into())?;
        }
        Decomposition::Feasible { parts } => return Err(format!("(2,1/2,1/2) decomposed as {parts:?}")),
    }
    let ones = GdofTuple::new(vec![int(1); 3]).unwrap();
    match separate_tin_decomposable(&net, &ones).unwrap() {
        Decomposition::Feasible { parts } => {
            ensure(verify_decomposition(&net, &ones, &parts).unwrap(), || "invalid decomposition".into())?;
            ensure(parts.iter().flatten().all(|x| *x == frac(1, 2)), || {
                format!("expected halves, got {parts:?}")
            })?;
        }
        other => return Err(format!("(1,1,1) not decomposable: {other:?}")),
    }
    Ok("ε=1/10: (2,1/2,1/2) inside combined bounds, infeasible (verified Farkas); (1,1,1) = halves".into())
}

fn without_diagonal(m: &StrengthMatrix) -> StrengthMatrix {
    let k = m.users();
    let rows = (0..k)
        .map(|rx| (0..k).map(|tx| if rx == tx { Rational::zero() } else { m.get(rx, tx).clone() }).collect())
        .collect();
    StrengthMatrix::new(Mode::Deterministic, rows).unwrap()
}

/// Injectivity by enumerating every participating-bit assignment through the
/// channel law with desired links removed.
fn exhaustive_injective(m: &StrengthMatrix, p: &CyclicPartition) -> bool {
    let levels = participating_levels(m, p).unwrap();
    let bits: Vec<_> = levels.input_bits().copied().collect();
    let cross = without_diagonal(m);
    let width = (0..m.users())
        .map(|rx| (0..m.users()).map(|tx| m.level(rx, tx).unwrap() as usize).max().unwrap())
        .max()
        .unwrap();
    let mut seen = HashSet::new();
    for mask in 0u32..1 << bits.len() {
        let mut inputs = vec![BitVector::zeros(width); m.users()];
        for (t, ib) in bits.iter().enumerate() {
            if mask >> t & 1 == 1 {
                inputs[ib.user].bits[ib.bit - 1] = true;
            }
        }
        if !seen.insert(channel_output(&cross, &inputs).unwrap()) {
            return false;
        }
    }
    true
}

fn random_partition(rng: &mut impl Rng, k: usize) -> CyclicPartition {
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(rng);
    CyclicPartition::from_permutation(&perm).unwrap()
}

fn criterion_6() -> Outcome {
    let mut rng = sampling::rng(0x6006);
    let (mut checked, mut invertible) = (0, 0);
    while checked < 600 {
        let k = rng.gen_range(2..=4);
        let m = sampling::any_levels(&mut rng, k, 3);
        let p = random_partition(&mut rng, k);
        let bits = participating_levels(&m, &p).unwrap().input_count();
        if bits == 0 || bits > 12 {
            continue;
        }
        let gf2 = invertible_gf2(&m, &p).unwrap().invertible;
        ensure(gf2 == exhaustive_injective(&m, &p), || format!("disagreement on {} under {p}", show(&m)))?;
        checked += 1;
        invertible += gf2 as usize;
    }
    Ok(format!("{checked} instances agree ({invertible} invertible, {} not)", checked - invertible))
}

fn criterion_7() -> Outcome {
    let mut rng = sampling::rng(0x7007);

    let (mut acyclic, mut drawn) = (0, 0);
    while acyclic < 500 {
        drawn += 1;
        let k = rng.gen_range(2..=5);
        let m = if drawn % 2 == 0 {
            sampling::cyclic_levels(&mut rng, k, 4)
        } else {
            sampling::tin_levels(&mut rng, k, 3, 0)
        };
        let mut partitions = vec![optimal_partitions(&m).unwrap().best().clone()];
        partitions.push(random_partition(&mut rng, k));
        for p in partitions {
            if bipartite_acyclic(&m, &p).unwrap() {
                ensure(invertible_gf2(&m, &p).unwrap().invertible, || {
                    format!("acyclic but not invertible: {} under {p}", show(&m))
                })?;
                acyclic += 1;
            }
        }
    }

    let mut dominant = 0;
    while dominant < 500 {
        let k = rng.gen_range(2..=5);
        let m = sampling::dominant_levels(&mut rng, k, 4);
        for p in optimal_partitions(&m).unwrap().partitions {
            if !p.is_all_trivial() && dominant_partition_check(&m, &p) {
                ensure(invertible_gf2(&m, &p).unwrap().invertible, || {
                    format!("dominant but not invertible: {} under {p}", show(&m))
                })?;
                dominant += 1;
            }
        }
    }

    let mut three = 0;
    while three < 500 {
        let m = sampling::tin_levels(&mut rng, 3, 4, 0);
        if !check_3user_condition(&m).unwrap() {
            continue;
        }
        for p in enumerate_partitions(3).unwrap() {
            ensure(invertible_gf2(&m, &p).unwrap().invertible, || {
                format!("unequal shift sums but not invertible: {} under {p}", show(&m))
            })?;
        }
        three += 1;
    }

    let fig = fixtures::cyclic_four_user();
    let opt = optimal_partitions(&fig).unwrap();
    let p = parse_partition(4, "2:1,3:2,4:3,1:4").unwrap();
    ensure(opt.partitions.contains(&p), || format!("{p} not optimal for the cyclic fixture"))?;
    ensure(!bipartite_acyclic(&fig, &p).unwrap(), || "fixture graph is acyclic".into())?;
    ensure(invertible_gf2(&fig, &p).unwrap().invertible, || "fixture not invertible".into())?;
    Ok(format!(
        "0 counterexamples: {acyclic} acyclic, {dominant} dominant, {three} three-user (x6 partitions); cyclic-graph fixture invertible"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = sampling::rng(0x8008);
    for _ in 0..200 {
        let k = rng.gen_range(2..=4);
        let m = sampling::tin_levels(&mut rng, k, 3, 0);
        let opt = optimal_partitions(&m).unwrap();
        let formula = m.diagonal_sum() - &opt.weight;
        let s = best_tin_scheme(&m).map_err(|e| e.to_string())?;
        ensure(tin_feasible(&m, &s).unwrap(), || format!("infeasible scheme {s:?}"))?;
        ensure(int(s.total_rate() as i64) == formula, || {
            format!("{}: scheme {} vs formula {formula}", show(&m), s.total_rate())
        })?;
    }
    let two = best_tin_scheme(&fixtures::two_user()).unwrap();
    ensure(two.total_rate() == 4, || format!("two-user total {}", two.total_rate()))?;
    Ok("200 instances exact; two-user total 4".into())
}

fn criterion_9() -> Outcome {
    let mut factorial = 1u128;
    for k in 1..=7usize {
        factorial *= k as u128;
        let mut expected = 0u128;
        for l in 1..=k {
            let choose = (0..l).fold(1u128, |acc, i| acc * (k - i) as u128 / (i as u128 + 1));
            let rotations = (1..l as u128).product::<u128>();
            expected += choose * rotations;
        }
        let cycles = enumerate_cycles(k).unwrap().len() as u128;
        ensure(cycles == expected, || format!("K={k}: {cycles} cycles, expected {expected}"))?;
        let partitions = enumerate_partitions(k).unwrap().len() as u128;
        ensure(partitions == factorial, || format!("K={k}: {partitions} partitions"))?;
    }
    ensure(enumerate_cycles(3).unwrap().len() == 8, || "K=3".into())?;
    Ok("K=1..7 match; K=3 has 8 cycles".into())
}

fn main() -> ExitCode {
    let corpus = tin_corpus();
    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, Check)> = vec![
        ("sum-GDoF three-way equivalence", Box::new(|| criterion_1(&corpus))),
        ("nonnegativity and the cautionary LP", Box::new(|| criterion_2(&corpus))),
        ("example1 fixture replay", Box::new(criterion_3)),
        ("example2 fixture replay", Box::new(criterion_4)),
        ("region gap counterexample", Box::new(criterion_5)),
        ("GF(2) rank vs exhaustive injectivity", Box::new(criterion_6)),
        ("sufficient-condition implications", Box::new(criterion_7)),
        ("power-control achievability", Box::new(criterion_8)),
        ("combinatorial counts", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
