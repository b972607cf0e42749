use proptest::prelude::*;

use tin_core::cycles::{enumerate_cycles, optimal_partitions, CyclicPartition};
use tin_core::detmodel::{best_tin_scheme, channel_output, tin_feasible, BitVector};
use tin_core::document::{load_network, save_network};
use tin_core::optimize::{best_partition_assignment, cycle_bound_lp, solve_lp, sum_gdof, LinearProgram, LpSolution, Relation, VarSign};
use tin_core::rational::{frac, int, Rational};
use tin_core::region::{
    combined_sum_bounds, contains, region_constraints, separate_tin_decomposable, verify_decomposition, Decomposition,
    GdofTuple,
};
use tin_core::report::{partition_from_array, predecessor_array};
use tin_core::{check_tin, quantize, sampling, ParallelNetwork, StrengthMatrix};

fn gdof(rows: Vec<Vec<i64>>, den: i64) -> StrengthMatrix {
    StrengthMatrix::gdof(rows.into_iter().map(|r| r.into_iter().map(|a| frac(a, den)).collect()).collect()).unwrap()
}

fn levels(rows: &[Vec<i64>]) -> StrengthMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    StrengthMatrix::levels(&refs).unwrap()
}

fn square(users: std::ops::RangeInclusive<usize>, max: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    users.prop_flat_map(move |k| prop::collection::vec(prop::collection::vec(0..=max, k), k))
}

fn permutation(k: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..k).collect::<Vec<usize>>()).prop_shuffle()
}

fn with_permutation(users: std::ops::RangeInclusive<usize>, max: i64) -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<usize>)> {
    square(users, max).prop_flat_map(|rows| {
        let k = rows.len();
        (Just(rows), permutation(k))
    })
}

fn strict(seed: u64, k: usize) -> StrengthMatrix {
    sampling::strict_tin_gdof(&mut sampling::rng(seed), k, 4)
}

/// `⌊2^n · x⌋` for an input whose fraction bits are `bits`, as an integer.
fn shifted(bits: &BitVector, n: usize) -> u64 {
    (1..=n).fold(0, |acc, b| acc << 1 | bits.fraction_bit(b) as u64)
}

fn as_integer(y: &BitVector) -> u64 {
    y.bits.iter().fold(0, |acc, &b| acc << 1 | b as u64)
}

fn inputs(k: usize) -> impl Strategy<Value = Vec<BitVector>> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), 0..8).prop_map(BitVector::new), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeling_preserves_tin_and_sum((rows, perm) in with_permutation(2..=5, 6)) {
        let m = gdof(rows, 3);
        let r = m.relabeled(&perm);
        prop_assert_eq!(check_tin(&m).holds, check_tin(&r).holds);
        prop_assert_eq!(check_tin(&m).strict, check_tin(&r).strict);
        prop_assert_eq!(sum_gdof(&m).unwrap().value, sum_gdof(&r).unwrap().value);
    }

    #[test]
    fn permutations_and_partitions_correspond(perm in (1usize..=7).prop_flat_map(permutation)) {
        let p = CyclicPartition::from_permutation(&perm).unwrap();
        prop_assert_eq!(p.permutation(), perm.clone());
        let covered: usize = p.cycles().iter().map(|c| c.len()).sum();
        prop_assert_eq!(covered, perm.len());
        prop_assert_eq!(partition_from_array(&predecessor_array(&p)).unwrap(), p.clone());
        for c in p.cycles() {
            for (rx, tx) in c.edges() {
                // edge from transmitter tx into receiver rx: tx is rx's predecessor
                prop_assert_eq!(perm[tx], rx);
            }
        }
    }

    #[test]
    fn sum_scales_linearly(rows in square(2..=5, 6), num in 1i64..=7, den in 1i64..=5) {
        let m = gdof(rows, 2);
        let c = frac(num, den);
        let scaled = sum_gdof(&m.scaled(&c)).unwrap().value;
        prop_assert_eq!(scaled, sum_gdof(&m).unwrap().value * c);
    }

    #[test]
    fn quantized_levels_converge(seed in any::<u64>(), k in 2usize..=4, log_p in 8i64..=400) {
        let m = strict(seed, k);
        let l = int(log_p);
        let q = quantize(&m, &l).unwrap();
        let scale = int(2) / &l;
        for rx in 0..k {
            for tx in 0..k {
                let approx = q.get(rx, tx) * &scale;
                let err = m.get(rx, tx) - approx;
                prop_assert!(err >= int(0) && err < scale);
            }
        }
        // every bound term moves by less than 2/log P, and a bound has at most 2K terms
        let gap = sum_gdof(&m).unwrap().value - sum_gdof(&q).unwrap().value * &scale;
        let limit = &scale * int(2 * k as i64);
        prop_assert!(gap < limit.clone() && gap > -limit);
    }

    #[test]
    fn channel_output_matches_integer_oracle(rows in square(2..=4, 7), seed_inputs in inputs(4)) {
        let m = levels(&rows);
        let k = rows.len();
        let x = &seed_inputs[..k];
        let y = channel_output(&m, x).unwrap();
        for rx in 0..k {
            let width = *rows[rx].iter().max().unwrap() as usize;
            prop_assert_eq!(y[rx].len(), width);
            let expected = (0..k).fold(0, |acc, tx| acc ^ shifted(&x[tx], rows[rx][tx] as usize));
            prop_assert_eq!(as_integer(&y[rx]), expected);
        }
    }

    #[test]
    fn channel_output_is_linear_over_gf2(rows in square(2..=4, 7), a in inputs(4), b in inputs(4)) {
        let m = levels(&rows);
        let k = rows.len();
        let sum: Vec<BitVector> = a[..k].iter().zip(&b[..k]).map(|(x, y)| x.xor(y)).collect();
        let ya = channel_output(&m, &a[..k]).unwrap();
        let yb = channel_output(&m, &b[..k]).unwrap();
        let ys = channel_output(&m, &sum).unwrap();
        for rx in 0..k {
            prop_assert_eq!(&ys[rx], &ya[rx].xor(&yb[rx]));
        }
    }

    #[test]
    fn cycle_lp_duality(rows in square(2..=5, 6), nonnegative in any::<bool>()) {
        let m = gdof(rows, 2);
        let lp = cycle_bound_lp(&m, nonnegative).unwrap();
        match solve_lp(&lp) {
            LpSolution::Optimal { value, point, dual } => {
                prop_assert!(lp.is_feasible(&point));
                prop_assert_eq!(lp.objective_at(&point), value.clone());
                prop_assert!(lp.check_dual(&dual));
                prop_assert_eq!(lp.dual_value(&dual), value.clone());

                // unit multipliers on the cycles of any partition are dual feasible
                let cycles = enumerate_cycles(m.users()).unwrap();
                let best = optimal_partitions(&m).unwrap();
                for p in &best.partitions {
                    let y: Vec<Rational> = cycles
                        .iter()
                        .map(|c| if p.cycles().contains(c) { int(1) } else { int(0) })
                        .collect();
                    prop_assert!(lp.check_dual(&y));
                    prop_assert!(lp.dual_value(&y) >= value);
                    prop_assert_eq!(lp.dual_value(&y), best.bound.clone());
                }
            }
            // a failing TIN condition can push a cycle bound below zero
            LpSolution::Infeasible { farkas } => {
                prop_assert!(nonnegative && !check_tin(&m).holds);
                prop_assert!(lp.check_farkas(&farkas));
            }
            LpSolution::Unbounded => prop_assert!(false, "every user has a single-user bound"),
        }
    }

    #[test]
    fn assignment_matches_exhaustive_search(rows in square(5..=5, 9)) {
        let m = gdof(rows, 3);
        let (assignment, bound) = best_partition_assignment(&m);
        let best = optimal_partitions(&m).unwrap();
        prop_assert_eq!(&assignment.weight, &best.weight);
        prop_assert_eq!(bound.bound, best.bound);
        prop_assert!(best.partitions.iter().any(|p| p.permutation() == assignment.permutation));
    }

    #[test]
    fn tin_region_lp_reaches_sum(seed in any::<u64>(), k in 2usize..=5) {
        let m = strict(seed, k);
        let constraints = region_constraints(&m).unwrap();
        let mut lp = LinearProgram::new(vec![int(1); k], vec![VarSign::NonNegative; k]).unwrap();
        for c in &constraints {
            let row = (0..k).map(|u| if c.cycle.contains(u) { int(1) } else { int(0) }).collect();
            lp.push(row, Relation::Le, c.rhs.clone()).unwrap();
        }
        let value = solve_lp(&lp).value().cloned();
        prop_assert_eq!(value, Some(sum_gdof(&m).unwrap().value));
    }

    #[test]
    fn single_subchannel_decomposition_is_membership(seed in any::<u64>(), k in 2usize..=4, d in prop::collection::vec(0i64..=8, 4)) {
        let m = strict(seed, k);
        let t = GdofTuple::new(d[..k].iter().map(|&x| frac(x, 4)).collect()).unwrap();
        let net = ParallelNetwork::single(m.clone());
        let inside = contains(&region_constraints(&m).unwrap(), &t).unwrap();
        prop_assert_eq!(separate_tin_decomposable(&net, &t).unwrap().is_feasible(), inside);
    }

    #[test]
    fn two_user_decomposition_is_combined_bounds(seeds in prop::collection::vec(any::<u64>(), 2..=3), d in (0i64..=12, 0i64..=12)) {
        let net = ParallelNetwork::new(seeds.iter().map(|&s| strict(s, 2)).collect()).unwrap();
        let t = GdofTuple::new(vec![frac(d.0, 4), frac(d.1, 4)]).unwrap();
        let bounds = combined_sum_bounds(&net).unwrap();
        prop_assert!(bounds.tight);
        let split = separate_tin_decomposable(&net, &t).unwrap();
        prop_assert_eq!(split.is_feasible(), bounds.contains(&t).unwrap());
        match split {
            Decomposition::Feasible { parts } => prop_assert!(verify_decomposition(&net, &t, &parts).unwrap()),
            Decomposition::Infeasible { .. } => {}
        }
    }

    #[test]
    fn document_round_trips(rows in prop::collection::vec(square(3..=3, 9), 1..=3), den in 1i64..=4) {
        let net = ParallelNetwork::new(rows.into_iter().map(|r| gdof(r, den)).collect()).unwrap();
        let text = save_network(&net);
        let loaded = load_network(&text).unwrap();
        prop_assert!(loaded.warnings.is_empty());
        prop_assert_eq!(&loaded.network, &net);
        prop_assert_eq!(save_network(&loaded.network), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn power_control_attains_sum_capacity(seed in any::<u64>(), k in 2usize..=3) {
        let m = sampling::tin_levels(&mut sampling::rng(seed), k, 3, 0);
        let scheme = best_tin_scheme(&m).unwrap();
        prop_assert!(tin_feasible(&m, &scheme).unwrap());
        prop_assert_eq!(int(scheme.total_rate() as i64), sum_gdof(&m).unwrap().value);
    }

    #[test]
    fn power_control_is_feasible_anywhere(rows in square(2..=3, 5)) {
        let m = levels(&rows);
        let scheme = best_tin_scheme(&m).unwrap();
        prop_assert!(tin_feasible(&m, &scheme).unwrap());
        prop_assert!(int(scheme.total_rate() as i64) <= m.diagonal_sum());
        for (u, &r) in scheme.rates.iter().enumerate() {
            let mut louder = scheme.clone();
            louder.rates[u] = r + 1;
            prop_assert!(!tin_feasible(&m, &louder).unwrap());
        }
    }
}
