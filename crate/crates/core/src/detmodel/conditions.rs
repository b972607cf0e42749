use crate::cycles::CyclicPartition;
use crate::detmodel::levels::participating_levels;
use crate::model::StrengthMatrix;
use crate::rational::Rational;
use crate::{Error, Result};

/// `(n_12 + n_23 + n_31, n_21 + n_32 + n_13)` of a three-user matrix.
pub fn shift_sums(matrix: &StrengthMatrix) -> Result<(Rational, Rational)> {
    if matrix.users() != 3 {
        return Err(Error::RequiresThreeUsers(matrix.users()));
    }
    let g = |rx, tx| matrix.get(rx, tx);
    Ok((g(0, 1) + g(1, 2) + g(2, 0), g(1, 0) + g(2, 1) + g(0, 2)))
}

/// Three users with unequal shift sums: invertible under any cyclic
/// partition.
pub fn check_3user_condition(matrix: &StrengthMatrix) -> Result<bool> {
    let (a, b) = shift_sums(matrix)?;
    Ok(a != b)
}

/// Whether the undirected graph of participating input bits and output
/// bits, joined by cross-link contributions, is a forest.
pub fn bipartite_acyclic(matrix: &StrengthMatrix, partition: &CyclicPartition) -> Result<bool> {
    let levels = participating_levels(matrix, partition)?;
    let inputs: Vec<_> = levels.input_bits().copied().collect();
    let mut parent: Vec<usize> = (0..inputs.len() + levels.output_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (r, out) in levels.output_levels().enumerate() {
        let node = inputs.len() + r;
        for ib in &out.contributors {
            let col = inputs.binary_search(ib).expect("contributor is a participating input");
            let (a, b) = (find(&mut parent, node), find(&mut parent, col));
            if a == b {
                return Ok(false);
            }
            parent[a] = b;
        }
    }
    Ok(true)
}

/// Every user in a nontrivial cycle interferes strictly more strongly with
/// its cyclic predecessor than with any other receiver. Works on exponents
/// and levels alike.
pub fn dominant_partition_check(matrix: &StrengthMatrix, partition: &CyclicPartition) -> bool {
    (0..matrix.users()).all(|k| match partition.predecessor(k) {
        None => true,
        Some(p) => {
            let own = matrix.get(p, k);
            (0..matrix.users())
                .filter(|&j| j != k && j != p)
                .all(|j| own > matrix.get(j, k))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{optimal_partitions, parse_partition};
    use crate::fixtures;

    #[test]
    fn example_one_shift_sums_differ() {
        let m = fixtures::example1().channel(0).clone();
        assert!(check_3user_condition(&m).unwrap());
    }

    #[test]
    fn symmetric_sums_coincide() {
        let m = StrengthMatrix::levels(&[&[4, 1, 2], &[1, 4, 1], &[2, 1, 4]]).unwrap();
        assert!(!check_3user_condition(&m).unwrap());
        let two = fixtures::two_user();
        assert!(matches!(check_3user_condition(&two), Err(Error::RequiresThreeUsers(2))));
    }

    #[test]
    fn four_user_fixtures() {
        let a = fixtures::acyclic_four_user();
        let pa = optimal_partitions(&a).unwrap();
        assert!(bipartite_acyclic(&a, pa.best()).unwrap());
        assert!(!dominant_partition_check(&a, pa.best()));

        let c = fixtures::cyclic_four_user();
        let p = parse_partition(4, "2:1,3:2,4:3,1:4").unwrap();
        assert!(!bipartite_acyclic(&c, &p).unwrap());
        assert!(dominant_partition_check(&c, &p));
        // transmitter 2 reaches receiver 1 at 3 > max(2, 1)
        assert_eq!(c.get(0, 1), &crate::rational::int(3));
    }

    #[test]
    fn symmetric_cross_is_not_dominant() {
        let m = StrengthMatrix::levels(&[&[4, 1, 1], &[1, 4, 1], &[1, 1, 4]]).unwrap();
        let p = parse_partition(3, "2:1,3:2,1:3").unwrap();
        assert!(!dominant_partition_check(&m, &p));
    }
}
