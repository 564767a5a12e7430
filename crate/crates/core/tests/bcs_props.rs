mod common;

use common::{brute_solvable, rng, systems};
use proptest::prelude::*;
use rand::Rng;
use syncgame::bcs::{
    graph_of_system, is_classically_solvable, iso_witness_from_bcs, magic_square_instance, magic_square_witness,
    solution_sets, sync_bcs_game, LinearSystemZ2, Solvability,
};
use syncgame::game::{
    is_perfect_strategy, perfect_deterministic_search, strategy_from_witness, verify_magic_unitary_witness,
};
use syncgame::graph::is_isomorphic;

fn random_system(seed: u64, m: usize, n: usize) -> LinearSystemZ2 {
    let mut r = rng(seed);
    let a: Vec<Vec<bool>> = (0..m)
        .map(|_| {
            let mask = r.random_range(1u64..1 << n);
            (0..n).map(|j| mask >> j & 1 == 1).collect()
        })
        .collect();
    let b: Vec<bool> = (0..m).map(|_| r.random_bool(0.5)).collect();
    LinearSystemZ2::new(&a, &b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn local_solution_sets_have_half_the_assignments(seed in any::<u64>(), m in 1usize..=4, n in 1usize..=7) {
        let sys = random_system(seed, m, n);
        let ss = solution_sets(&sys).unwrap();
        for (i, s) in ss.sets.iter().enumerate() {
            let v = sys.support(i);
            prop_assert_eq!(s.len(), 1 << (v.count_ones() - 1));
            for &x in s {
                prop_assert_eq!(x & !v, 0);
                prop_assert_eq!(x.count_ones() % 2 == 1, sys.rhs()[i]);
            }
        }
    }

    #[test]
    fn shifting_by_a_local_solution_is_a_bijection(seed in any::<u64>(), m in 1usize..=4, n in 1usize..=7) {
        let sys = random_system(seed, m, n);
        let sb = solution_sets(&sys).unwrap();
        let s0 = solution_sets(&sys.homogeneous()).unwrap();
        for i in 0..m {
            let x0 = sb.sets[i][0];
            let mut shifted: Vec<u64> = s0.sets[i].iter().map(|&y| y ^ x0).collect();
            shifted.sort_unstable();
            prop_assert_eq!(&shifted, &sb.sets[i]);
        }
    }

    #[test]
    fn system_graphs_have_equal_vertex_counts(seed in any::<u64>(), m in 1usize..=4, n in 1usize..=6) {
        let sys = random_system(seed, m, n);
        let (gb, pb) = graph_of_system(&sys).unwrap();
        let (g0, p0) = graph_of_system(&sys.homogeneous()).unwrap();
        prop_assert_eq!(gb.n(), g0.n());
        prop_assert_eq!(pb.len(), p0.len());
        // row blocks are independent sets
        for (p, &(i, _)) in pb.iter().enumerate() {
            for (q, &(j, _)) in pb.iter().enumerate() {
                if i == j && p != q {
                    prop_assert!(gb.has_edge(p, q));
                }
            }
        }
    }

    #[test]
    fn text_round_trips(seed in any::<u64>(), m in 1usize..=5, n in 1usize..=8) {
        let sys = random_system(seed, m, n);
        prop_assert_eq!(LinearSystemZ2::parse(&sys.to_text()).unwrap(), sys);
    }
}

/// Elimination agrees with brute force on every system with at most three
/// rows over at most four variables, and its certificates check out.
#[test]
fn solvability_matches_brute_force() {
    let mut count = 0;
    for m in 1..=3 {
        for n in 1..=4 {
            for sys in systems(m, n) {
                let brute = brute_solvable(&sys);
                match is_classically_solvable(&sys) {
                    Solvability::Solution(x) => {
                        assert!(brute);
                        assert!(sys.satisfied_by(x));
                    }
                    Solvability::Inconsistent(rows) => {
                        assert!(!brute);
                        let sum = rows.iter().fold(0u64, |acc, &i| acc ^ sys.support(i));
                        let parity = rows.iter().fold(false, |acc, &i| acc ^ sys.rhs()[i]);
                        assert_eq!(sum, 0);
                        assert!(parity);
                    }
                }
                count += 1;
            }
        }
    }
    assert!(count > 6000);
}

/// The synchronous BCS game has a perfect deterministic strategy exactly when
/// the system is solvable.
#[test]
fn sync_bcs_strategy_iff_solvable() {
    for m in 1..=3 {
        for n in 1..=3 {
            for sys in systems(m, n) {
                let g = sync_bcs_game(&sys).unwrap();
                let h = perfect_deterministic_search(&g).unwrap();
                assert_eq!(h.is_some(), brute_solvable(&sys), "{}", sys.to_text());
                if let Some(h) = h {
                    // the chosen local solutions glue to a global one
                    let outs = solution_sets(&sys).unwrap().union();
                    let x = h.iter().fold(0u64, |acc, &a| acc | outs[a]);
                    assert!(sys.satisfied_by(x));
                }
            }
        }
    }
}

#[test]
fn magic_square_is_a_quantum_but_not_classical_isomorphism() {
    let sys = magic_square_instance();
    assert!(is_classically_solvable(&sys).solution().is_none());
    let wit = magic_square_witness();
    let game = sync_bcs_game(&sys).unwrap();
    assert!(is_perfect_strategy(&strategy_from_witness(&wit, &game).unwrap(), &game).unwrap());
    let (gb, _) = graph_of_system(&sys).unwrap();
    let (g0, _) = graph_of_system(&sys.homogeneous()).unwrap();
    assert_eq!((gb.n(), g0.n()), (24, 24));
    assert_eq!(is_isomorphic(&gb, &g0).unwrap(), None);
    let iso = iso_witness_from_bcs(&sys, &wit).unwrap();
    let rep = verify_magic_unitary_witness(&iso, &gb, &g0, 1e-9).unwrap();
    assert!(rep.pass(), "{rep:?}");
}
