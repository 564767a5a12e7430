mod common;

use std::collections::BTreeSet;

use common::{graphs_up_to_iso, random_graph, relabel, rng};
use proptest::prelude::*;
use rand::seq::{IteratorRandom, SliceRandom};
use syncgame::certificates::{
    classical_qaut_certificate, degree_obstruction, isospectrality_obstruction, niso_pipeline, DegreeVerdict, SpectralVerdict, Verdict, SUPPORT_EPS,
};
use syncgame::game_algebra::iso_algebra;
use syncgame::graph::{is_isomorphic, Graph};
use syncgame::ncalg::{triviality_status, CompletionOptions, Triviality};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn repeated_eigenvalues_never_certify(seed in any::<u64>(), n in 2usize..=9, p in 0.2f64..0.8) {
        let g = random_graph(&mut rng(seed), n, p);
        let r = classical_qaut_certificate(&g).unwrap();
        if !r.spectral.simple_spectrum {
            prop_assert!(r.verdict != Verdict::CertifiedClassicalQAut);
            // only the degree block can still conclude
            if r.verdict == Verdict::TrivialQAut {
                prop_assert!(r.degree_block.is_some());
            }
        }
        if r.verdict == Verdict::CertifiedClassicalQAut {
            prop_assert!(r.spectral.supports_ok);
            prop_assert!(r.spectral.support_margin.unwrap() > SUPPORT_EPS);
        }
    }

    #[test]
    fn isospectrality_survives_relabelling(seed in any::<u64>(), n in 1usize..=9) {
        let mut r = rng(seed);
        let x = random_graph(&mut r, n, 0.5);
        let mut pi: Vec<usize> = (0..n).collect();
        pi.shuffle(&mut r);
        let y = relabel(&x, &pi);
        let found = is_isomorphic(&x, &y).unwrap().unwrap();
        let z = x.permute(&found).unwrap();
        prop_assert_eq!(&z, &y);
        let pass = matches!(isospectrality_obstruction(&x, &z), SpectralVerdict::Pass { .. });
        prop_assert!(pass);
        prop_assert!(matches!(degree_obstruction(&x, &z), DegreeVerdict::Blocks(_)));
    }
}

/// The switched Frucht pair is isospectral for every 6-subset; 100 random ones.
#[test]
fn niso_isospectral_for_random_subsets() {
    let mut r = rng(2024);
    let mut seen = BTreeSet::new();
    while seen.len() < 100 {
        let mut s: Vec<usize> = (0..12).choose_multiple(&mut r, 6);
        s.sort_unstable();
        if !seen.insert(s.clone()) {
            continue;
        }
        let rep = niso_pipeline(Some(&s)).unwrap();
        assert!(rep.isospectral, "{s:?}");
    }
}

/// Pairs with different degree sequences have a collapsing isomorphism
/// algebra, certified at degree 3, for every pair of graphs on at most five
/// vertices.
#[test]
fn degree_refutation_implies_collapse() {
    let opts = CompletionOptions::with_degree(3);
    let mut refuted = 0;
    for n in 1..=5 {
        let graphs = graphs_up_to_iso(n);
        for (i, x) in graphs.iter().enumerate() {
            for y in &graphs[i + 1..] {
                if !matches!(degree_obstruction(x, y), DegreeVerdict::Refuted { .. }) {
                    continue;
                }
                let iso = iso_algebra(x, y).unwrap();
                let rep = triviality_status(&iso.pres, &opts, None).unwrap();
                let Triviality::TrivialCertified(cert) = rep.verdict else {
                    panic!("{:?} vs {:?}: {}", x.edges(), y.edges(), rep.verdict.label());
                };
                assert!(cert.replay().is_ok());
                refuted += 1;
            }
        }
    }
    assert!(refuted > 500, "{refuted}");
}

#[test]
fn complement_of_k3_is_degree_refuted() {
    let k3 = Graph::complete(3).unwrap();
    let DegreeVerdict::Refuted { x_degrees, y_degrees } = degree_obstruction(&k3, &k3.complement()) else {
        panic!("K3 and its complement share no degree");
    };
    assert_eq!((x_degrees, y_degrees), (vec![2, 2, 2], vec![0, 0, 0]));
}
