mod common;

use common::{random_graph, rng};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;
use syncgame::game::hom_game;
use syncgame::game_algebra::algebra_of_game;
use syncgame::graph::Graph;
use syncgame::ncalg::{
    complete, parse_presentation, triviality_status, Alphabet, CompletionOptions, Letter, NCPoly, Presentation,
    RewriteSystem, Triviality, Word,
};
use syncgame::Rational;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn random_word(r: &mut StdRng, letters: usize, len: usize) -> Vec<Letter> {
    (0..len).map(|_| r.random_range(0..letters) as Letter).collect()
}

fn random_poly(r: &mut StdRng, letters: usize, max_deg: usize, terms: usize) -> NCPoly {
    let mut p = NCPoly::zero();
    for _ in 0..terms {
        let len = r.random_range(0..=max_deg);
        let c = q(r.random_range(-3..=3));
        p = p + NCPoly::monomial(&random_word(r, letters, len)).scale(&c);
    }
    p
}

/// Two self-adjoint letters and one adjoint pair, with a few random binomial
/// relations `w - c v` (`c` in `{-1, 0, 1}`) of degree at most 3. Binomial
/// ideals keep every coefficient at `±1`; general random relations can swell
/// past any reasonable test budget.
fn random_presentation(seed: u64) -> Presentation {
    let mut r = rng(seed);
    let mut al = Alphabet::new();
    al.add_self_adjoint("a").unwrap();
    al.add_self_adjoint("b").unwrap();
    al.add_pair("c").unwrap();
    let mut p = Presentation::new(al);
    for _ in 0..r.random_range(1..=3) {
        let len = r.random_range(1..=3);
        let w = NCPoly::monomial(&random_word(&mut r, 4, len));
        let len = r.random_range(0..=3);
        let v = NCPoly::monomial(&random_word(&mut r, 4, len)).scale(&q(r.random_range(-1..=1)));
        p.add_relation(w - v);
    }
    p
}

fn system(seed: u64) -> (Presentation, RewriteSystem) {
    let p = random_presentation(seed);
    let rs = complete(
        &p,
        &CompletionOptions {
            degree_bound: 5,
            rule_cap: 400,
            track: false,
        },
    );
    (p, rs)
}

/// Words of length `k` over `{0, 1}`, in a fixed order.
fn words(k: usize) -> Vec<Word> {
    (0..1usize << k)
        .map(|m| Word::from_letters(&(0..k).map(|i| (m >> i & 1) as Letter).collect::<Vec<_>>()))
        .collect()
}

fn coords(p: &NCPoly, basis: &[Word]) -> Vec<Rational> {
    basis.iter().map(|w| p.coeff(w)).collect()
}

/// Rank by Gaussian elimination over the rationals.
fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][c].recip();
        let pivot: Vec<Rational> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// Degree-`k` part of the two-sided ideal of homogeneous quadratic
/// relations, spanned by `u r v` with `|u| + |v| = k - 2`.
fn ideal_rows(rels: &[NCPoly], k: usize) -> Vec<Vec<Rational>> {
    let basis = words(k);
    let mut rows = Vec::new();
    for r in rels {
        for split in 0..=k - 2 {
            for u in words(split) {
                for v in words(k - 2 - split) {
                    let mut p = NCPoly::zero();
                    p.add_scaled(&Rational::one(), u.letters(), r, v.letters());
                    rows.push(coords(&p, &basis));
                }
            }
        }
    }
    rows
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_idempotent_and_linear(seed in any::<u64>(), a in -4i64..=4, b in -4i64..=4) {
        let (_, rs) = system(seed);
        let mut r = rng(seed ^ 0x5eed);
        let p = random_poly(&mut r, 4, 4, 5);
        let s = random_poly(&mut r, 4, 4, 5);
        let np = rs.normal_form(&p);
        prop_assert_eq!(rs.normal_form(&np), np.clone());
        let combo = p.scale(&q(a)) + s.scale(&q(b));
        let expected = np.scale(&q(a)) + rs.normal_form(&s).scale(&q(b));
        prop_assert_eq!(rs.normal_form(&combo), expected);
    }

    #[test]
    fn saturated_systems_are_confluent(seed in any::<u64>(), pick_seed in any::<u64>()) {
        let (_, rs) = system(seed);
        prop_assume!(rs.saturated);
        let mut r = rng(seed ^ 0xc0f1);
        let mut picks = rng(pick_seed);
        for _ in 0..4 {
            let p = random_poly(&mut r, 4, 5, 4);
            let alt = rs.normal_form_with(&p, |n| picks.random_range(0..n));
            prop_assert_eq!(alt, rs.normal_form(&p));
        }
    }

    #[test]
    fn relations_reduce_to_zero(seed in any::<u64>()) {
        let (p, rs) = system(seed);
        prop_assume!(!rs.capped);
        for rel in p.relations() {
            prop_assert!(rs.reduces_to_zero(rel));
        }
    }

    #[test]
    fn presentation_text_round_trips(seed in any::<u64>()) {
        let p = random_presentation(seed);
        let back = parse_presentation(&p.to_text()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn rewrite_json_round_trips(seed in any::<u64>()) {
        let (_, rs) = system(seed);
        let text = serde_json::to_string(&rs.to_json()).unwrap();
        let back = RewriteSystem::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), rs.to_json());
        let mut r = rng(seed ^ 0x1a57);
        let p = random_poly(&mut r, 4, 4, 4);
        prop_assert_eq!(back.normal_form(&p), rs.normal_form(&p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// In `<a, b | ab - ba, q_1, ...>` with homogeneous quadratic `q_i`, a
    /// homogeneous `p` of degree `k <= 4` lies in the ideal iff adding it to
    /// the degree-`k` span of `u r v` leaves the rank unchanged.
    #[test]
    fn membership_matches_linear_algebra(seed in any::<u64>(), extra in 1usize..=2, members in any::<bool>()) {
        let mut r = rng(seed);
        let mut al = Alphabet::new();
        let a = al.add_self_adjoint("a").unwrap();
        let b = al.add_self_adjoint("b").unwrap();
        let mut rels = vec![NCPoly::monomial(&[a, b]) - NCPoly::monomial(&[b, a])];
        for _ in 0..extra {
            let quad = NCPoly::monomial(&[a, a]).scale(&q(r.random_range(-2..=2)))
                + (NCPoly::monomial(&[a, b]) + NCPoly::monomial(&[b, a])).scale(&q(r.random_range(-2..=2)))
                + NCPoly::monomial(&[b, b]).scale(&q(r.random_range(-2..=2)));
            if !quad.is_zero() {
                rels.push(quad);
            }
        }
        let mut pres = Presentation::new(al);
        for rel in &rels {
            pres.add_relation(rel.clone());
        }
        let rs = complete(&pres, &CompletionOptions::with_degree(4));
        prop_assert!(rs.complete_up_to >= 4);
        for k in 2..=4 {
            let basis = words(k);
            let rows = ideal_rows(&rels, k);
            let base_rank = rank(rows.clone());
            let p = if members && !rows.is_empty() {
                // random combination of the spanning set
                let mut p = NCPoly::zero();
                for (row, _) in rows.iter().zip(0..) {
                    let c = q(r.random_range(-2..=2));
                    for (w, x) in basis.iter().zip(row) {
                        p.add_term(w.clone(), &c * x);
                    }
                }
                p
            } else {
                let mut p = NCPoly::zero();
                for w in &basis {
                    if r.random_bool(0.4) {
                        p.add_term(w.clone(), q(r.random_range(-2..=2)));
                    }
                }
                p
            };
            let mut with_p = rows.clone();
            with_p.push(coords(&p, &basis));
            let oracle = rank(with_p) == base_rank;
            prop_assert_eq!(rs.reduces_to_zero(&p), oracle, "degree {}", k);
        }
    }

    /// Every collapse certificate replays and expands to `1`.
    #[test]
    fn trivial_certificates_replay(n in 2usize..=4, k in 1usize..=3, seed in any::<u64>()) {
        let x = random_graph(&mut rng(seed), n, 0.6);
        let y = Graph::complete(k).unwrap();
        let ga = algebra_of_game(&hom_game(&x, &y).unwrap());
        let rep = triviality_status(&ga.pres, &CompletionOptions::with_degree(4), None).unwrap();
        if let Triviality::TrivialCertified(cert) = rep.verdict {
            prop_assert!(cert.replay().is_ok());
            if let Some(terms) = cert.expand(200_000) {
                prop_assert!(cert.proves_one(&terms));
            }
        }
    }
}

#[test]
fn odd_cycle_into_k2_is_certified_trivial() {
    let ga = algebra_of_game(&hom_game(&Graph::cycle(3).unwrap(), &Graph::complete(2).unwrap()).unwrap());
    let rep = triviality_status(&ga.pres, &CompletionOptions::with_degree(4), None).unwrap();
    let Triviality::TrivialCertified(cert) = rep.verdict else {
        panic!("expected a collapse certificate, got {}", rep.verdict.label());
    };
    assert!(cert.replay().is_ok());
    let terms = cert.expand(200_000).expect("small certificate");
    assert!(cert.proves_one(&terms));
}


