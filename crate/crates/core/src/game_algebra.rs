//! Game algebras and the explicit homomorphisms between the BCS, isomorphism
//! and homomorphism games of a linear system.
//!
//! Generators forced to zero by the rules of a game are pruned while the
//! presentation is built: `e_{v,a}` is dropped when `a` is a forbidden answer
//! to `v`, or when some question `w` has no kept answer compatible with `a`.
//! Pruning is iterated to a fixed point.

use num_traits::{One, Zero};
use serde_json::json;
use thiserror::Error;

use crate::bcs::{graph_of_system, solution_sets, sync_bcs_game, BcsError, LinearSystemZ2};
use crate::game::{hom_game, iso_game, perfect_deterministic_search, GameError, SyncGame};
use crate::graph::{Graph, GraphError};
use crate::ncalg::{
    complete, hereditary_closure_step, triviality_status, verify_homomorphism, Alphabet,
    CompletionOptions, HomReport, Letter, NCPoly, NcError, Presentation, RewriteSystem,
    TrivialityReport,
};
use crate::Rational;

/// Largest `sum_i |S_i^b|` accepted by [`equivalence_maps`].
pub const MAX_SYMBOLIC_VERTICES: usize = 64;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("symbolic budget exceeded: {got} graph vertices, limit {limit}")]
    Budget { got: usize, limit: usize },

    #[error(transparent)]
    Game(#[from] GameError),

    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error(transparent)]
    Bcs(#[from] BcsError),

    #[error(transparent)]
    Nc(#[from] NcError),
}

pub type AlgebraResult<T> = Result<T, AlgebraError>;

/// A game together with the presentation of its algebra.
///
/// `letters[v * n_out + a]` is the generator standing for `e_{v,a}`, or
/// `None` when that generator was pruned to zero. Several cells may share a
/// letter (the reduced isomorphism presentation identifies `e_{g,h}` with
/// `e_{h,g}`).
#[derive(Debug, Clone)]
pub struct GameAlgebra {
    pub game: SyncGame,
    pub pres: Presentation,
    letters: Vec<Option<Letter>>,
    cells: Vec<(usize, usize)>,
}

impl GameAlgebra {
    pub fn letter(&self, v: usize, a: usize) -> Option<Letter> {
        self.letters[v * self.game.n_outputs() + a]
    }

    /// `e_{v,a}` as a polynomial (zero when pruned).
    pub fn gen(&self, v: usize, a: usize) -> NCPoly {
        self.letter(v, a).map_or_else(NCPoly::zero, NCPoly::letter)
    }

    /// The `(v, a)` cell each letter was created for.
    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn n_generators(&self) -> usize {
        self.cells.len()
    }

    /// Scalar evaluation `e_{v,a} -> [h(v) = a]`.
    pub fn evaluation(&self, h: &[usize]) -> Vec<Rational> {
        self.evaluation_from(|v, a| h[v] == a)
    }

    pub fn evaluation_from(&self, f: impl Fn(usize, usize) -> bool) -> Vec<Rational> {
        self.cells
            .iter()
            .map(|&(v, a)| if f(v, a) { Rational::one() } else { Rational::zero() })
            .collect()
    }
}

fn prune(game: &SyncGame) -> Vec<bool> {
    let (ni, no) = (game.n_inputs(), game.n_outputs());
    let mut kept: Vec<bool> = (0..ni * no)
        .map(|c| game.lambda(c / no, c / no, c % no, c % no))
        .collect();
    loop {
        let mut changed = false;
        for v in 0..ni {
            for a in 0..no {
                if !kept[v * no + a] {
                    continue;
                }
                let dead = (0..ni).any(|w| {
                    (0..no).all(|b| !kept[w * no + b] || !game.lambda(v, w, a, b))
                        || (0..no).all(|b| !kept[w * no + b] || !game.lambda(w, v, b, a))
                });
                if dead {
                    kept[v * no + a] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return kept;
        }
    }
}

/// The game algebra: self-adjoint idempotents `e_{v,a}` with
/// `sum_a e_{v,a} = 1` and `e_{v,a} e_{w,b} = 0` on every losing cell.
pub fn algebra_of_game(game: &SyncGame) -> GameAlgebra {
    let (ni, no) = (game.n_inputs(), game.n_outputs());
    let kept = prune(game);
    let mut al = Alphabet::new();
    let mut letters = vec![None; ni * no];
    let mut cells = Vec::new();
    for v in 0..ni {
        for a in 0..no {
            if kept[v * no + a] {
                let name = format!("e_{}_{}", game.inputs()[v], game.outputs()[a]);
                let l = al
                    .add_self_adjoint(&name)
                    .expect("game labels form valid, distinct letter names");
                letters[v * no + a] = Some(l);
                cells.push((v, a));
            }
        }
    }
    let mut pres = Presentation::new(al);
    for &(v, a) in &cells {
        let e = NCPoly::letter(letters[v * no + a].unwrap());
        pres.add_relation(&e * &e - e);
    }
    for v in 0..ni {
        let row: NCPoly = (0..no)
            .filter_map(|a| letters[v * no + a])
            .map(NCPoly::letter)
            .sum();
        pres.add_relation(NCPoly::one() - row);
    }
    for [v, w, a, b] in game.zeros() {
        if let (Some(x), Some(y)) = (letters[v * no + a], letters[w * no + b]) {
            pres.add_relation(NCPoly::monomial(&[x, y]));
        }
    }
    GameAlgebra {
        game: game.clone(),
        pres,
        letters,
        cells,
    }
}

/// The algebra of the full isomorphism game on `V(x) ⊔ V(y)`.
pub fn iso_game_algebra(x: &Graph, y: &Graph) -> AlgebraResult<GameAlgebra> {
    Ok(algebra_of_game(&iso_game(x, y)?))
}

/// The reduced isomorphism presentation on generators `e_{g,h}`, `g ∈ V(x)`,
/// `h ∈ V(y)`: a magic unitary `U` with `A_x U = U A_y`.
///
/// Letters attach to the cells `(g, |x| + h)` and `(|x| + h, g)` of
/// [`iso_game`]. When the vertex counts differ the full game algebra is
/// returned instead.
pub fn iso_algebra(x: &Graph, y: &Graph) -> AlgebraResult<GameAlgebra> {
    let game = iso_game(x, y)?;
    let n = x.n();
    if n != y.n() {
        return Ok(algebra_of_game(&game));
    }
    let no = game.n_outputs();
    let mut al = Alphabet::new();
    let mut letters = vec![None; 2 * n * no];
    let mut cells = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            let l = al.add_self_adjoint(&format!("e_x{g}_y{h}"))?;
            letters[g * no + n + h] = Some(l);
            letters[(n + h) * no + g] = Some(l);
            cells.push((g, n + h));
        }
    }
    let e = |g: usize, h: usize| NCPoly::letter((g * n + h) as Letter);
    let mut pres = Presentation::new(al);
    for g in 0..n {
        for h in 0..n {
            pres.add_relation(&e(g, h) * &e(g, h) - e(g, h));
        }
    }
    for g in 0..n {
        pres.add_relation(NCPoly::one() - (0..n).map(|h| e(g, h)).sum::<NCPoly>());
    }
    for h in 0..n {
        pres.add_relation(NCPoly::one() - (0..n).map(|g| e(g, h)).sum::<NCPoly>());
    }
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                if k != h {
                    pres.add_relation(&e(g, h) * &e(g, k));
                }
                if k != g {
                    pres.add_relation(&e(g, h) * &e(k, h));
                }
            }
        }
    }
    for g in 0..n {
        for h in 0..n {
            let left: NCPoly = x.neighbors(g).map(|k| e(k, h)).sum();
            let right: NCPoly = y.neighbors(h).map(|k| e(g, k)).sum();
            pres.add_relation(left - right);
        }
    }
    Ok(GameAlgebra {
        game,
        pres,
        letters,
        cells,
    })
}

/// Decides the game algebra's triviality as far as possible: a winning
/// deterministic strategy certifies nontriviality, otherwise completion runs.
pub fn game_triviality(ga: &GameAlgebra, opts: &CompletionOptions) -> AlgebraResult<TrivialityReport> {
    let eval = perfect_deterministic_search(&ga.game)?.map(|h| ga.evaluation(&h));
    Ok(triviality_status(&ga.pres, opts, eval.as_deref())?)
}

/// One verified generator map.
#[derive(Debug, Clone)]
pub struct MapReport {
    pub name: &'static str,
    pub source: Alphabet,
    pub target: Alphabet,
    pub report: HomReport,
}

impl MapReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.report.to_json(&self.source, &self.target);
        v["map"] = json!(self.name);
        v
    }
}

/// The three maps between the syncBCS, isomorphism and homomorphism algebras
/// of a linear system, plus the third map checked without the hereditary
/// closure step.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub iso_to_bcs: MapReport,
    pub hom_to_iso: MapReport,
    pub bcs_to_hom: MapReport,
    pub bcs_to_hom_unclosed: MapReport,
    /// Whether the closure candidates were confirmed and appended.
    pub closure_applied: bool,
}

impl EquivalenceReport {
    /// All three maps verified with zero residuals.
    pub fn pass(&self) -> bool {
        self.iso_to_bcs.report.pass() && self.hom_to_iso.report.pass() && self.bcs_to_hom.report.pass()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "pass": self.pass(),
            "closure_applied": self.closure_applied,
            "pi1": self.iso_to_bcs.to_json(),
            "pi2": self.hom_to_iso.to_json(),
            "pi3": self.bcs_to_hom.to_json(),
            "pi3_without_closure": self.bcs_to_hom_unclosed.to_json(),
        })
    }
}

/// Builds `A(syncBCS(A,b))`, the reduced `A(Iso(G_{A,b}, G_{A,0}))` and
/// `A(Hom(K_m, complement G_{A,b}))`, and verifies
///
/// - `e_{(i,x),(j,y)} -> [i = j] e_{i,x+y}` (Iso to BCS),
/// - `e_{j,(i,x)} -> e_{(i,x),(j,0)}` (Hom to Iso),
/// - `e_{i,x} -> sum_k e_{k,(i,x)}` (BCS to the hereditary Hom algebra).
pub fn equivalence_maps(sys: &LinearSystemZ2, opts: &CompletionOptions) -> AlgebraResult<EquivalenceReport> {
    let ss = solution_sets(sys)?;
    if ss.total() > MAX_SYMBOLIC_VERTICES {
        return Err(AlgebraError::Budget {
            got: ss.total(),
            limit: MAX_SYMBOLIC_VERTICES,
        });
    }
    let m = sys.m();
    let outs = ss.union();
    let out_index = |x: u64| outs.binary_search(&x).expect("local solution is an output");

    let bcs = algebra_of_game(&sync_bcs_game(sys)?);
    let (gb, pairs_b) = graph_of_system(sys)?;
    let (g0, pairs_0) = graph_of_system(&sys.homogeneous())?;
    let iso = iso_algebra(&gb, &g0)?;
    let hom = algebra_of_game(&hom_game(&Graph::complete(m)?, &gb.complement())?);

    let bcs_rs = complete(&bcs.pres, opts);
    let iso_rs = complete(&iso.pres, opts);
    let hom_rs = complete(&hom.pres, opts);

    // Iso -> BCS
    let nb = gb.n();
    let pi1: Vec<NCPoly> = iso
        .cells()
        .iter()
        .map(|&(g, yh)| {
            let (i, x) = pairs_b[g];
            let (j, y) = pairs_0[yh - nb];
            if i == j {
                bcs.gen(i, out_index(x ^ y))
            } else {
                NCPoly::zero()
            }
        })
        .collect();
    let iso_to_bcs = MapReport {
        name: "iso_to_bcs",
        source: iso.pres.alphabet().clone(),
        target: bcs.pres.alphabet().clone(),
        report: verify_homomorphism(&iso.pres, &bcs_rs, &pi1)?,
    };

    // Hom -> Iso
    let zero_vertex = |j: usize| {
        pairs_0
            .iter()
            .position(|&(r, y)| r == j && y == 0)
            .expect("zero solves every homogeneous row")
    };
    let pi2: Vec<NCPoly> = hom
        .cells()
        .iter()
        .map(|&(j, p)| iso.gen(p, nb + zero_vertex(j)))
        .collect();
    let hom_to_iso = MapReport {
        name: "hom_to_iso",
        source: hom.pres.alphabet().clone(),
        target: iso.pres.alphabet().clone(),
        report: verify_homomorphism(&hom.pres, &iso_rs, &pi2)?,
    };

    // BCS -> hereditary Hom
    let vertex_of = |i: usize, x: u64| pairs_b.iter().position(|&p| p == (i, x));
    let f = |i: usize, x: u64| -> NCPoly {
        match vertex_of(i, x) {
            Some(p) => (0..m).map(|k| hom.gen(k, p)).sum(),
            None => NCPoly::zero(),
        }
    };
    let pi3: Vec<NCPoly> = bcs.cells().iter().map(|&(i, a)| f(i, outs[a])).collect();
    let candidates: Vec<NCPoly> = (0..m)
        .map(|i| {
            let p: NCPoly = ss.sets[i].iter().map(|&x| f(i, x)).sum();
            NCPoly::one() - p
        })
        .collect();
    let closed = hereditary_closure_step(&hom.pres, &hom_rs, &candidates);
    let closure_applied = closed.relations().len() > hom.pres.relations().len();
    let closed_rs = complete(&closed, opts);
    let source = bcs.pres.alphabet().clone();
    let target = hom.pres.alphabet().clone();
    let bcs_to_hom = MapReport {
        name: "bcs_to_hom",
        source: source.clone(),
        target: target.clone(),
        report: verify_homomorphism(&bcs.pres, &closed_rs, &pi3)?,
    };
    let bcs_to_hom_unclosed = MapReport {
        name: "bcs_to_hom_without_closure",
        source,
        target,
        report: verify_homomorphism(&bcs.pres, &hom_rs, &pi3)?,
    };
    Ok(EquivalenceReport {
        iso_to_bcs,
        hom_to_iso,
        bcs_to_hom,
        bcs_to_hom_unclosed,
        closure_applied,
    })
}

/// Convenience wrapper returning the completed system of a game algebra.
pub fn complete_game_algebra(ga: &GameAlgebra, opts: &CompletionOptions) -> RewriteSystem {
    complete(&ga.pres, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Triviality;

    #[test]
    fn one_by_one_game() {
        let g = SyncGame::new(vec!["v".into()], vec!["a".into()], |_, _, _, _| true).unwrap();
        let ga = algebra_of_game(&g);
        assert_eq!(ga.n_generators(), 1);
        let rs = complete(&ga.pres, &CompletionOptions::default());
        assert!(rs.normal_form(&(NCPoly::letter(0) - NCPoly::one())).is_zero());
    }

    #[test]
    fn hom_k5_k4_shape() {
        let ga = algebra_of_game(
            &hom_game(&Graph::complete(5).unwrap(), &Graph::complete(4).unwrap()).unwrap(),
        );
        assert_eq!(ga.n_generators(), 20);
        let p = NCPoly::monomial(&[ga.letter(0, 2).unwrap(), ga.letter(3, 2).unwrap()]);
        assert!(ga.pres.contains_relation(&p));
    }

    #[test]
    fn sum_to_minus_one() {
        let ga = algebra_of_game(
            &hom_game(&Graph::complete(5).unwrap(), &Graph::complete(4).unwrap()).unwrap(),
        );
        let rs = complete(&ga.pres, &CompletionOptions::with_degree(3));
        let s: NCPoly = (0..4)
            .map(|a| NCPoly::one() - (0..5).map(|x| ga.gen(x, a)).sum::<NCPoly>())
            .sum();
        assert_eq!(rs.normal_form(&s), NCPoly::int(-1));
    }

    #[test]
    fn bcs_pruning_keeps_local_solutions() {
        let sys = LinearSystemZ2::from_supports(3, &[&[0, 1], &[1, 2]], &[true, false]).unwrap();
        let ga = algebra_of_game(&sync_bcs_game(&sys).unwrap());
        let ss = solution_sets(&sys).unwrap();
        let outs = ss.union();
        for &(i, a) in ga.cells() {
            assert!(ss.sets[i].contains(&outs[a]));
        }
        assert_eq!(ga.n_generators(), ss.total());
    }

    #[test]
    fn reduced_iso_identity_evaluation() {
        let c5 = Graph::cycle(5).unwrap();
        let ga = iso_algebra(&c5, &c5).unwrap();
        assert_eq!(ga.n_generators(), 25);
        let vals = ga.evaluation_from(|g, yh| yh - 5 == g);
        assert!(ga.pres.satisfied_by(&vals).unwrap());
        let k1 = Graph::empty(1).unwrap();
        let one = iso_algebra(&k1, &k1).unwrap();
        let rs = complete(&one.pres, &CompletionOptions::default());
        assert!(rs.normal_form(&(NCPoly::letter(0) - NCPoly::one())).is_zero());
    }

    #[test]
    fn iso_k3_complement_collapses() {
        let k3 = Graph::complete(3).unwrap();
        let ga = iso_algebra(&k3, &k3.complement()).unwrap();
        let rep = triviality_status(&ga.pres, &CompletionOptions::with_degree(3), None).unwrap();
        match rep.verdict {
            Triviality::TrivialCertified(cert) => cert.replay().unwrap(),
            other => panic!("expected collapse, got {}", other.label()),
        }
    }

    #[test]
    fn game_triviality_uses_strategy() {
        let c4 = Graph::cycle(4).unwrap();
        let ga = algebra_of_game(&hom_game(&c4, &Graph::complete(2).unwrap()).unwrap());
        let rep = game_triviality(&ga, &CompletionOptions::with_degree(2)).unwrap();
        assert!(matches!(rep.verdict, Triviality::NontrivialCertified(_)));
    }

    #[test]
    fn equivalence_maps_small_systems() {
        let opts = CompletionOptions::with_degree(4);
        let one = LinearSystemZ2::from_supports(2, &[&[0, 1]], &[false]).unwrap();
        let rep = equivalence_maps(&one, &opts).unwrap();
        assert!(rep.pass(), "{}", rep.to_json());
        let two = LinearSystemZ2::from_supports(3, &[&[0, 1, 2], &[1, 2]], &[true, false]).unwrap();
        let rep = equivalence_maps(&two, &opts).unwrap();
        assert!(rep.closure_applied);
        assert!(rep.pass(), "{}", rep.to_json());
        // with two rows, p_0 = 1 already follows from the row sums of
        // A(Hom(K_2, -)) at degree 2, so the unclosed map verifies as well
        assert!(rep.bcs_to_hom_unclosed.report.pass());
    }

    #[test]
    fn unclosed_map_needs_degree_three() {
        let sys = LinearSystemZ2::from_supports(2, &[&[0, 1], &[0, 1], &[0, 1]], &[false; 3]).unwrap();
        let low = equivalence_maps(&sys, &CompletionOptions::with_degree(2)).unwrap();
        assert!(low.iso_to_bcs.report.pass() && low.bcs_to_hom.report.pass());
        assert_eq!(low.bcs_to_hom_unclosed.report.failures(), 3);
        let high = equivalence_maps(&sys, &CompletionOptions::with_degree(3)).unwrap();
        assert!(high.pass() && high.bcs_to_hom_unclosed.report.pass());
    }
}
