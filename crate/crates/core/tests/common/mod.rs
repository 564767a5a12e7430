//! Independent oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use syncgame::bcs::LinearSystemZ2;
use syncgame::game::SyncGame;
use syncgame::game_algebra::algebra_of_game;
use syncgame::graph::Graph;
use syncgame::ncalg::find_boolean_character;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

/// `det(k I - A)` computed directly.
pub fn char_poly_at(g: &Graph, k: i128) -> i128 {
    let n = g.n();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let a = i128::from(g.has_edge(i, j));
                    if i == j {
                        k - a
                    } else {
                        -a
                    }
                })
                .collect()
        })
        .collect();
    det(m)
}

/// Two graphs on `n` vertices are isospectral iff their monic degree-`n`
/// characteristic polynomials agree at `n + 1` points.
pub fn isospectral_by_points(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && (0..=g.n() as i128).all(|k| char_poly_at(g, k) == char_poly_at(h, k))
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(p, k + 1, out);
            p.swap(k, i);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), 0, &mut out);
    out
}

/// Relabels with `pi`: edge `(u, v)` becomes `(pi[u], pi[v])`.
pub fn relabel(g: &Graph, pi: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().into_iter().map(|(u, v)| (pi[u], pi[v])).collect();
    Graph::from_edges(g.n(), &edges).unwrap()
}

pub fn brute_aut_order(g: &Graph) -> usize {
    permutations(g.n()).iter().filter(|p| relabel(g, p) == *g).count()
}

pub fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && permutations(g.n()).iter().any(|p| relabel(g, p) == *h)
}

fn edge_mask(g: &Graph) -> u64 {
    let n = g.n();
    let mut m = 0u64;
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                m |= 1 << bit;
            }
            bit += 1;
        }
    }
    m
}

/// One representative per isomorphism class on `n` vertices, by brute-force
/// canonical forms.
pub fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let canon = perms.iter().map(|p| edge_mask(&relabel(&g, p))).min().unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// A random `d`-regular graph on `n` vertices: pairing model with
/// rejection, falling back to a relabelled circulant.
pub fn random_regular(rng: &mut StdRng, n: usize, d: usize) -> Graph {
    assert!(d < n && n * d % 2 == 0);
    'attempt: for _ in 0..2000 {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        stubs.shuffle(rng);
        let mut edges = std::collections::BTreeSet::new();
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !edges.insert((u, v)) {
                continue 'attempt;
            }
        }
        let edges: Vec<_> = edges.into_iter().collect();
        return Graph::from_edges(n, &edges).unwrap();
    }
    // circulant with offsets 1..=d/2, plus n/2 when d is odd
    let mut edges = Vec::new();
    for v in 0..n {
        for s in 1..=d / 2 {
            edges.push((v, (v + s) % n));
        }
        if d % 2 == 1 && v < n / 2 {
            edges.push((v, v + n / 2));
        }
    }
    let g = Graph::from_edges(n, &edges).unwrap();
    let mut pi: Vec<usize> = (0..n).collect();
    pi.shuffle(rng);
    relabel(&g, &pi)
}

/// Every system with `m` rows over `n` variables, rows taken as a sorted
/// multiset of non-zero masks (row order only relabels the questions).
pub fn systems(m: usize, n: usize) -> Vec<LinearSystemZ2> {
    fn rows(m: usize, min: u64, max: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if acc.len() == m {
            out.push(acc.clone());
            return;
        }
        for r in min..=max {
            acc.push(r);
            rows(m, r, max, acc, out);
            acc.pop();
        }
    }
    let mut all = Vec::new();
    rows(m, 1, (1 << n) - 1, &mut Vec::new(), &mut all);
    let mut out = Vec::new();
    for rs in all {
        let a: Vec<Vec<bool>> = rs.iter().map(|r| (0..n).map(|j| r >> j & 1 == 1).collect()).collect();
        for bits in 0u32..(1 << m) {
            let b: Vec<bool> = (0..m).map(|i| bits >> i & 1 == 1).collect();
            out.push(LinearSystemZ2::new(&a, &b).unwrap());
        }
    }
    out
}

/// Brute force over `Z_2^n`.
pub fn brute_solvable(sys: &LinearSystemZ2) -> bool {
    (0u64..(1 << sys.n())).any(|x| sys.satisfied_by(x))
}

/// Outcome of comparing winning maps with characters of the game algebra.
#[derive(Debug, Default, Clone, Copy)]
pub struct EquivalenceTally {
    pub games: usize,
    pub maps_checked: usize,
    pub winning_maps: usize,
    pub exhaustive_games: usize,
}

/// Largest product of allowed-answer counts enumerated map by map; larger
/// games get a seeded sample plus the existence comparison.
pub const MAP_ENUMERATION_CAP: usize = 70_000;
pub const MAP_SAMPLE: usize = 300;

/// Checks, for one game, that a map `h` wins iff the evaluation
/// `e_{v,a} -> [h(v) = a]` satisfies every relation of the game algebra,
/// and that a winning map exists iff a `{0, 1}` character exists.
pub fn check_winning_iff_character(game: &SyncGame, tally: &mut EquivalenceTally, seed: u64) -> Result<(), String> {
    let ga = algebra_of_game(game);
    let ni = game.n_inputs();
    let no = game.n_outputs();
    let allowed: Vec<Vec<usize>> = (0..ni).map(|v| game.allowed(v).collect()).collect();
    let mut any_winning = false;
    let mut check = |h: &[usize], tally: &mut EquivalenceTally| -> Result<(), String> {
        let wins = game.is_winning_map(h);
        let sat = ga.pres.satisfied_by(&ga.evaluation(h)).map_err(|e| e.to_string())?;
        tally.maps_checked += 1;
        if wins {
            tally.winning_maps += 1;
            any_winning = true;
        }
        if wins != sat {
            return Err(format!("map {h:?}: winning={wins}, satisfies relations={sat}"));
        }
        Ok(())
    };
    let space = allowed.iter().try_fold(1usize, |acc, a| acc.checked_mul(a.len()));
    let mut r = rng(seed);
    match space {
        Some(0) => {}
        Some(s) if s <= MAP_ENUMERATION_CAP => {
            tally.exhaustive_games += 1;
            let mut idx = vec![0usize; ni];
            'outer: loop {
                let h: Vec<usize> = (0..ni).map(|v| allowed[v][idx[v]]).collect();
                check(&h, tally)?;
                for v in (0..ni).rev() {
                    idx[v] += 1;
                    if idx[v] < allowed[v].len() {
                        continue 'outer;
                    }
                    idx[v] = 0;
                }
                break;
            }
        }
        _ => {
            for _ in 0..MAP_SAMPLE {
                let h: Vec<usize> = (0..ni).map(|v| *allowed[v].choose(&mut r).unwrap()).collect();
                check(&h, tally)?;
            }
        }
    }
    // answers outside the allowed set lose and are excluded by the relations
    for v in 0..ni {
        for a in (0..no).filter(|a| !allowed[v].contains(a)) {
            let mut h: Vec<usize> = (0..ni).map(|w| allowed[w].first().copied().unwrap_or(0)).collect();
            h[v] = a;
            check(&h, tally)?;
        }
    }
    let search = syncgame::game::perfect_deterministic_search(game).map_err(|e| e.to_string())?;
    let character = find_boolean_character(&ga.pres, 50_000_000);
    if let Some(h) = &search {
        check(h, tally)?;
    }
    if search.is_some() != character.is_some() {
        return Err(format!(
            "search found a map: {}, character exists: {}",
            search.is_some(),
            character.is_some()
        ));
    }
    if let Some(values) = character {
        // decode the character into a map and replay it against the game
        let mut h = vec![usize::MAX; ni];
        for (l, &(v, a)) in ga.cells().iter().enumerate() {
            if values[l] == syncgame::Rational::from_integer(1.into()) {
                h[v] = a;
            }
        }
        if !game.is_winning_map(&h) {
            return Err(format!("character decodes to losing map {h:?}"));
        }
    }
    if any_winning && search.is_none() {
        return Err("enumeration found a winning map that the search missed".into());
    }
    tally.games += 1;
    Ok(())
}

/// Isomorphism classes on `n + 1` vertices at index `n`, for `n + 1 <= max_n`,
/// grown one vertex at a time. Candidates are bucketed by degree sequence and
/// characteristic polynomial, then compared with the isomorphism search.
pub fn graph_classes_by_extension(max_n: usize) -> Vec<Vec<Graph>> {
    use std::collections::{BTreeMap, BTreeSet};
    let mut levels = vec![vec![Graph::empty(1).unwrap()]];
    for n in 2..=max_n {
        let mut buckets: BTreeMap<(Vec<usize>, String), Vec<Graph>> = BTreeMap::new();
        let mut level = Vec::new();
        for g in &levels[n - 2] {
            for mask in 0u64..1 << (n - 1) {
                let joined: BTreeSet<usize> = (0..n - 1).filter(|v| mask >> v & 1 == 1).collect();
                let h = g.add_vertex_joined(&joined).unwrap();
                let mut degrees = h.degrees();
                degrees.sort_unstable();
                let key = (degrees, syncgame::graph::char_poly(&h).to_string());
                let bucket = buckets.entry(key).or_default();
                if bucket.iter().all(|k| syncgame::graph::is_isomorphic(k, &h).unwrap().is_none()) {
                    bucket.push(h.clone());
                    level.push(h);
                }
            }
        }
        levels.push(level);
    }
    levels
}
