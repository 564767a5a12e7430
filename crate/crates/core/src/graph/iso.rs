//! Isomorphism search and automorphism counting by individualization and
//! refinement.
//!
//! Both graphs are colored jointly: a refinement round recolors every vertex
//! by its old color and the multiset of its neighbours' colors, with color ids
//! assigned from a shared ordered table so that matching vertices receive
//! matching ids. A mismatch in class sizes prunes the branch.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use super::{Graph, GraphError, GraphResult};
use crate::par;

/// Largest vertex count accepted by the exact search routines.
pub const MAX_SEARCH_VERTICES: usize = 64;

fn check_size(g: &Graph) -> GraphResult<()> {
    if g.n() > MAX_SEARCH_VERTICES {
        Err(GraphError::TooLarge {
            n: g.n(),
            limit: MAX_SEARCH_VERTICES,
        })
    } else {
        Ok(())
    }
}

struct Pair {
    g: Vec<u64>,
    h: Vec<u64>,
}

type Coloring = Vec<u32>;

impl Pair {
    fn new(g: &Graph, h: &Graph) -> Self {
        Self {
            g: g.bitsets(),
            h: h.bitsets(),
        }
    }

    fn n(&self) -> usize {
        self.g.len()
    }

    /// Refines both colorings to their joint coarsest equitable partition.
    /// Returns `false` when the two sides become inconsistent.
    fn refine(&self, cg: &mut Coloring, ch: &mut Coloring) -> bool {
        let mut classes = count_colors(cg);
        loop {
            let sig_g = signatures(&self.g, cg);
            let sig_h = signatures(&self.h, ch);
            let mut table: BTreeMap<&(u32, Vec<(u32, u32)>), [usize; 2]> = BTreeMap::new();
            for s in &sig_g {
                table.entry(s).or_default()[0] += 1;
            }
            for s in &sig_h {
                table.entry(s).or_default()[1] += 1;
            }
            if table.values().any(|c| c[0] != c[1]) {
                return false;
            }
            let ids: BTreeMap<_, u32> = table
                .keys()
                .enumerate()
                .map(|(i, s)| (*s, i as u32))
                .collect();
            let new_g: Coloring = sig_g.iter().map(|s| ids[s]).collect();
            let new_h: Coloring = sig_h.iter().map(|s| ids[s]).collect();
            let new_classes = ids.len();
            *cg = new_g;
            *ch = new_h;
            if new_classes == classes {
                return true;
            }
            classes = new_classes;
        }
    }

    /// Searches for a color-preserving isomorphism extending the current
    /// (refined, consistent) colorings.
    fn extend(&self, cg: &Coloring, ch: &Coloring) -> Option<Vec<usize>> {
        let n = self.n();
        let ncolors = count_colors(cg);
        if ncolors == n {
            return self.leaf(cg, ch);
        }
        let (target, v) = target_cell(cg, ncolors);
        for w in (0..n).filter(|&w| ch[w] == target) {
            if let Some(m) = self.try_pair(cg, ch, v, w) {
                return Some(m);
            }
        }
        None
    }

    fn try_pair(&self, cg: &Coloring, ch: &Coloring, v: usize, w: usize) -> Option<Vec<usize>> {
        let (mut cg2, mut ch2) = individualize(cg, ch, v, w);
        if self.refine(&mut cg2, &mut ch2) {
            self.extend(&cg2, &ch2)
        } else {
            None
        }
    }

    fn leaf(&self, cg: &Coloring, ch: &Coloring) -> Option<Vec<usize>> {
        let n = self.n();
        let mut by_color = vec![0usize; n];
        for (w, &c) in ch.iter().enumerate() {
            by_color[c as usize] = w;
        }
        let map: Vec<usize> = cg.iter().map(|&c| by_color[c as usize]).collect();
        let ok = (0..n).all(|v| {
            let image = bits_of(self.g[v]).fold(0u64, |acc, u| acc | (1u64 << map[u]));
            image == self.h[map[v]]
        });
        ok.then_some(map)
    }
}

fn bits_of(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(i)
        }
    })
}

fn count_colors(c: &Coloring) -> usize {
    c.iter().max().map_or(0, |&m| m as usize + 1)
}

fn signatures(adj: &[u64], colors: &Coloring) -> Vec<(u32, Vec<(u32, u32)>)> {
    adj.iter()
        .enumerate()
        .map(|(v, &nb)| {
            let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
            for w in bits_of(nb) {
                *counts.entry(colors[w]).or_default() += 1;
            }
            (colors[v], counts.into_iter().collect())
        })
        .collect()
}

/// Smallest non-singleton cell (ties broken by color id) and its first vertex.
fn target_cell(cg: &Coloring, ncolors: usize) -> (u32, usize) {
    let mut sizes = vec![0usize; ncolors];
    for &c in cg {
        sizes[c as usize] += 1;
    }
    let target = (0..ncolors)
        .filter(|&c| sizes[c] > 1)
        .min_by_key(|&c| (sizes[c], c))
        .expect("a non-discrete coloring has a non-singleton cell") as u32;
    let v = cg.iter().position(|&c| c == target).unwrap();
    (target, v)
}

fn individualize(cg: &Coloring, ch: &Coloring, v: usize, w: usize) -> (Coloring, Coloring) {
    let fresh = count_colors(cg) as u32;
    let mut cg2 = cg.clone();
    let mut ch2 = ch.clone();
    cg2[v] = fresh;
    ch2[w] = fresh;
    (cg2, ch2)
}

/// Finds `pi` with `(u, v)` an edge of `g` iff `(pi[u], pi[v])` is an edge of
/// `h`, i.e. `A_g P = P A_h` for the permutation matrix of `pi`.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> GraphResult<Option<Vec<usize>>> {
    check_size(g)?;
    check_size(h)?;
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let pair = Pair::new(g, h);
    let mut cg = vec![0; g.n()];
    let mut ch = vec![0; h.n()];
    if !pair.refine(&mut cg, &mut ch) {
        return Ok(None);
    }
    Ok(pair.extend(&cg, &ch))
}

/// Exact order of the automorphism group.
///
/// Walks a stabilizer chain: at each level the orbit of the individualized
/// vertex under the current pointwise stabilizer is measured by isomorphism
/// tests, and the orbit sizes multiply to the group order.
pub fn automorphism_order(g: &Graph) -> GraphResult<BigUint> {
    check_size(g)?;
    let n = g.n();
    let pair = Pair::new(g, g);
    let mut c = vec![0; n];
    let mut c2 = vec![0; n];
    pair.refine(&mut c, &mut c2);
    let mut order = BigUint::one();
    loop {
        let ncolors = count_colors(&c);
        if ncolors == n {
            return Ok(order);
        }
        let (target, v) = target_cell(&c, ncolors);
        let cell: Vec<usize> = (0..n).filter(|&w| c[w] == target).collect();
        let hits = par::map(&cell, |&w| w == v || pair.try_pair(&c, &c, v, w).is_some());
        order *= hits.iter().filter(|&&h| h).count();
        let (mut a, mut b) = individualize(&c, &c, v, v);
        pair.refine(&mut a, &mut b);
        c = a;
    }
}
