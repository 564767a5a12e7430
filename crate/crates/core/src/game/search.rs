//! Perfect deterministic strategies by forward-checking backtracking.
//!
//! A perfect deterministic strategy of a synchronous game is a single map
//! `h: I -> O` with `lambda(v, w, h(v), h(w)) = 1` for all `v, w`. Inputs are
//! assigned in order and outputs tried in increasing order, so the first map
//! found is the lexicographically least one.

use super::{GameError, GameResult, SyncGame};
use crate::par;

/// Node budget for [`perfect_deterministic_search`].
pub const SEARCH_BUDGET: u64 = 100_000_000;

struct Search<'a> {
    g: &'a SyncGame,
    budget: u64,
    nodes: u64,
}

impl Search<'_> {
    /// Restricts the domains of inputs after `v` given `h(v) = a`.
    fn prune(&self, domains: &[Vec<usize>], v: usize, a: usize) -> Option<Vec<Vec<usize>>> {
        let mut next = domains.to_vec();
        for (w, dom) in next.iter_mut().enumerate().skip(v + 1) {
            dom.retain(|&b| self.g.lambda(v, w, a, b) && self.g.lambda(w, v, b, a));
            if dom.is_empty() {
                return None;
            }
        }
        Some(next)
    }

    fn dfs(&mut self, domains: Vec<Vec<usize>>, v: usize, h: &mut Vec<usize>) -> GameResult<bool> {
        if v == domains.len() {
            return Ok(true);
        }
        for &a in &domains[v] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(GameError::BudgetExceeded(SEARCH_BUDGET));
            }
            if let Some(next) = self.prune(&domains, v, a) {
                h.push(a);
                if self.dfs(next, v + 1, h)? {
                    return Ok(true);
                }
                h.pop();
            }
        }
        Ok(false)
    }
}

/// The lexicographically least perfect deterministic strategy, if any.
///
/// Top-level branches run in parallel, each with an equal share of the node
/// budget; the earliest branch that finds a map or exhausts its budget decides
/// the result, so the outcome does not depend on scheduling.
pub fn perfect_deterministic_search(g: &SyncGame) -> GameResult<Option<Vec<usize>>> {
    let domains: Vec<Vec<usize>> = (0..g.n_inputs()).map(|v| g.allowed(v).collect()).collect();
    if domains.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let first = domains[0].clone();
    let share = (SEARCH_BUDGET / first.len() as u64).max(1);
    let found = par::find_map_first(&first, |&a| {
        let mut s = Search {
            g,
            budget: share,
            nodes: 1,
        };
        let next = s.prune(&domains, 0, a)?;
        let mut h = vec![a];
        match s.dfs(next, 1, &mut h) {
            Ok(true) => Some(Ok(h)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        }
    });
    found.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{hom_game, iso_game};
    use crate::graph::Graph;

    fn brute(g: &SyncGame) -> Option<Vec<usize>> {
        let (ni, no) = (g.n_inputs(), g.n_outputs());
        let total = no.pow(ni as u32);
        (0..total).find_map(|mut code| {
            let mut h = vec![0; ni];
            for slot in h.iter_mut().rev() {
                *slot = code % no;
                code /= no;
            }
            g.is_winning_map(&h).then_some(h)
        })
    }

    #[test]
    fn colourings() {
        let k3 = Graph::complete(3).unwrap();
        let k4 = Graph::complete(4).unwrap();
        let h = perfect_deterministic_search(&hom_game(&k3, &k3).unwrap()).unwrap();
        assert_eq!(h, Some(vec![0, 1, 2]));
        assert_eq!(perfect_deterministic_search(&hom_game(&k4, &k3).unwrap()).unwrap(), None);
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(perfect_deterministic_search(&hom_game(&k5, &k4).unwrap()).unwrap(), None);
    }

    #[test]
    fn matches_brute_force() {
        let c5 = Graph::cycle(5).unwrap();
        let p3 = Graph::path(3).unwrap();
        let k2 = Graph::complete(2).unwrap();
        let games = [
            hom_game(&c5, &Graph::complete(3).unwrap()).unwrap(),
            hom_game(&c5, &k2).unwrap(),
            hom_game(&p3, &k2).unwrap(),
            iso_game(&p3, &p3).unwrap(),
            iso_game(&k2, &Graph::empty(2).unwrap()).unwrap(),
        ];
        for g in &games {
            assert_eq!(perfect_deterministic_search(g).unwrap(), brute(g), "{g:?}");
        }
    }

    #[test]
    fn iso_games() {
        let c5 = Graph::cycle(5).unwrap();
        let h = perfect_deterministic_search(&iso_game(&c5, &c5).unwrap()).unwrap().unwrap();
        assert!(iso_game(&c5, &c5).unwrap().is_winning_map(&h));
        let k3 = Graph::complete(3).unwrap();
        let none = perfect_deterministic_search(&iso_game(&k3, &k3.complement()).unwrap()).unwrap();
        assert_eq!(none, None);
    }
}
