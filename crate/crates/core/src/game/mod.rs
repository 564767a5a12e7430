//! Synchronous games as dense predicate tables.
//!
//! A game has inputs `I`, outputs `O` and a predicate `lambda(v, w, a, b)` in
//! `{0, 1}`: on questions `(v, w)` the answers `(a, b)` win iff `lambda = 1`.
//! Synchronicity requires `lambda(v, v, a, b) = 0` whenever `a != b`.

mod search;
mod strategy;
mod witness;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub use search::{perfect_deterministic_search, SEARCH_BUDGET};
pub use strategy::{is_perfect_strategy, strategy_from_witness, CondProb};
pub use witness::{
    verify_magic_unitary_witness, CMat, MagicUnitaryReport, QuantumWitness, WitnessCheck, WitnessJson,
    DEFAULT_TOL,
};

/// Largest accepted table size `|I|^2 |O|^2`.
pub const MAX_TABLE: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("predicate table would have {cells} cells, limit is {limit}")]
    TooLarge { cells: usize, limit: usize },

    #[error("game is not synchronous: lambda({v}, {v}, {a}, {b}) = 1 with {a} != {b}")]
    NotSynchronous { v: usize, a: usize, b: usize },

    #[error("game needs at least one input and one output")]
    Empty,

    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("index out of range in {0}")]
    IndexOutOfRange(String),

    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type GameResult<T> = Result<T, GameError>;

/// A synchronous game with labeled inputs and outputs.
#[derive(Clone, PartialEq, Eq)]
pub struct SyncGame {
    inputs: Vec<String>,
    outputs: Vec<String>,
    table: Vec<bool>,
}

impl std::fmt::Debug for SyncGame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SyncGame")
            .field("inputs", &self.inputs.len())
            .field("outputs", &self.outputs.len())
            .field("zeros", &self.zero_count())
            .finish()
    }
}

impl SyncGame {
    /// Tabulates `lambda` and checks synchronicity.
    ///
    /// `lambda(v, v, a, a) = 0` is allowed: it marks `a` as a forbidden answer
    /// to `v`, which is how constraint-system games exclude non-solutions.
    pub fn new(
        inputs: Vec<String>,
        outputs: Vec<String>,
        lambda: impl Fn(usize, usize, usize, usize) -> bool,
    ) -> GameResult<Self> {
        let (ni, no) = (inputs.len(), outputs.len());
        if ni == 0 || no == 0 {
            return Err(GameError::Empty);
        }
        let cells = ni
            .checked_mul(ni)
            .and_then(|x| x.checked_mul(no))
            .and_then(|x| x.checked_mul(no))
            .unwrap_or(usize::MAX);
        if cells > MAX_TABLE {
            return Err(GameError::TooLarge {
                cells,
                limit: MAX_TABLE,
            });
        }
        let mut table = Vec::with_capacity(cells);
        for v in 0..ni {
            for w in 0..ni {
                for a in 0..no {
                    for b in 0..no {
                        let win = lambda(v, w, a, b);
                        if v == w && a != b && win {
                            return Err(GameError::NotSynchronous { v, a, b });
                        }
                        table.push(win);
                    }
                }
            }
        }
        Ok(Self {
            inputs,
            outputs,
            table,
        })
    }

    pub fn n_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    fn idx(&self, v: usize, w: usize, a: usize, b: usize) -> usize {
        let (ni, no) = (self.inputs.len(), self.outputs.len());
        ((v * ni + w) * no + a) * no + b
    }

    /// Panics on out-of-range indices.
    pub fn lambda(&self, v: usize, w: usize, a: usize, b: usize) -> bool {
        assert!(v < self.n_inputs() && w < self.n_inputs(), "input out of range");
        assert!(a < self.n_outputs() && b < self.n_outputs(), "output out of range");
        self.table[self.idx(v, w, a, b)]
    }

    /// Outputs `a` with `lambda(v, v, a, a) = 1`.
    pub fn allowed(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_outputs()).filter(move |&a| self.lambda(v, v, a, a))
    }

    /// All losing cells `(v, w, a, b)` in lexicographic order.
    pub fn zeros(&self) -> impl Iterator<Item = [usize; 4]> + '_ {
        let (ni, no) = (self.inputs.len(), self.outputs.len());
        self.table.iter().enumerate().filter(|(_, &x)| !x).map(move |(i, _)| {
            let b = i % no;
            let a = (i / no) % no;
            let w = (i / (no * no)) % ni;
            let v = i / (no * no * ni);
            [v, w, a, b]
        })
    }

    pub fn zero_count(&self) -> usize {
        self.table.iter().filter(|&&x| !x).count()
    }

    /// Whether `h` (one output per input) wins on every question pair.
    pub fn is_winning_map(&self, h: &[usize]) -> bool {
        h.len() == self.n_inputs()
            && h.iter().all(|&a| a < self.n_outputs())
            && (0..h.len()).all(|v| (0..h.len()).all(|w| self.lambda(v, w, h[v], h[w])))
    }

    pub fn to_json(&self) -> GameJson {
        GameJson {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            zeros: self.zeros().collect(),
        }
    }

    pub fn from_json(gj: &GameJson) -> GameResult<Self> {
        let (ni, no) = (gj.inputs.len(), gj.outputs.len());
        for z in &gj.zeros {
            if z[0] >= ni || z[1] >= ni || z[2] >= no || z[3] >= no {
                return Err(GameError::IndexOutOfRange(format!("zero cell {z:?}")));
            }
        }
        let zeros: std::collections::HashSet<[usize; 4]> = gj.zeros.iter().copied().collect();
        Self::new(gj.inputs.clone(), gj.outputs.clone(), |v, w, a, b| {
            !zeros.contains(&[v, w, a, b])
        })
    }
}

/// JSON dump listing only the losing cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameJson {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub zeros: Vec<[usize; 4]>,
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// The graph homomorphism game: adjacent questions need adjacent answers.
pub fn hom_game(x: &Graph, y: &Graph) -> GameResult<SyncGame> {
    SyncGame::new(labels("", x.n()), labels("", y.n()), |v, w, a, b| {
        let bad_edge = x.has_edge(v, w) && !y.has_edge(a, b);
        let bad_sync = v == w && a != b;
        !(bad_edge || bad_sync)
    })
}

/// The graph isomorphism game on `V(x) ⊔ V(y)`: index `i < x.n()` is vertex
/// `i` of `x`, index `x.n() + j` is vertex `j` of `y`.
pub fn iso_game(x: &Graph, y: &Graph) -> GameResult<SyncGame> {
    let nx = x.n();
    let side = |i: usize| i >= nx;
    let rel = |i: usize, j: usize| -> i8 {
        if side(i) {
            y.rel_unchecked(i - nx, j - nx)
        } else {
            x.rel_unchecked(i, j)
        }
    };
    let mut names = labels("x", nx);
    names.extend(labels("y", y.n()));
    SyncGame::new(names.clone(), names, |v, w, a, b| {
        // answers lie in the opposite graph
        if side(a) == side(v) || side(b) == side(w) {
            return false;
        }
        if side(v) == side(w) {
            rel(v, w) == rel(a, b)
        } else {
            (a != w || b == v) && (b != v || a == w)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_k2() {
        let k2 = Graph::complete(2).unwrap();
        let g = hom_game(&k2, &k2).unwrap();
        assert!(!g.lambda(0, 1, 0, 0));
        assert!(!g.lambda(0, 1, 1, 1));
        assert!(g.lambda(0, 1, 0, 1));
        assert!(!g.lambda(0, 0, 0, 1));
    }

    #[test]
    fn iso_k2_sync() {
        let k2 = Graph::complete(2).unwrap();
        let g = iso_game(&k2, &k2).unwrap();
        for v in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    if a != b {
                        assert!(!g.lambda(v, v, a, b));
                    }
                }
            }
        }
        // x0 -> y0 and y0 -> x0 is consistent
        assert!(g.lambda(0, 2, 2, 0));
        assert!(!g.lambda(0, 2, 2, 1));
    }

    #[test]
    fn rejects_non_synchronous() {
        let r = SyncGame::new(labels("", 1), labels("", 2), |_, _, _, _| true);
        assert_eq!(r.unwrap_err(), GameError::NotSynchronous { v: 0, a: 0, b: 1 });
        let big = SyncGame::new(labels("", 100), labels("", 100), |_, _, a, b| a == b);
        assert!(matches!(big, Err(GameError::TooLarge { .. })));
    }

    #[test]
    fn json_round_trip() {
        let g = hom_game(&Graph::cycle(5).unwrap(), &Graph::complete(3).unwrap()).unwrap();
        let back = SyncGame::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }
}
