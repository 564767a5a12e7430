//! Binary linear systems `Ax = b` over `Z_2`, their synchronous games and
//! graphs, and the magic-square instance.
//!
//! Bit vectors are `u64` values, little-endian by variable index: bit `j` is
//! `x_j`. Systems are limited to 64 variables and 64 equations.

use std::collections::BTreeSet;

use num_complex::Complex64;
use thiserror::Error;

use crate::game::{CMat, GameError, QuantumWitness, SyncGame};
use crate::graph::{Graph, GraphError};

/// Largest row support accepted by [`solution_sets`].
pub const MAX_ROW_SUPPORT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BcsError {
    #[error("row {0} has no variables")]
    EmptyRow(usize),

    #[error("system must have 1..=64 equations and variables, got {m}x{n}")]
    BadShape { m: usize, n: usize },

    #[error("row {row} has {len} entries, expected {n}")]
    RaggedRow { row: usize, len: usize, n: usize },

    #[error("row {row} has {size} variables, limit is {limit}")]
    RowTooWide { row: usize, size: usize, limit: usize },

    #[error("graph would have {got} vertices, limit is {limit}")]
    TooManyVertices { got: usize, limit: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error(transparent)]
    Game(#[from] GameError),
}

pub type BcsResult<T> = Result<T, BcsError>;

/// `m` equations in `n` variables over `Z_2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearSystemZ2 {
    n: usize,
    rows: Vec<u64>,
    b: Vec<bool>,
}

impl LinearSystemZ2 {
    /// `a[i][j]` is the coefficient of `x_j` in equation `i`.
    pub fn new(a: &[Vec<bool>], b: &[bool]) -> BcsResult<Self> {
        let m = a.len();
        let n = a.first().map_or(0, Vec::len);
        if m == 0 || m > 64 || n == 0 || n > 64 || b.len() != m {
            return Err(BcsError::BadShape { m, n });
        }
        let mut rows = Vec::with_capacity(m);
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(BcsError::RaggedRow {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            let mask = row
                .iter()
                .enumerate()
                .filter(|(_, &x)| x)
                .fold(0u64, |acc, (j, _)| acc | (1 << j));
            if mask == 0 {
                return Err(BcsError::EmptyRow(i));
            }
            rows.push(mask);
        }
        Ok(Self {
            n,
            rows,
            b: b.to_vec(),
        })
    }

    /// Builds a system from row supports given as variable lists.
    pub fn from_supports(n: usize, supports: &[&[usize]], b: &[bool]) -> BcsResult<Self> {
        let a: Vec<Vec<bool>> = supports
            .iter()
            .map(|s| (0..n).map(|j| s.contains(&j)).collect())
            .collect();
        Self::new(&a, b)
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Support `V_i` of row `i` as a bit mask.
    pub fn support(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn rhs(&self) -> &[bool] {
        &self.b
    }

    /// The same matrix with `b = 0`.
    pub fn homogeneous(&self) -> Self {
        Self {
            n: self.n,
            rows: self.rows.clone(),
            b: vec![false; self.rows.len()],
        }
    }

    pub fn satisfied_by(&self, x: u64) -> bool {
        self.rows
            .iter()
            .zip(&self.b)
            .all(|(&r, &bi)| ((r & x).count_ones() % 2 == 1) == bi)
    }

    /// Text format: `m n`, then `m` lines of `n` bits, then one line of `m`
    /// bits for `b`. Bits may be separated by whitespace.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.m(), self.n);
        for &r in &self.rows {
            let bits: Vec<&str> = (0..self.n).map(|j| if r >> j & 1 == 1 { "1" } else { "0" }).collect();
            out.push_str(&bits.join(" "));
            out.push('\n');
        }
        let bits: Vec<&str> = self.b.iter().map(|&x| if x { "1" } else { "0" }).collect();
        out.push_str(&bits.join(" "));
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> BcsResult<Self> {
        let err = |line: usize, msg: &str| BcsError::Parse {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing header `m n`"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(hl, "header must be two integers")))
            .collect::<BcsResult<_>>()?;
        let [m, n] = dims[..] else {
            return Err(err(hl, "header must be `m n`"));
        };
        let bits = |line: usize, s: &str, len: usize| -> BcsResult<Vec<bool>> {
            let v: Vec<bool> = s
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(err(line, "expected bits 0/1")),
                })
                .collect::<BcsResult<_>>()?;
            if v.len() != len {
                return Err(err(line, &format!("expected {len} bits, found {}", v.len())));
            }
            Ok(v)
        };
        let mut a = Vec::with_capacity(m);
        for _ in 0..m {
            let (l, s) = lines.next().ok_or_else(|| err(hl, "missing matrix rows"))?;
            a.push(bits(l, s, n)?);
        }
        let (bl, bs) = lines.next().ok_or_else(|| err(hl, "missing right-hand side"))?;
        let b = bits(bl, bs, m)?;
        if let Some((l, _)) = lines.next() {
            return Err(err(l, "trailing input"));
        }
        Self::new(&a, &b)
    }
}

/// Supports `V_i` and local solution sets `S_i^b` (ascending) per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSets {
    pub supports: Vec<u64>,
    pub sets: Vec<Vec<u64>>,
}

impl SolutionSets {
    /// `∪ S_i^b`, ascending.
    pub fn union(&self) -> Vec<u64> {
        let all: BTreeSet<u64> = self.sets.iter().flatten().copied().collect();
        all.into_iter().collect()
    }

    pub fn total(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    /// Vertices `(i, x)` of `G_{A,b}` in order.
    pub fn pairs(&self) -> Vec<(usize, u64)> {
        self.sets
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&x| (i, x)))
            .collect()
    }
}

/// Enumerates the bit vectors supported on each row that satisfy it.
pub fn solution_sets(sys: &LinearSystemZ2) -> BcsResult<SolutionSets> {
    let mut sets = Vec::with_capacity(sys.m());
    for (i, &v) in sys.rows.iter().enumerate() {
        let size = v.count_ones() as usize;
        if size > MAX_ROW_SUPPORT {
            return Err(BcsError::RowTooWide {
                row: i,
                size,
                limit: MAX_ROW_SUPPORT,
            });
        }
        let mut s = Vec::with_capacity(1 << (size - 1));
        // enumerate submasks of v in increasing order
        let mut x = 0u64;
        loop {
            if (x.count_ones() % 2 == 1) == sys.b[i] {
                s.push(x);
            }
            if x == v {
                break;
            }
            x = (x.wrapping_sub(v)) & v;
        }
        s.sort_unstable();
        sets.push(s);
    }
    Ok(SolutionSets {
        supports: sys.rows.clone(),
        sets,
    })
}

/// Formats `x` as `n` bits, `x_0` first.
pub fn bit_string(x: u64, n: usize) -> String {
    (0..n).map(|j| if x >> j & 1 == 1 { '1' } else { '0' }).collect()
}

/// The synchronous BCS game: inputs are equations, outputs are the local
/// solutions `∪ S_i^b`. Answers win iff each lies in its row's solution set
/// and they agree on shared variables.
pub fn sync_bcs_game(sys: &LinearSystemZ2) -> BcsResult<SyncGame> {
    let ss = solution_sets(sys)?;
    let outs = ss.union();
    let member: Vec<Vec<bool>> = ss
        .sets
        .iter()
        .map(|s| outs.iter().map(|x| s.binary_search(x).is_ok()).collect())
        .collect();
    let inputs = (0..sys.m()).map(|i| format!("r{i}")).collect();
    let outputs = outs.iter().map(|&x| bit_string(x, sys.n())).collect();
    Ok(SyncGame::new(inputs, outputs, |i, j, a, b| {
        let shared = ss.supports[i] & ss.supports[j];
        member[i][a] && member[j][b] && (outs[a] ^ outs[b]) & shared == 0
    })?)
}

/// `G_{A,b}`: vertices `(i, x)` with `x ∈ S_i^b` (rows ascending, then `x`
/// ascending), edges between inconsistent pairs.
pub fn graph_of_system(sys: &LinearSystemZ2) -> BcsResult<(Graph, Vec<(usize, u64)>)> {
    let ss = solution_sets(sys)?;
    let pairs = ss.pairs();
    if pairs.len() > crate::graph::MAX_SEARCH_VERTICES {
        return Err(BcsError::TooManyVertices {
            got: pairs.len(),
            limit: crate::graph::MAX_SEARCH_VERTICES,
        });
    }
    let mut edges = Vec::new();
    for (p, &(i, x)) in pairs.iter().enumerate() {
        for (q, &(j, y)) in pairs.iter().enumerate().skip(p + 1) {
            if (x ^ y) & ss.supports[i] & ss.supports[j] != 0 {
                edges.push((p, q));
            }
        }
    }
    Ok((Graph::from_edges(pairs.len(), &edges)?, pairs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solvability {
    Solution(u64),
    /// Rows whose sum is `(0 | 1)`.
    Inconsistent(Vec<usize>),
}

impl Solvability {
    pub fn solution(&self) -> Option<u64> {
        match self {
            Self::Solution(x) => Some(*x),
            Self::Inconsistent(_) => None,
        }
    }
}

/// Gaussian elimination over `Z_2`, tracking row combinations.
pub fn is_classically_solvable(sys: &LinearSystemZ2) -> Solvability {
    let m = sys.m();
    // (coefficients, rhs, combination of original rows)
    let mut rows: Vec<(u64, bool, u64)> = (0..m).map(|i| (sys.rows[i], sys.b[i], 1u64 << i)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..sys.n() {
        let Some(p) = (r..m).find(|&k| rows[k].0 >> col & 1 == 1) else {
            continue;
        };
        rows.swap(r, p);
        let piv = rows[r];
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row.0 >> col & 1 == 1 {
                row.0 ^= piv.0;
                row.1 ^= piv.1;
                row.2 ^= piv.2;
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if let Some(bad) = rows.iter().find(|row| row.0 == 0 && row.1) {
        return Solvability::Inconsistent((0..m).filter(|&i| bad.2 >> i & 1 == 1).collect());
    }
    let x = pivots
        .iter()
        .filter(|&&(row, _)| rows[row].1)
        .fold(0u64, |acc, &(_, col)| acc | (1 << col));
    debug_assert!(sys.satisfied_by(x));
    Solvability::Solution(x)
}

/// The Mermin–Peres magic square: variables `x_{3r+c}` on a 3x3 grid, every
/// row sums to 0, columns 0 and 1 sum to 0 and column 2 sums to 1.
pub fn magic_square_instance() -> LinearSystemZ2 {
    let supports: [&[usize]; 6] = [&[0, 1, 2], &[3, 4, 5], &[6, 7, 8], &[0, 3, 6], &[1, 4, 7], &[2, 5, 8]];
    LinearSystemZ2::from_supports(9, &supports, &[false, false, false, false, false, true])
        .expect("valid built-in system")
}

fn pauli(c: char) -> CMat {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let v = match c {
        'I' => [o, z, z, o],
        'X' => [z, o, o, z],
        'Y' => [z, -i, i, z],
        'Z' => [o, z, z, -o],
        _ => unreachable!("pauli label"),
    };
    CMat::from_row_slice(2, 2, &v)
}

fn two_qubit(label: &str) -> CMat {
    let mut c = label.chars();
    let a = pauli(c.next().unwrap());
    let b = pauli(c.next().unwrap());
    a.kronecker(&b)
}

/// Commuting two-qubit observables assigned to the nine variables.
pub const MAGIC_SQUARE_OPERATORS: [&str; 9] = ["XI", "IX", "XX", "IZ", "ZI", "ZZ", "XZ", "ZX", "YY"];

/// The `d = 4` witness for `sync_bcs_game(magic_square_instance())`:
/// `E_{i,x} = prod_{j in V_i} (I + (-1)^{x_j} O_j) / 2` for `x ∈ S_i^b` and
/// zero for other outputs. Outputs are indexed as in [`sync_bcs_game`].
pub fn magic_square_witness() -> QuantumWitness {
    let sys = magic_square_instance();
    let ss = solution_sets(&sys).expect("small rows");
    let outs = ss.union();
    let ops: Vec<CMat> = MAGIC_SQUARE_OPERATORS.iter().map(|l| two_qubit(l)).collect();
    let id = CMat::identity(4, 4);
    let e = (0..sys.m())
        .map(|i| {
            outs.iter()
                .map(|&x| {
                    if ss.sets[i].binary_search(&x).is_err() {
                        return CMat::zeros(4, 4);
                    }
                    (0..sys.n())
                        .filter(|&j| ss.supports[i] >> j & 1 == 1)
                        .fold(id.clone(), |acc, j| {
                            let sign = if x >> j & 1 == 1 { -1.0 } else { 1.0 };
                            let proj = (&id + &ops[j] * Complex64::new(sign, 0.0)) * Complex64::new(0.5, 0.0);
                            acc * proj
                        })
                })
                .collect()
        })
        .collect();
    QuantumWitness::new(4, e).expect("consistent shapes")
}

/// Pushes a syncBCS witness forward along `e_{(i,x),(j,y)} -> [i = j] e_{i,x+y}`
/// to a witness indexed by `V(G_{A,b}) x V(G_{A,0})`.
pub fn iso_witness_from_bcs(sys: &LinearSystemZ2, wit: &QuantumWitness) -> BcsResult<QuantumWitness> {
    let ss = solution_sets(sys)?;
    let outs = ss.union();
    if wit.n_inputs() != sys.m() || wit.n_outputs() != outs.len() {
        return Err(BcsError::Game(crate::game::GameError::ShapeMismatch(format!(
            "witness is {}x{}, game is {}x{}",
            wit.n_inputs(),
            wit.n_outputs(),
            sys.m(),
            outs.len()
        ))));
    }
    let (_, pb) = graph_of_system(sys)?;
    let (_, p0) = graph_of_system(&sys.homogeneous())?;
    let d = wit.dim();
    let e = pb
        .iter()
        .map(|&(i, x)| {
            p0.iter()
                .map(|&(j, y)| {
                    if i != j {
                        return CMat::zeros(d, d);
                    }
                    match outs.binary_search(&(x ^ y)) {
                        Ok(a) => wit.get(i, a).clone(),
                        Err(_) => CMat::zeros(d, d),
                    }
                })
                .collect()
        })
        .collect();
    Ok(QuantumWitness::new(d, e)?)
}
