//! Correlations `p(a, b | v, w)` and perfect-strategy checks.

use super::witness::QuantumWitness;
use super::{GameError, GameResult, SyncGame};

const PROB_TOL: f64 = 1e-9;

/// A conditional probability density over answers given questions.
#[derive(Debug, Clone, PartialEq)]
pub struct CondProb {
    n_in: usize,
    n_out: usize,
    p: Vec<f64>,
}

impl CondProb {
    /// Validates non-negativity and normalization (tolerance `1e-9`).
    /// `f(v, w, a, b)` gives `p(a, b | v, w)`.
    pub fn from_fn(n_in: usize, n_out: usize, f: impl Fn(usize, usize, usize, usize) -> f64) -> GameResult<Self> {
        let mut p = Vec::with_capacity(n_in * n_in * n_out * n_out);
        for v in 0..n_in {
            for w in 0..n_in {
                let mut total = 0.0;
                for a in 0..n_out {
                    for b in 0..n_out {
                        let x = f(v, w, a, b);
                        if !(x >= -PROB_TOL) {
                            return Err(GameError::InvalidStrategy(format!(
                                "p({a},{b}|{v},{w}) = {x} is negative"
                            )));
                        }
                        total += x;
                        p.push(x);
                    }
                }
                if (total - 1.0).abs() > PROB_TOL {
                    return Err(GameError::InvalidStrategy(format!(
                        "p(.|{v},{w}) sums to {total}"
                    )));
                }
            }
        }
        Ok(Self { n_in, n_out, p })
    }

    /// Point mass on the answers `h(v), h(w)`.
    pub fn deterministic(h: &[usize], n_out: usize) -> GameResult<Self> {
        if let Some(&a) = h.iter().find(|&&a| a >= n_out) {
            return Err(GameError::IndexOutOfRange(format!("output {a}")));
        }
        Self::from_fn(h.len(), n_out, |v, w, a, b| {
            f64::from(u8::from(h[v] == a && h[w] == b))
        })
    }

    /// Uniform answers regardless of the questions.
    pub fn uniform(n_in: usize, n_out: usize) -> Self {
        let x = 1.0 / (n_out * n_out) as f64;
        Self {
            n_in,
            n_out,
            p: vec![x; n_in * n_in * n_out * n_out],
        }
    }

    pub fn n_inputs(&self) -> usize {
        self.n_in
    }

    pub fn n_outputs(&self) -> usize {
        self.n_out
    }

    /// `p(a, b | v, w)`.
    pub fn get(&self, a: usize, b: usize, v: usize, w: usize) -> f64 {
        self.p[((v * self.n_in + w) * self.n_out + a) * self.n_out + b]
    }

    /// Flat table indexed `[v][w][a][b]`.
    pub fn table(&self) -> &[f64] {
        &self.p
    }

    pub fn from_table(n_in: usize, n_out: usize, table: &[f64]) -> GameResult<Self> {
        if table.len() != n_in * n_in * n_out * n_out {
            return Err(GameError::ShapeMismatch(format!(
                "table has {} entries, expected {}",
                table.len(),
                n_in * n_in * n_out * n_out
            )));
        }
        Self::from_fn(n_in, n_out, |v, w, a, b| {
            table[((v * n_in + w) * n_out + a) * n_out + b]
        })
    }
}

/// Whether `p` never answers a losing cell (up to `1e-9`).
pub fn is_perfect_strategy(p: &CondProb, g: &SyncGame) -> GameResult<bool> {
    if p.n_in != g.n_inputs() || p.n_out != g.n_outputs() {
        return Err(GameError::ShapeMismatch(format!(
            "strategy is {}x{}, game is {}x{}",
            p.n_in,
            p.n_out,
            g.n_inputs(),
            g.n_outputs()
        )));
    }
    Ok(g.zeros().all(|[v, w, a, b]| p.get(a, b, v, w) <= PROB_TOL))
}

/// The correlation `p(a, b | v, w) = tau(E_{v,a} E_{w,b})` with `tau` the
/// normalized trace on `M_d`.
pub fn strategy_from_witness(wit: &QuantumWitness, g: &SyncGame) -> GameResult<CondProb> {
    if wit.n_inputs() != g.n_inputs() || wit.n_outputs() != g.n_outputs() {
        return Err(GameError::ShapeMismatch(format!(
            "witness is {}x{}, game is {}x{}",
            wit.n_inputs(),
            wit.n_outputs(),
            g.n_inputs(),
            g.n_outputs()
        )));
    }
    let check = wit.check();
    if check.max_residual() > super::witness::DEFAULT_TOL {
        return Err(GameError::InvalidWitness(format!(
            "projection residual {:e}, row-sum residual {:e}",
            check.projection, check.row_sums
        )));
    }
    let d = wit.dim() as f64;
    CondProb::from_fn(wit.n_inputs(), wit.n_outputs(), |v, w, a, b| {
        let ea = wit.get(v, a);
        let eb = wit.get(w, b);
        // tr(E F) = sum_ij E_ij F_ji
        let mut tr = num_complex::Complex64::new(0.0, 0.0);
        for i in 0..ea.nrows() {
            for j in 0..ea.ncols() {
                tr += ea[(i, j)] * eb[(j, i)];
            }
        }
        (tr.re / d).max(0.0)
    })
}
