//! Finite-dimensional quantum witnesses: families of projections `E_{v,a}`
//! in `M_d` with `sum_a E_{v,a} = I`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GameError, GameResult};
use crate::graph::Graph;

pub const DEFAULT_TOL: f64 = 1e-10;

pub type CMat = DMatrix<Complex64>;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumWitness {
    d: usize,
    n_in: usize,
    n_out: usize,
    e: Vec<CMat>,
}

/// Residuals of the witness invariants (Frobenius norms, maximum over the
/// family).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessCheck {
    /// `max ||E^2 - E|| + ||E* - E||`.
    pub projection: f64,
    /// `max_v ||sum_a E_{v,a} - I||`.
    pub row_sums: f64,
}

impl WitnessCheck {
    pub fn max_residual(&self) -> f64 {
        self.projection.max(self.row_sums)
    }
}

impl QuantumWitness {
    /// `e[v][a]` is `E_{v,a}`; every matrix must be `d x d`.
    pub fn new(d: usize, e: Vec<Vec<CMat>>) -> GameResult<Self> {
        let n_in = e.len();
        let n_out = e.first().map_or(0, Vec::len);
        if n_in == 0 || n_out == 0 || d == 0 {
            return Err(GameError::InvalidWitness("empty family".into()));
        }
        let mut flat = Vec::with_capacity(n_in * n_out);
        for (v, row) in e.into_iter().enumerate() {
            if row.len() != n_out {
                return Err(GameError::ShapeMismatch(format!(
                    "input {v} has {} outputs, expected {n_out}",
                    row.len()
                )));
            }
            for (a, m) in row.into_iter().enumerate() {
                if m.nrows() != d || m.ncols() != d {
                    return Err(GameError::ShapeMismatch(format!(
                        "E[{v}][{a}] is {}x{}, expected {d}x{d}",
                        m.nrows(),
                        m.ncols()
                    )));
                }
                flat.push(m);
            }
        }
        Ok(Self {
            d,
            n_in,
            n_out,
            e: flat,
        })
    }

    /// The one-dimensional witness of a deterministic map.
    pub fn deterministic(h: &[usize], n_out: usize) -> GameResult<Self> {
        let e = h
            .iter()
            .map(|&ha| {
                (0..n_out)
                    .map(|a| CMat::from_element(1, 1, Complex64::new(f64::from(u8::from(a == ha)), 0.0)))
                    .collect()
            })
            .collect();
        Self::new(1, e)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn n_inputs(&self) -> usize {
        self.n_in
    }

    pub fn n_outputs(&self) -> usize {
        self.n_out
    }

    pub fn get(&self, v: usize, a: usize) -> &CMat {
        &self.e[v * self.n_out + a]
    }

    pub fn check(&self) -> WitnessCheck {
        let id = CMat::identity(self.d, self.d);
        let projection = self
            .e
            .iter()
            .map(|m| (m * m - m).norm() + (m.adjoint() - m).norm())
            .fold(0.0, f64::max);
        let row_sums = (0..self.n_in)
            .map(|v| {
                let s = (0..self.n_out).fold(CMat::zeros(self.d, self.d), |acc, a| acc + self.get(v, a));
                (s - &id).norm()
            })
            .fold(0.0, f64::max);
        WitnessCheck {
            projection,
            row_sums,
        }
    }

    pub fn to_json(&self) -> WitnessJson {
        let e = (0..self.n_in)
            .map(|v| {
                (0..self.n_out)
                    .map(|a| {
                        let m = self.get(v, a);
                        let mut flat = Vec::with_capacity(self.d * self.d);
                        for i in 0..self.d {
                            for j in 0..self.d {
                                flat.push([m[(i, j)].re, m[(i, j)].im]);
                            }
                        }
                        flat
                    })
                    .collect()
            })
            .collect();
        WitnessJson {
            d: self.d,
            inputs: self.n_in,
            outputs: self.n_out,
            e,
        }
    }

    pub fn from_json(wj: &WitnessJson) -> GameResult<Self> {
        if wj.e.len() != wj.inputs {
            return Err(GameError::ShapeMismatch(format!(
                "{} input rows, header says {}",
                wj.e.len(),
                wj.inputs
            )));
        }
        let mut e = Vec::with_capacity(wj.inputs);
        for (v, row) in wj.e.iter().enumerate() {
            if row.len() != wj.outputs {
                return Err(GameError::ShapeMismatch(format!(
                    "input {v} has {} matrices, header says {}",
                    row.len(),
                    wj.outputs
                )));
            }
            let mut mats = Vec::with_capacity(row.len());
            for (a, flat) in row.iter().enumerate() {
                if flat.len() != wj.d * wj.d {
                    return Err(GameError::ShapeMismatch(format!(
                        "E[{v}][{a}] has {} entries, expected {}",
                        flat.len(),
                        wj.d * wj.d
                    )));
                }
                mats.push(CMat::from_fn(wj.d, wj.d, |i, j| {
                    let [re, im] = flat[i * wj.d + j];
                    Complex64::new(re, im)
                }));
            }
            e.push(mats);
        }
        Self::new(wj.d, e)
    }
}

/// Serialized witness: `E[v][a]` is a row-major list of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub d: usize,
    pub inputs: usize,
    pub outputs: usize,
    #[serde(rename = "E")]
    pub e: Vec<Vec<Vec<[f64; 2]>>>,
}

/// Residuals of the magic-unitary identities for `U = (E_{g,h})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MagicUnitaryReport {
    pub projection: f64,
    pub row_sums: f64,
    pub column_sums: f64,
    pub row_orthogonality: f64,
    pub column_orthogonality: f64,
    /// `sum_{g'} A_X[g,g'] E_{g',h} - sum_{h'} E_{g,h'} A_Y[h',h]`.
    pub intertwining: f64,
    pub tol: f64,
}

impl MagicUnitaryReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.projection,
            self.row_sums,
            self.column_sums,
            self.row_orthogonality,
            self.column_orthogonality,
            self.intertwining,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn pass(&self) -> bool {
        self.max_residual() <= self.tol
    }
}

/// Checks that the witness indexed by `V(x) x V(y)` is a quantum permutation
/// intertwining the adjacency matrices, which certifies a quantum isomorphism
/// `x -> y`.
pub fn verify_magic_unitary_witness(
    wit: &QuantumWitness,
    x: &Graph,
    y: &Graph,
    tol: f64,
) -> GameResult<MagicUnitaryReport> {
    let (nx, ny) = (x.n(), y.n());
    if wit.n_inputs() != nx || wit.n_outputs() != ny {
        return Err(GameError::ShapeMismatch(format!(
            "witness is {}x{}, graphs have {nx} and {ny} vertices",
            wit.n_inputs(),
            wit.n_outputs()
        )));
    }
    let d = wit.dim();
    let id = CMat::identity(d, d);
    let zero = || CMat::zeros(d, d);
    let base = wit.check();
    let column_sums = (0..ny)
        .map(|h| ((0..nx).fold(zero(), |acc, g| acc + wit.get(g, h)) - &id).norm())
        .fold(0.0, f64::max);
    let mut row_orth: f64 = 0.0;
    let mut col_orth: f64 = 0.0;
    for g in 0..nx {
        for h in 0..ny {
            for h2 in 0..ny {
                if h2 != h {
                    row_orth = row_orth.max((wit.get(g, h) * wit.get(g, h2)).norm());
                }
            }
            for g2 in 0..nx {
                if g2 != g {
                    col_orth = col_orth.max((wit.get(g, h) * wit.get(g2, h)).norm());
                }
            }
        }
    }
    let mut intertwining: f64 = 0.0;
    for g in 0..nx {
        for h in 0..ny {
            let lhs = x.neighbors(g).fold(zero(), |acc, g2| acc + wit.get(g2, h));
            let rhs = y.neighbors(h).fold(zero(), |acc, h2| acc + wit.get(g, h2));
            intertwining = intertwining.max((lhs - rhs).norm());
        }
    }
    Ok(MagicUnitaryReport {
        projection: base.projection,
        row_sums: base.row_sums,
        column_sums,
        row_orthogonality: row_orth,
        column_orthogonality: col_orth,
        intertwining,
        tol,
    })
}
