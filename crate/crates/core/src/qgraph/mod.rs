//! Quantum sets and quantum graphs.
//!
//! A quantum set is a multimatrix algebra `⊕ M_{n(i)}` with the faithful
//! state `ψ = ⊕ Tr(Q_i ·)`. It carries a δ-form when `Tr(Q_i^{-1}) = δ²` for
//! every block, in which case `m m* = δ² ι` on `L²(X)`. A quantum graph adds
//! a quantum adjacency operator `A`.
//!
//! Sets built from rational tracial weights (`Q_i = c_i I`) are handled in
//! exact arithmetic in the matrix-unit basis; general weights use complex
//! floats. Adjacency operators are exchanged in the orthonormal GNS basis
//! obtained by Gram-Schmidt on the matrix units (blocks in order, row-major).

mod frame;
mod presentation;
mod scalar;

use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::CMat;
use crate::graph::Graph;
use crate::Rational;
use frame::Frame;

pub use presentation::{qaut_presentation, qiso_presentation};
pub use scalar::{Mat, Scalar};

/// Absolute tolerance of the floating path.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QgraphError {
    #[error("a quantum set needs at least one block")]
    NoBlocks,

    #[error("block {0} has size zero")]
    EmptyBlock(usize),

    #[error("{blocks} blocks but {weights} weight matrices")]
    WeightCount { blocks: usize, weights: usize },

    #[error("weight {block} has {got} entries, expected {expected}")]
    WeightShape {
        block: usize,
        expected: usize,
        got: usize,
    },

    #[error("weight {0} is not Hermitian")]
    NotHermitian(usize),

    #[error("weight {block} is not positive definite (smallest eigenvalue {min})")]
    NotPositive { block: usize, min: f64 },

    #[error("weights have total trace {0}, expected 1")]
    TraceNotOne(f64),

    #[error("weight {0} is singular")]
    Singular(usize),

    #[error("the quantum set carries no δ-form")]
    NoDeltaForm,

    #[error("operator has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("presentations need exact (rational tracial) quantum graphs")]
    NotExact,

    #[error("invalid quantum graph JSON: {0}")]
    Json(String),
}

pub type QgraphResult<T> = Result<T, QgraphError>;

/// `⊕ M_{n(i)}` with weights `Q_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumSet {
    blocks: Vec<usize>,
    weights: Vec<CMat>,
    /// `c_i` when `Q_i = c_i I` with rational `c_i`.
    tracial: Option<Vec<Rational>>,
}

impl QuantumSet {
    /// Validates Hermitian positive definite weights of total trace one.
    pub fn new(blocks: Vec<usize>, weights: Vec<CMat>) -> QgraphResult<Self> {
        check_blocks(&blocks)?;
        if weights.len() != blocks.len() {
            return Err(QgraphError::WeightCount {
                blocks: blocks.len(),
                weights: weights.len(),
            });
        }
        let mut total = 0.0f64;
        for (i, (q, &n)) in weights.iter().zip(&blocks).enumerate() {
            if q.nrows() != n || q.ncols() != n {
                return Err(QgraphError::WeightShape {
                    block: i,
                    expected: n * n,
                    got: q.nrows() * q.ncols(),
                });
            }
            if (q - q.adjoint()).norm() > DEFAULT_TOL * q.norm().max(1.0) {
                return Err(QgraphError::NotHermitian(i));
            }
            let min = SymmetricEigen::new(q.clone())
                .eigenvalues
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min);
            if min <= DEFAULT_TOL {
                return Err(QgraphError::NotPositive { block: i, min });
            }
            total += q.trace().re;
        }
        if (total - 1.0).abs() > DEFAULT_TOL {
            return Err(QgraphError::TraceNotOne(total));
        }
        Ok(Self {
            blocks,
            weights,
            tracial: None,
        })
    }

    /// `Q_i = c_i I` with exact rational `c_i > 0` and `sum n(i) c_i = 1`.
    pub fn tracial(blocks: Vec<usize>, scalars: Vec<Rational>) -> QgraphResult<Self> {
        check_blocks(&blocks)?;
        if scalars.len() != blocks.len() {
            return Err(QgraphError::WeightCount {
                blocks: blocks.len(),
                weights: scalars.len(),
            });
        }
        let mut total = <Rational as Zero>::zero();
        for (i, (c, &n)) in scalars.iter().zip(&blocks).enumerate() {
            if *c <= <Rational as Zero>::zero() {
                return Err(QgraphError::NotPositive {
                    block: i,
                    min: c.to_f64().unwrap_or(0.0),
                });
            }
            total += c * Rational::from_integer(n.into());
        }
        if !One::is_one(&total) {
            return Err(QgraphError::TraceNotOne(total.to_f64().unwrap_or(f64::NAN)));
        }
        let weights = blocks
            .iter()
            .zip(&scalars)
            .map(|(&n, c)| CMat::identity(n, n) * Complex64::from_rational(c))
            .collect();
        Ok(Self {
            blocks,
            weights,
            tracial: Some(scalars),
        })
    }

    /// `n` classical points with the uniform measure.
    pub fn uniform(n: usize) -> QgraphResult<Self> {
        let c = Rational::new(1.into(), n.max(1).into());
        Self::tracial(vec![1; n], vec![c; n])
    }

    /// `M_n` with the normalized trace.
    pub fn matrix_algebra(n: usize) -> QgraphResult<Self> {
        Self::tracial(vec![n], vec![Rational::new(1.into(), n.max(1).into())])
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn weights(&self) -> &[CMat] {
        &self.weights
    }

    /// `d = sum n(i)²`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|n| n * n).sum()
    }

    pub fn is_exact(&self) -> bool {
        self.tracial.is_some()
    }

    fn exact_frame(&self) -> Option<Frame<Rational>> {
        let cs = self.tracial.as_ref()?;
        let ws: Vec<Mat<Rational>> = self
            .blocks
            .iter()
            .zip(cs)
            .map(|(&n, c)| Mat::identity(n).scale(c))
            .collect();
        Frame::new(&self.blocks, &ws)
    }

    fn float_frame(&self) -> QgraphResult<Frame<Complex64>> {
        let ws: Vec<Mat<Complex64>> = self.weights.iter().map(Mat::from_nalgebra).collect();
        Frame::new(&self.blocks, &ws).ok_or(QgraphError::Singular(0))
    }

    /// Orthonormal GNS basis as columns in matrix-unit coordinates.
    fn onb(&self) -> QgraphResult<CMat> {
        let frame = self.float_frame()?;
        let g = frame.gram.to_nalgebra();
        let d = frame.d;
        let mut p = CMat::zeros(d, d);
        for s in 0..d {
            let mut v = DVector::<Complex64>::zeros(d);
            v[s] = Complex64::new(1.0, 0.0);
            for t in 0..s {
                let u = p.column(t).into_owned();
                let c = (u.adjoint() * &g * &v)[(0, 0)];
                v -= u * c;
            }
            let norm = (v.adjoint() * &g * &v)[(0, 0)].re.sqrt();
            if norm <= DEFAULT_TOL {
                return Err(QgraphError::Singular(s));
            }
            p.set_column(s, &(v / Complex64::new(norm, 0.0)));
        }
        Ok(p)
    }

    /// The weight `c_i` of each coordinate of a tracial set.
    fn tracial_scale(&self) -> Option<Vec<Rational>> {
        let cs = self.tracial.as_ref()?;
        Some(
            self.blocks
                .iter()
                .zip(cs)
                .flat_map(|(&n, c)| std::iter::repeat_n(c.clone(), n * n))
                .collect(),
        )
    }

    /// Converts an operator from matrix-unit to orthonormal coordinates.
    fn to_onb(&self, a_unit: &CMat, exact_scale: Option<&[Rational]>) -> QgraphResult<CMat> {
        if let Some(cs) = exact_scale {
            let d = cs.len();
            return Ok(CMat::from_fn(d, d, |p, q| {
                let v = a_unit[(p, q)];
                if cs[p] == cs[q] {
                    v
                } else {
                    v * (cs[p].to_f64().unwrap() / cs[q].to_f64().unwrap()).sqrt()
                }
            }));
        }
        let p = self.onb()?;
        let pinv = p.clone().try_inverse().ok_or(QgraphError::Singular(0))?;
        Ok(pinv * a_unit * p)
    }

    fn from_onb(&self, a_onb: &CMat) -> QgraphResult<CMat> {
        let p = self.onb()?;
        let pinv = p.clone().try_inverse().ok_or(QgraphError::Singular(0))?;
        Ok(p * a_onb * pinv)
    }
}

fn check_blocks(blocks: &[usize]) -> QgraphResult<()> {
    if blocks.is_empty() {
        return Err(QgraphError::NoBlocks);
    }
    match blocks.iter().position(|&n| n == 0) {
        Some(i) => Err(QgraphError::EmptyBlock(i)),
        None => Ok(()),
    }
}

/// `δ²` for a tracial set, when every block gives the same `Tr(Q_i^{-1})`.
pub fn delta_squared_exact(qs: &QuantumSet) -> Option<Rational> {
    let cs = qs.tracial.as_ref()?;
    let mut vals = qs
        .blocks
        .iter()
        .zip(cs)
        .map(|(&n, c)| Rational::from_integer(n.into()) / c);
    let first = vals.next()?;
    vals.all(|v| v == first).then_some(first)
}

/// Exact check of `m m* = δ² ι` for tracial sets with a δ-form.
pub fn exact_delta_identity(qs: &QuantumSet) -> Option<bool> {
    let d2 = delta_squared_exact(qs)?;
    let frame = qs.exact_frame()?;
    Some(frame.m_m_star() == Mat::identity(frame.d).scale(&d2))
}

/// `δ` with `Tr(Q_i^{-1}) = δ²` for all blocks, if such a `δ` exists.
pub fn delta_form(qs: &QuantumSet) -> QgraphResult<Option<f64>> {
    if qs.is_exact() {
        return Ok(delta_squared_exact(qs).map(|d2| d2.to_f64().unwrap().sqrt()));
    }
    let mut vals = Vec::with_capacity(qs.blocks.len());
    for (i, q) in qs.weights.iter().enumerate() {
        let inv = q.clone().try_inverse().ok_or(QgraphError::Singular(i))?;
        vals.push(inv.trace().re);
    }
    let first = vals[0];
    let same = vals
        .iter()
        .all(|v| (v - first).abs() <= DEFAULT_TOL * first.abs().max(1.0));
    Ok(same.then(|| first.sqrt()))
}

/// Multiplication and unit in the orthonormal GNS basis.
#[derive(Debug, Clone)]
pub struct StructureTensors {
    pub d: usize,
    /// `d x d²`, column `s d + t` is `f_s f_t`.
    pub m: CMat,
    pub m_star: CMat,
    /// `d x 1`, the unit.
    pub eta: CMat,
    pub eta_star: CMat,
}

impl StructureTensors {
    /// `||m m* - δ² ι||`.
    pub fn delta_residual(&self, delta_sq: f64) -> f64 {
        let id = CMat::identity(self.d, self.d);
        (&self.m * &self.m_star - id * Complex64::new(delta_sq, 0.0)).norm()
    }

    /// `||m(η ⊗ v) - v||`.
    pub fn unit_residual(&self, v: &DVector<Complex64>) -> f64 {
        let d = self.d;
        let mut x = DVector::<Complex64>::zeros(d * d);
        for s in 0..d {
            for t in 0..d {
                x[s * d + t] = self.eta[(s, 0)] * v[t];
            }
        }
        (&self.m * x - v).norm()
    }
}

pub fn structure_tensors(qs: &QuantumSet) -> QgraphResult<StructureTensors> {
    delta_form(qs)?.ok_or(QgraphError::NoDeltaForm)?;
    let frame = qs.float_frame()?;
    let p = qs.onb()?;
    let pinv = p.clone().try_inverse().ok_or(QgraphError::Singular(0))?;
    let d = frame.d;
    let mut m_unit = CMat::zeros(d, d * d);
    for s in 0..d {
        for t in 0..d {
            for a in 0..d {
                if p[(a, s)] == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for b in 0..d {
                    if let Some(r) = frame.mult(a, b) {
                        m_unit[(r, s * d + t)] += p[(a, s)] * p[(b, t)];
                    }
                }
            }
        }
    }
    let m = &pinv * m_unit;
    let unit = DVector::from_vec(frame.unit.clone());
    let eta = CMat::from_column_slice(d, 1, (&pinv * unit).as_slice());
    Ok(StructureTensors {
        d,
        m_star: m.adjoint(),
        m,
        eta_star: eta.adjoint(),
        eta,
    })
}

/// A quantum set with a δ-form and an operator `A` on `L²(X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumGraph {
    qset: QuantumSet,
    delta: f64,
    /// `A` in the orthonormal basis.
    a: CMat,
    /// `δ²` and `A` in the matrix-unit basis, for exact sets.
    exact: Option<(Rational, Mat<Rational>)>,
}

impl QuantumGraph {
    /// `a` is given in the orthonormal GNS basis.
    pub fn new(qset: QuantumSet, a: CMat) -> QgraphResult<Self> {
        let delta = delta_form(&qset)?.ok_or(QgraphError::NoDeltaForm)?;
        let d = qset.dim();
        if a.nrows() != d || a.ncols() != d {
            return Err(QgraphError::DimensionMismatch {
                expected: d,
                got: a.nrows().max(a.ncols()),
            });
        }
        Ok(Self {
            qset,
            delta,
            a,
            exact: None,
        })
    }

    /// `a` is given exactly in the matrix-unit basis of a tracial set.
    pub fn exact(qset: QuantumSet, a: Mat<Rational>) -> QgraphResult<Self> {
        let d2 = delta_squared_exact(&qset).ok_or(QgraphError::NoDeltaForm)?;
        let d = qset.dim();
        if a.rows() != d || a.cols() != d {
            return Err(QgraphError::DimensionMismatch {
                expected: d,
                got: a.rows().max(a.cols()),
            });
        }
        let scale = qset.tracial_scale().expect("tracial set");
        let onb = qset.to_onb(&a.to_complex().to_nalgebra(), Some(&scale))?;
        Ok(Self {
            delta: d2.to_f64().unwrap().sqrt(),
            qset,
            a: onb,
            exact: Some((d2, a)),
        })
    }

    /// Commutative quantum set on `V(g)` with the uniform measure and
    /// `A = adjacency + I`, so `δ = √n`.
    pub fn from_classical(g: &Graph) -> QgraphResult<Self> {
        let n = g.n();
        let a = Mat::from_fn(n, n, |i, j| {
            Rational::from_integer(i64::from(i == j || g.has_edge(i, j)).into())
        });
        Self::exact(QuantumSet::uniform(n)?, a)
    }

    /// The quantum complete graph `A = δ² ψ(·) 1`.
    pub fn complete(qset: QuantumSet) -> QgraphResult<Self> {
        if let Some(frame) = qset.exact_frame() {
            let d2 = delta_squared_exact(&qset).ok_or(QgraphError::NoDeltaForm)?;
            let a = frame.complete_operator(&d2);
            return Self::exact(qset, a);
        }
        let delta = delta_form(&qset)?.ok_or(QgraphError::NoDeltaForm)?;
        let frame = qset.float_frame()?;
        let a_unit = frame.complete_operator(&Complex64::new(delta * delta, 0.0));
        let a = qset.to_onb(&a_unit.to_nalgebra(), None)?;
        Self::new(qset, a)
    }

    pub fn qset(&self) -> &QuantumSet {
        &self.qset
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `A` in the orthonormal basis.
    pub fn adjacency(&self) -> &CMat {
        &self.a
    }

    /// `(δ², A)` in the matrix-unit basis, for exact graphs.
    pub fn exact_adjacency(&self) -> Option<(&Rational, &Mat<Rational>)> {
        self.exact.as_ref().map(|(d, a)| (d, a))
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn to_json(&self) -> QuantumGraphJson {
        let pairs = |m: &CMat| -> Vec<[f64; 2]> {
            let mut v = Vec::with_capacity(m.len());
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    v.push([m[(i, j)].re, m[(i, j)].im]);
                }
            }
            v
        };
        QuantumGraphJson {
            blocks: self.qset.blocks.clone(),
            weights: self.qset.weights.iter().map(pairs).collect(),
            a: pairs(&self.a),
        }
    }

    pub fn from_json(j: &QuantumGraphJson) -> QgraphResult<Self> {
        let mat = |n: usize, v: &[[f64; 2]], block: usize| -> QgraphResult<CMat> {
            if v.len() != n * n {
                return Err(QgraphError::WeightShape {
                    block,
                    expected: n * n,
                    got: v.len(),
                });
            }
            Ok(CMat::from_fn(n, n, |i, k| {
                let [re, im] = v[i * n + k];
                Complex64::new(re, im)
            }))
        };
        check_blocks(&j.blocks)?;
        if j.weights.len() != j.blocks.len() {
            return Err(QgraphError::WeightCount {
                blocks: j.blocks.len(),
                weights: j.weights.len(),
            });
        }
        let weights = j
            .blocks
            .iter()
            .zip(&j.weights)
            .enumerate()
            .map(|(i, (&n, w))| mat(n, w, i))
            .collect::<QgraphResult<Vec<_>>>()?;
        let qset = QuantumSet::new(j.blocks.clone(), weights)?;
        let d = qset.dim();
        if j.a.len() != d * d {
            return Err(QgraphError::DimensionMismatch {
                expected: d,
                got: (j.a.len() as f64).sqrt() as usize,
            });
        }
        let a = mat(d, &j.a, 0)?;
        Self::new(qset, a)
    }
}

/// Serialized quantum graph: matrices are row-major lists of `[re, im]`
/// pairs; `A` is in the orthonormal GNS basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumGraphJson {
    pub blocks: Vec<usize>,
    pub weights: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "A")]
    pub a: Vec<[f64; 2]>,
}

/// `A_{X̄} = δ² ψ(·) 1 + ι - A_X`.
pub fn quantum_complement(qg: &QuantumGraph) -> QgraphResult<QuantumGraph> {
    if let (Some((d2, a)), Some(frame)) = (&qg.exact, qg.qset.exact_frame()) {
        let comp = frame
            .complete_operator(d2)
            .add(&Mat::identity(frame.d))
            .sub(a);
        return QuantumGraph::exact(qg.qset.clone(), comp);
    }
    let frame = qg.qset.float_frame()?;
    let a_unit = Mat::from_nalgebra(&qg.qset.from_onb(&qg.a)?);
    let d2 = Complex64::new(qg.delta * qg.delta, 0.0);
    let comp = frame
        .complete_operator(&d2)
        .add(&Mat::identity(frame.d))
        .sub(&a_unit);
    let onb = qg.qset.to_onb(&comp.to_nalgebra(), None)?;
    QuantumGraph::new(qg.qset.clone(), onb)
}

/// Residual norms of the quantum adjacency axioms.
///
/// (1) `m(A ⊗ A)m* = δ² A`, (2) `(ι ⊗ η*m)(ι ⊗ A ⊗ ι)(m*η ⊗ ι) = A`,
/// (3) `m(A ⊗ ι)m* = δ² ι`, plus `A* = A`. Exact graphs report exact zeros.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxiomReport {
    pub exact: bool,
    pub tol: f64,
    pub axiom1: f64,
    pub axiom2: f64,
    pub axiom3: f64,
    pub self_adjoint: f64,
}

impl AxiomReport {
    pub fn max_residual(&self) -> f64 {
        self.axiom1
            .max(self.axiom2)
            .max(self.axiom3)
            .max(self.self_adjoint)
    }

    pub fn pass(&self) -> bool {
        if self.exact {
            self.max_residual() == 0.0
        } else {
            self.max_residual() <= self.tol
        }
    }
}

pub fn check_quantum_adjacency(qg: &QuantumGraph, tol: f64) -> QgraphResult<AxiomReport> {
    let d = qg.qset.dim();
    if qg.a.nrows() != d {
        return Err(QgraphError::DimensionMismatch {
            expected: d,
            got: qg.a.nrows(),
        });
    }
    if let (Some((d2, a)), Some(frame)) = (&qg.exact, qg.qset.exact_frame()) {
        let r = frame.axioms(a, d2);
        return Ok(AxiomReport {
            exact: true,
            tol,
            axiom1: frame.hs_norm(&r.axiom1),
            axiom2: frame.hs_norm(&r.axiom2),
            axiom3: frame.hs_norm(&r.axiom3),
            self_adjoint: frame.hs_norm(&r.self_adjoint),
        });
    }
    let frame = qg.qset.float_frame()?;
    let a_unit = Mat::from_nalgebra(&qg.qset.from_onb(&qg.a)?);
    let r = frame.axioms(&a_unit, &Complex64::new(qg.delta * qg.delta, 0.0));
    Ok(AxiomReport {
        exact: false,
        tol,
        axiom1: frame.hs_norm(&r.axiom1),
        axiom2: frame.hs_norm(&r.axiom2),
        axiom3: frame.hs_norm(&r.axiom3),
        self_adjoint: frame.hs_norm(&r.self_adjoint),
    })
}
