//! The multimatrix algebra `⊕ M_{n(i)}` in its matrix-unit basis, with the
//! GNS Gram matrix of `ψ = ⊕ Tr(Q_i ·)`.
//!
//! Operators on `L²(X)` are matrices in the matrix-unit basis; adjoints are
//! taken against the Gram matrix, so the same code serves the exact and the
//! floating path.

use super::scalar::{Mat, Scalar};

#[derive(Debug, Clone)]
pub(crate) struct Frame<F> {
    pub d: usize,
    blocks: Vec<usize>,
    offsets: Vec<usize>,
    /// `(block, row, col)` of each basis element.
    index: Vec<(usize, usize, usize)>,
    pub gram: Mat<F>,
    pub gram_inv: Mat<F>,
    /// Coordinates of the unit.
    pub unit: Vec<F>,
    /// `ψ(e_p)`.
    pub psi: Vec<F>,
}

/// Residual operators of the three quantum adjacency axioms.
pub(crate) struct AxiomResiduals<F> {
    pub axiom1: Mat<F>,
    pub axiom2: Mat<F>,
    pub axiom3: Mat<F>,
    pub self_adjoint: Mat<F>,
}

impl<F: Scalar> Frame<F> {
    /// `weights[i]` is `Q_i`; returns `None` if the Gram matrix is singular.
    pub fn new(blocks: &[usize], weights: &[Mat<F>]) -> Option<Self> {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut index = Vec::new();
        for (i, &n) in blocks.iter().enumerate() {
            offsets.push(index.len());
            for j in 0..n {
                for k in 0..n {
                    index.push((i, j, k));
                }
            }
        }
        let d = index.len();
        let gram = Mat::from_fn(d, d, |a, b| {
            let (i, j, k) = index[a];
            let (i2, j2, k2) = index[b];
            // <e_jk, e_jk'> = ψ(e_kj e_jk') = Q_{k'k}
            if i == i2 && j == j2 {
                weights[i].get(k2, k).clone()
            } else {
                F::zero()
            }
        });
        let gram_inv = gram.inverse()?;
        let unit = index
            .iter()
            .map(|&(_, j, k)| if j == k { F::one() } else { F::zero() })
            .collect();
        let psi = index.iter().map(|&(i, j, k)| weights[i].get(k, j).clone()).collect();
        Some(Self {
            d,
            blocks: blocks.to_vec(),
            offsets,
            index,
            gram,
            gram_inv,
            unit,
            psi,
        })
    }

    /// Basis element with `e_p e_q = e_r`, or `None` when the product is zero.
    pub fn mult(&self, p: usize, q: usize) -> Option<usize> {
        let (i, j, k) = self.index[p];
        let (i2, j2, k2) = self.index[q];
        (i == i2 && k == j2).then(|| self.offsets[i] + j * self.blocks[i] + k2)
    }

    /// Basis element `e_p*`.
    pub fn star(&self, p: usize) -> usize {
        let (i, j, k) = self.index[p];
        self.offsets[i] + k * self.blocks[i] + j
    }

    /// `m*(e_r)` reshaped as a `d x d` coefficient matrix on `e_p ⊗ e_q`.
    fn m_star_column(&self, r: usize) -> Mat<F> {
        let x = Mat::from_fn(self.d, self.d, |p, q| {
            self.mult(p, q)
                .map_or_else(F::zero, |t| self.gram.get(t, r).clone())
        });
        self.gram_inv.mul(&x).mul(&self.gram_inv.transpose())
    }

    /// `m` applied to a coefficient matrix on `e_p ⊗ e_q`.
    fn apply_m(&self, w: &Mat<F>) -> Vec<F> {
        let mut out = vec![F::zero(); self.d];
        for p in 0..self.d {
            for q in 0..self.d {
                let c = w.get(p, q);
                if c.is_zero() {
                    continue;
                }
                if let Some(t) = self.mult(p, q) {
                    out[t] = out[t].add(c);
                }
            }
        }
        out
    }

    /// Matrix of `m T m*` where `T` acts on the tensor square as
    /// `X -> left X rightᵀ`.
    fn sandwich(&self, left: &Mat<F>, right: Option<&Mat<F>>) -> Mat<F> {
        let mut out = Mat::zeros(self.d, self.d);
        for r in 0..self.d {
            let s = self.m_star_column(r);
            let mut w = left.mul(&s);
            if let Some(rt) = right {
                w = w.mul(&rt.transpose());
            }
            for (t, v) in self.apply_m(&w).into_iter().enumerate() {
                out.set(t, r, v);
            }
        }
        out
    }

    /// `m m*`.
    pub fn m_m_star(&self) -> Mat<F> {
        self.sandwich(&Mat::identity(self.d), None)
    }

    /// Operator adjoint with respect to the GNS inner product.
    pub fn adjoint(&self, a: &Mat<F>) -> Mat<F> {
        self.gram_inv.mul(&a.adjoint()).mul(&self.gram)
    }

    /// Hilbert-Schmidt norm of an operator.
    pub fn hs_norm(&self, r: &Mat<F>) -> f64 {
        if r.is_zero() {
            return 0.0;
        }
        self.adjoint(r).mul(r).trace().real_part().max(0.0).sqrt()
    }

    /// `δ² ψ(·) 1`.
    pub fn complete_operator(&self, delta_sq: &F) -> Mat<F> {
        Mat::from_fn(self.d, self.d, |t, p| {
            delta_sq.mul(&self.unit[t]).mul(&self.psi[p])
        })
    }

    pub fn axioms(&self, a: &Mat<F>, delta_sq: &F) -> AxiomResiduals<F> {
        let d2a = a.scale(delta_sq);
        let axiom1 = self.sandwich(a, Some(a)).sub(&d2a);
        let axiom3 = self
            .sandwich(a, None)
            .sub(&Mat::identity(self.d).scale(delta_sq));
        // (ι ⊗ η*m)(ι ⊗ A ⊗ ι)(m*η ⊗ ι) = U Aᵀ B with U = m*(1), B_{sr} = ψ(e_s e_r)
        let mut u = Mat::zeros(self.d, self.d);
        for r in 0..self.d {
            if self.unit[r].is_zero() {
                continue;
            }
            u = u.add(&self.m_star_column(r).scale(&self.unit[r]));
        }
        let b = Mat::from_fn(self.d, self.d, |s, r| {
            self.mult(s, r).map_or_else(F::zero, |t| self.psi[t].clone())
        });
        let axiom2 = u.mul(&a.transpose()).mul(&b).sub(a);
        let self_adjoint = self.adjoint(a).sub(a);
        AxiomResiduals {
            axiom1,
            axiom2,
            axiom3,
            self_adjoint,
        }
    }
}
