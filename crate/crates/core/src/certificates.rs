//! Computable obstructions and certificates for (quantum) symmetries of
//! classical graphs.
//!
//! A graph whose adjacency spectrum is simple and whose eigenvectors have
//! pairwise intersecting supports has a classical quantum automorphism
//! group; if moreover its automorphism group is trivial, so is the quantum
//! one. Simplicity is decided exactly from the characteristic polynomial
//! before any floating-point eigenvector is computed.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::graph::{
    automorphism_order, char_poly, frucht, gm_switch, is_isomorphic, Graph, GraphError,
    MAX_SEARCH_VERTICES,
};

/// Entries above this magnitude are in an eigenvector's support.
pub const SUPPORT_EPS: f64 = 1e-6;
/// Entries in `(AMBIGUITY_FLOOR, SUPPORT_EPS]` make the support test inconclusive.
pub const AMBIGUITY_FLOOR: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CertError {
    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error("invalid subset: {0}")]
    BadSubset(String),

    #[error("support threshold {eps} must exceed the ambiguity floor {floor}")]
    BadThreshold { eps: f64, floor: f64 },
}

pub type CertResult<T> = Result<T, CertError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Quantum automorphism group equals the classical one.
    CertifiedClassicalQAut,
    /// Quantum automorphism group is trivial.
    TrivialQAut,
    Refuted(String),
    Inconclusive(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Self::CertifiedClassicalQAut => "CertifiedClassicalQAut",
            Self::TrivialQAut => "TrivialQAut",
            Self::Refuted(_) => "Refuted",
            Self::Inconclusive(_) => "Inconclusive",
        }
    }

    fn reason(&self) -> Option<&str> {
        match self {
            Self::Refuted(r) | Self::Inconclusive(r) => Some(r),
            _ => None,
        }
    }
}

/// Evidence of the simple-spectrum / support test.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralEvidence {
    pub char_poly: String,
    pub simple_spectrum: bool,
    pub distinct_eigenvalues: usize,
    /// Smallest gap between consecutive float eigenvalues.
    pub min_eigen_gap: Option<f64>,
    /// Over all eigenvector pairs, the smallest value of
    /// `max_i min(|v_i|, |w_i|)`.
    pub support_margin: Option<f64>,
    /// Entries in the ambiguity band.
    pub band_hits: usize,
    pub disjoint_pairs: Vec<(usize, usize)>,
    pub supports_ok: bool,
}

#[derive(Debug, Clone)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub spectral: SpectralEvidence,
    pub aut_order: Option<BigUint>,
    /// Vertices fixed by the degree argument, with the certificate of the
    /// remaining induced subgraph.
    pub degree_block: Option<(Vec<usize>, Box<CertificateReport>)>,
}

impl CertificateReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "verdict": self.verdict.label(),
            "spectral": self.spectral,
            "aut_order": self.aut_order.as_ref().map(biguint_json),
        });
        if let Some(r) = self.verdict.reason() {
            v["reason"] = json!(r);
        }
        if let Some((fixed, sub)) = &self.degree_block {
            v["degree_block"] = json!({"fixed": fixed, "induced": sub.to_json()});
        }
        v
    }
}

/// Numbers that fit in `u64` are written as JSON numbers, larger ones as
/// decimal strings.
pub fn biguint_json(n: &BigUint) -> serde_json::Value {
    match u64::try_from(n) {
        Ok(x) => json!(x),
        Err(_) => json!(n.to_string()),
    }
}

/// The simple-spectrum / disjoint-support test with thresholds
/// `(floor, eps)`.
pub fn spectral_evidence(g: &Graph, eps: f64, floor: f64) -> CertResult<SpectralEvidence> {
    if eps <= floor {
        return Err(CertError::BadThreshold { eps, floor });
    }
    let cp = char_poly(g);
    let distinct = cp.distinct_roots();
    let simple = distinct == g.n();
    let mut ev = SpectralEvidence {
        char_poly: cp.to_string(),
        simple_spectrum: simple,
        distinct_eigenvalues: distinct,
        min_eigen_gap: None,
        support_margin: None,
        band_hits: 0,
        disjoint_pairs: Vec::new(),
        supports_ok: false,
    };
    if !simple {
        return Ok(ev);
    }
    let n = g.n();
    let a = DMatrix::from_fn(n, n, |i, j| f64::from(u8::from(g.has_edge(i, j))));
    let eig = SymmetricEigen::new(a);
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    ev.min_eigen_gap = vals.windows(2).map(|w| w[1] - w[0]).min_by(f64::total_cmp);
    let vecs: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let c = eig.eigenvectors.column(k);
            let norm = c.norm();
            c.iter().map(|x| (x / norm).abs()).collect()
        })
        .collect();
    ev.band_hits = vecs
        .iter()
        .flatten()
        .filter(|&&x| x > floor && x <= eps)
        .count();
    let mut margin = f64::INFINITY;
    for p in 0..n {
        for q in p + 1..n {
            let m = (0..n)
                .map(|i| vecs[p][i].min(vecs[q][i]))
                .fold(0.0, f64::max);
            if m <= eps {
                ev.disjoint_pairs.push((p, q));
            }
            margin = margin.min(m);
        }
    }
    ev.support_margin = (n > 1).then_some(margin);
    ev.supports_ok = ev.band_hits == 0 && ev.disjoint_pairs.is_empty();
    Ok(ev)
}

/// Certificate for `QAut(g)` with the default thresholds.
pub fn classical_qaut_certificate(g: &Graph) -> CertResult<CertificateReport> {
    classical_qaut_certificate_with(g, SUPPORT_EPS, AMBIGUITY_FLOOR)
}

/// Simple-spectrum certificate, falling back to fixing the vertices of unique
/// degree and certifying the induced subgraph on the rest.
pub fn classical_qaut_certificate_with(g: &Graph, eps: f64, floor: f64) -> CertResult<CertificateReport> {
    if g.n() > MAX_SEARCH_VERTICES {
        return Err(GraphError::TooLarge {
            n: g.n(),
            limit: MAX_SEARCH_VERTICES,
        }
        .into());
    }
    let spectral = spectral_evidence(g, eps, floor)?;
    let aut = automorphism_order(g)?;
    let direct = if !spectral.simple_spectrum {
        Verdict::Inconclusive("repeated eigenvalue".into())
    } else if spectral.band_hits > 0 {
        Verdict::Inconclusive(format!(
            "{} eigenvector entries between {floor:e} and {eps:e}",
            spectral.band_hits
        ))
    } else if !spectral.disjoint_pairs.is_empty() {
        Verdict::Inconclusive("eigenvectors with disjoint supports".into())
    } else if aut.is_one() {
        Verdict::TrivialQAut
    } else {
        Verdict::CertifiedClassicalQAut
    };
    let mut report = CertificateReport {
        verdict: direct,
        spectral,
        aut_order: Some(aut),
        degree_block: None,
    };
    if matches!(report.verdict, Verdict::Inconclusive(_)) {
        if let Some((fixed, sub)) = degree_block_certificate(g, eps, floor)? {
            if sub.verdict == Verdict::TrivialQAut {
                report.verdict = Verdict::TrivialQAut;
            }
            report.degree_block = Some((fixed, Box::new(sub)));
        }
    }
    Ok(report)
}

/// Every quantum automorphism fixes a vertex of unique degree; fixing them
/// leaves a quantum automorphism of the induced subgraph on the rest.
fn degree_block_certificate(g: &Graph, eps: f64, floor: f64) -> CertResult<Option<(Vec<usize>, CertificateReport)>> {
    let degrees = g.degrees();
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in &degrees {
        *count.entry(d).or_default() += 1;
    }
    let fixed: Vec<usize> = (0..g.n()).filter(|&v| count[&degrees[v]] == 1).collect();
    if fixed.is_empty() || fixed.len() == g.n() {
        return Ok(None);
    }
    let rest: Vec<usize> = (0..g.n()).filter(|v| !fixed.contains(v)).collect();
    let sub = g.induced_subgraph(&rest)?;
    let cert = classical_qaut_certificate_with(&sub, eps, floor)?;
    Ok(Some((fixed, cert)))
}

/// Pairs of equal-degree vertex classes of two graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeBlock {
    pub degree: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeVerdict {
    /// Degree multisets differ, so no magic unitary intertwines the graphs.
    Refuted {
        x_degrees: Vec<usize>,
        y_degrees: Vec<usize>,
    },
    /// Any quantum isomorphism is block diagonal along these classes.
    Blocks(Vec<DegreeBlock>),
}

impl DegreeVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Self::Refuted {
                x_degrees,
                y_degrees,
            } => json!({"verdict": "Refuted", "x_degrees": x_degrees, "y_degrees": y_degrees}),
            Self::Blocks(b) => json!({"verdict": "Blocks", "blocks": b}),
        }
    }
}

pub fn degree_obstruction(x: &Graph, y: &Graph) -> DegreeVerdict {
    let classes = |g: &Graph| {
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..g.n() {
            m.entry(g.degree(v)).or_default().push(v);
        }
        m
    };
    let (cx, cy) = (classes(x), classes(y));
    let shape = |c: &BTreeMap<usize, Vec<usize>>| c.iter().map(|(d, v)| (*d, v.len())).collect::<Vec<_>>();
    if shape(&cx) != shape(&cy) {
        let sorted = |g: &Graph| {
            let mut d = g.degrees();
            d.sort_unstable();
            d
        };
        return DegreeVerdict::Refuted {
            x_degrees: sorted(x),
            y_degrees: sorted(y),
        };
    }
    DegreeVerdict::Blocks(
        cx.into_iter()
            .zip(cy)
            .map(|((degree, xv), (_, yv))| DegreeBlock { degree, x: xv, y: yv })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectralVerdict {
    Pass { char_poly: String },
    Refuted { x_poly: String, y_poly: String },
}

impl SpectralVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Self::Pass { char_poly } => json!({"verdict": "Pass", "char_poly": char_poly}),
            Self::Refuted { x_poly, y_poly } => {
                json!({"verdict": "Refuted", "x_char_poly": x_poly, "y_char_poly": y_poly})
            }
        }
    }
}

/// Quantum isomorphic graphs are isospectral.
pub fn isospectrality_obstruction(x: &Graph, y: &Graph) -> SpectralVerdict {
    let (px, py) = (char_poly(x), char_poly(y));
    if px == py {
        SpectralVerdict::Pass {
            char_poly: px.to_string(),
        }
    } else {
        SpectralVerdict::Refuted {
            x_poly: px.to_string(),
            y_poly: py.to_string(),
        }
    }
}

/// Evidence that the two one-vertex extensions of the Frucht graph are
/// isospectral, not isomorphic, and quantum-rigid.
#[derive(Debug, Clone)]
pub struct NisoReport {
    pub subset: Vec<usize>,
    pub x1: Graph,
    pub x2: Graph,
    pub isospectral: bool,
    pub isomorphic: bool,
    pub aut_orders: [BigUint; 2],
    pub degrees: DegreeVerdict,
    /// Whether the added vertex sits alone in its degree class on both sides.
    pub added_vertex_isolated: bool,
    pub added_vertex_degree: usize,
    pub frucht: CertificateReport,
    pub x1_cert: CertificateReport,
    pub x2_cert: CertificateReport,
}

impl NisoReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "subset": self.subset,
            "isospectral": self.isospectral,
            "isomorphic": self.isomorphic,
            "aut_orders": [biguint_json(&self.aut_orders[0]), biguint_json(&self.aut_orders[1])],
            "degree_obstruction": self.degrees.to_json(),
            "added_vertex": self.x1.n() - 1,
            "added_vertex_degree": self.added_vertex_degree,
            "added_vertex_isolated": self.added_vertex_isolated,
            "frucht_certificate": self.frucht.verdict.label(),
            "x1_certificate": self.x1_cert.verdict.label(),
            "x2_certificate": self.x2_cert.verdict.label(),
        })
    }
}

/// Default subset: the lexicographically least 6-subset.
pub const DEFAULT_NISO_SUBSET: [usize; 6] = [0, 1, 2, 3, 4, 5];

pub fn niso_pipeline(subset: Option<&[usize]>) -> CertResult<NisoReport> {
    let subset = subset.unwrap_or(&DEFAULT_NISO_SUBSET);
    let set: BTreeSet<usize> = subset.iter().copied().collect();
    if set.len() != 6 || subset.len() != 6 || set.iter().any(|&v| v >= 12) {
        return Err(CertError::BadSubset(format!(
            "need 6 distinct vertices of the Frucht graph (0..12), got {subset:?}"
        )));
    }
    let f = frucht();
    let (x1, x2) = gm_switch(&f, &set)?;
    let added = f.n();
    let isospectral = char_poly(&x1) == char_poly(&x2);
    let isomorphic = is_isomorphic(&x1, &x2)?.is_some();
    let aut_orders = [automorphism_order(&x1)?, automorphism_order(&x2)?];
    let degrees = degree_obstruction(&x1, &x2);
    let added_vertex_isolated = match &degrees {
        DegreeVerdict::Blocks(bs) => bs.iter().any(|b| b.x == [added] && b.y == [added]),
        DegreeVerdict::Refuted { .. } => false,
    };
    Ok(NisoReport {
        subset: set.into_iter().collect(),
        isospectral,
        isomorphic,
        aut_orders,
        degrees,
        added_vertex_isolated,
        added_vertex_degree: x1.degree(added),
        frucht: classical_qaut_certificate(&f)?,
        x1_cert: classical_qaut_certificate(&x1)?,
        x2_cert: classical_qaut_certificate(&x2)?,
        x1,
        x2,
    })
}
