//! Derivation records: how each rule of a completion was obtained from the
//! input relations, and the certificates built from them.
//!
//! Entry `k` states `poly_k = sum_i c_i * L_i * src_i * R_i` where each source
//! is an input relation or an earlier entry. Checking every entry locally
//! proves by induction that each entry's polynomial lies in the two-sided
//! ideal generated by the relations.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::poly::NCPoly;
use super::word::Word;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Relation(usize),
    Entry(usize),
}

#[derive(Debug, Clone)]
pub struct Part {
    pub coeff: Rational,
    pub left: Word,
    pub source: Source,
    pub right: Word,
}

#[derive(Debug, Clone)]
pub struct Derivation {
    pub poly: NCPoly,
    pub parts: Vec<Part>,
}

/// A self-contained proof that `1` lies in the ideal of the relations:
/// entries are renumbered so that only the ones reachable from the final
/// entry remain, and the final entry's polynomial is a non-zero constant.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub relations: Vec<NCPoly>,
    pub entries: Vec<Derivation>,
}

/// Why a certificate failed to replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayError {
    ForwardReference { entry: usize },
    UnknownRelation { entry: usize },
    Mismatch { entry: usize },
    NotConstant,
}

fn combine(parts: &[Part], relations: &[NCPoly], entries: &[Derivation]) -> NCPoly {
    let mut acc = NCPoly::zero();
    for p in parts {
        let src = match p.source {
            Source::Relation(i) => &relations[i],
            Source::Entry(j) => &entries[j].poly,
        };
        acc.add_scaled(&p.coeff, p.left.letters(), src, p.right.letters());
    }
    acc
}

impl Certificate {
    pub(crate) fn extract(arena: &[Derivation], root: usize, relations: &[NCPoly]) -> Self {
        let mut needed = vec![false; arena.len()];
        needed[root] = true;
        for k in (0..=root).rev() {
            if !needed[k] {
                continue;
            }
            for p in &arena[k].parts {
                if let Source::Entry(j) = p.source {
                    needed[j] = true;
                }
            }
        }
        let mut renumber = vec![usize::MAX; arena.len()];
        let mut entries = Vec::new();
        for k in 0..=root {
            if !needed[k] {
                continue;
            }
            renumber[k] = entries.len();
            let mut d = arena[k].clone();
            for p in &mut d.parts {
                if let Source::Entry(j) = p.source {
                    p.source = Source::Entry(renumber[j]);
                }
            }
            entries.push(d);
        }
        Self {
            relations: relations.to_vec(),
            entries,
        }
    }

    /// Checks every entry against its recorded combination.
    pub fn replay(&self) -> Result<(), ReplayError> {
        for (k, d) in self.entries.iter().enumerate() {
            for p in &d.parts {
                match p.source {
                    Source::Entry(j) if j >= k => return Err(ReplayError::ForwardReference { entry: k }),
                    Source::Relation(i) if i >= self.relations.len() => {
                        return Err(ReplayError::UnknownRelation { entry: k })
                    }
                    _ => {}
                }
            }
            if combine(&d.parts, &self.relations, &self.entries) != d.poly {
                return Err(ReplayError::Mismatch { entry: k });
            }
        }
        match self.entries.last().and_then(|d| d.poly.as_constant()) {
            Some(c) if !c.is_zero() => Ok(()),
            _ => Err(ReplayError::NotConstant),
        }
    }

    /// Total number of recorded parts.
    pub fn size(&self) -> usize {
        self.entries.iter().map(|d| d.parts.len()).sum()
    }

    /// Expands the final entry into `1 = sum c * L * r_i * R` over the input
    /// relations, merging equal terms. Gives up (`None`) past `cap` terms.
    pub fn expand(&self, cap: usize) -> Option<Vec<(Rational, Word, usize, Word)>> {
        let last = self.entries.len().checked_sub(1)?;
        let scale = self.entries[last].poly.as_constant()?.recip();
        let mut acc: BTreeMap<(usize, Word, Word), Rational> = BTreeMap::new();
        let mut stack = vec![(last, scale, Word::empty(), Word::empty())];
        let mut visits = 0usize;
        while let Some((k, c, l, r)) = stack.pop() {
            for p in &self.entries[k].parts {
                visits += 1;
                if visits > cap.saturating_mul(16) {
                    return None;
                }
                let nc = &c * &p.coeff;
                let nl = Word::concat3(l.letters(), p.left.letters(), &[]);
                let nr = Word::concat3(p.right.letters(), r.letters(), &[]);
                match p.source {
                    Source::Relation(i) => {
                        let e = acc.entry((i, nl, nr)).or_insert_with(Rational::zero);
                        *e += nc;
                        if acc.len() > cap {
                            return None;
                        }
                    }
                    Source::Entry(j) => stack.push((j, nc, nl, nr)),
                }
            }
        }
        Some(
            acc.into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((i, l, r), c)| (c, l, i, r))
                .collect(),
        )
    }

    /// Evaluates an expansion, which must equal `1` for a valid certificate.
    pub fn evaluate_expansion(&self, terms: &[(Rational, Word, usize, Word)]) -> NCPoly {
        let mut acc = NCPoly::zero();
        for (c, l, i, r) in terms {
            acc.add_scaled(c, l.letters(), &self.relations[*i], r.letters());
        }
        acc
    }

    pub fn proves_one(&self, terms: &[(Rational, Word, usize, Word)]) -> bool {
        self.evaluate_expansion(terms) == NCPoly::constant(Rational::one())
    }
}
