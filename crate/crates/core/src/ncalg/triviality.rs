//! Semidecision of `A = 0` for a finitely presented algebra.

use num_traits::Zero;

use super::completion::{complete, CompletionOptions};
use super::derivation::Certificate;
use super::poly::NCPoly;
use super::presentation::Presentation;
use super::rewrite::RewriteSystem;
use super::NcResult;
use crate::Rational;

#[derive(Debug, Clone)]
pub enum Triviality {
    /// `1` lies in the ideal; the certificate replays the derivation.
    TrivialCertified(Box<Certificate>),
    /// A scalar assignment of the generators satisfies every relation, so the
    /// algebra has a one-dimensional representation.
    NontrivialCertified(Vec<Rational>),
    /// Completion up to the given degree neither collapsed nor was a
    /// character supplied.
    InconclusiveUpTo(usize),
}

impl Triviality {
    pub fn label(&self) -> &'static str {
        match self {
            Self::TrivialCertified(_) => "TrivialCertified",
            Self::NontrivialCertified(_) => "NontrivialCertified",
            Self::InconclusiveUpTo(_) => "InconclusiveUpTo",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrivialityReport {
    pub verdict: Triviality,
    /// The completed system when completion ran.
    pub system: Option<RewriteSystem>,
}

/// Tries the supplied evaluation first, then completes with derivation
/// tracking and checks whether `1` reduces to zero.
pub fn triviality_status(
    pres: &Presentation,
    opts: &CompletionOptions,
    evaluation: Option<&[Rational]>,
) -> NcResult<TrivialityReport> {
    if let Some(values) = evaluation {
        if pres.satisfied_by(values)? {
            return Ok(TrivialityReport {
                verdict: Triviality::NontrivialCertified(values.to_vec()),
                system: None,
            });
        }
    }
    let opts = CompletionOptions {
        track: true,
        ..*opts
    };
    let rs = complete(pres, &opts);
    let verdict = if rs.normal_form(&NCPoly::one()).is_zero() {
        let arena = rs.derivations.as_ref().expect("tracking was on");
        let root = rs
            .rules()
            .find(|r| r.lhs.is_empty())
            .and_then(|r| r.origin)
            .expect("collapse rule carries its origin");
        let cert = Certificate::extract(arena, root, pres.relations());
        debug_assert!(cert.entries.last().and_then(|d| d.poly.as_constant()).is_some_and(|c| !c.is_zero()));
        Triviality::TrivialCertified(Box::new(cert))
    } else {
        Triviality::InconclusiveUpTo(opts.degree_bound)
    };
    Ok(TrivialityReport {
        verdict,
        system: Some(rs),
    })
}

/// Depth-first search for a character with values in `{0, 1}` (adjoint
/// letters share a value). Gives up after `budget` partial assignments.
///
/// Relations are checked as soon as their last letter is assigned, so for
/// game algebras the row-sum relations prune almost every branch.
pub fn find_boolean_character(pres: &Presentation, budget: u64) -> Option<Vec<Rational>> {
    let al = pres.alphabet();
    let n = al.len();
    let mut by_last: Vec<Vec<&NCPoly>> = vec![Vec::new(); n];
    for r in pres.relations() {
        match r.letters_used().max() {
            Some(l) => by_last[l as usize].push(r),
            None if !r.is_zero() => return None,
            None => {}
        }
    }
    let mut values = vec![Rational::zero(); n];
    let mut nodes = 0u64;
    fn go(
        l: usize,
        al: &super::word::Alphabet,
        by_last: &[Vec<&NCPoly>],
        values: &mut Vec<Rational>,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if l == values.len() {
            return Some(true);
        }
        let partner = al.star(l as super::word::Letter) as usize;
        let choices: Vec<Rational> = if partner < l {
            vec![values[partner].clone()]
        } else {
            vec![Rational::from_integer(1.into()), Rational::zero()]
        };
        for v in choices {
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            values[l] = v;
            if by_last[l].iter().all(|r| r.evaluate(values).is_zero())
                && go(l + 1, al, by_last, values, nodes, budget)?
            {
                return Some(true);
            }
        }
        values[l] = Rational::zero();
        Some(false)
    }
    match go(0, al, &by_last, &mut values, &mut nodes, budget) {
        Some(true) => Some(values),
        _ => None,
    }
}
