//! Finitely presented `*`-algebras.

use std::collections::HashSet;

use num_traits::Zero;

use super::poly::NCPoly;
use super::word::Alphabet;
use super::{NcError, NcResult};
use crate::Rational;

/// Generators plus relations, each relation read as `r = 0`.
///
/// Relations are star-closed on insertion: adding `r` also adds `r*` unless a
/// scalar multiple of it is already present. Zero relations are dropped.
#[derive(Debug, Clone)]
pub struct Presentation {
    alphabet: Alphabet,
    relations: Vec<NCPoly>,
    seen: HashSet<NCPoly>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.relations == other.relations
    }
}

impl Presentation {
    pub fn new(alphabet: Alphabet) -> Self {
        Self {
            alphabet,
            relations: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[NCPoly] {
        &self.relations
    }

    fn push_one(&mut self, p: NCPoly) -> bool {
        if p.is_zero() {
            return false;
        }
        if self.seen.insert(p.monic()) {
            self.relations.push(p);
            true
        } else {
            false
        }
    }

    /// Adds `p = 0` and its adjoint. Returns whether anything new was added.
    pub fn add_relation(&mut self, p: NCPoly) -> bool {
        let s = p.star(&self.alphabet);
        let a = self.push_one(p);
        let b = self.push_one(s);
        a || b
    }

    /// Adds `lhs = rhs`.
    pub fn add_equation(&mut self, lhs: NCPoly, rhs: NCPoly) -> bool {
        self.add_relation(lhs - rhs)
    }

    pub fn contains_relation(&self, p: &NCPoly) -> bool {
        self.seen.contains(&p.monic())
    }

    /// Maximum relation degree.
    pub fn max_degree(&self) -> usize {
        self.relations.iter().map(NCPoly::degree).max().unwrap_or(0)
    }

    /// Index of the first relation violated by a scalar assignment of the
    /// generators, or an error if the assignment is not star-compatible.
    pub fn first_violation(&self, values: &[Rational]) -> NcResult<Option<usize>> {
        if values.len() != self.alphabet.len() {
            return Err(NcError::AlphabetMismatch {
                expected: self.alphabet.len(),
                got: values.len(),
            });
        }
        for l in 0..self.alphabet.len() as u16 {
            if values[l as usize] != values[self.alphabet.star(l) as usize] {
                return Err(NcError::BadStarImage(self.alphabet.name(l).to_string()));
            }
        }
        Ok(self
            .relations
            .iter()
            .position(|r| !r.evaluate(values).is_zero()))
    }

    pub fn satisfied_by(&self, values: &[Rational]) -> NcResult<bool> {
        Ok(self.first_violation(values)?.is_none())
    }

    /// Serializes to the text format read by [`super::parse_presentation`].
    pub fn to_text(&self) -> String {
        let mut out = String::from("letters:");
        for n in self.alphabet.names() {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
        for r in &self.relations {
            out.push_str(&r.display(&self.alphabet).to_string());
            out.push('\n');
        }
        out
    }
}
