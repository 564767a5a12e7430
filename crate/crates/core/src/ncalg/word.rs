//! Generator alphabets and words in the free monoid.

use std::cmp::Ordering;
use std::collections::HashMap;

use smallvec::SmallVec;

use super::{NcError, NcResult};

/// Index of a generator in its alphabet. Letter order is declaration order.
pub type Letter = u16;

/// A word over the alphabet, ordered degree-lexicographically: shorter words
/// are smaller, equal lengths compare letter by letter.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Letter; 8]>);

impl Word {
    pub fn empty() -> Self {
        Self(SmallVec::new())
    }

    pub fn from_letters(ls: &[Letter]) -> Self {
        Self(SmallVec::from_slice(ls))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat3(a: &[Letter], b: &[Letter], c: &[Letter]) -> Self {
        let mut w = SmallVec::with_capacity(a.len() + b.len() + c.len());
        w.extend_from_slice(a);
        w.extend_from_slice(b);
        w.extend_from_slice(c);
        Self(w)
    }

    /// Position of the first occurrence of `pat` as a contiguous subword.
    pub fn find(&self, pat: &[Letter]) -> Option<usize> {
        if pat.is_empty() {
            return Some(0);
        }
        self.0.windows(pat.len()).position(|w| w == pat)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Ordered generator names with an involutive star map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alphabet {
    names: Vec<String>,
    star: Vec<Letter>,
    index: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, name: String) -> NcResult<Letter> {
        if !valid_ident(name.trim_end_matches('\'')) {
            return Err(NcError::BadName(name));
        }
        if self.index.contains_key(&name) {
            return Err(NcError::DuplicateLetter(name));
        }
        let id = Letter::try_from(self.names.len()).map_err(|_| NcError::TooManyLetters)?;
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.star.push(id);
        Ok(id)
    }

    /// Adds a self-adjoint generator.
    pub fn add_self_adjoint(&mut self, name: &str) -> NcResult<Letter> {
        if name.ends_with('\'') {
            return Err(NcError::BadName(name.to_string()));
        }
        self.push(name.to_string())
    }

    /// Adds a generator `name` and its adjoint `name'`, in that order.
    pub fn add_pair(&mut self, name: &str) -> NcResult<(Letter, Letter)> {
        let a = self.push(name.to_string())?;
        let b = self.push(format!("{name}'"))?;
        self.star[a as usize] = b;
        self.star[b as usize] = a;
        Ok((a, b))
    }

    /// Builds an alphabet from declared names. A name ending in `'` is the
    /// adjoint of its base name, which must also be declared; names without a
    /// primed partner are self-adjoint.
    pub fn from_declaration(names: &[String]) -> NcResult<Self> {
        let mut a = Self::new();
        for n in names {
            a.push(n.clone())?;
        }
        for n in names {
            if let Some(base) = n.strip_suffix('\'') {
                let b = *a
                    .index
                    .get(base)
                    .ok_or_else(|| NcError::UnpairedAdjoint(n.clone()))?;
                let p = a.index[n];
                a.star[b as usize] = p;
                a.star[p as usize] = b;
            }
        }
        Ok(a)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.index.get(name).copied()
    }

    pub fn get(&self, name: &str) -> NcResult<Letter> {
        self.letter(name)
            .ok_or_else(|| NcError::UnknownLetter(name.to_string()))
    }

    pub fn star(&self, l: Letter) -> Letter {
        self.star[l as usize]
    }

    pub fn is_self_adjoint(&self, l: Letter) -> bool {
        self.star(l) == l
    }

    /// Reverses the word and stars every letter.
    pub fn star_word(&self, w: &Word) -> Word {
        Word(w.0.iter().rev().map(|&l| self.star(l)).collect())
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let parts: Vec<&str> = w.0.iter().map(|&l| self.name(l)).collect();
        parts.join("*")
    }
}

pub(crate) fn valid_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}
