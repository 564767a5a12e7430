//! Noncommutative polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::word::{Alphabet, Letter, Word};
use crate::Rational;

/// A finite linear combination of words. Zero coefficients are never stored;
/// iteration runs in increasing deglex order, so the leading term is last.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Rational>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Word::empty())
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn letter(l: Letter) -> Self {
        Self::term(Rational::one(), Word::from_letters(&[l]))
    }

    pub fn word(w: Word) -> Self {
        Self::term(Rational::one(), w)
    }

    pub fn term(c: Rational, w: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    /// Product of letters.
    pub fn monomial(ls: &[Letter]) -> Self {
        Self::word(Word::from_letters(ls))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Rational> {
        self.terms
    }

    pub fn from_terms(terms: BTreeMap<Word, Rational>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Word, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn pop_leading(&mut self) -> Option<(Word, Rational)> {
        self.terms.pop_last()
    }

    pub fn degree(&self) -> usize {
        self.leading().map_or(0, |(w, _)| w.len())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * left * other * right`.
    pub fn add_scaled(&mut self, c: &Rational, left: &[Letter], other: &NCPoly, right: &[Letter]) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(Word::concat3(left, w.letters(), right), c * d);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(w, d)| (w.clone(), d * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }

    /// The adjoint: words reversed and starred, coefficients unchanged
    /// (they are real).
    pub fn star(&self, al: &Alphabet) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (al.star_word(w), c.clone()))
                .collect(),
        }
    }

    /// Replaces each letter `l` by `images[l]`.
    pub fn substitute(&self, images: &[NCPoly]) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for &l in w.letters() {
                acc = &acc * &images[l as usize];
                if acc.is_zero() {
                    break;
                }
            }
            out = out + acc;
        }
        out
    }

    /// Evaluates under a scalar assignment of the letters.
    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(w, c)| {
                w.letters()
                    .iter()
                    .fold(c.clone(), |acc, &l| acc * &values[l as usize])
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn letters_used(&self) -> impl Iterator<Item = Letter> + '_ {
        self.terms.keys().flat_map(|w| w.letters().iter().copied())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn display<'a>(&'a self, al: &'a Alphabet) -> PolyDisplay<'a> {
        PolyDisplay { p: self, al }
    }
}

impl std::fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(w, c)| (w, c.to_string())))
            .finish()
    }
}

pub struct PolyDisplay<'a> {
    p: &'a NCPoly,
    al: &'a Alphabet,
}

impl std::fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.p.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", self.al.format_word(w))?;
            } else {
                write!(f, "{mag}*{}", self.al.format_word(w))?;
            }
        }
        Ok(())
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(mut self, rhs: NCPoly) -> NCPoly {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(mut self, rhs: NCPoly) -> NCPoly {
        for (w, c) in rhs.terms {
            self.add_term(w, -c);
        }
        self
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        Self {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(Word::concat3(w1.letters(), w2.letters(), &[]), c1 * c2);
            }
        }
        out
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for NCPoly {
    fn sum<I: Iterator<Item = NCPoly>>(iter: I) -> Self {
        iter.fold(NCPoly::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic() {
        let a = NCPoly::letter(0);
        let b = NCPoly::letter(1);
        let ab = &a * &b;
        let ba = &b * &a;
        assert_ne!(ab, ba);
        let comm = ab.clone() - ba.clone();
        assert_eq!(comm.len(), 2);
        assert!((comm.clone() - comm).is_zero());
        let s = (a.clone() + NCPoly::one()).pow(2);
        // a^2 + 2a + 1
        assert_eq!(s.coeff(&Word::from_letters(&[0])), q(2, 1));
        assert_eq!(s.leading().unwrap().0, &Word::from_letters(&[0, 0]));
    }

    #[test]
    fn display_and_star() {
        let mut al = Alphabet::new();
        let e = al.add_self_adjoint("e").unwrap();
        let (u, _) = al.add_pair("u").unwrap();
        let p = NCPoly::monomial(&[e, u]).scale(&q(-2, 3)) + NCPoly::one();
        assert_eq!(p.display(&al).to_string(), "-2/3*e*u + 1");
        assert_eq!(p.star(&al).display(&al).to_string(), "-2/3*u'*e + 1");
    }

    #[test]
    fn substitution_and_eval() {
        let p = NCPoly::monomial(&[0, 1]) - NCPoly::letter(0);
        let images = vec![NCPoly::letter(1), NCPoly::one()];
        // a*b - a  with a -> b, b -> 1  gives b - b = 0
        assert!(p.substitute(&images).is_zero());
        assert_eq!(p.evaluate(&[q(2, 1), q(3, 1)]), q(4, 1));
    }
}
