//! Rewrite systems and normal forms.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::derivation::{Derivation, Part, Source};
use super::parser::parse_poly;
use super::poly::NCPoly;
use super::word::{Alphabet, Letter, Word};
use super::{NcError, NcResult};
use crate::Rational;

/// An oriented rule `lhs -> rhs` with every word of `rhs` below `lhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NCPoly,
    /// Derivation entry whose polynomial is `lhs - rhs`, when tracking.
    pub(crate) origin: Option<usize>,
}

impl Rule {
    /// The polynomial `lhs - rhs`.
    pub fn poly(&self) -> NCPoly {
        NCPoly::word(self.lhs.clone()) - self.rhs.clone()
    }
}

/// One reduction step `coeff * left * P * right`, where `P` is the
/// polynomial of the rule with the given origin.
#[derive(Debug, Clone)]
pub(crate) struct Step {
    pub coeff: Rational,
    pub left: Word,
    pub origin: Option<usize>,
    pub right: Word,
}

impl Step {
    pub fn into_part(self, sign: &Rational) -> Part {
        Part {
            coeff: self.coeff * sign,
            left: self.left,
            source: Source::Entry(self.origin.expect("step recorded without tracking")),
            right: self.right,
        }
    }
}

type Key = SmallVec<[Letter; 8]>;

/// Rule storage with stable slots and a hash index on left-hand sides.
#[derive(Debug, Clone, Default)]
pub(crate) struct RuleSet {
    slots: Vec<Option<Rule>>,
    index: HashMap<Key, usize>,
    lengths: BTreeMap<usize, usize>,
    live: usize,
}

impl RuleSet {
    pub fn len(&self) -> usize {
        self.live
    }

    pub fn get(&self, slot: usize) -> Option<&Rule> {
        self.slots.get(slot).and_then(Option::as_ref)
    }

    pub fn live(&self) -> impl Iterator<Item = (usize, &Rule)> {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
    }

    pub fn insert(&mut self, rule: Rule) -> usize {
        let slot = self.slots.len();
        self.index.insert(rule.lhs.0.clone(), slot);
        *self.lengths.entry(rule.lhs.len()).or_default() += 1;
        self.slots.push(Some(rule));
        self.live += 1;
        slot
    }

    pub fn remove(&mut self, slot: usize) -> Option<Rule> {
        let rule = self.slots.get_mut(slot)?.take()?;
        self.index.remove(rule.lhs.letters());
        let len = rule.lhs.len();
        let c = self.lengths.get_mut(&len).unwrap();
        *c -= 1;
        if *c == 0 {
            self.lengths.remove(&len);
        }
        self.live -= 1;
        Some(rule)
    }

    pub fn replace_rhs(&mut self, slot: usize, rhs: NCPoly, origin: Option<usize>) {
        if let Some(r) = self.slots[slot].as_mut() {
            r.rhs = rhs;
            r.origin = origin;
        }
    }

    /// Leftmost redex of `w`; at equal start the shortest left-hand side wins.
    pub fn find_match(&self, w: &[Letter]) -> Option<(usize, usize)> {
        for start in 0..=w.len() {
            for &len in self.lengths.keys() {
                if start + len > w.len() {
                    break;
                }
                if let Some(&slot) = self.index.get(&w[start..start + len]) {
                    return Some((start, slot));
                }
            }
        }
        None
    }

    fn all_matches(&self, w: &[Letter]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for start in 0..=w.len() {
            for &len in self.lengths.keys() {
                if start + len > w.len() {
                    break;
                }
                if let Some(&slot) = self.index.get(&w[start..start + len]) {
                    out.push((start, slot));
                }
            }
        }
        out
    }

    /// Full reduction, optionally recording the steps. On return
    /// `result = p - sum(steps)`.
    pub fn reduce(&self, p: NCPoly, mut trace: Option<&mut Vec<Step>>) -> NCPoly {
        if self.live == 0 {
            return p;
        }
        let mut work = p;
        let mut out = BTreeMap::new();
        while let Some((w, c)) = work.pop_leading() {
            match self.find_match(w.letters()) {
                Some((pos, slot)) => {
                    let rule = self.slots[slot].as_ref().unwrap();
                    let left = &w.letters()[..pos];
                    let right = &w.letters()[pos + rule.lhs.len()..];
                    work.add_scaled(&c, left, &rule.rhs, right);
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(Step {
                            coeff: c,
                            left: Word::from_letters(left),
                            origin: rule.origin,
                            right: Word::from_letters(right),
                        });
                    }
                }
                None => {
                    out.insert(w, c);
                }
            }
        }
        NCPoly::from_terms(out)
    }
}

/// A rewrite system produced by completion, with rules sorted by left-hand
/// side.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    rules: RuleSet,
    /// Overlaps of degree at most this were considered.
    pub degree_bound: usize,
    /// Every overlap of degree at most this resolved.
    pub complete_up_to: usize,
    /// The overlap queue emptied without skipping anything above the bound.
    pub saturated: bool,
    /// Stopped by the rule cap.
    pub capped: bool,
    /// The rule `1 -> 0` was derived.
    pub collapsed: bool,
    pub(crate) derivations: Option<Arc<Vec<Derivation>>>,
}

impl RewriteSystem {
    pub(crate) fn from_parts(
        alphabet: Alphabet,
        mut rules: Vec<Rule>,
        degree_bound: usize,
        derivations: Option<Arc<Vec<Derivation>>>,
    ) -> Self {
        rules.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        let collapsed = rules.first().is_some_and(|r| r.lhs.is_empty());
        let mut set = RuleSet::default();
        for r in rules {
            set.insert(r);
        }
        Self {
            alphabet,
            rules: set,
            degree_bound,
            complete_up_to: 0,
            saturated: false,
            capped: false,
            collapsed,
            derivations,
        }
    }

    /// A system with no rules over `alphabet` (the free algebra).
    pub fn empty(alphabet: Alphabet) -> Self {
        Self::from_parts(alphabet, Vec::new(), 0, None)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.len() == 0
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.live().map(|(_, r)| r)
    }

    pub fn normal_form(&self, p: &NCPoly) -> NCPoly {
        self.rules.reduce(p.clone(), None)
    }

    /// Rewrites to an irreducible form, letting `pick(n)` choose which of the
    /// `n` available redexes (over all terms) to apply next. On a confluent
    /// system the result equals [`Self::normal_form`].
    pub fn normal_form_with(&self, p: &NCPoly, mut pick: impl FnMut(usize) -> usize) -> NCPoly {
        let mut cur = p.clone();
        loop {
            let mut redexes = Vec::new();
            for (w, _) in cur.terms() {
                for (pos, slot) in self.rules.all_matches(w.letters()) {
                    redexes.push((w.clone(), pos, slot));
                }
            }
            if redexes.is_empty() {
                return cur;
            }
            let (w, pos, slot) = redexes.swap_remove(pick(redexes.len()) % redexes.len());
            let rule = self.rules.get(slot).unwrap();
            let c = cur.coeff(&w);
            cur.add_term(w.clone(), -c.clone());
            let right = &w.letters()[pos + rule.lhs.len()..];
            cur.add_scaled(&c, &w.letters()[..pos], &rule.rhs, right);
        }
    }

    pub fn reduces_to_zero(&self, p: &NCPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let al = &self.alphabet;
        let json = RewriteJson {
            letters: al.names().to_vec(),
            rules: self
                .rules()
                .map(|r| [al.format_word(&r.lhs), r.rhs.display(al).to_string()])
                .collect(),
            degree_bound: self.degree_bound,
            complete_up_to: self.complete_up_to,
            saturated: self.saturated,
            capped: self.capped,
            collapsed: self.collapsed,
        };
        serde_json::to_value(json).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> NcResult<Self> {
        let json: RewriteJson = serde_json::from_str(text).map_err(|e| NcError::Json(e.to_string()))?;
        let al = Alphabet::from_declaration(&json.letters)?;
        let mut rules = Vec::with_capacity(json.rules.len());
        for [lhs, rhs] in &json.rules {
            let l = parse_poly(lhs, &al)?;
            let (w, c) = match l.leading() {
                Some((w, c)) if l.len() == 1 && *c == Rational::from_integer(1.into()) => (w.clone(), c),
                _ => return Err(NcError::Json(format!("rule left side {lhs:?} is not a word"))),
            };
            debug_assert!(!c.is_zero());
            let r = parse_poly(rhs, &al)?;
            if r.leading().is_some_and(|(rw, _)| rw >= &w) {
                return Err(NcError::Json(format!("rule {lhs} -> {rhs} is not decreasing")));
            }
            rules.push(Rule {
                lhs: w,
                rhs: r,
                origin: None,
            });
        }
        let mut rs = Self::from_parts(al, rules, json.degree_bound, None);
        rs.complete_up_to = json.complete_up_to;
        rs.saturated = json.saturated;
        rs.capped = json.capped;
        rs.collapsed = json.collapsed;
        Ok(rs)
    }
}

#[derive(Serialize, Deserialize)]
struct RewriteJson {
    letters: Vec<String>,
    rules: Vec<[String; 2]>,
    degree_bound: usize,
    complete_up_to: usize,
    saturated: bool,
    capped: bool,
    collapsed: bool,
}
