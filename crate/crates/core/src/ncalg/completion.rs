//! Degree-bounded Buchberger/Mora completion in the free algebra.
//!
//! Overlaps are processed in batches of equal degree. Within a batch the
//! S-polynomials are reduced in parallel against a frozen snapshot of the
//! rules, then merged one by one in canonical `(degree, word)` order, so the
//! final system never depends on the worker count.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::One;

use super::derivation::{Derivation, Part, Source};
use super::poly::NCPoly;
use super::presentation::Presentation;
use super::rewrite::{RewriteSystem, Rule, RuleSet, Step};
use super::word::Word;
use crate::{par, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionOptions {
    /// Largest overlap degree considered.
    pub degree_bound: usize,
    /// Stop once this many rules are live.
    pub rule_cap: usize,
    /// Record derivations so collapse can be certified.
    pub track: bool,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        Self {
            degree_bound: 6,
            rule_cap: 50_000,
            track: false,
        }
    }
}

impl CompletionOptions {
    pub fn with_degree(degree_bound: usize) -> Self {
        Self {
            degree_bound,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Overlap {
    degree: usize,
    word: Word,
    a: usize,
    b: usize,
    k: usize,
}

struct State {
    rules: RuleSet,
    arena: Option<Vec<Derivation>>,
    queue: BTreeSet<Overlap>,
    bound: usize,
    cap: usize,
    skipped: bool,
    capped: bool,
    collapsed: bool,
}

impl State {
    fn record(&mut self, poly: &NCPoly, parts: Vec<Part>) -> Option<usize> {
        let arena = self.arena.as_mut()?;
        arena.push(Derivation {
            poly: poly.clone(),
            parts,
        });
        Some(arena.len() - 1)
    }

    /// Reduces and inserts `f`, then restores interreduction by requeueing
    /// rules whose left side the new rule divides.
    fn insert(&mut self, f: NCPoly, parts: Vec<Part>) {
        let tracking = self.arena.is_some();
        let mut pending = vec![(f, parts)];
        while let Some((f, mut parts)) = pending.pop() {
            let mut steps = Vec::new();
            let g = self.rules.reduce(f, tracking.then_some(&mut steps));
            let Some((lw, lc)) = g.leading() else {
                continue;
            };
            let lhs = lw.clone();
            let inv = lc.recip();
            let g = g.scale(&inv);
            let origin = if tracking {
                let minus = -Rational::one();
                parts.extend(steps.into_iter().map(|s| s.into_part(&minus)));
                for p in &mut parts {
                    p.coeff *= &inv;
                }
                self.record(&g, parts)
            } else {
                None
            };
            let mut rhs = g;
            rhs.pop_leading();
            let rhs = -rhs;

            if lhs.is_empty() {
                self.collapsed = true;
                let slots: Vec<usize> = self.rules.live().map(|(s, _)| s).collect();
                for s in slots {
                    self.rules.remove(s);
                }
                self.queue.clear();
                self.rules.insert(Rule {
                    lhs,
                    rhs: NCPoly::zero(),
                    origin,
                });
                return;
            }

            let divisible: Vec<usize> = self
                .rules
                .live()
                .filter(|(_, r)| r.lhs.len() >= lhs.len() && r.lhs.find(lhs.letters()).is_some())
                .map(|(s, _)| s)
                .collect();
            for s in divisible.into_iter().rev() {
                let r = self.rules.remove(s).unwrap();
                let p = r.poly();
                let parts = match r.origin {
                    Some(o) => vec![entry_part(o)],
                    None => Vec::new(),
                };
                pending.push((p, parts));
            }
            let slot = self.rules.insert(Rule { lhs, rhs, origin });
            self.add_overlaps(slot);
            if self.rules.len() >= self.cap {
                self.capped = true;
                return;
            }
        }
    }

    fn add_overlaps(&mut self, new: usize) {
        let nl = self.rules.get(new).unwrap().lhs.clone();
        let others: Vec<(usize, Word)> = self.rules.live().map(|(s, r)| (s, r.lhs.clone())).collect();
        for (s, ol) in others {
            self.push_overlaps(new, &nl, s, &ol);
            if s != new {
                self.push_overlaps(s, &ol, new, &nl);
            }
        }
    }

    /// Overlaps where a proper suffix of `la` equals a proper prefix of `lb`.
    fn push_overlaps(&mut self, a: usize, la: &Word, b: usize, lb: &Word) {
        let (x, y) = (la.letters(), lb.letters());
        for k in 1..x.len().min(y.len()) {
            if x[x.len() - k..] != y[..k] {
                continue;
            }
            let degree = x.len() + y.len() - k;
            if degree > self.bound {
                self.skipped = true;
                continue;
            }
            self.queue.insert(Overlap {
                degree,
                word: Word::concat3(x, &y[k..], &[]),
                a,
                b,
                k,
            });
        }
    }

    /// `rhs_a * u - t * rhs_b` for `lhs_a = t o`, `lhs_b = o u`, together with
    /// its expression `-P_a * u + t * P_b`.
    fn s_poly(&self, o: &Overlap) -> Option<(NCPoly, Vec<Part>)> {
        let ra = self.rules.get(o.a)?;
        let rb = self.rules.get(o.b)?;
        let (x, y) = (ra.lhs.letters(), rb.lhs.letters());
        let t = &x[..x.len() - o.k];
        let u = &y[o.k..];
        let one = Rational::one();
        let mut s = NCPoly::zero();
        s.add_scaled(&one, &[], &ra.rhs, u);
        s.add_scaled(&-one.clone(), t, &rb.rhs, &[]);
        let mut parts = Vec::new();
        if let (Some(oa), Some(ob)) = (ra.origin, rb.origin) {
            parts.push(Part {
                coeff: -one.clone(),
                left: Word::empty(),
                source: Source::Entry(oa),
                right: Word::from_letters(u),
            });
            parts.push(Part {
                coeff: one,
                left: Word::from_letters(t),
                source: Source::Entry(ob),
                right: Word::empty(),
            });
        }
        Some((s, parts))
    }

    fn run(&mut self) {
        let tracking = self.arena.is_some();
        while !self.collapsed && !self.capped {
            let Some(first) = self.queue.first() else {
                break;
            };
            let degree = first.degree;
            let mut batch = Vec::new();
            while self.queue.first().is_some_and(|o| o.degree == degree) {
                batch.push(self.queue.pop_first().unwrap());
            }
            let rules = &self.rules;
            let reduced = par::map(&batch, |o| {
                let (s, mut parts) = self.s_poly(o)?;
                let mut steps: Vec<Step> = Vec::new();
                let g = rules.reduce(s, tracking.then_some(&mut steps));
                if g.is_zero() {
                    return None;
                }
                let minus = -Rational::one();
                parts.extend(steps.into_iter().map(|s| s.into_part(&minus)));
                Some((g, parts))
            });
            for (g, parts) in reduced.into_iter().flatten() {
                self.insert(g, parts);
                if self.collapsed || self.capped {
                    break;
                }
            }
        }
    }

    /// Reduces every right-hand side by the other rules.
    fn interreduce_rhs(&mut self) {
        let tracking = self.arena.is_some();
        let slots: Vec<usize> = self.rules.live().map(|(s, _)| s).collect();
        for s in slots {
            let r = self.rules.get(s).unwrap();
            let (rhs, origin) = (r.rhs.clone(), r.origin);
            let mut steps = Vec::new();
            let nf = self.rules.reduce(rhs.clone(), tracking.then_some(&mut steps));
            if nf == rhs {
                continue;
            }
            // lhs - nf(rhs) = (lhs - rhs) + sum(steps)
            let new_origin = match origin {
                Some(o) => {
                    let mut parts = vec![entry_part(o)];
                    parts.extend(steps.into_iter().map(|st| st.into_part(&Rational::one())));
                    let lhs = self.rules.get(s).unwrap().lhs.clone();
                    let poly = NCPoly::word(lhs) - nf.clone();
                    self.record(&poly, parts)
                }
                None => None,
            };
            self.rules.replace_rhs(s, nf, new_origin);
        }
    }
}

fn entry_part(o: usize) -> Part {
    Part {
        coeff: Rational::one(),
        left: Word::empty(),
        source: Source::Entry(o),
        right: Word::empty(),
    }
}

/// Completes the relations of `pres` up to the configured overlap degree.
pub fn complete(pres: &Presentation, opts: &CompletionOptions) -> RewriteSystem {
    let mut st = State {
        rules: RuleSet::default(),
        arena: opts.track.then(Vec::new),
        queue: BTreeSet::new(),
        bound: opts.degree_bound,
        cap: opts.rule_cap.max(1),
        skipped: false,
        capped: false,
        collapsed: false,
    };
    // Insert generators of lower degree first; the relation index keeps the
    // order canonical among equal leading words.
    let mut order: Vec<usize> = (0..pres.relations().len()).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (&pres.relations()[i], &pres.relations()[j]);
        a.leading().map(|t| t.0).cmp(&b.leading().map(|t| t.0)).then(i.cmp(&j))
    });
    for i in order {
        let parts = vec![Part {
            coeff: Rational::one(),
            left: Word::empty(),
            source: Source::Relation(i),
            right: Word::empty(),
        }];
        st.insert(pres.relations()[i].clone(), parts);
        if st.collapsed || st.capped {
            break;
        }
    }
    st.run();
    if !st.collapsed {
        st.interreduce_rhs();
    }
    let complete_up_to = if st.collapsed {
        opts.degree_bound
    } else {
        st.queue
            .first()
            .map_or(opts.degree_bound, |o| o.degree.saturating_sub(1))
    };
    let saturated = !st.collapsed && !st.capped && st.queue.is_empty() && !st.skipped;
    let rules: Vec<Rule> = st.rules.live().map(|(_, r)| r.clone()).collect();
    let mut rs = RewriteSystem::from_parts(
        pres.alphabet().clone(),
        rules,
        opts.degree_bound,
        st.arena.map(Arc::new),
    );
    rs.complete_up_to = complete_up_to;
    rs.saturated = saturated;
    rs.capped = st.capped;
    rs.collapsed = st.collapsed;
    rs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::parse_presentation;

    #[test]
    fn idempotent_saturates() {
        let p = parse_presentation("letters: e\ne*e - e\n").unwrap();
        let rs = complete(&p, &CompletionOptions::with_degree(3));
        assert_eq!(rs.len(), 1);
        assert!(rs.saturated);
        assert!(!rs.collapsed);
    }

    #[test]
    fn orthogonal_projections_collapse() {
        // e + f = 1, e f = 0, e^2 = e, f^2 = f, and also e = f forces 1 = 0
        let p = parse_presentation("letters: e f\ne*e = e\nf*f = f\ne + f = 1\ne*f\ne - f\n").unwrap();
        let opts = CompletionOptions {
            degree_bound: 3,
            track: true,
            ..Default::default()
        };
        let rs = complete(&p, &opts);
        assert!(rs.collapsed);
        assert!(rs.normal_form(&NCPoly::one()).is_zero());
        assert_eq!(rs.len(), 1);
    }

    #[test]
    fn commutator_overlap() {
        // b a -> a b with a^2 -> 0: the system is already confluent
        let p = parse_presentation("letters: a b\nb*a - a*b\na*a\n").unwrap();
        let rs = complete(&p, &CompletionOptions::with_degree(4));
        assert!(rs.saturated);
        assert_eq!(rs.len(), 2);
        let x = crate::ncalg::parse_poly("b*a*a", p.alphabet()).unwrap();
        assert!(rs.normal_form(&x).is_zero());
    }
}
