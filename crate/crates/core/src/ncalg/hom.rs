//! Homomorphism checks and hereditary closure.

use serde_json::json;

use super::poly::NCPoly;
use super::presentation::Presentation;
use super::rewrite::RewriteSystem;
use super::word::Alphabet;
use super::{NcError, NcResult};
use crate::par;

/// Image and residual of one source relation.
#[derive(Debug, Clone)]
pub struct HomEntry {
    pub relation: NCPoly,
    pub image: NCPoly,
    /// Normal form of the image in the target system.
    pub residual: NCPoly,
}

#[derive(Debug, Clone)]
pub struct HomReport {
    pub entries: Vec<HomEntry>,
}

impl HomReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.residual.is_zero())
    }

    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| !e.residual.is_zero()).count()
    }

    pub fn to_json(&self, src: &Alphabet, dst: &Alphabet) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|e| {
                let terms: Vec<_> = e
                    .residual
                    .terms()
                    .rev()
                    .map(|(w, c)| json!([c.to_string(), dst.format_word(w)]))
                    .collect();
                json!({
                    "relation": e.relation.display(src).to_string(),
                    "image": e.image.display(dst).to_string(),
                    "residual": e.residual.display(dst).to_string(),
                    "residual_terms": terms,
                })
            })
            .collect();
        json!({
            "pass": self.pass(),
            "relations": self.entries.len(),
            "failures": self.failures(),
            "entries": entries,
        })
    }
}

/// Checks that `l -> images[l]` defines a unital `*`-homomorphism from the
/// algebra presented by `src` into the algebra of `dst`: every source
/// relation must map to a polynomial with normal form zero.
///
/// `images` is indexed by source letter and must be star-compatible.
pub fn verify_homomorphism(
    src: &Presentation,
    dst: &RewriteSystem,
    images: &[NCPoly],
) -> NcResult<HomReport> {
    let sal = src.alphabet();
    if images.len() != sal.len() {
        return Err(NcError::AlphabetMismatch {
            expected: sal.len(),
            got: images.len(),
        });
    }
    let dal = dst.alphabet();
    for l in 0..sal.len() as u16 {
        let img = &images[l as usize];
        if img.letters_used().any(|x| x as usize >= dal.len()) {
            return Err(NcError::AlphabetMismatch {
                expected: dal.len(),
                got: img.letters_used().max().unwrap_or(0) as usize + 1,
            });
        }
        let starred = &images[sal.star(l) as usize];
        if dst.normal_form(&(img.star(dal) - starred.clone())) != NCPoly::zero() {
            return Err(NcError::BadStarImage(sal.name(l).to_string()));
        }
    }
    let entries = par::map(src.relations(), |r| {
        let image = r.substitute(images);
        let residual = dst.normal_form(&image);
        HomEntry {
            relation: r.clone(),
            image,
            residual,
        }
    });
    Ok(HomReport { entries })
}

/// One hereditary saturation step: if `sum x_i* x_i` reduces to zero, the
/// relations `x_i = 0` are appended. Otherwise the presentation is returned
/// unchanged.
pub fn hereditary_closure_step(
    pres: &Presentation,
    rs: &RewriteSystem,
    candidates: &[NCPoly],
) -> Presentation {
    let al = pres.alphabet();
    let sum: NCPoly = candidates.iter().map(|x| &x.star(al) * x).sum();
    let mut out = pres.clone();
    if rs.normal_form(&sum).is_zero() {
        for x in candidates {
            out.add_relation(x.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{complete, parse_poly, parse_presentation, CompletionOptions};

    #[test]
    fn identity_and_scaled_maps() {
        let p = parse_presentation("letters: e\ne*e = e\n").unwrap();
        let rs = complete(&p, &CompletionOptions::default());
        let id = vec![NCPoly::letter(0)];
        assert!(verify_homomorphism(&p, &rs, &id).unwrap().pass());
        let double = vec![NCPoly::letter(0).scale(&crate::Rational::from_integer(2.into()))];
        let rep = verify_homomorphism(&p, &rs, &double).unwrap();
        assert!(!rep.pass());
        // 4e^2 - 2e reduces to 2e
        assert_eq!(rep.entries[0].residual, parse_poly("2*e", p.alphabet()).unwrap());
        assert!(verify_homomorphism(&p, &rs, &[]).is_err());
    }

    #[test]
    fn closure_step() {
        let p = parse_presentation("letters: a b\na*a = a\nb*b = b\na + b\n").unwrap();
        let rs = complete(&p, &CompletionOptions::default());
        let al = p.alphabet();
        let x = parse_poly("a", al).unwrap();
        // a* a + b* b = a + b = 0
        let y = parse_poly("b", al).unwrap();
        let q = hereditary_closure_step(&p, &rs, &[x.clone(), y]);
        assert!(q.contains_relation(&x));

        let e = parse_presentation("letters: e\ne*e = e\n").unwrap();
        let ers = complete(&e, &CompletionOptions::default());
        let ex = parse_poly("e", e.alphabet()).unwrap();
        assert_eq!(hereditary_closure_step(&e, &ers, &[ex]), e);
        assert_eq!(hereditary_closure_step(&e, &ers, &[NCPoly::zero()]), e);
    }
}
