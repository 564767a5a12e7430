//! Presentations of `O(G_X)` and `O(G_Y, G_X)` for exact quantum graphs.
//!
//! The generator matrix `u = (u_{ij})` (rows indexed by the basis of `Y`,
//! columns by the basis of `X`) defines `ρ(e_j) = sum_i f_i ⊗ u_{ij}`. The
//! relations make `ρ` a unital `*`-homomorphism that is unitary for the GNS
//! inner products and intertwines the adjacency operators. Everything is
//! written in the matrix-unit basis, where structure constants are `0/1` and
//! the Gram matrices are diagonal.

use num_traits::{One, Zero};

use super::frame::Frame;
use super::{Mat, QgraphError, QgraphResult, QuantumGraph};
use crate::ncalg::{Alphabet, Letter, NCPoly, Presentation};
use crate::Rational;

struct Side<'a> {
    frame: Frame<Rational>,
    a: &'a Mat<Rational>,
}

fn side(qg: &QuantumGraph) -> QgraphResult<Side<'_>> {
    let frame = qg.qset.exact_frame().ok_or(QgraphError::NotExact)?;
    let (_, a) = qg.exact_adjacency().ok_or(QgraphError::NotExact)?;
    Ok(Side { frame, a })
}

/// Presentation of the quantum automorphism algebra `O(G_X)`, with generators
/// `u{i}_{j}` and their adjoints `u{i}_{j}'`.
pub fn qaut_presentation(qg: &QuantumGraph) -> QgraphResult<Presentation> {
    build(qg, qg, "u")
}

/// Presentation of `O(G_Y, G_X)` with generators `p{i}_{j}`, `i` a basis
/// index of `y` and `j` of `x`.
pub fn qiso_presentation(x: &QuantumGraph, y: &QuantumGraph) -> QgraphResult<Presentation> {
    build(x, y, "p")
}

fn build(x: &QuantumGraph, y: &QuantumGraph, prefix: &str) -> QgraphResult<Presentation> {
    let sx = side(x)?;
    let sy = side(y)?;
    let (dx, dy) = (sx.frame.d, sy.frame.d);
    let mut al = Alphabet::new();
    for i in 0..dy {
        for j in 0..dx {
            al.add_pair(&format!("{prefix}{i}_{j}"))
                .expect("generated names are valid and distinct");
        }
    }
    let u = |i: usize, j: usize| -> Letter { (2 * (i * dx + j)) as Letter };
    let us = |i: usize, j: usize| -> Letter { (2 * (i * dx + j) + 1) as Letter };
    let lin = |c: &Rational, l: Letter| NCPoly::term(c.clone(), crate::ncalg::Word::from_letters(&[l]));
    let quad = |c: &Rational, a: Letter, b: Letter| {
        NCPoly::term(c.clone(), crate::ncalg::Word::from_letters(&[a, b]))
    };
    let mut pres = Presentation::new(al);
    let (gx, gy) = (&sx.frame.gram, &sy.frame.gram);
    let (gxi, gyi) = (&sx.frame.gram_inv, &sy.frame.gram_inv);

    // u† G_Y u = G_X
    for p in 0..dx {
        for q in 0..dx {
            let mut r = NCPoly::constant(-gx.get(p, q).clone());
            for k in 0..dy {
                for l in 0..dy {
                    let g = gy.get(k, l);
                    if !g.is_zero() {
                        r = r + quad(g, us(k, p), u(l, q));
                    }
                }
            }
            pres.add_relation(r);
        }
    }
    // u G_X^{-1} u† = G_Y^{-1}
    for i in 0..dy {
        for j in 0..dy {
            let mut r = NCPoly::constant(-gyi.get(i, j).clone());
            for p in 0..dx {
                for q in 0..dx {
                    let g = gxi.get(p, q);
                    if !g.is_zero() {
                        r = r + quad(g, u(i, p), us(j, q));
                    }
                }
            }
            pres.add_relation(r);
        }
    }
    // ρ(e_p) ρ(e_q) = ρ(e_p e_q)
    let one = Rational::one();
    for t in 0..dy {
        for p in 0..dx {
            for q in 0..dx {
                let mut r = NCPoly::zero();
                for i in 0..dy {
                    for j in 0..dy {
                        if sy.frame.mult(i, j) == Some(t) {
                            r = r + quad(&one, u(i, p), u(j, q));
                        }
                    }
                }
                if let Some(s) = sx.frame.mult(p, q) {
                    r = r - lin(&one, u(t, s));
                }
                pres.add_relation(r);
            }
        }
    }
    // ρ(1) = 1
    for t in 0..dy {
        let mut r = NCPoly::constant(-sy.frame.unit[t].clone());
        for p in 0..dx {
            if !sx.frame.unit[p].is_zero() {
                r = r + lin(&sx.frame.unit[p], u(t, p));
            }
        }
        pres.add_relation(r);
    }
    // ρ(e_p*) = ρ(e_p)*
    for t in 0..dy {
        for p in 0..dx {
            let r = lin(&one, u(t, sx.frame.star(p))) - lin(&one, us(sy.frame.star(t), p));
            pres.add_relation(r);
        }
    }
    // (A_Y ⊗ 1) ρ = ρ A_X
    for t in 0..dy {
        for q in 0..dx {
            let mut r = NCPoly::zero();
            for i in 0..dy {
                let c = sy.a.get(t, i);
                if !c.is_zero() {
                    r = r + lin(c, u(i, q));
                }
            }
            for s in 0..dx {
                let c = sx.a.get(s, q);
                if !c.is_zero() {
                    r = r - lin(c, u(t, s));
                }
            }
            pres.add_relation(r);
        }
    }
    Ok(pres)
}
