//! Text format for presentations.
//!
//! ```text
//! # comment
//! letters: e f u u'
//! e*e = e
//! u'*u - 1
//! (e + f)' * u = 2/3*u
//! ```
//!
//! The `letters:` line declares generators in order; `name'` declares the
//! adjoint partner of `name`, other letters are self-adjoint. Each further
//! line is one relation, either an expression (read as `= 0`) or `lhs = rhs`.
//! `*` multiplies, a postfix `'` takes the adjoint, `^k` raises to a power.

use num_bigint::BigInt;

use super::poly::NCPoly;
use super::presentation::Presentation;
use super::word::Alphabet;
use super::{NcError, NcResult};
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(Rational),
    Plus,
    Minus,
    Times,
    Prime,
    Caret,
    LParen,
    RParen,
    Eq,
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    end_col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> NcError {
    NcError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(src: &str, line: usize) -> NcResult<Lexed> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\r' => {
                i += 1;
                continue;
            }
            '+' => toks.push((Tok::Plus, col)),
            '-' => toks.push((Tok::Minus, col)),
            '*' => toks.push((Tok::Times, col)),
            '\'' => toks.push((Tok::Prime, col)),
            '^' => toks.push((Tok::Caret, col)),
            '(' => toks.push((Tok::LParen, col)),
            ')' => toks.push((Tok::RParen, col)),
            '=' => toks.push((Tok::Eq, col)),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
                let mut value = Rational::from_integer(num);
                if i < chars.len() && chars[i] == '/' {
                    let dstart = i + 1;
                    let mut j = dstart;
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == dstart {
                        return Err(err(line, i + 1, "expected a denominator after '/'"));
                    }
                    let den: BigInt = chars[dstart..j].iter().collect::<String>().parse().unwrap();
                    if num_traits::Zero::is_zero(&den) {
                        return Err(err(line, dstart + 1, "zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                    i = j;
                }
                toks.push((Tok::Num(value), col));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '.')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            other => return Err(err(line, col, format!("unexpected character {other:?}"))),
        }
        i += 1;
    }
    Ok(Lexed {
        toks,
        end_col: chars.len() + 1,
    })
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
    end_col: usize,
    al: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |&(_, c)| c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> NcResult<NCPoly> {
        let mut acc = NCPoly::zero();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -1
            }
            Some(Tok::Plus) => {
                self.bump();
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc - t } else { acc + t };
            sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => return Ok(acc),
            };
            self.bump();
        }
    }

    fn term(&mut self) -> NcResult<NCPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Times) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> NcResult<NCPoly> {
        let mut base = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Prime) => {
                    self.bump();
                    base = base.star(self.al);
                }
                Some(Tok::Caret) => {
                    self.bump();
                    let col = self.col();
                    match self.bump() {
                        Some(Tok::Num(k)) if k.is_integer() => {
                            let k: u32 = k
                                .to_integer()
                                .try_into()
                                .map_err(|_| err(self.line, col, "exponent too large"))?;
                            base = base.pow(k);
                        }
                        _ => return Err(err(self.line, col, "expected an integer exponent")),
                    }
                }
                _ => return Ok(base),
            }
        }
    }

    fn atom(&mut self) -> NcResult<NCPoly> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(c)) => Ok(NCPoly::constant(c)),
            Some(Tok::Ident(name)) => match self.al.letter(&name) {
                Some(l) => Ok(NCPoly::letter(l)),
                None => Err(err(self.line, col, format!("unknown letter {name:?}"))),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                let c = self.col();
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(err(self.line, c, "expected ')'")),
                }
            }
            Some(t) => Err(err(self.line, col, format!("unexpected token {t:?}"))),
            None => Err(err(self.line, col, "unexpected end of expression")),
        }
    }
}

fn parse_line(src: &str, line: usize, al: &Alphabet) -> NcResult<NCPoly> {
    let lexed = lex(src, line)?;
    let mut p = Parser {
        toks: &lexed.toks,
        pos: 0,
        line,
        end_col: lexed.end_col,
        al,
    };
    let lhs = p.expr()?;
    let out = if p.peek() == Some(&Tok::Eq) {
        p.bump();
        let rhs = p.expr()?;
        lhs - rhs
    } else {
        lhs
    };
    if p.pos < p.toks.len() {
        return Err(err(line, p.col(), "trailing input"));
    }
    Ok(out)
}

/// Parses one expression or equation against an alphabet.
pub fn parse_poly(src: &str, al: &Alphabet) -> NcResult<NCPoly> {
    parse_line(src, 1, al)
}

pub fn parse_presentation(text: &str) -> NcResult<Presentation> {
    let mut pres: Option<Presentation> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        match &mut pres {
            None => {
                let Some(rest) = content.trim_start().strip_prefix("letters:") else {
                    return Err(err(line, 1, "expected `letters:` declaration"));
                };
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                let al = Alphabet::from_declaration(&names).map_err(|e| err(line, 1, e.to_string()))?;
                pres = Some(Presentation::new(al));
            }
            Some(p) => {
                let r = parse_line(content, line, p.alphabet())?;
                p.add_relation(r);
            }
        }
    }
    pres.ok_or_else(|| err(1, 1, "missing `letters:` declaration"))
}
