//! Text form of field elements: sums of terms such as `3/2*z^4`, `-l*z`, `7`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{FieldContext, FieldElement};
use crate::error::{Error, Result};

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let phi = self.ctx.phi();
        let mut first = true;
        for (idx, q) in self.coords().into_iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let (k, lam) = (idx % phi, idx >= phi);
            let neg = q.is_negative();
            let a = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut factors = Vec::new();
            if !a.is_one() || (k == 0 && !lam) {
                factors.push(rational_str(&a));
            }
            match k {
                0 => {}
                1 => factors.push("z".into()),
                _ => factors.push(format!("z^{k}")),
            }
            if lam {
                factors.push("l".into());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

pub fn rational_str(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Z,
    L,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            'z' => out.push(Tok::Z),
            'l' => {
                if cs[i..].iter().collect::<String>().starts_with("lambda") {
                    i += 5;
                }
                out.push(Tok::L);
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i + 1 < cs.len() && cs[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = cs[start..=i].iter().collect();
                out.push(Tok::Num(text.parse().expect("digits")));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{other}` in `{s}`"
                )))
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ctx: &'a Arc<FieldContext>,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in `{}`", self.src))
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = FieldElement::zero(self.ctx);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc - t } else { acc + t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(if neg { -n } else { n })
            }
            _ => Err(self.err("expected integer")),
        }
    }

    fn factor(&mut self) -> Result<FieldElement> {
        let base = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let d = self.int()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    FieldElement::from_rational(self.ctx, &BigRational::new(n, d))
                } else {
                    FieldElement::from_bigint(self.ctx, n)
                }
            }
            Some(Tok::Z) => {
                self.pos += 1;
                if let Some(Tok::Caret) = self.peek() {
                    self.pos += 1;
                    let k = self.int()?;
                    let n = BigInt::from(self.ctx.conductor());
                    let k = ((k % &n) + &n) % &n;
                    let k: i64 = k.try_into().expect("reduced exponent fits");
                    return Ok(FieldElement::zeta_power(self.ctx, k));
                }
                FieldElement::zeta_power(self.ctx, 1)
            }
            Some(Tok::L) => {
                self.pos += 1;
                FieldElement::lambda(self.ctx)?
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                e
            }
            _ => return Err(self.err("expected a number, `z`, `l` or `(`")),
        };
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let k = self.int()?;
            let k: i64 = k.try_into().map_err(|_| self.err("exponent too large"))?;
            return base.pow_i(k);
        }
        Ok(base)
    }
}

/// Parses a literal such as `1/2 - z^3 + 2*l*z` in `ctx`.
pub fn parse_element(ctx: &Arc<FieldContext>, s: &str) -> Result<FieldElement> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty field element".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        ctx,
        src: s,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a comma-separated triple, e.g. `1,z^4,0`.
pub fn parse_triple(ctx: &Arc<FieldContext>, s: &str) -> Result<[FieldElement; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "expected three comma-separated entries in `{s}`"
        )));
    }
    Ok([
        parse_element(ctx, parts[0])?,
        parse_element(ctx, parts[1])?,
        parse_element(ctx, parts[2])?,
    ])
}
