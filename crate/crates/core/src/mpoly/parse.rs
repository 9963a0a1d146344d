//! Text parser for polynomials.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [coeff '*'] monom | coeff
//! monom  := factor ('*' factor)*
//! factor := var ['^' uint]
//! coeff  := uint | 'g' ['^' uint] | '[' uint (',' uint)* ']'
//! ```
//! Whitespace is ignored everywhere.

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::gf::{Elem, Gf};

pub fn parse_poly(text: &str, field: &Gf, arity: usize) -> Result<MultiPoly> {
    if arity != 2 && arity != 3 {
        return Err(Error::ArityMismatch);
    }
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        field,
        arity,
    };
    let out = p.poly()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.syntax("unexpected character"));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    field: &'a Gf,
    arity: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn syntax(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn poly(&mut self) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.field, self.arity);
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return Err(self.syntax("empty polynomial")),
            _ => false,
        };
        loop {
            let (m, mut c) = self.term()?;
            if negate {
                c = self.field.neg(c);
            }
            out.add_term(m, c);
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn is_var_start(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() && c != b'g')
    }

    fn term(&mut self) -> Result<(Monomial, Elem)> {
        if self.is_var_start() {
            return Ok((self.monom()?, Elem::ONE));
        }
        let c = self.coeff()?;
        if self.peek() == Some(b'*') {
            self.pos += 1;
            if !self.is_var_start() {
                return Err(self.syntax("expected a variable after '*'"));
            }
            return Ok((self.monom()?, c));
        }
        Ok((Monomial::ONE, c))
    }

    fn monom(&mut self) -> Result<Monomial> {
        let mut e = [0u32; 3];
        loop {
            let (v, k) = self.factor()?;
            e[v] = e[v]
                .checked_add(k)
                .ok_or_else(|| self.syntax("exponent overflow"))?;
            if self.peek() != Some(b'*') {
                break;
            }
            self.pos += 1;
            if !self.is_var_start() {
                return Err(self.syntax("expected a variable after '*'"));
            }
        }
        Ok(Monomial(e))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        self.skip_ws();
        let at = self.pos;
        let c = self.s[at] as char;
        let v = match c {
            'x' => 0,
            'y' => 1,
            'z' if self.arity == 3 => 2,
            _ => return Err(Error::UnknownVariable { name: c, pos: at }),
        };
        self.pos += 1;
        let mut k = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.uint()?;
            k = u32::try_from(n).map_err(|_| self.syntax("exponent too large"))?;
        }
        Ok((v, k))
    }

    fn uint(&mut self) -> Result<u128> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u128 = 0;
        while let Some(&b) = self.s.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u128))
                .ok_or(Error::BadCoefficient {
                    pos: start,
                    msg: "integer too large".into(),
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("expected an unsigned integer"));
        }
        Ok(v)
    }

    fn coeff(&mut self) -> Result<Elem> {
        let f = self.field;
        let p = f.characteristic() as u128;
        match self.peek() {
            Some(b'g') => {
                let at = self.pos;
                self.pos += 1;
                if f.degree() == 1 {
                    return Err(Error::BadCoefficient {
                        pos: at,
                        msg: "'g' needs an extension field".into(),
                    });
                }
                let mut k = 1u128;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    k = self.uint()?;
                }
                let k = (k % (f.order() as u128 - 1)) as u64;
                Ok(f.pow_u(f.generator(), k))
            }
            Some(b'[') => {
                let at = self.pos;
                self.pos += 1;
                let mut c = vec![(self.uint()? % p) as u32];
                loop {
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            c.push((self.uint()? % p) as u32);
                        }
                        Some(b']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.syntax("expected ',' or ']'")),
                    }
                }
                f.from_coeffs(&c).map_err(|_| Error::BadCoefficient {
                    pos: at,
                    msg: format!("more than {} coefficients", f.degree()),
                })
            }
            Some(b) if b.is_ascii_digit() => Ok(f.from_int((self.uint()? % p) as i64)),
            Some(b) if b.is_ascii_alphabetic() => Err(Error::UnknownVariable {
                name: b as char,
                pos: self.pos,
            }),
            Some(_) => Err(self.syntax("expected a term")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}
