//! Text form of [`PiecewiseFunction`].
//!
//! ```text
//! expr      := piecewise | 'ealpha(' real ')' | sum
//! piecewise := 'piece' '[' real ',' real ']' ':' sum (';' '[' real ',' real ']' ':' sum)*
//! sum       := ['+'|'-'] term (('+'|'-') term)*
//! term      := real | [real '*'] atom
//! atom      := 't' ['^' real] ['*' 'L' '^' real] | 'L' '^' real
//! ```
//!
//! `L` stands for `1 - ln t`. Whitespace is ignored. The [`Display`] impl on
//! [`PiecewiseFunction`] prints the same grammar, and parsing the printed
//! text gives back a structurally equal value.
//!
//! [`Display`]: std::fmt::Display

use std::fmt;

use super::piecewise::PiecewiseFunction;
use super::term::{PowLogTerm, TermSum};
use crate::error::ParseError;

pub fn parse(expr: &str) -> Result<PiecewiseFunction, ParseError> {
    let mut p = Parser { src: expr, pos: 0 };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn syntax(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{c}'")))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn real(&mut self, signed: bool) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        if signed && i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            i += 1;
        }
        let digits_start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
            i += 1;
        }
        if i == digits_start {
            return Err(self.syntax("expected a number"));
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            let exp_digits = j;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j > exp_digits {
                i = j;
            }
        }
        let text = &self.src[start..i];
        let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
            pos: start,
            msg: format!("malformed number '{text}'"),
        })?;
        if !value.is_finite() {
            return Err(ParseError::NonFinite { pos: start });
        }
        self.pos = i;
        Ok(value)
    }

    fn expr(&mut self) -> Result<PiecewiseFunction, ParseError> {
        if self.eat_keyword("piece") {
            return self.piecewise();
        }
        if self.eat_keyword("ealpha") {
            self.expect('(')?;
            let at = self.pos;
            let alpha = self.real(true)?;
            self.expect(')')?;
            return PiecewiseFunction::ramp(alpha).map_err(|e| ParseError::Syntax {
                pos: at,
                msg: e.to_string(),
            });
        }
        Ok(PiecewiseFunction::single(self.sum()?))
    }

    fn piecewise(&mut self) -> Result<PiecewiseFunction, ParseError> {
        let mut breakpoints = Vec::new();
        let mut pieces = Vec::new();
        loop {
            self.expect('[')?;
            let lo_pos = self.pos;
            let lo = self.real(true)?;
            self.expect(',')?;
            let hi = self.real(true)?;
            self.expect(']')?;
            self.expect(':')?;
            match breakpoints.last() {
                None if lo != 0.0 => {
                    return Err(ParseError::BreakpointOrder {
                        pos: lo_pos,
                        msg: format!("first interval must start at 0, found {lo}"),
                    })
                }
                None => breakpoints.push(lo),
                Some(&prev) if prev != lo => {
                    return Err(ParseError::BreakpointOrder {
                        pos: lo_pos,
                        msg: format!("interval starts at {lo} but previous ended at {prev}"),
                    })
                }
                Some(_) => {}
            }
            if !(hi > lo) {
                return Err(ParseError::BreakpointOrder {
                    pos: lo_pos,
                    msg: format!("empty or reversed interval [{lo}, {hi}]"),
                });
            }
            breakpoints.push(hi);
            pieces.push(self.sum()?);
            if !self.eat(';') {
                break;
            }
        }
        if *breakpoints.last().unwrap() != 1.0 {
            return Err(ParseError::BreakpointOrder {
                pos: self.pos,
                msg: "last interval must end at 1".into(),
            });
        }
        PiecewiseFunction::new(breakpoints, pieces).map_err(|e| ParseError::BreakpointOrder {
            pos: self.pos,
            msg: e.to_string(),
        })
    }

    fn sum(&mut self) -> Result<TermSum, ParseError> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') {
            -1.0
        } else {
            self.eat('+');
            1.0
        };
        loop {
            let mut term = self.term()?;
            term.coeff *= sign;
            terms.push(term);
            sign = if self.eat('+') {
                1.0
            } else if self.eat('-') {
                -1.0
            } else {
                break;
            };
        }
        Ok(TermSum::from_terms(terms))
    }

    fn term(&mut self) -> Result<PowLogTerm, ParseError> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let c = self.real(false)?;
                if !self.eat('*') {
                    return Ok(PowLogTerm::constant(c));
                }
                c
            }
            _ => 1.0,
        };
        self.atom(coeff)
    }

    fn atom(&mut self, coeff: f64) -> Result<PowLogTerm, ParseError> {
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                let a = if self.eat('^') { self.real(true)? } else { 1.0 };
                let b = if self.eat('*') {
                    if self.peek() != Some('L') {
                        return Err(self.syntax("expected 'L' after 't*'"));
                    }
                    self.pos += 1;
                    self.expect('^')?;
                    self.real(true)?
                } else {
                    0.0
                };
                Ok(PowLogTerm::new(coeff, a, b))
            }
            Some('L') => {
                self.pos += 1;
                self.expect('^')?;
                Ok(PowLogTerm::new(coeff, 0.0, self.real(true)?))
            }
            _ => Err(self.syntax("expected 't', 'L' or a number")),
        }
    }
}

fn fmt_real(x: f64) -> String {
    let m = x.abs();
    if m != 0.0 && !(1e-4..1e15).contains(&m) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn fmt_term(term: &PowLogTerm) -> String {
    let mag = term.coeff.abs();
    if term.a == 0.0 && term.b == 0.0 {
        return fmt_real(mag);
    }
    let mut out = String::new();
    if mag != 1.0 {
        out.push_str(&fmt_real(mag));
        out.push('*');
    }
    if term.a != 0.0 {
        out.push('t');
        if term.a != 1.0 {
            out.push('^');
            out.push_str(&fmt_real(term.a));
        }
    }
    if term.b != 0.0 {
        if term.a != 0.0 {
            out.push('*');
        }
        out.push_str("L^");
        out.push_str(&fmt_real(term.b));
    }
    out
}

impl fmt::Display for TermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, term) in self.terms().iter().enumerate() {
            let neg = term.coeff < 0.0;
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            f.write_str(&fmt_term(term))?;
        }
        Ok(())
    }
}

impl fmt::Display for PiecewiseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces().len() == 1 {
            return write!(f, "{}", self.pieces()[0]);
        }
        f.write_str("piece ")?;
        for (i, (lo, hi, sum)) in self.segments().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "[{}, {}]: {}", fmt_real(lo), fmt_real(hi), sum)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for PiecewiseFunction {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
