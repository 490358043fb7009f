//! Shared text grammar for tropical and Laurent polynomials.
//!
//! A polynomial is a list of terms `c*x^j*y^k` joined by `+`. The coefficient
//! may be omitted (it then defaults to the multiplicative unit of the
//! semiring), `*` may be omitted between factors, exponent `1` may be omitted
//! and negative exponents are written in parentheses: `x^(-1)`. Variables are
//! `x`/`z` for the first coordinate and `y`/`w` for the second.
//!
//! Coefficients are decimal literals (with optional exponent), rationals
//! `p/q`, and in complex mode imaginary literals `2i` or parenthesised
//! `(a+bi)`. Decimal literals are converted exactly.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Rational};

/// A coefficient literal with exact rational parts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Literal {
    pub re: Rational,
    pub im: Rational,
}

#[derive(Clone, Debug)]
pub(crate) struct RawTerm {
    /// `None` when the coefficient was omitted.
    pub coeff: Option<Literal>,
    /// True when the term was introduced by a binary minus.
    pub negated: bool,
    pub exponent: LatticePoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Max-plus: `+` only, real coefficients (a leading `-` is part of the literal).
    Tropical,
    /// Ordinary sums: `+` and `-` both separate terms, complex coefficients.
    Laurent,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Var(u8),
    Imag,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn pow10(e: u32) -> Result<i128> {
    10i128.checked_pow(e).ok_or_else(|| Error::InvalidArgument("decimal literal out of range".into()))
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let simple = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' | '\u{22c5}' | '\u{2297}' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            'x' | 'z' => Some(Tok::Var(0)),
            'y' | 'w' => Some(Tok::Var(1)),
            'i' => Some(Tok::Imag),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, line: tl, column: tc });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            let mut int_digits = String::new();
            let mut frac_digits = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                int_digits.push(chars[i]);
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    frac_digits.push(chars[i]);
                    i += 1;
                }
            }
            if int_digits.is_empty() && frac_digits.is_empty() {
                return Err(parse_err(tl, tc, "malformed number"));
            }
            let mut exp10: i64 = 0;
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                let mut sign = 1i64;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    if chars[j] == '-' {
                        sign = -1;
                    }
                    j += 1;
                }
                let ds = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == ds {
                    return Err(parse_err(tl, tc, "malformed exponent in number"));
                }
                let digits: String = chars[ds..j].iter().collect();
                exp10 = sign * digits.parse::<i64>().map_err(|_| parse_err(tl, tc, "exponent out of range"))?;
                i = j;
            }
            let mantissa: i128 =
                format!("{int_digits}{frac_digits}")
                    .trim_start_matches('0')
                    .parse::<i128>()
                    .or_else(|e| {
                        if format!("{int_digits}{frac_digits}").chars().all(|c| c == '0') {
                            Ok(0)
                        } else {
                            Err(e)
                        }
                    })
                    .map_err(|_| parse_err(tl, tc, "number out of range"))?;
            let scale = exp10 - frac_digits.len() as i64;
            let value = if scale >= 0 {
                let m = pow10(scale as u32).map_err(|_| parse_err(tl, tc, "number out of range"))?;
                Rational::from_integer(mantissa.checked_mul(m).ok_or_else(|| parse_err(tl, tc, "number out of range"))?)
            } else {
                let d = pow10((-scale) as u32).map_err(|_| parse_err(tl, tc, "number out of range"))?;
                Rational::new(mantissa, d)
            };
            col += i - start;
            out.push(Token { tok: Tok::Num(value), line: tl, column: tc });
            continue;
        }
        return Err(parse_err(tl, tc, format!("unexpected character '{c}'")));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    mode: Mode,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.line, t.column)).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (l, c) = self.here();
        parse_err(l, c, msg)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<Rational> {
        match self.bump() {
            Some(Tok::Num(v)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => Ok(v / d),
                        Some(Tok::Num(_)) => {
                            self.pos -= 1;
                            Err(self.err("division by zero in rational literal"))
                        }
                        _ => {
                            self.pos -= 1;
                            Err(self.err("expected denominator after '/'"))
                        }
                    }
                } else {
                    Ok(v)
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected number"))
            }
        }
    }

    /// `number ['i'] | 'i'`, returns a literal.
    fn real_or_imag(&mut self) -> Result<Literal> {
        if self.eat(&Tok::Imag) {
            return Ok(Literal { re: Rational::zero(), im: Rational::one() });
        }
        let v = self.number()?;
        if self.peek() == Some(&Tok::Imag) {
            if self.mode == Mode::Tropical {
                return Err(self.err("complex coefficients are not allowed in tropical polynomials"));
            }
            self.pos += 1;
            Ok(Literal { re: Rational::zero(), im: v })
        } else {
            Ok(Literal { re: v, im: Rational::zero() })
        }
    }

    fn paren_literal(&mut self) -> Result<Literal> {
        // after '('
        let mut total = Literal { re: Rational::zero(), im: Rational::zero() };
        let mut neg = self.eat(&Tok::Minus);
        loop {
            let lit = self.real_or_imag()?;
            let s = if neg { -Rational::one() } else { Rational::one() };
            total.re += s * lit.re;
            total.im += s * lit.im;
            if self.eat(&Tok::Plus) {
                neg = false;
            } else if self.eat(&Tok::Minus) {
                neg = true;
            } else {
                break;
            }
        }
        if !self.eat(&Tok::RParen) {
            return Err(self.err("expected ')' closing coefficient"));
        }
        Ok(total)
    }

    fn exponent(&mut self) -> Result<i64> {
        let neg_paren = self.eat(&Tok::LParen);
        let neg = self.eat(&Tok::Minus);
        if !neg && self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
        }
        let v = match self.bump() {
            Some(Tok::Num(v)) if v.is_integer() => *v.numer(),
            _ => {
                self.pos -= 1;
                return Err(self.err("expected integer exponent"));
            }
        };
        if neg_paren && !self.eat(&Tok::RParen) {
            return Err(self.err("expected ')' after exponent"));
        }
        let v = i64::try_from(v).map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn term(&mut self, negated: bool) -> Result<RawTerm> {
        let mut coeff = None;
        let mut sign = Rational::one();
        if self.eat(&Tok::Minus) {
            sign = -sign;
            if !matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Imag) | Some(Tok::LParen)) {
                if self.mode == Mode::Tropical {
                    return Err(self.err("expected coefficient after '-'"));
                }
                coeff = Some(Literal { re: Rational::one(), im: Rational::zero() });
            }
        }
        match self.peek() {
            Some(Tok::Num(_)) | Some(Tok::Imag) => coeff = Some(self.real_or_imag()?),
            Some(Tok::LParen) => {
                self.pos += 1;
                coeff = Some(self.paren_literal()?);
            }
            _ => {}
        }
        if let Some(c) = coeff.as_mut() {
            c.re *= sign;
            c.im *= sign;
        }
        let mut exp = [0i64; 2];
        let mut any_var = false;
        loop {
            let save = self.pos;
            let star = self.eat(&Tok::Star);
            match self.peek() {
                Some(Tok::Var(v)) => {
                    let v = *v as usize;
                    self.pos += 1;
                    let e = if self.eat(&Tok::Caret) { self.exponent()? } else { 1 };
                    exp[v] += e;
                    any_var = true;
                }
                _ => {
                    if star {
                        return Err(self.err("expected variable after '*'"));
                    }
                    self.pos = save;
                    break;
                }
            }
        }
        if coeff.is_none() && !any_var {
            return Err(self.err("expected term"));
        }
        Ok(RawTerm { coeff, negated, exponent: LatticePoint::new(exp[0], exp[1]) })
    }
}

pub(crate) fn parse_terms(text: &str, mode: Mode) -> Result<Vec<RawTerm>> {
    let toks = tokenize(text)?;
    let end = {
        let lines: Vec<&str> = text.split('\n').collect();
        (lines.len(), lines.last().map(|l| l.chars().count()).unwrap_or(0) + 1)
    };
    let mut p = Parser { toks, pos: 0, mode, end };
    if p.peek().is_none() {
        return Err(Error::EmptySupport);
    }
    let mut terms = vec![p.term(false)?];
    while let Some(t) = p.peek().cloned() {
        match t {
            Tok::Plus => {
                p.pos += 1;
                terms.push(p.term(false)?);
            }
            Tok::Minus if mode == Mode::Laurent => {
                p.pos += 1;
                terms.push(p.term(true)?);
            }
            _ => return Err(p.err("expected '+' between terms")),
        }
    }
    Ok(terms)
}
