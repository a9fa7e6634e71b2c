//! Parser for the amplitude and ket text grammar.
//!
//! ```text
//! ket     := '0' | ['+'|'-'] kterm (('+'|'-') kterm)*
//! kterm   := [product ['*']] '|' bits '>'
//! amp     := ['+'|'-'] product (('+'|'-') product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ['^' int]
//! atom    := number ['i'] | 'i' | symbol | '(' amp ')' ['i']
//! number  := int ['/' int]
//! symbol  := ident ['~']
//! ```
//!
//! The canonical renderings produced by `Display` on amplitudes and kets are
//! accepted by this grammar and parse back to equal values.

use thiserror::Error;

use num::{BigInt, BigRational, One, Zero};

use crate::ket::{Ket, StateError};
use crate::scalar::GaussianRational;
use crate::symbolic::{SymbolError, SymbolTable, SymbolicAmplitude, IMAGINARY_UNIT};

/// A positioned syntax error. `column` is a 1-based character offset into
/// the parsed text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct SyntaxError {
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    fn new(column: usize, message: impl Into<String>) -> Self {
        SyntaxError { column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Basis(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

fn describe(t: Option<&Token>) -> String {
    match t.map(|t| &t.tok) {
        None => "end of input".into(),
        Some(Tok::Int(n)) => format!("'{n}'"),
        Some(Tok::Ident(s)) => format!("'{s}'"),
        Some(Tok::Basis(b)) => format!("'|{b}>'"),
        Some(Tok::Plus) => "'+'".into(),
        Some(Tok::Minus) => "'-'".into(),
        Some(Tok::Star) => "'*'".into(),
        Some(Tok::Slash) => "'/'".into(),
        Some(Tok::Caret) => "'^'".into(),
        Some(Tok::LParen) => "'('".into(),
        Some(Tok::RParen) => "')'".into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, col });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let n = digits.parse::<BigInt>().map_err(|e| SyntaxError::new(col, e.to_string()))?;
            out.push(Token { tok: Tok::Int(n), col });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if i < chars.len() && chars[i] == '~' {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col });
        } else if c == '|' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i] != '>' {
                let b = chars[i];
                if b != '0' && b != '1' {
                    return Err(SyntaxError::new(i + 1, format!("invalid bit '{b}' in basis ket")));
                }
                i += 1;
            }
            if i >= chars.len() {
                return Err(SyntaxError::new(col, "unterminated basis ket, expected '>'"));
            }
            let bits: String = chars[start..i].iter().collect();
            if bits.is_empty() {
                return Err(SyntaxError::new(col, "empty basis ket '|>'"));
            }
            i += 1;
            out.push(Token { tok: Tok::Basis(bits), col });
        } else {
            return Err(SyntaxError::new(col, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    symbols: &'a SymbolTable,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, symbols: &'a SymbolTable) -> Result<Self, SyntaxError> {
        Ok(Parser { toks: lex(text)?, pos: 0, symbols, end_col: text.chars().count() + 1 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        SyntaxError::new(
            self.col(),
            format!("expected {wanted}, found {}", describe(self.toks.get(self.pos))),
        )
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn expect_end(&self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of expression"))
        }
    }

    fn amp(&mut self) -> Result<SymbolicAmplitude, SyntaxError> {
        let mut acc = self.signed_product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.product()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_product(&mut self) -> Result<SymbolicAmplitude, SyntaxError> {
        if let Some(Tok::Plus) = self.peek() {
            self.bump();
        }
        self.product()
    }

    fn product(&mut self) -> Result<SymbolicAmplitude, SyntaxError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            // `2*|0>` is a coefficient followed by a ket, not a product
            if let Some(Token { tok: Tok::Basis(_), .. }) = self.toks.get(self.pos + 1) {
                break;
            }
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SymbolicAmplitude, SyntaxError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<SymbolicAmplitude, SyntaxError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let col = self.col();
            match self.bump().map(|t| t.tok) {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| SyntaxError::new(col, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.unexpected("integer exponent"));
                }
            }
        }
        Ok(base)
    }

    fn imaginary_suffix(&mut self, value: SymbolicAmplitude) -> SymbolicAmplitude {
        if let Some(Tok::Ident(s)) = self.peek() {
            if s == IMAGINARY_UNIT {
                self.bump();
                return value.scale(&GaussianRational::i());
            }
        }
        value
    }

    fn atom(&mut self) -> Result<SymbolicAmplitude, SyntaxError> {
        let col = self.col();
        match self.bump().map(|t| t.tok) {
            Some(Tok::Int(numer)) => {
                let mut q = BigRational::from_integer(numer);
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dcol = self.col();
                    match self.bump().map(|t| t.tok) {
                        Some(Tok::Int(d)) if d.is_zero() => {
                            return Err(SyntaxError::new(dcol, "zero denominator"));
                        }
                        Some(Tok::Int(d)) => q /= BigRational::from_integer(d),
                        _ => {
                            self.pos -= 1;
                            return Err(self.unexpected("integer denominator"));
                        }
                    }
                }
                let value = SymbolicAmplitude::constant(GaussianRational::real(q));
                Ok(self.imaginary_suffix(value))
            }
            Some(Tok::Ident(name)) if name == IMAGINARY_UNIT => {
                Ok(SymbolicAmplitude::constant(GaussianRational::i()))
            }
            Some(Tok::Ident(name)) => match self.symbols.lookup(&name) {
                Ok(sym) => Ok(SymbolicAmplitude::symbol(sym)),
                Err(SymbolError::Undeclared(n)) => {
                    Err(SyntaxError::new(col, format!("undeclared symbol '{n}'")))
                }
                Err(e) => Err(SyntaxError::new(col, e.to_string())),
            },
            Some(Tok::LParen) => {
                let inner = self.amp()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.bump();
                    }
                    _ => return Err(self.unexpected("')'")),
                }
                Ok(self.imaginary_suffix(inner))
            }
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a number, symbol or '('"))
            }
        }
    }

    fn ket_term(&mut self) -> Result<(SymbolicAmplitude, String, usize), SyntaxError> {
        let coeff = if let Some(Tok::Basis(_)) = self.peek() {
            SymbolicAmplitude::one()
        } else {
            let c = self.product()?;
            if let Some(Tok::Star) = self.peek() {
                self.bump();
            }
            c
        };
        let col = self.col();
        match self.bump().map(|t| t.tok) {
            Some(Tok::Basis(bits)) => Ok((coeff, bits, col)),
            _ => {
                self.pos -= 1;
                Err(self.unexpected("a basis ket '|...>'"))
            }
        }
    }

    fn ket(&mut self, n_hint: Option<usize>) -> Result<Ket, SyntaxError> {
        // a lone `0` is the zero vector
        if self.toks.len() == 1 && self.toks[0].tok == Tok::Int(BigInt::zero()) {
            let n = n_hint.ok_or_else(|| {
                SyntaxError::new(1, "zero ket needs a known qubit count")
            })?;
            self.bump();
            return Ket::zero(n).map_err(|e| SyntaxError::new(1, e.to_string()));
        }
        let mut terms = Vec::new();
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        loop {
            let (c, bits, col) = self.ket_term()?;
            terms.push((if negate { -c } else { c }, bits, col));
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                None => break,
                _ => return Err(self.unexpected("'+', '-' or end of expression")),
            }
            self.bump();
        }
        let n = n_hint.unwrap_or(terms[0].1.len());
        let mut entries = Vec::with_capacity(terms.len());
        for (c, bits, col) in terms {
            if bits.len() != n {
                return Err(SyntaxError::new(
                    col,
                    format!("basis ket '|{bits}>' has {} qubits, expected {n}", bits.len()),
                ));
            }
            entries.push((bits, c));
        }
        Ket::from_terms(n, entries).map_err(|e: StateError| SyntaxError::new(1, e.to_string()))
    }
}

/// Parses an amplitude expression such as `(1/2)+(-3)i` or `alpha*beta~`.
pub fn parse_amplitude(text: &str, symbols: &SymbolTable) -> Result<SymbolicAmplitude, SyntaxError> {
    let mut p = Parser::new(text, symbols)?;
    if p.at_end() {
        return Err(SyntaxError::new(1, "empty amplitude"));
    }
    let a = p.amp()?;
    p.expect_end()?;
    Ok(a)
}

/// Parses a ket expression such as `|01> + |10>` or `(alpha)|0> - 2|1>`.
///
/// With `n_qubits` given, every basis ket must have that width; without it
/// the width of the first basis ket is used.
pub fn parse_ket(text: &str, symbols: &SymbolTable, n_qubits: Option<usize>) -> Result<Ket, SyntaxError> {
    let mut p = Parser::new(text, symbols)?;
    if p.at_end() {
        return Err(SyntaxError::new(1, "empty ket expression"));
    }
    let k = p.ket(n_qubits)?;
    p.expect_end()?;
    Ok(k)
}
