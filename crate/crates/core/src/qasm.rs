// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! OpenQASM 3.0 subset reader and writer.
//!
//! Accepted input:
//!
//! ```text
//! OPENQASM 3.0;
//! include "stdgates.inc";      // ignored
//! qubit[4] q;                  // exactly one register
//! h q[0];
//! rz(-pi/4) q[1];
//! prx(pi/2, 0.25) q[2];
//! cx q[0], q[1];
//! ```
//!
//! Angles are constant expressions over numeric literals and `pi` (or `π`)
//! with `+ - * /`, unary minus and parentheses. Measurement, classical
//! registers, subroutines, gate definitions and control flow are rejected
//! with [`ParseErrorKind::UnsupportedFeature`].

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::ir::{Circuit, Gate, GateKind};

/// Largest register accepted by the parser.
pub const MAX_QUBITS: usize = 1 << 16;

const MAX_EXPR_NESTING: usize = 64;

const UNSUPPORTED_KEYWORDS: &[&str] = &[
    "measure", "reset", "barrier", "bit", "creg", "qreg", "if", "else", "for", "while", "def", "gate", "defcal",
    "cal", "return", "box", "delay", "let", "const", "input", "output", "int", "uint", "float", "angle", "bool",
    "complex", "duration", "stretch", "array", "ctrl", "negctrl", "inv", "pow", "gphase", "extern", "switch",
    "break", "continue", "end", "opaque", "defcalgrammar", "pragma",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParseErrorKind {
    Syntax,
    UnknownGate,
    ArityMismatch,
    UndeclaredQubit,
    UnsupportedFeature,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind:?}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Slash,
    Eq,
    Arrow,
    At,
    Other(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Number(s) => write!(f, "`{s}`"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::LBracket => f.write_str("`[`"),
            Tok::RBracket => f.write_str("`]`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::At => f.write_str("`@`"),
            Tok::Other(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn err(pos: Pos, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
    ParseError { line: pos.line, column: pos.column, message: message.into(), kind }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.chars().peekable(), pos: Pos { line: 1, column: 1 } }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) -> Result<(), ParseError> {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('/') => {
                    let mut ahead = self.chars.clone();
                    ahead.next();
                    match ahead.next() {
                        Some('/') => {
                            while let Some(c) = self.bump() {
                                if c == '\n' {
                                    break;
                                }
                            }
                        }
                        Some('*') => {
                            let start = self.pos;
                            self.bump();
                            self.bump();
                            let mut prev = '\0';
                            loop {
                                match self.bump() {
                                    None => return Err(err(start, ParseErrorKind::Syntax, "unterminated block comment")),
                                    Some('/') if prev == '*' => break,
                                    Some(c) => prev = c,
                                }
                            }
                        }
                        _ => return Ok(()),
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn next_token(&mut self) -> Result<(Tok, Pos), ParseError> {
        self.skip_trivia()?;
        let start = self.pos;
        let Some(&c) = self.chars.peek() else {
            return Ok((Tok::Eof, start));
        };
        let tok = if c.is_ascii_alphabetic() || c == '_' || c == 'π' {
            let mut s = String::new();
            while let Some(&c) = self.chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == 'π' {
                    s.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() || c == '.' {
            self.number(start)?
        } else if c == '"' {
            self.bump();
            let mut s = String::new();
            loop {
                match self.bump() {
                    None | Some('\n') => return Err(err(start, ParseErrorKind::Syntax, "unterminated string literal")),
                    Some('"') => break,
                    Some(c) => s.push(c),
                }
            }
            Tok::Str(s)
        } else {
            self.bump();
            match c {
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '+' => Tok::Plus,
                '-' => {
                    if self.chars.peek() == Some(&'>') {
                        self.bump();
                        Tok::Arrow
                    } else {
                        Tok::Minus
                    }
                }
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '=' => Tok::Eq,
                '@' => Tok::At,
                other => Tok::Other(other),
            }
        };
        Ok((tok, start))
    }

    fn number(&mut self, start: Pos) -> Result<Tok, ParseError> {
        let mut s = String::new();
        let mut digits = 0;
        while let Some(&c) = self.chars.peek() {
            if c.is_ascii_digit() {
                digits += 1;
            } else if c != '.' {
                break;
            }
            s.push(c);
            self.bump();
        }
        if digits == 0 || s.matches('.').count() > 1 {
            return Err(err(start, ParseErrorKind::Syntax, format!("malformed number `{s}`")));
        }
        if matches!(self.chars.peek(), Some('e') | Some('E')) {
            s.push('e');
            self.bump();
            if let Some(&sign @ ('+' | '-')) = self.chars.peek() {
                s.push(sign);
                self.bump();
            }
            let mut exp_digits = 0;
            while let Some(&c) = self.chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                self.bump();
                exp_digits += 1;
            }
            if exp_digits == 0 {
                return Err(err(start, ParseErrorKind::Syntax, "missing exponent digits"));
            }
        }
        Ok(Tok::Number(s))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    pos: Pos,
    register: Option<(String, usize)>,
    gates: Vec<Gate>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(src);
        let (tok, pos) = lexer.next_token()?;
        Ok(Parser { lexer, tok, pos, register: None, gates: Vec::new() })
    }

    fn advance(&mut self) -> Result<(), ParseError> {
        let (tok, pos) = self.lexer.next_token()?;
        self.tok = tok;
        self.pos = pos;
        Ok(())
    }

    fn syntax(&self, expected: &str) -> ParseError {
        err(self.pos, ParseErrorKind::Syntax, format!("expected {expected}, found {}", self.tok))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.tok == tok {
            self.advance()
        } else {
            Err(self.syntax(what))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        match &self.tok {
            Tok::Ident(s) => {
                let out = (s.clone(), self.pos);
                self.advance()?;
                Ok(out)
            }
            _ => Err(self.syntax(what)),
        }
    }

    fn integer(&mut self, what: &str) -> Result<(usize, Pos), ParseError> {
        let pos = self.pos;
        match &self.tok {
            Tok::Number(s) if s.bytes().all(|b| b.is_ascii_digit()) => {
                let v = s.parse::<usize>().map_err(|_| err(pos, ParseErrorKind::Syntax, "integer out of range"))?;
                self.advance()?;
                Ok((v, pos))
            }
            _ => Err(self.syntax(what)),
        }
    }

    fn parse(mut self) -> Result<Circuit, ParseError> {
        self.header()?;
        while self.tok != Tok::Eof {
            self.statement()?;
        }
        let (_, n) = self.register.ok_or_else(|| {
            err(self.pos, ParseErrorKind::UndeclaredQubit, "no qubit register declared")
        })?;
        let mut circuit = Circuit::new(n).expect("register size checked");
        for g in self.gates {
            circuit.push(g).expect("gate validated during parsing");
        }
        Ok(circuit)
    }

    fn header(&mut self) -> Result<(), ParseError> {
        match &self.tok {
            Tok::Ident(s) if s == "OPENQASM" => {}
            _ => return Err(self.syntax("`OPENQASM 3.0;` header")),
        }
        self.advance()?;
        let pos = self.pos;
        match &self.tok {
            Tok::Number(v) if v == "3" || v == "3.0" => self.advance()?,
            Tok::Number(v) => {
                return Err(err(pos, ParseErrorKind::UnsupportedFeature, format!("OpenQASM version {v} not supported")))
            }
            _ => return Err(self.syntax("version number")),
        }
        self.expect(Tok::Semi, "`;`")
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        let pos = self.pos;
        let word = match &self.tok {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.syntax("statement")),
        };
        match word.as_str() {
            "include" => {
                self.advance()?;
                match self.tok {
                    Tok::Str(_) => self.advance()?,
                    _ => return Err(self.syntax("file name string")),
                }
                self.expect(Tok::Semi, "`;`")
            }
            "qubit" => self.declaration(pos),
            "OPENQASM" => Err(err(pos, ParseErrorKind::Syntax, "duplicate OPENQASM header")),
            w if UNSUPPORTED_KEYWORDS.contains(&w) => {
                Err(err(pos, ParseErrorKind::UnsupportedFeature, format!("`{w}` is not supported")))
            }
            w => match GateKind::from_name(w) {
                Some(kind) => self.gate(kind, pos),
                None => {
                    self.advance()?;
                    if matches!(self.tok, Tok::Eq) || matches!(self.tok, Tok::LBracket) {
                        Err(err(pos, ParseErrorKind::UnsupportedFeature, "classical assignment is not supported"))
                    } else {
                        Err(err(pos, ParseErrorKind::UnknownGate, format!("unknown gate `{w}`")))
                    }
                }
            },
        }
    }

    fn declaration(&mut self, pos: Pos) -> Result<(), ParseError> {
        self.advance()?;
        let size = if self.tok == Tok::LBracket {
            self.advance()?;
            let (n, npos) = self.integer("register size")?;
            if n == 0 || n > MAX_QUBITS {
                return Err(err(npos, ParseErrorKind::UnsupportedFeature, format!("register size {n} out of range")));
            }
            self.expect(Tok::RBracket, "`]`")?;
            n
        } else {
            1
        };
        let (name, _) = self.ident("register name")?;
        self.expect(Tok::Semi, "`;`")?;
        if self.register.is_some() {
            return Err(err(pos, ParseErrorKind::UnsupportedFeature, "only one qubit register is supported"));
        }
        self.register = Some((name, size));
        Ok(())
    }

    fn gate(&mut self, kind: GateKind, pos: Pos) -> Result<(), ParseError> {
        self.advance()?;
        let mut params = Vec::new();
        if self.tok == Tok::LParen {
            self.advance()?;
            if self.tok != Tok::RParen {
                loop {
                    let epos = self.pos;
                    let v = self.expr(0)?;
                    if !v.is_finite() {
                        return Err(err(epos, ParseErrorKind::Syntax, "angle is not finite"));
                    }
                    params.push(v);
                    if self.tok == Tok::Comma {
                        self.advance()?;
                    } else {
                        break;
                    }
                }
            }
            self.expect(Tok::RParen, "`)`")?;
        }
        if params.len() != kind.num_params() {
            return Err(err(
                pos,
                ParseErrorKind::ArityMismatch,
                format!("`{kind}` takes {} parameter(s), got {}", kind.num_params(), params.len()),
            ));
        }
        let mut qubits = Vec::new();
        loop {
            let q = self.operand()?;
            if qubits.contains(&q) {
                return Err(err(pos, ParseErrorKind::ArityMismatch, format!("qubit {q} used twice in `{kind}`")));
            }
            qubits.push(q);
            if self.tok == Tok::Comma {
                self.advance()?;
            } else {
                break;
            }
        }
        if qubits.len() != kind.num_qubits() {
            return Err(err(
                pos,
                ParseErrorKind::ArityMismatch,
                format!("`{kind}` acts on {} qubit(s), got {}", kind.num_qubits(), qubits.len()),
            ));
        }
        self.expect(Tok::Semi, "`;`")?;
        self.gates.push(Gate::new(kind, params, qubits).expect("arity checked"));
        Ok(())
    }

    fn operand(&mut self) -> Result<usize, ParseError> {
        let (name, pos) = self.ident("qubit operand")?;
        let Some((reg, size)) = self.register.clone() else {
            return Err(err(pos, ParseErrorKind::UndeclaredQubit, format!("`{name}` used before any qubit declaration")));
        };
        if name != reg {
            return Err(err(pos, ParseErrorKind::UndeclaredQubit, format!("undeclared register `{name}`")));
        }
        if self.tok != Tok::LBracket {
            return Err(err(pos, ParseErrorKind::UnsupportedFeature, "register broadcast is not supported"));
        }
        self.advance()?;
        let (idx, ipos) = self.integer("qubit index")?;
        if idx >= size {
            return Err(err(ipos, ParseErrorKind::UndeclaredQubit, format!("{name}[{idx}] out of range (size {size})")));
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(idx)
    }

    fn expr(&mut self, nesting: usize) -> Result<f64, ParseError> {
        let mut v = self.term(nesting)?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.advance()?;
                    v += self.term(nesting)?;
                }
                Tok::Minus => {
                    self.advance()?;
                    v -= self.term(nesting)?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn term(&mut self, nesting: usize) -> Result<f64, ParseError> {
        let mut v = self.unary(nesting)?;
        loop {
            match self.tok {
                Tok::Star => {
                    self.advance()?;
                    v *= self.unary(nesting)?;
                }
                Tok::Slash => {
                    self.advance()?;
                    v /= self.unary(nesting)?;
                }
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self, nesting: usize) -> Result<f64, ParseError> {
        if nesting > MAX_EXPR_NESTING {
            return Err(err(self.pos, ParseErrorKind::Syntax, "expression nested too deeply"));
        }
        match &self.tok {
            Tok::Minus => {
                self.advance()?;
                Ok(-self.unary(nesting + 1)?)
            }
            Tok::Plus => {
                self.advance()?;
                self.unary(nesting + 1)
            }
            Tok::LParen => {
                self.advance()?;
                let v = self.expr(nesting + 1)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            Tok::Number(s) => {
                let v = s.parse::<f64>().map_err(|_| err(self.pos, ParseErrorKind::Syntax, "malformed number"))?;
                self.advance()?;
                Ok(v)
            }
            Tok::Ident(s) if s == "pi" || s == "π" => {
                self.advance()?;
                Ok(std::f64::consts::PI)
            }
            Tok::Ident(s) => Err(err(self.pos, ParseErrorKind::Syntax, format!("unknown identifier `{s}` in angle"))),
            _ => Err(self.syntax("angle expression")),
        }
    }
}

/// Parses the supported OpenQASM 3.0 subset.
pub fn parse_qasm(text: &str) -> Result<Circuit, ParseError> {
    Parser::new(text)?.parse()
}

/// Serializes a circuit. Angles use the shortest representation that
/// round-trips exactly through [`parse_qasm`].
pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::from("OPENQASM 3.0;\ninclude \"stdgates.inc\";\n");
    if !c.name.is_empty() {
        let _ = writeln!(out, "// {}", c.name.replace(['\n', '\r'], " "));
    }
    let _ = writeln!(out, "qubit[{}] q;", c.num_qubits());
    for g in c.gates() {
        out.push_str(g.kind.name());
        if !g.params.is_empty() {
            let ps: Vec<String> = g.params.iter().map(|p| format!("{p:?}")).collect();
            let _ = write!(out, "({})", ps.join(", "));
        }
        let qs: Vec<String> = g.qubits.iter().map(|q| format!("q[{q}]")).collect();
        let _ = writeln!(out, " {};", qs.join(", "));
    }
    out
}
