//! Tokenizer shared by the term and type parsers.

use crate::error::{Pos, SyntaxError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Lambda,
    Dot,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Eq,
    PlusPlus,
    Plus,
    Arrow,
    Amp,
    Star,
    Colon,
    Omega,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Eof => "end of input".to_string(),
            t => format!("`{}`", t.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::Lambda => "\\",
            Tok::Dot => ".",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Eq => "=",
            Tok::PlusPlus => "++",
            Tok::Plus => "+",
            Tok::Arrow => "->",
            Tok::Amp => "&",
            Tok::Star => "*",
            Tok::Colon => ":",
            Tok::Omega => "ω",
            _ => "",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut it = src.char_indices().peekable();
    let pos = |offset, line, col| Pos { offset, line, col };
    while let Some(&(i, c)) = it.peek() {
        let here = pos(i, line, col);
        let mut bump = |it: &mut std::iter::Peekable<std::str::CharIndices>| {
            let (_, c) = it.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        };
        if c.is_whitespace() {
            bump(&mut it);
            continue;
        }
        if c == '#' {
            while it.peek().is_some_and(|&(_, c)| c != '\n') {
                bump(&mut it);
            }
            continue;
        }
        let tok = if is_ident_start(c) {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if !is_ident_char(c) {
                    break;
                }
                s.push(c);
                bump(&mut it);
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                bump(&mut it);
            }
            let n = s
                .parse()
                .map_err(|_| SyntaxError::Parse { pos: here, msg: format!("integer literal `{s}` out of range") })?;
            Tok::Int(n)
        } else {
            bump(&mut it);
            let next = it.peek().map(|&(_, c)| c);
            let two = |it: &mut std::iter::Peekable<std::str::CharIndices>, t| {
                it.next();
                t
            };
            match (c, next) {
                ('+', Some('+')) => {
                    col += 1;
                    two(&mut it, Tok::PlusPlus)
                }
                ('-', Some('>')) => {
                    col += 1;
                    two(&mut it, Tok::Arrow)
                }
                ('+', _) => Tok::Plus,
                ('\\', _) | ('λ', _) => Tok::Lambda,
                ('.', _) => Tok::Dot,
                ('(', _) => Tok::LParen,
                (')', _) => Tok::RParen,
                ('{', _) => Tok::LBrace,
                ('}', _) => Tok::RBrace,
                (',', _) => Tok::Comma,
                ('=', _) => Tok::Eq,
                ('&', _) | ('∩', _) => Tok::Amp,
                ('*', _) | ('×', _) => Tok::Star,
                (':', _) => Tok::Colon,
                ('ω', _) => Tok::Omega,
                ('→', _) => Tok::Arrow,
                _ => return Err(SyntaxError::Parse { pos: here, msg: format!("unexpected character `{c}`") }),
            }
        };
        out.push(Token { tok, pos: here });
    }
    let end = Pos { offset: src.len(), line, col };
    out.push(Token { tok: Tok::Eof, pos: end });
    Ok(out)
}

/// Cursor over a token stream.
pub struct Cursor {
    toks: Vec<Token>,
    at: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Cursor, SyntaxError> {
        Ok(Cursor { toks: tokenize(src)?, at: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    pub fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].tok
    }

    pub fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    pub fn next(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, t: &Tok) -> Result<(), SyntaxError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {}, found {}", t.describe(), self.peek().describe())))
        }
    }

    pub fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            t => Err(self.error(format!("expected identifier, found {}", t.describe()))),
        }
    }

    pub fn error(&self, msg: String) -> SyntaxError {
        SyntaxError::Parse { pos: self.pos(), msg }
    }
}
