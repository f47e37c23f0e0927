//! Recursive-descent parser for the concrete term syntax.
//!
//! ```text
//! term    := "\" ident+ "." term
//!          | "let" ident "=" term "in" term
//!          | "let" "(" ident "," ident ")" "=" term "in" term
//!          | sum
//! sum     := merge ("+" merge)*
//! merge   := app ("++" (record | ident))*
//! app     := postfix+
//! postfix := atom ("." ident)*
//! atom    := ident | int | "()" | "(+)" | "(" term ")" | "(" term "," term ")" | record
//! record  := "{" [ident "=" term ("," ident "=" term)*] "}"
//! ```

use super::lex::{Cursor, Tok};
use super::sugar::{is_keyword, Sugar, SugarRecord};
use super::{desugar_let, Name, Term};
use crate::error::SyntaxError;

/// Parses a term, expanding `let` sugar.
pub fn parse_term(src: &str) -> Result<Term, SyntaxError> {
    desugar_let(&parse_sugar(src)?)
}

/// Parses a term without expanding `let`.
pub fn parse_sugar(src: &str) -> Result<Sugar, SyntaxError> {
    let mut c = Cursor::new(src)?;
    let t = term(&mut c)?;
    if *c.peek() != Tok::Eof {
        return Err(c.error(format!("unexpected {}", c.peek().describe())));
    }
    Ok(t)
}

fn is_kw(t: &Tok, kw: &str) -> bool {
    matches!(t, Tok::Ident(s) if s == kw)
}

fn binder(c: &mut Cursor) -> Result<Name, SyntaxError> {
    let pos = c.pos();
    let x = c.ident()?;
    if is_keyword(&x) {
        return Err(SyntaxError::Parse { pos, msg: format!("`{x}` is a keyword") });
    }
    Ok(Name::new(&x))
}

fn term(c: &mut Cursor) -> Result<Sugar, SyntaxError> {
    match c.peek() {
        Tok::Lambda => {
            c.next();
            let mut xs = vec![binder(c)?];
            while matches!(c.peek(), Tok::Ident(_)) {
                xs.push(binder(c)?);
            }
            c.expect(&Tok::Dot)?;
            let body = term(c)?;
            Ok(xs.into_iter().rev().fold(body, |b, x| Sugar::Lam(x, Box::new(b))))
        }
        t if is_kw(t, "let") => {
            c.next();
            if c.eat(&Tok::LParen) {
                let x = binder(c)?;
                c.expect(&Tok::Comma)?;
                let y = binder(c)?;
                c.expect(&Tok::RParen)?;
                c.expect(&Tok::Eq)?;
                let m = term(c)?;
                expect_in(c)?;
                let n = term(c)?;
                Ok(Sugar::LetPair(x, y, Box::new(m), Box::new(n)))
            } else {
                let x = binder(c)?;
                c.expect(&Tok::Eq)?;
                let m = term(c)?;
                expect_in(c)?;
                let n = term(c)?;
                Ok(Sugar::Let(x, Box::new(m), Box::new(n)))
            }
        }
        _ => sum(c),
    }
}

fn expect_in(c: &mut Cursor) -> Result<(), SyntaxError> {
    if is_kw(c.peek(), "in") {
        c.next();
        Ok(())
    } else {
        Err(c.error(format!("expected `in`, found {}", c.peek().describe())))
    }
}

fn sum(c: &mut Cursor) -> Result<Sugar, SyntaxError> {
    let mut t = merge(c)?;
    while c.eat(&Tok::Plus) {
        let r = merge(c)?;
        t = Sugar::App(Box::new(Sugar::App(Box::new(Sugar::Plus), Box::new(t))), Box::new(r));
    }
    Ok(t)
}

fn merge(c: &mut Cursor) -> Result<Sugar, SyntaxError> {
    let mut t = app(c)?;
    while c.eat(&Tok::PlusPlus) {
        let pos = c.pos();
        match c.peek().clone() {
            Tok::LBrace => {
                let r = record(c)?;
                t = Sugar::Merge(Box::new(t), r);
            }
            Tok::Ident(x) if !is_keyword(&x) => {
                c.next();
                t = Sugar::MergeVar(Box::new(t), Name::new(&x), pos);
            }
            _ => {
                // Anything but a record literal on the right
                let found = c.peek().describe();
                return Err(SyntaxError::MergeNotRecord { pos, found });
            }
        }
    }
    Ok(t)
}

fn starts_atom(t: &Tok) -> bool {
    match t {
        Tok::Ident(s) => !is_keyword(s),
        Tok::Int(_) | Tok::LParen | Tok::LBrace => true,
        _ => false,
    }
}

fn app(c: &mut Cursor) -> Result<Sugar, SyntaxError> {
    if !starts_atom(c.peek()) {
        return Err(c.error(format!("expected a term, found {}", c.peek().describe())));
    }
    let mut t = postfix(c)?;
    while starts_atom(c.peek()) {
        let a = postfix(c)?;
        t = Sugar::App(Box::new(t), Box::new(a));
    }
    Ok(t)
}

fn postfix(c: &mut Cursor) -> Result<Sugar, SyntaxError> {
    let mut t = atom(c)?;
    while c.eat(&Tok::Dot) {
        let l = c.ident()?;
        t = Sugar::Sel(Box::new(t), Name::new(&l));
    }
    Ok(t)
}

fn atom(c: &mut Cursor) -> Result<Sugar, SyntaxError> {
    match c.peek().clone() {
        Tok::Ident(x) => {
            c.next();
            Ok(Sugar::Var(Name::new(&x)))
        }
        Tok::Int(n) => {
            c.next();
            Ok(Sugar::Int(n))
        }
        Tok::LBrace => Ok(Sugar::Rec(record(c)?)),
        Tok::LParen => {
            c.next();
            if c.eat(&Tok::RParen) {
                return Ok(Sugar::Unit);
            }
            if *c.peek() == Tok::Plus && *c.peek2() == Tok::RParen {
                c.next();
                c.next();
                return Ok(Sugar::Plus);
            }
            let t = term(c)?;
            if c.eat(&Tok::Comma) {
                let u = term(c)?;
                c.expect(&Tok::RParen)?;
                return Ok(Sugar::Rec(SugarRecord { fields: vec![(Name::new("fst"), t), (Name::new("snd"), u)] }));
            }
            c.expect(&Tok::RParen)?;
            Ok(t)
        }
        t => Err(c.error(format!("expected a term, found {}", t.describe()))),
    }
}

fn record(c: &mut Cursor) -> Result<SugarRecord, SyntaxError> {
    c.expect(&Tok::LBrace)?;
    let mut fields: Vec<(Name, Sugar)> = Vec::new();
    if !c.eat(&Tok::RBrace) {
        loop {
            let pos = c.pos();
            let l = Name::new(&c.ident()?);
            if fields.iter().any(|(k, _)| *k == l) {
                return Err(SyntaxError::Parse { pos, msg: format!("duplicate label `{l}` in record") });
            }
            c.expect(&Tok::Eq)?;
            fields.push((l, term(c)?));
            if c.eat(&Tok::RBrace) {
                break;
            }
            c.expect(&Tok::Comma)?;
        }
    }
    Ok(SugarRecord { fields })
}
