//! Concrete type syntax.
//!
//! ```text
//! type  := inter ("->" type)?
//! inter := prod ("&" prod)*
//! prod  := atom ("*" atom)*
//! atom  := "w" | Upper | lower | "(" type ")" | "{" ident ":" type ("," ident ":" type)* "}"
//! ```
//!
//! `w` is `ω`, capitalized names are atoms and lowercase names are type
//! variables. `t * u` abbreviates `{fst : t, snd : u}`.

use super::Type;
use crate::error::SyntaxError;
use crate::syntax::lex::{Cursor, Tok};
use crate::syntax::Name;

pub fn parse_type(src: &str) -> Result<Type, SyntaxError> {
    let mut c = Cursor::new(src)?;
    let t = ty(&mut c)?;
    if *c.peek() != Tok::Eof {
        return Err(c.error(format!("unexpected {}", c.peek().describe())));
    }
    Ok(t)
}

fn ty(c: &mut Cursor) -> Result<Type, SyntaxError> {
    let l = inter(c)?;
    if c.eat(&Tok::Arrow) {
        Ok(Type::arrow(l, ty(c)?))
    } else {
        Ok(l)
    }
}

fn inter(c: &mut Cursor) -> Result<Type, SyntaxError> {
    let mut t = prod(c)?;
    while c.eat(&Tok::Amp) {
        t = Type::inter(t, prod(c)?);
    }
    Ok(t)
}

fn prod(c: &mut Cursor) -> Result<Type, SyntaxError> {
    let mut t = atom(c)?;
    while c.eat(&Tok::Star) {
        t = Type::product(t, atom(c)?);
    }
    Ok(t)
}

fn atom(c: &mut Cursor) -> Result<Type, SyntaxError> {
    match c.next() {
        Tok::Omega => Ok(Type::Omega),
        Tok::Ident(s) if s == "w" => Ok(Type::Omega),
        Tok::Ident(s) if s.starts_with(|ch: char| ch.is_ascii_uppercase()) => Ok(Type::Const(Name::new(&s))),
        Tok::Ident(s) => Ok(Type::Var(Name::new(&s))),
        Tok::LParen => {
            let t = ty(c)?;
            c.expect(&Tok::RParen)?;
            Ok(t)
        }
        Tok::LBrace => {
            let mut fields: Vec<(String, Type)> = Vec::new();
            loop {
                let pos = c.pos();
                let l = c.ident()?;
                if fields.iter().any(|(k, _)| *k == l) {
                    return Err(SyntaxError::Parse { pos, msg: format!("duplicate label `{l}` in record type") });
                }
                c.expect(&Tok::Colon)?;
                fields.push((l, ty(c)?));
                if c.eat(&Tok::RBrace) {
                    break;
                }
                c.expect(&Tok::Comma)?;
            }
            Ok(Type::record(fields.iter().map(|(l, t)| (l.as_str(), t.clone()))))
        }
        t => Err(c.error(format!("expected a type, found {}", t.describe()))),
    }
}
