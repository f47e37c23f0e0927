//! Intersection types with record-field types, their organized normal form,
//! and the decision procedure for type inclusion.

mod nf;
mod parse;
mod print;
mod subtype;

use std::fmt;
use std::sync::Arc;

pub use nf::{normalize_type, Path, TypeNF};
pub use parse::parse_type;
pub use subtype::{is_omega_equiv, subtype, subtype_nf, type_eq, Decider};

use crate::syntax::{Label, Name};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    /// Type variable; opaque for subtyping.
    Var(Name),
    /// Ground or abstract atom (`Int`, `Unit`, `EvenInt`, ...).
    Const(Name),
    Omega,
    Arrow(Arc<Type>, Arc<Type>),
    Inter(Arc<Type>, Arc<Type>),
    /// `{a : σ}`, the type of records with field `a` of type `σ`.
    Field(Label, Arc<Type>),
}

impl Type {
    pub fn int() -> Type {
        Type::Const(Name::new("Int"))
    }

    pub fn unit() -> Type {
        Type::Const(Name::new("Unit"))
    }

    pub fn atom(name: &str) -> Type {
        Type::Const(Name::new(name))
    }

    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Arrow(Arc::new(dom), Arc::new(cod))
    }

    /// `t1 -> t2 -> ... -> cod`
    pub fn arrows(doms: impl IntoIterator<Item = Type>, cod: Type) -> Type {
        let doms: Vec<Type> = doms.into_iter().collect();
        doms.into_iter().rev().fold(cod, |c, d| Type::arrow(d, c))
    }

    pub fn inter(l: Type, r: Type) -> Type {
        Type::Inter(Arc::new(l), Arc::new(r))
    }

    /// Left-nested intersection; `ω` when empty.
    pub fn inter_all(ts: impl IntoIterator<Item = Type>) -> Type {
        ts.into_iter().reduce(Type::inter).unwrap_or(Type::Omega)
    }

    pub fn field(label: &str, body: Type) -> Type {
        Type::Field(Name::new(label), Arc::new(body))
    }

    /// Multi-field record type `{a1 : σ1, ..., an : σn}`, i.e. the
    /// intersection of its single-field types.
    pub fn record<'a>(fields: impl IntoIterator<Item = (&'a str, Type)>) -> Type {
        Type::inter_all(fields.into_iter().map(|(l, t)| Type::field(l, t)))
    }

    /// `σ * τ`, i.e. `{fst : σ, snd : τ}`.
    pub fn product(l: Type, r: Type) -> Type {
        Type::record([("fst", l), ("snd", r)])
    }

    /// The conjuncts of a (binary) intersection, flattened.
    pub fn conjuncts(&self) -> Vec<&Type> {
        let mut out = Vec::new();
        fn go<'a>(t: &'a Type, out: &mut Vec<&'a Type>) {
            match t {
                Type::Inter(l, r) => {
                    go(l, out);
                    go(r, out);
                }
                t => out.push(t),
            }
        }
        go(self, &mut out);
        out
    }

    /// Number of constructors.
    pub fn size(&self) -> usize {
        match self {
            Type::Var(_) | Type::Const(_) | Type::Omega => 1,
            Type::Arrow(a, b) | Type::Inter(a, b) => 1 + a.size() + b.size(),
            Type::Field(_, b) => 1 + b.size(),
        }
    }

    /// Nesting depth of constructors; atoms and `ω` have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Type::Var(_) | Type::Const(_) | Type::Omega => 0,
            Type::Arrow(a, b) | Type::Inter(a, b) => 1 + a.depth().max(b.depth()),
            Type::Field(_, b) => 1 + b.depth(),
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_type(self))
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

pub fn print_type(t: &Type) -> String {
    print::print_type(t)
}
