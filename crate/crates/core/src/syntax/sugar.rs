//! Surface syntax with `let` sugar, and its translation into core terms.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{fresh_name, Label, Name, RecordLit, Term};
use crate::error::{Pos, SyntaxError};

pub(crate) fn is_keyword(s: &str) -> bool {
    matches!(s, "let" | "in")
}

/// A term as written, before `let` is expanded.
#[derive(Debug, Clone, PartialEq)]
pub enum Sugar {
    Var(Name),
    Lam(Name, Box<Sugar>),
    App(Box<Sugar>, Box<Sugar>),
    Rec(SugarRecord),
    Sel(Box<Sugar>, Label),
    Merge(Box<Sugar>, SugarRecord),
    /// `M ++ x`; only legal when `x` is let-bound to a record literal.
    MergeVar(Box<Sugar>, Name, Pos),
    Int(i64),
    Unit,
    Plus,
    Let(Name, Box<Sugar>, Box<Sugar>),
    LetPair(Name, Name, Box<Sugar>, Box<Sugar>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SugarRecord {
    pub fields: Vec<(Label, Sugar)>,
}

enum Binding {
    /// A let-bound record literal, usable as a merge operand.
    Record { name: Name, rec: RecordLit, used_in_merge: bool },
    /// Some other binder that shadows outer record bindings.
    Opaque(Name),
    /// A record binding whose free variables are captured at this point.
    Captured(Name),
}

impl Binding {
    fn name(&self) -> &Name {
        match self {
            Binding::Record { name, .. } | Binding::Opaque(name) | Binding::Captured(name) => name,
        }
    }
}

/// Expands `let` sugar.
///
/// * `let x = M in N` becomes `(\x. N) M`.
/// * `let (x, y) = M in N` becomes `(\p. (\x. \y. N) p.fst p.snd) M`.
/// * A record literal bound by `let` may be used as the right operand of a
///   merge; such bindings are inlined, because the right operand of a merge
///   must be a record literal.
///
/// Recursive bindings are rejected.
pub fn desugar_let(s: &Sugar) -> Result<Term, SyntaxError> {
    Desugar { env: Vec::new() }.go(s)
}

struct Desugar {
    env: Vec<Binding>,
}

impl Desugar {
    fn bind<T>(&mut self, b: Binding, f: impl FnOnce(&mut Self) -> T) -> (T, Binding) {
        // records mentioning the new name can no longer be inlined below it
        let mut saved = Vec::new();
        let name = b.name().clone();
        for (i, e) in self.env.iter_mut().enumerate() {
            let captured = match e {
                Binding::Record { name: n, rec, .. } if rec.fields().iter().any(|(_, t)| t.occurs_free(&name)) => {
                    Some(n.clone())
                }
                _ => None,
            };
            if let Some(n) = captured {
                saved.push((i, std::mem::replace(e, Binding::Captured(n))));
            }
        }
        self.env.push(b);
        let r = f(self);
        let b = self.env.pop().unwrap();
        for (i, old) in saved {
            let used = matches!(self.env[i], Binding::Record { used_in_merge: true, .. });
            self.env[i] = old;
            if used {
                if let Binding::Record { used_in_merge, .. } = &mut self.env[i] {
                    *used_in_merge = true;
                }
            }
        }
        (r, b)
    }

    fn go(&mut self, s: &Sugar) -> Result<Term, SyntaxError> {
        Ok(match s {
            Sugar::Var(x) => Term::Var(x.clone()),
            Sugar::Int(n) => Term::Int(*n),
            Sugar::Unit => Term::Unit,
            Sugar::Plus => Term::Plus,
            Sugar::Lam(x, b) => {
                let (b, _) = self.bind(Binding::Opaque(x.clone()), |d| d.go(b));
                Term::Lam(x.clone(), Arc::new(b?))
            }
            Sugar::App(f, a) => Term::app(self.go(f)?, self.go(a)?),
            Sugar::Rec(r) => Term::Rec(self.record(r)?),
            Sugar::Sel(t, l) => Term::Sel(Arc::new(self.go(t)?), l.clone()),
            Sugar::Merge(t, r) => Term::Merge(Arc::new(self.go(t)?), self.record(r)?),
            Sugar::MergeVar(t, x, pos) => {
                let left = self.go(t)?;
                let found = self.env.iter_mut().rev().find(|b| b.name() == x);
                match found {
                    Some(Binding::Record { rec, used_in_merge, .. }) => {
                        *used_in_merge = true;
                        Term::Merge(Arc::new(left), rec.clone())
                    }
                    Some(Binding::Captured(_)) => {
                        return Err(SyntaxError::Parse {
                            pos: *pos,
                            msg: format!("record bound to `{x}` would capture a variable here"),
                        })
                    }
                    _ => return Err(SyntaxError::MergeNotRecord { pos: *pos, found: x.to_string() }),
                }
            }
            Sugar::Let(x, m, n) => {
                let m = self.go(m)?;
                if m.occurs_free(x) {
                    return Err(SyntaxError::RecursiveLet(x.to_string()));
                }
                let binding = match &m {
                    Term::Rec(r) => Binding::Record { name: x.clone(), rec: r.clone(), used_in_merge: false },
                    _ => Binding::Opaque(x.clone()),
                };
                let (n, b) = self.bind(binding, |d| d.go(n));
                let n = n?;
                match b {
                    Binding::Record { used_in_merge: true, .. } => n.subst(x, &m),
                    _ => Term::app(Term::Lam(x.clone(), Arc::new(n)), m),
                }
            }
            Sugar::LetPair(x, y, m, n) => {
                let m = self.go(m)?;
                for v in [x, y] {
                    if m.occurs_free(v) {
                        return Err(SyntaxError::RecursiveLet(v.to_string()));
                    }
                }
                let (n, _) =
                    self.bind(Binding::Opaque(x.clone()), |d| d.bind(Binding::Opaque(y.clone()), |d| d.go(n)).0);
                let n = n?;
                let mut avoid: BTreeSet<Name> = n.free_vars();
                avoid.insert(x.clone());
                avoid.insert(y.clone());
                let p = fresh_name(&Name::new("p"), &avoid);
                let inner = Term::apps(
                    Term::Lam(x.clone(), Arc::new(Term::Lam(y.clone(), Arc::new(n)))),
                    [
                        Term::Sel(Arc::new(Term::Var(p.clone())), Name::new("fst")),
                        Term::Sel(Arc::new(Term::Var(p.clone())), Name::new("snd")),
                    ],
                );
                Term::app(Term::Lam(p, Arc::new(inner)), m)
            }
        })
    }

    fn record(&mut self, r: &SugarRecord) -> Result<RecordLit, SyntaxError> {
        let mut fields = Vec::with_capacity(r.fields.len());
        for (l, t) in &r.fields {
            fields.push((l.clone(), self.go(t)?));
        }
        RecordLit::new(fields)
    }
}
