//! One-step reduction and evaluation.
//!
//! The four redexes are
//!
//! ```text
//! (\x. M) N            -> M[x := N]
//! {..., a = M, ...}.a  -> M
//! {R1} ++ {R2}         -> {R1 merged with R2, fields of R2 prevailing}
//! (+) n m              -> n + m           (integer literals)
//! ```
//!
//! Terms that are stuck, such as selecting a missing label or adding a
//! record, are normal forms. An addition that overflows `i64` is stuck too.

use std::fmt;
use std::sync::Arc;

use crate::syntax::{alpha_eq, RecordLit, Term};
use crate::{Error, Result};

pub const DEFAULT_FUEL: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RedexKind {
    Beta,
    Rsel,
    Merge,
    Delta,
}

impl fmt::Display for RedexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RedexKind::Beta => "beta",
            RedexKind::Rsel => "rsel",
            RedexKind::Merge => "merge",
            RedexKind::Delta => "delta",
        })
    }
}

/// Which redex was contracted: its kind and the child indices leading to it
/// from the root (see [`Term::child`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedexInfo {
    pub kind: RedexKind,
    pub position: Vec<usize>,
}

impl fmt::Display for RedexInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ ", self.kind)?;
        if self.position.is_empty() {
            return f.write_str("root");
        }
        let path: Vec<String> = self.position.iter().map(usize::to_string).collect();
        f.write_str(&path.join("."))
    }
}

#[derive(Debug, Clone)]
pub struct Step {
    pub redex: RedexInfo,
    pub term: Term,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Contract the leftmost-outermost redex (normal order).
    #[default]
    LeftmostOutermost,
    /// Contract the rightmost-innermost redex.
    RightmostInnermost,
}

/// Contracts `t` if it is itself a redex.
pub fn contract(t: &Term) -> Option<(RedexKind, Term)> {
    match t {
        Term::App(f, a) => match f.as_ref() {
            Term::Lam(x, body) => Some((RedexKind::Beta, body.subst(x, a))),
            Term::App(p, m) if **p == Term::Plus => match (m.as_ref(), a.as_ref()) {
                (Term::Int(m), Term::Int(n)) => m.checked_add(*n).map(|k| (RedexKind::Delta, Term::Int(k))),
                _ => None,
            },
            _ => None,
        },
        Term::Sel(s, l) => match s.as_ref() {
            Term::Rec(r) => r.get(l).map(|m| (RedexKind::Rsel, m.as_ref().clone())),
            _ => None,
        },
        Term::Merge(s, r) => match s.as_ref() {
            Term::Rec(l) => Some((RedexKind::Merge, Term::Rec(l.merge(r)))),
            _ => None,
        },
        _ => None,
    }
}

pub fn is_redex(t: &Term) -> bool {
    contract(t).is_some()
}

/// Every redex position in `t`, in leftmost-outermost order.
pub fn redex_positions(t: &Term) -> Vec<RedexInfo> {
    fn go(t: &Term, path: &mut Vec<usize>, out: &mut Vec<RedexInfo>) {
        if let Some((kind, _)) = contract(t) {
            out.push(RedexInfo { kind, position: path.clone() });
        }
        for (i, c) in t.children().into_iter().enumerate() {
            path.push(i);
            go(c, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Contracts the redex at `position`, if there is one.
pub fn contract_at(t: &Term, position: &[usize]) -> Option<(RedexKind, Term)> {
    match position.split_first() {
        None => contract(t),
        Some((&i, rest)) => {
            let c = t.child(i)?;
            let (kind, new) = contract_at(c, rest)?;
            Some((kind, t.with_child(i, Arc::new(new))))
        }
    }
}

/// One step of `strategy`, or `None` for a normal form.
pub fn step_with(t: &Term, strategy: Strategy) -> Option<Step> {
    let mut path = Vec::new();
    let (kind, term) = match strategy {
        Strategy::LeftmostOutermost => lo(t, &mut path)?,
        Strategy::RightmostInnermost => ri(t, &mut path)?,
    };
    Some(Step { redex: RedexInfo { kind, position: path }, term })
}

/// One leftmost-outermost step.
pub fn step(t: &Term) -> Option<Step> {
    step_with(t, Strategy::LeftmostOutermost)
}

fn lo(t: &Term, path: &mut Vec<usize>) -> Option<(RedexKind, Term)> {
    if let Some(r) = contract(t) {
        return Some(r);
    }
    for (i, c) in t.children().into_iter().enumerate() {
        path.push(i);
        if let Some((k, new)) = lo(c, path) {
            return Some((k, t.with_child(i, Arc::new(new))));
        }
        path.pop();
    }
    None
}

fn ri(t: &Term, path: &mut Vec<usize>) -> Option<(RedexKind, Term)> {
    let children = t.children();
    for (i, c) in children.into_iter().enumerate().rev() {
        path.push(i);
        if let Some((k, new)) = ri(c, path) {
            return Some((k, t.with_child(i, Arc::new(new))));
        }
        path.pop();
    }
    contract(t)
}

/// The sequence of steps taken from `t` under `strategy`.
pub fn reductions(t: &Term, strategy: Strategy) -> impl Iterator<Item = Step> {
    let mut cur = Some(t.clone());
    std::iter::from_fn(move || {
        let s = step_with(cur.as_ref()?, strategy);
        cur = s.as_ref().map(|s| s.term.clone());
        s
    })
}

#[derive(Debug, Clone)]
pub enum NormalizeResult {
    NormalForm {
        term: Term,
        steps: usize,
    },
    /// The fuel ran out; `term` is where evaluation stopped.
    FuelExhausted {
        term: Term,
        steps: usize,
    },
}

impl NormalizeResult {
    pub fn term(&self) -> &Term {
        match self {
            NormalizeResult::NormalForm { term, .. } | NormalizeResult::FuelExhausted { term, .. } => term,
        }
    }

    pub fn steps(&self) -> usize {
        match self {
            NormalizeResult::NormalForm { steps, .. } | NormalizeResult::FuelExhausted { steps, .. } => *steps,
        }
    }

    pub fn is_normal_form(&self) -> bool {
        matches!(self, NormalizeResult::NormalForm { .. })
    }

    pub fn normal_form(self) -> Result<Term> {
        match self {
            NormalizeResult::NormalForm { term, .. } => Ok(term),
            NormalizeResult::FuelExhausted { steps, .. } => Err(Error::FuelExhausted(steps)),
        }
    }
}

pub fn normalize(t: &Term, fuel: usize) -> NormalizeResult {
    normalize_with(t, fuel, Strategy::LeftmostOutermost, |_, _| {})
}

/// Normalizes under `strategy`, calling `on_step(k, step)` after step `k`
/// (counted from 1).
pub fn normalize_with(
    t: &Term,
    fuel: usize,
    strategy: Strategy,
    mut on_step: impl FnMut(usize, &Step),
) -> NormalizeResult {
    let mut term = t.clone();
    for k in 0..fuel {
        match step_with(&term, strategy) {
            None => return NormalizeResult::NormalForm { term, steps: k },
            Some(s) => {
                on_step(k + 1, &s);
                term = s.term;
            }
        }
    }
    if step_with(&term, strategy).is_none() {
        NormalizeResult::NormalForm { term, steps: fuel }
    } else {
        NormalizeResult::FuelExhausted { term, steps: fuel }
    }
}

/// Normalizes and renders every step as `step k [kind @ path]: term`.
pub fn trace(t: &Term, fuel: usize) -> (Vec<String>, NormalizeResult) {
    let mut lines = Vec::new();
    let r = normalize_with(t, fuel, Strategy::LeftmostOutermost, |k, s| {
        lines.push(format!("step {k} [{}]: {}", s.redex, s.term));
    });
    (lines, r)
}

/// One step at the head: the root if it is a redex, otherwise the function
/// of an application, the subject of a selection, or the left operand of a
/// merge.
pub fn head_step(t: &Term) -> Option<Term> {
    if let Some((_, r)) = contract(t) {
        return Some(r);
    }
    match t {
        Term::App(f, a) => Some(Term::App(Arc::new(head_step(f)?), a.clone())),
        Term::Sel(s, l) => Some(Term::Sel(Arc::new(head_step(s)?), l.clone())),
        Term::Merge(s, r) => Some(Term::Merge(Arc::new(head_step(s)?), r.clone())),
        _ => None,
    }
}

/// Head-reduces `t` until it is a record literal.
///
/// Fields are left unevaluated, so this terminates on objects built with a
/// fixed-point combinator whose full normal form does not exist.
pub fn whnf_record(t: &Term, fuel: usize) -> Result<RecordLit> {
    let mut cur = t.clone();
    for _ in 0..=fuel {
        if let Term::Rec(r) = cur {
            return Ok(r);
        }
        match head_step(&cur) {
            Some(next) => cur = next,
            None => return Err(Error::Encoding(format!("head normal form is not a record: {cur}"))),
        }
    }
    Err(Error::FuelExhausted(fuel))
}

/// `Some(true)` if both terms reach alpha-equivalent normal forms within the
/// fuel, `Some(false)` if they reach different ones, `None` otherwise.
pub fn convertible(a: &Term, b: &Term, fuel: usize) -> Option<bool> {
    let a = normalize(a, fuel).normal_form().ok()?;
    let b = normalize(b, fuel).normal_form().ok()?;
    Some(alpha_eq(&a, &b))
}
