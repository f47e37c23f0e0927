//! Type assignment: explicit derivations, their verifier, a goal-directed
//! checker, a bounded typing oracle and the conversion-invariance harness.

mod check;
mod enumerate;
mod invariance;
mod json;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

pub use check::{check, check_with, synth, Checker, Hints};
pub use enumerate::{enumerate_types, term_labels, Bits, TypeSet, Universe, UniverseConfig};
pub use invariance::{expansion_test, invariance_test, InvarianceReport, StepOutcome};
pub use json::{derivation_from_json, derivation_to_json};
pub use verify::{verify, VerifyError};

use crate::syntax::{Name, Term};
use crate::types::Type;

/// A typing context: at most one type per variable, later bindings shadow.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Context(BTreeMap<Name, Type>);

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, Type)>) -> Context {
        Context(pairs.into_iter().map(|(x, t)| (Name::new(x), t)).collect())
    }

    pub fn get(&self, x: &Name) -> Option<&Type> {
        self.0.get(x)
    }

    pub fn contains(&self, x: &Name) -> bool {
        self.0.contains_key(x)
    }

    pub fn extend(&self, x: &Name, t: Type) -> Context {
        let mut c = self.clone();
        c.0.insert(x.clone(), t);
        c
    }

    /// Keeps only the bindings of `vars`.
    pub fn restrict<'a>(&self, vars: impl IntoIterator<Item = &'a Name>) -> Context {
        Context(vars.into_iter().filter_map(|x| self.0.get(x).map(|t| (x.clone(), t.clone()))).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Type)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} : {t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// `Γ ⊢ M : σ`
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Judgment {
    pub ctx: Context,
    pub term: Term,
    pub ty: Type,
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.ctx.is_empty() {
            write!(f, "{} ", self.ctx)?;
        }
        write!(f, "|- {} : {}", self.term, self.ty)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Ax,
    ArrI,
    ArrE,
    Omega,
    IntI,
    Sub,
    Sel,
    Rec,
    MergeL,
    MergeR,
    /// `n : Int` and `() : Unit`.
    Lit,
    /// `(+) : Int -> Int -> Int`.
    PlusTy,
}

impl Rule {
    pub const ALL: [Rule; 12] = [
        Rule::Ax,
        Rule::ArrI,
        Rule::ArrE,
        Rule::Omega,
        Rule::IntI,
        Rule::Sub,
        Rule::Sel,
        Rule::Rec,
        Rule::MergeL,
        Rule::MergeR,
        Rule::Lit,
        Rule::PlusTy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Ax => "Ax",
            Rule::ArrI => "ArrI",
            Rule::ArrE => "ArrE",
            Rule::Omega => "Omega",
            Rule::IntI => "IntI",
            Rule::Sub => "Sub",
            Rule::Sel => "Sel",
            Rule::Rec => "Rec",
            Rule::MergeL => "MergeL",
            Rule::MergeR => "MergeR",
            Rule::Lit => "Lit",
            Rule::PlusTy => "PlusTy",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A derivation tree. Each node records its full conclusion; the verifier
/// checks that it follows from the premises by the named rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    pub rule: Rule,
    pub ctx: Context,
    pub term: Term,
    pub ty: Type,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn leaf(rule: Rule, ctx: &Context, term: &Term, ty: Type) -> Derivation {
        Derivation { rule, ctx: ctx.clone(), term: term.clone(), ty, premises: Vec::new() }
    }

    pub fn node(rule: Rule, ctx: &Context, term: &Term, ty: Type, premises: Vec<Derivation>) -> Derivation {
        Derivation { rule, ctx: ctx.clone(), term: term.clone(), ty, premises }
    }

    pub fn omega(ctx: &Context, term: &Term) -> Derivation {
        Derivation::leaf(Rule::Omega, ctx, term, Type::Omega)
    }

    /// Concludes `to` from `self` by one (Sub) node; no node is added when
    /// the types already coincide. The inclusion is not checked here.
    pub fn subsume(self, to: Type) -> Derivation {
        if self.ty == to {
            return self;
        }
        let (ctx, term) = (self.ctx.clone(), self.term.clone());
        Derivation::node(Rule::Sub, &ctx, &term, to, vec![self])
    }

    /// (IntI) over both derivations, which must share context and subject.
    pub fn inter(self, other: Derivation) -> Derivation {
        let (ctx, term) = (self.ctx.clone(), self.term.clone());
        let ty = Type::inter(self.ty.clone(), other.ty.clone());
        Derivation::node(Rule::IntI, &ctx, &term, ty, vec![self, other])
    }

    /// Left-nested (IntI) of a non-empty list.
    pub fn inter_all(ds: Vec<Derivation>) -> Option<Derivation> {
        ds.into_iter().reduce(Derivation::inter)
    }

    pub fn judgment(&self) -> Judgment {
        Judgment { ctx: self.ctx.clone(), term: self.term.clone(), ty: self.ty.clone() }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    /// Counts nodes per rule.
    pub fn rule_counts(&self) -> BTreeMap<Rule, usize> {
        let mut out = BTreeMap::new();
        fn go(d: &Derivation, out: &mut BTreeMap<Rule, usize>) {
            *out.entry(d.rule).or_insert(0) += 1;
            d.premises.iter().for_each(|p| go(p, out));
        }
        go(self, &mut out);
        out
    }

    /// The same derivation with `x : σ` added to every context in which `x`
    /// is not bound by an enclosing abstraction of the derivation. Valid when
    /// `x` is not free in the subject.
    pub fn weaken(&self, x: &Name, sigma: &Type) -> Derivation {
        let mut ctx = self.ctx.clone();
        ctx.0.insert(x.clone(), sigma.clone());
        let rebinds = matches!((&self.rule, &self.term), (Rule::ArrI, Term::Lam(y, _)) if y == x);
        let premises =
            if rebinds { self.premises.clone() } else { self.premises.iter().map(|p| p.weaken(x, sigma)).collect() };
        Derivation { rule: self.rule, ctx, term: self.term.clone(), ty: self.ty.clone(), premises }
    }

    /// Indented rendering, one judgment per line, conclusion first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        fn go(d: &Derivation, depth: usize, out: &mut String) {
            out.push_str(&"  ".repeat(depth));
            let ctx = if d.ctx.is_empty() { String::new() } else { format!("{} ", d.ctx) };
            out.push_str(&format!("({}) {ctx}|- {} : {}\n", d.rule, d.term, d.ty));
            d.premises.iter().for_each(|p| go(p, depth + 1, out));
        }
        go(self, 0, &mut out);
        out
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
