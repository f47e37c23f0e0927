//! Terms of the record calculus: abstract syntax, binding structure and
//! capture-avoiding substitution.
//!
//! There are two syntactic classes. [`Term`] is the general class and
//! [`RecordLit`] is the class of record literals. The right operand of a
//! merge is always a [`RecordLit`], so a merge such as `{a = 1} ++ x` cannot
//! be built.

pub(crate) mod lex;
mod parse;
mod print;
mod sugar;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

pub use parse::{parse_sugar, parse_term};
pub use sugar::{desugar_let, Sugar, SugarRecord};

use crate::error::SyntaxError;

/// A variable or label identifier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Name {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Name {
        Name::new(s)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Record labels live in their own namespace; they are never variables.
pub type Label = Name;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name),
    Lam(Name, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Rec(RecordLit),
    Sel(Arc<Term>, Label),
    Merge(Arc<Term>, RecordLit),
    Int(i64),
    Unit,
    /// Curried integer addition.
    Plus,
}

/// A record literal `{a1 = M1, ..., an = Mn}` with pairwise distinct labels.
///
/// Entry order is kept for printing only.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RecordLit {
    fields: Vec<(Label, Arc<Term>)>,
}

impl RecordLit {
    pub fn new<I>(fields: I) -> Result<RecordLit, SyntaxError>
    where
        I: IntoIterator<Item = (Label, Term)>,
    {
        let mut out: Vec<(Label, Arc<Term>)> = Vec::new();
        for (l, t) in fields {
            if out.iter().any(|(k, _)| *k == l) {
                return Err(SyntaxError::DuplicateLabel(l.to_string()));
            }
            out.push((l, Arc::new(t)));
        }
        Ok(RecordLit { fields: out })
    }

    fn from_arcs(fields: Vec<(Label, Arc<Term>)>) -> RecordLit {
        debug_assert!({
            let set: BTreeSet<_> = fields.iter().map(|(l, _)| l).collect();
            set.len() == fields.len()
        });
        RecordLit { fields }
    }

    pub fn fields(&self) -> &[(Label, Arc<Term>)] {
        &self.fields
    }

    pub fn get(&self, label: &Label) -> Option<&Arc<Term>> {
        self.fields.iter().find(|(l, _)| l == label).map(|(_, t)| t)
    }

    pub fn has(&self, label: &Label) -> bool {
        self.get(label).is_some()
    }

    /// `lbl(R)`.
    pub fn labels(&self) -> BTreeSet<Label> {
        self.fields.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    /// Right-biased merge of two literals: fields of `right` prevail.
    ///
    /// Left fields that survive keep their order, followed by the fields of
    /// `right` in order.
    pub fn merge(&self, right: &RecordLit) -> RecordLit {
        let mut fields: Vec<(Label, Arc<Term>)> = self.fields.iter().filter(|(l, _)| !right.has(l)).cloned().collect();
        fields.extend(right.fields.iter().cloned());
        RecordLit::from_arcs(fields)
    }

    pub fn map_fields(&self, mut f: impl FnMut(&Arc<Term>) -> Arc<Term>) -> RecordLit {
        RecordLit::from_arcs(self.fields.iter().map(|(l, t)| (l.clone(), f(t))).collect())
    }

    fn replace_field(&self, index: usize, t: Arc<Term>) -> RecordLit {
        let mut fields = self.fields.clone();
        fields[index].1 = t;
        RecordLit::from_arcs(fields)
    }
}

/// `lbl(R)` as a free function.
pub fn labels(r: &RecordLit) -> BTreeSet<Label> {
    r.labels()
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(Name::new(x))
    }

    pub fn lam(x: &str, body: Term) -> Term {
        Term::Lam(Name::new(x), Arc::new(body))
    }

    /// `\x1 x2 ... . body`
    pub fn lams(xs: &[&str], body: Term) -> Term {
        xs.iter().rev().fold(body, |b, x| Term::lam(x, b))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    /// Left-nested application `f a1 ... an`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn sel(t: Term, label: &str) -> Term {
        Term::Sel(Arc::new(t), Name::new(label))
    }

    pub fn merge(t: Term, r: RecordLit) -> Term {
        Term::Merge(Arc::new(t), r)
    }

    pub fn record<'a, I>(fields: I) -> Result<Term, SyntaxError>
    where
        I: IntoIterator<Item = (&'a str, Term)>,
    {
        RecordLit::new(fields.into_iter().map(|(l, t)| (Name::new(l), t))).map(Term::Rec)
    }

    /// `M + N`, i.e. `Plus M N`.
    pub fn plus(m: Term, n: Term) -> Term {
        Term::apps(Term::Plus, [m, n])
    }

    /// Pairs are records with fields `fst` and `snd`.
    pub fn pair(m: Term, n: Term) -> Term {
        Term::Rec(RecordLit::from_arcs(vec![(Name::new("fst"), Arc::new(m)), (Name::new("snd"), Arc::new(n))]))
    }

    /// Splits an application spine into its head and arguments.
    pub fn spine(&self) -> (&Term, Vec<&Arc<Term>>) {
        let mut args = Vec::new();
        let mut head = self;
        while let Term::App(f, a) = head {
            args.push(a);
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Int(_) | Term::Unit | Term::Plus => 1,
            Term::Lam(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Rec(r) => 1 + r.fields.iter().map(|(_, t)| t.size()).sum::<usize>(),
            Term::Sel(t, _) => 1 + t.size(),
            Term::Merge(t, r) => 1 + t.size() + 1 + r.fields.iter().map(|(_, t)| t.size()).sum::<usize>(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Term::Lam(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Term::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            Term::Rec(r) => r.fields.iter().for_each(|(_, t)| t.collect_free(bound, out)),
            Term::Sel(t, _) => t.collect_free(bound, out),
            Term::Merge(t, r) => {
                t.collect_free(bound, out);
                r.fields.iter().for_each(|(_, t)| t.collect_free(bound, out));
            }
            Term::Int(_) | Term::Unit | Term::Plus => {}
        }
    }

    pub fn occurs_free(&self, x: &Name) -> bool {
        match self {
            Term::Var(y) => y == x,
            Term::Lam(y, b) => y != x && b.occurs_free(x),
            Term::App(f, a) => f.occurs_free(x) || a.occurs_free(x),
            Term::Rec(r) => r.fields.iter().any(|(_, t)| t.occurs_free(x)),
            Term::Sel(t, _) => t.occurs_free(x),
            Term::Merge(t, r) => t.occurs_free(x) || r.fields.iter().any(|(_, t)| t.occurs_free(x)),
            Term::Int(_) | Term::Unit | Term::Plus => false,
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Capture-avoiding substitution `self[replacement/var]`.
    pub fn subst(&self, var: &Name, replacement: &Term) -> Term {
        let fv = replacement.free_vars();
        subst_arc(&Arc::new(self.clone()), var, replacement, &fv).as_ref().clone()
    }

    /// Child at position `i` in the traversal order used for redex paths.
    pub fn child(&self, i: usize) -> Option<&Arc<Term>> {
        match (self, i) {
            (Term::Lam(_, b), 0) => Some(b),
            (Term::App(f, _), 0) => Some(f),
            (Term::App(_, a), 1) => Some(a),
            (Term::Rec(r), i) => r.fields.get(i).map(|(_, t)| t),
            (Term::Sel(t, _), 0) => Some(t),
            (Term::Merge(t, _), 0) => Some(t),
            (Term::Merge(_, r), i) => r.fields.get(i - 1).map(|(_, t)| t),
            _ => None,
        }
    }

    /// Rebuilds `self` with child `i` replaced.
    pub fn with_child(&self, i: usize, new: Arc<Term>) -> Term {
        match (self, i) {
            (Term::Lam(x, _), 0) => Term::Lam(x.clone(), new),
            (Term::App(_, a), 0) => Term::App(new, a.clone()),
            (Term::App(f, _), 1) => Term::App(f.clone(), new),
            (Term::Rec(r), i) => Term::Rec(r.replace_field(i, new)),
            (Term::Sel(_, l), 0) => Term::Sel(new, l.clone()),
            (Term::Merge(_, r), 0) => Term::Merge(new, r.clone()),
            (Term::Merge(t, r), i) => Term::Merge(t.clone(), r.replace_field(i - 1, new)),
            _ => panic!("no child {i}"),
        }
    }

    pub fn children(&self) -> Vec<&Arc<Term>> {
        (0..).map_while(|i| self.child(i)).collect()
    }
}

fn subst_arc(t: &Arc<Term>, x: &Name, n: &Term, fv_n: &BTreeSet<Name>) -> Arc<Term> {
    if !t.occurs_free(x) {
        return t.clone();
    }
    match t.as_ref() {
        Term::Var(_) => Arc::new(n.clone()),
        Term::Lam(y, body) => {
            // y != x, since x occurs free
            if fv_n.contains(y) {
                let mut avoid = fv_n.clone();
                avoid.extend(body.free_vars());
                avoid.insert(x.clone());
                let fresh = fresh_name(y, &avoid);
                let renamed = subst_arc(body, y, &Term::Var(fresh.clone()), &BTreeSet::from([fresh.clone()]));
                Arc::new(Term::Lam(fresh, subst_arc(&renamed, x, n, fv_n)))
            } else {
                Arc::new(Term::Lam(y.clone(), subst_arc(body, x, n, fv_n)))
            }
        }
        Term::App(f, a) => Arc::new(Term::App(subst_arc(f, x, n, fv_n), subst_arc(a, x, n, fv_n))),
        Term::Rec(r) => Arc::new(Term::Rec(r.map_fields(|t| subst_arc(t, x, n, fv_n)))),
        Term::Sel(s, l) => Arc::new(Term::Sel(subst_arc(s, x, n, fv_n), l.clone())),
        Term::Merge(s, r) => {
            Arc::new(Term::Merge(subst_arc(s, x, n, fv_n), r.map_fields(|t| subst_arc(t, x, n, fv_n))))
        }
        Term::Int(_) | Term::Unit | Term::Plus => t.clone(),
    }
}

/// A variant of `base` (primed) that is not in `avoid`.
pub fn fresh_name(base: &Name, avoid: &BTreeSet<Name>) -> Name {
    let stem = base.as_str().trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    for i in 1.. {
        let cand = Name::new(&format!("{stem}{i}"));
        if !avoid.contains(&cand) && !sugar::is_keyword(cand.as_str()) {
            return cand;
        }
    }
    unreachable!()
}

/// Identity up to consistent renaming of bound variables.
pub fn alpha_eq(s: &Term, t: &Term) -> bool {
    fn go(s: &Term, t: &Term, env: &mut Vec<(Name, Name)>) -> bool {
        match (s, t) {
            (Term::Var(x), Term::Var(y)) => {
                for (a, b) in env.iter().rev() {
                    if a == x || b == y {
                        return a == x && b == y;
                    }
                }
                x == y
            }
            (Term::Lam(x, b1), Term::Lam(y, b2)) => {
                env.push((x.clone(), y.clone()));
                let r = go(b1, b2, env);
                env.pop();
                r
            }
            (Term::App(f1, a1), Term::App(f2, a2)) => go(f1, f2, env) && go(a1, a2, env),
            (Term::Rec(r1), Term::Rec(r2)) => rec_eq(r1, r2, env, go),
            (Term::Sel(t1, l1), Term::Sel(t2, l2)) => l1 == l2 && go(t1, t2, env),
            (Term::Merge(t1, r1), Term::Merge(t2, r2)) => go(t1, t2, env) && rec_eq(r1, r2, env, go),
            (Term::Int(a), Term::Int(b)) => a == b,
            (Term::Unit, Term::Unit) | (Term::Plus, Term::Plus) => true,
            _ => false,
        }
    }
    fn rec_eq(
        r1: &RecordLit,
        r2: &RecordLit,
        env: &mut Vec<(Name, Name)>,
        go: fn(&Term, &Term, &mut Vec<(Name, Name)>) -> bool,
    ) -> bool {
        // field order is irrelevant
        r1.len() == r2.len() && r1.fields.iter().all(|(l, t1)| r2.get(l).is_some_and(|t2| go(t1, t2, env)))
    }
    go(s, t, &mut Vec::new())
}

/// Simultaneous substitution of closed terms for free variables, e.g. to
/// plug library definitions into a template.
pub fn instantiate(template: &Term, defs: &[(&str, &Term)]) -> Term {
    let map: HashMap<Name, &Term> = defs.iter().map(|(n, t)| (Name::new(n), *t)).collect();
    let mut out = template.clone();
    for (n, t) in map {
        out = out.subst(&n, t);
    }
    out
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_term(self))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl fmt::Display for RecordLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_record(self))
    }
}

impl fmt::Debug for RecordLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

pub fn print_term(t: &Term) -> String {
    print::print_term(t)
}
