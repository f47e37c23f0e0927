//! Classes, mixins and objects in the recursive-record model.
//!
//! A class is `\x1 ... xn self. {a1 = M1, ...}` and an object is a fixed
//! point `Y (C v1 ... vn)`. A recursive class takes an extra leading `class`
//! parameter and needs a double fixed point, `Y ((Y C) v1 ... vn)`. A mixin
//! maps classes to classes by merging a record of added or overridden members
//! onto an instance of its `super` class.

pub mod demo;
pub mod stdlib;

use std::collections::BTreeSet;

use crate::assign::{check_with, Derivation, Hints, Rule};
use crate::reduce::whnf_record;
use crate::syntax::{parse_term, Label, Name, RecordLit, Term};
use crate::types::{subtype, Decider, Type};
use crate::{Error, Result};

/// `Y = \f. (\x. f (x x)) (\x. f (x x))`
pub fn y_comb() -> Term {
    parse_term(r"\f. (\x. f (x x)) (\x. f (x x))").expect("fixed-point combinator")
}

/// `B = \f g x. f (g x)`
pub fn b_comb() -> Term {
    parse_term(r"\f g x. f (g x)").expect("composition combinator")
}

/// `outer ∘ inner`, as `B outer inner`.
pub fn compose_mixins(outer: &Term, inner: &Term) -> Term {
    Term::apps(b_comb(), [outer.clone(), inner.clone()])
}

/// Parses a term in which the free variables `Y` and `B` stand for the
/// combinators.
pub fn term(src: &str) -> Result<Term> {
    let t = parse_term(src)?;
    Ok(with_combinators(&t))
}

pub fn with_combinators(t: &Term) -> Term {
    let y = y_comb();
    let b = b_comb();
    t.subst(&Name::new("Y"), &y).subst(&Name::new("B"), &b)
}

#[derive(Clone, Debug)]
pub struct ClassDef {
    pub name: String,
    pub state_params: Vec<Name>,
    pub members: Vec<(Label, Term)>,
    /// Abstract over `class` as well.
    pub recursive: bool,
    /// Append `new = \x'. Y (class x')`; requires `recursive`.
    pub add_new: bool,
}

#[derive(Clone, Debug)]
pub struct MixinDef {
    pub name: String,
    pub state_params: Vec<Name>,
    /// The state passed on to `super`; a sublist of `state_params`.
    pub forwarded_state: Vec<Name>,
    pub delta: Vec<(Label, Term)>,
    pub recursive: bool,
    /// Bind the super instance to this name, as in
    /// `let c = Y ((Y super) x) in c ++ {...}`.
    pub super_object: Option<Name>,
    pub add_new: bool,
}

impl ClassDef {
    pub fn new(name: &str, state: &[&str], members: &[(&str, &str)]) -> Result<ClassDef> {
        Ok(ClassDef {
            name: name.to_string(),
            state_params: state.iter().map(|s| Name::new(s)).collect(),
            members: parse_members(members)?,
            recursive: false,
            add_new: false,
        })
    }

    pub fn recursive(mut self) -> ClassDef {
        self.recursive = true;
        self
    }

    pub fn with_new(mut self) -> ClassDef {
        self.recursive = true;
        self.add_new = true;
        self
    }
}

impl MixinDef {
    pub fn new(name: &str, state: &[&str], delta: &[(&str, &str)]) -> Result<MixinDef> {
        let state_params: Vec<Name> = state.iter().map(|s| Name::new(s)).collect();
        Ok(MixinDef {
            name: name.to_string(),
            forwarded_state: state_params.clone(),
            state_params,
            delta: parse_members(delta)?,
            recursive: false,
            super_object: None,
            add_new: false,
        })
    }

    pub fn forwarding(mut self, ys: &[&str]) -> MixinDef {
        self.forwarded_state = ys.iter().map(|s| Name::new(s)).collect();
        self
    }

    pub fn recursive(mut self) -> MixinDef {
        self.recursive = true;
        self
    }

    pub fn binding_super_as(mut self, c: &str) -> MixinDef {
        self.super_object = Some(Name::new(c));
        self
    }

    pub fn with_new(mut self) -> MixinDef {
        self.recursive = true;
        self.add_new = true;
        self
    }
}

fn parse_members(members: &[(&str, &str)]) -> Result<Vec<(Label, Term)>> {
    members.iter().map(|(l, src)| Ok((Name::new(l), term(src)?))).collect()
}

/// `new = \x1' ... xn'. Y (class x1' ... xn')`
fn new_member(state: &[Name]) -> Term {
    let primed: Vec<Name> = state.iter().map(|x| Name::new(&format!("{x}'"))).collect();
    let inst = Term::apps(Term::var("class"), primed.iter().map(|x| Term::Var(x.clone())));
    let body = Term::app(y_comb(), inst);
    primed.iter().rev().fold(body, |b, x| Term::Lam(x.clone(), b.into()))
}

fn members_record(name: &str, members: &[(Label, Term)], state: &[Name], add_new: bool) -> Result<RecordLit> {
    let mut fields: Vec<(Label, Term)> = members.to_vec();
    if add_new {
        if fields.iter().any(|(l, _)| l.as_str() == "new") {
            return Err(Error::Encoding(format!("{name}: member `new` is generated and may not be given")));
        }
        fields.push((Name::new("new"), new_member(state)));
    }
    RecordLit::new(fields).map_err(|e| Error::Encoding(format!("{name}: {e}")))
}

fn check_scope(name: &str, body: &Term, allowed: &BTreeSet<Name>) -> Result<()> {
    match body.free_vars().into_iter().find(|x| !allowed.contains(x)) {
        Some(x) => Err(Error::Encoding(format!("{name}: unbound variable `{x}` in a member"))),
        None => Ok(()),
    }
}

fn lams(binders: &[Name], body: Term) -> Term {
    binders.iter().rev().fold(body, |b, x| Term::Lam(x.clone(), b.into()))
}

/// `\class? x1 ... xn self. {members}`
pub fn elaborate_class(s: &ClassDef) -> Result<Term> {
    if s.add_new && !s.recursive {
        return Err(Error::Encoding(format!("{}: `new` needs a recursive class", s.name)));
    }
    let rec = members_record(&s.name, &s.members, &s.state_params, s.add_new)?;
    let mut binders = Vec::new();
    if s.recursive {
        binders.push(Name::new("class"));
    }
    binders.extend(s.state_params.iter().cloned());
    binders.push(Name::new("self"));
    let allowed: BTreeSet<Name> = binders.iter().cloned().collect();
    let body = Term::Rec(rec);
    check_scope(&s.name, &body, &allowed)?;
    Ok(lams(&binders, body))
}

/// `\super class? x1 ... xn self. Y ((Y super) y1 ... yk) ++ {delta}`, or
/// with the super instance let-bound to a name.
pub fn elaborate_mixin(s: &MixinDef) -> Result<Term> {
    if s.add_new && !s.recursive {
        return Err(Error::Encoding(format!("{}: `new` needs a recursive mixin", s.name)));
    }
    if let Some(y) = s.forwarded_state.iter().find(|y| !s.state_params.contains(y)) {
        return Err(Error::Encoding(format!("{}: forwarded `{y}` is not a state parameter", s.name)));
    }
    let rec = members_record(&s.name, &s.delta, &s.state_params, s.add_new)?;
    let mut binders = vec![Name::new("super")];
    if s.recursive {
        binders.push(Name::new("class"));
    }
    binders.extend(s.state_params.iter().cloned());
    binders.push(Name::new("self"));
    let mut allowed: BTreeSet<Name> = binders.iter().cloned().collect();
    allowed.extend(s.super_object.iter().cloned());
    check_scope(&s.name, &Term::Rec(rec.clone()), &allowed)?;

    let sup = if s.recursive { Term::app(y_comb(), Term::var("super")) } else { Term::var("super") };
    let pre = Term::apps(sup, s.forwarded_state.iter().map(|y| Term::Var(y.clone())));
    let instance = Term::app(y_comb(), pre);
    let body = match &s.super_object {
        None => Term::merge(instance, rec),
        Some(c) => Term::app(Term::Lam(c.clone(), Term::merge(Term::Var(c.clone()), rec).into()), instance),
    };
    Ok(lams(&binders, body))
}

/// `Y (C v1 ... vn)`, or `Y ((Y C) v1 ... vn)` for a recursive class.
pub fn object_term(class: &Term, args: &[Term], recursive: bool) -> Term {
    let c = if recursive { Term::app(y_comb(), class.clone()) } else { class.clone() };
    Term::app(y_comb(), Term::apps(c, args.iter().cloned()))
}

/// Instantiates a class and head-reduces the object to its record.
pub fn new_object(class: &Term, args: &[Term], recursive: bool, fuel: usize) -> Result<RecordLit> {
    whnf_record(&object_term(class, args, recursive), fuel)
}

/// `t1 -> ... -> tk -> (ω -> σ1) & (σ1 -> σ2) & ... & (σ[n-1] -> σn)`
#[derive(Clone, Debug)]
pub struct ClassTypeDef {
    pub ground_prefix: Vec<Type>,
    pub instance_chain: Vec<Type>,
    /// Reject chains that are not descending (`σ[i+1] ≤ σ[i]`).
    pub validate: bool,
}

impl ClassTypeDef {
    pub fn new(ground_prefix: Vec<Type>, instance_chain: Vec<Type>) -> ClassTypeDef {
        ClassTypeDef { ground_prefix, instance_chain, validate: true }
    }
}

/// `(ω -> t1) & (t1 -> t2) & ... & (t[n-1] -> tn)`, left-nested.
pub fn chain_type(chain: &[Type]) -> Type {
    let mut parts = Vec::with_capacity(chain.len());
    let mut prev = Type::Omega;
    for t in chain {
        parts.push(Type::arrow(prev, t.clone()));
        prev = t.clone();
    }
    Type::inter_all(parts)
}

fn is_record_type(t: &Type) -> bool {
    t.conjuncts().into_iter().all(|c| matches!(c, Type::Field(..)))
}

fn descending(chain: &[Type]) -> Option<usize> {
    let mut dec = Decider::new();
    (1..chain.len()).find(|&i| !dec.le(&chain[i], &chain[i - 1]))
}

pub fn class_type(def: &ClassTypeDef) -> Result<Type> {
    if def.instance_chain.is_empty() {
        return Err(Error::Encoding("a class type needs at least one instance type".into()));
    }
    if let Some(t) = def.instance_chain.iter().find(|t| !is_record_type(t)) {
        return Err(Error::Encoding(format!("`{t}` is not a record type")));
    }
    if def.validate {
        if let Some(i) = descending(&def.instance_chain) {
            return Err(Error::Encoding(format!(
                "instance chain is not descending at position {}: `{}` is not below `{}`",
                i + 1,
                def.instance_chain[i],
                def.instance_chain[i - 1]
            )));
        }
    }
    Ok(Type::arrows(def.ground_prefix.iter().cloned(), chain_type(&def.instance_chain)))
}

/// `(ω -> κ1) & (κ1 -> κ2) & ...`, checking that the chain descends unless
/// `validate` is off.
pub fn rec_class_type(chain: &[Type], validate: bool) -> Result<Type> {
    if chain.is_empty() {
        return Err(Error::Encoding("a recursive class type needs at least one class type".into()));
    }
    if validate {
        if let Some(i) = descending(chain) {
            return Err(Error::Encoding(format!("class type chain is not descending at position {}", i + 1)));
        }
    }
    Ok(chain_type(chain))
}

/// From `m1 : κ1 -> κ2` and `m2 : κ3 -> κ4` with `κ2 ≤ κ3`, a derivation of
/// `B m2 m1 : κ1 -> κ4`.
pub fn compose_typing(d1: &Derivation, d2: &Derivation) -> Result<Derivation> {
    let (Type::Arrow(k1, k2), Type::Arrow(k3, k4)) = (&d1.ty, &d2.ty) else {
        return Err(Error::Encoding("mixin typings must be arrows".into()));
    };
    if !subtype(k2, k3) {
        return Err(Error::Encoding(format!("`{k2}` is not a subtype of `{k3}`")));
    }
    let ctx = &d1.ctx;
    let ty_b = Type::arrows([d2.ty.clone(), d1.ty.clone(), (**k1).clone()], (**k4).clone());
    let b = b_comb();
    let db = check_with(ctx, &b, &ty_b, &Hints::new())
        .ok_or_else(|| Error::Encoding("no derivation found for the composition combinator".into()))?;
    let bm2 = Term::app(b, d2.term.clone());
    let after_m2 = Type::arrows([d1.ty.clone(), (**k1).clone()], (**k4).clone());
    let d_bm2 = Derivation::node(Rule::ArrE, ctx, &bm2, after_m2, vec![db, d2.clone()]);
    let whole = Term::app(bm2, d1.term.clone());
    let ty = Type::arrow((**k1).clone(), (**k4).clone());
    Ok(Derivation::node(Rule::ArrE, ctx, &whole, ty, vec![d_bm2, d1.clone()]))
}
