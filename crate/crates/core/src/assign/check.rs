//! Goal-directed derivation search.
//!
//! The checker is sound (every result goes through [`verify`]) and
//! deliberately incomplete. Goals are normalized first; `ω` goals are closed
//! by (Omega), abstractions are split by arrow domain, records and merges by
//! label. Applications whose head is an abstraction are handled by typing
//! the arguments first (from hints, or by synthesis) and checking the body
//! under those assumptions. Fixed points, both `Y G` and the unfolded
//! `(\x. F (x x)) (\x. F (x x))`, are typed by iterating `F` from `ω` until
//! the goal is reached.

use std::collections::{BTreeMap, BTreeSet};

use super::{verify, Context, Derivation, Rule};
use crate::oop::y_comb;
use crate::syntax::{alpha_eq, Label, Name, Term};
use crate::types::{normalize_type, Decider, Path, Type, TypeNF};

/// Longest fixed-point unfolding tried.
const MAX_CHAIN: usize = 8;

/// Advisory typings that steer the search.
///
/// Term hints are keyed by content (up to alpha), so they keep applying to
/// copies of a subterm made by reduction. Binder hints give a domain to
/// abstractions over the named variable when no goal determines it.
#[derive(Clone, Debug, Default)]
pub struct Hints {
    terms: Vec<(Term, Type)>,
    binders: BTreeMap<Name, Type>,
}

impl Hints {
    pub fn new() -> Hints {
        Hints::default()
    }

    pub fn term(mut self, t: &Term, ty: Type) -> Hints {
        self.terms.push((t.clone(), ty));
        self
    }

    pub fn binder(mut self, x: &str, ty: Type) -> Hints {
        self.binders.insert(Name::new(x), ty);
        self
    }

    pub fn term_hint(&self, t: &Term) -> Option<&Type> {
        self.terms.iter().find(|(u, _)| alpha_eq(u, t)).map(|(_, ty)| ty)
    }

    pub fn binder_hint(&self, x: &Name) -> Option<&Type> {
        self.binders.get(x)
    }

    pub fn extend(mut self, other: &Hints) -> Hints {
        self.terms.extend(other.terms.iter().cloned());
        self.binders.extend(other.binders.iter().map(|(k, v)| (k.clone(), v.clone())));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.binders.is_empty()
    }
}

pub fn check(ctx: &Context, t: &Term, goal: &Type) -> Option<Derivation> {
    check_with(ctx, t, goal, &Hints::default())
}

/// Searches for a derivation of `ctx |- t : goal`. `None` means only that
/// none was found.
pub fn check_with(ctx: &Context, t: &Term, goal: &Type, hints: &Hints) -> Option<Derivation> {
    Checker::new(hints).check(ctx, t, goal)
}

/// Some derivation for `t`; `ω` if nothing better is found.
pub fn synth(ctx: &Context, t: &Term, hints: &Hints) -> Derivation {
    Checker::new(hints).synth(ctx, t)
}

pub struct Checker<'h> {
    hints: &'h Hints,
    dec: Decider,
    busy: Vec<Term>,
    y: Term,
}

enum Special<'a> {
    /// `Y G`
    YApp(&'a Term, &'a Term),
    /// `(\x. F (x x)) (\x. F (x x))`
    SelfApp(&'a Name, &'a Term),
}

impl<'h> Checker<'h> {
    pub fn new(hints: &'h Hints) -> Checker<'h> {
        Checker { hints, dec: Decider::new(), busy: Vec::new(), y: y_comb() }
    }

    /// A verified derivation concluding exactly `ctx |- t : goal`.
    pub fn check(&mut self, ctx: &Context, t: &Term, goal: &Type) -> Option<Derivation> {
        let d = self.check_exact(ctx, t, goal)?;
        match verify(&d) {
            Ok(_) => Some(d),
            Err(e) => {
                debug_assert!(false, "checker produced an invalid derivation: {e}");
                None
            }
        }
    }

    fn le(&mut self, s: &Type, t: &Type) -> bool {
        self.dec.le(s, t)
    }

    fn check_exact(&mut self, ctx: &Context, t: &Term, goal: &Type) -> Option<Derivation> {
        let d = self.check_nf(ctx, t, &normalize_type(goal))?;
        Some(d.subsume(goal.clone()))
    }

    /// A derivation whose type is below `goal`.
    fn check_nf(&mut self, ctx: &Context, t: &Term, goal: &TypeNF) -> Option<Derivation> {
        if goal.is_omega() {
            return Some(Derivation::omega(ctx, t));
        }
        match t {
            Term::Var(_) | Term::Int(_) | Term::Unit | Term::Plus => self.synth_below(ctx, t, goal),
            Term::Lam(x, body) => {
                let mut groups: BTreeMap<TypeNF, BTreeSet<Path>> = BTreeMap::new();
                for p in goal.paths() {
                    let Path::Arrow(dom, cod) = p else { return None };
                    groups.entry(dom.clone()).or_default().insert((**cod).clone());
                }
                let mut parts = Vec::new();
                for (dom, cods) in groups {
                    let dom = dom.to_type();
                    let db = self.check_nf(&ctx.extend(x, dom.clone()), body, &TypeNF::from_set(cods))?;
                    let ty = Type::arrow(dom, db.ty.clone());
                    parts.push(Derivation::node(Rule::ArrI, ctx, t, ty, vec![db]));
                }
                Derivation::inter_all(parts)
            }
            Term::Rec(r) => {
                let mut parts = Vec::new();
                for (a, body) in field_goals(goal)? {
                    let m = r.get(&a)?;
                    let dm = self.check_nf(ctx, m, &body)?;
                    parts.push(Derivation::node(Rule::Rec, ctx, t, Type::Field(a, dm.ty.clone().into()), vec![dm]));
                }
                Derivation::inter_all(parts)
            }
            Term::Merge(m, r) => {
                let mut parts = Vec::new();
                for (a, body) in field_goals(goal)? {
                    if let Some(field) = r.get(&a) {
                        let dm = self.check_nf(ctx, field, &body)?;
                        let ty = Type::Field(a, dm.ty.clone().into());
                        let rec = Derivation::node(Rule::Rec, ctx, &Term::Rec(r.clone()), ty.clone(), vec![dm]);
                        parts.push(Derivation::node(Rule::MergeR, ctx, t, ty, vec![rec]));
                    } else {
                        let target = Type::Field(a, body.to_type().into());
                        let dm = self.check_nf(ctx, m, &normalize_type(&target))?.subsume(target.clone());
                        parts.push(Derivation::node(Rule::MergeL, ctx, t, target, vec![dm]));
                    }
                }
                Derivation::inter_all(parts)
            }
            Term::Sel(m, a) => {
                let target = Type::Field(a.clone(), goal.to_type().into());
                let dm = self.check_nf(ctx, m, &normalize_type(&target))?.subsume(target);
                Some(Derivation::node(Rule::Sel, ctx, t, goal.to_type(), vec![dm]))
            }
            Term::App(f, a) => {
                if let Some(s) = self.special(t) {
                    return self.special_derivation(ctx, t, s, Some(goal));
                }
                if self.plain_lam_headed(f) {
                    let da = self.arg(ctx, a);
                    let df = self.check_spine(ctx, f, std::slice::from_ref(&da.ty), goal)?;
                    return Some(app(ctx, t, df, da));
                }
                self.synth_below(ctx, t, goal)
            }
        }
    }

    fn synth_below(&mut self, ctx: &Context, t: &Term, goal: &TypeNF) -> Option<Derivation> {
        let d = self.synth(ctx, t);
        let nf = normalize_type(&d.ty);
        self.dec.le_nf(&nf, goal).then_some(d)
    }

    fn special<'a>(&self, t: &'a Term) -> Option<Special<'a>> {
        let Term::App(l, r) = t else { return None };
        if alpha_eq(l, &self.y) {
            return Some(Special::YApp(l, r));
        }
        if l != r {
            return None;
        }
        let Term::Lam(x, body) = l.as_ref() else { return None };
        let Term::App(f, xx) = body.as_ref() else { return None };
        let Term::App(x1, x2) = xx.as_ref() else { return None };
        let is_x = |v: &Term| matches!(v, Term::Var(y) if y == x);
        (is_x(x1) && is_x(x2) && !f.occurs_free(x)).then_some(Special::SelfApp(x, f))
    }

    /// The spine head is an abstraction that is applied as an ordinary
    /// redex, not as part of a fixed-point pattern.
    fn plain_lam_headed(&self, t: &Term) -> bool {
        match t {
            Term::Lam(..) => true,
            Term::App(f, _) => self.special(t).is_none() && self.plain_lam_headed(f),
            _ => false,
        }
    }

    fn special_derivation(
        &mut self,
        ctx: &Context,
        t: &Term,
        s: Special<'_>,
        goal: Option<&TypeNF>,
    ) -> Option<Derivation> {
        match s {
            Special::YApp(y, g) => {
                let steps = self.chain(ctx, g, goal)?;
                let last = cod(&steps.last()?.ty).clone();
                let dg = Derivation::inter_all(steps)?;
                let dy = self.check_exact(ctx, y, &Type::arrow(dg.ty.clone(), last))?;
                Some(app(ctx, t, dy, dg))
            }
            Special::SelfApp(x, f) => {
                let Term::App(w, _) = t else { unreachable!() };
                let steps = self.chain(ctx, f, goal)?;
                let ts: Vec<Type> = steps.iter().map(|d| cod(&d.ty).clone()).collect();
                // e[k] = d[1] & ... & d[k], with d[k] = e[k-1] -> ts[k-1]
                let mut e = vec![Type::Omega];
                let mut ws = Vec::new();
                for (k, df) in steps.iter().enumerate() {
                    let dk = Type::arrow(e[k].clone(), ts[k].clone());
                    let inner = ctx.extend(x, e[k].clone());
                    let xv = Term::Var(x.clone());
                    let xx = Term::app(xv.clone(), xv.clone());
                    let dxx = if k == 0 {
                        Derivation::omega(&inner, &xx)
                    } else {
                        let ax = Derivation::leaf(Rule::Ax, &inner, &xv, e[k].clone());
                        let prev_d = Type::arrow(e[k - 1].clone(), ts[k - 1].clone());
                        let dfun = ax.clone().subsume(prev_d);
                        let darg = if k == 1 { Derivation::omega(&inner, &xv) } else { ax.subsume(e[k - 1].clone()) };
                        app(&inner, &xx, dfun, darg)
                    };
                    let body = Term::app(f.clone(), xx);
                    let dbody = app(&inner, &body, df.weaken(x, &e[k]), dxx);
                    ws.push(Derivation::node(Rule::ArrI, ctx, w, dk.clone(), vec![dbody]));
                    e.push(if k == 0 { dk } else { Type::inter(e[k].clone(), dk) });
                }
                let left = ws.pop()?;
                let right = Derivation::inter_all(ws).unwrap_or_else(|| Derivation::omega(ctx, w));
                Some(app(ctx, t, left, right))
            }
        }
    }

    /// Derivations of `F : T[k-1] -> T[k]` for `T[0] = ω`, stopping once
    /// `T[k]` is below the goal, or (without a goal) once it stops growing.
    fn chain(&mut self, ctx: &Context, f: &Term, goal: Option<&TypeNF>) -> Option<Vec<Derivation>> {
        let mut steps: Vec<Derivation> = Vec::new();
        let mut prev = Type::Omega;
        for k in 1..=MAX_CHAIN {
            let d = self.synth_spine(ctx, f, &[prev.clone()]);
            let c = cod(&d.ty).clone();
            if k > 1 && self.le(&prev, &c) && self.le(&c, &prev) {
                return if goal.is_some() { None } else { Some(steps) };
            }
            steps.push(d);
            if let Some(g) = goal {
                if self.dec.le_nf(&normalize_type(&c), g) {
                    return Some(steps);
                }
            }
            prev = c;
        }
        if goal.is_some() {
            None
        } else {
            Some(steps)
        }
    }

    /// Argument derivation: from a term hint if one applies, else synthesized.
    fn arg(&mut self, ctx: &Context, a: &Term) -> Derivation {
        if !self.busy.iter().any(|b| b == a) {
            if let Some(ty) = self.hints.term_hint(a).cloned() {
                self.busy.push(a.clone());
                let d = self.check_exact(ctx, a, &ty);
                self.busy.pop();
                if let Some(d) = d {
                    return d;
                }
            }
        }
        self.synth(ctx, a)
    }

    /// A derivation of `t : doms -> τ` with `τ` below `goal`.
    fn check_spine(&mut self, ctx: &Context, t: &Term, doms: &[Type], goal: &TypeNF) -> Option<Derivation> {
        let Some((first, rest)) = doms.split_first() else {
            return self.check_nf(ctx, t, goal);
        };
        match t {
            Term::Lam(x, body) => {
                let db = self.check_spine(&ctx.extend(x, first.clone()), body, rest, goal)?;
                let ty = Type::arrow(first.clone(), db.ty.clone());
                Some(Derivation::node(Rule::ArrI, ctx, t, ty, vec![db]))
            }
            Term::App(f, a) if self.plain_lam_headed(t) => {
                let da = self.arg(ctx, a);
                let mut all = vec![da.ty.clone()];
                all.extend_from_slice(doms);
                let df = self.check_spine(ctx, f, &all, goal)?;
                Some(app(ctx, t, df, da))
            }
            _ => {
                let d = self.synth_spine(ctx, t, doms);
                let mut res = &d.ty;
                for _ in doms {
                    res = cod(res);
                }
                let res = normalize_type(res);
                self.dec.le_nf(&res, goal).then_some(d)
            }
        }
    }

    /// A derivation of `t : doms -> C` for the best `C` found.
    fn synth_spine(&mut self, ctx: &Context, t: &Term, doms: &[Type]) -> Derivation {
        let Some((first, rest)) = doms.split_first() else {
            return self.synth(ctx, t);
        };
        match t {
            Term::Lam(x, body) => {
                let db = self.synth_spine(&ctx.extend(x, first.clone()), body, rest);
                let ty = Type::arrow(first.clone(), db.ty.clone());
                Derivation::node(Rule::ArrI, ctx, t, ty, vec![db])
            }
            Term::App(f, a) if self.plain_lam_headed(t) => {
                let da = self.arg(ctx, a);
                let mut all = vec![da.ty.clone()];
                all.extend_from_slice(doms);
                let df = self.synth_spine(ctx, f, &all);
                app(ctx, t, df, da)
            }
            _ => {
                let d = self.synth(ctx, t);
                let mut cur = normalize_type(&d.ty);
                for dom in doms {
                    cur = self.apply(&cur, &normalize_type(dom));
                }
                d.subsume(Type::arrows(doms.iter().cloned(), cur.to_type()))
            }
        }
    }

    /// The codomain paths of those arrows of `f` whose domain is above `arg`.
    fn apply(&mut self, f: &TypeNF, arg: &TypeNF) -> TypeNF {
        let arrows: Vec<(TypeNF, Path)> = f.arrows().map(|(d, c)| (d.clone(), c.clone())).collect();
        let mut out = BTreeSet::new();
        for (dom, c) in arrows {
            if self.dec.le_nf(arg, &dom) {
                out.insert(c);
            }
        }
        TypeNF::from_set(out)
    }

    /// Some derivation for `t`, falling back to `ω`.
    pub fn synth(&mut self, ctx: &Context, t: &Term) -> Derivation {
        match t {
            Term::Var(x) => match ctx.get(x) {
                Some(ty) => Derivation::leaf(Rule::Ax, ctx, t, ty.clone()),
                None => Derivation::omega(ctx, t),
            },
            Term::Int(_) => Derivation::leaf(Rule::Lit, ctx, t, Type::int()),
            Term::Unit => Derivation::leaf(Rule::Lit, ctx, t, Type::unit()),
            Term::Plus => Derivation::leaf(Rule::PlusTy, ctx, t, Type::arrows([Type::int(), Type::int()], Type::int())),
            Term::Lam(x, body) => {
                let dom = self.hints.binder_hint(x).cloned().unwrap_or(Type::Omega);
                let db = self.synth(&ctx.extend(x, dom.clone()), body);
                let ty = Type::arrow(dom, db.ty.clone());
                Derivation::node(Rule::ArrI, ctx, t, ty, vec![db])
            }
            Term::Rec(r) => {
                let parts = r
                    .fields()
                    .iter()
                    .map(|(a, m)| {
                        let dm = self.synth(ctx, m);
                        Derivation::node(Rule::Rec, ctx, t, Type::Field(a.clone(), dm.ty.clone().into()), vec![dm])
                    })
                    .collect();
                Derivation::inter_all(parts).unwrap_or_else(|| Derivation::omega(ctx, t))
            }
            Term::Sel(m, a) => {
                let dm = self.synth(ctx, m);
                match normalize_type(&dm.ty).field_body(a) {
                    Some(body) if !body.is_omega() => {
                        let body = body.to_type();
                        let dm = dm.subsume(Type::Field(a.clone(), body.clone().into()));
                        Derivation::node(Rule::Sel, ctx, t, body, vec![dm])
                    }
                    _ => Derivation::omega(ctx, t),
                }
            }
            Term::Merge(m, r) => {
                let dm = self.synth(ctx, m);
                let nf = normalize_type(&dm.ty);
                let mut parts = Vec::new();
                for a in nf.field_labels() {
                    if r.has(&a) {
                        continue;
                    }
                    let body = nf.field_body(&a).unwrap_or_default();
                    let target = Type::Field(a, body.to_type().into());
                    let left = dm.clone().subsume(target.clone());
                    parts.push(Derivation::node(Rule::MergeL, ctx, t, target, vec![left]));
                }
                let rec = Term::Rec(r.clone());
                for (a, field) in r.fields() {
                    let df = self.synth(ctx, field);
                    let ty = Type::Field(a.clone(), df.ty.clone().into());
                    let dr = Derivation::node(Rule::Rec, ctx, &rec, ty.clone(), vec![df]);
                    parts.push(Derivation::node(Rule::MergeR, ctx, t, ty, vec![dr]));
                }
                Derivation::inter_all(parts).unwrap_or_else(|| Derivation::omega(ctx, t))
            }
            Term::App(f, a) => {
                if let Some(s) = self.special(t) {
                    if let Some(d) = self.special_derivation(ctx, t, s, None) {
                        return d;
                    }
                }
                if self.plain_lam_headed(f) {
                    let da = self.arg(ctx, a);
                    let df = self.synth_spine(ctx, f, std::slice::from_ref(&da.ty));
                    return app(ctx, t, df, da);
                }
                self.synth_app(ctx, t, f, a)
            }
        }
    }

    /// Application with an opaque head: every arrow domain of the head's type
    /// that the argument can be checked against contributes its codomain.
    fn synth_app(&mut self, ctx: &Context, t: &Term, f: &Term, a: &Term) -> Derivation {
        let dh = self.synth(ctx, f);
        let phi = normalize_type(&dh.ty);
        let doms: BTreeSet<TypeNF> = phi.arrows().map(|(d, _)| d.clone()).filter(|d| !d.is_omega()).collect();
        if phi.arrows().next().is_none() {
            return Derivation::omega(ctx, t);
        }
        let mut ok = Vec::new();
        for dom in doms {
            if let Some(d) = self.check_nf(ctx, a, &dom) {
                ok.push(d.subsume(dom.to_type()));
            }
        }
        let darg = Derivation::inter_all(ok).unwrap_or_else(|| Derivation::omega(ctx, a));
        let c = self.apply(&phi, &normalize_type(&darg.ty));
        if c.is_omega() {
            return Derivation::omega(ctx, t);
        }
        let dfun = dh.subsume(Type::arrow(darg.ty.clone(), c.to_type()));
        app(ctx, t, dfun, darg)
    }
}

/// (ArrE) from a function derivation `f : σ -> τ` and an argument `a : σ`.
fn app(ctx: &Context, t: &Term, df: Derivation, da: Derivation) -> Derivation {
    let ty = cod(&df.ty).clone();
    Derivation::node(Rule::ArrE, ctx, t, ty, vec![df, da])
}

fn cod(t: &Type) -> &Type {
    match t {
        Type::Arrow(_, c) => c,
        _ => &Type::Omega,
    }
}

/// Field paths of a goal grouped by label; `None` if some path is not a
/// field path.
fn field_goals(goal: &TypeNF) -> Option<Vec<(Label, TypeNF)>> {
    let mut labels = BTreeSet::new();
    for p in goal.paths() {
        let Path::Field(a, _) = p else { return None };
        labels.insert(a.clone());
    }
    Some(
        labels
            .into_iter()
            .map(|a| {
                let body = goal.field_body(&a).unwrap_or_default();
                (a, body)
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::types::parse_type;

    fn ty(s: &str) -> Type {
        parse_type(s).unwrap()
    }

    fn found(ctx: &Context, src: &str, goal: &str) -> bool {
        check(ctx, &parse_term(src).unwrap(), &ty(goal)).is_some()
    }

    #[test]
    fn simple_typings() {
        let e = Context::new();
        assert!(found(&e, r"\x. x", "Int -> Int"));
        assert!(found(&e, r"\x. x", "(Int -> Int) & (Unit -> Unit)"));
        assert!(!found(&e, r"\x. x", "Int -> Unit"));
        assert!(found(&e, "{a = 3}.a", "Int"));
        assert!(found(&e, "{a = 1} ++ {a = ()}", "{a : Unit}"));
        assert!(!found(&e, "{a = 1} ++ {a = ()}", "{a : Int}"));
        assert!(found(&e, "1 + 2", "Int"));
        assert!(found(&e, r"(\z. z z) (\z. z z)", "w"));
    }

    #[test]
    fn fixed_point_of_a_constant_function() {
        let e = Context::new();
        let y = y_comb();
        let t = Term::app(y, parse_term(r"\s. {a = 1, b = s.a}").unwrap());
        assert!(check(&e, &t, &ty("{a : Int, b : Int}")).is_some());
    }

    #[test]
    fn arguments_can_come_from_hints() {
        let e = Context::new();
        let f = parse_term(r"\x. x.a").unwrap();
        let t = Term::app(parse_term(r"\g. g {a = 1}").unwrap(), f.clone());
        assert!(check(&e, &t, &Type::int()).is_none());
        let hints = Hints::new().term(&f, ty("{a : Int} -> Int"));
        assert!(check_with(&e, &t, &Type::int(), &hints).is_some());
    }
}
