use std::fmt;

use super::{Derivation, Judgment, Rule};
use crate::syntax::Term;
use crate::types::{Decider, Type};

/// Why a derivation node was rejected, and where: `path` lists premise
/// indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct VerifyError {
    pub path: Vec<usize>,
    pub rule: Rule,
    pub reason: String,
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.path.is_empty() {
            "root".to_string()
        } else {
            self.path.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
        };
        write!(f, "node {at} ({}): {}", self.rule, self.reason)
    }
}

/// Checks every node of `d` and returns its root judgment.
pub fn verify(d: &Derivation) -> Result<Judgment, VerifyError> {
    let mut decider = Decider::new();
    let mut path = Vec::new();
    node(d, &mut decider, &mut path)?;
    Ok(d.judgment())
}

fn node(d: &Derivation, dec: &mut Decider, path: &mut Vec<usize>) -> Result<(), VerifyError> {
    let fail = |reason: String| VerifyError { path: path.clone(), rule: d.rule, reason };
    if let Some(x) = d.term.free_vars().into_iter().find(|x| !d.ctx.contains(x)) {
        return Err(fail(format!("free variable `{x}` is not in the context")));
    }
    let arity = match d.rule {
        Rule::Ax | Rule::Omega | Rule::Lit | Rule::PlusTy => 0,
        Rule::ArrE | Rule::IntI => 2,
        _ => 1,
    };
    if d.premises.len() != arity {
        return Err(fail(format!("expected {arity} premise(s), found {}", d.premises.len())));
    }
    let p = &d.premises;
    let same_ctx = |i: usize| -> Result<(), VerifyError> {
        if p[i].ctx != d.ctx {
            return Err(fail(format!("premise {i} has a different context")));
        }
        Ok(())
    };
    match d.rule {
        Rule::Ax => {
            let Term::Var(x) = &d.term else { return Err(fail("subject is not a variable".into())) };
            match d.ctx.get(x) {
                Some(t) if *t == d.ty => {}
                Some(t) => return Err(fail(format!("context gives `{x} : {t}`, not `{}`", d.ty))),
                None => return Err(fail(format!("`{x}` is not in the context"))),
            }
        }
        Rule::ArrI => {
            let Term::Lam(x, body) = &d.term else { return Err(fail("subject is not an abstraction".into())) };
            let Type::Arrow(dom, cod) = &d.ty else { return Err(fail("type is not an arrow".into())) };
            if p[0].ctx != d.ctx.extend(x, (**dom).clone()) {
                return Err(fail(format!("premise context must extend the conclusion with `{x} : {dom}`")));
            }
            if p[0].term != **body {
                return Err(fail("premise subject is not the abstraction body".into()));
            }
            if p[0].ty != **cod {
                return Err(fail(format!("premise type `{}` is not the codomain `{cod}`", p[0].ty)));
            }
        }
        Rule::ArrE => {
            let Term::App(f, a) = &d.term else { return Err(fail("subject is not an application".into())) };
            same_ctx(0)?;
            same_ctx(1)?;
            if p[0].term != **f || p[1].term != **a {
                return Err(fail("premise subjects are not the function and argument".into()));
            }
            let Type::Arrow(dom, cod) = &p[0].ty else {
                return Err(fail(format!("function type `{}` is not an arrow", p[0].ty)));
            };
            if **dom != p[1].ty {
                return Err(fail(format!("argument type `{}` does not match domain `{dom}`", p[1].ty)));
            }
            if **cod != d.ty {
                return Err(fail(format!("codomain `{cod}` is not the conclusion type")));
            }
        }
        Rule::Omega => {
            if d.ty != Type::Omega {
                return Err(fail(format!("type must be `w`, found `{}`", d.ty)));
            }
        }
        Rule::IntI => {
            same_ctx(0)?;
            same_ctx(1)?;
            if p[0].term != d.term || p[1].term != d.term {
                return Err(fail("premise subjects differ from the conclusion".into()));
            }
            if d.ty != Type::inter(p[0].ty.clone(), p[1].ty.clone()) {
                return Err(fail("type is not the intersection of the premise types".into()));
            }
        }
        Rule::Sub => {
            same_ctx(0)?;
            if p[0].term != d.term {
                return Err(fail("premise subject differs from the conclusion".into()));
            }
            if !dec.le(&p[0].ty, &d.ty) {
                return Err(fail(format!("`{}` is not a subtype of `{}`", p[0].ty, d.ty)));
            }
        }
        Rule::Sel => {
            let Term::Sel(m, a) = &d.term else { return Err(fail("subject is not a selection".into())) };
            same_ctx(0)?;
            if p[0].term != **m {
                return Err(fail("premise subject is not the selected term".into()));
            }
            if p[0].ty != Type::Field(a.clone(), d.ty.clone().into()) {
                return Err(fail(format!("premise type must be `{}`", Type::Field(a.clone(), d.ty.clone().into()))));
            }
        }
        Rule::Rec => {
            let Term::Rec(r) = &d.term else { return Err(fail("subject is not a record literal".into())) };
            let Type::Field(a, sigma) = &d.ty else { return Err(fail("type is not a field type".into())) };
            same_ctx(0)?;
            let Some(m) = r.get(a) else { return Err(fail(format!("label `{a}` is not in the record"))) };
            if p[0].term != **m {
                return Err(fail(format!("premise subject is not the field `{a}`")));
            }
            if p[0].ty != **sigma {
                return Err(fail("premise type is not the field type".into()));
            }
        }
        Rule::MergeL => {
            let Term::Merge(m, r) = &d.term else { return Err(fail("subject is not a merge".into())) };
            let Type::Field(a, _) = &d.ty else { return Err(fail("type is not a field type".into())) };
            same_ctx(0)?;
            if r.has(a) {
                return Err(fail(format!("side condition a ∉ lbl(R) violated: `{a}` is a label of `{r}`")));
            }
            if p[0].term != **m {
                return Err(fail("premise subject is not the left operand".into()));
            }
            if p[0].ty != d.ty {
                return Err(fail("premise type differs from the conclusion".into()));
            }
        }
        Rule::MergeR => {
            let Term::Merge(_, r) = &d.term else { return Err(fail("subject is not a merge".into())) };
            if !matches!(d.ty, Type::Field(..)) {
                return Err(fail("type is not a field type".into()));
            }
            same_ctx(0)?;
            if p[0].term != Term::Rec(r.clone()) {
                return Err(fail("premise subject is not the right record".into()));
            }
            if p[0].ty != d.ty {
                return Err(fail("premise type differs from the conclusion".into()));
            }
        }
        Rule::Lit => {
            let want = match &d.term {
                Term::Int(_) => Type::int(),
                Term::Unit => Type::unit(),
                _ => return Err(fail("subject is not a literal".into())),
            };
            if d.ty != want {
                return Err(fail(format!("literal has type `{want}`")));
            }
        }
        Rule::PlusTy => {
            if d.term != Term::Plus {
                return Err(fail("subject is not `(+)`".into()));
            }
            if d.ty != Type::arrows([Type::int(), Type::int()], Type::int()) {
                return Err(fail("`(+)` has type `Int -> Int -> Int`".into()));
            }
        }
    }
    for (i, q) in d.premises.iter().enumerate() {
        path.push(i);
        node(q, dec, path)?;
        path.pop();
    }
    Ok(())
}
