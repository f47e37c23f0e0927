//! Derivations as JSON trees:
//!
//! ```json
//! {"rule": "ArrI", "term": "\\x. x", "type": "Int -> Int", "ctx": {},
//!  "data": {"binder": "x"}, "premises": [ ... ]}
//! ```
//!
//! Terms and types are in concrete syntax. `data` is informative; when a
//! label or binder is present on input it must agree with the node.

use serde_json::{json, Map, Value};

use super::{Context, Derivation, Rule};
use crate::syntax::{parse_term, Name, Term};
use crate::types::{parse_type, Type};
use crate::{Error, Result};

pub fn derivation_to_json(d: &Derivation) -> Value {
    let ctx: Map<String, Value> = d.ctx.iter().map(|(x, t)| (x.to_string(), Value::String(t.to_string()))).collect();
    json!({
        "rule": d.rule.name(),
        "term": d.term.to_string(),
        "type": d.ty.to_string(),
        "ctx": ctx,
        "data": data(d),
        "premises": d.premises.iter().map(derivation_to_json).collect::<Vec<_>>(),
    })
}

fn data(d: &Derivation) -> Value {
    match (d.rule, &d.term, &d.ty) {
        (Rule::Ax, Term::Var(x), _) => json!({ "var": x.as_str() }),
        (Rule::ArrI, Term::Lam(x, _), _) => json!({ "binder": x.as_str() }),
        (Rule::Sel, Term::Sel(_, a), _) => json!({ "label": a.as_str() }),
        (Rule::Rec | Rule::MergeL | Rule::MergeR, _, Type::Field(a, _)) => json!({ "label": a.as_str() }),
        (Rule::Sub, _, to) => match d.premises.first() {
            Some(p) => json!({ "from": p.ty.to_string(), "to": to.to_string() }),
            None => json!({}),
        },
        _ => json!({}),
    }
}

pub fn derivation_from_json(v: &Value) -> Result<Derivation> {
    let bad = |msg: String| Error::Json(msg);
    let obj = v.as_object().ok_or_else(|| bad("derivation node must be an object".into()))?;
    // The conclusion may also be grouped as {"conclusion": {ctx, term, type}}.
    let concl = obj.get("conclusion").and_then(Value::as_object).unwrap_or(obj);
    let text = |k: &str| -> Result<&str> {
        let src = if k == "rule" { obj } else { concl };
        src.get(k).and_then(Value::as_str).ok_or_else(|| bad(format!("missing string field `{k}`")))
    };
    let rule_name = text("rule")?;
    let rule = Rule::from_name(rule_name).ok_or_else(|| bad(format!("unknown rule `{rule_name}`")))?;
    let term = parse_term(text("term")?)?;
    let ty = parse_type(text("type")?)?;
    let mut ctx = Context::new();
    if let Some(c) = concl.get("ctx") {
        let c = c.as_object().ok_or_else(|| bad("`ctx` must be an object".into()))?;
        for (x, t) in c {
            let t = t.as_str().ok_or_else(|| bad(format!("type of `{x}` must be a string")))?;
            ctx = ctx.extend(&Name::new(x), parse_type(t)?);
        }
    }
    let premises = match obj.get("premises") {
        None => Vec::new(),
        Some(Value::Array(ps)) => ps.iter().map(derivation_from_json).collect::<Result<_>>()?,
        Some(_) => return Err(bad("`premises` must be an array".into())),
    };
    let d = Derivation { rule, ctx, term, ty, premises };
    if let Some(given) = obj.get("data").and_then(Value::as_object) {
        let expected = data(&d);
        for key in ["label", "binder", "var"] {
            if let (Some(g), Some(e)) = (given.get(key), expected.get(key)) {
                if g != e {
                    return Err(bad(format!("{rule} node: data `{key}` is {g}, but the node implies {e}")));
                }
            }
        }
    }
    Ok(d)
}
