//! Named end-to-end demonstrations over the library classes.

use std::fmt::Write as _;

use super::stdlib;
use crate::assign::{check_with, verify};
use crate::reduce::{normalize, whnf_record};
use crate::syntax::{Name, Term};
use crate::types::subtype;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Eval,
    Typing,
    Subtype,
}

#[derive(Clone, Debug)]
pub struct DemoResult {
    pub name: String,
    pub output: String,
    pub ok: bool,
}

const EVALS: &[(&str, &str)] = &[
    ("point-get", "(Y (Point 3)).get evaluates to 3"),
    ("movable-move", "moving a Movable point at 3 by 4 gives X = 7"),
    ("usage-pipeline", "the usage program over SetAdapter . Movable returns 3"),
    ("usage-swapped", "with Movable . SetAdapter the usage program gets stuck"),
];

const SUBTYPES: &[(&str, &str)] = &[
    ("subtype-delta", "Movable's second instance type is below its added-member type"),
    ("subtype-override", "SetAdapter's instances are not below Movable's: set changed its domain"),
];

pub fn names() -> Vec<String> {
    let mut v: Vec<String> = EVALS.iter().map(|(n, _)| n.to_string()).collect();
    v.extend(stdlib::entries().iter().map(|e| format!("typing-{}", e.name)));
    v.extend(SUBTYPES.iter().map(|(n, _)| n.to_string()));
    v
}

/// One line per demo: name, kind and what it shows.
pub fn manifest() -> String {
    let mut out = String::new();
    for (n, d) in EVALS {
        let _ = writeln!(out, "{n:<26} eval     {d}");
    }
    for e in stdlib::entries() {
        let _ = writeln!(out, "{:<26} typing   {}", format!("typing-{}", e.name), e.description);
    }
    for (n, d) in SUBTYPES {
        let _ = writeln!(out, "{n:<26} subtype  {d}");
    }
    out
}

pub fn kind(name: &str) -> Option<Kind> {
    if EVALS.iter().any(|(n, _)| *n == name) {
        Some(Kind::Eval)
    } else if SUBTYPES.iter().any(|(n, _)| *n == name) {
        Some(Kind::Subtype)
    } else if name.strip_prefix("typing-").is_some_and(|e| stdlib::entry(e).is_some()) {
        Some(Kind::Typing)
    } else {
        None
    }
}

/// Runs a demo. `None` if there is no demo of that name.
pub fn run(name: &str, fuel: usize) -> Option<Result<DemoResult>> {
    let result = match kind(name)? {
        Kind::Eval => run_eval(name, fuel),
        Kind::Typing => Ok(run_typing(name.trim_start_matches("typing-"))),
        Kind::Subtype => Ok(run_subtype(name)),
    };
    Some(result.map(|(output, ok)| DemoResult { name: name.to_string(), output, ok }))
}

fn run_eval(name: &str, fuel: usize) -> Result<(String, bool)> {
    Ok(match name {
        "point-get" => {
            let obj = super::object_term(&stdlib::point3(), &[Term::Int(3)], false);
            let r = normalize(&Term::sel(obj, "get"), fuel);
            (format!("{}", r.term()), *r.term() == Term::Int(3))
        }
        "movable-move" => {
            let moved = whnf_record(&stdlib::movable_move(&stdlib::movable3(), 4), fuel)?;
            let x = moved.get(&Name::new("X")).map(|t| normalize(t, fuel).term().clone());
            match x {
                Some(x) => (x.to_string(), x == Term::Int(7)),
                None => ("moved object has no X".to_string(), false),
            }
        }
        "usage-pipeline" => {
            let r = stdlib::run_usage_pipeline(fuel);
            (format!("{} ({} steps)", r.term(), r.steps()), r.is_normal_form() && *r.term() == Term::Int(3))
        }
        _ => {
            let r = stdlib::run_usage_pipeline_swapped(fuel);
            let shown = r.term().to_string();
            let shown = if shown.chars().count() > 200 {
                format!("{}...", shown.chars().take(200).collect::<String>())
            } else {
                shown
            };
            (format!("stuck after {} steps: {shown}", r.steps()), r.is_normal_form() && *r.term() != Term::Int(3))
        }
    })
}

fn run_typing(name: &str) -> (String, bool) {
    let e = stdlib::entry(name).expect("known entry");
    match check_with(&e.ctx, &e.term, &e.goal, &e.hints) {
        Some(d) => {
            let ok = verify(&d).is_ok();
            (format!("{name} : {} ({} rule applications)", e.goal, d.size()), ok)
        }
        None => (format!("no derivation of {name} : {}", e.goal), false),
    }
}

fn run_subtype(name: &str) -> (String, bool) {
    let m = stdlib::movable4_family();
    let (l, r, expected) = match name {
        "subtype-delta" => (m.sigma[1].clone(), m.sigma_delta.clone().expect("delta"), true),
        _ => (stdlib::set_adapter4_family().sigma[2].clone(), m.sigma[1].clone(), false),
    };
    let got = subtype(&l, &r);
    (format!("{l} <= {r}: {got}"), got == expected)
}
