//! Printer producing text that parses back to the same term.

use super::{RecordLit, Term};

// precedence levels, loosest first
const TOP: u8 = 0;
const SUM: u8 = 1;
const MERGE: u8 = 2;
const APP: u8 = 3;
const POSTFIX: u8 = 4;

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    go(t, TOP, &mut out);
    out
}

pub fn print_record(r: &RecordLit) -> String {
    let mut out = String::new();
    record(r, &mut out);
    out
}

fn paren(out: &mut String, yes: bool, f: impl FnOnce(&mut String)) {
    if yes {
        out.push('(');
    }
    f(out);
    if yes {
        out.push(')');
    }
}

fn go(t: &Term, prec: u8, out: &mut String) {
    match t {
        Term::Var(x) => out.push_str(x.as_str()),
        Term::Int(n) => out.push_str(&n.to_string()),
        Term::Unit => out.push_str("()"),
        Term::Plus => out.push_str("(+)"),
        Term::Rec(r) => record(r, out),
        Term::Lam(x, b) => paren(out, prec > TOP, |out| {
            out.push('\\');
            out.push_str(x.as_str());
            out.push_str(". ");
            go(b, TOP, out);
        }),
        Term::App(f, b) => {
            if let Term::App(p, a) = f.as_ref() {
                if **p == Term::Plus {
                    return paren(out, prec > SUM, |out| {
                        go(a, SUM, out);
                        out.push_str(" + ");
                        go(b, MERGE, out);
                    });
                }
            }
            paren(out, prec > APP, |out| {
                go(f, APP, out);
                out.push(' ');
                go(b, POSTFIX, out);
            })
        }
        Term::Sel(s, l) => {
            go(s, POSTFIX, out);
            out.push('.');
            out.push_str(l.as_str());
        }
        Term::Merge(s, r) => paren(out, prec > MERGE, |out| {
            go(s, MERGE, out);
            out.push_str(" ++ ");
            record(r, out);
        }),
    }
}

fn record(r: &RecordLit, out: &mut String) {
    out.push('{');
    for (i, (l, t)) in r.fields().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(l.as_str());
        out.push_str(" = ");
        go(t, TOP, out);
    }
    out.push('}');
}
