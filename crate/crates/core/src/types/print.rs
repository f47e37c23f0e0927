use super::Type;
use crate::syntax::Label;

const ARROW: u8 = 0;
const INTER: u8 = 1;
const PROD: u8 = 2;
const ATOM: u8 = 3;

pub fn print_type(t: &Type) -> String {
    let mut out = String::new();
    go(t, ARROW, &mut out);
    out
}

/// A left-nested chain of field types with distinct labels, as produced by
/// the record-type sugar.
fn record_chain(t: &Type) -> Option<Vec<(&Label, &Type)>> {
    match t {
        Type::Field(l, b) => Some(vec![(l, b)]),
        Type::Inter(l, r) => {
            let Type::Field(lab, body) = r.as_ref() else { return None };
            let mut chain = record_chain(l)?;
            if chain.iter().any(|(k, _)| *k == lab) {
                return None;
            }
            chain.push((lab, body));
            Some(chain)
        }
        _ => None,
    }
}

fn go(t: &Type, prec: u8, out: &mut String) {
    let paren = |out: &mut String, yes: bool, f: &dyn Fn(&mut String)| {
        if yes {
            out.push('(');
        }
        f(out);
        if yes {
            out.push(')');
        }
    };
    match t {
        Type::Omega => out.push('w'),
        Type::Const(n) | Type::Var(n) => out.push_str(n.as_str()),
        Type::Arrow(a, b) => paren(out, prec > ARROW, &|out| {
            go(a, INTER, out);
            out.push_str(" -> ");
            go(b, ARROW, out);
        }),
        Type::Field(..) | Type::Inter(..) => match record_chain(t) {
            Some(chain) if chain.len() == 2 && chain[0].0.as_str() == "fst" && chain[1].0.as_str() == "snd" => {
                paren(out, prec > PROD, &|out| {
                    go(chain[0].1, PROD, out);
                    out.push_str(" * ");
                    go(chain[1].1, ATOM, out);
                })
            }
            Some(chain) => {
                out.push('{');
                for (i, (l, b)) in chain.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(l.as_str());
                    out.push_str(" : ");
                    go(b, ARROW, out);
                }
                out.push('}');
            }
            None => {
                let Type::Inter(l, r) = t else { unreachable!() };
                paren(out, prec > INTER, &|out| {
                    go(l, INTER, out);
                    out.push_str(" & ");
                    go(r, PROD, out);
                })
            }
        },
    }
}
