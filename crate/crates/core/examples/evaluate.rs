//! Parsing, printing and reducing terms.
//!
//! ```text
//! cargo run --example evaluate
//! ```

use recmix::reduce::{normalize, normalize_with, redex_positions, trace, Strategy};
use recmix::syntax::parse_term;

fn main() -> Result<(), recmix::Error> {
    let merged = parse_term("{a = 1, b = 2} ++ {a = 3}")?;
    println!("{merged}  ~>  {}", normalize(&merged, 100).term());

    let src = r"
        # a pair built by let, taken apart again
        let swap = \p. (p.snd, p.fst) in
        let (x, y) = swap (1, 2) in
        x + y + x";
    match parse_term(src) {
        Ok(t) => println!("parsed: {t}"),
        Err(e) => println!("parse error: {e}"),
    }

    let t = parse_term(r"let swap = \p. (p.snd, p.fst) in let (x, y) = swap (1, 2) in x + y")?;
    let (lines, result) = trace(&t, 1000);
    for l in &lines {
        println!("{l}");
    }
    println!("normal form {} after {} steps", result.term(), result.steps());

    // The same term under innermost reduction takes a different route.
    let inner = normalize_with(&t, 1000, Strategy::RightmostInnermost, |_, _| {});
    println!("innermost: {} after {} steps", inner.term(), inner.steps());

    let many = parse_term(r"(\x. x) ((\y. y) 1) + (\z. z) 2")?;
    for r in redex_positions(&many) {
        println!("redex {r}");
    }

    let omega = parse_term(r"(\x. x x) (\x. x x)")?;
    let r = normalize(&omega, 50);
    println!("self-application: normal form reached = {}", r.is_normal_form());
    Ok(())
}
