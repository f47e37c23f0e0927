//! Checking terms against intersection types, verifying the derivations
//! and moving them through JSON.

use recmix::assign::{check, derivation_from_json, derivation_to_json, verify, Context};
use recmix::syntax::parse_term;
use recmix::types::parse_type;

fn main() -> Result<(), recmix::Error> {
    let ctx = Context::from_pairs([("n1", parse_type("S1")?), ("n2", parse_type("S2")?)]);
    let mixin = parse_term(r"\x. x ++ {a = n1}")?;
    let goal = parse_type("{b : S2} -> {a : S1, b : S2}")?;
    let d = check(&ctx, &mixin, &goal).expect("the record mixin keeps b and adds a");
    print!("{}", d.render());

    let json = derivation_to_json(&d);
    let back = derivation_from_json(&json)?;
    println!("verified after a JSON round trip: {}", verify(&back)?);

    // Self-application has a type once the variable is used at two types.
    let t = parse_term(r"\x. x x")?;
    let goal = parse_type("(Int -> Int) & Int -> Int")?;
    match check(&Context::new(), &t, &goal) {
        Some(d) => println!("{} ({} nodes, height {})", d.judgment(), d.size(), d.height()),
        None => println!("no derivation for {t} : {goal}"),
    }

    // A broken derivation is rejected with the offending node.
    let mut bad = back;
    bad.ty = parse_type("{b : S2} -> {a : S2}")?;
    if let Err(e) = verify(&bad) {
        println!("rejected: {e}");
    }
    Ok(())
}
