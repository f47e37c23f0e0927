//! Enumerating every type of a term inside a finite universe, and watching
//! the set stay put across a reduction.

use recmix::assign::{Context, Universe, UniverseConfig};
use recmix::reduce::step;
use recmix::syntax::parse_term;

fn main() -> Result<(), recmix::Error> {
    let mut u = Universe::build(&UniverseConfig::new(&["Int"], &["a", "b"], 2))?;
    println!("universe of {} types", u.len());

    let mut t = parse_term(r"(\x. {a = x, b = (\y. y) x}) 1")?;
    let ctx = Context::new();
    loop {
        let types = u.typeset(&ctx, &t);
        println!("{t}: {} types", types.len());
        match step(&t) {
            Some(s) => t = s.term,
            None => break,
        }
    }
    let id = parse_term(r"\x. x")?;
    let mut ts: Vec<String> = u.typeset(&ctx, &id).types().map(|t| t.to_string()).collect();
    ts.truncate(8);
    println!("some types of {id}: {}", ts.join(", "));
    Ok(())
}
