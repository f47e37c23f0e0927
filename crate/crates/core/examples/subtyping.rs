//! Deciding subtyping between intersection types with records.

use recmix::types::{normalize_type, parse_type, subtype, type_eq, Decider};

fn main() -> Result<(), recmix::Error> {
    let cases = [
        ("w", "w -> w"),
        ("w", "{a : w}"),
        ("{a : Int} & {a : Unit}", "{a : Int & Unit}"),
        ("(Int -> Unit) & (Int -> Int)", "Int -> Unit & Int"),
        ("{x : Int, y : Int}", "{x : Int}"),
        ("Int -> Int", "w -> Int"),
        ("{set : {get : Int} -> Int * Unit}", "{set : Int -> Int * Unit}"),
    ];
    for (l, r) in cases {
        let (s, t) = (parse_type(l)?, parse_type(r)?);
        println!("{s:<40} <= {t:<30} {}", subtype(&s, &t));
    }

    let t = parse_type("(Int -> {a : Int} & {b : w}) & {c : w -> w}")?;
    println!("normal form of {t}: {}", normalize_type(&t).to_type());
    println!("w = w -> w: {}", type_eq(&parse_type("w")?, &parse_type("w -> w")?));

    // One decider reused across related queries shares its cache.
    let mut dec = Decider::new();
    let chain = ["{get : Int}", "{get : Int, set : Int -> Int}", "{get : Int, set : Int -> Int, new : Int -> w}"];
    let chain: Vec<_> = chain.iter().map(|s| parse_type(s)).collect::<Result<_, _>>()?;
    for w in chain.windows(2) {
        println!("descending step {} <= {}: {}", w[1], w[0], dec.le(&w[1], &w[0]));
    }
    Ok(())
}
