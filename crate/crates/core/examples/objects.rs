//! Classes as functions of their state and of `self`; objects as fixed
//! points.

use recmix::oop::{new_object, stdlib, ClassDef};
use recmix::reduce::{normalize, whnf_record, DEFAULT_FUEL};
use recmix::syntax::{Name, Term};

fn main() -> Result<(), recmix::Error> {
    let point = stdlib::point3();
    println!("Point = {point}");
    let obj = new_object(&point, &[Term::Int(3)], false, DEFAULT_FUEL)?;
    let get = obj.get(&Name::new("get")).expect("get member");
    println!("(Y (Point 3)).get = {}", normalize(get, DEFAULT_FUEL).term());

    let moved = whnf_record(&stdlib::movable_move(&stdlib::movable3(), 4), DEFAULT_FUEL)?;
    let x = moved.get(&Name::new("X")).expect("X member");
    println!("moving a point at 3 by 4 gives X = {}", normalize(x, DEFAULT_FUEL).term());

    let twice = whnf_record(&stdlib::movable_move(&stdlib::movable3_double_fixpoint(), 4), DEFAULT_FUEL);
    println!(
        "with a second fixed point in move: {}",
        match twice {
            Ok(r) => format!("a record with labels {:?}", r.labels()),
            Err(e) => e.to_string().chars().take(60).collect::<String>() + "...",
        }
    );

    let counter = ClassDef::new("Counter", &["n"], &[("value", "n"), ("next", "self.value + 1")])?;
    let c = new_object(&recmix::oop::elaborate_class(&counter)?, &[Term::Int(41)], false, DEFAULT_FUEL)?;
    let next = c.get(&Name::new("next")).expect("next member");
    println!("Counter 41 next = {}", normalize(next, DEFAULT_FUEL).term());
    Ok(())
}
