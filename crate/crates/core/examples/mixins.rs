//! Mixins with get/set state, their recursive class types, and a typed
//! composition.

use std::time::Instant;

use recmix::assign::{check_with, verify, Hints};
use recmix::oop::{compose_typing, stdlib};
use recmix::reduce::DEFAULT_FUEL;
use recmix::types::subtype;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (p, m, s) = (stdlib::point4_family(), stdlib::movable4_family(), stdlib::set_adapter4_family());
    println!("Point      = {}", stdlib::point4());
    println!("Movable    = {}", stdlib::movable4());
    println!("SetAdapter = {}", stdlib::set_adapter4());

    let r = stdlib::run_usage_pipeline(DEFAULT_FUEL);
    println!("usage with SetAdapter . Movable: {} ({} steps)", r.term(), r.steps());
    let r = stdlib::run_usage_pipeline_swapped(DEFAULT_FUEL);
    println!("usage with Movable . SetAdapter: {} ({} steps)", r.term(), r.steps());

    let delta = m.sigma_delta.as_ref().expect("added members");
    println!("Movable instances below their added members: {}", subtype(&m.sigma[1], delta));
    println!("SetAdapter instances below Movable's: {}", subtype(&s.sigma[2], &m.sigma[1]));

    let start = Instant::now();
    let hints = Hints::new();
    let dm = check_with(
        &Default::default(),
        &stdlib::movable4(),
        &recmix::types::Type::arrow(p.kappa_prime.clone(), m.kappa_prime.clone()),
        &hints,
    )
    .ok_or("Movable does not check")?;
    let ds = check_with(
        &Default::default(),
        &stdlib::set_adapter4(),
        &recmix::types::Type::arrow(m.kappa_prime.clone(), s.kappa_prime.clone()),
        &hints,
    )
    .ok_or("SetAdapter does not check")?;
    let composed = compose_typing(&dm, &ds)?;
    let j = verify(&composed)?;
    println!(
        "SetAdapter . Movable : {} -> ... ({} nodes, {:?})",
        p.kappa_prime.to_string().chars().take(40).collect::<String>(),
        composed.size(),
        start.elapsed()
    );
    println!("verified: {}", j.ty == composed.ty);

    let whole = stdlib::entry("composition").expect("library entry");
    let d = check_with(&whole.ctx, &whole.term, &whole.goal, &whole.hints).ok_or("composition does not check")?;
    verify(&d)?;
    println!("(SetAdapter . Movable)(Point) checked and verified, {} nodes", d.size());
    Ok(())
}
