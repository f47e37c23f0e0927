//! Writes a checked derivation for the library entries to `corpus/`, one
//! JSON file per entry. Pass a directory to write elsewhere.
//!
//! The get/set mixins and their composition are left out: their derivations
//! repeat the large recursive class types at every node and run to tens of
//! megabytes. `cargo run --example mixins` checks them in memory.

use std::path::PathBuf;

use recmix::assign::{check_with, derivation_to_json, verify};
use recmix::oop::stdlib;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus"));
    std::fs::create_dir_all(&dir)?;
    const TOO_LARGE: [&str; 3] = ["movable-rec", "setadapter-rec", "composition"];
    for e in stdlib::entries().into_iter().filter(|e| !TOO_LARGE.contains(&e.name)) {
        let d =
            check_with(&e.ctx, &e.term, &e.goal, &e.hints).ok_or_else(|| format!("no derivation for {}", e.name))?;
        verify(&d)?;
        let path = dir.join(format!("{}_typing.json", e.name.replace('-', "_")));
        let text = serde_json::to_string_pretty(&derivation_to_json(&d))?;
        std::fs::write(&path, text + "\n")?;
        println!("{:<40} {:>6} nodes", path.display(), d.size());
    }
    Ok(())
}
