//! Runs every named demonstration and reports how long each one took.

use std::time::Instant;

use recmix::oop::demo;
use recmix::reduce::DEFAULT_FUEL;

fn main() {
    let mut failures = 0;
    let only: Vec<String> = std::env::args().skip(1).collect();
    for name in demo::names().into_iter().filter(|n| only.is_empty() || only.contains(n)) {
        let start = Instant::now();
        let r = demo::run(&name, DEFAULT_FUEL).expect("listed demo");
        let ms = start.elapsed().as_millis();
        match r {
            Ok(r) => {
                let mark = if r.ok { "ok  " } else { "FAIL" };
                failures += usize::from(!r.ok);
                println!("{mark} {name:<24} {ms:>6} ms  {}", r.output);
            }
            Err(e) => {
                failures += 1;
                println!("ERR  {name:<24} {ms:>6} ms  {e}");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
