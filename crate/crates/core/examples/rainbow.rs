//! Searches H_n for r-rainbow cycles.
//!
//!     cargo run --release --example rainbow -- 6 2

use matchflip::rainbow::nonexistence_bound;
use matchflip::{find_rainbow_cycle, verify_rainbow, RainbowOutcome, SearchOptions};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(4);
    let r = args.next().unwrap_or(1);
    if let Ok(bound) = nonexistence_bound(n) {
        println!("no r-rainbow cycle for r > {bound}");
    }
    match find_rainbow_cycle(n, r, SearchOptions::default()).unwrap() {
        RainbowOutcome::Found { cycle, expansions } => {
            println!("found after {expansions} expansions, start {}", cycle.start);
            for f in &cycle.flips {
                println!("  {f}");
            }
            verify_rainbow(&cycle.start, &cycle.flips, r).unwrap();
            println!("verified: {} flips", cycle.len());
        }
        RainbowOutcome::None { certificate } => println!("none: {certificate}"),
        RainbowOutcome::BudgetExhausted { expansions } => println!("gave up after {expansions} expansions"),
    }
}
