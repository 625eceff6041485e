//! Closed-form predictions compared with full enumeration.
//!
//!     cargo run --release --example counts -- 10

use matchflip::counting::{component_size_fraction, predicted_extremes};
use matchflip::verify::{verify, VerifyOptions};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let report = verify(n, VerifyOptions::default()).unwrap();
    print!("{}", report.to_table());
    println!("all match: {}", report.all_match());
    println!("{}", serde_json::to_string_pretty(&predicted_extremes(n).unwrap()).unwrap());
    if n.is_multiple_of(2) {
        let (exact, estimate) = component_size_fraction(n).unwrap();
        println!("largest component is at most {exact} of all vertices (about {estimate:.3})");
    }
}
