//! Flips available in one matching, and which of them are centered.

use matchflip::flip::{apply, quadrilateral_length_sum};
use matchflip::{flips, Matching};

fn main() {
    let m: Matching = "1-2,3-8,4-5,6-7,9-12,10-11".parse().unwrap();
    let n = m.n();
    println!("M = {m}  (n = {n})");
    println!("visible edges: {:?}", m.visible_edges().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    for f in flips(&m) {
        let sum = quadrilateral_length_sum(n, f.removed[0], f.removed[1]).unwrap();
        let next = apply(&m, &f).unwrap();
        println!("{f:<38} side lengths sum to {sum} (centered needs {})  ->  {next}", n - 2);
    }
}
