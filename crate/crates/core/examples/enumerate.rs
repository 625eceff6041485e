//! Lists every non-crossing matching on 2n points with its rank and Dyck word.
//!
//!     cargo run --example enumerate -- 4

use matchflip::{enumerate_matchings, to_dyck, Ranker};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let ranker = Ranker::new(n).expect("n too large to rank");
    println!("{} matchings on {} points", ranker.count(), 2 * n);
    for m in enumerate_matchings(n) {
        let word = to_dyck(&m);
        println!("{:>4}  {}  {}", ranker.rank(&m), word, m);
    }

    // Ranks address matchings directly, without enumeration.
    let big = Ranker::new(30).unwrap();
    let middle = big.count() / 2;
    let m = big.unrank(middle).unwrap();
    println!("\nmatching {middle} of {} for n = 30:\n{m}", big.count());
    assert_eq!(big.rank(&m), middle);
}
