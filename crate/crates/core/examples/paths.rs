//! Explicit centered flip sequences for odd n: from any matching to an
//! all-perimeter one, and between the two all-perimeter matchings.

use matchflip::{canonical_flip_sequence, perimeter_swap_path, replay, Matching};

fn main() {
    let m: Matching = "1-10,2-9,3-8,4-7,5-6".parse().unwrap();
    let seq = canonical_flip_sequence(&m).unwrap();
    println!("from {m}: {} flips in {} rounds", seq.len(), seq.rounds.len());
    let states = replay(&m, &seq.flips).unwrap();
    for (f, s) in seq.flips.iter().zip(&states[1..]) {
        println!("  {f:<24} {s}");
    }

    for n in [5, 7, 9, 11] {
        let path = perimeter_swap_path(n).unwrap();
        let end = replay(&Matching::perimeter(n), &path).unwrap().pop().unwrap();
        println!("n = {n}: swap path of {} flips ends at {end}", path.len());
    }
}
