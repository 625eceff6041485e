//! Centrally symmetric matchings and their balanced bit-string codes.

use matchflip::dyck::{bits_to_symmetric, symmetric_to_bits};
use matchflip::enumerate_matchings;

fn main() {
    let n = 6;
    for m in enumerate_matchings(n).filter(|m| m.is_centrally_symmetric()) {
        let bits = symmetric_to_bits(&m).unwrap();
        assert_eq!(bits_to_symmetric(&bits).unwrap(), m);
        println!("{bits}  {m}");
    }
}
