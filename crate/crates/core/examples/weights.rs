//! Edge signs, matching weights and the segment decomposition for even n.

use matchflip::dyck::segment_to_dyck;
use matchflip::matching::sign;
use matchflip::{flips_in_mode, Matching, Mode};

fn main() {
    let m: Matching = "1-6,2-5,3-4,7-8,9-10,11-12".parse().unwrap();
    let n = m.n();
    println!("M = {m}, weight {}", m.weight().unwrap());
    for e in m.chords() {
        println!("  {e:<6} length {} sign {:+}", m.length(e), sign(n, e).unwrap().value());
    }
    for e in m.visible_edges() {
        let seg = m.segment(e).unwrap();
        let path = segment_to_dyck(&m, e).unwrap();
        println!(
            "segment of {e}: weight {}, hidden part as Dyck path '{path}' with band-weight {}",
            seg.weight().unwrap(),
            path.band_weight()
        );
    }
    // Every centered flip moves the weight by exactly n - 2.
    for f in flips_in_mode(&m, Mode::Centered) {
        let next = matchflip::apply(&m, &f).unwrap();
        println!("{f}: weight {} -> {}", m.weight().unwrap(), next.weight().unwrap());
    }
}
