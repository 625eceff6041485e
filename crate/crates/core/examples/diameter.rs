//! Diameters of the flip graphs for small n. H_n is disconnected for even n.

use matchflip::graph::bfs_distance;
use matchflip::{build_graph, diameter, Matching, Mode};

fn main() {
    println!("{:>3} {:>8} {:>8} {:>12}", "n", "diam G", "diam H", "M0 to M0'");
    for n in 2..=9 {
        let g = build_graph(n, Mode::All).unwrap();
        let h = build_graph(n, Mode::Centered).unwrap();
        let a = h.vertex_of(&Matching::perimeter(n)).unwrap();
        let b = h.vertex_of(&Matching::perimeter_shifted(n)).unwrap();
        println!("{:>3} {:>8} {:>8} {:>12}", n, diameter(&g), diameter(&h), bfs_distance(&h, a, b));
    }
}
