//! Builds G_n and H_n, prints degree and component statistics and writes a
//! Graphviz file for H_n.
//!
//!     cargo run --example flip_graph -- 6 > h6.dot

use matchflip::graph::{components, degrees, to_dot};
use matchflip::{build_graph, Mode};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    for mode in [Mode::All, Mode::Centered] {
        let g = build_graph(n, mode).unwrap();
        let report = components(&g);
        eprintln!(
            "{mode:>8}: {} vertices, {} edges, {} components ({} trees, largest {})",
            g.vertex_count(),
            g.edge_count(),
            report.component_count,
            report.tree_count,
            report.max_component_size
        );
        for (d, count) in degrees(&g) {
            eprintln!("          degree {d}: {count}");
        }
    }
    print!("{}", to_dot(&build_graph(n, Mode::Centered).unwrap()));
}
