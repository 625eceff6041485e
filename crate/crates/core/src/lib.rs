//! Flip graphs of non-crossing perfect matchings.
//!
//! Place `2n` points on a circle, labeled `1..=2n` clockwise. A non-crossing
//! perfect matching joins them in pairs by `n` pairwise disjoint chords. A
//! flip swaps two chords bounding an empty quadrilateral for its other two
//! sides; it is centered when the quadrilateral contains the circle's center.
//! `G_n` is the graph of all flips and `H_n` its subgraph of centered flips.
//!
//! ```
//! use matchflip::{build_graph, diameter, Distance, Mode};
//!
//! let h5 = build_graph(5, Mode::Centered).unwrap();
//! assert_eq!(h5.vertex_count(), 42);
//! assert_eq!(diameter(&h5), Distance::Finite(8));
//! ```
//!
//! Modules, roughly bottom up:
//!
//! * [`matching`]: chords, lengths, visibility, signs and weights.
//! * [`dyck`]: Dyck-word encoding, ranking, enumeration and bijections.
//! * [`flip`]: flips and the centered predicate.
//! * [`graph`]: materialized flip graphs, components, BFS and diameters.
//! * [`paths`]: explicit centered flip sequences for odd `n`.
//! * [`counting`]: closed-form counts and their comparison with enumeration.
//! * [`verify`]: graph-level structural checks.
//! * [`rainbow`]: the r-rainbow cycle search.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod counting;
pub mod dyck;
pub mod error;
pub mod flip;
pub mod graph;
pub mod matching;
pub mod paths;
pub mod rainbow;
pub mod verify;

pub use counting::{catalan, count_report, narayana, predicted_extremes, CountReport};
pub use dyck::{enumerate_matchings, from_dyck, rank, to_dyck, unrank, DyckPath, Ranker, Step};
pub use error::{Error, Result};
pub use flip::{apply, apply_flip, flips, flips_in_mode, is_centered, neighbors, Flip, Mode};
pub use graph::{build_graph, components, connected_components, diameter, Distance, FlipGraph};
pub use matching::{Chord, Matching, Sign};
pub use paths::{canonical_flip_sequence, perimeter_swap_path, replay, FlipSequence};
pub use rainbow::{find_rainbow_cycle, verify_rainbow, RainbowOutcome, SearchOptions};
