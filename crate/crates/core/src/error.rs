use thiserror::Error;

use crate::matching::Chord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n must be at least {min}, got {n}")]
    TooSmall { n: usize, min: usize },

    #[error("n = {0} is too large for this operation")]
    TooLarge(usize),

    #[error("operation requires even n, got n = {0}")]
    OddN(usize),

    #[error("operation requires odd n, got n = {0}")]
    EvenN(usize),

    #[error("point {point} is outside 1..={max}")]
    PointOutOfRange { point: usize, max: usize },

    #[error("chord endpoints must differ, got {0}-{0}")]
    DegenerateChord(usize),

    #[error("chord {0} has an even span and cannot belong to a perfect non-crossing matching")]
    EvenSpan(Chord),

    #[error("point {0} is covered more than once")]
    DoublyCovered(usize),

    #[error("point {0} is not covered")]
    Uncovered(usize),

    #[error("chords {0} and {1} cross")]
    Crossing(Chord, Chord),

    #[error("chord {0} is not an edge of the matching")]
    NotInMatching(Chord),

    #[error("chord {0} is not visible from the center")]
    NotVisible(Chord),

    #[error("chords {0} and {1} do not span an empty quadrilateral")]
    NotFlippable(Chord, Chord),

    #[error("chords {0} and {1} interleave")]
    Interleaved(Chord, Chord),

    #[error("point {0} must be odd")]
    EvenPoint(usize),

    #[error("not a Dyck word: {0}")]
    NotDyck(String),

    #[error("bit string must have equally many 0s and 1s: {0}")]
    Unbalanced(String),

    #[error("matching is not centrally symmetric")]
    NotSymmetric,

    #[error("rank {rank} is out of range for n = {n}")]
    RankOutOfRange { n: usize, rank: u64 },

    #[error("narayana({r}, {n}, {k}) is undefined: need 1 <= k <= n - r")]
    NarayanaRange { r: usize, n: usize, k: usize },

    #[error("weight class {c} out of range for n = {n}")]
    WeightRange { n: usize, c: i64 },

    #[error("perimeter count {k} out of range 2..={n}")]
    PerimeterRange { n: usize, k: usize },

    #[error("estimated {needed} bytes exceeds the memory budget of {budget} bytes")]
    Budget { needed: u64, budget: u64 },

    #[error("flip construction failed: {0}")]
    Construction(String),

    #[error("parse error: {0}")]
    Parse(String),
}
