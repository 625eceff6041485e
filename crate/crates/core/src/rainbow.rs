//! Search for r-rainbow cycles.
//!
//! An r-rainbow cycle is a cycle in the flip graph along which each of the
//! `n^2` chords with odd span appears exactly `r` times (and disappears
//! exactly `r` times). Only centered flips can occur on such a cycle, so the
//! search runs on `H_n` one component at a time.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::counting::narayana;
use crate::error::{Error, Result};
use crate::flip::{apply, Flip, Mode};
use crate::graph::{build_graph_with_budget, connected_components, DEFAULT_MEM_BUDGET};
use crate::matching::{length_of_span, Chord, Matching};

/// Default search budget in DFS node expansions.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    /// Skip the closed-form certificates and search the graph anyway.
    pub exhaustive: bool,
    pub mem_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_SEARCH_BUDGET, exhaustive: false, mem_budget: DEFAULT_MEM_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RainbowCycle {
    pub n: usize,
    pub r: usize,
    #[serde(serialize_with = "pairs")]
    pub start: Matching,
    pub flips: Vec<Flip>,
}

fn pairs<S: Serializer>(m: &Matching, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_pairs_string())
}

fn ratio<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl RainbowCycle {
    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Why no r-rainbow cycle exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Every flip adds two chords, so `2 * length = r * n^2` must be even.
    OddLength { n: usize, r: usize },
    /// On a rainbow cycle the appearing chords have the average length of
    /// all `n^2` chords, while centered flips force an average of `(n-2)/4`.
    AverageLength {
        #[serde(serialize_with = "ratio")]
        chord_average: BigRational,
        #[serde(serialize_with = "ratio")]
        centered_average: BigRational,
    },
    /// `r` exceeds `2 N_1(n, n/2) / n^2`, so the cycle is longer than any
    /// component of `H_n` can be.
    ComponentBound {
        cycle_length: u64,
        #[serde(serialize_with = "ratio")]
        threshold: BigRational,
    },
    /// The graph was built and every component is smaller than the cycle.
    NoLargeComponent { cycle_length: u64, largest_component: usize },
    /// The search space was explored completely.
    Exhaustive { expansions: u64 },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::OddLength { n, r } => {
                write!(f, "r*n^2 = {} is odd, so no cycle has length r*n^2/2", r * n * n)
            }
            Certificate::AverageLength { chord_average, centered_average } => write!(
                f,
                "average chord length {chord_average} differs from the centered-flip average {centered_average}"
            ),
            Certificate::ComponentBound { cycle_length, threshold } => {
                write!(f, "r exceeds {threshold}, so a cycle of length {cycle_length} is longer than any component")
            }
            Certificate::NoLargeComponent { cycle_length, largest_component } => write!(
                f,
                "largest component has {largest_component} vertices, fewer than the cycle length {cycle_length}"
            ),
            Certificate::Exhaustive { expansions } => write!(f, "exhaustive search, {expansions} node expansions"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum RainbowOutcome {
    Found { cycle: RainbowCycle, expansions: u64 },
    None { certificate: Certificate },
    BudgetExhausted { expansions: u64 },
}

/// Dense index over the `n^2` chords with odd span.
#[derive(Clone, Debug)]
pub struct ChordIndex {
    points: usize,
    index: Vec<u16>,
    chords: Vec<Chord>,
}

impl ChordIndex {
    pub fn new(n: usize) -> Self {
        let points = 2 * n;
        let mut index = vec![u16::MAX; points * points];
        let mut chords = Vec::with_capacity(n * n);
        for i in 0..points {
            for j in (i + 1..points).step_by(2) {
                index[i * points + j] = chords.len() as u16;
                index[j * points + i] = chords.len() as u16;
                chords.push(Chord::from_indices(i, j));
            }
        }
        ChordIndex { points, index, chords }
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn index_of(&self, c: Chord) -> usize {
        let (i, j) = c.indices();
        self.index[i * self.points + j] as usize
    }

    pub fn chord(&self, i: usize) -> Chord {
        self.chords[i]
    }
}

/// `2 N_1(n, n/2) / n^2`; no r-rainbow cycle exists for larger `r`.
pub fn nonexistence_bound(n: usize) -> Result<BigRational> {
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let top = narayana(1, n as u64, (n / 2) as u64)?;
    Ok(BigRational::new(BigInt::from(2u32) * BigInt::from(top), BigInt::from(n * n)))
}

/// The average length of all `n^2` chords and the average forced by
/// centered flips; they differ exactly when no rainbow cycle can exist.
pub fn average_lengths(n: usize) -> (BigRational, BigRational) {
    let points = 2 * n;
    let mut total = 0usize;
    for i in 0..points {
        for j in (i + 1..points).step_by(2) {
            total += length_of_span(n, j - i);
        }
    }
    let chord_average = BigRational::new(BigInt::from(total), BigInt::from(n * n));
    let centered_average = BigRational::new(BigInt::from(n as i64 - 2), BigInt::from(4));
    (chord_average, centered_average)
}

/// Closed-form reasons for nonexistence that need no search.
pub fn certificate(n: usize, r: usize) -> Option<Certificate> {
    if (r * n * n) % 2 == 1 {
        return Some(Certificate::OddLength { n, r });
    }
    let (chord_average, centered_average) = average_lengths(n);
    if chord_average != centered_average {
        return Some(Certificate::AverageLength { chord_average, centered_average });
    }
    if let Ok(threshold) = nonexistence_bound(n) {
        if BigRational::from_integer(BigInt::from(r)) > threshold {
            return Some(Certificate::ComponentBound { cycle_length: (r * n * n / 2) as u64, threshold });
        }
    }
    None
}

/// Why a flip sequence is not an r-rainbow cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RainbowViolation {
    WrongLength { expected: usize, actual: usize },
    InvalidFlip { index: usize, reason: String },
    NotCentered { index: usize },
    NotClosed,
    RepeatedVertex { index: usize },
    Count { chord: Chord, appeared: usize, disappeared: usize },
}

impl fmt::Display for RainbowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RainbowViolation::WrongLength { expected, actual } => {
                write!(f, "cycle has {actual} flips, expected {expected}")
            }
            RainbowViolation::InvalidFlip { index, reason } => write!(f, "flip {index} cannot be applied: {reason}"),
            RainbowViolation::NotCentered { index } => write!(f, "flip {index} is not centered"),
            RainbowViolation::NotClosed => f.write_str("the flips do not return to the start matching"),
            RainbowViolation::RepeatedVertex { index } => {
                write!(f, "the matching after flip {index} was already visited")
            }
            RainbowViolation::Count { chord, appeared, disappeared } => {
                write!(f, "chord {chord} appears {appeared} and disappears {disappeared} times")
            }
        }
    }
}

/// Replays `flips` from `start` and checks every rainbow condition, reporting
/// the first one violated.
pub fn verify_rainbow(start: &Matching, flips: &[Flip], r: usize) -> std::result::Result<(), RainbowViolation> {
    let n = start.n();
    let expected = r * n * n / 2;
    if (r * n * n) % 2 == 1 || flips.len() != expected {
        return Err(RainbowViolation::WrongLength { expected, actual: flips.len() });
    }
    let index = ChordIndex::new(n);
    let mut appeared = vec![0usize; index.len()];
    let mut disappeared = vec![0usize; index.len()];
    let mut seen = std::collections::HashSet::new();
    seen.insert(start.clone());
    let mut current = start.clone();
    for (i, flip) in flips.iter().enumerate() {
        let next =
            apply(&current, flip).map_err(|e| RainbowViolation::InvalidFlip { index: i, reason: e.to_string() })?;
        let applied = crate::flip::flip_of(&current, flip.removed[0], flip.removed[1]).expect("applied above");
        if !applied.centered {
            return Err(RainbowViolation::NotCentered { index: i });
        }
        for c in flip.added {
            appeared[index.index_of(c)] += 1;
        }
        for c in flip.removed {
            disappeared[index.index_of(c)] += 1;
        }
        current = next;
        if i + 1 < flips.len() && !seen.insert(current.clone()) {
            return Err(RainbowViolation::RepeatedVertex { index: i });
        }
    }
    if current != *start {
        return Err(RainbowViolation::NotClosed);
    }
    for k in 0..index.len() {
        if appeared[k] != r || disappeared[k] != r {
            return Err(RainbowViolation::Count {
                chord: index.chord(k),
                appeared: appeared[k],
                disappeared: disappeared[k],
            });
        }
    }
    Ok(())
}

/// Searches `H_n` for an r-rainbow cycle.
///
/// Unless `opts.exhaustive` is set, closed-form certificates are tried first.
/// With `exhaustive`, even an odd `r * n^2` is settled by searching all
/// simple cycles up to length `r * n^2 / 2`.
pub fn find_rainbow_cycle(n: usize, r: usize, opts: SearchOptions) -> Result<RainbowOutcome> {
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    if r < 1 {
        return Err(Error::Parse("r must be at least 1".into()));
    }
    if !opts.exhaustive {
        if let Some(certificate) = certificate(n, r) {
            return Ok(RainbowOutcome::None { certificate });
        }
    }
    let cycle_length = r * n * n / 2;
    let exact = (r * n * n).is_multiple_of(2);
    let g = build_graph_with_budget(n, Mode::Centered, opts.mem_budget)?;
    let comps = connected_components(&g);
    let largest = comps.sizes.iter().copied().max().unwrap_or(0);
    if exact && largest < cycle_length && !opts.exhaustive {
        return Ok(RainbowOutcome::None {
            certificate: Certificate::NoLargeComponent {
                cycle_length: cycle_length as u64,
                largest_component: largest,
            },
        });
    }

    let index = ChordIndex::new(n);
    let v_count = g.vertex_count();
    // Rotation orbits: a cycle through a vertex can be rotated through the
    // orbit's smallest rank, so only orbit minima serve as starts.
    let orbit_min: Vec<u32> = (0..v_count as u32)
        .map(|v| {
            let m = g.matching(v);
            (1..2 * n as i64).map(|s| g.vertex_of(&m.rotate(s)).expect("rotation stays in M_n")).fold(v, u32::min)
        })
        .collect();

    // Per-arc removed and added chord indices.
    let mut arcs: Vec<Vec<Arc>> = Vec::with_capacity(v_count);
    for u in 0..v_count as u32 {
        let mu = g.matching(u);
        let mut out: Vec<Arc> = g
            .neighbors(u)
            .iter()
            .map(|&v| {
                let mv = g.matching(v);
                let removed: Vec<usize> =
                    mu.chord_iter().filter(|c| !mv.contains(*c)).map(|c| index.index_of(c)).collect();
                let added: Vec<usize> =
                    mv.chord_iter().filter(|c| !mu.contains(*c)).map(|c| index.index_of(c)).collect();
                let mut added = [added[0] as u16, added[1] as u16];
                added.sort_unstable();
                Arc { to: v, removed: [removed[0] as u16, removed[1] as u16], added }
            })
            .collect();
        out.sort_by_key(|a| (a.added, a.to));
        arcs.push(out);
    }

    let mut search = Search {
        arcs: &arcs,
        r: r as u8,
        target: cycle_length,
        exact,
        appeared: vec![0; index.len()],
        disappeared: vec![0; index.len()],
        on_path: vec![false; v_count],
        banned: vec![false; v_count],
        dist: vec![u32::MAX; v_count],
        path: Vec::with_capacity(cycle_length + 1),
        found: None,
        expansions: 0,
        budget: opts.budget,
    };

    // Starts run in rank order; once a start is exhausted its whole orbit is banned.
    let starts: Vec<u32> = (0..v_count as u32).filter(|&v| orbit_min[v as usize] == v).collect();
    for &s in &starts {
        let c = comps.label[s as usize] as usize;
        if comps.is_tree(c) || (exact && comps.sizes[c] < cycle_length) {
            continue;
        }
        for (banned, &min) in search.banned.iter_mut().zip(&orbit_min) {
            *banned = min < s;
        }
        search.distances_from(s);
        search.path.clear();
        search.path.push(s);
        search.on_path[s as usize] = true;
        let status = search.dfs(s, s);
        search.on_path[s as usize] = false;
        match status {
            Status::Found => {
                let path = search.found.take().expect("found path");
                let start = g.matching(s);
                let mut flips = Vec::with_capacity(path.len() - 1);
                let mut current = start.clone();
                for w in path.windows(2) {
                    let next = g.matching(w[1]);
                    let flip = flip_between(&current, &next);
                    flips.push(flip);
                    current = next;
                }
                let cycle = RainbowCycle { n, r, start, flips };
                debug_assert!(verify_rainbow(&cycle.start, &cycle.flips, r).is_ok());
                return Ok(RainbowOutcome::Found { cycle, expansions: search.expansions });
            }
            Status::Exhausted => return Ok(RainbowOutcome::BudgetExhausted { expansions: search.expansions }),
            Status::NotFound => {}
        }
    }
    Ok(RainbowOutcome::None { certificate: Certificate::Exhaustive { expansions: search.expansions } })
}

fn flip_between(a: &Matching, b: &Matching) -> Flip {
    let removed: Vec<Chord> = a.chord_iter().filter(|c| !b.contains(*c)).collect();
    crate::flip::flip_of(a, removed[0], removed[1]).expect("adjacent matchings")
}

#[derive(Clone, Copy, Debug)]
struct Arc {
    to: u32,
    removed: [u16; 2],
    added: [u16; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Found,
    NotFound,
    Exhausted,
}

struct Search<'a> {
    arcs: &'a [Vec<Arc>],
    r: u8,
    target: usize,
    /// Whether `target` is the exact rainbow length (false when `r n^2` is odd).
    exact: bool,
    appeared: Vec<u8>,
    disappeared: Vec<u8>,
    on_path: Vec<bool>,
    banned: Vec<bool>,
    dist: Vec<u32>,
    path: Vec<u32>,
    found: Option<Vec<u32>>,
    expansions: u64,
    budget: u64,
}

impl Search<'_> {
    fn distances_from(&mut self, s: u32) {
        self.dist.fill(u32::MAX);
        self.dist[s as usize] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for a in &self.arcs[u as usize] {
                let v = a.to as usize;
                if !self.banned[v] && self.dist[v] == u32::MAX {
                    self.dist[v] = self.dist[u as usize] + 1;
                    queue.push_back(a.to);
                }
            }
        }
    }

    fn complete(&self) -> bool {
        self.exact && self.appeared.iter().all(|&c| c == self.r)
    }

    fn dfs(&mut self, s: u32, u: u32) -> Status {
        self.expansions += 1;
        if self.expansions > self.budget {
            return Status::Exhausted;
        }
        let depth = self.path.len() - 1;
        let arcs = self.arcs;
        for a in &arcs[u as usize] {
            let v = a.to;
            let [x1, x2] = a.removed.map(usize::from);
            let [y1, y2] = a.added.map(usize::from);
            if self.appeared[y1] >= self.r
                || self.appeared[y2] >= self.r
                || self.disappeared[x1] >= self.r
                || self.disappeared[x2] >= self.r
            {
                continue;
            }
            let steps = depth + 1;
            if v == s {
                // Each cycle is found in both directions; keep one.
                if steps >= 3 && self.path[1] < u {
                    self.bump(a, 1);
                    let done = steps == self.target && self.complete();
                    self.bump(a, -1);
                    if done {
                        let mut p = self.path.clone();
                        p.push(s);
                        self.found = Some(p);
                        return Status::Found;
                    }
                }
                continue;
            }
            if self.on_path[v as usize] || self.banned[v as usize] {
                continue;
            }
            let remaining = self.dist[v as usize] as usize;
            if remaining == u32::MAX as usize || steps + remaining > self.target {
                continue;
            }
            self.bump(a, 1);
            self.on_path[v as usize] = true;
            self.path.push(v);
            let status = self.dfs(s, v);
            self.path.pop();
            self.on_path[v as usize] = false;
            self.bump(a, -1);
            if status != Status::NotFound {
                return status;
            }
        }
        Status::NotFound
    }

    #[inline]
    fn bump(&mut self, a: &Arc, delta: i8) {
        for y in a.added {
            self.appeared[y as usize] = self.appeared[y as usize].wrapping_add_signed(delta);
        }
        for x in a.removed {
            self.disappeared[x as usize] = self.disappeared[x as usize].wrapping_add_signed(delta);
        }
    }
}
