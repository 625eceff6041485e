//! Flips between matchings and the centered predicate.
//!
//! Two edges `e` and `f` of a non-crossing matching span an empty
//! quadrilateral iff no other edge runs from one of the two arcs connecting
//! `e` and `f` to the other. A flip is centered iff the four sides of the
//! quadrilateral have lengths summing to `n - 2`; every other flip has a
//! strictly smaller sum.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dyck::Ranker;
use crate::error::{Error, Result};
use crate::matching::{length_of_span, Chord, Matching};

/// Which flips form edges of the flip graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every flip (the graph `G_n`).
    All,
    /// Centered flips only (the graph `H_n`).
    Centered,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::All => "all",
            Mode::Centered => "centered",
        })
    }
}

/// A flip removes two opposite sides of a quadrilateral and adds the other two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Flip {
    #[serde(rename = "out")]
    pub removed: [Chord; 2],
    #[serde(rename = "in")]
    pub added: [Chord; 2],
    #[serde(skip)]
    pub centered: bool,
}

impl Flip {
    /// The flip that undoes this one.
    pub fn reversed(&self) -> Flip {
        Flip { removed: self.added, added: self.removed, centered: self.centered }
    }
}

impl fmt::Display for Flip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = format!(
            "{},{} -> {},{}{}",
            self.removed[0],
            self.removed[1],
            self.added[0],
            self.added[1],
            if self.centered { "" } else { " (non-centered)" }
        );
        f.pad(&text)
    }
}

/// The quadrilateral spanned by two disjoint, non-interleaved chords.
///
/// Returns the two connecting arcs as open 0-based intervals `(lo, hi)`
/// (the second may wrap around) and the two chords that replace `e` and `f`.
type Pairs = [(usize, usize); 2];

fn quadrilateral(e: (usize, usize), f: (usize, usize)) -> Option<(Pairs, Pairs)> {
    let (e, f) = if e.0 < f.0 { (e, f) } else { (f, e) };
    let ((x1, y1), (x2, y2)) = (e, f);
    if x1 == x2 || x1 == y2 || y1 == x2 || y1 == y2 {
        return None;
    }
    if y1 < x2 {
        // Side by side: x1 < y1 < x2 < y2.
        Some(([(y1, x2), (y2, x1)], [(y1, x2), (x1, y2)]))
    } else if y2 < y1 {
        // Nested: x1 < x2 < y2 < y1.
        Some(([(x1, x2), (y2, y1)], [(x1, x2), (y2, y1)]))
    } else {
        None
    }
}

/// Points strictly inside the open arc from `lo` clockwise to `hi`.
#[inline]
fn arc_points(lo: usize, hi: usize, m: usize) -> impl Iterator<Item = usize> {
    let len = (hi + m - lo - 1) % m;
    (1..=len).map(move |k| (lo + k) % m)
}

#[inline]
fn in_arc(p: usize, lo: usize, hi: usize, m: usize) -> bool {
    let d = (p + m - lo) % m;
    d > 0 && d < (hi + m - lo) % m
}

fn arc_closed(m: &Matching, lo: usize, hi: usize) -> bool {
    let pts = m.points();
    arc_points(lo, hi, pts).all(|p| in_arc(m.partner_idx(p), lo, hi, pts))
}

fn pair_is_flippable(m: &Matching, e: (usize, usize), f: (usize, usize)) -> Option<[(usize, usize); 2]> {
    let (arcs, added) = quadrilateral(e, f)?;
    // Any edge leaving the first arc must land in the second.
    arc_closed(m, arcs[0].0, arcs[0].1).then_some(added)
}

#[inline]
fn centered_sum(n: usize, chords: [(usize, usize); 4]) -> usize {
    chords.iter().map(|&(x, y)| length_of_span(n, x.abs_diff(y))).sum()
}

/// Unordered pairs of edges that span an empty quadrilateral.
pub fn flippable_pairs(m: &Matching) -> Vec<(Chord, Chord)> {
    flips(m).into_iter().map(|f| (f.removed[0], f.removed[1])).collect()
}

/// Every flip available in `m`, ordered by removed chords.
pub fn flips(m: &Matching) -> Vec<Flip> {
    let n = m.n();
    let edges: Vec<(usize, usize)> = m.edge_indices().collect();
    let mut out = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if let Some(added) = pair_is_flippable(m, e, f) {
                let centered = centered_sum(n, [e, f, added[0], added[1]]) == n - 2;
                out.push(Flip {
                    removed: [Chord::from_indices(e.0, e.1), Chord::from_indices(f.0, f.1)],
                    added: [Chord::from_indices(added[0].0, added[0].1), Chord::from_indices(added[1].0, added[1].1)],
                    centered,
                });
            }
        }
    }
    out
}

/// Flips of `m` allowed in the given mode.
pub fn flips_in_mode(m: &Matching, mode: Mode) -> Vec<Flip> {
    let mut all = flips(m);
    if mode == Mode::Centered {
        all.retain(|f| f.centered);
    }
    all
}

/// Whether the quadrilateral on `e` and `f` contains the center.
pub fn is_centered(n: usize, e: Chord, f: Chord) -> Result<bool> {
    e.check(n)?;
    f.check(n)?;
    if e.crosses(&f) || e == f {
        return Err(Error::Interleaved(e, f));
    }
    let (_, added) = quadrilateral(e.indices(), f.indices()).ok_or(Error::Interleaved(e, f))?;
    Ok(centered_sum(n, [e.indices(), f.indices(), added[0], added[1]]) == n.saturating_sub(2))
}

/// Sum of the lengths of the four quadrilateral sides on `e` and `f`.
pub fn quadrilateral_length_sum(n: usize, e: Chord, f: Chord) -> Result<usize> {
    let (_, added) = quadrilateral(e.indices(), f.indices()).ok_or(Error::Interleaved(e, f))?;
    Ok(centered_sum(n, [e.indices(), f.indices(), added[0], added[1]]))
}

/// Describes the flip of `e` and `f` in `m` without applying it.
pub fn flip_of(m: &Matching, e: Chord, f: Chord) -> Result<Flip> {
    for c in [e, f] {
        if !m.contains(c) {
            return Err(Error::NotInMatching(c));
        }
    }
    let added = pair_is_flippable(m, e.indices(), f.indices()).ok_or(Error::NotFlippable(e, f))?;
    let n = m.n();
    let centered = centered_sum(n, [e.indices(), f.indices(), added[0], added[1]]) == n - 2;
    let mut removed = [e, f];
    removed.sort();
    Ok(Flip {
        removed,
        added: [Chord::from_indices(added[0].0, added[0].1), Chord::from_indices(added[1].0, added[1].1)],
        centered,
    })
}

/// Replaces `e` and `f` by the other two sides of their quadrilateral.
pub fn apply_flip(m: &Matching, e: Chord, f: Chord) -> Result<Matching> {
    let flip = flip_of(m, e, f)?;
    Ok(apply_unchecked(m, &flip))
}

/// Applies a flip after checking that its removed chords form a flippable
/// pair and that its added chords are the matching quadrilateral sides.
pub fn apply(m: &Matching, flip: &Flip) -> Result<Matching> {
    let expected = flip_of(m, flip.removed[0], flip.removed[1])?;
    let mut want = expected.added;
    let mut got = flip.added;
    want.sort();
    got.sort();
    if want != got {
        return Err(Error::NotFlippable(flip.removed[0], flip.removed[1]));
    }
    Ok(apply_unchecked(m, &expected))
}

pub(crate) fn apply_unchecked(m: &Matching, flip: &Flip) -> Matching {
    let mut partner = m.partners().to_vec();
    for c in flip.added {
        let (x, y) = c.indices();
        partner[x] = y as u8;
        partner[y] = x as u8;
    }
    Matching::from_partner_unchecked(partner)
}

/// Neighbors of `m` in `G_n` or `H_n`, sorted by rank.
pub fn neighbors(m: &Matching, mode: Mode) -> Vec<Matching> {
    match Ranker::new(m.n()) {
        Ok(ranker) => neighbors_ranked(m, mode, &ranker).into_iter().map(|(_, nb)| nb).collect(),
        Err(_) => {
            let mut out: Vec<Matching> = flips_in_mode(m, mode).iter().map(|f| apply_unchecked(m, f)).collect();
            out.sort_by_key(crate::dyck::to_dyck);
            out
        }
    }
}

/// Neighbors paired with their ranks, sorted by rank.
pub fn neighbors_ranked(m: &Matching, mode: Mode, ranker: &Ranker) -> Vec<(u64, Matching)> {
    let mut out: Vec<(u64, Matching)> = flips_in_mode(m, mode)
        .iter()
        .map(|f| {
            let nb = apply_unchecked(m, f);
            (ranker.rank(&nb), nb)
        })
        .collect();
    out.sort_by_key(|(r, _)| *r);
    out
}
