//! Explicit centered-flip paths for odd `n`.
//!
//! [`canonical_flip_sequence`] walks any matching to one of the two
//! all-perimeter matchings. Each round takes a longest edge `a` and the
//! visible edge `a'` facing its hidden points from across the center, and
//! trades `a` for shorter visible edges using three or four centered flips.
//! Every round raises the number of visible edges, so at most `4n - 11`
//! flips are used.
//!
//! [`perimeter_swap_path`] joins the two all-perimeter matchings with exactly
//! `3n - 7` centered flips by peeling off an antipodal pair of edges and
//! recursing on the remaining `n - 2` edges.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flip::{apply, apply_unchecked, flip_of, flips, Flip};
use crate::matching::{length_of_span, orient, Chord, Matching};

/// A flip sequence split into the rounds that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipSequence {
    pub start: String,
    pub flips: Vec<Flip>,
    /// Exclusive end index into `flips` of each round.
    pub rounds: Vec<usize>,
}

impl FlipSequence {
    pub fn len(&self) -> usize {
        self.flips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }

    /// Flips grouped by round.
    pub fn round_slices(&self) -> Vec<&[Flip]> {
        let mut start = 0;
        self.rounds
            .iter()
            .map(|&end| {
                let s = &self.flips[start..end];
                start = end;
                s
            })
            .collect()
    }
}

/// Applies `flips` in order, checking each one.
pub fn replay(start: &Matching, flips: &[Flip]) -> Result<Vec<Matching>> {
    let mut out = Vec::with_capacity(flips.len() + 1);
    out.push(start.clone());
    for f in flips {
        let next = apply(out.last().expect("non-empty"), f)?;
        out.push(next);
    }
    Ok(out)
}

fn centered_step(m: &Matching, e: Chord, f: Chord) -> Result<(Flip, Matching)> {
    let flip = flip_of(m, e, f).map_err(|err| Error::Construction(format!("{e} and {f} in {m}: {err}")))?;
    if !flip.centered {
        return Err(Error::Construction(format!("flip of {e} and {f} in {m} is not centered")));
    }
    let next = apply_unchecked(m, &flip);
    Ok((flip, next))
}

fn edge_at(m: &Matching, p: usize) -> Chord {
    Chord::new(p, m.partner(p).expect("point in range")).expect("matching edge")
}

/// Label arithmetic on the circle `1..=2n`.
#[derive(Clone, Copy)]
struct Circle {
    n: usize,
}

impl Circle {
    fn add(&self, p: usize, k: usize) -> usize {
        (p - 1 + k) % (2 * self.n) + 1
    }

    fn antipode(&self, p: usize) -> usize {
        self.add(p, self.n)
    }

    /// Whether `x` lies strictly inside the clockwise arc from `lo` to `hi`.
    fn strictly_between(&self, lo: usize, x: usize, hi: usize) -> bool {
        let m = 2 * self.n;
        let d = (x + m - lo) % m;
        d > 0 && d < (hi + m - lo) % m
    }

    /// Points strictly inside the clockwise arc from `lo` to `hi`.
    fn arc(&self, lo: usize, hi: usize) -> Vec<usize> {
        let m = 2 * self.n;
        let len = (hi + m - lo - 1) % m;
        (1..=len).map(|k| self.add(lo, k)).collect()
    }

    fn mirror(&self, p: usize) -> usize {
        2 * self.n + 1 - p
    }

    fn mirror_chord(&self, c: Chord) -> Chord {
        Chord::new(self.mirror(c.a()), self.mirror(c.b())).expect("mirror keeps span parity")
    }

    fn mirror_flip(&self, f: &Flip) -> Flip {
        Flip {
            removed: f.removed.map(|c| self.mirror_chord(c)),
            added: f.added.map(|c| self.mirror_chord(c)),
            centered: f.centered,
        }
    }
}

/// A longest edge, ties broken by smallest first endpoint.
fn longest_edge(m: &Matching) -> Chord {
    let n = m.n();
    let mut best: Option<(usize, Chord)> = None;
    for c in m.chord_iter() {
        let len = length_of_span(n, c.span());
        if best.is_none_or(|(l, _)| len > l) {
            best = Some((len, c));
        }
    }
    best.expect("non-empty matching").1
}

/// One round: a sequence of 3 or 4 centered flips that removes the longest
/// edge and strictly increases the number of visible edges.
fn improve_round(m: &Matching) -> Result<Vec<Flip>> {
    let n = m.n();
    let circle = Circle { n };
    let a = longest_edge(m);
    let (p, q) = orient(n, a).ok_or_else(|| Error::Construction("longest edge is a diameter".into()))?;
    let p_star = circle.antipode(p);
    let q_star = circle.antipode(q);
    // First point of X* clockwise from p* whose edge is visible.
    let r =
        circle.arc(p_star, q_star).into_iter().find(|&x| m.is_visible(edge_at(m, x))).ok_or_else(|| {
            Error::Construction(format!("no visible edge ends opposite the hidden side of {a} in {m}"))
        })?;
    let s = m.partner(r).expect("covered");
    let r_star = circle.antipode(r);
    if circle.strictly_between(r_star, s, r) {
        improve_oriented(m, a, r)
    } else {
        // Mirror so that `s` lies to the right of the ray from r through the center.
        let mirrored = m.mirror();
        let flips = improve_oriented(&mirrored, circle.mirror_chord(a), circle.mirror(r))?;
        Ok(flips.iter().map(|f| circle.mirror_flip(f)).collect())
    }
}

/// The round for a fixed longest edge `a` and point `r`, with the partner of
/// `r` lying counterclockwise of `r` (between `r*` and `r`).
fn improve_oriented(m: &Matching, a: Chord, r: usize) -> Result<Vec<Flip>> {
    let n = m.n();
    let circle = Circle { n };
    let (p, q) = orient(n, a).expect("not a diameter");
    let s = m.partner(r).expect("covered");
    let r_star = circle.antipode(r);
    let a_prime = edge_at(m, r);

    let (f1, m1) = centered_step(m, a, a_prime)?;
    let b = Chord::new(p, r)?;
    let b_prime = Chord::new(q, s)?;
    if !(m1.contains(b) && m1.contains(b_prime)) {
        return Err(Error::Construction(format!("first flip in {m} did not produce {b} and {b_prime}")));
    }

    // The line through r and r* splits the other points into two open arcs.
    let left = |x: usize| circle.strictly_between(r, x, r_star);
    let right = |x: usize| circle.strictly_between(r_star, x, r);
    let crosses = |c: Chord| (left(c.a()) && right(c.b())) || (right(c.a()) && left(c.b()));
    let touches_or_crosses = |c: Chord| crosses(c) || c.has_endpoint(r) || c.has_endpoint(r_star);

    let crossing: Vec<Chord> = m1.chord_iter().filter(|&c| crosses(c)).collect();
    if crossing.is_empty() {
        let c = edge_at(&m1, r_star);
        let (f2, m2) = centered_step(&m1, b, c)?;
        let d_prime = Chord::new(r, r_star)?;
        let (f3, _) = centered_step(&m2, d_prime, b_prime)?;
        return Ok(vec![f1, f2, f3]);
    }

    let (c, f2, m2) = crossing
        .iter()
        .find_map(|&c| centered_step(&m1, b, c).ok().map(|(f, next)| (c, f, next)))
        .ok_or_else(|| Error::Construction(format!("no crossing edge of {m1} flips with {b}")))?;
    let (cx, cy) = (c.a() - 1, c.b() - 1);
    let d_prime = edge_at(&m2, r);
    let (f3, m3) = m2
        .chord_iter()
        .filter(|&e| e != d_prime && touches_or_crosses(e))
        .filter(|&e| crate::matching::hides_idx(n, cx, cy, e.a() - 1) && m1.contains(e))
        .filter(|&e| m2.is_visible(e))
        .find_map(|e| centered_step(&m2, d_prime, e).ok())
        .ok_or_else(|| Error::Construction(format!("no edge behind {c} flips with {d_prime} in {m2}")))?;
    let f_prime = edge_at(&m3, r);
    let (f4, _) = centered_step(&m3, f_prime, b_prime)?;
    Ok(vec![f1, f2, f3, f4])
}

/// Centered flips from `m` to one of the two all-perimeter matchings (odd `n`).
pub fn canonical_flip_sequence(m: &Matching) -> Result<FlipSequence> {
    let n = m.n();
    if n.is_multiple_of(2) {
        return Err(Error::EvenN(n));
    }
    let targets = [Matching::perimeter(n), Matching::perimeter_shifted(n)];
    let mut current = m.clone();
    let mut seq = FlipSequence { start: m.to_string(), flips: Vec::new(), rounds: Vec::new() };

    if let Some(d) = current.diameter_edge() {
        let flip = flips(&current)
            .into_iter()
            .find(|f| f.centered && f.removed.contains(&d))
            .ok_or_else(|| Error::Construction(format!("diameter {d} has no centered flip in {current}")))?;
        current = apply_unchecked(&current, &flip);
        seq.flips.push(flip);
        seq.rounds.push(seq.flips.len());
    }

    // Each round adds a visible edge, so n rounds always suffice.
    for _ in 0..n {
        if targets.contains(&current) {
            return Ok(seq);
        }
        let round = improve_round(&current)?;
        for f in &round {
            current = apply_unchecked(&current, f);
        }
        seq.flips.extend(round);
        seq.rounds.push(seq.flips.len());
    }
    if targets.contains(&current) {
        Ok(seq)
    } else {
        Err(Error::Construction(format!("did not reach an all-perimeter matching from {m}")))
    }
}

/// Exactly `3n - 7` centered flips from `{1,2},{3,4},...` to `{2,3},...,{2n,1}` (odd `n >= 3`).
pub fn perimeter_swap_path(n: usize) -> Result<Vec<Flip>> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenN(n));
    }
    if n < 3 {
        return Err(Error::TooSmall { n, min: 3 });
    }
    if n > Matching::MAX_N {
        return Err(Error::TooLarge(n));
    }
    let raw = swap_flips(n)?;
    // Replay to validate every step and to fix the centered flags in the full instance.
    let mut current = Matching::perimeter(n);
    let mut out = Vec::with_capacity(raw.len());
    for f in &raw {
        let (flip, next) = centered_step(&current, f.removed[0], f.removed[1])?;
        current = next;
        out.push(flip);
    }
    if current != Matching::perimeter_shifted(n) {
        return Err(Error::Construction(format!("swap path for n = {n} ended at {current}")));
    }
    Ok(out)
}

fn swap_flips(n: usize) -> Result<Vec<Flip>> {
    let ch = |x: usize, y: usize| Chord::new(x, y);
    if n == 3 {
        let m0 = Matching::perimeter(3);
        let (f1, m1) = centered_step(&m0, ch(1, 2)?, ch(3, 4)?)?;
        let (f2, _) = centered_step(&m1, ch(1, 4)?, ch(5, 6)?)?;
        return Ok(vec![f1, f2]);
    }
    let circle = Circle { n };

    // Three flips from M_0 to the matching with the length-1 edge {1,4}
    // hiding {2,3}; {n+2,n+3} is the antipodal pair partner.
    let m0 = Matching::perimeter(n);
    let (g1, m1) = centered_step(&m0, ch(3, 4)?, ch(n + 2, n + 3)?)?;
    let (g2, m2) = centered_step(&m1, ch(3, n + 3)?, ch(1, 2)?)?;
    let (g3, _) = centered_step(&m2, ch(1, n + 3)?, ch(4, n + 2)?)?;
    let head = [g1, g2, g3];

    // Drop {2,3} and {n+2,n+3}; the remaining points, read from 1, carry the
    // (n-2)-instance whose all-perimeter matchings are the two middle states.
    let lift = |k: usize| -> usize {
        if k == 1 {
            1
        } else if k < n {
            k + 2
        } else {
            k + 4
        }
    };
    let lift_chord = |c: Chord| Chord::new(lift(c.a()), lift(c.b()));
    let mut out = head.to_vec();
    for f in swap_flips(n - 2)? {
        out.push(Flip {
            removed: [lift_chord(f.removed[0])?, lift_chord(f.removed[1])?],
            added: [lift_chord(f.added[0])?, lift_chord(f.added[1])?],
            centered: f.centered,
        });
    }

    // Rotating by n swaps the two all-perimeter matchings and the two middle
    // states, so the head rotated and reversed finishes the path.
    let rotate = |c: Chord| Chord::new(circle.antipode(c.a()), circle.antipode(c.b()));
    for f in head.iter().rev() {
        out.push(Flip {
            removed: [rotate(f.added[0])?, rotate(f.added[1])?],
            added: [rotate(f.removed[0])?, rotate(f.removed[1])?],
            centered: f.centered,
        });
    }
    Ok(out)
}
