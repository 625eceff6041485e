//! Chords and non-crossing perfect matchings on `2n` points in convex
//! position, labeled `1..=2n` clockwise.
//!
//! Every predicate here is integer-combinatorial. A chord `{a, b}` splits the
//! remaining points into two arcs; the arc holding fewer points is the
//! *minority arc*, and a point is hidden behind the chord iff it lies strictly
//! inside that arc. When both arcs are equal (odd `n`) the chord is a diameter
//! and hides nothing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered pair of point labels, stored with `a < b`.
///
/// Construction rejects chords with an even span `b - a`: such a chord leaves
/// an odd number of points on each side and never occurs in a perfect
/// non-crossing matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[u16; 2]", try_from = "[u16; 2]")]
pub struct Chord {
    a: u16,
    b: u16,
}

impl Chord {
    pub fn new(x: usize, y: usize) -> Result<Self> {
        if x == 0 || y == 0 {
            return Err(Error::PointOutOfRange { point: 0, max: usize::from(u16::MAX) });
        }
        if x == y {
            return Err(Error::DegenerateChord(x));
        }
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        let (a, b) = match (u16::try_from(a), u16::try_from(b)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Err(Error::PointOutOfRange { point: b, max: usize::from(u16::MAX) }),
        };
        let chord = Chord { a, b };
        if (b - a) % 2 == 0 {
            return Err(Error::EvenSpan(chord));
        }
        Ok(chord)
    }

    /// Builds a chord and checks both endpoints against `1..=2n`.
    pub fn within(n: usize, x: usize, y: usize) -> Result<Self> {
        let c = Chord::new(x, y)?;
        c.check(n)?;
        Ok(c)
    }

    pub(crate) fn from_indices(i: usize, j: usize) -> Self {
        debug_assert!(i != j);
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Chord { a: (a + 1) as u16, b: (b + 1) as u16 }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if usize::from(self.b) > 2 * n {
            return Err(Error::PointOutOfRange { point: usize::from(self.b), max: 2 * n });
        }
        Ok(())
    }

    #[inline]
    pub fn a(&self) -> usize {
        usize::from(self.a)
    }

    #[inline]
    pub fn b(&self) -> usize {
        usize::from(self.b)
    }

    #[inline]
    pub fn span(&self) -> usize {
        self.b() - self.a()
    }

    pub fn has_endpoint(&self, p: usize) -> bool {
        self.a() == p || self.b() == p
    }

    /// The endpoint opposite to `p`, if `p` is an endpoint.
    pub fn other(&self, p: usize) -> Option<usize> {
        if self.a() == p {
            Some(self.b())
        } else if self.b() == p {
            Some(self.a())
        } else {
            None
        }
    }

    /// 0-based endpoints `(a - 1, b - 1)`.
    #[inline]
    pub(crate) fn indices(&self) -> (usize, usize) {
        (self.a() - 1, self.b() - 1)
    }

    /// Whether the endpoints of `self` and `other` alternate around the circle.
    pub fn crosses(&self, other: &Chord) -> bool {
        let inside = |p: usize| self.a() < p && p < self.b();
        let shared = self.has_endpoint(other.a()) || self.has_endpoint(other.b());
        !shared && inside(other.a()) != inside(other.b())
    }
}

impl From<Chord> for [u16; 2] {
    fn from(c: Chord) -> Self {
        [c.a, c.b]
    }
}

impl TryFrom<[u16; 2]> for Chord {
    type Error = Error;

    fn try_from(v: [u16; 2]) -> Result<Self> {
        Chord::new(usize::from(v[0]), usize::from(v[1]))
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("{}-{}", self.a, self.b))
    }
}

impl FromStr for Chord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (x, y) = s.trim().split_once('-').ok_or_else(|| Error::Parse(format!("expected `a-b`, got `{s}`")))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad point `{t}`: {e}")));
        Chord::new(parse(x)?, parse(y)?)
    }
}

/// Largest possible edge length for `n` edges: `ceil((n - 2) / 2)`.
pub fn max_length(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

/// Number of matching edges on the smaller side of `e`.
pub fn chord_length(n: usize, e: Chord) -> Result<usize> {
    e.check(n)?;
    Ok(length_of_span(n, e.span()))
}

#[inline]
pub(crate) fn length_of_span(n: usize, span: usize) -> usize {
    let inner = span - 1;
    let outer = 2 * n - span - 1;
    inner.min(outer) / 2
}

/// Which arc of a chord holds fewer points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Minority {
    /// Points strictly between `a` and `b`.
    Inner,
    /// Points after `b` or before `a`.
    Outer,
    /// A diameter: both arcs are equal.
    None,
}

#[inline]
pub(crate) fn minority_of_span(n: usize, span: usize) -> Minority {
    let inner = span - 1;
    let outer = 2 * n - span - 1;
    match inner.cmp(&outer) {
        std::cmp::Ordering::Less => Minority::Inner,
        std::cmp::Ordering::Greater => Minority::Outer,
        std::cmp::Ordering::Equal => Minority::None,
    }
}

/// 0-based test: is point `p` strictly inside the minority arc of chord `(x, y)`, `x < y`?
#[inline]
pub(crate) fn hides_idx(n: usize, x: usize, y: usize, p: usize) -> bool {
    match minority_of_span(n, y - x) {
        Minority::Inner => x < p && p < y,
        Minority::Outer => p < x || p > y,
        Minority::None => false,
    }
}

/// Whether point `p` is hidden behind chord `e`.
///
/// Endpoints of `e` are never hidden, and a diameter hides nothing.
pub fn hides(n: usize, e: Chord, p: usize) -> bool {
    if p == 0 || p > 2 * n || e.check(n).is_err() {
        return false;
    }
    let (x, y) = e.indices();
    hides_idx(n, x, y, p - 1)
}

/// Orients `e` as `(i, j)` so the clockwise arc from `i` to `j` is the
/// minority arc. Returns `None` for a diameter.
pub fn orient(n: usize, e: Chord) -> Option<(usize, usize)> {
    match minority_of_span(n, e.span()) {
        Minority::Inner => Some((e.a(), e.b())),
        Minority::Outer => Some((e.b(), e.a())),
        Minority::None => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// Sign of `e` for even `n`: `+1` iff the endpoint that opens the minority
/// arc (clockwise) has an odd label.
pub fn sign(n: usize, e: Chord) -> Result<Sign> {
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    e.check(n)?;
    Ok(sign_idx(n, e.a() - 1, e.b() - 1))
}

/// 0-based variant of [`sign`]; `n` must be even so no chord is a diameter.
#[inline]
pub(crate) fn sign_idx(n: usize, x: usize, y: usize) -> Sign {
    let start = match minority_of_span(n, y - x) {
        Minority::Inner => x,
        _ => y,
    };
    // 0-based index `start` is label `start + 1`.
    if start % 2 == 0 {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Point reflection through the center: both endpoints shift by `n`.
pub fn sigma(n: usize, e: Chord) -> Chord {
    let (x, y) = e.indices();
    Chord::from_indices((x + n) % (2 * n), (y + n) % (2 * n))
}

/// A non-crossing perfect matching of `2n` points.
///
/// Stored as a partner table over 0-based point indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    partner: Vec<u8>,
}

impl Matching {
    /// Largest supported edge count.
    pub const MAX_N: usize = 127;

    pub fn from_chords<I>(n: usize, chords: I) -> Result<Self>
    where
        I: IntoIterator<Item = Chord>,
    {
        if n < 1 {
            return Err(Error::TooSmall { n, min: 1 });
        }
        if n > Self::MAX_N {
            return Err(Error::TooLarge(n));
        }
        let mut partner = vec![u8::MAX; 2 * n];
        for c in chords {
            c.check(n)?;
            let (x, y) = c.indices();
            for p in [x, y] {
                if partner[p] != u8::MAX {
                    return Err(Error::DoublyCovered(p + 1));
                }
            }
            partner[x] = y as u8;
            partner[y] = x as u8;
        }
        if let Some(p) = partner.iter().position(|&q| q == u8::MAX) {
            return Err(Error::Uncovered(p + 1));
        }
        let m = Matching { partner };
        m.check_non_crossing()?;
        Ok(m)
    }

    /// Wraps a partner table that is known to be a valid non-crossing matching.
    pub(crate) fn from_partner_unchecked(partner: Vec<u8>) -> Self {
        debug_assert!(Matching { partner: partner.clone() }.check_non_crossing().is_ok());
        Matching { partner }
    }

    fn check_non_crossing(&self) -> Result<()> {
        // A perfect matching is non-crossing iff it is balanced as parentheses.
        let mut stack: Vec<usize> = Vec::with_capacity(self.partner.len());
        for i in 0..self.partner.len() {
            let j = usize::from(self.partner[i]);
            if j > i {
                stack.push(i);
            } else {
                let top = stack.pop().expect("partner below i was opened");
                if top != j {
                    let e = Chord::from_indices(i, j);
                    let f = Chord::from_indices(top, usize::from(self.partner[top]));
                    return Err(Error::Crossing(e, f));
                }
            }
        }
        Ok(())
    }

    /// The matching with all edges `{2i-1, 2i}` (only perimeter edges).
    pub fn perimeter(n: usize) -> Self {
        Self::perimeter_with_offset(n, 0)
    }

    /// The other all-perimeter matching, with edges `{2i, 2i+1}` and `{2n, 1}`.
    pub fn perimeter_shifted(n: usize) -> Self {
        Self::perimeter_with_offset(n, 1)
    }

    fn perimeter_with_offset(n: usize, offset: usize) -> Self {
        let m = 2 * n;
        let mut partner = vec![0u8; m];
        for k in 0..n {
            let i = (2 * k + offset) % m;
            let j = (2 * k + 1 + offset) % m;
            partner[i] = j as u8;
            partner[j] = i as u8;
        }
        Matching { partner }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    #[inline]
    pub fn points(&self) -> usize {
        self.partner.len()
    }

    #[inline]
    pub(crate) fn partner_idx(&self, i: usize) -> usize {
        usize::from(self.partner[i])
    }

    pub(crate) fn partners(&self) -> &[u8] {
        &self.partner
    }

    /// Partner label of point `p`.
    pub fn partner(&self, p: usize) -> Option<usize> {
        if p == 0 || p > self.points() {
            return None;
        }
        Some(self.partner_idx(p - 1) + 1)
    }

    pub fn contains(&self, e: Chord) -> bool {
        e.b() <= self.points() && self.partner_idx(e.a() - 1) == e.b() - 1
    }

    /// Edges sorted by their smaller endpoint.
    pub fn chords(&self) -> Vec<Chord> {
        self.chord_iter().collect()
    }

    pub fn chord_iter(&self) -> impl Iterator<Item = Chord> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &j)| usize::from(j) > i)
            .map(|(i, &j)| Chord::from_indices(i, usize::from(j)))
    }

    pub(crate) fn edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner.iter().enumerate().filter(|&(i, &j)| usize::from(j) > i).map(|(i, &j)| (i, usize::from(j)))
    }

    pub fn length(&self, e: Chord) -> usize {
        length_of_span(self.n(), e.span())
    }

    /// Number of edges of length 0.
    pub fn perimeter_count(&self) -> usize {
        let n = self.n();
        self.edge_indices().filter(|&(x, y)| length_of_span(n, y - x) == 0).count()
    }

    /// The diameter edge, if any (odd `n` only).
    pub fn diameter_edge(&self) -> Option<Chord> {
        let n = self.n();
        self.edge_indices()
            .find(|&(x, y)| minority_of_span(n, y - x) == Minority::None)
            .map(|(x, y)| Chord::from_indices(x, y))
    }

    /// 0-based hidden test against every edge other than the one at `i`.
    fn is_point_hidden(&self, i: usize) -> bool {
        let n = self.n();
        let own = self.partner_idx(i);
        self.edge_indices().any(|(x, y)| x != i && y != i && x != own && y != own && hides_idx(n, x, y, i))
    }

    pub(crate) fn is_visible_idx(&self, x: usize, y: usize) -> bool {
        let n = self.n();
        if minority_of_span(n, y - x) == Minority::None {
            return false;
        }
        // Non-crossing: an edge hiding one endpoint of (x, y) hides both.
        !self.is_point_hidden(x)
    }

    pub fn is_visible(&self, e: Chord) -> bool {
        self.contains(e) && {
            let (x, y) = e.indices();
            self.is_visible_idx(x, y)
        }
    }

    /// Edges seen from the center. A diameter is never visible and is
    /// ignored when deciding visibility of other edges.
    pub fn visible_edges(&self) -> Vec<Chord> {
        self.edge_indices()
            .filter(|&(x, y)| self.is_visible_idx(x, y))
            .map(|(x, y)| Chord::from_indices(x, y))
            .collect()
    }

    /// Sum of `sign(e) * length(e)`; even `n` only.
    pub fn weight(&self) -> Result<i64> {
        let n = self.n();
        if n % 2 == 1 {
            return Err(Error::OddN(n));
        }
        Ok(self.weight_unchecked())
    }

    pub(crate) fn weight_unchecked(&self) -> i64 {
        let n = self.n();
        self.edge_indices().map(|(x, y)| sign_idx(n, x, y).value() * length_of_span(n, y - x) as i64).sum()
    }

    /// Signed count of edges crossed by the ray from the center to the odd
    /// point `k`.
    pub fn ray_weight(&self, k: usize) -> Result<i64> {
        let n = self.n();
        if n % 2 == 1 {
            return Err(Error::OddN(n));
        }
        if k == 0 || k > 2 * n {
            return Err(Error::PointOutOfRange { point: k, max: 2 * n });
        }
        if k.is_multiple_of(2) {
            return Err(Error::EvenPoint(k));
        }
        let i = k - 1;
        Ok(self.edge_indices().filter(|&(x, y)| hides_idx(n, x, y, i)).map(|(x, y)| sign_idx(n, x, y).value()).sum())
    }

    /// The segment determined by the visible edge `e`: `e` plus every edge
    /// hidden behind it.
    pub fn segment(&self, e: Chord) -> Result<Segment> {
        if !self.contains(e) {
            return Err(Error::NotInMatching(e));
        }
        if !self.is_visible(e) {
            return Err(Error::NotVisible(e));
        }
        let n = self.n();
        let (x, y) = e.indices();
        let interior = self
            .edge_indices()
            .filter(|&(u, _)| hides_idx(n, x, y, u))
            .map(|(u, v)| Chord::from_indices(u, v))
            .collect();
        Ok(Segment { n, edge: e, interior })
    }

    /// All segments, one per visible edge, in the order of [`Matching::visible_edges`].
    pub fn segments(&self) -> Vec<Segment> {
        self.visible_edges().into_iter().map(|e| self.segment(e).expect("visible edge")).collect()
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        let n = self.n();
        let m = 2 * n;
        (0..m).all(|i| self.partner_idx((i + n) % m) == (self.partner_idx(i) + n) % m)
    }

    /// Rotates clockwise by `steps` points (`steps` may be negative).
    pub fn rotate(&self, steps: i64) -> Matching {
        let m = self.points() as i64;
        let shift = steps.rem_euclid(m) as usize;
        let m = m as usize;
        let mut partner = vec![0u8; m];
        for i in 0..m {
            partner[(i + shift) % m] = ((self.partner_idx(i) + shift) % m) as u8;
        }
        Matching { partner }
    }

    /// Reflects point `k` to `2n + 1 - k`.
    pub fn mirror(&self) -> Matching {
        let m = self.points();
        let mut partner = vec![0u8; m];
        for i in 0..m {
            partner[m - 1 - i] = (m - 1 - self.partner_idx(i)) as u8;
        }
        Matching { partner }
    }

    /// Comma-separated pair list, e.g. `1-2,3-8,4-5,6-7`.
    pub fn to_pairs_string(&self) -> String {
        self.chord_iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse_pairs(s: &str) -> Result<Self> {
        let chords = s.split(',').filter(|t| !t.trim().is_empty()).map(Chord::from_str).collect::<Result<Vec<_>>>()?;
        Matching::from_chords(chords.len(), chords)
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching({})", self.to_pairs_string())
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pairs_string())
    }
}

/// Accepts either a pair list (`1-2,3-4`) or a Dyck word (`UDUD`, `()()`).
impl FromStr for Matching {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains('-') {
            Matching::parse_pairs(s)
        } else {
            let path: crate::dyck::DyckPath = s.parse()?;
            crate::dyck::from_dyck(&path)
        }
    }
}

/// A visible edge together with the edges hidden behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    n: usize,
    edge: Chord,
    interior: Vec<Chord>,
}

impl Segment {
    pub fn edge(&self) -> Chord {
        self.edge
    }

    /// Edges hidden behind the segment's edge.
    pub fn interior(&self) -> &[Chord] {
        &self.interior
    }

    /// The segment's edge followed by its interior.
    pub fn chords(&self) -> Vec<Chord> {
        std::iter::once(self.edge).chain(self.interior.iter().copied()).collect()
    }

    /// Weight of the segment's chords measured in the ambient `2n` points.
    pub fn weight(&self) -> Result<i64> {
        let n = self.n;
        self.chords().into_iter().map(|c| Ok(sign(n, c)?.value() * length_of_span(n, c.span()) as i64)).sum()
    }
}
