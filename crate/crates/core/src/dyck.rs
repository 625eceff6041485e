//! Dyck paths and the bijections around them.
//!
//! A matching maps to a Dyck path by scanning points `1..=2n`: the first
//! endpoint of each edge is an upstep, the second a downstep. Ranks are
//! lexicographic over Dyck words with `U < D`, so rank 0 is the fully nested
//! matching `U^n D^n` and rank `C_n - 1` is the all-perimeter matching
//! `(UD)^n`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matching::{hides_idx, orient, Chord, Matching};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
}

/// A balanced up/down sequence whose prefix heights never go negative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        if !is_dyck(&steps) {
            return Err(Error::NotDyck(render(&steps)));
        }
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of upsteps (half the length).
    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn peaks(&self) -> usize {
        peaks(&self.steps)
    }

    pub fn band_weight(&self) -> usize {
        band_weight(&self.steps)
    }

    /// The word over `(` and `)`.
    pub fn to_parens(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Step::Up => '(',
                Step::Down => ')',
            })
            .collect()
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.steps))
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    /// Parses `U`/`D` or `(`/`)` words (case-insensitive for letters).
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' | '(' => Ok(Step::Up),
                'D' | 'd' | ')' => Ok(Step::Down),
                other => Err(Error::Parse(format!("unexpected character `{other}` in Dyck word"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

fn render(steps: &[Step]) -> String {
    steps
        .iter()
        .map(|s| match s {
            Step::Up => 'U',
            Step::Down => 'D',
        })
        .collect()
}

pub fn is_dyck(steps: &[Step]) -> bool {
    is_nonnegative(steps) && height(steps) == 0
}

/// Prefix heights never drop below zero.
pub fn is_nonnegative(steps: &[Step]) -> bool {
    let mut h = 0i64;
    for s in steps {
        h += if *s == Step::Up { 1 } else { -1 };
        if h < 0 {
            return false;
        }
    }
    true
}

fn height(steps: &[Step]) -> i64 {
    steps.iter().map(|s| if *s == Step::Up { 1 } else { -1 }).sum()
}

/// Number of `UD` factors.
pub fn peaks(steps: &[Step]) -> usize {
    steps.windows(2).filter(|w| w[0] == Step::Up && w[1] == Step::Down).count()
}

/// Number of upsteps that start at an even height.
pub fn band_weight(steps: &[Step]) -> usize {
    let mut h = 0usize;
    let mut count = 0;
    for s in steps {
        match s {
            Step::Up => {
                if h.is_multiple_of(2) {
                    count += 1;
                }
                h += 1;
            }
            Step::Down => h = h.saturating_sub(1),
        }
    }
    count
}

pub fn to_dyck(m: &Matching) -> DyckPath {
    let steps = (0..m.points()).map(|i| if m.partner_idx(i) > i { Step::Up } else { Step::Down }).collect();
    DyckPath { steps }
}

/// Matches each downstep with the nearest unmatched upstep before it.
pub fn from_dyck(p: &DyckPath) -> Result<Matching> {
    if p.is_empty() {
        return Err(Error::TooSmall { n: 0, min: 1 });
    }
    if p.semilength() > Matching::MAX_N {
        return Err(Error::TooLarge(p.semilength()));
    }
    Ok(Matching::from_partner_unchecked(partner_from_steps(&p.steps)))
}

fn partner_from_steps(steps: &[Step]) -> Vec<u8> {
    let mut partner = vec![0u8; steps.len()];
    let mut stack = Vec::with_capacity(steps.len() / 2);
    for (i, s) in steps.iter().enumerate() {
        match s {
            Step::Up => stack.push(i),
            Step::Down => {
                let j = stack.pop().expect("valid Dyck path");
                partner[i] = j as u8;
                partner[j] = i as u8;
            }
        }
    }
    partner
}

/// Largest `n` for which ranks fit in `u64`.
pub const MAX_RANK_N: usize = 33;

/// Ballot-number table for ranking and unranking Dyck words of semilength `n`.
///
/// `completions(r, h)` is the number of ways to finish a word with `r` steps
/// left from height `h`.
#[derive(Clone, Debug)]
pub struct Ranker {
    n: usize,
    table: Vec<u64>,
    width: usize,
}

impl Ranker {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooSmall { n, min: 1 });
        }
        if n > MAX_RANK_N {
            return Err(Error::TooLarge(n));
        }
        let len = 2 * n;
        let width = len + 2;
        let mut table = vec![0u64; (len + 1) * width];
        table[0] = 1;
        for r in 1..=len {
            for h in 0..=len {
                let up = table[(r - 1) * width + h + 1];
                let down = if h > 0 { table[(r - 1) * width + h - 1] } else { 0 };
                table[r * width + h] = up + down;
            }
        }
        Ok(Ranker { n, table, width })
    }

    #[inline]
    fn completions(&self, remaining: usize, h: usize) -> u64 {
        if h >= self.width {
            return 0;
        }
        self.table[remaining * self.width + h]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `C_n`.
    pub fn count(&self) -> u64 {
        self.completions(2 * self.n, 0)
    }

    pub fn rank(&self, m: &Matching) -> u64 {
        debug_assert_eq!(m.n(), self.n);
        self.rank_partners(m.partners())
    }

    pub(crate) fn rank_partners(&self, partner: &[u8]) -> u64 {
        let len = partner.len();
        let mut h = 0usize;
        let mut r = 0u64;
        for (i, &j) in partner.iter().enumerate() {
            if usize::from(j) > i {
                h += 1;
            } else {
                r += self.completions(len - i - 1, h + 1);
                h -= 1;
            }
        }
        r
    }

    pub fn rank_path(&self, p: &DyckPath) -> u64 {
        let len = p.len();
        let mut h = 0usize;
        let mut r = 0u64;
        for (i, s) in p.steps.iter().enumerate() {
            match s {
                Step::Up => h += 1,
                Step::Down => {
                    r += self.completions(len - i - 1, h + 1);
                    h -= 1;
                }
            }
        }
        r
    }

    pub fn unrank_path(&self, rank: u64) -> Result<DyckPath> {
        if rank >= self.count() {
            return Err(Error::RankOutOfRange { n: self.n, rank });
        }
        let len = 2 * self.n;
        let mut steps = Vec::with_capacity(len);
        let mut h = 0usize;
        let mut r = rank;
        for i in 0..len {
            let with_up = self.completions(len - i - 1, h + 1);
            if r < with_up {
                steps.push(Step::Up);
                h += 1;
            } else {
                r -= with_up;
                steps.push(Step::Down);
                h -= 1;
            }
        }
        Ok(DyckPath { steps })
    }

    pub fn unrank(&self, rank: u64) -> Result<Matching> {
        from_dyck(&self.unrank_path(rank)?)
    }
}

pub fn rank(m: &Matching) -> Result<u64> {
    Ok(Ranker::new(m.n())?.rank(m))
}

pub fn unrank(n: usize, rank: u64) -> Result<Matching> {
    Ranker::new(n)?.unrank(rank)
}

/// Dyck words of semilength `n` in rank order, generated by successor.
#[derive(Clone, Debug)]
pub struct DyckWords {
    current: Option<Vec<Step>>,
    remaining: u64,
}

impl DyckWords {
    pub fn new(n: usize) -> Self {
        let steps = std::iter::repeat_n(Step::Up, n).chain(std::iter::repeat_n(Step::Down, n)).collect();
        let remaining = Ranker::new(n.max(1)).map(|r| r.count()).unwrap_or(u64::MAX);
        DyckWords { current: if n == 0 { None } else { Some(steps) }, remaining }
    }

    /// Words from `start` (inclusive) to `end` (exclusive) in rank order.
    pub fn range(n: usize, start: u64, end: u64) -> Result<Self> {
        let ranker = Ranker::new(n)?;
        let end = end.min(ranker.count());
        if start >= end {
            return Ok(DyckWords { current: None, remaining: 0 });
        }
        let first = ranker.unrank_path(start)?;
        Ok(DyckWords { current: Some(first.steps), remaining: end - start })
    }
}

/// Next Dyck word in `U < D` lexicographic order, in place.
///
/// Returns `false` when `steps` was the last word.
pub fn next_dyck_word(steps: &mut [Step]) -> bool {
    let len = steps.len();
    let n = len / 2;
    // Height before each position; find the rightmost U that can turn into a D.
    let mut heights = Vec::with_capacity(len);
    let mut h = 0usize;
    for s in steps.iter() {
        heights.push(h);
        if *s == Step::Up {
            h += 1;
        } else {
            h -= 1;
        }
    }
    let mut ups_before = vec![0usize; len + 1];
    for i in 0..len {
        ups_before[i + 1] = ups_before[i] + usize::from(steps[i] == Step::Up);
    }
    for i in (0..len).rev() {
        if steps[i] == Step::Up && heights[i] >= 1 {
            steps[i] = Step::Down;
            let ups_left = n - ups_before[i];
            for (k, s) in steps[i + 1..].iter_mut().enumerate() {
                *s = if k < ups_left { Step::Up } else { Step::Down };
            }
            return true;
        }
    }
    false
}

impl Iterator for DyckWords {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        if self.remaining == 0 {
            return None;
        }
        let current = self.current.take()?;
        self.remaining -= 1;
        let mut next = current.clone();
        if self.remaining > 0 && next_dyck_word(&mut next) {
            self.current = Some(next);
        } else {
            self.remaining = 0;
        }
        Some(DyckPath { steps: current })
    }
}

/// Every matching with `n` edges, exactly once, in rank order.
pub fn enumerate_matchings(n: usize) -> impl Iterator<Item = Matching> {
    DyckWords::new(n).map(|p| Matching::from_partner_unchecked(partner_from_steps(&p.steps)))
}

/// Matchings with ranks in `start..end`.
pub fn enumerate_range(n: usize, start: u64, end: u64) -> Result<impl Iterator<Item = Matching>> {
    Ok(DyckWords::range(n, start, end)?.map(|p| Matching::from_partner_unchecked(partner_from_steps(&p.steps))))
}

/// Encodes a centrally symmetric matching (even `n`) as a balanced bit string
/// of length `n`.
///
/// Scanning points `1..=n`: an edge inside the first half records `1` at its
/// first endpoint and `0` at its second. An edge leaving the first half is
/// paired with its reflection, which also has exactly one endpoint there; the
/// first of those two points records `0`, the second `1`.
pub fn symmetric_to_bits(m: &Matching) -> Result<String> {
    let n = m.n();
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    if !m.is_centrally_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut bits = vec![b'?'; n];
    for i in 0..n {
        if bits[i] != b'?' {
            continue;
        }
        let j = m.partner_idx(i);
        if j < n {
            // j > i since i is the first unseen point of this edge.
            bits[i] = b'1';
            bits[j] = b'0';
        } else {
            // Reflection of edge (i, j) has its first-half endpoint at j - n.
            let k = j - n;
            bits[i] = b'0';
            bits[k] = b'1';
        }
    }
    Ok(String::from_utf8(bits).expect("ascii"))
}

/// Inverse of [`symmetric_to_bits`].
///
/// The string is written twice around the circle; each `1` is matched with
/// the next unmatched `0` clockwise, so every edge runs from a `1` to a `0`
/// over points that are already matched.
pub fn bits_to_symmetric(bits: &str) -> Result<Matching> {
    let n = bits.len();
    if n == 0 || n % 2 == 1 {
        return Err(Error::Unbalanced(bits.to_string()));
    }
    let mut labels = Vec::with_capacity(n);
    for c in bits.chars() {
        match c {
            '0' => labels.push(false),
            '1' => labels.push(true),
            other => return Err(Error::Parse(format!("unexpected character `{other}` in bit string"))),
        }
    }
    if labels.iter().filter(|&&b| b).count() * 2 != n {
        return Err(Error::Unbalanced(bits.to_string()));
    }
    if n > Matching::MAX_N {
        return Err(Error::TooLarge(n));
    }
    let m = 2 * n;
    let mut partner = vec![u8::MAX; m];
    let mut stack: Vec<usize> = Vec::new();
    // Two laps resolve every 1 whose 0 lies past the wrap-around.
    for step in 0..2 * m {
        let i = step % m;
        if partner[i] != u8::MAX {
            continue;
        }
        if labels[i % n] {
            if !stack.contains(&i) {
                stack.push(i);
            }
        } else if let Some(j) = stack.pop() {
            partner[i] = j as u8;
            partner[j] = i as u8;
        }
    }
    debug_assert!(partner.iter().all(|&p| p != u8::MAX));
    Ok(Matching::from_partner_unchecked(partner))
}

/// The Dyck path of the edges hidden behind the visible edge `e`, read
/// clockwise starting just after the endpoint of `e` that opens its minority
/// arc.
pub fn segment_to_dyck(m: &Matching, e: Chord) -> Result<DyckPath> {
    let segment = m.segment(e)?;
    let n = m.n();
    let (start, _) = orient(n, e).expect("visible edges are not diameters");
    let (x, y) = (e.a() - 1, e.b() - 1);
    let len = 2 * segment.interior().len();
    let mut steps = Vec::with_capacity(len);
    let mut seen = vec![false; 2 * n];
    let mut i = start % (2 * n); // 0-based index of the point after `start`
    while steps.len() < len {
        debug_assert!(hides_idx(n, x, y, i));
        let j = m.partner_idx(i);
        steps.push(if seen[j] { Step::Down } else { Step::Up });
        seen[i] = true;
        i = (i + 1) % (2 * n);
    }
    DyckPath::new(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    #[test]
    fn codec_extremes() {
        assert_eq!(to_dyck(&Matching::perimeter(4)).to_string(), "UDUDUDUD");
        let nested: Matching = "1-8,2-7,3-6,4-5".parse().unwrap();
        assert_eq!(to_dyck(&nested).to_string(), "UUUUDDDD");
        assert_eq!(from_dyck(&path("(())()")).unwrap().to_string(), "1-4,2-3,5-6");
        assert!(DyckPath::from_str("UDDU").is_err());
        assert!(DyckPath::from_str("UUD").is_err());
    }

    #[test]
    fn peaks_and_band_weight() {
        let p = path("UDUDUD");
        assert_eq!((p.peaks(), p.band_weight()), (3, 3));
        let q = path("UUUUDDDD");
        assert_eq!((q.peaks(), q.band_weight()), (1, 2));
    }

    #[test]
    fn rank_extremes_and_counts() {
        let r = Ranker::new(4).unwrap();
        assert_eq!(r.count(), 14);
        assert_eq!(r.unrank_path(0).unwrap().to_string(), "UUUUDDDD");
        assert_eq!(r.unrank_path(13).unwrap().to_string(), "UDUDUDUD");
        assert!(matches!(r.unrank(14), Err(Error::RankOutOfRange { .. })));
        assert_eq!(enumerate_matchings(3).count(), 5);
        assert_eq!(enumerate_matchings(4).count(), 14);
    }

    #[test]
    fn enumeration_is_rank_order() {
        let r = Ranker::new(6).unwrap();
        for (i, m) in enumerate_matchings(6).enumerate() {
            assert_eq!(r.rank(&m), i as u64);
        }
        let tail: Vec<_> = enumerate_range(6, 100, 132).unwrap().collect();
        assert_eq!(tail.len(), 32);
        assert_eq!(r.rank(&tail[0]), 100);
    }

    #[test]
    fn symmetric_small() {
        let a = bits_to_symmetric("01").unwrap();
        let b = bits_to_symmetric("10").unwrap();
        assert_ne!(a, b);
        assert!(a.is_centrally_symmetric() && b.is_centrally_symmetric());
        assert_eq!(symmetric_to_bits(&a).unwrap(), "01");
        assert_eq!(symmetric_to_bits(&b).unwrap(), "10");
        assert!(matches!(bits_to_symmetric("0111"), Err(Error::Unbalanced(_))));
        let m: Matching = "1-2,3-8,4-5,6-7".parse().unwrap();
        assert!(matches!(symmetric_to_bits(&m), Err(Error::NotSymmetric)));
    }

    #[test]
    fn segment_paths() {
        let m: Matching = "1-2,3-8,4-5,6-7".parse().unwrap();
        let e = Chord::new(3, 8).unwrap();
        assert_eq!(segment_to_dyck(&m, e).unwrap().to_string(), "UD");
        let nested: Matching = "1-2,3-10,4-5,6-7,8-9,11-12".parse().unwrap();
        let e = Chord::new(3, 10).unwrap();
        // The short side of {3,10} is 11, 12, 1, 2, read clockwise from 10.
        assert_eq!(segment_to_dyck(&nested, e).unwrap().to_string(), "UDUD");
        let p = Matching::perimeter(4);
        assert!(segment_to_dyck(&p, Chord::new(1, 2).unwrap()).unwrap().is_empty());
        assert!(segment_to_dyck(&m, Chord::new(1, 2).unwrap()).is_err());
    }
}
