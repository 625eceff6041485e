//! Closed-form counts and their comparison against enumeration.
//!
//! All counts are arbitrary-precision integers. Floating point appears only
//! in the asymptotic component-fraction estimate, which is for display.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::dyck::{enumerate_range, Ranker};
use crate::error::{Error, Result};
use crate::matching::{length_of_span, max_length, Matching};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// Generalized Narayana number `N_r(n, k) = (r+1)/(n+1) * binom(n+1, k) * binom(n-r-1, k-1)`.
pub fn narayana(r: u64, n: u64, k: u64) -> Result<BigUint> {
    if n < 1 || k < 1 || r >= n || k > n - r {
        return Err(Error::NarayanaRange { r: r as usize, n: n as usize, k: k as usize });
    }
    let numerator = BigUint::from(r + 1) * binomial(n + 1, k) * binomial(n - r - 1, k - 1);
    let (q, rem) = numerator.div_rem(&BigUint::from(n + 1));
    debug_assert!(rem.is_zero());
    Ok(q)
}

fn check_even(n: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    Ok(())
}

/// Predicted number of matchings with weight exactly `c` (even `n`).
///
/// For `c = 0` this is the size of the class holding only the all-positive
/// all-perimeter matching.
pub fn weight_class_size(n: usize, c: i64) -> Result<BigUint> {
    check_even(n)?;
    let limit = (n - 2) as i64;
    if c.abs() > limit {
        return Err(Error::WeightRange { n, c });
    }
    Ok(narayana(1, n as u64, c.unsigned_abs() + 1)? / 2u32)
}

/// Predicted number of matchings with exactly `k` perimeter edges (even `n`).
pub fn perimeter_class_size(n: usize, k: usize) -> Result<BigUint> {
    check_even(n)?;
    if k < 2 || k > n {
        return Err(Error::PerimeterRange { n, k });
    }
    narayana(1, n as u64, (n - k + 1) as u64)
}

/// Exact `N_1(n, n/2) / C_n` and the display-only estimate `2 / sqrt(pi n)`.
pub fn component_size_fraction(n: usize) -> Result<(BigRational, f64)> {
    check_even(n)?;
    let top = narayana(1, n as u64, (n / 2) as u64)?;
    let exact = BigRational::new(top.into(), catalan(n as u64).into());
    let estimate = 2.0 / (std::f64::consts::PI * n as f64).sqrt();
    Ok((exact, estimate))
}

/// Max-degree vertex counts of `H_n` for even `n = 2, 4, ..., 14`, found by
/// exhaustive computation; no closed form is known.
pub const EVEN_MAX_DEGREE_COUNTS: [(usize, u64); 7] =
    [(2, 2), (4, 10), (6, 54), (8, 274), (10, 1326), (12, 6218), (14, 28538)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiameterPrediction {
    pub lower: Option<u64>,
    pub upper: Option<u64>,
    /// Conjectured value, odd `n` only.
    pub conjectured: Option<u64>,
    pub infinite: bool,
}

/// Every closed-form prediction about `H_n` for one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extremes {
    pub n: usize,
    pub vertices: BigUint2,
    pub max_degree: usize,
    pub max_degree_count: Option<u64>,
    pub min_degree: usize,
    pub min_degree_count: BigUint2,
    pub symmetric_count: BigUint2,
    /// Exact for odd `n`; a lower bound (conjectured exact) for even `n`.
    pub components: BigUint2,
    pub tree_components: Option<BigUint2>,
    pub tree_size: Option<usize>,
    pub max_component_bound: Option<BigUint2>,
    pub diameter: DiameterPrediction,
}

/// `BigUint` that serializes as a JSON number when it fits in `u64`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BigUint2(pub BigUint);

impl Serialize for BigUint2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl std::fmt::Display for BigUint2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl From<BigUint> for BigUint2 {
    fn from(v: BigUint) -> Self {
        BigUint2(v)
    }
}

impl From<u64> for BigUint2 {
    fn from(v: u64) -> Self {
        BigUint2(BigUint::from(v))
    }
}

pub fn predicted_extremes(n: usize) -> Result<Extremes> {
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let nu = n as u64;
    let odd = n % 2 == 1;
    let (max_degree, min_degree) = if odd { (n, 2) } else { (n / 2, 1) };
    let max_degree_count =
        if odd { Some(2) } else { EVEN_MAX_DEGREE_COUNTS.iter().find(|(m, _)| *m == n).map(|(_, c)| *c) };
    let half = if odd { (nu - 3) / 2 } else { (nu - 2) / 2 };
    let c_half = catalan(half);
    let min_degree_count = BigUint::from(nu) * &c_half * &c_half;
    let symmetric_count = if odd { BigUint::from(nu) * catalan((nu - 1) / 2) } else { binomial(nu, nu / 2) };
    let components = if odd || n == 2 { BigUint::one() } else { catalan(nu / 2) + nu - 3u32 };
    let diameter = if odd {
        DiameterPrediction {
            lower: Some(nu - 1),
            upper: Some(11 * nu - 29),
            conjectured: Some(3 * nu - 7),
            infinite: false,
        }
    } else if n == 2 {
        DiameterPrediction { lower: Some(1), upper: Some(1), conjectured: None, infinite: false }
    } else {
        DiameterPrediction { lower: None, upper: None, conjectured: None, infinite: true }
    };
    Ok(Extremes {
        n,
        vertices: catalan(nu).into(),
        max_degree,
        max_degree_count,
        min_degree,
        min_degree_count: min_degree_count.into(),
        symmetric_count: symmetric_count.into(),
        components: components.into(),
        tree_components: (!odd).then(|| catalan(nu / 2).into()),
        tree_size: (!odd).then_some(n / 2 + 1),
        max_component_bound: (!odd).then(|| narayana(1, nu, nu / 2).expect("in range").into()),
        diameter,
    })
}

/// Whether `m` has the shape of a minimum-degree vertex of `H_n`: for odd
/// `n` a diameter plus exactly two edges of length `mu - 1`, for even `n`
/// exactly two edges of length `mu`.
pub fn has_min_degree_shape(m: &Matching) -> bool {
    let n = m.n();
    let mu = max_length(n);
    let count_len = |l: usize| m.edge_indices().filter(|&(x, y)| length_of_span(n, y - x) == l).count();
    if n % 2 == 1 {
        if n < 3 {
            return false;
        }
        m.diameter_edge().is_some() && count_len(mu - 1) == 2
    } else {
        count_len(mu) == 2
    }
}

/// Per-matching statistics gathered in one enumeration pass.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationTally {
    pub total: u64,
    /// `weight -> count`; even `n` only.
    pub weights: BTreeMap<i64, u64>,
    /// `perimeter edge count -> count`.
    pub perimeter: BTreeMap<usize, u64>,
    pub symmetric: u64,
    pub min_degree_shape: u64,
}

impl EnumerationTally {
    fn merge(mut self, other: EnumerationTally) -> Self {
        self.total += other.total;
        for (k, v) in other.weights {
            *self.weights.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.perimeter {
            *self.perimeter.entry(k).or_insert(0) += v;
        }
        self.symmetric += other.symmetric;
        self.min_degree_shape += other.min_degree_shape;
        self
    }

    pub fn weight(&self, c: i64) -> u64 {
        self.weights.get(&c).copied().unwrap_or(0)
    }

    pub fn with_perimeter(&self, k: usize) -> u64 {
        self.perimeter.get(&k).copied().unwrap_or(0)
    }
}

/// Enumerates all of `M_n` in parallel rank chunks and tallies statistics.
pub fn tally(n: usize) -> Result<EnumerationTally> {
    let count = Ranker::new(n)?.count();
    let chunk = 8192u64;
    let even = n.is_multiple_of(2);
    let parts: Vec<EnumerationTally> = (0..count.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut t = EnumerationTally::default();
            for m in enumerate_range(n, c * chunk, ((c + 1) * chunk).min(count)).expect("valid range") {
                t.total += 1;
                if even {
                    *t.weights.entry(m.weight_unchecked()).or_insert(0) += 1;
                }
                *t.perimeter.entry(m.perimeter_count()).or_insert(0) += 1;
                t.symmetric += u64::from(m.is_centrally_symmetric());
                t.min_degree_shape += u64::from(has_min_degree_shape(&m));
            }
            t
        })
        .collect();
    Ok(parts.into_iter().fold(EnumerationTally::default(), EnumerationTally::merge))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountEntry {
    pub quantity: String,
    pub predicted: BigUint2,
    pub enumerated: BigUint2,
    pub matched: bool,
}

/// Predictions side by side with enumerated values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub entries: Vec<CountEntry>,
}

impl CountReport {
    pub fn new(n: usize) -> Self {
        CountReport { n, entries: Vec::new() }
    }

    pub fn push(&mut self, quantity: impl Into<String>, predicted: impl Into<BigUint>, enumerated: impl Into<BigUint>) {
        let (predicted, enumerated) = (predicted.into(), enumerated.into());
        self.entries.push(CountEntry {
            quantity: quantity.into(),
            matched: predicted == enumerated,
            predicted: predicted.into(),
            enumerated: enumerated.into(),
        });
    }

    pub fn all_match(&self) -> bool {
        self.entries.iter().all(|e| e.matched)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CountEntry> {
        self.entries.iter().filter(|e| !e.matched)
    }

    /// Aligned text table.
    pub fn to_table(&self) -> String {
        let w0 = self.entries.iter().map(|e| e.quantity.len()).max().unwrap_or(8).max(8);
        let w1 = self.entries.iter().map(|e| e.predicted.to_string().len()).max().unwrap_or(9).max(9);
        let w2 = self.entries.iter().map(|e| e.enumerated.to_string().len()).max().unwrap_or(10).max(10);
        let mut out = String::new();
        writeln!(out, "n = {}", self.n).unwrap();
        writeln!(out, "{:<w0$}  {:>w1$}  {:>w2$}  ok", "quantity", "predicted", "enumerated").unwrap();
        for e in &self.entries {
            let ok = if e.matched { "yes" } else { "NO" };
            writeln!(out, "{:<w0$}  {:>w1$}  {:>w2$}  {}", e.quantity, e.predicted, e.enumerated, ok).unwrap();
        }
        out
    }
}

/// Compares every closed form that depends only on the matchings of `M_n`
/// (no flip graph needed) against a full enumeration.
pub fn count_report(n: usize) -> Result<CountReport> {
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let t = tally(n)?;
    let ext = predicted_extremes(n)?;
    let mut report = CountReport::new(n);
    report.push("matchings (C_n)", catalan(n as u64), t.total);
    report.push("centrally symmetric matchings", ext.symmetric_count.0.clone(), t.symmetric);
    report.push("min-degree shaped matchings", ext.min_degree_count.0.clone(), t.min_degree_shape);
    if n % 2 == 1 {
        return Ok(report);
    }
    let top = (n - 2) as i64;
    // Weight 0 holds exactly the two all-perimeter matchings, one per class.
    report.push("|W(0)| + |W(0)^-|", narayana(1, n as u64, 1)?, t.weight(0));
    for c in (1..=top).flat_map(|c| [c, -c]) {
        report.push(format!("|W({c})|"), weight_class_size(n, c)?, t.weight(c));
    }
    let out_of_range: u64 = t.weights.iter().filter(|(w, _)| w.abs() > top).map(|(_, v)| v).sum();
    report.push("matchings with |w| > n-2", 0u32, out_of_range);
    for k in 2..=n {
        report.push(format!("|L({k})|"), perimeter_class_size(n, k)?, t.with_perimeter(k));
    }
    report.push("matchings with < 2 perimeter edges", 0u32, t.with_perimeter(0) + t.with_perimeter(1));
    for c in 1..=top {
        report.push(
            format!("|W({c}) u W(-{c})| = |L({})|", n as i64 - c),
            t.with_perimeter(n - c as usize),
            t.weight(c) + t.weight(-c),
        );
    }
    if top == 0 {
        return Ok(report);
    }
    // Classes closed under centered flips: weights c and c - (n-2).
    let mut class_total = 0u64;
    for c in 0..=top {
        let size = if c == 0 {
            1 + t.weight(-top)
        } else if c < top {
            t.weight(c) + t.weight(c - top)
        } else {
            t.weight(top) + 1
        };
        let predicted = if c == top {
            weight_class_size(n, top)? + 1u32
        } else {
            weight_class_size(n, c)? + weight_class_size(n, c - top)?
        };
        report.push(format!("|M({c})|"), predicted, size);
        class_total += size;
    }
    report.push("sum of class sizes", catalan(n as u64), class_total);
    Ok(report)
}
