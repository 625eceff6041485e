//! Materialized flip graphs over rank ids.
//!
//! Vertices are Dyck ranks `0..C_n`. Adjacency is stored in compressed sparse
//! row form with neighbor lists sorted by rank, so a graph built twice is
//! identical arc for arc.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyck::{enumerate_range, to_dyck, Ranker};
use crate::error::{Error, Result};
use crate::flip::{flips_in_mode, Mode};
use crate::matching::Matching;

/// Default memory budget for graph construction: 4 GiB.
pub const DEFAULT_MEM_BUDGET: u64 = 4 << 30;

/// Graphs with at most this many vertices get an exact all-pairs diameter.
pub const EXACT_DIAMETER_LIMIT: usize = 100_000;

#[derive(Clone, Debug)]
pub struct FlipGraph {
    n: usize,
    mode: Mode,
    ranker: Ranker,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    centered: Vec<bool>,
}

/// Upper bound on the bytes [`build_graph`] will allocate.
pub fn estimated_bytes(n: usize, mode: Mode) -> Result<u64> {
    let vertices = Ranker::new(n)?.count();
    let max_degree = match mode {
        Mode::Centered => n as u64,
        Mode::All => (n * n.saturating_sub(1) / 2) as u64,
    };
    let offsets = (vertices + 1).saturating_mul(8);
    let arcs = vertices.saturating_mul(max_degree).saturating_mul(5);
    Ok(offsets.saturating_add(arcs))
}

pub fn build_graph(n: usize, mode: Mode) -> Result<FlipGraph> {
    build_graph_with_budget(n, mode, DEFAULT_MEM_BUDGET)
}

pub fn build_graph_with_budget(n: usize, mode: Mode, budget: u64) -> Result<FlipGraph> {
    if n < 2 {
        return Err(Error::TooSmall { n, min: 2 });
    }
    let needed = estimated_bytes(n, mode)?;
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let ranker = Ranker::new(n)?;
    let count = ranker.count();
    if count > u64::from(u32::MAX) {
        return Err(Error::TooLarge(n));
    }
    let chunk = 4096u64;
    let chunks: Vec<(u64, u64)> =
        (0..count.div_ceil(chunk)).map(|c| (c * chunk, ((c + 1) * chunk).min(count))).collect();
    let parts: Vec<(Vec<u32>, Vec<u32>, Vec<bool>)> = chunks
        .par_iter()
        .map(|&(start, end)| {
            let mut degrees = Vec::with_capacity((end - start) as usize);
            let mut targets = Vec::new();
            let mut centered = Vec::new();
            for m in enumerate_range(n, start, end).expect("valid range") {
                let mut arcs: Vec<(u32, bool)> = flips_in_mode(&m, mode)
                    .iter()
                    .map(|f| (ranker.rank_partners(crate::flip::apply_unchecked(&m, f).partners()) as u32, f.centered))
                    .collect();
                arcs.sort_unstable();
                degrees.push(arcs.len() as u32);
                for (t, c) in arcs {
                    targets.push(t);
                    centered.push(c);
                }
            }
            (degrees, targets, centered)
        })
        .collect();

    let mut offsets = Vec::with_capacity(count as usize + 1);
    offsets.push(0usize);
    let total: usize = parts.iter().map(|p| p.1.len()).sum();
    let mut targets = Vec::with_capacity(total);
    let mut centered = Vec::with_capacity(total);
    for (degrees, t, c) in parts {
        for d in degrees {
            let last = *offsets.last().expect("non-empty");
            offsets.push(last + d as usize);
        }
        targets.extend(t);
        centered.extend(c);
    }
    Ok(FlipGraph { n, mode, ranker, offsets, targets, centered })
}

impl FlipGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Directed arcs; each undirected edge counts twice.
    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Centered flags aligned with [`FlipGraph::neighbors`].
    pub fn centered_flags(&self, v: u32) -> &[bool] {
        let v = v as usize;
        &self.centered[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn matching(&self, v: u32) -> Matching {
        self.ranker.unrank(u64::from(v)).expect("vertex in range")
    }

    pub fn vertex_of(&self, m: &Matching) -> Option<u32> {
        (m.n() == self.n).then(|| self.ranker.rank(m) as u32)
    }

    pub fn ranker(&self) -> &Ranker {
        &self.ranker
    }

    /// Undirected edges `(u, v, centered)` with `u < v`, in rank order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, bool)> + '_ {
        (0..self.vertex_count() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .zip(self.centered_flags(u))
                .filter(move |(&v, _)| v > u)
                .map(move |(&v, &c)| (u, v, c))
        })
    }

    /// The subgraph of centered arcs, in centered mode.
    pub fn centered_subgraph(&self) -> FlipGraph {
        let mut offsets = Vec::with_capacity(self.offsets.len());
        offsets.push(0);
        let mut targets = Vec::new();
        for u in 0..self.vertex_count() as u32 {
            for (&v, &c) in self.neighbors(u).iter().zip(self.centered_flags(u)) {
                if c {
                    targets.push(v);
                }
            }
            offsets.push(targets.len());
        }
        let centered = vec![true; targets.len()];
        FlipGraph { n: self.n, mode: Mode::Centered, ranker: self.ranker.clone(), offsets, targets, centered }
    }
}

/// `degree -> number of vertices`.
pub fn degrees(g: &FlipGraph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for v in 0..g.vertex_count() as u32 {
        *hist.entry(g.degree(v)).or_insert(0) += 1;
    }
    hist
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeExtremes {
    pub min_degree: usize,
    pub min_vertices: Vec<u32>,
    pub max_degree: usize,
    pub max_vertices: Vec<u32>,
}

pub fn extreme_degree_vertices(g: &FlipGraph) -> DegreeExtremes {
    let all = 0..g.vertex_count() as u32;
    let min_degree = all.clone().map(|v| g.degree(v)).min().unwrap_or(0);
    let max_degree = all.clone().map(|v| g.degree(v)).max().unwrap_or(0);
    DegreeExtremes {
        min_degree,
        min_vertices: all.clone().filter(|&v| g.degree(v) == min_degree).collect(),
        max_degree,
        max_vertices: all.filter(|&v| g.degree(v) == max_degree).collect(),
    }
}

/// Connected-component labeling.
#[derive(Clone, Debug)]
pub struct Components {
    /// Component id per vertex; ids are assigned in order of smallest rank.
    pub label: Vec<u32>,
    pub sizes: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_tree(&self, c: usize) -> bool {
        self.edges[c] + 1 == self.sizes[c]
    }

    pub fn members(&self, c: usize) -> Vec<u32> {
        self.label.iter().enumerate().filter(|(_, &l)| l as usize == c).map(|(v, _)| v as u32).collect()
    }
}

pub fn connected_components(g: &FlipGraph) -> Components {
    let v_count = g.vertex_count();
    let mut label = vec![u32::MAX; v_count];
    let mut sizes = Vec::new();
    let mut edges = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..v_count {
        if label[s] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        label[s] = id;
        queue.push_back(s as u32);
        let (mut size, mut arcs) = (0usize, 0usize);
        while let Some(u) = queue.pop_front() {
            size += 1;
            arcs += g.degree(u);
            for &v in g.neighbors(u) {
                if label[v as usize] == u32::MAX {
                    label[v as usize] = id;
                    queue.push_back(v);
                }
            }
        }
        sizes.push(size);
        edges.push(arcs / 2);
    }
    Components { label, sizes, edges }
}

/// Histogram entry of a weight multiset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCount {
    pub weight: i64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub id: usize,
    /// Smallest rank in the component.
    pub representative: u32,
    pub representative_dyck: String,
    pub size: usize,
    pub edges: usize,
    pub is_tree: bool,
    /// Sorted weight multiset as a histogram; even `n` only.
    pub weights: Option<Vec<WeightCount>>,
    pub contains_symmetric: bool,
    pub symmetric_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub n: usize,
    pub mode: Mode,
    pub vertex_count: usize,
    pub component_count: usize,
    pub tree_count: usize,
    pub max_component_size: usize,
    pub components: Vec<ComponentSummary>,
}

pub fn components(g: &FlipGraph) -> ComponentReport {
    let comps = connected_components(g);
    let n = g.n();
    let count = comps.count();
    let mut weights: Vec<BTreeMap<i64, usize>> = vec![BTreeMap::new(); count];
    let mut symmetric = vec![0usize; count];
    let mut representative = vec![u32::MAX; count];
    let per_vertex: Vec<(Option<i64>, bool)> = (0..g.vertex_count() as u32)
        .into_par_iter()
        .map(|v| {
            let m = g.matching(v);
            let w = n.is_multiple_of(2).then(|| m.weight_unchecked());
            (w, m.is_centrally_symmetric())
        })
        .collect();
    for (v, (w, sym)) in per_vertex.into_iter().enumerate() {
        let c = comps.label[v] as usize;
        if representative[c] == u32::MAX {
            representative[c] = v as u32;
        }
        if let Some(w) = w {
            *weights[c].entry(w).or_insert(0) += 1;
        }
        symmetric[c] += usize::from(sym);
    }
    let summaries: Vec<ComponentSummary> = (0..count)
        .map(|c| ComponentSummary {
            id: c,
            representative: representative[c],
            representative_dyck: to_dyck(&g.matching(representative[c])).to_string(),
            size: comps.sizes[c],
            edges: comps.edges[c],
            is_tree: comps.is_tree(c),
            weights: n
                .is_multiple_of(2)
                .then(|| weights[c].iter().map(|(&weight, &count)| WeightCount { weight, count }).collect()),
            contains_symmetric: symmetric[c] > 0,
            symmetric_count: symmetric[c],
        })
        .collect();
    ComponentReport {
        n,
        mode: g.mode(),
        vertex_count: g.vertex_count(),
        component_count: count,
        tree_count: summaries.iter().filter(|s| s.is_tree).count(),
        max_component_size: comps.sizes.iter().copied().max().unwrap_or(0),
        components: summaries,
    }
}

/// A hop count, or the marker for "no path".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => f.pad(&d.to_string()),
            Distance::Infinite => f.pad("∞"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u32(*d),
            Distance::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Hop distances from `src`; `u32::MAX` marks unreachable vertices.
pub fn bfs_distances(g: &FlipGraph, src: u32) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[src as usize] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &v in g.neighbors(u) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Vertices grouped by distance from `src`.
pub fn bfs_layers(g: &FlipGraph, src: u32) -> Vec<Vec<u32>> {
    let dist = bfs_distances(g, src);
    let mut layers: Vec<Vec<u32>> = Vec::new();
    for (v, &d) in dist.iter().enumerate() {
        if d == u32::MAX {
            continue;
        }
        let d = d as usize;
        if layers.len() <= d {
            layers.resize(d + 1, Vec::new());
        }
        layers[d].push(v as u32);
    }
    layers
}

pub fn bfs_distance(g: &FlipGraph, u: u32, v: u32) -> Distance {
    match bfs_distances(g, u)[v as usize] {
        u32::MAX => Distance::Infinite,
        d => Distance::Finite(d),
    }
}

/// Largest distance from `u`; infinite if some vertex is unreachable.
pub fn eccentricity(g: &FlipGraph, u: u32) -> Distance {
    let dist = bfs_distances(g, u);
    match dist.iter().copied().max() {
        Some(u32::MAX) | None => Distance::Infinite,
        Some(d) => Distance::Finite(d),
    }
}

/// Exact diameter by a parallel BFS from every vertex.
pub fn diameter(g: &FlipGraph) -> Distance {
    if g.vertex_count() == 0 {
        return Distance::Finite(0);
    }
    if eccentricity(g, 0) == Distance::Infinite {
        return Distance::Infinite;
    }
    let d = (0..g.vertex_count() as u32)
        .into_par_iter()
        .map(|v| bfs_distances(g, v).into_iter().max().unwrap_or(0))
        .max()
        .unwrap_or(0);
    Distance::Finite(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DiameterReport {
    Exact {
        diameter: Distance,
    },
    /// Not an exact diameter: eccentricities of the two all-perimeter
    /// matchings and the best eccentricity among sampled vertices.
    Estimate {
        perimeter_eccentricities: [Distance; 2],
        sampled_lower_bound: Distance,
        samples: usize,
        seed: u64,
    },
}

/// Exact diameter up to `exact_limit` vertices, otherwise a lower-bound estimate.
pub fn diameter_report(g: &FlipGraph, exact_limit: usize, samples: usize, seed: u64) -> DiameterReport {
    if g.vertex_count() <= exact_limit {
        return DiameterReport::Exact { diameter: diameter(g) };
    }
    let n = g.n();
    let ends = [Matching::perimeter(n), Matching::perimeter_shifted(n)]
        .map(|m| eccentricity(g, g.vertex_of(&m).expect("same n")));
    if ends.contains(&Distance::Infinite) {
        return DiameterReport::Exact { diameter: Distance::Infinite };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sources: Vec<u32> = (0..samples).map(|_| rng.gen_range(0..g.vertex_count() as u32)).collect();
    let sampled = sources.par_iter().map(|&v| eccentricity(g, v)).max().unwrap_or(Distance::Finite(0));
    let best = sampled.max(ends[0]).max(ends[1]);
    DiameterReport::Estimate { perimeter_eccentricities: ends, sampled_lower_bound: best, samples, seed }
}

pub fn is_bipartite(g: &FlipGraph) -> bool {
    let mut color = vec![u8::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    for s in 0..g.vertex_count() {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s as u32);
        while let Some(u) = queue.pop_front() {
            let cu = color[u as usize];
            for &v in g.neighbors(u) {
                match color[v as usize] {
                    u8::MAX => {
                        color[v as usize] = 1 - cu;
                        queue.push_back(v);
                    }
                    c if c == cu => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Graphviz export; vertices are labeled by Dyck word. In `all` mode
/// non-centered edges are dashed.
pub fn to_dot(g: &FlipGraph) -> String {
    let mut out = String::new();
    let name = match g.mode() {
        Mode::All => "G",
        Mode::Centered => "H",
    };
    writeln!(out, "graph {}{} {{", name, g.n()).unwrap();
    for v in 0..g.vertex_count() as u32 {
        writeln!(out, "  {} [label=\"{}\"];", v, to_dyck(&g.matching(v))).unwrap();
    }
    for (u, v, c) in g.edges() {
        let style = if c { "solid" } else { "dashed" };
        writeln!(out, "  {u} -- {v} [style={style}];").unwrap();
    }
    out.push_str("}\n");
    out
}

/// `src_rank,dst_rank,centered` with a header line, one row per undirected edge.
pub fn to_csv(g: &FlipGraph) -> String {
    let mut out = String::from("src_rank,dst_rank,centered\n");
    for (u, v, c) in g.edges() {
        writeln!(out, "{u},{v},{c}").unwrap();
    }
    out
}

pub fn parse_csv(s: &str) -> Result<Vec<(u32, u32, bool)>> {
    let mut out = Vec::new();
    for (i, line) in s.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line.starts_with("src_rank")) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse(format!("line {}: expected 3 fields", i + 1)));
        }
        let num = |t: &str| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)));
        let flag = fields[2].trim().parse::<bool>().map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        out.push((num(fields[0])?, num(fields[1])?, flag));
    }
    Ok(out)
}

/// Reads the edge lines written by [`to_dot`].
pub fn parse_dot(s: &str) -> Result<Vec<(u32, u32, bool)>> {
    let mut out = Vec::new();
    for line in s.lines() {
        let Some((lhs, rest)) = line.trim().split_once(" -- ") else { continue };
        let (rhs, attrs) = rest.split_once(' ').unwrap_or((rest.trim_end_matches(';'), ""));
        let num = |t: &str| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("`{line}`: {e}")));
        let centered = !attrs.contains("dashed");
        out.push((num(lhs)?, num(rhs.trim_end_matches(';'))?, centered));
    }
    Ok(out)
}

#[derive(Serialize)]
struct JsonVertex {
    rank: u32,
    dyck: String,
    pairs: String,
    neighbors: Vec<u32>,
}

#[derive(Serialize)]
struct JsonGraph {
    n: usize,
    mode: Mode,
    vertex_count: usize,
    edge_count: usize,
    vertices: Vec<JsonVertex>,
}

pub fn to_json(g: &FlipGraph) -> String {
    let vertices = (0..g.vertex_count() as u32)
        .map(|v| {
            let m = g.matching(v);
            JsonVertex {
                rank: v,
                dyck: to_dyck(&m).to_string(),
                pairs: m.to_string(),
                neighbors: g.neighbors(v).to_vec(),
            }
        })
        .collect();
    let doc =
        JsonGraph { n: g.n(), mode: g.mode(), vertex_count: g.vertex_count(), edge_count: g.edge_count(), vertices };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let g3 = build_graph(3, Mode::All).unwrap();
        assert_eq!(g3.vertex_count(), 5);
        let h3 = build_graph(3, Mode::Centered).unwrap();
        assert_eq!(connected_components(&h3).count(), 1);
        let h4 = build_graph(4, Mode::Centered).unwrap();
        assert_eq!(h4.vertex_count(), 14);
        assert_eq!(connected_components(&h4).count(), 3);
    }

    #[test]
    fn adjacency_is_symmetric_without_loops() {
        let g = build_graph(6, Mode::All).unwrap();
        for u in 0..g.vertex_count() as u32 {
            let nb = g.neighbors(u);
            assert!(nb.windows(2).all(|w| w[0] < w[1]));
            for (&v, &c) in nb.iter().zip(g.centered_flags(u)) {
                assert_ne!(u, v);
                let back = g.neighbors(v).binary_search(&u).expect("symmetric");
                assert_eq!(g.centered_flags(v)[back], c);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(build_graph_with_budget(8, Mode::All, 1000), Err(Error::Budget { .. })));
        assert!(matches!(build_graph(1, Mode::All), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn distances() {
        let h5 = build_graph(5, Mode::Centered).unwrap();
        assert_eq!(diameter(&h5), Distance::Finite(8));
        let h4 = build_graph(4, Mode::Centered).unwrap();
        assert_eq!(diameter(&h4), Distance::Infinite);
        assert_eq!(Distance::Infinite.to_string(), "∞");
        let a = h5.vertex_of(&Matching::perimeter(5)).unwrap();
        let b = h5.vertex_of(&Matching::perimeter_shifted(5)).unwrap();
        assert_eq!(bfs_distance(&h5, a, b), Distance::Finite(8));
        assert_eq!(bfs_layers(&h5, a).len(), 9);
    }

    #[test]
    fn exports_round_trip() {
        let g = build_graph(4, Mode::All).unwrap();
        let dot = parse_dot(&to_dot(&g)).unwrap();
        let csv = parse_csv(&to_csv(&g)).unwrap();
        assert_eq!(dot, csv);
        assert_eq!(dot.len(), g.edge_count());
        assert!(dot.iter().any(|e| !e.2));
    }
}
