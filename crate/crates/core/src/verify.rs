//! Structural checks of `H_n` and `G_n` against their closed forms.
//!
//! [`verify`] extends the enumeration-only [`count_report`] with every
//! prediction that needs the flip graph itself. Each entry is an exact
//! integer comparison; an invariant that must hold everywhere is reported as
//! a count of violations with prediction 0.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::counting::{
    binomial, catalan, count_report, has_min_degree_shape, narayana, predicted_extremes, CountReport,
};
use crate::error::Result;
use crate::flip::Mode;
use crate::graph::{
    build_graph_with_budget, connected_components, diameter, extreme_degree_vertices, is_bipartite, Distance, FlipGraph,
};

/// Known diameters of `H_n` for odd `n`.
pub const ODD_DIAMETERS: [(usize, u32); 4] = [(3, 2), (5, 8), (7, 14), (9, 20)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub mem_budget: u64,
    /// Largest `n` for which diameters are computed.
    pub diameter_limit: usize,
    /// Largest `n` for which `G_n` is built.
    pub all_flips_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mem_budget: crate::graph::DEFAULT_MEM_BUDGET, diameter_limit: 7, all_flips_limit: 8 }
    }
}

fn violations(flags: impl ParallelIterator<Item = bool>) -> u64 {
    flags.filter(|&bad| bad).count() as u64
}

/// Degree and min-degree-shape checks for `H_n`.
pub fn degree_checks(g: &FlipGraph, report: &mut CountReport) -> Result<()> {
    let n = g.n();
    let ext = predicted_extremes(n)?;
    let found = extreme_degree_vertices(g);
    report.push("max degree of H_n", ext.max_degree as u64, found.max_degree as u64);
    if let Some(count) = ext.max_degree_count {
        report.push("max-degree vertices", count, found.max_vertices.len() as u64);
    }
    report.push("min degree of H_n", ext.min_degree as u64, found.min_degree as u64);
    report.push("min-degree vertices", ext.min_degree_count.0.clone(), found.min_vertices.len() as u64);
    let unshaped = found.min_vertices.par_iter().filter(|&&v| !has_min_degree_shape(&g.matching(v))).count();
    report.push("min-degree vertices without the predicted shape", 0u32, unshaped as u64);
    if n % 2 == 1 {
        let bad = violations(
            (0..g.vertex_count() as u32).into_par_iter().map(|v| g.degree(v) != g.matching(v).visible_edges().len()),
        );
        report.push("vertices whose degree differs from visible edges", 0u32, bad);
    }
    Ok(())
}

/// Component structure of `H_n` for even `n`.
pub fn component_checks(g: &FlipGraph, report: &mut CountReport) -> Result<()> {
    let n = g.n();
    let comps = connected_components(g);
    if n % 2 == 1 {
        report.push("components of H_n", 1u32, comps.count() as u64);
        return Ok(());
    }
    let ext = predicted_extremes(n)?;
    report.push("components of H_n", ext.components.0.clone(), comps.count() as u64);
    let trees: Vec<usize> = (0..comps.count()).filter(|&c| comps.is_tree(c)).collect();
    report.push("tree components", catalan((n / 2) as u64), trees.len() as u64);
    let wrong_size = trees.iter().filter(|&&c| comps.sizes[c] != n / 2 + 1).count();
    report.push("tree components not of size n/2+1", 0u32, wrong_size as u64);
    let (mut sym_in_trees, mut asym_in_trees, mut sym_elsewhere) = (0u64, 0u64, 0u64);
    for v in 0..g.vertex_count() as u32 {
        let tree = comps.is_tree(comps.label[v as usize] as usize);
        match (g.matching(v).is_centrally_symmetric(), tree) {
            (true, true) => sym_in_trees += 1,
            (false, true) => asym_in_trees += 1,
            (true, false) => sym_elsewhere += 1,
            (false, false) => {}
        }
    }
    report.push("symmetric matchings in trees", binomial(n as u64, (n / 2) as u64), sym_in_trees);
    report.push("non-symmetric matchings in trees", 0u32, asym_in_trees);
    report.push("symmetric matchings outside trees", 0u32, sym_elsewhere);
    let bound = narayana(1, n as u64, (n / 2) as u64)?;
    let too_big = comps.sizes.iter().filter(|&&s| BigUint::from(s) > bound).count();
    report.push("components larger than N_1(n, n/2)", 0u32, too_big as u64);
    Ok(())
}

/// Weight change and alternation along centered flips (even `n`).
pub fn weight_checks(g: &FlipGraph, report: &mut CountReport) {
    let n = g.n();
    if n % 2 == 1 {
        return;
    }
    let step = (n - 2) as i64;
    if step == 0 {
        return;
    }
    let weights: Vec<i64> =
        (0..g.vertex_count() as u32).into_par_iter().map(|v| g.matching(v).weight_unchecked()).collect();
    let bad_step = violations(
        (0..g.vertex_count() as u32)
            .into_par_iter()
            .map(|u| g.neighbors(u).iter().any(|&v| (weights[v as usize] - weights[u as usize]).abs() != step)),
    );
    report.push("vertices with a flip not changing weight by n-2", 0u32, bad_step);
    // Two consecutive flips u -> v -> w must change the weight in opposite directions.
    let bad_alt = violations((0..g.vertex_count() as u32).into_par_iter().map(|v| {
        let wv = weights[v as usize];
        let nb = g.neighbors(v);
        nb.iter()
            .any(|&u| nb.iter().any(|&w| (wv - weights[u as usize]).signum() == (weights[w as usize] - wv).signum()))
    }));
    report.push("vertices where consecutive flips do not alternate", 0u32, bad_alt);
    let out_of_range = weights.iter().filter(|w| w.abs() > step).count();
    report.push("weights outside [-(n-2), n-2]", 0u32, out_of_range as u64);
}

fn distance_value(d: Distance) -> u64 {
    d.finite().map_or(u64::MAX, u64::from)
}

/// Runs every check available for `n` and returns the combined report.
pub fn verify(n: usize, opts: VerifyOptions) -> Result<CountReport> {
    let mut report = count_report(n)?;
    let h = build_graph_with_budget(n, Mode::Centered, opts.mem_budget)?;
    degree_checks(&h, &mut report)?;
    component_checks(&h, &mut report)?;
    weight_checks(&h, &mut report);
    if n <= opts.diameter_limit {
        if let Some(&(_, d)) = ODD_DIAMETERS.iter().find(|(m, _)| *m == n) {
            report.push("diameter of H_n", d, distance_value(diameter(&h)));
        }
    }
    if n <= opts.all_flips_limit {
        let g = build_graph_with_budget(n, Mode::All, opts.mem_budget)?;
        report.push("diameter of G_n", (n - 1) as u64, distance_value(diameter(&g)));
        report.push("G_n is bipartite (1 = yes)", 1u32, u64::from(is_bipartite(&g)));
        let not_centered_arcs = g.edges().filter(|&(_, _, c)| !c).count();
        let h_edges = h.edge_count();
        report.push("centered flips in G_n", h_edges as u64, (g.edge_count() - not_centered_arcs) as u64);
    }
    Ok(report)
}
