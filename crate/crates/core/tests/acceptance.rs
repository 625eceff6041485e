//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use matchflip::counting::{binomial, count_report, narayana, perimeter_class_size, weight_class_size};
use matchflip::dyck::{bits_to_symmetric, segment_to_dyck, symmetric_to_bits, DyckWords};
use matchflip::flip::{flips, Mode};
use matchflip::graph::{build_graph, connected_components, diameter, is_bipartite, Distance};
use matchflip::rainbow::{certificate, nonexistence_bound, Certificate};
use matchflip::verify::{component_checks, degree_checks, weight_checks};
use matchflip::{
    canonical_flip_sequence, catalan, enumerate_matchings, find_rainbow_cycle, from_dyck, perimeter_swap_path, replay,
    to_dyck, verify_rainbow, CountReport, Matching, RainbowOutcome, SearchOptions,
};
use num_bigint::BigUint;
use num_rational::BigRational;

type Check = Result<String, String>;
type Criterion = (&'static str, Box<dyn Fn() -> Check>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report_ok(r: &CountReport) -> Result<(), String> {
    match r.mismatches().next() {
        None => Ok(()),
        Some(e) => Err(format!("n={}: {} predicted {} got {}", r.n, e.quantity, e.predicted, e.enumerated)),
    }
}

fn enumeration() -> Check {
    let table = common::catalan_table(12);
    for (n, &want) in table.iter().enumerate().skip(2) {
        let start = Instant::now();
        let count = enumerate_matchings(n).count() as u128;
        let took = start.elapsed();
        ensure(count == want, || format!("n={n}: {count} != {want}"))?;
        if n == 12 {
            ensure(took < Duration::from_secs(10), || format!("n=12 took {took:?}"))?;
            return Ok(format!("C_12 = {count} in {:.2}s", took.as_secs_f64()));
        }
    }
    unreachable!()
}

fn degrees(ns: &[usize]) -> Check {
    for &n in ns {
        let g = build_graph(n, Mode::Centered).map_err(|e| e.to_string())?;
        let mut r = CountReport::new(n);
        degree_checks(&g, &mut r).map_err(|e| e.to_string())?;
        report_ok(&r)?;
        // Independent recount of the min-degree population.
        let c = common::catalan_table(n);
        let half = if n % 2 == 1 { (n - 3) / 2 } else { (n - 2) / 2 };
        let want = n as u128 * c[half] * c[half];
        let min = (0..g.vertex_count() as u32).map(|v| g.degree(v)).min().unwrap();
        let got = (0..g.vertex_count() as u32).filter(|&v| g.degree(v) == min).count() as u128;
        ensure(got == want, || format!("n={n}: {got} min-degree vertices, expected {want}"))?;
    }
    Ok(format!("n in {ns:?}"))
}

fn connectivity() -> Check {
    let expected = [(3, 2), (5, 8), (7, 14), (9, 20)];
    for (n, d) in expected {
        let g = build_graph(n, Mode::Centered).map_err(|e| e.to_string())?;
        ensure(connected_components(&g).count() == 1, || format!("H_{n} disconnected"))?;
        let got = diameter(&g);
        ensure(got == Distance::Finite(d), || format!("diam(H_{n}) = {got}, expected {d}"))?;
    }
    for n in 3..=8 {
        let g = build_graph(n, Mode::All).map_err(|e| e.to_string())?;
        let got = diameter(&g);
        ensure(got == Distance::Finite(n as u32 - 1), || format!("diam(G_{n}) = {got}"))?;
        ensure(is_bipartite(&g), || format!("G_{n} not bipartite"))?;
    }
    for n in [2, 4] {
        let g = build_graph(n, Mode::All).map_err(|e| e.to_string())?;
        ensure(is_bipartite(&g), || format!("G_{n} not bipartite"))?;
    }
    Ok("H_3..H_9 diameters 2, 8, 14, 20; G_3..G_8 diameter n-1 and bipartite".into())
}

fn constructive_paths() -> Check {
    let mut longest = 0;
    for n in [3, 5, 7] {
        let ends = [Matching::perimeter(n), Matching::perimeter_shifted(n)];
        for m in enumerate_matchings(n) {
            let seq = canonical_flip_sequence(&m).map_err(|e| format!("{m}: {e}"))?;
            ensure(seq.len() <= 4 * n - 11, || format!("{m}: {} flips > 4n-11", seq.len()))?;
            let states = replay(&m, &seq.flips).map_err(|e| format!("{m}: {e}"))?;
            ensure(seq.flips.iter().all(|f| f.centered), || format!("{m}: non-centered flip"))?;
            ensure(ends.contains(states.last().unwrap()), || format!("{m}: ends at {}", states.last().unwrap()))?;
            longest = longest.max(seq.len());
        }
    }
    for n in (3..=11).step_by(2) {
        let path = perimeter_swap_path(n).map_err(|e| e.to_string())?;
        ensure(path.len() == 3 * n - 7, || format!("n={n}: swap path has {} flips", path.len()))?;
        let states = replay(&Matching::perimeter(n), &path).map_err(|e| e.to_string())?;
        ensure(*states.last().unwrap() == Matching::perimeter_shifted(n), || format!("n={n}: wrong swap endpoint"))?;
        ensure(path.iter().all(|f| f.centered), || format!("n={n}: non-centered swap flip"))?;
    }
    Ok(format!("longest canonical sequence for n <= 7: {longest}; swap paths 3n-7 for n <= 11"))
}

fn component_structure() -> Check {
    for n in (2..=12).step_by(2) {
        let g = build_graph(n, Mode::Centered).map_err(|e| e.to_string())?;
        let mut r = CountReport::new(n);
        component_checks(&g, &mut r).map_err(|e| e.to_string())?;
        report_ok(&r)?;
        let c = common::catalan_table(n);
        let comps = connected_components(&g);
        if n >= 4 {
            let want = c[n / 2] + n as u128 - 3;
            ensure(comps.count() as u128 == want, || format!("n={n}: {} components, expected {want}", comps.count()))?;
        }
    }
    Ok("n = 2..12".into())
}

fn weights() -> Check {
    for n in (2..=10).step_by(2) {
        let g = build_graph(n, Mode::Centered).map_err(|e| e.to_string())?;
        let mut r = CountReport::new(n);
        weight_checks(&g, &mut r);
        report_ok(&r)?;
        // Walks of length 3: w1 - w0, w2 - w1, w3 - w2 alternate in sign.
        let w: Vec<i64> = (0..g.vertex_count() as u32).map(|v| g.matching(v).weight().unwrap()).collect();
        for a in 0..g.vertex_count() as u32 {
            for &b in g.neighbors(a) {
                for &c in g.neighbors(b) {
                    for &d in g.neighbors(c) {
                        let steps = [
                            w[b as usize] - w[a as usize],
                            w[c as usize] - w[b as usize],
                            w[d as usize] - w[c as usize],
                        ];
                        let ok = steps.iter().all(|s| s.abs() == n as i64 - 2)
                            && (n == 2 || (steps[0] == -steps[1] && steps[1] == -steps[2]));
                        ensure(ok, || format!("n={n}: walk {a} {b} {c} {d} has steps {steps:?}"))?;
                    }
                }
            }
        }
        report_ok(&count_report(n).map_err(|e| e.to_string())?)?;
        // Independent tallies against the lattice-path oracle.
        let mut by_weight = std::collections::BTreeMap::<i64, u128>::new();
        let mut by_perimeter = std::collections::BTreeMap::<usize, u128>::new();
        for m in enumerate_matchings(n) {
            *by_weight.entry(m.weight().unwrap()).or_default() += 1;
            *by_perimeter.entry(m.perimeter_count()).or_default() += 1;
        }
        for c in -(n as i64 - 2)..=(n as i64 - 2) {
            let oracle = common::lattice_paths_with_peaks(n, n - 1, c.unsigned_abs() as usize + 1);
            let got = by_weight.get(&c).copied().unwrap_or(0);
            // Weight 0 holds both all-perimeter matchings.
            let want = if c == 0 { oracle } else { oracle / 2 };
            ensure(got == want, || format!("n={n}: |W({c})| = {got}, expected {want}"))?;
            ensure(weight_class_size(n, c).unwrap() == BigUint::from(oracle / 2), || {
                format!("n={n}: weight_class_size({c}) disagrees with the oracle")
            })?;
        }
        for k in 2..=n {
            let oracle = common::lattice_paths_with_peaks(n, n - 1, n - k + 1);
            let got = by_perimeter.get(&k).copied().unwrap_or(0);
            ensure(got == oracle, || format!("n={n}: |L({k})| = {got}, expected {oracle}"))?;
            ensure(perimeter_class_size(n, k).unwrap() == BigUint::from(oracle), || format!("n={n}: L({k})"))?;
        }
    }
    Ok("even n <= 10".into())
}

fn bijections() -> Check {
    for n in 1..=10 {
        for m in enumerate_matchings(n) {
            let back = from_dyck(&to_dyck(&m)).map_err(|e| e.to_string())?;
            ensure(back == m, || format!("dyck round trip failed for {m}"))?;
        }
    }
    for n in (2..=10).step_by(2) {
        let symmetric: Vec<Matching> = enumerate_matchings(n).filter(|m| m.is_centrally_symmetric()).collect();
        ensure(symmetric.len() as u128 == common::binom(n, n / 2), || format!("n={n}: |S_n| = {}", symmetric.len()))?;
        let mut codes = std::collections::BTreeSet::new();
        for m in &symmetric {
            let bits = symmetric_to_bits(m).map_err(|e| e.to_string())?;
            ensure(bits_to_symmetric(&bits).map_err(|e| e.to_string())? == *m, || format!("{m}: round trip"))?;
            codes.insert(bits);
        }
        ensure(codes.len() == symmetric.len(), || format!("n={n}: codes not distinct"))?;
    }
    for n in (3..=9).step_by(2) {
        let c = common::catalan_table(n);
        let got = enumerate_matchings(n).filter(|m| m.is_centrally_symmetric()).count() as u128;
        ensure(got == n as u128 * c[(n - 1) / 2], || format!("n={n}: {got} symmetric matchings"))?;
    }
    for n in 1..=12 {
        let mut band = vec![0u128; n + 2];
        let mut peaks = vec![0u128; n + 2];
        for p in DyckWords::new(n) {
            band[p.band_weight()] += 1;
            peaks[p.peaks()] += 1;
        }
        for k in 1..=n {
            let oracle = common::lattice_paths_with_peaks(n, n, k);
            ensure(band[k] == oracle && peaks[n - k + 1] == oracle, || {
                format!("n={n}, k={k}: band {} peaks {} oracle {oracle}", band[k], peaks[n - k + 1])
            })?;
        }
    }
    for n in (2..=8).step_by(2) {
        for m in enumerate_matchings(n) {
            let w = m.weight().unwrap();
            if w == 0 {
                continue;
            }
            // Negative weights are checked on the rotated matching.
            let m = if w > 0 { m } else { m.rotate(1) };
            for e in m.visible_edges() {
                let seg = m.segment(e).map_err(|e| e.to_string())?;
                let path = segment_to_dyck(&m, e).map_err(|e| e.to_string())?;
                let sw = seg.weight().unwrap();
                ensure(sw == path.band_weight() as i64, || {
                    format!("{m}, {e}: w(M_e) = {sw}, band {}", path.band_weight())
                })?;
                ensure(matchflip::matching::sign(n, e).unwrap().value() > 0, || format!("{m}: {e} not positive"))?;
            }
        }
    }
    Ok("dyck n <= 10, symmetric n <= 10, band/peaks n <= 12, segments n <= 8".into())
}

fn rainbow() -> Check {
    let opts = SearchOptions::default();
    let found = |n: usize, r: usize| -> Result<usize, String> {
        match find_rainbow_cycle(n, r, opts).map_err(|e| e.to_string())? {
            RainbowOutcome::Found { cycle, .. } => {
                verify_rainbow(&cycle.start, &cycle.flips, r).map_err(|v| format!("n={n} r={r}: {v}"))?;
                Ok(cycle.len())
            }
            other => Err(format!("n={n} r={r}: {other:?}")),
        }
    };
    ensure(found(4, 1)? == 8, || "n=4 cycle length".into())?;
    let exhaustive = SearchOptions { exhaustive: true, ..opts };
    for n in [3, 5, 6] {
        match find_rainbow_cycle(n, 1, exhaustive).map_err(|e| e.to_string())? {
            RainbowOutcome::None { certificate: Certificate::Exhaustive { .. } } => {}
            other => return Err(format!("n={n} r=1: {other:?}")),
        }
    }
    let start = Instant::now();
    ensure(found(6, 2)? == 36, || "n=6 r=2 cycle length".into())?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(3600), || format!("n=6 r=2 took {took:?}"))?;
    let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    ensure(nonexistence_bound(6).unwrap() == q(10, 3), || "threshold n=6".into())?;
    ensure(nonexistence_bound(8).unwrap() == q(35, 2), || "threshold n=8".into())?;
    for (n, r) in [(6, 4), (6, 10), (8, 18), (8, 40)] {
        ensure(matches!(certificate(n, r), Some(Certificate::ComponentBound { .. })), || format!("n={n} r={r}"))?;
        match find_rainbow_cycle(n, r, opts).map_err(|e| e.to_string())? {
            RainbowOutcome::None { certificate: Certificate::ComponentBound { .. } } => {}
            other => return Err(format!("n={n} r={r}: {other:?}")),
        }
    }
    for (n, r) in [(6, 3), (8, 17)] {
        ensure(certificate(n, r).is_none(), || format!("n={n} r={r} wrongly certified"))?;
    }
    Ok(format!("H_4 r=1 length 8; none for n=3,5,6 r=1; H_6 r=2 length 36 in {:.1}s", took.as_secs_f64()))
}

fn oracle_agreement() -> Check {
    let mut checked = 0u64;
    for n in 2..=8 {
        for m in enumerate_matchings(n) {
            for f in flips(&m) {
                let labels = [f.removed[0].a(), f.removed[0].b(), f.removed[1].a(), f.removed[1].b()];
                let geometric = common::geometry::quadrilateral_contains_center(n, labels);
                ensure(geometric == f.centered, || format!("n={n}, {m}: flip {f} geometric {geometric}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} flips"))
}

fn counts_sanity() -> Result<(), String> {
    ensure(catalan(12) == BigUint::from(208_012u32), || "catalan".into())?;
    ensure(narayana(1, 6, 3).unwrap() == BigUint::from(60u32), || "narayana".into())?;
    ensure(binomial(10, 5) == BigUint::from(252u32), || "binomial".into())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("enumeration", Box::new(enumeration)),
        ("degrees, odd n", Box::new(|| degrees(&[3, 5, 7, 9]))),
        ("degrees, even n", Box::new(|| degrees(&[2, 4, 6, 8, 10]))),
        ("connectivity and diameter", Box::new(connectivity)),
        ("constructive paths", Box::new(constructive_paths)),
        ("component structure", Box::new(component_structure)),
        ("weights", Box::new(weights)),
        ("bijections", Box::new(bijections)),
        ("rainbow cycles", Box::new(rainbow)),
        ("oracle agreement", Box::new(oracle_agreement)),
    ];
    let mut failed = 0;
    if let Err(e) = counts_sanity() {
        println!("sanity FAIL: {e}");
        failed += 1;
    }
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
