//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a prediction did not
//! match, 3 search budget exhausted, 4 resource limit (memory, size, I/O).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::counting::{count_report, CountReport};
use crate::dyck::{enumerate_matchings, to_dyck};
use crate::error::Error;
use crate::flip::Mode;
use crate::graph::{
    build_graph_with_budget, components, degrees, diameter_report, extreme_degree_vertices, to_csv, to_dot, to_json,
    DiameterReport, DEFAULT_MEM_BUDGET, EXACT_DIAMETER_LIMIT,
};
use crate::matching::Matching;
use crate::paths::{canonical_flip_sequence, perimeter_swap_path};
use crate::rainbow::{find_rainbow_cycle, RainbowOutcome, SearchOptions, DEFAULT_SEARCH_BUDGET};
use crate::verify::{verify, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "matchflip", version, about = "Flip graphs of non-crossing perfect matchings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Number of chords (2n points on the circle).
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=127))]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = Mode::Centered)]
    pub mode: Mode,
    /// Output format; each command has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: all cores).
    #[arg(long, env = "MATCHFLIP_THREADS")]
    pub threads: Option<usize>,
    /// Memory budget for graph construction, in bytes.
    #[arg(long, default_value_t = DEFAULT_MEM_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub mem_budget: u64,
    /// Search budget in DFS node expansions.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub search_budget: u64,
    /// Seed for sampled diameter estimates.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn n(&self) -> usize {
        self.n as usize
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every matching as a pair list and Dyck word.
    Enumerate(RunConfig),
    /// Export the flip graph.
    Graph(RunConfig),
    /// Degree histogram, degree extremes and components.
    Stats(RunConfig),
    /// Diameter, or the infinity marker for disconnected graphs.
    Diameter {
        #[command(flatten)]
        config: RunConfig,
        /// Above this many vertices, report a sampled lower bound instead.
        #[arg(long, default_value_t = EXACT_DIAMETER_LIMIT)]
        exact_limit: usize,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Closed-form counts next to enumerated values.
    Counts(RunConfig),
    /// Search for an r-rainbow cycle in H_n.
    Rainbow {
        #[command(flatten)]
        config: RunConfig,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=255))]
        r: u64,
        /// Search even when a closed-form certificate settles the question.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Every count and structural prediction for one n.
    Verify(RunConfig),
    /// Centered flip path from a matching to an all-perimeter matching (odd n).
    Path {
        #[command(flatten)]
        config: RunConfig,
        /// Start matching as pairs ("1-2,3-4,...") or a Dyck word; default: the swap path.
        #[arg(long)]
        from: Option<String>,
    },
}

impl Command {
    fn config(&self) -> &RunConfig {
        match self {
            Command::Enumerate(c) | Command::Graph(c) | Command::Stats(c) | Command::Counts(c) | Command::Verify(c) => {
                c
            }
            Command::Diameter { config, .. } | Command::Rainbow { config, .. } | Command::Path { config, .. } => config,
        }
    }
}

/// Output text plus exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } | Error::TooLarge(_) => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::Parse(format!("format {format:?} is not available for {command}").to_lowercase())
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct EnumeratedMatching {
    rank: u64,
    pairs: String,
    dyck: String,
}

fn cmd_enumerate(c: &RunConfig) -> Result<Outcome, Error> {
    let rows = enumerate_matchings(c.n()).enumerate().map(|(i, m)| EnumeratedMatching {
        rank: i as u64,
        pairs: m.to_pairs_string(),
        dyck: to_dyck(&m).to_string(),
    });
    let text = match c.format.unwrap_or(Format::Table) {
        Format::Table => rows.fold(String::new(), |mut s, r| {
            writeln!(s, "{}\t{}", r.pairs, r.dyck).unwrap();
            s
        }),
        Format::Csv => rows.fold(String::from("rank,pairs,dyck\n"), |mut s, r| {
            writeln!(s, "{},\"{}\",{}", r.rank, r.pairs, r.dyck).unwrap();
            s
        }),
        Format::Json => json(&rows.collect::<Vec<_>>()),
        f => return Err(unsupported(f, "enumerate")),
    };
    Ok(Outcome::ok(text))
}

fn cmd_graph(c: &RunConfig) -> Result<Outcome, Error> {
    let g = build_graph_with_budget(c.n(), c.mode, c.mem_budget)?;
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&g) + "\n",
        Format::Csv => to_csv(&g),
        Format::Dot => to_dot(&g),
        Format::Table => (0..g.vertex_count() as u32).fold(String::new(), |mut s, v| {
            let nb: Vec<String> = g.neighbors(v).iter().map(u32::to_string).collect();
            writeln!(s, "{}\t{}\t{}", v, to_dyck(&g.matching(v)), nb.join(" ")).unwrap();
            s
        }),
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct DegreeBin {
    degree: usize,
    count: usize,
}

#[derive(Serialize)]
struct Stats {
    n: usize,
    mode: Mode,
    vertices: usize,
    edges: usize,
    degrees: Vec<DegreeBin>,
    min_degree: usize,
    min_degree_count: usize,
    max_degree: usize,
    max_degree_count: usize,
    components: usize,
    tree_components: usize,
    max_component_size: usize,
}

fn cmd_stats(c: &RunConfig) -> Result<Outcome, Error> {
    let g = build_graph_with_budget(c.n(), c.mode, c.mem_budget)?;
    let ext = extreme_degree_vertices(&g);
    let comps = components(&g);
    let stats = Stats {
        n: c.n(),
        mode: c.mode,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        degrees: degrees(&g).into_iter().map(|(degree, count)| DegreeBin { degree, count }).collect(),
        min_degree: ext.min_degree,
        min_degree_count: ext.min_vertices.len(),
        max_degree: ext.max_degree,
        max_degree_count: ext.max_vertices.len(),
        components: comps.component_count,
        tree_components: comps.tree_count,
        max_component_size: comps.max_component_size,
    };
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => json(&stats),
        Format::Table => {
            let mut s = String::new();
            writeln!(s, "n                   {}", stats.n).unwrap();
            writeln!(s, "mode                {}", stats.mode).unwrap();
            writeln!(s, "vertices            {}", stats.vertices).unwrap();
            writeln!(s, "edges               {}", stats.edges).unwrap();
            for b in &stats.degrees {
                writeln!(s, "degree {:<12} {}", b.degree, b.count).unwrap();
            }
            writeln!(s, "min degree          {} ({} vertices)", stats.min_degree, stats.min_degree_count).unwrap();
            writeln!(s, "max degree          {} ({} vertices)", stats.max_degree, stats.max_degree_count).unwrap();
            writeln!(s, "components          {}", stats.components).unwrap();
            writeln!(s, "tree components     {}", stats.tree_components).unwrap();
            writeln!(s, "largest component   {}", stats.max_component_size).unwrap();
            s
        }
        Format::Csv => {
            let mut s = String::from("degree,count\n");
            for b in &stats.degrees {
                writeln!(s, "{},{}", b.degree, b.count).unwrap();
            }
            s
        }
        f => return Err(unsupported(f, "stats")),
    };
    Ok(Outcome::ok(text))
}

fn cmd_diameter(c: &RunConfig, exact_limit: usize, samples: usize) -> Result<Outcome, Error> {
    let g = build_graph_with_budget(c.n(), c.mode, c.mem_budget)?;
    let report = diameter_report(&g, exact_limit, samples, c.seed);
    let text = match c.format.unwrap_or(Format::Table) {
        Format::Table => match &report {
            DiameterReport::Exact { diameter } => format!("{diameter}\n"),
            DiameterReport::Estimate { sampled_lower_bound, .. } => format!(">= {sampled_lower_bound}\n"),
        },
        Format::Json => json(&report),
        f => return Err(unsupported(f, "diameter")),
    };
    Ok(Outcome::ok(text))
}

fn report_outcome(report: &CountReport, format: Format, command: &str) -> Result<Outcome, Error> {
    let text = match format {
        Format::Json => json(report),
        Format::Table => report.to_table(),
        Format::Csv => {
            report.entries.iter().fold(String::from("quantity,predicted,enumerated,matched\n"), |mut s, e| {
                writeln!(s, "\"{}\",{},{},{}", e.quantity, e.predicted, e.enumerated, e.matched).unwrap();
                s
            })
        }
        f => return Err(unsupported(f, command)),
    };
    Ok(Outcome { text, code: if report.all_match() { EXIT_OK } else { EXIT_MISMATCH } })
}

fn cmd_counts(c: &RunConfig) -> Result<Outcome, Error> {
    report_outcome(&count_report(c.n())?, c.format.unwrap_or(Format::Json), "counts")
}

fn cmd_verify(c: &RunConfig) -> Result<Outcome, Error> {
    let opts = VerifyOptions { mem_budget: c.mem_budget, ..VerifyOptions::default() };
    report_outcome(&verify(c.n(), opts)?, c.format.unwrap_or(Format::Json), "verify")
}

fn cmd_rainbow(c: &RunConfig, r: usize, exhaustive: bool) -> Result<Outcome, Error> {
    let opts = SearchOptions { budget: c.search_budget, exhaustive, mem_budget: c.mem_budget };
    let outcome = find_rainbow_cycle(c.n(), r, opts)?;
    let code = match outcome {
        RainbowOutcome::BudgetExhausted { .. } => EXIT_BUDGET,
        _ => EXIT_OK,
    };
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => json(&outcome),
        Format::Table => match &outcome {
            RainbowOutcome::Found { cycle, expansions } => {
                let mut s = format!("found a cycle of length {} ({expansions} expansions)\n", cycle.len());
                writeln!(s, "start {}", cycle.start).unwrap();
                for f in &cycle.flips {
                    writeln!(s, "{f}").unwrap();
                }
                s
            }
            RainbowOutcome::None { certificate } => format!("none: {certificate}\n"),
            RainbowOutcome::BudgetExhausted { expansions } => {
                format!("budget exhausted after {expansions} expansions\n")
            }
        },
        f => return Err(unsupported(f, "rainbow")),
    };
    Ok(Outcome { text, code })
}

#[derive(Serialize)]
struct PathOutput {
    start: String,
    length: usize,
    flips: Vec<crate::flip::Flip>,
    end: String,
}

fn cmd_path(c: &RunConfig, from: Option<&str>) -> Result<Outcome, Error> {
    let n = c.n();
    let (start, flips) = match from {
        Some(s) => {
            let m: Matching = s.parse()?;
            if m.n() != n {
                return Err(Error::Parse(format!("matching has {} chords, expected {n}", m.n())));
            }
            let seq = canonical_flip_sequence(&m)?;
            (m, seq.flips)
        }
        None => (Matching::perimeter(n), perimeter_swap_path(n)?),
    };
    let end = crate::paths::replay(&start, &flips)?.pop().expect("non-empty");
    let out = PathOutput { start: start.to_pairs_string(), length: flips.len(), flips, end: end.to_pairs_string() };
    let text = match c.format.unwrap_or(Format::Json) {
        Format::Json => json(&out),
        Format::Table => {
            let mut s = format!("start {}\n", out.start);
            for f in &out.flips {
                writeln!(s, "{f}").unwrap();
            }
            writeln!(s, "end {} after {} flips", out.end, out.length).unwrap();
            s
        }
        f => return Err(unsupported(f, "path")),
    };
    Ok(Outcome::ok(text))
}

/// Runs a parsed command without touching stdout.
pub fn execute(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Enumerate(c) => cmd_enumerate(c),
        Command::Graph(c) => cmd_graph(c),
        Command::Stats(c) => cmd_stats(c),
        Command::Diameter { config, exact_limit, samples } => cmd_diameter(config, *exact_limit, *samples),
        Command::Counts(c) => cmd_counts(c),
        Command::Rainbow { config, r, exhaustive } => cmd_rainbow(config, *r as usize, *exhaustive),
        Command::Verify(c) => cmd_verify(c),
        Command::Path { config, from } => cmd_path(config, from.as_deref()),
    }
}

/// Parses arguments, runs the command, writes its output, and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let config = cli.command.config();
    if let Some(t) = config.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return EXIT_USAGE;
        }
        // Fails only if a pool already exists, which is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return error_code(&e);
        }
    };
    let written = match &config.out {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_RESOURCE;
    }
    outcome.code
}
