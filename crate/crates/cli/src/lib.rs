//! The `dicut` command line.

pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dicut_core::capacity::format_ratio;
use dicut_core::generate::{generate, with_vertex_caps, Family};
use dicut_core::{
    edge_cut, parse_graph, vertex_cut, write_edge_graph, write_vertex_graph, Algorithm, Capacity, CutMode, DiGraph,
    Orientation, ParsedGraph, Rational, SolveStats, SolverConfig, VertexCapGraph,
};
use thiserror::Error;

use report::{CutArc, Report};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_NO_CUT: u8 = 2;
pub const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "dicut",
    version,
    about = "Minimum rooted and global cuts in capacitated digraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimum edge cut of an edge-capacitated graph.
    EdgeCut(CutArgs),
    /// Minimum vertex cut of a vertex-capacitated graph.
    VertexCut(CutArgs),
    /// Compare the approximate algorithm against the exact oracle.
    Verify(VerifyArgs),
    /// Write a random instance.
    Generate(GenerateArgs),
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::parse(s).ok_or_else(|| format!("expected a decimal or fraction, got {s:?}"))
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    /// Root vertex (1-based).
    #[arg(long, conflicts_with = "global", required_unless_present = "global")]
    pub rooted: Option<usize>,
    /// Global cut instead of a rooted one.
    #[arg(long)]
    pub global: bool,
    #[arg(long, default_value = "0.2", value_parser = parse_rational)]
    pub epsilon: Rational,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Exact answer by one max flow per vertex (pair).
    #[arg(long, conflicts_with = "exact_small")]
    pub exact: bool,
    /// Exact answer for integer capacities by doubling search.
    #[arg(long)]
    pub exact_small: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Terminal sampling multiplier on ln n.
    #[arg(long, default_value_t = 2.0)]
    pub sample_const: f64,
}

#[derive(Args, Debug)]
pub struct CutArgs {
    pub graph: PathBuf,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Also write the report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(required = true)]
    pub graphs: Vec<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    /// Root vertex (1-based); global cuts otherwise.
    #[arg(long)]
    pub rooted: Option<usize>,
    #[arg(long, default_value = "0.2", value_parser = parse_rational)]
    pub epsilon: Rational,
    /// First seed; trial i uses seed + i.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Check the exact small-connectivity mode instead.
    #[arg(long)]
    pub exact_small: bool,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Fraction of trials that must be within 1 + epsilon.
    #[arg(long, default_value_t = 0.95)]
    pub min_fraction: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyName {
    ErdosRenyi,
    PlantedSink,
    Cycle,
    Star,
    LayeredDag,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: FamilyName,
    #[arg(long)]
    pub n: Option<usize>,
    /// Arc probability (erdos-renyi, layered-dag).
    #[arg(long, default_value_t = 0.2)]
    pub p: f64,
    #[arg(long, default_value_t = 10)]
    pub max_cap: u128,
    /// Sink in-volume (planted-sink).
    #[arg(long, default_value_t = 16)]
    pub vol: usize,
    /// Planted cut value (planted-sink).
    #[arg(long, default_value_t = 5)]
    pub value: u128,
    /// Comma-separated arc capacities (cycle).
    #[arg(long, value_delimiter = ',')]
    pub caps: Vec<u128>,
    /// Arc capacity (star).
    #[arg(long, default_value_t = 1)]
    pub cap: u128,
    #[arg(long, default_value_t = 4)]
    pub layers: usize,
    #[arg(long, default_value_t = 4)]
    pub width: usize,
    /// Emit a vertex-cap file with capacities uniform in 1..=K.
    #[arg(long, value_name = "K")]
    pub vertex_caps: Option<u128>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output path; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] dicut_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(dicut_core::Error::NoVertexCut(_) | dicut_core::Error::NoSinkCandidate) => EXIT_NO_CUT,
            CliError::VerifyFailed => EXIT_VERIFY_FAILED,
            _ => EXIT_INPUT,
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    let emit = |out: &mut dyn Write, text: &str| {
        out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
    };
    match cmd {
        Command::EdgeCut(a) => {
            let g = load_edge(&a.graph)?;
            let report = solve_edge(&g, &a.solve)?;
            finish(&report, &a, out, emit)
        }
        Command::VertexCut(a) => {
            let g = load_vertex(&a.graph)?;
            let report = solve_vertex(&g, &a.solve)?;
            finish(&report, &a, out, emit)
        }
        Command::Verify(v) => {
            let (text, ok) = verify(&v)?;
            emit(out, &text)?;
            if ok {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
        Command::Generate(gen) => {
            let text = generate_file(&gen)?;
            match &gen.out {
                Some(path) => write_file(path, &text),
                None => emit(out, &text),
            }
        }
    }
}

fn finish(
    report: &Report,
    a: &CutArgs,
    out: &mut dyn Write,
    emit: impl Fn(&mut dyn Write, &str) -> Result<(), CliError>,
) -> Result<(), CliError> {
    let text = report.to_text();
    match &a.report {
        Some(path) => write_file(path, &text)?,
        None => emit(out, &text)?,
    }
    if let Some(path) = &a.json {
        write_file(path, &report.to_json())?;
    }
    Ok(())
}

fn load(path: &PathBuf) -> Result<ParsedGraph, CliError> {
    parse_graph(path).map_err(|e| match e {
        dicut_core::Error::Io(msg) => CliError::Usage(format!("{}: {msg}", path.display())),
        dicut_core::Error::Parse { line, msg } => CliError::Usage(format!("{}:{line}: {msg}", path.display())),
        other => other.into(),
    })
}

pub fn load_edge(path: &PathBuf) -> Result<DiGraph, CliError> {
    match load(path)? {
        ParsedGraph::Edge(g) => Ok(g),
        ParsedGraph::Vertex(_) => Err(CliError::Usage(format!(
            "{}: expected an edge-cap graph",
            path.display()
        ))),
    }
}

pub fn load_vertex(path: &PathBuf) -> Result<VertexCapGraph, CliError> {
    match load(path)? {
        ParsedGraph::Vertex(g) => Ok(g),
        ParsedGraph::Edge(_) => Err(CliError::Usage(format!(
            "{}: expected a vertex-cap graph",
            path.display()
        ))),
    }
}

fn root_index(rooted: Option<usize>, n: usize) -> Result<Option<usize>, CliError> {
    match rooted {
        None => Ok(None),
        Some(r) if r >= 1 && r <= n => Ok(Some(r - 1)),
        Some(r) => Err(CliError::Usage(format!("root {r} outside 1..={n}"))),
    }
}

fn config(s: &SolveArgs) -> SolverConfig {
    SolverConfig {
        epsilon: s.epsilon,
        seed: s.seed,
        sample_const: s.sample_const,
        threads: s.threads,
    }
}

fn algorithm(s: &SolveArgs) -> Algorithm {
    if s.exact {
        Algorithm::Exact
    } else if s.exact_small {
        Algorithm::ExactSmall
    } else {
        Algorithm::Approx
    }
}

fn base_report(problem: &'static str, s: &SolveArgs, root: Option<usize>) -> Report {
    Report {
        problem,
        mode: if root.is_some() { "rooted" } else { "global" },
        algorithm: algorithm(s).as_str(),
        root: root.map(|r| r + 1),
        orientation: Orientation::Forward.to_string(),
        epsilon: s.epsilon.to_string(),
        seed: s.seed,
        value: String::new(),
        sink: Vec::new(),
        separator: None,
        cut_arcs: None,
        roots_tried: Vec::new(),
        lambda_probes: 0,
        probe_runs: 0,
        terminals: 0,
        flow_calls: 0,
        batched_flow_rounds: 0,
        wall_time_ms: 0.0,
    }
}

fn add_stats(r: &mut Report, s: &SolveStats) {
    r.lambda_probes = s.lambda_probes;
    r.probe_runs = s.probe_runs;
    r.terminals = s.terminals;
    r.flow_calls = s.flow_calls;
    r.batched_flow_rounds = s.batched_flow_rounds;
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

/// Runs the selected edge-cut algorithm.
pub fn solve_edge(g: &DiGraph, s: &SolveArgs) -> Result<Report, CliError> {
    let root = root_index(s.rooted, g.n())?;
    let cfg = config(s);
    let start = Instant::now();
    let cut = edge_cut(g, root.map_or(CutMode::Global, CutMode::Rooted), algorithm(s), &cfg)?;
    let elapsed = start.elapsed();
    let mut r = base_report("edge-cut", s, root);
    r.root = Some(cut.root + 1);
    r.orientation = cut.orientation.to_string();
    r.value = g.format_value(cut.cert.value);
    r.sink = one_based(&cut.cert.sink_set);
    let mut arcs: Vec<CutArc> = cut
        .input_arcs()
        .into_iter()
        .map(|(u, v, c)| CutArc {
            tail: u + 1,
            head: v + 1,
            cap: g.format_value(c),
        })
        .collect();
    arcs.sort_by_key(|a| (a.tail, a.head));
    r.cut_arcs = Some(arcs);
    r.roots_tried = vec![cut.root + 1];
    add_stats(&mut r, &cut.stats);
    r.wall_time_ms = elapsed.as_secs_f64() * 1e3;
    Ok(r)
}

/// Runs the selected vertex-cut algorithm.
pub fn solve_vertex(g: &VertexCapGraph, s: &SolveArgs) -> Result<Report, CliError> {
    let root = root_index(s.rooted, g.n())?;
    let cfg = config(s);
    let mode = root.map_or(CutMode::Global, CutMode::Rooted);
    let start = Instant::now();
    let cut = vertex_cut(g, mode, algorithm(s), &cfg)?;
    let elapsed = start.elapsed();
    let mut r = base_report("vertex-cut", s, root);
    r.orientation = cut.cert.orientation.to_string();
    r.value = g.format_value(cut.cert.value);
    r.sink = one_based(&cut.cert.sink_component);
    r.separator = Some(one_based(&cut.cert.separator));
    r.roots_tried = one_based(&cut.roots);
    add_stats(&mut r, &cut.stats);
    r.wall_time_ms = elapsed.as_secs_f64() * 1e3;
    Ok(r)
}

enum Loaded {
    Edge(DiGraph),
    Vertex(VertexCapGraph),
}

struct Trial {
    value: Capacity,
    valid: bool,
}

fn verify(v: &VerifyArgs) -> Result<(String, bool), CliError> {
    if v.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    if !(0.0..=1.0).contains(&v.min_fraction) {
        return Err(CliError::Usage("--min-fraction must lie in [0, 1]".into()));
    }
    let eps = v.epsilon;
    let mut text = String::from("graph\ttrial\tseed\tvalue\toracle\tratio\tvalid\n");
    let (mut total, mut invalid, mut within, mut below) = (0u64, 0u64, 0u64, 0u64);
    let mut ratios: Vec<f64> = Vec::new();
    for path in &v.graphs {
        let g = match load(path)? {
            ParsedGraph::Edge(g) => Loaded::Edge(g),
            ParsedGraph::Vertex(g) => Loaded::Vertex(g),
        };
        let n = match &g {
            Loaded::Edge(g) => g.n(),
            Loaded::Vertex(g) => g.n(),
        };
        let root = root_index(v.rooted, n)?;
        let mode = root.map_or(CutMode::Global, CutMode::Rooted);
        let oracle_cfg = SolverConfig::default();
        let (oracle, scale) = match &g {
            Loaded::Edge(g) => (edge_cut(g, mode, Algorithm::Exact, &oracle_cfg)?.cert.value, g.scale()),
            Loaded::Vertex(g) => (
                vertex_cut(g, mode, Algorithm::Exact, &oracle_cfg)?.cert.value,
                g.scale(),
            ),
        };
        let fmt = |c: Capacity| format_ratio(c.0, scale);
        for trial in 0..v.trials {
            let seed = v.seed.wrapping_add(trial);
            let cfg = SolverConfig {
                epsilon: eps,
                seed,
                threads: v.threads,
                ..SolverConfig::default()
            };
            let algorithm = if v.exact_small {
                Algorithm::ExactSmall
            } else {
                Algorithm::Approx
            };
            let t = run_trial(&g, mode, &cfg, algorithm)?;
            total += 1;
            let ratio = if oracle.0 == 0 {
                if t.value.0 == 0 {
                    1.0
                } else {
                    f64::INFINITY
                }
            } else {
                t.value.0 as f64 / oracle.0 as f64
            };
            ratios.push(ratio);
            if !t.valid {
                invalid += 1;
            }
            if t.value < oracle {
                below += 1;
            }
            let good = if v.exact_small {
                t.value == oracle
            } else {
                t.value.0 * eps.den() <= oracle.0 * (eps.den() + eps.num())
            };
            if t.valid && good {
                within += 1;
            }
            text += &format!(
                "{}\t{trial}\t{seed}\t{}\t{}\t{ratio:.6}\t{}\n",
                path.display(),
                fmt(t.value),
                fmt(oracle),
                if t.valid { "yes" } else { "no" }
            );
        }
    }
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().copied().fold(0.0, f64::max);
    let fraction = within as f64 / total as f64;
    let ok = invalid == 0 && below == 0 && fraction >= v.min_fraction;
    let target = if v.exact_small {
        "exact".to_string()
    } else {
        format!("within_1+{eps}")
    };
    text += &format!(
        "trials: {total}\ninvalid: {invalid}\nbelow_oracle: {below}\nmin_ratio: {min:.6}\nmax_ratio: {max:.6}\n{target}: {within}/{total}\nstatus: {}\n",
        if ok { "pass" } else { "fail" }
    );
    Ok((text, ok))
}

fn run_trial(g: &Loaded, mode: CutMode, cfg: &SolverConfig, algorithm: Algorithm) -> Result<Trial, CliError> {
    Ok(match g {
        Loaded::Edge(g) => {
            let cut = edge_cut(g, mode, algorithm, cfg)?;
            let oriented = match cut.orientation {
                Orientation::Forward => g.clone(),
                Orientation::Reverse => g.reverse(),
            };
            Trial {
                value: cut.cert.value,
                valid: cut.cert.check(&oriented, cut.root).is_ok(),
            }
        }
        Loaded::Vertex(g) => {
            let cut = vertex_cut(g, mode, algorithm, cfg)?;
            let root = match mode {
                CutMode::Rooted(r) => Some(r),
                CutMode::Global => None,
            };
            Trial {
                value: cut.cert.value,
                valid: cut.cert.check(g, root).is_ok(),
            }
        }
    })
}

fn need_n(a: &GenerateArgs) -> Result<usize, CliError> {
    a.n.ok_or_else(|| CliError::Usage(format!("--n is required for {:?}", a.family)))
}

/// Renders the requested instance as a graph file.
pub fn generate_file(a: &GenerateArgs) -> Result<String, CliError> {
    let family = match a.family {
        FamilyName::ErdosRenyi => Family::ErdosRenyi {
            n: need_n(a)?,
            p: a.p,
            max_cap: a.max_cap,
        },
        FamilyName::PlantedSink => Family::PlantedSink {
            n: need_n(a)?,
            vol: a.vol,
            value: a.value,
        },
        FamilyName::Cycle => Family::Cycle { caps: a.caps.clone() },
        FamilyName::Star => Family::Star {
            n: need_n(a)?,
            cap: a.cap,
        },
        FamilyName::LayeredDag => Family::LayeredDag {
            layers: a.layers,
            width: a.width,
            p: a.p,
            max_cap: a.max_cap,
        },
    };
    let out = generate(&family, a.seed)?;
    let mut text = format!("c family {} seed {}\n", family.name(), a.seed);
    if let Some(p) = &out.planted {
        text += &format!("c planted root {} value {}\n", p.root + 1, p.value);
        text += &format!(
            "c planted sink {}\n",
            one_based(&p.sink)
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    text += &match a.vertex_caps {
        Some(k) => write_vertex_graph(&with_vertex_caps(&out.graph, k, a.seed)?),
        None => write_edge_graph(&out.graph),
    };
    Ok(text)
}
