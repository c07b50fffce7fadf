use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use vcsparse::cuts::{closest_min_cut, min_vertex_cut, CutError, CutResult, Side};
use vcsparse::gens::{gen_grid, gen_kw, gen_random_dag};
use vcsparse::graph::format::{parse_graph, serialize_digraph, serialize_ugraph, GraphFile};
use vcsparse::graph::{Digraph, TerminalSpec};
use vcsparse::sparsify::{
    compare_pair, pipeline_field_bits, sparsify_with, BuilderRegistry, Mismatch, PipelineConfig, SparsifyError,
    DEFAULT_EPSILON,
};

/// Exhaustive verification checks at most this many `(X, Y)` pairs.
const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

#[derive(Parser)]
#[command(name = "vcsparse", version, about = "Vertex cut sparsifiers for terminal DAGs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance in the graph file format.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Sparsify a DAG; writes H and a JSON stats sidecar.
    Sparsify(SparsifyArgs),
    /// Check that G and H agree on every (or a sample of) terminal-subset pairs.
    Verify(VerifyArgs),
    /// Exact cut oracles.
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
    /// Print instance metrics.
    Stats(StatsArgs),
}

#[derive(Subcommand)]
enum GenKind {
    /// The quadratic lower-bound DAG on 4k terminals and k^2 middle vertices.
    Kw {
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The undirected k x k grid with one leaf terminal per boundary vertex.
    Grid {
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A uniform random DAG with random terminal sets.
    Dag {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "ks", default_value_t = 3)]
        ks: usize,
        #[arg(long = "kt", default_value_t = 3)]
        kt: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SparsifyArgs {
    input: PathBuf,
    /// Path of the sparsifier H.
    #[arg(short, long)]
    output: PathBuf,
    /// Sidecar path; defaults to `<output>.stats.json`.
    #[arg(long)]
    stats: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Field size in bits (a multiple of 64); computed from epsilon if absent.
    #[arg(long)]
    field_bits: Option<u32>,
    /// Builder name, or `both` to cross-check dfs against closure.
    #[arg(long, default_value = "dfs")]
    builder: String,
    /// Record per-stage wall-clock times in the sidecar.
    #[arg(long)]
    timings: bool,
    /// Also print the sidecar on stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    sparsifier: PathBuf,
    /// Check all 2^|S| * 2^|T| pairs (the default).
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Check this many uniformly sampled pairs instead.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum OracleKind {
    /// Minimum vertex cut between X and Y (terminals deletable).
    Mincut {
        graph: PathBuf,
        #[arg(long = "X", value_delimiter = ',', num_args = 0..)]
        x: Vec<usize>,
        #[arg(long = "Y", value_delimiter = ',', num_args = 0..)]
        y: Vec<usize>,
        /// Also report the minimum cut closest to this side.
        #[arg(long)]
        closest_to: Option<SideArg>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    X,
    Y,
}

#[derive(Args)]
struct StatsArgs {
    graph: PathBuf,
    #[arg(long)]
    json: bool,
}

enum Failure {
    /// Bad usage or unreadable input.
    Input(String),
    /// Verification found a counterexample; already reported.
    Mismatch,
    Guard(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch => 1,
            Failure::Input(_) => 2,
            Failure::Guard(_) => 3,
        }
    }
}

impl From<SparsifyError> for Failure {
    fn from(e: SparsifyError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<CutError> for Failure {
    fn from(e: CutError) -> Self {
        match e {
            CutError::GuardExceeded { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read_graph(path: &Path) -> Result<GraphFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_digraph(path: &Path) -> Result<(Digraph, TerminalSpec), Failure> {
    match read_graph(path)? {
        GraphFile::Directed(g, t) => Ok((g, t)),
        GraphFile::Undirected(..) => Err(Failure::Input(format!("{}: expected a directed graph", path.display()))),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes") + "\n"
}

fn gen(kind: GenKind) -> Result<(), Failure> {
    let bad = |e: vcsparse::gens::GenError| Failure::Input(e.to_string());
    match kind {
        GenKind::Kw { k, output } => {
            let kw = gen_kw(k).map_err(bad)?;
            write_out(output.as_deref(), &serialize_digraph(&kw.graph, &kw.terms))
        }
        GenKind::Grid { k, output } => {
            let grid = gen_grid(k).map_err(bad)?;
            let terms = TerminalSpec::new(grid.terminals(), Vec::new());
            write_out(output.as_deref(), &serialize_ugraph(&grid.graph, &terms))
        }
        GenKind::Dag { n, m, ks, kt, seed, output } => {
            let (g, t) = gen_random_dag(n, m, ks, kt, seed).map_err(bad)?;
            write_out(output.as_deref(), &serialize_digraph(&g, &t))
        }
    }
}

fn sparsify(args: SparsifyArgs) -> Result<(), Failure> {
    let (g, terms) = read_digraph(&args.input)?;
    let cfg = PipelineConfig { epsilon: args.epsilon, seed: args.seed, field_bits: args.field_bits, builder: args.builder };
    let mut res = sparsify_with(&BuilderRegistry::default(), &g, &terms, &cfg)?;
    if args.timings {
        res.stats.ms_per_stage = Some(res.timings.clone());
    }
    write_out(Some(&args.output), &serialize_digraph(&res.h, &res.terms))?;
    let sidecar = args.stats.unwrap_or_else(|| {
        let mut name = args.output.clone().into_os_string();
        name.push(".stats.json");
        PathBuf::from(name)
    });
    let json = to_json(&res.stats);
    write_out(Some(&sidecar), &json)?;
    if args.json {
        print!("{json}");
    } else {
        println!("kept {} of {} vertices; H has {} edges", res.p.len(), g.n(), res.h.m());
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport {
    mode: &'static str,
    pairs_checked: u64,
    ok: bool,
    counterexample: Option<Witness>,
}

#[derive(Serialize)]
struct Witness {
    x: Vec<usize>,
    y: Vec<usize>,
    mc_g: usize,
    mc_h: usize,
}

impl From<Mismatch> for Witness {
    fn from(m: Mismatch) -> Self {
        Witness { x: m.x, y: m.y, mc_g: m.mc_g, mc_h: m.mc_h }
    }
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let (g, gt) = read_digraph(&args.graph)?;
    let (h, ht) = read_digraph(&args.sparsifier)?;
    if gt.sources.len() != ht.sources.len() || gt.sinks.len() != ht.sinks.len() {
        return Err(Failure::Input("G and H have different numbers of sources or sinks".into()));
    }
    let (ks, kt) = (gt.sources.len() as u32, gt.sinks.len() as u32);
    if ks > 63 || kt > 63 {
        return Err(Failure::Guard("more than 63 sources or sinks".into()));
    }
    let mut checked = 0u64;
    let mut found = None;
    let mode = match args.samples {
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            for _ in 0..count {
                let xm = rng.gen::<u64>() & ((1u64 << ks) - 1);
                let ym = rng.gen::<u64>() & ((1u64 << kt) - 1);
                checked += 1;
                if let Some(m) = compare_pair(&g, &gt, &h, &ht, xm, ym)? {
                    found = Some(m);
                    break;
                }
            }
            "sampled"
        }
        None => {
            let pairs = 1u64 << (ks + kt);
            if pairs > EXHAUSTIVE_LIMIT {
                return Err(Failure::Guard(format!(
                    "exhaustive check needs {pairs} pairs, limit is {EXHAUSTIVE_LIMIT}; use --samples"
                )));
            }
            'outer: for xm in 0..1u64 << ks {
                for ym in 0..1u64 << kt {
                    checked += 1;
                    if let Some(m) = compare_pair(&g, &gt, &h, &ht, xm, ym)? {
                        found = Some(m);
                        break 'outer;
                    }
                }
            }
            "exhaustive"
        }
    };
    let ok = found.is_none();
    let report = VerifyReport { mode, pairs_checked: checked, ok, counterexample: found.map(Witness::from) };
    if args.json {
        print!("{}", to_json(&report));
    } else if let Some(w) = &report.counterexample {
        println!("FAILED after {checked} pairs: X={:?} Y={:?} mc_G={} mc_H={}", w.x, w.y, w.mc_g, w.mc_h);
    } else {
        println!("ok: {checked} pairs agree ({mode})");
    }
    if ok {
        Ok(())
    } else {
        eprintln!("verification failed");
        Err(Failure::Mismatch)
    }
}

#[derive(Serialize)]
struct CutReport {
    value: usize,
    cut: Vec<usize>,
    closest: Option<Closest>,
}

#[derive(Serialize)]
struct Closest {
    side: &'static str,
    cut: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
}

fn oracle(kind: OracleKind) -> Result<(), Failure> {
    let OracleKind::Mincut { graph, x, y, closest_to, json } = kind;
    let (g, _) = read_digraph(&graph)?;
    let min = min_vertex_cut(&g, &x, &y)?;
    let closest = match closest_to {
        None => None,
        Some(side) => {
            let (s, name) = match side {
                SideArg::X => (Side::X, "X"),
                SideArg::Y => (Side::Y, "Y"),
            };
            let CutResult { cut, left, right, .. } = closest_min_cut(&g, &x, &y, s)?;
            Some(Closest { side: name, cut, left, right })
        }
    };
    let report = CutReport { value: min.value, cut: min.cut, closest };
    if json {
        print!("{}", to_json(&report));
    } else {
        println!("value {}", report.value);
        println!("cut {:?}", report.cut);
        if let Some(c) = &report.closest {
            println!("closest to {} {:?} (|L| = {}, |R| = {})", c.side, c.cut, c.left.len(), c.right.len());
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct InstanceStats {
    directed: bool,
    n: usize,
    m: usize,
    sources: usize,
    sinks: usize,
    terminals: usize,
    acyclic: Option<bool>,
    max_in_degree: Option<usize>,
    max_out_degree: Option<usize>,
    max_degree: Option<usize>,
    field_bits: Option<u32>,
    p_bound: usize,
}

fn stats(args: StatsArgs) -> Result<(), Failure> {
    let s = match read_graph(&args.graph)? {
        GraphFile::Directed(g, t) => {
            let k = t.sources.len() + t.sinks.len();
            InstanceStats {
                directed: true,
                n: g.n(),
                m: g.m(),
                sources: t.sources.len(),
                sinks: t.sinks.len(),
                terminals: t.all().len(),
                acyclic: Some(g.is_acyclic()),
                max_in_degree: Some((0..g.n()).map(|v| g.in_degree(v)).max().unwrap_or(0)),
                max_out_degree: Some((0..g.n()).map(|v| g.out_degree(v)).max().unwrap_or(0)),
                max_degree: None,
                field_bits: pipeline_field_bits(g.n(), &t, &PipelineConfig::default()).ok(),
                p_bound: k * k.saturating_sub(1) / 2 + t.all().len(),
            }
        }
        GraphFile::Undirected(u, t) => InstanceStats {
            directed: false,
            n: u.n(),
            m: u.m(),
            sources: t.sources.len(),
            sinks: t.sinks.len(),
            terminals: t.all().len(),
            acyclic: None,
            max_in_degree: None,
            max_out_degree: None,
            max_degree: Some((0..u.n()).map(|v| u.degree(v)).max().unwrap_or(0)),
            field_bits: None,
            p_bound: t.all().len(),
        },
    };
    if args.json {
        print!("{}", to_json(&s));
    } else {
        println!("{} graph: n {} m {}", if s.directed { "directed" } else { "undirected" }, s.n, s.m);
        println!("terminals: {} sources, {} sinks, {} distinct", s.sources, s.sinks, s.terminals);
        if let (Some(a), Some(i), Some(o)) = (s.acyclic, s.max_in_degree, s.max_out_degree) {
            println!("acyclic {a}; max in-degree {i}; max out-degree {o}");
        }
        if let Some(d) = s.max_degree {
            println!("max degree {d}");
        }
        if let Some(b) = s.field_bits {
            println!("pipeline field GF(2^{b}); |P| bound {}", s.p_bound);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { kind } => gen(kind),
        Command::Sparsify(args) => sparsify(args),
        Command::Verify(args) => verify(args),
        Command::Oracle { kind } => oracle(kind),
        Command::Stats(args) => stats(args),
    };
    let _ = std::io::stdout().flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Guard(msg) => eprintln!("guard exceeded: {msg}"),
                Failure::Mismatch => {}
            }
            ExitCode::from(f.code())
        }
    }
}
