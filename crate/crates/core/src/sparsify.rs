//! End-to-end sparsification: two gammoids, an ordered representative
//! family over reverse topological order, the cut-covering set `P`, and the
//! sparsifier `H` on `P`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cuts::{mincut_value, CutError};
use crate::ff::{make_field, required_bits, FieldError};
use crate::gammoid::{build_mason, direct_sum, Element, GammoidError};
use crate::graph::{add_sink_copies, CopyScope, Digraph, GraphError, TerminalSpec};
use crate::repfam::{ordered_rep_family, OrderedFamily, RepfamError};

/// `2^-20`
pub const DEFAULT_EPSILON: f64 = 1.0 / 1_048_576.0;

#[derive(Debug, Error)]
pub enum SparsifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Gammoid(#[from] GammoidError),
    #[error(transparent)]
    Repfam(#[from] RepfamError),
    #[error(transparent)]
    Cut(#[from] CutError),
    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),
    #[error("unknown builder `{0}`")]
    UnknownBuilder(String),
    #[error("builders `{0}` and `{1}` produced different graphs")]
    BuilderMismatch(String, String),
    #[error("vertex {0} of P is not a vertex of G")]
    NotInGraph(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub epsilon: f64,
    pub seed: u64,
    /// Overrides the field size computed from `epsilon`.
    pub field_bits: Option<u32>,
    /// A registered builder name, or `both` to run `dfs` and `closure` and
    /// require identical output.
    pub builder: String,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { epsilon: DEFAULT_EPSILON, seed: 0, field_bits: None, builder: "dfs".into() }
    }
}

impl PipelineConfig {
    pub fn with_seed(seed: u64) -> Self {
        PipelineConfig { seed, ..Default::default() }
    }
}

/// Builds the sparsifier on a vertex set `P`. Vertex `i` of the output
/// stands for `p[i]`; `p` is ascending.
pub trait SparsifierBuilder: Send + Sync {
    fn name(&self) -> &str;
    fn build(&self, g: &Digraph, p: &[usize]) -> Digraph;
}

fn index_of(n: usize, p: &[usize]) -> Vec<usize> {
    let mut index = vec![usize::MAX; n];
    for (i, &v) in p.iter().enumerate() {
        index[v] = i;
    }
    index
}

/// One search per `u ∈ P` that does not continue past other members of
/// `P`: `(u, v)` is an edge iff some `u -> v` path has no interior vertex in
/// `P`.
pub struct DfsBuilder;

impl SparsifierBuilder for DfsBuilder {
    fn name(&self) -> &str {
        "dfs"
    }

    fn build(&self, g: &Digraph, p: &[usize]) -> Digraph {
        let index = index_of(g.n(), p);
        let mut stamp = vec![usize::MAX; g.n()];
        let mut stack = Vec::new();
        let mut edges = Vec::new();
        for (i, &u) in p.iter().enumerate() {
            stamp[u] = i;
            stack.push(u);
            while let Some(x) = stack.pop() {
                for &w in g.out_neighbors(x) {
                    if stamp[w] == i {
                        continue;
                    }
                    stamp[w] = i;
                    if index[w] == usize::MAX {
                        stack.push(w);
                    } else {
                        edges.push((i, index[w]));
                    }
                }
            }
        }
        Digraph::new(p.len(), edges).expect("sparsifier edges are simple")
    }
}

/// Repeated neighborhood closure of every vertex outside `P`, ascending or
/// descending by id.
pub struct ClosureBuilder {
    pub descending: bool,
}

impl SparsifierBuilder for ClosureBuilder {
    fn name(&self) -> &str {
        if self.descending {
            "closure-desc"
        } else {
            "closure"
        }
    }

    fn build(&self, g: &Digraph, p: &[usize]) -> Digraph {
        let n = g.n();
        let index = index_of(n, p);
        let mut out: Vec<BTreeSet<usize>> = (0..n).map(|v| g.out_neighbors(v).iter().copied().collect()).collect();
        let mut inn: Vec<BTreeSet<usize>> = (0..n).map(|v| g.in_neighbors(v).collect()).collect();
        let mut order: Vec<usize> = (0..n).filter(|&v| index[v] == usize::MAX).collect();
        if self.descending {
            order.reverse();
        }
        for v in order {
            let ins = std::mem::take(&mut inn[v]);
            let outs = std::mem::take(&mut out[v]);
            for &a in &ins {
                out[a].remove(&v);
            }
            for &b in &outs {
                inn[b].remove(&v);
            }
            for &a in &ins {
                for &b in outs.iter().filter(|&&b| b != a) {
                    out[a].insert(b);
                    inn[b].insert(a);
                }
            }
        }
        let edges = p.iter().enumerate().flat_map(|(i, &u)| out[u].iter().map(move |&w| (i, w)));
        let edges: Vec<(usize, usize)> = edges.map(|(i, w)| (i, index[w])).collect();
        Digraph::new(p.len(), edges).expect("sparsifier edges are simple")
    }
}

/// Builders selectable by name at run time.
pub struct BuilderRegistry {
    entries: BTreeMap<String, Box<dyn SparsifierBuilder>>,
}

impl BuilderRegistry {
    pub fn empty() -> Self {
        BuilderRegistry { entries: BTreeMap::new() }
    }

    pub fn register(&mut self, builder: Box<dyn SparsifierBuilder>) {
        self.entries.insert(builder.name().to_string(), builder);
    }

    pub fn get(&self, name: &str) -> Option<&dyn SparsifierBuilder> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.keys().map(|k| k.as_str()).collect()
    }
}

impl Default for BuilderRegistry {
    /// `dfs`, `closure`, and `closure-desc`.
    fn default() -> Self {
        let mut r = BuilderRegistry::empty();
        r.register(Box::new(DfsBuilder));
        r.register(Box::new(ClosureBuilder { descending: false }));
        r.register(Box::new(ClosureBuilder { descending: true }));
        r
    }
}

/// Field size for the pipeline: enough for both gammoids unless overridden.
pub fn pipeline_field_bits(n: usize, terms: &TerminalSpec, cfg: &PipelineConfig) -> Result<u32, SparsifyError> {
    if !(cfg.epsilon > 0.0 && cfg.epsilon < 1.0) {
        return Err(SparsifyError::InvalidEpsilon(cfg.epsilon));
    }
    if let Some(bits) = cfg.field_bits {
        return Ok(bits);
    }
    let (s, t) = (terms.sources.len() as u64, terms.sinks.len() as u64);
    let n = n as u64;
    let forward = required_bits(n + s, s, cfg.epsilon)?;
    let backward = required_bits(2 * n + t, t, cfg.epsilon)?;
    Ok(forward.max(backward))
}

/// Independent per-gammoid seeds drawn from separate ChaCha streams.
fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.next_u64()
}

struct Covering {
    p: Vec<usize>,
    ell: u32,
    timings: BTreeMap<String, f64>,
}

fn covering(g: &Digraph, terms: &TerminalSpec, cfg: &PipelineConfig) -> Result<Covering, SparsifyError> {
    if !(cfg.epsilon > 0.0 && cfg.epsilon < 1.0) {
        return Err(SparsifyError::InvalidEpsilon(cfg.epsilon));
    }
    terms.validate(g.n())?;
    let topo = g.topo_order()?;
    let mut timings = BTreeMap::new();
    let mut p: BTreeSet<usize> = terms.all().into_iter().collect();
    if terms.sources.is_empty() || terms.sinks.is_empty() {
        // Every cut value is 0; only the terminals are needed.
        return Ok(Covering { p: p.into_iter().collect(), ell: 0, timings });
    }

    let clock = Instant::now();
    let ell = pipeline_field_bits(g.n(), terms, cfg)?;
    let spec = make_field(ell, cfg.seed)?;
    let m1 = build_mason(g, &terms.sources, &spec, derive_seed(cfg.seed, 1))?;
    let (g2, copies) = add_sink_copies(&g.reverse(), CopyScope::AllVertices, terms);
    let m2 = build_mason(&g2, &terms.sinks, &spec, derive_seed(cfg.seed, 2))?;
    let union = direct_sum(m1, m2)?;
    timings.insert("gammoids".to_string(), clock.elapsed().as_secs_f64() * 1e3);

    let clock = Instant::now();
    let d = union.dim();
    let half = d * spec.limbs();
    let mut fam = OrderedFamily::new(spec.clone(), d, 2)?;
    let mut member = vec![0u64; 2 * half];
    for &v in topo.iter().rev() {
        let copy = copies.copy_of(v).expect("every vertex has a sink copy");
        union.column_into(Element::Left(v), &mut member[..half])?;
        union.column_into(Element::Right(copy), &mut member[half..])?;
        fam.push(&member, v)?;
    }
    for j in ordered_rep_family(&fam) {
        p.insert(*fam.tag(j));
    }
    timings.insert("repfam".to_string(), clock.elapsed().as_secs_f64() * 1e3);
    Ok(Covering { p: p.into_iter().collect(), ell, timings })
}

/// The cut-covering set `P` (ascending, always including `S ∪ T`).
pub fn cut_covering_set(g: &Digraph, terms: &TerminalSpec, cfg: &PipelineConfig) -> Result<Vec<usize>, SparsifyError> {
    Ok(covering(g, terms, cfg)?.p)
}

pub fn build_sparsifier_dfs(g: &Digraph, p: &[usize]) -> Result<Digraph, SparsifyError> {
    build_with(&DfsBuilder, g, p)
}

pub fn build_sparsifier_closure(g: &Digraph, p: &[usize]) -> Result<Digraph, SparsifyError> {
    build_with(&ClosureBuilder { descending: false }, g, p)
}

fn build_with(b: &dyn SparsifierBuilder, g: &Digraph, p: &[usize]) -> Result<Digraph, SparsifyError> {
    if let Some(&v) = p.iter().find(|&&v| v >= g.n()) {
        return Err(SparsifyError::NotInGraph(v));
    }
    let mut sorted = p.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(b.build(g, &sorted))
}

pub const STATS_VERSION: u32 = 1;

/// Sidecar statistics. `ms_per_stage` is left empty by the library so that
/// results compare byte for byte; callers may fill it from
/// [`SparsifierResult::timings`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    /// Sidecar schema version, currently [`STATS_VERSION`].
    pub version: u32,
    pub ell: u32,
    pub p_size: usize,
    pub h_edges: usize,
    pub seed: u64,
    pub ms_per_stage: Option<BTreeMap<String, f64>>,
    /// Vertex `i` of `H` is vertex `p_vertices[i]` of `G`.
    pub p_vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SparsifierResult {
    /// Ascending; vertex `i` of `h` stands for `p[i]`.
    pub p: Vec<usize>,
    pub h: Digraph,
    /// The input terminal lists relabeled into `h`.
    pub terms: TerminalSpec,
    pub stats: Stats,
    /// Wall-clock milliseconds per stage.
    pub timings: BTreeMap<String, f64>,
}

pub fn sparsify(g: &Digraph, terms: &TerminalSpec, cfg: &PipelineConfig) -> Result<SparsifierResult, SparsifyError> {
    sparsify_with(&BuilderRegistry::default(), g, terms, cfg)
}

pub fn sparsify_with(
    registry: &BuilderRegistry,
    g: &Digraph,
    terms: &TerminalSpec,
    cfg: &PipelineConfig,
) -> Result<SparsifierResult, SparsifyError> {
    let Covering { p, ell, mut timings } = covering(g, terms, cfg)?;
    let lookup = |name: &str| registry.get(name).ok_or_else(|| SparsifyError::UnknownBuilder(name.to_string()));
    let clock = Instant::now();
    let h = if cfg.builder == "both" {
        let h = lookup("dfs")?.build(g, &p);
        if lookup("closure")?.build(g, &p) != h {
            return Err(SparsifyError::BuilderMismatch("dfs".into(), "closure".into()));
        }
        h
    } else {
        lookup(&cfg.builder)?.build(g, &p)
    };
    timings.insert("builder".to_string(), clock.elapsed().as_secs_f64() * 1e3);
    let index = index_of(g.n(), &p);
    let stats = Stats {
        version: STATS_VERSION,
        ell,
        p_size: p.len(),
        h_edges: h.m(),
        seed: cfg.seed,
        ms_per_stage: None,
        p_vertices: p.clone(),
    };
    Ok(SparsifierResult { terms: terms.remap(|v| index[v]), p, h, stats, timings })
}

/// A terminal-subset pair on which two graphs disagree. Masks select
/// positions in the source and sink lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub x_mask: u64,
    pub y_mask: u64,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub mc_g: usize,
    pub mc_h: usize,
}

fn pick(list: &[usize], mask: u64) -> Vec<usize> {
    list.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
}

/// Compares `mc` on one pair of positional terminal subsets.
pub fn compare_pair(
    g: &Digraph,
    gt: &TerminalSpec,
    h: &Digraph,
    ht: &TerminalSpec,
    x_mask: u64,
    y_mask: u64,
) -> Result<Option<Mismatch>, CutError> {
    let (x, y) = (pick(&gt.sources, x_mask), pick(&gt.sinks, y_mask));
    let mc_g = mincut_value(g, &x, &y)?;
    let mc_h = mincut_value(h, &pick(&ht.sources, x_mask), &pick(&ht.sinks, y_mask))?;
    Ok((mc_g != mc_h).then_some(Mismatch { x_mask, y_mask, x, y, mc_g, mc_h }))
}

/// Checks every `(X, Y)` pair; returns the first mismatch in mask order.
/// Both terminal lists must have the same lengths in `G` and `H`, at most 63.
pub fn verify_exhaustive(
    g: &Digraph,
    gt: &TerminalSpec,
    h: &Digraph,
    ht: &TerminalSpec,
) -> Result<Option<Mismatch>, CutError> {
    assert!(gt.sources.len() == ht.sources.len() && gt.sinks.len() == ht.sinks.len());
    assert!(gt.sources.len() < 64 && gt.sinks.len() < 64);
    for x_mask in 0..1u64 << gt.sources.len() {
        for y_mask in 0..1u64 << gt.sinks.len() {
            if let Some(m) = compare_pair(g, gt, h, ht, x_mask, y_mask)? {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}
