//! Randomized linear representations of gammoids on DAGs, and their
//! block-diagonal direct sums.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ff::linalg::rank_of_vectors;
use crate::ff::FieldSpec;
use crate::graph::{split_sources, Digraph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammoidError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("a gammoid needs at least one source")]
    NoSources,
    #[error("unknown ground element {0}")]
    UnknownElement(usize),
    #[error("direct sum of representations over different fields")]
    SpecMismatch,
}

/// Columns `R_v` of a Mason representation: entry `s` of `R_v` is the path
/// polynomial from source `s` to `v` evaluated at random edge weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammoidRep {
    spec: FieldSpec,
    d: usize,
    n: usize,
    /// Column `v` occupies `cols[v * d * l .. (v + 1) * d * l]`.
    cols: Vec<u64>,
    sources: Vec<usize>,
    seed: u64,
}

/// `build_mason`: one random weight per edge of `g`, drawn in lexicographic
/// edge order, then `R_v = Σ_{u -> v} R_u · x_uv` in topological order of the
/// source-split graph. Split sources carry the unit vectors and their edges
/// weigh 1, so a source without in-edges has a unit column.
pub fn build_mason(g: &Digraph, sources: &[usize], spec: &FieldSpec, seed: u64) -> Result<GammoidRep, GammoidError> {
    if sources.is_empty() {
        return Err(GammoidError::NoSources);
    }
    let terms = crate::graph::TerminalSpec::new(sources.to_vec(), Vec::new());
    terms.validate(g.n())?;
    let (h, _, fresh) = split_sources(g, sources);
    let order = h.topo_order()?;

    let l = spec.limbs();
    let d = sources.len();
    let stride = d * l;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Original edges sort before the split edges, whose tails are >= n.
    let mut weights = vec![0u64; h.m() * l];
    for (e, w) in weights.chunks_exact_mut(l).enumerate() {
        if e < g.m() {
            spec.random_raw(&mut rng, w);
        } else {
            w[0] = 1;
        }
    }

    let mut cols = vec![0u64; h.n() * stride];
    for (i, &f) in fresh.iter().enumerate() {
        cols[f * stride + i * l] = 1;
    }
    let mut acc = vec![0u64; stride];
    for &v in &order {
        if v >= g.n() {
            continue;
        }
        acc.fill(0);
        for &(u, e) in h.in_edges(v) {
            let x = &weights[e * l..(e + 1) * l];
            let ru = &cols[u * stride..(u + 1) * stride];
            for (a, r) in acc.chunks_exact_mut(l).zip(ru.chunks_exact(l)) {
                spec.mul_add_raw(a, r, x);
            }
        }
        cols[v * stride..(v + 1) * stride].copy_from_slice(&acc);
    }
    cols.truncate(g.n() * stride);
    Ok(GammoidRep { spec: spec.clone(), d, n: g.n(), cols, sources: sources.to_vec(), seed })
}

impl GammoidRep {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Row count, the number of sources.
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Size of the ground set (vertices of the input graph).
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Packed column of ground element `v`: `dim()` elements of
    /// `spec().limbs()` words each.
    pub fn column(&self, v: usize) -> Result<&[u64], GammoidError> {
        if v >= self.n {
            return Err(GammoidError::UnknownElement(v));
        }
        let stride = self.d * self.spec.limbs();
        Ok(&self.cols[v * stride..(v + 1) * stride])
    }

    /// Rank of the columns of `u`, read as a multiset.
    pub fn rank(&self, u: &[usize]) -> Result<usize, GammoidError> {
        let cols = u.iter().map(|&v| self.column(v)).collect::<Result<Vec<_>, _>>()?;
        Ok(rank_of_vectors(&self.spec, self.d, cols))
    }

    /// Versioned text dump with every entry as big-endian hex.
    ///
    /// ```text
    /// GAMMOID-REP 1
    /// field <bits> <exponents of the modulus, descending>
    /// rows <d> cols <n> seed <seed>
    /// sources <ids...>
    /// <v> <entry 0> ... <entry d-1>
    /// ```
    pub fn dump(&self) -> String {
        let l = self.spec.limbs();
        let mut out = String::from("GAMMOID-REP 1\n");
        let modulus = self.spec.modulus();
        let _ = write!(out, "field {}", self.spec.bits());
        for e in (0..=self.spec.bits() as usize).rev().filter(|&e| modulus.coeff(e)) {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
        let _ = writeln!(out, "rows {} cols {} seed {}", self.d, self.n, self.seed);
        out.push_str("sources");
        for s in &self.sources {
            let _ = write!(out, " {s}");
        }
        out.push('\n');
        for v in 0..self.n {
            let _ = write!(out, "{v}");
            for e in self.column(v).expect("in range").chunks_exact(l) {
                let _ = write!(out, " {}", self.spec.to_hex(e));
            }
            out.push('\n');
        }
        out
    }
}

/// A ground element of a direct sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Left(usize),
    Right(usize),
}

/// `M1 ⊕ M2`: left columns padded below with zeros, right columns padded
/// above.
#[derive(Clone, Debug)]
pub struct UnionRep {
    left: GammoidRep,
    right: GammoidRep,
}

pub fn direct_sum(left: GammoidRep, right: GammoidRep) -> Result<UnionRep, GammoidError> {
    if left.spec != right.spec {
        return Err(GammoidError::SpecMismatch);
    }
    Ok(UnionRep { left, right })
}

impl UnionRep {
    pub fn spec(&self) -> &FieldSpec {
        &self.left.spec
    }

    pub fn dim(&self) -> usize {
        self.left.d + self.right.d
    }

    pub fn left(&self) -> &GammoidRep {
        &self.left
    }

    pub fn right(&self) -> &GammoidRep {
        &self.right
    }

    /// Writes the padded column of `e` into `out` (`dim() * limbs` words).
    pub fn column_into(&self, e: Element, out: &mut [u64]) -> Result<(), GammoidError> {
        let l = self.spec().limbs();
        let split = self.left.d * l;
        out.fill(0);
        match e {
            Element::Left(v) => out[..split].copy_from_slice(self.left.column(v)?),
            Element::Right(v) => out[split..].copy_from_slice(self.right.column(v)?),
        }
        Ok(())
    }

    pub fn column(&self, e: Element) -> Result<Vec<u64>, GammoidError> {
        let mut out = vec![0u64; self.dim() * self.spec().limbs()];
        self.column_into(e, &mut out)?;
        Ok(out)
    }

    /// Rank by elimination on the assembled block matrix.
    pub fn rank(&self, u: &[Element]) -> Result<usize, GammoidError> {
        let cols = u.iter().map(|&e| self.column(e)).collect::<Result<Vec<_>, _>>()?;
        Ok(rank_of_vectors(self.spec(), self.dim(), cols.iter().map(|c| c.as_slice())))
    }
}
