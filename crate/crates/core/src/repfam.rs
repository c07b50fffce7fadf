//! Ordered representative families over exterior (wedge) coordinates.
//!
//! Every member `B_j` is a tuple of `s` vectors in `F^d`. A query `A` is
//! answered by `B_j` when `A ⊎ B_j` is linearly independent. The kept
//! subfamily contains, for every query with at least one answer, the answer
//! with the largest index.

use thiserror::Error;

use crate::ff::linalg::EchelonBasis;
use crate::ff::{FieldSpec, MAX_LIMBS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepfamError {
    #[error("subset size {s} must be between 1 and the dimension {d}")]
    BadShape { d: usize, s: usize },
    #[error("member has {got} words, expected {expected}")]
    BadMember { got: usize, expected: usize },
    #[error("query {index} has {got} words, not a multiple of {stride}")]
    BadQuery { index: usize, got: usize, stride: usize },
    #[error("verification needs {needed} independence tests, limit is {limit}")]
    GuardExceeded { needed: u64, limit: u64 },
}

/// Members `B_0, …, B_{n-1}` in order, each packed as `s` consecutive
/// vectors of `d` elements, with an opaque tag per member.
#[derive(Clone, Debug)]
pub struct OrderedFamily<T = usize> {
    spec: FieldSpec,
    d: usize,
    s: usize,
    data: Vec<u64>,
    tags: Vec<T>,
}

impl<T> OrderedFamily<T> {
    pub fn new(spec: FieldSpec, d: usize, s: usize) -> Result<Self, RepfamError> {
        if s == 0 || s > d {
            return Err(RepfamError::BadShape { d, s });
        }
        Ok(OrderedFamily { spec, d, s, data: Vec::new(), tags: Vec::new() })
    }

    fn stride(&self) -> usize {
        self.s * self.d * self.spec.limbs()
    }

    pub fn push(&mut self, member: &[u64], tag: T) -> Result<(), RepfamError> {
        if member.len() != self.stride() {
            return Err(RepfamError::BadMember { got: member.len(), expected: self.stride() });
        }
        self.data.extend_from_slice(member);
        self.tags.push(tag);
        Ok(())
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn d(&self) -> usize {
        self.d
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn len(&self) -> usize {
        self.tags.len()
    }
    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn member(&self, j: usize) -> &[u64] {
        let w = self.stride();
        &self.data[j * w..(j + 1) * w]
    }

    pub fn tag(&self, j: usize) -> &T {
        &self.tags[j]
    }

    pub fn tags(&self) -> &[T] {
        &self.tags
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All `s`-subsets of `0..d` in lexicographic order; this is the coordinate
/// order of wedge vectors.
pub fn subsets(d: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(d, s));
    if s > d {
        return out;
    }
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        out.push(idx.clone());
        let Some(p) = (0..s).rev().find(|&p| idx[p] < d - s + p) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..s {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Determinant of an `s`×`s` matrix given row-major as packed elements.
/// Characteristic 2, so signs vanish.
fn det(spec: &FieldSpec, s: usize, m: &mut [u64]) -> [u64; MAX_LIMBS] {
    let l = spec.limbs();
    let at = |r: usize, c: usize| (r * s + c) * l;
    let mut out = [0u64; MAX_LIMBS];
    let mut t = [0u64; MAX_LIMBS];
    match s {
        1 => out[..l].copy_from_slice(&m[..l]),
        2 => {
            spec.mul_raw(&mut out[..l], &m[at(0, 0)..at(0, 1)], &m[at(1, 1)..at(1, 1) + l]);
            spec.mul_add_raw(&mut out[..l], &m[at(0, 1)..at(0, 1) + l], &m[at(1, 0)..at(1, 0) + l]);
        }
        3 => {
            for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
                spec.mul_raw(&mut t[..l], &m[at(0, a)..at(0, a) + l], &m[at(1, b)..at(1, b) + l]);
                let tc = t;
                spec.mul_add_raw(&mut out[..l], &tc[..l], &m[at(2, c)..at(2, c) + l]);
            }
        }
        _ => {
            // Elimination; the determinant is the product of the pivots.
            out[0] = 1;
            for c in 0..s {
                let Some(p) = (c..s).find(|&r| !FieldSpec::is_zero_raw(&m[at(r, c)..at(r, c) + l])) else {
                    return [0u64; MAX_LIMBS];
                };
                if p != c {
                    for k in 0..s {
                        for w in 0..l {
                            m.swap(at(p, k) + w, at(c, k) + w);
                        }
                    }
                }
                let piv = crate::ff::FieldElem::from_limbs(&m[at(c, c)..at(c, c) + l]);
                spec.mul_raw(&mut t[..l], &out[..l], &piv.limbs()[..l]);
                out = t;
                let inv = spec.inv(&piv).expect("pivot is nonzero");
                for r in c + 1..s {
                    let mut f = [0u64; MAX_LIMBS];
                    spec.mul_raw(&mut f[..l], &m[at(r, c)..at(r, c) + l], &inv.limbs()[..l]);
                    if FieldSpec::is_zero_raw(&f[..l]) {
                        continue;
                    }
                    for k in c..s {
                        let src: [u64; MAX_LIMBS] = {
                            let mut v = [0u64; MAX_LIMBS];
                            v[..l].copy_from_slice(&m[at(c, k)..at(c, k) + l]);
                            v
                        };
                        spec.mul_add_raw(&mut m[at(r, k)..at(r, k) + l], &f[..l], &src[..l]);
                    }
                }
            }
        }
    }
    out
}

fn wedge_into(spec: &FieldSpec, d: usize, s: usize, member: &[u64], subsets: &[Vec<usize>], out: &mut [u64]) {
    let l = spec.limbs();
    if s == 2 {
        let (x, y) = member.split_at(d * l);
        for (c, rows) in out.chunks_exact_mut(l).zip(subsets) {
            let (i, j) = (rows[0], rows[1]);
            spec.mul_raw(c, &x[i * l..(i + 1) * l], &y[j * l..(j + 1) * l]);
            spec.mul_add_raw(c, &x[j * l..(j + 1) * l], &y[i * l..(i + 1) * l]);
        }
        return;
    }
    let mut minor = vec![0u64; s * s * l];
    for (c, rows) in out.chunks_exact_mut(l).zip(subsets) {
        for (r, &row) in rows.iter().enumerate() {
            for v in 0..s {
                let src = &member[(v * d + row) * l..(v * d + row + 1) * l];
                minor[(r * s + v) * l..(r * s + v + 1) * l].copy_from_slice(src);
            }
        }
        c.copy_from_slice(&det(spec, s, &mut minor)[..l]);
    }
}

/// Exterior coordinates of an `s`-tuple of `d`-vectors: one `s`×`s` minor
/// per row subset, subsets in lexicographic order.
pub fn wedge(spec: &FieldSpec, d: usize, s: usize, member: &[u64]) -> Result<Vec<u64>, RepfamError> {
    let l = spec.limbs();
    if s == 0 || s > d {
        return Err(RepfamError::BadShape { d, s });
    }
    if member.len() != s * d * l {
        return Err(RepfamError::BadMember { got: member.len(), expected: s * d * l });
    }
    let subs = subsets(d, s);
    let mut out = vec![0u64; subs.len() * l];
    wedge_into(spec, d, s, member, &subs, &mut out);
    Ok(out)
}

/// Kept rows of the greedy sweep, each normalized so its pivot entry is 1.
struct SparseBasis<'a> {
    spec: &'a FieldSpec,
    rows: Vec<Vec<u64>>,
    supports: Vec<Vec<usize>>,
    pivots: Vec<usize>,
}

impl<'a> SparseBasis<'a> {
    /// Reduces `w` against the basis and, if something remains, adds it.
    fn insert(&mut self, w: &mut [u64]) -> bool {
        let l = self.spec.limbs();
        let mut c = [0u64; MAX_LIMBS];
        for ((row, support), &p) in self.rows.iter().zip(&self.supports).zip(&self.pivots) {
            c[..l].copy_from_slice(&w[p * l..(p + 1) * l]);
            if FieldSpec::is_zero_raw(&c[..l]) {
                continue;
            }
            for &i in support {
                self.spec.mul_add_raw(&mut w[i * l..(i + 1) * l], &c[..l], &row[i * l..(i + 1) * l]);
            }
        }
        let Some(p) = (0..w.len() / l).find(|&i| !FieldSpec::is_zero_raw(&w[i * l..(i + 1) * l])) else {
            return false;
        };
        let lead = crate::ff::FieldElem::from_limbs(&w[p * l..(p + 1) * l]);
        let inv = self.spec.inv(&lead).expect("pivot is nonzero");
        let mut support = Vec::new();
        let mut t = [0u64; MAX_LIMBS];
        for i in p..w.len() / l {
            let e = &mut w[i * l..(i + 1) * l];
            if FieldSpec::is_zero_raw(e) {
                continue;
            }
            self.spec.mul_raw(&mut t[..l], e, &inv.limbs()[..l]);
            e.copy_from_slice(&t[..l]);
            support.push(i);
        }
        self.rows.push(w.to_vec());
        self.supports.push(support);
        self.pivots.push(p);
        true
    }
}

/// Sweeps members from the highest index down and keeps each one whose
/// wedge vector is independent of those already kept. Returns the kept
/// indices ascending; there are at most `C(d, s)` of them.
pub fn ordered_rep_family<T>(fam: &OrderedFamily<T>) -> Vec<usize> {
    let spec = &fam.spec;
    let l = spec.limbs();
    let subs = subsets(fam.d, fam.s);
    let full = subs.len();
    let mut basis = SparseBasis { spec, rows: Vec::new(), supports: Vec::new(), pivots: Vec::new() };
    let mut w = vec![0u64; full * l];
    let mut kept = Vec::new();
    for j in (0..fam.len()).rev() {
        wedge_into(spec, fam.d, fam.s, fam.member(j), &subs, &mut w);
        if basis.insert(&mut w) {
            kept.push(j);
            if kept.len() == full {
                break;
            }
        }
    }
    kept.reverse();
    kept
}

/// Cap on `queries × members` independence tests in one verification.
pub const VERIFY_LIMIT: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Position of the query in the supplied list.
    pub query: usize,
    /// The largest answering member index, missing from `kept`.
    pub expected: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub queries: usize,
    /// Queries with at least one answer.
    pub answered: usize,
    pub violations: usize,
    pub first_violation: Option<Violation>,
}

impl PropertyReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Brute-force check that for every query `A` with an answer, the largest
/// `j` with `A ⊎ B_j` independent is in `kept`. Each query is a packed list
/// of `d`-vectors.
pub fn verify_property_a<T>(
    fam: &OrderedFamily<T>,
    kept: &[usize],
    queries: &[Vec<u64>],
) -> Result<PropertyReport, RepfamError> {
    let needed = queries.len() as u64 * fam.len() as u64;
    if needed > VERIFY_LIMIT {
        return Err(RepfamError::GuardExceeded { needed, limit: VERIFY_LIMIT });
    }
    let l = fam.spec.limbs();
    let stride = fam.d * l;
    let mut report = PropertyReport { queries: queries.len(), ..Default::default() };
    for (qi, a) in queries.iter().enumerate() {
        if a.len() % stride != 0 {
            return Err(RepfamError::BadQuery { index: qi, got: a.len(), stride });
        }
        let mut base = EchelonBasis::new(&fam.spec, fam.d);
        let size = a.len() / stride;
        let independent = a.chunks_exact(stride).all(|v| base.insert(v));
        if !independent || size + fam.s > fam.d {
            continue;
        }
        let answer = (0..fam.len()).rev().find(|&j| {
            let mut b = base.clone();
            fam.member(j).chunks_exact(stride).all(|v| b.insert(v))
        });
        if let Some(j) = answer {
            report.answered += 1;
            if kept.binary_search(&j).is_err() {
                report.violations += 1;
                report.first_violation.get_or_insert(Violation { query: qi, expected: j });
            }
        }
    }
    Ok(report)
}
