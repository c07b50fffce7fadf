//! Rank computations over a [`FieldSpec`].

use super::{FieldSpec, MAX_LIMBS};

/// An echelon basis built incrementally from packed vectors of `dim`
/// elements. Reduction uses cross-multiplication, so no inverses are needed.
#[derive(Clone)]
pub struct EchelonBasis<'a> {
    spec: &'a FieldSpec,
    dim: usize,
    rows: Vec<u64>,
    pivots: Vec<usize>,
}

impl<'a> EchelonBasis<'a> {
    pub fn new(spec: &'a FieldSpec, dim: usize) -> Self {
        EchelonBasis { spec, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` (packed, `dim * limbs` words) in place against the basis.
    fn reduce(&self, v: &mut [u64]) {
        let l = self.spec.limbs();
        let mut scratch = [0u64; MAX_LIMBS];
        let mut vp = [0u64; MAX_LIMBS];
        let stride = self.dim * l;
        for (r, &p) in self.pivots.iter().enumerate() {
            let row = &self.rows[r * stride..(r + 1) * stride];
            vp[..l].copy_from_slice(&v[p * l..(p + 1) * l]);
            if FieldSpec::is_zero_raw(&vp[..l]) {
                continue;
            }
            let rp = &row[p * l..(p + 1) * l];
            // v <- row[p] * v + v[p] * row
            for c in 0..self.dim {
                let out = &mut scratch[..l];
                self.spec.mul_raw(out, rp, &v[c * l..(c + 1) * l]);
                self.spec.mul_add_raw(out, &vp[..l], &row[c * l..(c + 1) * l]);
                v[c * l..(c + 1) * l].copy_from_slice(out);
            }
        }
    }

    /// Inserts `v` if it is independent of the current basis. Returns whether
    /// the rank grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let l = self.spec.limbs();
        assert_eq!(v.len(), self.dim * l, "vector length does not match dimension");
        let mut work = v.to_vec();
        self.reduce(&mut work);
        match (0..self.dim).find(|&c| !FieldSpec::is_zero_raw(&work[c * l..(c + 1) * l])) {
            Some(p) => {
                self.rows.extend_from_slice(&work);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }
}

/// Rank of a list of packed vectors, each `dim * limbs` words long.
pub fn rank_of_vectors<'v, I>(spec: &FieldSpec, dim: usize, vectors: I) -> usize
where
    I: IntoIterator<Item = &'v [u64]>,
{
    let mut basis = EchelonBasis::new(spec, dim);
    for v in vectors {
        basis.insert(v);
        if basis.rank() == dim {
            break;
        }
    }
    basis.rank()
}
