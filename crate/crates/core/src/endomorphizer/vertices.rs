use std::collections::BTreeMap;

use super::tensor_rep::TensorRep;
use crate::error::{Error, Result};
use crate::linalg::{range_basis, CMatrix, C64};
use crate::tube::TubeAlgebra;
use crate::wedderburn::Irrep;

/// Embedding of irrep `target` into `source.0 ⊗ source.1`, as a 3-tensor of
/// shape `(dim α, dim β, dim γ)`. Entries on non-existent pairs are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexTensor {
    pub source: (usize, usize),
    pub target: usize,
    pub multiplicity: usize,
    pub shape: (usize, usize, usize),
    entries: Vec<C64>,
}

impl VertexTensor {
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> C64 {
        let (_, db, dg) = self.shape;
        self.entries[(i * db + j) * dg + k]
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// `dim α × dim β` image of `v^γ_k`.
    pub fn slice(&self, k: usize) -> CMatrix {
        let (da, db, _) = self.shape;
        CMatrix::from_fn(da, db, |i, j| self.get(i, j, k))
    }

    /// Rows `(i, j)` flattened row-major, columns `k`.
    pub fn as_left_matrix(&self) -> CMatrix {
        let (da, db, dg) = self.shape;
        CMatrix::from_fn(da * db, dg, |r, k| self.entries[r * dg + k])
    }

    pub fn scale(&mut self, s: C64) {
        self.entries.iter_mut().for_each(|v| *v *= s);
    }
}

/// All vertex tensors, keyed by `(α, β, γ)`.
#[derive(Clone, Debug, Default)]
pub struct Vertices {
    pub dims: Vec<usize>,
    pub map: BTreeMap<(usize, usize, usize), Vec<VertexTensor>>,
}

impl Vertices {
    pub fn get(&self, a: usize, b: usize, g: usize, x: usize) -> &VertexTensor {
        &self.map[&(a, b, g)][x]
    }

    pub fn count(&self, a: usize, b: usize, g: usize) -> usize {
        self.map.get(&(a, b, g)).map_or(0, Vec::len)
    }
}

/// Vertex tensors for one admissible triple.
///
/// Seeds are `e^γ_00` images of pair basis vectors; an orthonormal basis of
/// their span is taken in the balanced metric (unitary mode) or the plain one,
/// scaled to `ω(e^γ_00)`, and transported by `e^γ_k0`.
#[allow(clippy::too_many_arguments)]
pub fn vertex_tensors(
    alg: &TubeAlgebra,
    irreps: &[Irrep],
    a: usize,
    b: usize,
    g: usize,
    expected: usize,
    unitary: bool,
    rank_tol: f64,
) -> Result<Vec<VertexTensor>> {
    let rep = TensorRep::new(alg, &irreps[a], &irreps[b]);
    let target = &irreps[g];
    let (da, db, dg) = (irreps[a].dim, irreps[b].dim, target.dim);
    let cols = rep.projected_columns(target);
    let w: Vec<f64> = (0..da * db)
        .map(|r| {
            let (i, j) = (r / db, r % db);
            if unitary && rep.allowed(i, j) {
                rep.weight(i, j)
            } else {
                1.0
            }
        })
        .collect();
    let sw: Vec<f64> = w.iter().map(|x| x.sqrt()).collect();
    let scaled = CMatrix::from_fn(cols.nrows(), cols.ncols(), |r, c| cols[(r, c)] * sw[r]);
    let u = range_basis(&scaled, rank_tol, 1e-13);
    if u.ncols() != expected {
        return Err(Error::computation(
            "vertices",
            format!("projected seed space for ({a},{b}) -> {g} has rank {}, expected {expected}", u.ncols()),
        ));
    }
    let norm = if unitary { target.weight.re.sqrt() } else { 1.0 };
    let mut out = Vec::with_capacity(expected);
    for x in 0..expected {
        let v0 = CMatrix::from_fn(da, db, |i, j| u[(i * db + j, x)] / sw[i * db + j] * norm);
        let mut entries = vec![C64::new(0.0, 0.0); da * db * dg];
        for k in 0..dg {
            let img = rep.apply(&target.vectors[k], &v0);
            for i in 0..da {
                for j in 0..db {
                    entries[(i * db + j) * dg + k] = img[(i, j)];
                }
            }
        }
        out.push(VertexTensor { source: (a, b), target: g, multiplicity: x, shape: (da, db, dg), entries });
    }
    Ok(out)
}

/// Max over basis tubes `t` and columns `k` of
/// `|R(t) V_k − Σ_k' V_k' ρ_γ(t)[k', k]|`.
pub fn intertwiner_defect(alg: &TubeAlgebra, irreps: &[Irrep], v: &VertexTensor) -> f64 {
    let rep = TensorRep::new(alg, &irreps[v.source.0], &irreps[v.source.1]);
    let target = &irreps[v.target];
    let slices: Vec<CMatrix> = (0..v.shape.2).map(|k| v.slice(k)).collect();
    let mut worst: f64 = 0.0;
    for t in 0..alg.dim() {
        let rho = target.matrix(alg, t);
        for (k, s) in slices.iter().enumerate() {
            let lhs = rep.apply_basis(t, s);
            let mut rhs = CMatrix::zeros(v.shape.0, v.shape.1);
            for (kk, s2) in slices.iter().enumerate() {
                let c = rho[(kk, k)];
                if c.norm() > 0.0 {
                    rhs += s2 * c;
                }
            }
            worst = worst.max(crate::linalg::max_abs_diff(&lhs, &rhs));
        }
    }
    worst
}

/// Balanced inner product of two `α ⊗ β` coefficient matrices.
pub fn balanced_inner(alg: &TubeAlgebra, left: &Irrep, right: &Irrep, x: &CMatrix, y: &CMatrix) -> C64 {
    let rep = TensorRep::new(alg, left, right);
    let mut s = C64::new(0.0, 0.0);
    for i in 0..left.dim {
        for j in 0..right.dim {
            if rep.allowed(i, j) {
                s += x[(i, j)].conj() * y[(i, j)] * rep.weight(i, j);
            }
        }
    }
    s
}
