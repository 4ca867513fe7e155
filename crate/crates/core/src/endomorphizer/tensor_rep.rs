//! Tube action on tensor products of irreps.
//!
//! A vector of `α ⊗ β` is a `dim α × dim β` coefficient matrix over the pairs
//! `v^α_i ⊗ v^β_j`. Only pairs whose middle boundary labels agree exist; the
//! other entries stay zero.

use crate::linalg::{rank, CMatrix, C64};
use crate::tube::{TubeAlgebra, TubeVector};
use crate::wedderburn::Irrep;

pub struct TensorRep<'a> {
    pub alg: &'a TubeAlgebra,
    pub left: &'a Irrep,
    pub right: &'a Irrep,
}

impl<'a> TensorRep<'a> {
    pub fn new(alg: &'a TubeAlgebra, left: &'a Irrep, right: &'a Irrep) -> Self {
        TensorRep { alg, left, right }
    }

    /// Whether `v_i ⊗ w_j` is a pair basis vector.
    pub fn allowed(&self, i: usize, j: usize) -> bool {
        self.left.sectors[i].1 == self.right.sectors[j].0
    }

    /// Balanced metric weight of `v_i ⊗ w_j`: `ω_α ω_β / d_q` with `q` the
    /// shared middle label.
    pub fn weight(&self, i: usize, _j: usize) -> f64 {
        let q = self.left.sectors[i].1;
        self.left.weight.re * self.right.weight.re / self.alg.module_dims()[q]
    }

    /// `out += c · T_t · v`.
    fn accumulate_basis(&self, t: usize, c: C64, v: &CMatrix, out: &mut CMatrix) {
        let te = self.alg.element(t);
        for &(t1, t2, w) in self.alg.splits_of(t) {
            let (e1, e2) = (self.alg.element(t1), self.alg.element(t2));
            let in_l = self.left.indices(e1.inner());
            let in_r = self.right.indices(e2.inner());
            let out_l = self.left.indices(e1.outer());
            let out_r = self.right.indices(e2.outer());
            if in_l.is_empty() || in_r.is_empty() || out_l.is_empty() || out_r.is_empty() {
                continue;
            }
            debug_assert_eq!((e1.m, e2.n), (te.m, te.n));
            let sub = CMatrix::from_fn(in_l.len(), in_r.len(), |a, b| v[(in_l[a], in_r[b])]);
            if sub.iter().all(|z| z.norm() == 0.0) {
                continue;
            }
            let img = self.left.block(t1) * sub * self.right.block(t2).transpose();
            let s = c * w;
            for (a, &i) in out_l.iter().enumerate() {
                for (b, &j) in out_r.iter().enumerate() {
                    out[(i, j)] += s * img[(a, b)];
                }
            }
        }
    }

    pub fn apply_basis(&self, t: usize, v: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.left.dim, self.right.dim);
        self.accumulate_basis(t, C64::new(1.0, 0.0), v, &mut out);
        out
    }

    pub fn apply(&self, a: &TubeVector, v: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.left.dim, self.right.dim);
        for (t, c) in a.nonzeros(0.0) {
            self.accumulate_basis(t, c, v, &mut out);
        }
        out
    }

    /// Pair basis vectors that `e_00` of an irrep living on boundary pair
    /// `s0` can act on.
    fn candidates(&self, s0: (usize, usize)) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.left.dim {
            for j in 0..self.right.dim {
                if self.allowed(i, j) && self.left.sectors[i].0 == s0.0 && self.right.sectors[j].1 == s0.1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Columns `P v` for `P = e^γ_00` and every candidate pair vector `v`,
    /// flattened row-major over `(i, j)`.
    pub fn projected_columns(&self, target: &Irrep) -> CMatrix {
        let e00 = &target.vectors[0];
        let cand = self.candidates(target.sectors[0]);
        let (da, db) = (self.left.dim, self.right.dim);
        let mut cols = CMatrix::zeros(da * db, cand.len());
        for (k, &(i, j)) in cand.iter().enumerate() {
            let mut v = CMatrix::zeros(da, db);
            v[(i, j)] = C64::new(1.0, 0.0);
            let img = self.apply(e00, &v);
            for a in 0..da {
                for b in 0..db {
                    cols[(a * db + b, k)] = img[(a, b)];
                }
            }
        }
        cols
    }

    /// Multiplicity of `target` in `left ⊗ right`.
    pub fn multiplicity(&self, target: &Irrep, rank_tol: f64) -> usize {
        let cols = self.projected_columns(target);
        if cols.ncols() == 0 || cols.iter().all(|z| z.norm() < 1e-13) {
            return 0;
        }
        rank(&cols, rank_tol)
    }
}
