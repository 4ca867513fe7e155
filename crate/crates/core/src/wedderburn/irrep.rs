use std::collections::BTreeMap;

use super::{MatrixUnitBlock, MatrixUnitSystem};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::par;
use crate::tube::{TubeAlgebra, TubeVector};

/// Irreducible representation on the left ideal spanned by `v_i = e_i0`.
///
/// The action of a basis tube only connects basis vectors whose boundary pair
/// matches the tube's outer pair (rows) and inner pair (columns), so each
/// action matrix is stored as that sector block.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub label: String,
    pub dim: usize,
    /// `v_i = e_i0`.
    pub vectors: Vec<TubeVector>,
    /// Boundary pair of `v_i`.
    pub sectors: Vec<(usize, usize)>,
    /// `⟨v_i, v_j⟩`, present in unitary mode.
    pub gram: Option<CMatrix>,
    /// `ω(e_00)`.
    pub weight: C64,
    by_sector: BTreeMap<(usize, usize), Vec<usize>>,
    /// Sector block of the action of each basis tube.
    rho: Vec<CMatrix>,
}

impl Irrep {
    /// Indices of basis vectors with boundary pair `s`.
    pub fn indices(&self, s: (usize, usize)) -> &[usize] {
        self.by_sector.get(&s).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Sector block of the action of basis tube `t`: rows `indices(outer)`,
    /// columns `indices(inner)`.
    pub fn block(&self, t: usize) -> &CMatrix {
        &self.rho[t]
    }

    /// Dense `dim × dim` action of basis tube `t`.
    pub fn matrix(&self, alg: &TubeAlgebra, t: usize) -> CMatrix {
        let e = alg.element(t);
        let mut out = CMatrix::zeros(self.dim, self.dim);
        let rows = self.indices(e.outer());
        let cols = self.indices(e.inner());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(i, j)] = self.rho[t][(a, b)];
            }
        }
        out
    }

    /// Dense action of an algebra element.
    pub fn matrix_of(&self, alg: &TubeAlgebra, a: &TubeVector) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (t, v) in a.nonzeros(0.0) {
            out += self.matrix(alg, t) * v;
        }
        out
    }
}

fn apply_basis(alg: &TubeAlgebra, t: usize, v: &TubeVector) -> TubeVector {
    let mut out = TubeVector::zeros(alg.dim());
    for (i, terms) in alg.products_of(t) {
        let vi = v.get(*i);
        if vi.norm() == 0.0 {
            continue;
        }
        for &(k, c) in terms {
            out.add_at(k, vi * c);
        }
    }
    out
}

fn build(alg: &TubeAlgebra, block: &MatrixUnitBlock, unitary: bool) -> Result<Irrep> {
    let d = block.dim;
    let vectors: Vec<TubeVector> = (0..d).map(|i| block.e(i, 0).clone()).collect();
    let mut e0 = CMatrix::zeros(alg.dim(), d);
    for (j, v) in vectors.iter().enumerate() {
        e0.set_column(j, &v.to_column());
    }
    let pinv = e0.clone().pseudo_inverse(1e-12).map_err(|e| Error::computation("irreps", e.to_string()))?;
    let mut by_sector: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, s) in block.sectors.iter().enumerate() {
        by_sector.entry(*s).or_default().push(i);
    }
    let rho = par::map_range(alg.dim(), |t| {
        let e = alg.element(t);
        let rows = by_sector.get(&e.outer()).cloned().unwrap_or_default();
        let cols = by_sector.get(&e.inner()).cloned().unwrap_or_default();
        let mut m = CMatrix::zeros(rows.len(), cols.len());
        for (b, &j) in cols.iter().enumerate() {
            let img = apply_basis(alg, t, &vectors[j]).to_column();
            let coords = &pinv * img;
            for (a, &i) in rows.iter().enumerate() {
                m[(a, b)] = coords[i];
            }
        }
        m
    });
    let gram = if unitary {
        let mut g = CMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                g[(i, j)] = alg.inner(&vectors[i], &vectors[j])?;
            }
        }
        Some(g)
    } else {
        None
    };
    Ok(Irrep { label: block.label.clone(), dim: d, weight: alg.omega(block.e(0, 0)), vectors, sectors: block.sectors.clone(), gram, by_sector, rho })
}

/// One irrep per block of the matrix-unit system.
pub fn irreps(alg: &TubeAlgebra, sys: &MatrixUnitSystem) -> Result<Vec<Irrep>> {
    sys.blocks.iter().map(|b| build(alg, b, sys.unitary)).collect()
}
