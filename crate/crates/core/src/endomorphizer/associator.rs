use std::collections::BTreeMap;

use super::vertices::Vertices;
use crate::category::ring::FusionRing;
use crate::category::symbols::{left_trees, right_trees, BlockKey};
use crate::error::{Error, Result};
use crate::linalg::{least_squares, CMatrix, C64};
use crate::par;

/// `Σ_e V^{ab}_e[i,j,e] V^{ec}_d[e,k,l]`, flattened over `(i, j, k, l)`.
fn left_contraction(v1: &CMatrix, v2: &CMatrix) -> Vec<C64> {
    // v1: (Da Db) × De, v2: De × (Dc Dd); row-major flattening of the product
    let p = v1 * v2;
    let (r, c) = p.shape();
    let mut out = Vec::with_capacity(r * c);
    for i in 0..r {
        for j in 0..c {
            out.push(p[(i, j)]);
        }
    }
    out
}

/// `Σ_f V^{bc}_f[j,k,f] V^{af}_d[i,f,l]`, flattened over `(i, j, k, l)`.
fn right_contraction(bc: &super::VertexTensor, af: &super::VertexTensor) -> Vec<C64> {
    let (db, dc, df) = bc.shape;
    let (da, _, dd) = af.shape;
    let m_bc = bc.as_left_matrix();
    let mut out = vec![C64::new(0.0, 0.0); da * db * dc * dd];
    for i in 0..da {
        let m_i = CMatrix::from_fn(df, dd, |f, l| af.get(i, f, l));
        let p = &m_bc * m_i;
        for jk in 0..db * dc {
            for l in 0..dd {
                out[(i * db * dc + jk) * dd + l] = p[(jk, l)];
            }
        }
    }
    out
}

/// Solves `Σ_right B_right F[left, right] = A_left` for every admissible
/// `(a, b, c, d)`. Returns the blocks and the largest max-norm residual.
pub fn solve_associator(ring: &FusionRing, vertices: &Vertices, residual_tol: f64) -> Result<(BTreeMap<BlockKey, CMatrix>, f64)> {
    let r = ring.rank();
    let keys: Vec<BlockKey> = (0..r * r * r * r)
        .map(|i| [i / (r * r * r), (i / (r * r)) % r, (i / r) % r, i % r])
        .filter(|&[a, b, c, d]| !left_trees(ring, ring, a, b, c, d).is_empty())
        .collect();
    let solved = par::try_map_range(keys.len(), |n| {
        let [a, b, c, d] = keys[n];
        let left = left_trees(ring, ring, a, b, c, d);
        let right = right_trees(ring, a, b, c, d);
        let len = vertices.dims[a] * vertices.dims[b] * vertices.dims[c] * vertices.dims[d];
        let mut am = CMatrix::zeros(len, left.len());
        for (col, t) in left.iter().enumerate() {
            let v1 = vertices.get(a, b, t.mid, t.first).as_left_matrix();
            let v2 = vertices.get(t.mid, c, d, t.second);
            let (de, dc, dd) = v2.shape;
            let v2m = CMatrix::from_fn(de, dc * dd, |e, kl| v2.get(e, kl / dd, kl % dd));
            am.set_column(col, &nalgebra::DVector::from_vec(left_contraction(&v1, &v2m)));
        }
        let mut bm = CMatrix::zeros(len, right.len());
        for (col, t) in right.iter().enumerate() {
            let bc = vertices.get(b, c, t.mid, t.first);
            let af = vertices.get(a, t.mid, d, t.second);
            bm.set_column(col, &nalgebra::DVector::from_vec(right_contraction(bc, af)));
        }
        let (x, res) = least_squares(&bm, &am, 1e-10)
            .ok_or_else(|| Error::computation("associators", format!("right-tree system for {:?} is rank deficient", [a, b, c, d])))?;
        if res > residual_tol {
            return Err(Error::computation("associators", format!("solve residual {res:.3e} for {:?} exceeds {residual_tol:.1e}", [a, b, c, d])));
        }
        Ok((x.transpose(), res))
    })?;
    let mut blocks = BTreeMap::new();
    let mut worst: f64 = 0.0;
    for (key, (m, res)) in keys.into_iter().zip(solved) {
        worst = worst.max(res);
        blocks.insert(key, m);
    }
    Ok((blocks, worst))
}
