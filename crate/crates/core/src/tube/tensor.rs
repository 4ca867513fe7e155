use std::collections::HashMap;

use super::TubeAlgebra;
use crate::linalg::{CMatrix, C64};

/// Pairs `(A, B)` of basis tubes glued along a shared middle boundary:
/// the outer boundary of `A` is `(p, q)` and that of `B` is `(q, q')`.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl TensorSpace {
    pub fn new(alg: &TubeAlgebra) -> Self {
        let basis = alg.basis();
        let mut pairs = Vec::new();
        for (a, ea) in basis.iter().enumerate() {
            for (b, eb) in basis.iter().enumerate() {
                if ea.q == eb.p {
                    pairs.push((a, b));
                }
            }
        }
        let index = pairs.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        TensorSpace { pairs, index }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.index.get(&pair).copied()
    }

    /// Image of pair `pair` under tube `t`: the tube is split across the middle
    /// strand and each half is composed onto its factor.
    pub fn act(&self, alg: &TubeAlgebra, t: usize, pair: usize) -> Vec<(usize, C64)> {
        let (a, b) = self.pairs[pair];
        let te = alg.element(t);
        let (ea, eb) = (alg.element(a), alg.element(b));
        let mut acc: HashMap<usize, C64> = HashMap::new();
        if ea.p != te.m || eb.q != te.n {
            return Vec::new();
        }
        for &(t1, t2, w) in alg.splits_of(t) {
            let (e1, e2) = (alg.element(t1), alg.element(t2));
            if e1.n != ea.q || e2.m != eb.p {
                continue;
            }
            let p1 = alg.products_of(t1);
            let p2 = alg.products_of(t2);
            let (Ok(i1), Ok(i2)) = (p1.binary_search_by_key(&a, |x| x.0), p2.binary_search_by_key(&b, |x| x.0)) else {
                continue;
            };
            for &(u, v1) in &p1[i1].1 {
                for &(v, v2) in &p2[i2].1 {
                    let idx = self.index[&(u, v)];
                    *acc.entry(idx).or_default() += w * v1 * v2;
                }
            }
        }
        let mut out: Vec<_> = acc.into_iter().collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Dense matrix of the action of tube `t` on the pair basis.
    pub fn action_matrix(&self, alg: &TubeAlgebra, t: usize) -> CMatrix {
        let mut m = CMatrix::zeros(self.len(), self.len());
        for col in 0..self.len() {
            for (row, v) in self.act(alg, t, col) {
                m[(row, col)] += v;
            }
        }
        m
    }
}
