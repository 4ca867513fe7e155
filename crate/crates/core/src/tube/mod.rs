//! The module tube algebra.
//!
//! Basis tubes carry an inner boundary pair `(m, n)`, an outer pair `(p, q)`, a
//! strand `x` and the two vertices `x ▷ m → p`, `x ▷ n → q`. Composition stacks
//! a tube on the outside of another; the product is reduced with one L-symbol
//! and one inverse L-symbol.

mod tensor;
mod vector;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

pub use tensor::TensorSpace;
pub use vector::TubeVector;

use crate::category::data::{FusionCategoryData, ModuleCategoryData};
use crate::category::ring::ModuleFusion;
use crate::category::symbols::{BlockKey, Tree};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64, ZERO};
use crate::par;

/// Default magnitude below which structure constants are dropped.
pub const COEFF_FLOOR: f64 = 1e-14;

/// One basis tube. Field order is the lexicographic basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TubeBasisElement {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub x: usize,
    pub alpha: usize,
    pub beta: usize,
}

impl TubeBasisElement {
    pub fn inner(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn outer(&self) -> (usize, usize) {
        (self.p, self.q)
    }
}

type Sparse = Vec<(usize, C64)>;

/// Whether to build the star structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarMode {
    /// Build it when both inputs are in a unitary gauge.
    Auto,
    Require,
    Skip,
}

#[derive(Clone, Debug)]
pub struct TubeAlgebra {
    basis: Vec<TubeBasisElement>,
    index: HashMap<TubeBasisElement, usize>,
    /// `products[j]` lists `(i, T_j ∘ T_i)` for every composable `i`.
    products: Vec<Vec<(usize, Sparse)>>,
    star: Option<Vec<Sparse>>,
    /// `(T1, T2, c)` with `T = Σ c T1 ⊗ T2` across the middle strand.
    splits: Vec<Vec<(usize, usize, f64)>>,
    omega_weights: Vec<f64>,
    unit: TubeVector,
    fusion: ModuleFusion,
    module_dims: Vec<f64>,
    cat_dims: Vec<f64>,
    ring_unit: usize,
}

/// Basis in lexicographic `(m, n, p, q, x, α, β)` order.
pub fn enumerate_basis(fusion: &ModuleFusion) -> Vec<TubeBasisElement> {
    let k = fusion.rank();
    let r = crate::category::ring::FusionAction::ring_rank(fusion);
    let mut out = Vec::new();
    for m in 0..k {
        for n in 0..k {
            for p in 0..k {
                for q in 0..k {
                    for x in 0..r {
                        for alpha in 0..fusion.nm(x, m, p) {
                            for beta in 0..fusion.nm(x, n, q) {
                                out.push(TubeBasisElement { m, n, p, q, x, alpha, beta });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// `Σ_{m,n,p,q,x} Nm(x,m,p) Nm(x,n,q)`.
pub fn algebra_dimension(fusion: &ModuleFusion) -> usize {
    let k = fusion.rank();
    let r = crate::category::ring::FusionAction::ring_rank(fusion);
    let mut total = 0;
    for x in 0..r {
        let s: usize = (0..k).flat_map(|m| (0..k).map(move |p| (m, p))).map(|(m, p)| fusion.nm(x, m, p)).sum();
        total += s * s;
    }
    total
}

impl TubeAlgebra {
    /// Builds the algebra, with the star structure when both inputs are unitary.
    pub fn new(cat: &FusionCategoryData, module: &ModuleCategoryData) -> Result<Self> {
        TubeAlgebra::with_star(cat, module, StarMode::Auto)
    }

    pub fn with_star(cat: &FusionCategoryData, module: &ModuleCategoryData, mode: StarMode) -> Result<Self> {
        let fusion = module.fusion().clone();
        let ring = cat.ring();
        let basis = enumerate_basis(&fusion);
        let index: HashMap<_, _> = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();

        let keys: Vec<BlockKey> = module.symbols().blocks().map(|(k, _)| *k).collect();
        let invs = par::try_map_range(keys.len(), |i| {
            let key = keys[i];
            module
                .symbols()
                .block(key)
                .expect("key listed")
                .matrix
                .clone()
                .try_inverse()
                .ok_or_else(|| Error::computation("tube", format!("L block {key:?} is singular")))
        })?;
        let linv: HashMap<BlockKey, CMatrix> = keys.into_iter().zip(invs).collect();

        let mut by_outer: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            by_outer.entry(b.outer()).or_default().push(i);
        }

        let ctx = Ctx { module, linv: &linv, index: &index, cat_dims: cat.dims() };
        let products = par::try_map_range(basis.len(), |j| {
            let top = basis[j];
            let mut row = Vec::new();
            if let Some(below) = by_outer.get(&top.inner()) {
                for &i in below {
                    let v = ctx.compose(&top, &basis[i])?;
                    if !v.is_empty() {
                        row.push((i, v));
                    }
                }
            }
            Ok::<_, Error>(row)
        })?;

        let can_star = cat.is_unitary() && module.is_unitary() && (0..ring.rank()).all(|a| ring.dual(a).is_some());
        let star = match (mode, can_star) {
            (StarMode::Skip, _) | (StarMode::Auto, false) => None,
            (StarMode::Require, false) => return Err(Error::Unsupported("star structure needs unitary input data with duals".into())),
            (_, true) => Some(par::try_map_range(basis.len(), |i| ctx.star(&basis[i], ring.unit(), ring.dual(basis[i].x).expect("checked")))?),
        };

        let module_dims = module.dims().to_vec();
        let cat_dims = cat.dims().to_vec();
        let u = ring.unit();
        let omega_weights = basis.iter().map(|b| if b.x == u { module_dims[b.m] * module_dims[b.n] } else { 0.0 }).collect();
        let mut unit = TubeVector::zeros(basis.len());
        let k = fusion.rank();
        for m in 0..k {
            for n in 0..k {
                let e = TubeBasisElement { m, n, p: m, q: n, x: u, alpha: 0, beta: 0 };
                unit.set(index[&e], C64::new(1.0, 0.0));
            }
        }
        let splits = basis.iter().map(|t| split(t, &fusion, &index, &module_dims, &cat_dims)).collect();

        Ok(TubeAlgebra { basis, index, products, star, splits, omega_weights, unit, fusion, module_dims, cat_dims, ring_unit: u })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[TubeBasisElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> TubeBasisElement {
        self.basis[i]
    }

    pub fn index_of(&self, e: &TubeBasisElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn fusion(&self) -> &ModuleFusion {
        &self.fusion
    }

    pub fn module_dims(&self) -> &[f64] {
        &self.module_dims
    }

    pub fn cat_dims(&self) -> &[f64] {
        &self.cat_dims
    }

    pub fn unit(&self) -> &TubeVector {
        &self.unit
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    /// Number of stored nonzero structure constants.
    pub fn structure_constant_count(&self) -> usize {
        self.products.iter().flat_map(|r| r.iter()).map(|(_, v)| v.len()).sum()
    }

    /// `T_j ∘ T_i` as stored: `(i, coefficients)` for each composable `i`.
    pub(crate) fn products_of(&self, j: usize) -> &[(usize, Sparse)] {
        &self.products[j]
    }

    pub(crate) fn splits_of(&self, t: usize) -> &[(usize, usize, f64)] {
        &self.splits[t]
    }

    /// `T_a ∘ T_b`, with `T_a` stacked outside.
    pub fn compose_basis(&self, a: usize, b: usize) -> TubeVector {
        let mut out = TubeVector::zeros(self.dim());
        if let Ok(pos) = self.products[a].binary_search_by_key(&b, |(i, _)| *i) {
            for &(t, v) in &self.products[a][pos].1 {
                out.add_at(t, v);
            }
        }
        out
    }

    /// `a ∘ b`.
    pub fn mul(&self, a: &TubeVector, b: &TubeVector) -> TubeVector {
        let mut out = TubeVector::zeros(self.dim());
        for (j, aj) in a.nonzeros(0.0) {
            for (i, terms) in &self.products[j] {
                let bi = b.get(*i);
                if bi == ZERO {
                    continue;
                }
                let c = aj * bi;
                for &(t, v) in terms {
                    out.add_at(t, c * v);
                }
            }
        }
        out
    }

    /// Matrix of `v ↦ a ∘ v`.
    pub fn left_matrix(&self, a: &TubeVector) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for (j, aj) in a.nonzeros(0.0) {
            for (i, terms) in &self.products[j] {
                for &(t, v) in terms {
                    m[(t, *i)] += aj * v;
                }
            }
        }
        m
    }

    /// Matrix of `v ↦ v ∘ a`.
    pub fn right_matrix(&self, a: &TubeVector) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for j in 0..self.dim() {
            for (i, terms) in &self.products[j] {
                let ai = a.get(*i);
                if ai == ZERO {
                    continue;
                }
                for &(t, v) in terms {
                    m[(t, j)] += ai * v;
                }
            }
        }
        m
    }

    fn star_table(&self) -> Result<&[Sparse]> {
        self.star.as_deref().ok_or_else(|| Error::Unsupported("star structure is only available for unitary input data".into()))
    }

    pub fn star_basis(&self, i: usize) -> Result<TubeVector> {
        let table = self.star_table()?;
        let mut out = TubeVector::zeros(self.dim());
        for &(t, v) in &table[i] {
            out.add_at(t, v);
        }
        Ok(out)
    }

    /// Antilinear involution exchanging inner and outer boundaries.
    pub fn star(&self, a: &TubeVector) -> Result<TubeVector> {
        let table = self.star_table()?;
        let mut out = TubeVector::zeros(self.dim());
        for (i, ai) in a.nonzeros(0.0) {
            let ac = ai.conj();
            for &(t, v) in &table[i] {
                out.add_at(t, ac * v);
            }
        }
        Ok(out)
    }

    /// Identity-strand coefficients weighted by `d_m d_n`.
    pub fn omega(&self, a: &TubeVector) -> C64 {
        a.nonzeros(0.0).map(|(i, v)| v * self.omega_weights[i]).sum()
    }

    /// `ω(a* ∘ b)`.
    pub fn inner(&self, a: &TubeVector, b: &TubeVector) -> Result<C64> {
        Ok(self.omega(&self.mul(&self.star(a)?, b)))
    }

    /// Basis indices grouped by outer boundary pair.
    pub fn by_outer(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut out: BTreeMap<_, Vec<usize>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            out.entry(b.outer()).or_default().push(i);
        }
        out
    }

    /// All boundary pairs `(m, n)`, in order.
    pub fn sectors(&self) -> Vec<(usize, usize)> {
        let k = self.fusion.rank();
        (0..k).flat_map(|m| (0..k).map(move |n| (m, n))).collect()
    }

    /// Identity tube on the boundary pair `(m, n)`.
    pub fn sector_unit(&self, s: (usize, usize)) -> usize {
        self.index[&TubeBasisElement { m: s.0, n: s.1, p: s.0, q: s.1, x: self.ring_unit, alpha: 0, beta: 0 }]
    }

    /// Label of the identity strand.
    pub fn ring_unit(&self) -> usize {
        self.ring_unit
    }
}

struct Ctx<'a> {
    module: &'a ModuleCategoryData,
    linv: &'a HashMap<BlockKey, CMatrix>,
    index: &'a HashMap<TubeBasisElement, usize>,
    cat_dims: &'a [f64],
}

impl Ctx<'_> {
    /// `top ∘ bottom`; requires `bottom.outer() == top.inner()`.
    fn compose(&self, top: &TubeBasisElement, bottom: &TubeBasisElement) -> Result<Sparse> {
        let (m, n, p, q, x, al, be) = (bottom.m, bottom.n, bottom.p, bottom.q, bottom.x, bottom.alpha, bottom.beta);
        let (p2, q2, x2, al2, be2) = (top.p, top.q, top.x, top.alpha, top.beta);
        let kq = [x2, x, n, q2];
        let kp = [x2, x, m, p2];
        let bq = self.module.symbols().block(kq).ok_or_else(|| Error::Missing(format!("L block {kq:?}")))?;
        let bp = self.module.symbols().block(kp).ok_or_else(|| Error::Missing(format!("L block {kp:?}")))?;
        let li = &self.linv[&kq];
        let row = bq.right_pos(Tree::new(be, q, be2)).ok_or_else(|| Error::Missing(format!("L tree in {kq:?}")))?;
        let col = bp.right_pos(Tree::new(al, p, al2)).ok_or_else(|| Error::Missing(format!("L tree in {kp:?}")))?;
        let nm = self.module.fusion();
        let mut acc: BTreeMap<usize, C64> = BTreeMap::new();
        for (a1, lt) in bq.left.iter().enumerate() {
            let c1 = li[(row, a1)];
            if c1.norm() < COEFF_FLOOR {
                continue;
            }
            let y = lt.mid;
            let scale = (self.cat_dims[x] * self.cat_dims[x2] / self.cat_dims[y]).sqrt();
            for si in 0..nm.nm(y, m, p2) {
                let Some(a2) = bp.left_pos(Tree::new(lt.first, y, si)) else { continue };
                let c2 = bp.matrix[(a2, col)];
                if c2.norm() < COEFF_FLOOR {
                    continue;
                }
                let t = self.index[&TubeBasisElement { m, n, p: p2, q: q2, x: y, alpha: si, beta: lt.second }];
                *acc.entry(t).or_insert(ZERO) += scale * c1 * c2;
            }
        }
        Ok(acc.into_iter().filter(|(_, v)| v.norm() >= COEFF_FLOOR).collect())
    }

    /// Star of one basis tube, before conjugating the input coefficient.
    fn star(&self, e: &TubeBasisElement, unit: usize, xb: usize) -> Result<Sparse> {
        let (m, n, p, q, x, al, be) = (e.m, e.n, e.p, e.q, e.x, e.alpha, e.beta);
        let d = self.module.dims();
        let km = [xb, x, m, m];
        let kn = [xb, x, n, n];
        let bm = self.module.symbols().block(km).ok_or_else(|| Error::Missing(format!("L block {km:?}")))?;
        let bn = self.module.symbols().block(kn).ok_or_else(|| Error::Missing(format!("L block {kn:?}")))?;
        let cup = Tree::new(0, unit, 0);
        let rm = bm.left_pos(cup).ok_or_else(|| Error::Missing(format!("unit tree in {km:?}")))?;
        let rn = bn.left_pos(cup).ok_or_else(|| Error::Missing(format!("unit tree in {kn:?}")))?;
        let lim = &self.linv[&km];
        let scale = self.cat_dims[x] * (d[m] * d[n] / (d[p] * d[q])).sqrt();
        let nm = self.module.fusion();
        let mut out = Vec::new();
        for si in 0..nm.nm(xb, p, m) {
            let Some(cm) = bm.right_pos(Tree::new(al, p, si)) else { continue };
            // (L⁻¹)ᵀ entry
            let a = lim[(cm, rm)];
            for ta in 0..nm.nm(xb, q, n) {
                let Some(cn) = bn.right_pos(Tree::new(be, q, ta)) else { continue };
                let v = scale * a * bn.matrix[(rn, cn)];
                if v.norm() >= COEFF_FLOOR {
                    out.push((self.index[&TubeBasisElement { m: p, n: q, p: m, q: n, x: xb, alpha: si, beta: ta }], v));
                }
            }
        }
        out.sort_by_key(|(t, _)| *t);
        Ok(out)
    }
}

/// Splits `T = (p, q', r, s; σ, y, τ)` across the shared middle boundary into
/// half-tubes `(p, q, r, k; σ, y, γ)` and `(q, q', k, s; γ, y, τ)` with weight
/// `√(d_k / (d_y d_q))`.
fn split(
    t: &TubeBasisElement,
    fusion: &ModuleFusion,
    index: &HashMap<TubeBasisElement, usize>,
    module_dims: &[f64],
    cat_dims: &[f64],
) -> Vec<(usize, usize, f64)> {
    let k = fusion.rank();
    let y = t.x;
    let mut out = Vec::new();
    for q in 0..k {
        for kk in 0..k {
            let w = (module_dims[kk] / (cat_dims[y] * module_dims[q])).sqrt();
            for g in 0..fusion.nm(y, q, kk) {
                let t1 = index[&TubeBasisElement { m: t.m, n: q, p: t.p, q: kk, x: y, alpha: t.alpha, beta: g }];
                let t2 = index[&TubeBasisElement { m: q, n: t.n, p: kk, q: t.q, x: y, alpha: g, beta: t.beta }];
                out.push((t1, t2, w));
            }
        }
    }
    out
}
