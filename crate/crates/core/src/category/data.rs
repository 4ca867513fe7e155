use std::collections::BTreeMap;

use crate::category::pentagon::{module_pentagon_residual, pentagon_residual};
use crate::category::ring::{
    fp_dimensions, FusionAction, module_fp_dimensions, validate_fusion_ring, validate_module_fusion, FusionRing, ModuleFusion,
};
use crate::category::symbols::{BlockKey, SymbolTable, Tree};
use crate::error::{Error, Result, Rule, ValidationReport};
use crate::linalg::{rank, CMatrix, C64};

/// Block unitarity below this counts as a unitary gauge when detecting the flag.
pub const UNITARY_DETECT_TOL: f64 = 1e-10;

/// Skeletal fusion category: fusion rules, F-symbols and dimensions.
#[derive(Clone, Debug)]
pub struct FusionCategoryData {
    ring: FusionRing,
    f: SymbolTable,
    dims: Vec<f64>,
    unitary: bool,
    kappa: Option<Vec<i8>>,
}

impl FusionCategoryData {
    /// Dimensions are recomputed when `dims` is `None`. The unitary flag and
    /// Frobenius–Schur signs are read off the data.
    pub fn new(ring: FusionRing, f: SymbolTable, dims: Option<Vec<f64>>) -> Result<Self> {
        let dims = match dims {
            Some(d) if d.len() != ring.rank() => return Err(Error::Malformed("dimension list does not match rank".into())),
            Some(d) => d,
            None => fp_dimensions(&ring)?,
        };
        let unitary = f.max_unitarity_defect() <= UNITARY_DETECT_TOL;
        let mut out = FusionCategoryData { ring, f, dims, unitary, kappa: None };
        if unitary {
            out.kappa = out.read_kappa(UNITARY_DETECT_TOL);
        }
        Ok(out)
    }

    pub fn from_entries(ring: FusionRing, entries: &[(BlockKey, Tree, Tree, C64)], dims: Option<Vec<f64>>) -> Result<Self> {
        let f = SymbolTable::from_entries(&ring, &ring, entries)?;
        FusionCategoryData::new(ring, f, dims)
    }

    pub fn from_blocks(ring: FusionRing, blocks: BTreeMap<BlockKey, CMatrix>, dims: Option<Vec<f64>>) -> Result<Self> {
        let f = SymbolTable::from_blocks(&ring, &ring, blocks)?;
        FusionCategoryData::new(ring, f, dims)
    }

    /// `κ_a = d_a F^{a ā a}_a[(0,1,0),(0,1,0)]` when every value is ±1.
    fn read_kappa(&self, tol: f64) -> Option<Vec<i8>> {
        let u = self.ring.unit();
        (0..self.ring.rank())
            .map(|a| {
                let ad = self.ring.dual(a)?;
                let t = Tree::new(0, u, 0);
                let v = self.f.get([a, ad, a, a], t, t) * self.dims[a];
                if (v - C64::new(1.0, 0.0)).norm() <= tol {
                    Some(1)
                } else if (v + C64::new(1.0, 0.0)).norm() <= tol {
                    Some(-1)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.f
    }

    pub fn dims(&self) -> &[f64] {
        &self.dims
    }

    pub fn dim(&self, a: usize) -> f64 {
        self.dims[a]
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn kappa(&self) -> Option<&[i8]> {
        self.kappa.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    /// Single F-symbol `F^{abc}_d[(α,e,β),(μ,f,ν)]`; zero when fusion forbids it.
    pub fn f(&self, a: usize, b: usize, c: usize, d: usize, left: Tree, right: Tree) -> C64 {
        self.f.get([a, b, c, d], left, right)
    }

    /// Dense `(α,e,β) × (μ,f,ν)` block in tree order; 0×0 when forbidden.
    pub fn f_block(&self, a: usize, b: usize, c: usize, d: usize) -> CMatrix {
        self.f.matrix([a, b, c, d])
    }

    /// Ring axioms, block invertibility, dimension recurrence and pentagon.
    pub fn validate(&self, residual_tol: f64) -> ValidationReport {
        let mut rep = validate_fusion_ring(&self.ring);
        if !rep.is_ok() {
            return rep;
        }
        check_blocks(&self.f, &mut rep, "F");
        let r = self.ring.rank();
        for a in 0..r {
            if !(self.dims[a] > 0.0) {
                rep.push(Rule::Dimensions, format!("d_{} is not positive", self.ring.label(a)));
            }
            for b in 0..r {
                let rhs: f64 = (0..r).map(|c| self.ring.n(a, b, c) as f64 * self.dims[c]).sum();
                if (self.dims[a] * self.dims[b] - rhs).abs() > 1e-9 * (1.0 + rhs) {
                    rep.push(Rule::Dimensions, format!("d_{} d_{} differs from the fusion sum", self.ring.label(a), self.ring.label(b)));
                }
            }
        }
        if rep.is_ok() {
            let res = pentagon_residual(self);
            if res > residual_tol {
                rep.push(Rule::Pentagon, format!("pentagon residual {res:.3e} exceeds {residual_tol:.1e}"));
            }
        }
        rep
    }

    /// Same data with the unitary flag forced; used when a caller overrides detection.
    pub fn with_unitary(mut self, unitary: bool) -> Self {
        self.unitary = unitary;
        self.kappa = if unitary { self.read_kappa(UNITARY_DETECT_TOL) } else { None };
        self
    }
}

fn check_blocks(table: &SymbolTable, rep: &mut ValidationReport, what: &str) {
    for (key, b) in table.blocks() {
        let (r, c) = b.matrix.shape();
        if r != c {
            rep.push(Rule::BlockShape, format!("{what} block {key:?} is {r}x{c}"));
        } else if rank(&b.matrix, 1e-12) < r {
            rep.push(Rule::Invertibility, format!("{what} block {key:?} is singular"));
        }
    }
}

/// Skeletal module category: module fusion rules, L-symbols and dimensions.
#[derive(Clone, Debug)]
pub struct ModuleCategoryData {
    fusion: ModuleFusion,
    l: SymbolTable,
    dims: Vec<f64>,
    unitary: bool,
}

impl ModuleCategoryData {
    pub fn new(cat: &FusionCategoryData, fusion: ModuleFusion, l: SymbolTable, dims: Option<Vec<f64>>) -> Result<Self> {
        if fusion.ring_rank() != cat.rank() {
            return Err(Error::Malformed("module refers to a ring of a different rank".into()));
        }
        let dims = match dims {
            Some(d) if d.len() != fusion.rank() => return Err(Error::Malformed("module dimension list does not match rank".into())),
            Some(d) => d,
            None => module_fp_dimensions(cat.ring(), cat.dims(), &fusion)?,
        };
        let unitary = l.max_unitarity_defect() <= UNITARY_DETECT_TOL;
        Ok(ModuleCategoryData { fusion, l, dims, unitary })
    }

    pub fn from_entries(
        cat: &FusionCategoryData,
        fusion: ModuleFusion,
        entries: &[(BlockKey, Tree, Tree, C64)],
        dims: Option<Vec<f64>>,
    ) -> Result<Self> {
        let l = SymbolTable::from_entries(cat.ring(), &fusion, entries)?;
        ModuleCategoryData::new(cat, fusion, l, dims)
    }

    pub fn from_blocks(
        cat: &FusionCategoryData,
        fusion: ModuleFusion,
        blocks: BTreeMap<BlockKey, CMatrix>,
        dims: Option<Vec<f64>>,
    ) -> Result<Self> {
        let l = SymbolTable::from_blocks(cat.ring(), &fusion, blocks)?;
        ModuleCategoryData::new(cat, fusion, l, dims)
    }

    /// The category acting on itself, with `L := F`.
    pub fn regular(cat: &FusionCategoryData) -> Result<Self> {
        let fusion = ModuleFusion::regular(cat.ring());
        let blocks = cat.symbols().blocks().map(|(k, b)| (*k, b.matrix.clone())).collect();
        ModuleCategoryData::from_blocks(cat, fusion, blocks, None)
    }

    pub fn fusion(&self) -> &ModuleFusion {
        &self.fusion
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.l
    }

    pub fn dims(&self) -> &[f64] {
        &self.dims
    }

    pub fn dim(&self, m: usize) -> f64 {
        self.dims[m]
    }

    pub fn rank(&self) -> usize {
        self.fusion.rank()
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn nm(&self, a: usize, m: usize, n: usize) -> usize {
        self.fusion.nm(a, m, n)
    }

    /// Single L-symbol `L^{abm}_n[(α,e,β),(μ,p,ν)]`.
    pub fn l(&self, a: usize, b: usize, m: usize, n: usize, left: Tree, right: Tree) -> C64 {
        self.l.get([a, b, m, n], left, right)
    }

    pub fn l_block(&self, a: usize, b: usize, m: usize, n: usize) -> CMatrix {
        self.l.matrix([a, b, m, n])
    }

    pub fn validate(&self, cat: &FusionCategoryData, residual_tol: f64) -> ValidationReport {
        let mut rep = validate_module_fusion(cat.ring(), &self.fusion);
        if !rep.is_ok() {
            return rep;
        }
        if !self.fusion.is_indecomposable() {
            rep.push(Rule::Indecomposable, "module category is decomposable");
        }
        check_blocks(&self.l, &mut rep, "L");
        let r = cat.rank();
        let k = self.rank();
        for a in 0..r {
            for m in 0..k {
                let rhs: f64 = (0..k).map(|n| self.fusion.nm(a, m, n) as f64 * self.dims[n]).sum();
                if (cat.dim(a) * self.dims[m] - rhs).abs() > 1e-9 * (1.0 + rhs) {
                    rep.push(Rule::Dimensions, format!("d_{} d_{} differs from the module fusion sum", cat.ring().label(a), self.fusion.label(m)));
                }
            }
        }
        let total_c: f64 = cat.dims().iter().map(|d| d * d).sum();
        let total_m: f64 = self.dims.iter().map(|d| d * d).sum();
        if (total_c - total_m).abs() > 1e-9 * total_c {
            rep.push(Rule::Dimensions, format!("module dimensions square-sum {total_m} differs from {total_c}"));
        }
        if rep.is_ok() {
            let res = module_pentagon_residual(cat, self);
            if res > residual_tol {
                rep.push(Rule::MixedPentagon, format!("mixed pentagon residual {res:.3e} exceeds {residual_tol:.1e}"));
            }
        }
        rep
    }
}
