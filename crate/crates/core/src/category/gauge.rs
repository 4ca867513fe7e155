//! Basis changes on fusion spaces and the induced action on F and L.

use std::collections::BTreeMap;

use rand::Rng;

use crate::category::data::{FusionCategoryData, ModuleCategoryData};
use crate::category::ring::FusionAction;
use crate::error::{Error, Result};
use crate::linalg::{random_unitary, CMatrix, C64};

/// Invertible matrices `M_{ab}^c` on the vertex spaces `a ⊗ b → c` (or
/// `a ▷ m → n` for a module gauge). Spaces without an entry use the identity.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GaugeTransform {
    matrices: BTreeMap<(usize, usize, usize), CMatrix>,
}

impl GaugeTransform {
    pub fn identity() -> Self {
        GaugeTransform::default()
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, m: CMatrix) {
        self.matrices.insert((a, b, c), m);
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> Option<&CMatrix> {
        self.matrices.get(&(a, b, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &CMatrix)> {
        self.matrices.iter()
    }

    /// Multiplicity-free gauge from one scalar per vertex space.
    pub fn from_scalars(scalars: impl IntoIterator<Item = ((usize, usize, usize), C64)>) -> Self {
        let matrices = scalars.into_iter().map(|(k, v)| (k, CMatrix::from_element(1, 1, v))).collect();
        GaugeTransform { matrices }
    }

    pub fn inverse(&self) -> Result<Self> {
        let mut out = GaugeTransform::default();
        for (k, m) in &self.matrices {
            let inv = m.clone().try_inverse().ok_or_else(|| Error::Malformed(format!("gauge matrix for {k:?} is singular")))?;
            out.matrices.insert(*k, inv);
        }
        Ok(out)
    }

    /// Independent random unitary on every nonzero vertex space of `action`.
    pub fn random_unitary<A: FusionAction, R: Rng>(action: &A, rng: &mut R) -> Self {
        let mut out = GaugeTransform::default();
        for a in 0..action.ring_rank() {
            for m in 0..action.action_rank() {
                for n in 0..action.action_rank() {
                    let size = action.act(a, m, n);
                    if size > 0 {
                        out.matrices.insert((a, m, n), random_unitary(size, rng));
                    }
                }
            }
        }
        out
    }

    /// Matrix and its inverse for `(a, b, c)`, checked against `size`.
    fn pair(&self, a: usize, b: usize, c: usize, size: usize) -> Result<(CMatrix, CMatrix)> {
        match self.matrices.get(&(a, b, c)) {
            None => Ok((CMatrix::identity(size, size), CMatrix::identity(size, size))),
            Some(m) => {
                if m.shape() != (size, size) {
                    return Err(Error::Malformed(format!("gauge matrix for {:?} is {:?}, expected {size}x{size}", (a, b, c), m.shape())));
                }
                let inv = m.clone().try_inverse().ok_or_else(|| Error::Malformed(format!("gauge matrix for {:?} is singular", (a, b, c))))?;
                Ok((m.clone(), inv))
            }
        }
    }

    fn check_keys<A: FusionAction>(&self, action: &A) -> Result<()> {
        for &(a, b, c) in self.matrices.keys() {
            if a >= action.ring_rank() || b >= action.action_rank() || c >= action.action_rank() || action.act(a, b, c) == 0 {
                return Err(Error::Malformed(format!("gauge entry {:?} is not a vertex space", (a, b, c))));
            }
        }
        Ok(())
    }
}

/// `G[(α,e,β),(μ,f,ν)] = Σ F[(γ,e,δ),(σ,f,τ)] (M_ab^e)⁻¹_{αγ} M_af^d_{τν} M_bc^f_{σμ} (M_ec^d)⁻¹_{βδ}`.
pub fn apply_gauge(cat: &FusionCategoryData, g: &GaugeTransform) -> Result<FusionCategoryData> {
    let ring = cat.ring();
    g.check_keys(ring)?;
    let mut blocks = BTreeMap::new();
    for (key, b) in cat.symbols().blocks() {
        let [a, bb, c, d] = *key;
        let nl = b.left.len();
        let nr = b.right.len();
        let mut lt = CMatrix::zeros(nl, nl);
        for (i, ti) in b.left.iter().enumerate() {
            for (j, tj) in b.left.iter().enumerate() {
                if ti.mid != tj.mid {
                    continue;
                }
                let e = ti.mid;
                let (_, ab_inv) = g.pair(a, bb, e, ring.n(a, bb, e))?;
                let (_, ec_inv) = g.pair(e, c, d, ring.n(e, c, d))?;
                lt[(i, j)] = ab_inv[(ti.first, tj.first)] * ec_inv[(ti.second, tj.second)];
            }
        }
        let mut rt = CMatrix::zeros(nr, nr);
        for (i, ti) in b.right.iter().enumerate() {
            for (j, tj) in b.right.iter().enumerate() {
                if ti.mid != tj.mid {
                    continue;
                }
                let f = ti.mid;
                let (bc, _) = g.pair(bb, c, f, ring.n(bb, c, f))?;
                let (af, _) = g.pair(a, f, d, ring.n(a, f, d))?;
                rt[(i, j)] = bc[(ti.first, tj.first)] * af[(ti.second, tj.second)];
            }
        }
        blocks.insert(*key, lt * &b.matrix * rt);
    }
    let out = FusionCategoryData::from_blocks(ring.clone(), blocks, Some(cat.dims().to_vec()))?;
    Ok(out)
}

/// `L̃[(α,e,β),(μ,p,ν)] = Σ L[(α,e,δ),(σ,p,τ)] M_ap^n_{τν} M_bm^p_{σμ} (M_em^n)⁻¹_{βδ}`,
/// with the category's vertex bases held fixed.
pub fn apply_module_gauge(cat: &FusionCategoryData, module: &ModuleCategoryData, g: &GaugeTransform) -> Result<ModuleCategoryData> {
    let fusion = module.fusion();
    g.check_keys(fusion)?;
    let mut blocks = BTreeMap::new();
    for (key, b) in module.symbols().blocks() {
        let [a, bb, m, n] = *key;
        let nl = b.left.len();
        let nr = b.right.len();
        let mut lt = CMatrix::zeros(nl, nl);
        for (i, ti) in b.left.iter().enumerate() {
            for (j, tj) in b.left.iter().enumerate() {
                if ti.mid != tj.mid || ti.first != tj.first {
                    continue;
                }
                let e = ti.mid;
                let (_, em_inv) = g.pair(e, m, n, fusion.nm(e, m, n))?;
                lt[(i, j)] = em_inv[(ti.second, tj.second)];
            }
        }
        let mut rt = CMatrix::zeros(nr, nr);
        for (i, ti) in b.right.iter().enumerate() {
            for (j, tj) in b.right.iter().enumerate() {
                if ti.mid != tj.mid {
                    continue;
                }
                let p = ti.mid;
                let (bm, _) = g.pair(bb, m, p, fusion.nm(bb, m, p))?;
                let (ap, _) = g.pair(a, p, n, fusion.nm(a, p, n))?;
                rt[(i, j)] = bm[(ti.first, tj.first)] * ap[(ti.second, tj.second)];
            }
        }
        blocks.insert(*key, lt * &b.matrix * rt);
    }
    ModuleCategoryData::from_blocks(cat, fusion.clone(), blocks, Some(module.dims().to_vec()))
}
