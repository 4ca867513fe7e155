//! Pentagon residuals.
//!
//! The F pentagon is the mixed pentagon of the regular module (`L := F`), so one
//! evaluator covers both:
//!
//! Σ_ζ L^{fcm}_n[(β,g,γ),(ρ,p,ζ)] L^{abp}_n[(α,f,ζ),(σ,q,τ)]
//!   = Σ_{z,λ,μ,ν} F^{abc}_g[(α,f,β),(λ,z,μ)] L^{azm}_n[(μ,g,γ),(ν,q,τ)] L^{bcm}_q[(λ,z,ν),(ρ,p,σ)]

use crate::category::data::{FusionCategoryData, ModuleCategoryData};
use crate::category::ring::{FusionAction, FusionRing};
use crate::category::symbols::{SymbolTable, Tree};
use crate::linalg::{C64, ZERO};
use crate::par;

/// Max |LHS − RHS| over all pentagon instances of the category.
pub fn pentagon_residual(cat: &FusionCategoryData) -> f64 {
    mixed_residual(cat.ring(), cat.symbols(), cat.ring(), cat.symbols())
}

/// Max |LHS − RHS| over all mixed pentagon instances of the module.
pub fn module_pentagon_residual(cat: &FusionCategoryData, module: &ModuleCategoryData) -> f64 {
    mixed_residual(cat.ring(), cat.symbols(), module.fusion(), module.symbols())
}

pub(crate) fn mixed_residual<A: FusionAction + Sync>(ring: &FusionRing, f: &SymbolTable, action: &A, l: &SymbolTable) -> f64 {
    let r = ring.rank();
    let k = action.action_rank();
    let outer = r * r * r * k * k;
    par::max_range(outer, |idx| {
        let n = idx % k;
        let m = (idx / k) % k;
        let c = (idx / (k * k)) % r;
        let b = (idx / (k * k * r)) % r;
        let a = idx / (k * k * r * r);
        instance_residual(ring, f, action, l, a, b, c, m, n)
    })
}

#[allow(clippy::too_many_arguments)]
fn instance_residual<A: FusionAction>(
    ring: &FusionRing,
    f: &SymbolTable,
    action: &A,
    l: &SymbolTable,
    a: usize,
    b: usize,
    c: usize,
    m: usize,
    n: usize,
) -> f64 {
    let r = ring.rank();
    let k = action.action_rank();
    let mut worst: f64 = 0.0;
    // Left-hand paths ((a b) c) ▷ m through f, g.
    for fl in 0..r {
        for al in 0..ring.n(a, b, fl) {
            for g in 0..r {
                for be in 0..ring.n(fl, c, g) {
                    for ga in 0..action.act(g, m, n) {
                        // Right-hand paths a ▷ (b ▷ (c ▷ m)) through p, q.
                        for p in 0..k {
                            for rho in 0..action.act(c, m, p) {
                                for q in 0..k {
                                    for si in 0..action.act(b, p, q) {
                                        for ta in 0..action.act(a, q, n) {
                                            let mut lhs = ZERO;
                                            for ze in 0..action.act(fl, p, n) {
                                                lhs += l.get([fl, c, m, n], Tree::new(be, g, ga), Tree::new(rho, p, ze))
                                                    * l.get([a, b, p, n], Tree::new(al, fl, ze), Tree::new(si, q, ta));
                                            }
                                            let mut rhs: C64 = ZERO;
                                            for z in 0..r {
                                                for la in 0..ring.n(b, c, z) {
                                                    for mu in 0..ring.n(a, z, g) {
                                                        let fv = f.get([a, b, c, g], Tree::new(al, fl, be), Tree::new(la, z, mu));
                                                        if fv == ZERO {
                                                            continue;
                                                        }
                                                        for nu in 0..action.act(z, m, q) {
                                                            rhs += fv
                                                                * l.get([a, z, m, n], Tree::new(mu, g, ga), Tree::new(nu, q, ta))
                                                                * l.get([b, c, m, q], Tree::new(la, z, nu), Tree::new(rho, p, si));
                                                        }
                                                    }
                                                }
                                            }
                                            worst = worst.max((lhs - rhs).norm());
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    worst
}
