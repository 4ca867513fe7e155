//! Matrix-unit decomposition of the tube algebra and its irreducible
//! representations.
//!
//! Central idempotents come from spectral interpolation of a random central
//! element. Inside each block a random sector-preserving element is split into
//! rank-one idempotents, which are then joined into a full set of matrix units.

mod irrep;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use irrep::{irreps, Irrep};

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, hermitian_null_space, range_basis, CMatrix, C64, ONE, ZERO};
use crate::par;
use crate::tol::Tolerances;
use crate::tube::{TubeAlgebra, TubeVector};

/// Newton steps `p ← 3p² − 2p³` applied to interpolated idempotents.
const IDEMPOTENT_REFINEMENTS: usize = 3;

#[derive(Clone, Debug)]
pub struct MatrixUnitBlock {
    pub label: String,
    /// Block dimension `D`.
    pub dim: usize,
    /// `e_ij` stored row-major: `units[i * dim + j]`.
    pub units: Vec<TubeVector>,
    /// Boundary pair carried by `e_ii`.
    pub sectors: Vec<(usize, usize)>,
}

impl MatrixUnitBlock {
    pub fn e(&self, i: usize, j: usize) -> &TubeVector {
        &self.units[i * self.dim + j]
    }

    /// Central idempotent `Σ_i e_ii`.
    pub fn central(&self) -> TubeVector {
        let mut out = TubeVector::zeros(self.units[0].dim());
        for i in 0..self.dim {
            out.axpy(ONE, self.e(i, i));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct MatrixUnitSystem {
    pub blocks: Vec<MatrixUnitBlock>,
    pub unitary: bool,
    /// Random restarts spent because of near-degenerate spectra.
    pub reseeds: usize,
}

impl MatrixUnitSystem {
    /// Reorders blocks: new block `i` is old block `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        MatrixUnitSystem { blocks: perm.iter().map(|&p| self.blocks[p].clone()).collect(), unitary: self.unitary, reseeds: self.reseeds }
    }

    pub fn total_dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.dim * b.dim).sum()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct WedderburnOptions {
    pub seed: u64,
    /// Use the star structure for self-adjoint spectral elements and
    /// star-compatible normalization.
    pub unitary: bool,
    pub tol: Tolerances,
    pub max_reseeds: usize,
}

impl Default for WedderburnOptions {
    fn default() -> Self {
        WedderburnOptions { seed: 0, unitary: true, tol: Tolerances::default(), max_reseeds: 8 }
    }
}

/// Random stream derived from the root seed; independent per `(attempt, tag)`.
pub(crate) fn stream_rng(seed: u64, attempt: usize, tag: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((attempt as u64) << 32) | tag);
    rng
}

fn random_c<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_vector<R: Rng>(dim: usize, rng: &mut R) -> TubeVector {
    TubeVector::from_coeffs((0..dim).map(|_| random_c(rng)).collect())
}

/// Matrix of left multiplication by every basis tube.
pub fn left_regular(alg: &TubeAlgebra) -> Vec<CMatrix> {
    par::map_range(alg.dim(), |j| alg.left_matrix(&TubeVector::basis(alg.dim(), j)))
}

/// `Tr L(a)`.
pub fn left_trace(alg: &TubeAlgebra, a: &TubeVector) -> C64 {
    let mut tr = ZERO;
    for (j, aj) in a.nonzeros(0.0) {
        for (i, terms) in alg.products_of(j) {
            if let Ok(k) = terms.binary_search_by_key(i, |x| x.0) {
                tr += aj * terms[k].1;
            }
        }
    }
    tr
}

/// Left multiplication by `a` restricted to the span of `idx`, which must be
/// invariant under it.
fn left_matrix_on(alg: &TubeAlgebra, a: &TubeVector, idx: &[usize]) -> CMatrix {
    let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut m = CMatrix::zeros(idx.len(), idx.len());
    for (j, aj) in a.nonzeros(0.0) {
        for (i, terms) in alg.products_of(j) {
            let Some(&col) = pos.get(i) else { continue };
            for &(t, v) in terms {
                if let Some(&row) = pos.get(&t) {
                    m[(row, col)] += aj * v;
                }
            }
        }
    }
    m
}

/// Orthonormal basis (columns) of the center, found inside the span of tubes
/// whose inner and outer boundaries agree.
pub fn center<R: Rng>(alg: &TubeAlgebra, rng: &mut R, tol: &Tolerances) -> CMatrix {
    let d = alg.dim();
    let diag: Vec<usize> = (0..d).filter(|&i| alg.element(i).inner() == alg.element(i).outer()).collect();
    let samples: Vec<TubeVector> = (0..4).map(|_| random_vector(d, rng)).collect();
    let grams = par::map_slice(&samples, |r| {
        let x = alg.left_matrix(r) - alg.right_matrix(r);
        let xs = x.select_columns(diag.iter());
        xs.adjoint() * xs
    });
    let g = grams.into_iter().fold(CMatrix::zeros(diag.len(), diag.len()), |acc, m| acc + m);
    let z = hermitian_null_space(&g, tol.rank);
    let mut out = CMatrix::zeros(d, z.ncols());
    for (row, &i) in diag.iter().enumerate() {
        for col in 0..z.ncols() {
            out[(i, col)] = z[(row, col)];
        }
    }
    out
}

/// Groups nearby values; clusters are returned sorted by (re, im) with their sizes.
fn cluster(values: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let mut groups: Vec<(C64, Vec<C64>)> = Vec::new();
    for &v in values {
        match groups.iter_mut().find(|(c, _)| (c - v).norm() < tol) {
            Some((c, members)) => {
                members.push(v);
                *c = members.iter().sum::<C64>() / members.len() as f64;
            }
            None => groups.push((v, vec![v])),
        }
    }
    let mut out: Vec<(C64, usize)> = groups.into_iter().map(|(c, m)| (c, m.len())).collect();
    out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    out
}

fn well_separated(values: &[C64], tol: f64) -> bool {
    let scale = values.iter().fold(1.0f64, |m, v| m.max(v.norm()));
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            if (values[i] - values[j]).norm() < tol * scale {
                return false;
            }
        }
    }
    true
}

/// `Π_{l≠i} (h − λ_l e)/(λ_i − λ_l) ∘ e`, then Newton-refined.
fn interpolate(alg: &TubeAlgebra, h: &TubeVector, lams: &[C64], i: usize, e: &TubeVector) -> TubeVector {
    let mut p = e.clone();
    for (l, &lam) in lams.iter().enumerate() {
        if l == i {
            continue;
        }
        let shifted = h.minus(&e.scaled(lam));
        p = alg.mul(&shifted, &p).scaled(ONE / (lams[i] - lam));
    }
    refine(alg, p)
}

fn refine(alg: &TubeAlgebra, mut p: TubeVector) -> TubeVector {
    for _ in 0..IDEMPOTENT_REFINEMENTS {
        let p2 = alg.mul(&p, &p);
        let p3 = alg.mul(&p2, &p);
        p = p2.scaled(C64::new(3.0, 0.0)).minus(&p3.scaled(C64::new(2.0, 0.0)));
    }
    p
}

/// Outcome of one randomized attempt: either a result or a reason to reseed.
enum Attempt<T> {
    Done(T),
    Retry(String),
}

fn central_idempotents(alg: &TubeAlgebra, opts: &WedderburnOptions, attempt: usize) -> Result<Attempt<Vec<TubeVector>>> {
    let mut rng = stream_rng(opts.seed, attempt, 0);
    let z = center(alg, &mut rng, &opts.tol);
    let r = z.ncols();
    if r == 0 {
        return Err(Error::computation("wedderburn", "center is trivial; the algebra is not semisimple or not unital"));
    }
    let zc: Vec<TubeVector> = (0..r).map(|j| TubeVector::from_column(&z.column(j).into_owned())).collect();
    let mut h = TubeVector::zeros(alg.dim());
    for zj in &zc {
        let g = if opts.unitary { random_c(&mut rng) } else { C64::new(rng.gen_range(-1.0..1.0), 0.0) };
        h.axpy(g, zj);
    }
    if opts.unitary {
        h = h.plus(&alg.star(&h)?);
    }
    let mut mh = CMatrix::zeros(r, r);
    for (j, zj) in zc.iter().enumerate() {
        let hz = alg.mul(&h, zj).to_column();
        let coords = z.adjoint() * hz;
        mh.set_column(j, &coords);
    }
    let lams = eigenvalues(&mh).ok_or_else(|| Error::computation("wedderburn", "eigenvalue iteration did not converge"))?;
    if !well_separated(&lams, opts.tol.separation) {
        return Ok(Attempt::Retry("central spectrum is degenerate".into()));
    }
    let unit = alg.unit().clone();
    let ps = par::map_range(r, |i| interpolate(alg, &h, &lams, i, &unit));
    Ok(Attempt::Done(ps))
}

fn block_units(alg: &TubeAlgebra, central: &TubeVector, opts: &WedderburnOptions, attempt: usize, tag: u64) -> Result<Attempt<MatrixUnitBlock>> {
    let d2 = left_trace(alg, central).re;
    let dim = d2.sqrt().round() as usize;
    if dim == 0 || ((dim * dim) as f64 - d2).abs() > 1e-6 * d2.max(1.0) {
        return Ok(Attempt::Retry(format!("block trace {d2} is not a square")));
    }
    let mut rng = stream_rng(opts.seed, attempt, tag);
    let n = alg.dim();
    let mut b = TubeVector::zeros(n);
    for i in 0..n {
        let e = alg.element(i);
        if e.inner() == e.outer() {
            b.set(i, random_c(&mut rng));
        }
    }
    if opts.unitary {
        b = b.plus(&alg.star(&b)?);
    }
    let h = alg.mul(central, &b);
    let by_outer = alg.by_outer();
    // (sector, eigenvalue, idempotent)
    let mut found: Vec<((usize, usize), C64, TubeVector)> = Vec::new();
    for s in alg.sectors() {
        let Some(idx) = by_outer.get(&s) else { continue };
        let q = alg.mul(central, &TubeVector::basis(n, alg.sector_unit(s)));
        if q.max_abs() < opts.tol.floor {
            continue;
        }
        let lq = left_matrix_on(alg, &q, idx);
        let u = range_basis(&lq, opts.tol.rank, 1e-12);
        let rdim = u.ncols();
        if rdim == 0 {
            continue;
        }
        if rdim % dim != 0 {
            return Ok(Attempt::Retry(format!("sector range {rdim} is not a multiple of {dim}")));
        }
        let hs = u.adjoint() * left_matrix_on(alg, &h, idx) * &u;
        let vals = eigenvalues(&hs).ok_or_else(|| Error::computation("wedderburn", "eigenvalue iteration did not converge"))?;
        let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.norm()));
        let groups = cluster(&vals, opts.tol.separation * scale);
        if groups.len() != rdim / dim || groups.iter().any(|g| g.1 != dim) {
            return Ok(Attempt::Retry("block spectrum is degenerate".into()));
        }
        let lams: Vec<C64> = groups.iter().map(|g| g.0).collect();
        for (i, lam) in lams.iter().enumerate() {
            found.push((s, *lam, interpolate(alg, &h, &lams, i, &q)));
        }
    }
    if found.len() != dim {
        return Ok(Attempt::Retry(format!("found {} rank-one idempotents, expected {dim}", found.len())));
    }
    let sectors: Vec<(usize, usize)> = found.iter().map(|f| f.0).collect();
    let ps: Vec<TubeVector> = found.into_iter().map(|f| f.2).collect();

    let p0 = &ps[0];
    let b2 = random_vector(n, &mut rng);
    let bp0 = alg.mul(&b2, p0);
    let mut down = vec![p0.clone()]; // e_i0
    let mut up = vec![p0.clone()]; // e_0i
    let w00 = alg.omega(p0);
    let anchor = p0.argmax().expect("nonempty");
    for p in ps.iter().skip(1) {
        let w = alg.mul(p, &bp0);
        if w.max_abs() < 1e-8 {
            return Ok(Attempt::Retry("random element has a vanishing block entry".into()));
        }
        if opts.unitary {
            let ws = alg.star(&w)?;
            let lam = alg.omega(&alg.mul(&ws, &w)) / w00;
            if lam.re <= 0.0 || lam.im.abs() > 1e-8 * lam.norm().max(1.0) {
                return Err(Error::computation("wedderburn", format!("w*w has non-positive weight {lam}; input data are not unitary")));
            }
            let e = w.scaled(C64::new(1.0 / lam.re.sqrt(), 0.0));
            up.push(alg.star(&e)?);
            down.push(e);
        } else {
            let b3 = random_vector(n, &mut rng);
            let u = alg.mul(&alg.mul(p0, &b3), p);
            let c = alg.mul(&u, &w);
            let mu = c.get(anchor) / p0.get(anchor);
            if mu.norm() < 1e-8 {
                return Ok(Attempt::Retry("random element has a vanishing block entry".into()));
            }
            up.push(u.scaled(ONE / mu));
            down.push(w);
        }
    }
    let mut units = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            if i == 0 && j == 0 {
                units.push(p0.clone());
            } else {
                units.push(alg.mul(&down[i], &up[j]));
            }
        }
    }
    Ok(Attempt::Done(MatrixUnitBlock { label: String::new(), dim, units, sectors }))
}

/// Full matrix-unit system, deterministic in `opts.seed`.
pub fn matrix_units(alg: &TubeAlgebra, opts: &WedderburnOptions) -> Result<MatrixUnitSystem> {
    if opts.unitary && !alg.has_star() {
        return Err(Error::Unsupported("unitary decomposition needs the star structure".into()));
    }
    let mut last = String::new();
    for attempt in 0..=opts.max_reseeds {
        let centrals = match central_idempotents(alg, opts, attempt)? {
            Attempt::Done(c) => c,
            Attempt::Retry(why) => {
                last = why;
                continue;
            }
        };
        let results = par::map_range(centrals.len(), |g| block_units(alg, &centrals[g], opts, attempt, 1 + g as u64));
        let mut blocks = Vec::with_capacity(results.len());
        let mut retry = None;
        for r in results {
            match r? {
                Attempt::Done(b) => blocks.push(b),
                Attempt::Retry(why) => {
                    retry = Some(why);
                    break;
                }
            }
        }
        if let Some(why) = retry {
            last = why;
            continue;
        }
        if blocks.iter().map(|b| b.dim * b.dim).sum::<usize>() != alg.dim() {
            last = "block dimensions do not add up to the algebra dimension".into();
            continue;
        }
        for (i, b) in blocks.iter_mut().enumerate() {
            b.label = format!("b{i}");
        }
        return Ok(MatrixUnitSystem { blocks, unitary: opts.unitary, reseeds: attempt });
    }
    Err(Error::computation("wedderburn", format!("no usable random element after {} reseeds: {last}", opts.max_reseeds)))
}

/// Max deviation from `e^γ_ij e^δ_kl = δ_γδ δ_jk e^γ_il` and from completeness.
pub fn matrix_unit_defect(alg: &TubeAlgebra, sys: &MatrixUnitSystem) -> f64 {
    let n = alg.dim();
    let zero = TubeVector::zeros(n);
    let mut worst: f64 = 0.0;
    for (g, bg) in sys.blocks.iter().enumerate() {
        for (h, bh) in sys.blocks.iter().enumerate() {
            for i in 0..bg.dim {
                for j in 0..bg.dim {
                    for k in 0..bh.dim {
                        for l in 0..bh.dim {
                            let prod = alg.mul(bg.e(i, j), bh.e(k, l));
                            let want = if g == h && j == k { bg.e(i, l) } else { &zero };
                            worst = worst.max(prod.max_abs_diff(want));
                        }
                    }
                }
            }
        }
    }
    let mut total = TubeVector::zeros(n);
    for b in &sys.blocks {
        total = total.plus(&b.central());
    }
    worst.max(total.max_abs_diff(alg.unit()))
}

/// Max deviation from `(e_ij)* = e_ji`.
pub fn star_defect(alg: &TubeAlgebra, sys: &MatrixUnitSystem) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for b in &sys.blocks {
        for i in 0..b.dim {
            for j in 0..b.dim {
                worst = worst.max(alg.star(b.e(i, j))?.max_abs_diff(b.e(j, i)));
            }
        }
    }
    Ok(worst)
}
