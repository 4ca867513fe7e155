//! F-symbols of the dual category from the tube algebra's irreps.
//!
//! Irreps of the tube algebra are the simple objects of the dual category.
//! Their fusion multiplicities are ranks of `e^γ_00` acting on tensor products,
//! vertices are intertwiners into those products, and the associator is read
//! off by comparing the two ways of composing vertices.

mod associator;
mod tensor_rep;
mod vertices;

use std::collections::BTreeMap;

use serde::Serialize;

pub use associator::solve_associator;
pub use tensor_rep::TensorRep;
pub use vertices::{balanced_inner, intertwiner_defect, vertex_tensors, VertexTensor, Vertices};

use crate::category::conventions::{check_gauge_conventions, ConventionReport};
use crate::category::data::{FusionCategoryData, ModuleCategoryData};
use crate::category::gauge::{apply_gauge, GaugeTransform};
use crate::category::pentagon::pentagon_residual;
use crate::category::ring::{fp_dimensions, validate_fusion_ring, FusionRing};
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::par;
use crate::tol::Tolerances;
use crate::tube::{StarMode, TubeAlgebra};
use crate::wedderburn::{irreps, matrix_units, Irrep, MatrixUnitSystem, WedderburnOptions};

/// Fusion multiplicities `n[a][b][c]`.
pub type FusionTable = Vec<Vec<Vec<usize>>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum UnitaryMode {
    /// Unitary when both inputs are in a unitary gauge.
    #[default]
    Auto,
    On,
    Off,
}

#[derive(Clone, Copy, Debug)]
pub struct EndomorphizeOptions {
    pub seed: u64,
    pub unitary: UnitaryMode,
    pub tol: Tolerances,
    pub max_reseeds: usize,
}

impl Default for EndomorphizeOptions {
    fn default() -> Self {
        EndomorphizeOptions { seed: 0, unitary: UnitaryMode::Auto, tol: Tolerances::default(), max_reseeds: 8 }
    }
}

/// Tube algebra with its labeled irreps and their fusion rules.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub algebra: TubeAlgebra,
    pub system: MatrixUnitSystem,
    pub irreps: Vec<Irrep>,
    pub ring: FusionRing,
    pub unitary: bool,
}

/// Machine-readable summary of a run.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub seed: u64,
    pub unitary: bool,
    pub tube_dimension: usize,
    pub structure_constants: usize,
    pub reseeds: usize,
    pub labels: Vec<String>,
    pub block_dimensions: Vec<usize>,
    /// `ω(e_00)` per irrep, i.e. the squared norm of its basis vectors.
    pub irrep_weights: Vec<f64>,
    pub fusion: Vec<(String, String, String, usize)>,
    pub max_solve_residual: f64,
    pub pentagon_residual: f64,
    pub max_unitarity_defect: f64,
    pub nice_gauge: bool,
    pub kappa: Option<Vec<i8>>,
}

#[derive(Clone, Debug)]
pub struct Endomorphized {
    pub output: FusionCategoryData,
    pub decomposition: Decomposition,
    pub vertices: Vertices,
    pub conventions: ConventionReport,
    pub report: AuditReport,
}

fn resolve_unitary(mode: UnitaryMode, cat: &FusionCategoryData, module: &ModuleCategoryData) -> Result<bool> {
    let available = cat.is_unitary() && module.is_unitary();
    match mode {
        UnitaryMode::Auto => Ok(available),
        UnitaryMode::Off => Ok(false),
        UnitaryMode::On if available => Ok(true),
        UnitaryMode::On => Err(Error::Unsupported("unitary mode requested but the input symbols are not unitary".into())),
    }
}

/// `N(α, β, γ)` for every triple of irreps.
pub fn fusion_coefficients(alg: &TubeAlgebra, irreps: &[Irrep], rank_tol: f64) -> FusionTable {
    let r = irreps.len();
    let flat = par::map_range(r * r, |ab| {
        let rep = TensorRep::new(alg, &irreps[ab / r], &irreps[ab % r]);
        irreps.iter().map(|g| rep.multiplicity(g, rank_tol)).collect::<Vec<_>>()
    });
    (0..r).map(|a| (0..r).map(|b| flat[a * r + b].clone()).collect()).collect()
}

fn find_unit(n: &FusionTable) -> Option<usize> {
    let r = n.len();
    (0..r).find(|&u| (0..r).all(|b| (0..r).all(|c| n[u][b][c] == usize::from(b == c) && n[b][u][c] == usize::from(b == c))))
}

/// Block order for output labels: the unit first, then by irrep dimension,
/// Frobenius–Perron dimension and a fusion fingerprint that does not depend
/// on the current order. Returns `perm` with new block `i` = old `perm[i]`.
pub fn order_blocks(n: &FusionTable, block_dims: &[usize]) -> Result<Vec<usize>> {
    let r = n.len();
    let unit = find_unit(n).ok_or_else(|| Error::computation("fusion", "no irrep acts as a unit for the fusion table"))?;
    let labels = (0..r).map(|i| format!("b{i}")).collect();
    let ring = FusionRing::from_fn(labels, unit, |a, b, c| n[a][b][c] as u32)?;
    let fp = fp_dimensions(&ring)?;
    let fingerprint = |a: usize| -> Vec<usize> {
        let mut rows: Vec<usize> = (0..r).map(|b| (0..r).map(|c| n[a][b][c]).sum()).collect();
        rows.sort();
        let mut sq: Vec<usize> = (0..r).map(|c| n[a][a][c]).collect();
        sq.sort();
        rows.extend(sq);
        rows
    };
    let mut rest: Vec<usize> = (0..r).filter(|&i| i != unit).collect();
    rest.sort_by(|&x, &y| {
        block_dims[x]
            .cmp(&block_dims[y])
            .then(((fp[x] * 1e9).round() as i64).cmp(&((fp[y] * 1e9).round() as i64)))
            .then(fingerprint(x).cmp(&fingerprint(y)))
    });
    let mut perm = vec![unit];
    perm.extend(rest);
    Ok(perm)
}

/// Output labels: `1` for the unit, `x1, x2, ...` for the rest.
pub fn output_labels(rank: usize) -> Vec<String> {
    (0..rank).map(|i| if i == 0 { "1".to_string() } else { format!("x{i}") }).collect()
}

/// Steps up to the fusion rules: tube algebra, matrix units, irreps, labels.
pub fn decompose(cat: &FusionCategoryData, module: &ModuleCategoryData, opts: &EndomorphizeOptions) -> Result<Decomposition> {
    let unitary = resolve_unitary(opts.unitary, cat, module)?;
    let algebra = TubeAlgebra::with_star(cat, module, if unitary { StarMode::Require } else { StarMode::Skip })?;
    let wopts = WedderburnOptions { seed: opts.seed, unitary, tol: opts.tol, max_reseeds: opts.max_reseeds };
    let system = matrix_units(&algebra, &wopts)?;
    let reps = irreps(&algebra, &system)?;
    let n0 = fusion_coefficients(&algebra, &reps, opts.tol.rank);
    let dims: Vec<usize> = system.blocks.iter().map(|b| b.dim).collect();
    let perm = order_blocks(&n0, &dims)?;
    let labels = output_labels(perm.len());
    let mut system = system.permuted(&perm);
    for (b, l) in system.blocks.iter_mut().zip(&labels) {
        b.label = l.clone();
    }
    let irreps: Vec<Irrep> = perm
        .iter()
        .zip(&labels)
        .map(|(&p, l)| {
            let mut rep = reps[p].clone();
            rep.label = l.clone();
            rep
        })
        .collect();
    let ring = FusionRing::from_fn(labels, 0, |a, b, c| n0[perm[a]][perm[b]][perm[c]] as u32)?;
    let rep = validate_fusion_ring(&ring);
    if !rep.is_ok() {
        return Err(Error::computation("fusion", format!("computed fusion rules are inconsistent: {rep}")));
    }
    Ok(Decomposition { algebra, system, irreps, ring, unitary })
}

/// Vertex tensors for every admissible triple of the decomposition.
pub fn all_vertices(dec: &Decomposition, tol: &Tolerances) -> Result<Vertices> {
    let r = dec.ring.rank();
    let triples: Vec<(usize, usize, usize)> = (0..r * r * r)
        .map(|i| (i / (r * r), (i / r) % r, i % r))
        .filter(|&(a, b, g)| dec.ring.n(a, b, g) > 0)
        .collect();
    let found = par::try_map_range(triples.len(), |i| {
        let (a, b, g) = triples[i];
        vertex_tensors(&dec.algebra, &dec.irreps, a, b, g, dec.ring.n(a, b, g), dec.unitary, tol.rank)
    })?;
    Ok(Vertices { dims: dec.irreps.iter().map(|x| x.dim).collect(), map: triples.into_iter().zip(found).collect() })
}

/// Scalar gauge on unit-leg vertices making `F^{11b}_b` and `F^{a11}_a` equal
/// to 1; the remaining unit-strand blocks follow from the triangle relations.
fn unit_leg_gauge(out: &FusionCategoryData) -> BTreeMap<(usize, usize, usize), C64> {
    let ring = out.ring();
    let u = ring.unit();
    let t = crate::category::symbols::Tree::new(0, u, 0);
    let mut scalars = BTreeMap::new();
    for b in 0..ring.rank() {
        if b == u {
            continue;
        }
        let tb = crate::category::symbols::Tree::new(0, b, 0);
        // F^{11b}_b: left tree through e = 1, right tree through f = b
        let f11b = out.f(u, u, b, b, t, tb);
        scalars.insert((u, b, b), C64::new(1.0, 0.0) / f11b);
        // F^{a11}_a: left tree through e = a, right tree through f = 1
        let fa11 = out.f(b, u, u, b, tb, t);
        scalars.insert((b, u, b), fa11);
    }
    scalars
}

pub fn associators(dec: &Decomposition, vertices: &mut Vertices, tol: &Tolerances) -> Result<(FusionCategoryData, f64)> {
    let (blocks, residual) = solve_associator(&dec.ring, vertices, tol.residual)?;
    let raw = FusionCategoryData::from_blocks(dec.ring.clone(), blocks, None)?;
    let scalars = unit_leg_gauge(&raw);
    for (&(a, b, c), &s) in &scalars {
        for v in vertices.map.get_mut(&(a, b, c)).into_iter().flatten() {
            v.scale(C64::new(1.0, 0.0) / s);
        }
    }
    let gauge = GaugeTransform::from_scalars(scalars);
    let out = apply_gauge(&raw, &gauge)?;
    let out = if dec.unitary { out } else { out.with_unitary(false) };
    Ok((out, residual))
}

/// The full pipeline.
pub fn endomorphize(cat: &FusionCategoryData, module: &ModuleCategoryData, opts: &EndomorphizeOptions) -> Result<Endomorphized> {
    let dec = decompose(cat, module, opts)?;
    let mut vertices = all_vertices(&dec, &opts.tol)?;
    let (output, residual) = associators(&dec, &mut vertices, &opts.tol)?;
    let pent = pentagon_residual(&output);
    let conventions = check_gauge_conventions(&output, None, opts.tol.regression);
    let ring = output.ring();
    let r = ring.rank();
    let mut fusion = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                if ring.n(a, b, c) > 0 {
                    fusion.push((ring.label(a).to_string(), ring.label(b).to_string(), ring.label(c).to_string(), ring.n(a, b, c)));
                }
            }
        }
    }
    let report = AuditReport {
        seed: opts.seed,
        unitary: dec.unitary,
        tube_dimension: dec.algebra.dim(),
        structure_constants: dec.algebra.structure_constant_count(),
        reseeds: dec.system.reseeds,
        labels: ring.labels().to_vec(),
        block_dimensions: dec.irreps.iter().map(|x| x.dim).collect(),
        irrep_weights: dec.irreps.iter().map(|x| x.weight.re).collect(),
        fusion,
        max_solve_residual: residual,
        pentagon_residual: pent,
        max_unitarity_defect: conventions.max_unitarity_defect,
        nice_gauge: conventions.nice_gauge,
        kappa: conventions.kappa.clone(),
    };
    Ok(Endomorphized { output, decomposition: dec, vertices, conventions, report })
}
