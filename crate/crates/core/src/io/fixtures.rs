//! Built-in input data: group categories with their trivial module, the
//! Rep(S3) associator table acting on itself, twisted cyclic groups, and the
//! fusion rules of the Haagerup example (rules only; its symbols are external).

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::category::data::{FusionCategoryData, ModuleCategoryData};
use crate::category::ring::{FusionRing, ModuleFusion};
use crate::category::symbols::{left_trees, right_trees, BlockKey};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

/// Names accepted by [`fixture`].
pub const FIXTURE_NAMES: &[&str] = &["vec_Z2", "vec_S3", "vec_A4", "rep_S3", "rep_S3_self", "vec_omega_Z3", "vec_omega_Z3_self"];

/// Category and module for a named fixture. Bare category fixtures act on
/// themselves.
pub fn fixture(name: &str) -> Result<(FusionCategoryData, ModuleCategoryData)> {
    match name {
        "vec_Z2" => vec_z2(),
        "vec_S3" => vec_s3(),
        "vec_A4" => vec_a4(),
        "rep_S3" | "rep_S3_self" => {
            let cat = rep_s3()?;
            let module = ModuleCategoryData::regular(&cat)?;
            Ok((cat, module))
        }
        "vec_omega_Z3" | "vec_omega_Z3_self" => {
            let cat = vec_twisted_cyclic(3, 1)?;
            let module = ModuleCategoryData::regular(&cat)?;
            Ok((cat, module))
        }
        _ => Err(Error::Malformed(format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", ")))),
    }
}

fn all_ones<A: crate::category::ring::FusionAction>(ring: &FusionRing, action: &A) -> BTreeMap<BlockKey, CMatrix> {
    let mut blocks = BTreeMap::new();
    for a in 0..ring.rank() {
        for b in 0..ring.rank() {
            for m in 0..action.action_rank() {
                for n in 0..action.action_rank() {
                    let l = left_trees(ring, action, a, b, m, n);
                    if !l.is_empty() {
                        let r = right_trees(action, a, b, m, n);
                        blocks.insert([a, b, m, n], CMatrix::from_element(l.len(), r.len(), C64::new(1.0, 0.0)));
                    }
                }
            }
        }
    }
    blocks
}

/// `Vec(G)` with trivial associator from a multiplication table, plus the
/// one-object module `Vec` on which every group element acts trivially.
pub fn vec_group(labels: Vec<String>, unit: usize, mul: impl Fn(usize, usize) -> usize) -> Result<(FusionCategoryData, ModuleCategoryData)> {
    let ring = FusionRing::from_fn(labels, unit, |a, b, c| u32::from(mul(a, b) == c))?;
    let blocks = all_ones(&ring, &ring);
    let cat = FusionCategoryData::from_blocks(ring.clone(), blocks, None)?;
    let fusion = ModuleFusion::from_fn(vec!["*".into()], ring.rank(), |_, _, _| 1)?;
    let lblocks = all_ones(&ring, &fusion);
    let module = ModuleCategoryData::from_blocks(&cat, fusion, lblocks, None)?;
    Ok((cat, module))
}

pub fn vec_z2() -> Result<(FusionCategoryData, ModuleCategoryData)> {
    vec_group(vec!["0".into(), "1".into()], 0, |a, b| (a + b) % 2)
}

/// Composition of permutations given as images, `(g h)(i) = g(h(i))`.
fn permutation_group(perms: Vec<Vec<usize>>) -> Result<(FusionCategoryData, ModuleCategoryData)> {
    let labels = perms.iter().map(|p| p.iter().map(|i| i.to_string()).collect::<String>()).collect();
    let unit = perms.iter().position(|p| p.iter().enumerate().all(|(i, &v)| i == v)).expect("identity present");
    let compose = |a: usize, b: usize| {
        let prod: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
        perms.iter().position(|p| *p == prod).expect("closed under composition")
    };
    vec_group(labels, unit, compose)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn is_even(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

pub fn vec_s3() -> Result<(FusionCategoryData, ModuleCategoryData)> {
    permutation_group(permutations(3))
}

/// Alternating group on four letters; its category of representations has a
/// fusion multiplicity of 2.
pub fn vec_a4() -> Result<(FusionCategoryData, ModuleCategoryData)> {
    permutation_group(permutations(4).into_iter().filter(|p| is_even(p)).collect())
}

/// `Vec^ω(Z_N)` with the 3-cocycle `exp(2πi p a (b + c − [b+c]_N) / N²)`.
pub fn vec_twisted_cyclic(n: usize, p: i64) -> Result<FusionCategoryData> {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let ring = FusionRing::from_fn(labels, 0, |a, b, c| u32::from((a + b) % n == c))?;
    let mut blocks = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let d = (a + b + c) % n;
                let carry = (b + c - (b + c) % n) as f64;
                let phase = 2.0 * PI * p as f64 * a as f64 * carry / (n * n) as f64;
                blocks.insert([a, b, c, d], CMatrix::from_element(1, 1, C64::from_polar(1.0, phase)));
            }
        }
    }
    FusionCategoryData::from_blocks(ring, blocks, None)
}

/// Fusion rules of Rep(S3) with labels `1`, `psi`, `pi`.
pub fn rep_s3_ring() -> Result<FusionRing> {
    let n = |a: usize, b: usize, c: usize| -> u32 {
        let hit = match (a, b) {
            (0, x) | (x, 0) => c == x,
            (1, 1) => c == 0,
            (2, 2) => true,
            _ => c == 2,
        };
        u32::from(hit)
    };
    FusionRing::from_fn(vec!["1".into(), "psi".into(), "pi".into()], 0, n)
}

/// Nonzero entries of the unitary Rep(S3) table as `(abcd, ef, value)` with
/// `1`, `s` = ψ, `p` = π. Every admissible entry not listed is zero.
const REP_S3_TABLE: &[(&str, &str, f64)] = &[
    ("1111", "11", 1.0),
    ("11ss", "1s", 1.0),
    ("11pp", "1p", 1.0),
    ("1s1s", "ss", 1.0),
    ("1ss1", "s1", 1.0),
    ("1spp", "sp", 1.0),
    ("1p1p", "pp", 1.0),
    ("1psp", "pp", 1.0),
    ("1pp1", "p1", 1.0),
    ("1pps", "ps", 1.0),
    ("1ppp", "pp", 1.0),
    ("s11s", "s1", 1.0),
    ("s1s1", "ss", 1.0),
    ("s1pp", "sp", 1.0),
    ("ss11", "1s", 1.0),
    ("ssss", "11", 1.0),
    ("sspp", "1p", 1.0),
    ("sp1p", "pp", 1.0),
    ("spsp", "pp", 1.0),
    ("spps", "p1", 1.0),
    ("spp1", "ps", 1.0),
    ("sppp", "pp", -1.0),
    ("p11p", "p1", 1.0),
    ("p1sp", "ps", 1.0),
    ("p1p1", "pp", 1.0),
    ("p1ps", "pp", 1.0),
    ("p1pp", "pp", 1.0),
    ("ps1p", "ps", 1.0),
    ("pssp", "p1", 1.0),
    ("psp1", "pp", 1.0),
    ("psps", "pp", 1.0),
    ("pspp", "pp", -1.0),
    ("pp11", "1p", 1.0),
    ("pp1s", "sp", 1.0),
    ("pp1p", "pp", 1.0),
    ("ppss", "1p", 1.0),
    ("pps1", "sp", 1.0),
    ("ppsp", "pp", -1.0),
    ("pppp", "11", 0.5),
    ("pppp", "1s", 0.5),
    ("pppp", "1p", std::f64::consts::FRAC_1_SQRT_2),
    ("pppp", "s1", 0.5),
    ("pppp", "ss", 0.5),
    ("pppp", "sp", -std::f64::consts::FRAC_1_SQRT_2),
    ("pppp", "p1", std::f64::consts::FRAC_1_SQRT_2),
    ("pppp", "ps", -std::f64::consts::FRAC_1_SQRT_2),
    ("ppp1", "pp", 1.0),
    ("ppps", "pp", -1.0),
];

fn rep_s3_label(ch: char) -> usize {
    match ch {
        '1' => 0,
        's' => 1,
        'p' => 2,
        _ => unreachable!("table uses 1, s, p"),
    }
}

/// The unitary Rep(S3) category in the gauge where unit-strand blocks are identities.
pub fn rep_s3() -> Result<FusionCategoryData> {
    let ring = rep_s3_ring()?;
    let mut vals: BTreeMap<[usize; 6], f64> = BTreeMap::new();
    for (abcd, ef, v) in REP_S3_TABLE {
        let mut k = [0usize; 6];
        for (slot, ch) in k.iter_mut().zip(abcd.chars().chain(ef.chars())) {
            *slot = rep_s3_label(ch);
        }
        vals.insert(k, *v);
    }
    let mut blocks = BTreeMap::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    let l = left_trees(&ring, &ring, a, b, c, d);
                    if l.is_empty() {
                        continue;
                    }
                    let r = right_trees(&ring, a, b, c, d);
                    let m = CMatrix::from_fn(l.len(), r.len(), |i, j| C64::new(vals.get(&[a, b, c, d, l[i].mid, r[j].mid]).copied().unwrap_or(0.0), 0.0));
                    blocks.insert([a, b, c, d], m);
                }
            }
        }
    }
    FusionCategoryData::from_blocks(ring, blocks, None)
}

/// Number of entries in the Rep(S3) table, zeros included.
pub fn rep_s3_table_len() -> usize {
    REP_S3_TABLE.len() + 1
}

/// Fusion rules of the Haagerup category H3: `1, α, α², ρ, αρ, α²ρ`.
pub fn h3_ring() -> Result<FusionRing> {
    let labels = vec!["1".into(), "a".into(), "a2".into(), "r".into(), "ar".into(), "a2r".into()];
    // index: i for α^i, 3 + i for α^i ρ
    let n = |x: usize, y: usize, z: usize| -> u32 {
        let (xi, xr) = (x % 3, x >= 3);
        let (yi, yr) = (y % 3, y >= 3);
        match (xr, yr) {
            (false, false) => u32::from(z == (xi + yi) % 3),
            (false, true) => u32::from(z == 3 + (xi + yi) % 3),
            (true, false) => u32::from(z == 3 + (xi + 3 - yi) % 3),
            (true, true) => u32::from(z == (xi + 3 - yi) % 3) + u32::from(z >= 3),
        }
    };
    FusionRing::from_fn(labels, 0, n)
}

/// Module fusion rules of the rank-4 H3 module `Γ, αΓ, α²Γ, Λ`.
pub fn m31_fusion() -> Result<ModuleFusion> {
    let labels = vec!["G".into(), "aG".into(), "a2G".into(), "L".into()];
    // rho-type images of Γ-type objects, without the Λ term
    let rho_img: [[&[usize]; 3]; 3] = [
        [&[1, 2], &[0, 1], &[0, 2]],
        [&[0, 2], &[1, 2], &[0, 1]],
        [&[0, 1], &[0, 2], &[1, 2]],
    ];
    let n = move |x: usize, m: usize, t: usize| -> u32 {
        let (xi, xr) = (x % 3, x >= 3);
        if !xr {
            return if m == 3 { u32::from(t == 3) } else { u32::from(t == (xi + m) % 3) };
        }
        if m == 3 {
            return 1;
        }
        u32::from(t == 3 || rho_img[xi][m].contains(&t))
    };
    ModuleFusion::from_fn(labels, 6, n)
}

/// Fusion rules of the dual category H1: `1, μ, η, ν`.
pub fn h1_ring() -> Result<FusionRing> {
    let labels = vec!["1".into(), "mu".into(), "eta".into(), "nu".into()];
    // products of non-unit labels as (a, b) -> multiplicities of (1, mu, eta, nu)
    let table = |a: usize, b: usize| -> [u32; 4] {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        match (a, b) {
            (1, 1) => [1, 0, 0, 1],
            (1, 2) => [0, 0, 1, 1],
            (1, 3) => [0, 1, 1, 1],
            (2, 2) => [1, 1, 1, 1],
            (2, 3) => [0, 1, 1, 2],
            (3, 3) => [1, 1, 2, 2],
            _ => unreachable!(),
        }
    };
    FusionRing::from_fn(labels, 0, |a, b, c| match (a, b) {
        (0, x) | (x, 0) => u32::from(x == c),
        _ => table(a, b)[c],
    })
}
