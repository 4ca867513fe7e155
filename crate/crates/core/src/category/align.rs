//! Comparing two skeletal categories up to relabeling and gauge.
//!
//! Output of the construction lives in an arbitrary gauge, so regression against
//! a printed table first finds a fusion-ring isomorphism and then solves for a
//! multiplicity-free gauge `u` with `u_af^d u_bc^f / (u_ab^e u_ec^d) = F_ref / F_out`
//! on every nonzero entry. The system is solved multiplicatively by integer row
//! elimination, so no phase branch bookkeeping is needed.

use std::collections::BTreeMap;

use crate::category::data::FusionCategoryData;
use crate::category::gauge::{apply_gauge, GaugeTransform};
use crate::category::ring::FusionRing;
use crate::category::symbols::Tree;
use crate::error::{Error, Result};
use crate::linalg::{C64, ONE};

/// Result of matching `output` against `reference`.
#[derive(Clone, Debug)]
pub struct Alignment {
    /// Output label `i` corresponds to reference label `perm[i]`.
    pub perm: Vec<usize>,
    /// Gauge on the relabeled output that reproduces the reference.
    pub gauge: GaugeTransform,
    /// max |F_gauged − F_ref| over all entries.
    pub max_deviation: f64,
}

/// All bijections fixing the unit that carry the fusion rules of `a` onto `b`.
/// `perm[i]` is the label of `b` assigned to label `i` of `a`.
pub fn ring_isomorphisms(a: &FusionRing, b: &FusionRing) -> Vec<Vec<usize>> {
    let r = a.rank();
    if b.rank() != r {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; r];
    let mut used = vec![false; r];
    perm[a.unit()] = b.unit();
    used[b.unit()] = true;
    let order: Vec<usize> = (0..r).filter(|&i| i != a.unit()).collect();
    extend(a, b, &order, 0, &mut perm, &mut used, &mut out);
    out
}

fn consistent(a: &FusionRing, b: &FusionRing, perm: &[usize]) -> bool {
    let r = a.rank();
    for x in 0..r {
        if perm[x] == usize::MAX {
            continue;
        }
        for y in 0..r {
            if perm[y] == usize::MAX {
                continue;
            }
            for z in 0..r {
                if perm[z] == usize::MAX {
                    continue;
                }
                if a.n(x, y, z) != b.n(perm[x], perm[y], perm[z]) {
                    return false;
                }
            }
        }
    }
    true
}

fn extend(a: &FusionRing, b: &FusionRing, order: &[usize], depth: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
    if depth == order.len() {
        out.push(perm.clone());
        return;
    }
    let x = order[depth];
    for y in 0..b.rank() {
        if used[y] {
            continue;
        }
        perm[x] = y;
        used[y] = true;
        if consistent(a, b, perm) {
            extend(a, b, order, depth + 1, perm, used, out);
        }
        used[y] = false;
        perm[x] = usize::MAX;
    }
}

/// Relabels a category so that new label `i` is old label `perm[i]`.
pub fn relabel(cat: &FusionCategoryData, perm: &[usize]) -> Result<FusionCategoryData> {
    let r = cat.rank();
    let mut inv = vec![0; r];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let ring = cat.ring().permuted(perm);
    let entries: Vec<_> = cat
        .symbols()
        .entries(-1.0)
        .into_iter()
        .map(|(k, l, rt, v)| {
            let key = [inv[k[0]], inv[k[1]], inv[k[2]], inv[k[3]]];
            (key, Tree::new(l.first, inv[l.mid], l.second), Tree::new(rt.first, inv[rt.mid], rt.second), v)
        })
        .collect();
    let dims = perm.iter().map(|&p| cat.dim(p)).collect();
    FusionCategoryData::from_entries(ring, &entries, Some(dims))
}

/// Solves `Π_v z_v^{A_kv} = rhs_k` over nonzero complex `z`. Returns `None`
/// when the system is inconsistent beyond `tol`.
pub fn solve_multiplicative(mut rows: Vec<(Vec<i64>, C64)>, nvars: usize, tol: f64) -> Option<Vec<C64>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut top = 0;
    for col in 0..nvars {
        loop {
            let nz: Vec<usize> = (top..rows.len()).filter(|&i| rows[i].0[col] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&i| rows[i].0[col].abs()).expect("nonempty");
            rows.swap(top, best);
            let mut clean = true;
            for i in (top + 1)..rows.len() {
                let c = rows[i].0[col];
                if c == 0 {
                    continue;
                }
                let q = c / rows[top].0[col];
                if q != 0 {
                    let (pc, pr) = (rows[top].0.clone(), rows[top].1);
                    for (x, y) in rows[i].0.iter_mut().zip(&pc) {
                        *x -= q * y;
                    }
                    rows[i].1 /= pr.powi(q as i32);
                }
                if rows[i].0[col] != 0 {
                    clean = false;
                }
            }
            if clean {
                pivots.push((top, col));
                top += 1;
                break;
            }
        }
    }
    for row in &rows[top..] {
        if (row.1 - ONE).norm() > tol {
            return None;
        }
    }
    let mut z = vec![ONE; nvars];
    for &(row, col) in pivots.iter().rev() {
        let (coef, rhs) = &rows[row];
        let mut val = *rhs;
        for j in (col + 1)..nvars {
            if coef[j] != 0 {
                val /= z[j].powi(coef[j] as i32);
            }
        }
        let mut h = coef[col];
        if h < 0 {
            val = ONE / val;
            h = -h;
        }
        z[col] = if h == 1 { val } else { (val.ln() / h as f64).exp() };
    }
    Some(z)
}

/// Multiplicity-free gauge taking `output` (already in the reference's label
/// order) to `reference`, and the resulting max entrywise deviation.
pub fn gauge_to_reference(output: &FusionCategoryData, reference: &FusionCategoryData, tol: f64) -> Result<(GaugeTransform, f64)> {
    let ring = reference.ring();
    if !ring.is_multiplicity_free() || !output.ring().is_multiplicity_free() {
        return Err(Error::Unsupported("gauge alignment needs multiplicity-free fusion".into()));
    }
    let r = ring.rank();
    let mut vars: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                if ring.n(a, b, c) > 0 {
                    let next = vars.len();
                    vars.insert((a, b, c), next);
                }
            }
        }
    }
    let mut rows = Vec::new();
    for (key, blk) in reference.symbols().blocks() {
        let [a, b, c, d] = *key;
        for l in &blk.left {
            for rt in &blk.right {
                let want = blk.get(*l, *rt);
                let have = output.f(a, b, c, d, *l, *rt);
                match (want.norm() > tol, have.norm() > tol) {
                    (false, false) => continue,
                    (true, true) => {}
                    _ => return Ok((GaugeTransform::identity(), f64::INFINITY)),
                }
                let (e, f) = (l.mid, rt.mid);
                let mut coef = vec![0i64; vars.len()];
                coef[vars[&(a, f, d)]] += 1;
                coef[vars[&(b, c, f)]] += 1;
                coef[vars[&(a, b, e)]] -= 1;
                coef[vars[&(e, c, d)]] -= 1;
                rows.push((coef, want / have));
            }
        }
    }
    let Some(z) = solve_multiplicative(rows, vars.len(), 1e-6) else {
        return Ok((GaugeTransform::identity(), f64::INFINITY));
    };
    let gauge = GaugeTransform::from_scalars(vars.iter().map(|(k, &i)| (*k, z[i])));
    let gauged = apply_gauge(output, &gauge)?;
    let mut dev: f64 = 0.0;
    for (key, blk) in reference.symbols().blocks() {
        let got = gauged.symbols().block(*key).expect("same fusion rules");
        dev = dev.max(crate::linalg::max_abs_diff(&got.matrix, &blk.matrix));
    }
    Ok((gauge, dev))
}

/// Tries every ring isomorphism and returns the best gauge alignment.
pub fn align_to_reference(output: &FusionCategoryData, reference: &FusionCategoryData, tol: f64) -> Result<Alignment> {
    let isos = ring_isomorphisms(output.ring(), reference.ring());
    if isos.is_empty() {
        return Err(Error::computation("align", "fusion rings are not isomorphic"));
    }
    let mut best: Option<Alignment> = None;
    for perm in isos {
        // perm maps output -> reference; relabel wants new -> old.
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let relabeled = relabel(output, &inv)?;
        let (gauge, dev) = gauge_to_reference(&relabeled, reference, tol)?;
        if best.as_ref().is_none_or(|b| dev < b.max_deviation) {
            best = Some(Alignment { perm, gauge, max_deviation: dev });
        }
    }
    Ok(best.expect("at least one isomorphism"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn multiplicative_solver_handles_squares() {
        // z0^2 = -1, z0 z1 = 2i
        let rows = vec![(vec![2, 0], c(-1.0, 0.0)), (vec![1, 1], c(0.0, 2.0))];
        let z = solve_multiplicative(rows, 2, 1e-12).unwrap();
        assert!((z[0] * z[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((z[0] * z[1] - c(0.0, 2.0)).norm() < 1e-12);
    }

    #[test]
    fn multiplicative_solver_detects_inconsistency() {
        let rows = vec![(vec![1, -1], c(2.0, 0.0)), (vec![-1, 1], c(2.0, 0.0))];
        assert!(solve_multiplicative(rows, 2, 1e-9).is_none());
    }
}
