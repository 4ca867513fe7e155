//! Fusion rules of a fusion category and of a module category over it.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result, Rule, ValidationReport};

/// Fusion multiplicities of a ring acting on a set of labels: `act(a, m, n)` is
/// the multiplicity of `n` in `a ▷ m`. The regular action of a ring on itself
/// is its own fusion, which lets F and L share storage and pentagon code.
pub trait FusionAction {
    fn ring_rank(&self) -> usize;
    fn action_rank(&self) -> usize;
    fn act(&self, a: usize, m: usize, n: usize) -> usize;
}

#[derive(Clone, Debug, PartialEq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    n: Vec<u32>,
    dual: Vec<Option<usize>>,
}

fn check_labels(labels: &[String], what: &str) -> Result<()> {
    if labels.is_empty() {
        return Err(Error::Malformed(format!("{what}: label list is empty")));
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::Malformed(format!("{what}: duplicate label {l:?}")));
        }
    }
    Ok(())
}

impl FusionRing {
    /// Builds a ring from sparse `(a, b, c, N)` triples. Absent triples are 0.
    pub fn new(labels: Vec<String>, unit: usize, triples: &[(usize, usize, usize, u32)]) -> Result<Self> {
        check_labels(&labels, "fusion ring")?;
        let r = labels.len();
        if unit >= r {
            return Err(Error::Malformed(format!("unit index {unit} out of range for rank {r}")));
        }
        let mut n = vec![0u32; r * r * r];
        let mut seen = HashSet::new();
        for &(a, b, c, v) in triples {
            if a >= r || b >= r || c >= r {
                return Err(Error::Malformed(format!("fusion triple ({a},{b},{c}) has an unknown label")));
            }
            if !seen.insert((a, b, c)) {
                return Err(Error::Malformed(format!("fusion triple ({a},{b},{c}) listed twice")));
            }
            n[(a * r + b) * r + c] = v;
        }
        let mut ring = FusionRing { labels, unit, n, dual: Vec::new() };
        ring.dual = (0..r).map(|a| ring.find_dual(a)).collect();
        Ok(ring)
    }

    pub fn from_fn(labels: Vec<String>, unit: usize, f: impl Fn(usize, usize, usize) -> u32) -> Result<Self> {
        let r = labels.len();
        let mut triples = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let v = f(a, b, c);
                    if v > 0 {
                        triples.push((a, b, c, v));
                    }
                }
            }
        }
        FusionRing::new(labels, unit, &triples)
    }

    fn find_dual(&self, a: usize) -> Option<usize> {
        let u = self.unit;
        let cands: Vec<usize> = (0..self.rank()).filter(|&b| self.n(a, b, u) > 0 || self.n(b, a, u) > 0).collect();
        match cands.as_slice() {
            [b] if self.n(a, *b, u) == 1 && self.n(*b, a, u) == 1 => Some(*b),
            _ => None,
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    #[inline]
    pub fn n(&self, a: usize, b: usize, c: usize) -> usize {
        let r = self.labels.len();
        self.n[(a * r + b) * r + c] as usize
    }

    pub fn dual(&self, a: usize) -> Option<usize> {
        self.dual[a]
    }

    /// Nonzero `(c, N(a,b,c))` in label order.
    pub fn products(&self, a: usize, b: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rank()).filter_map(move |c| {
            let v = self.n(a, b, c);
            (v > 0).then_some((c, v))
        })
    }

    pub fn triples(&self) -> Vec<(usize, usize, usize, u32)> {
        let r = self.rank();
        let mut out = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let v = self.n(a, b, c) as u32;
                    if v > 0 {
                        out.push((a, b, c, v));
                    }
                }
            }
        }
        out
    }

    pub fn max_multiplicity(&self) -> usize {
        self.n.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.max_multiplicity() <= 1
    }

    /// Relabels so that new label `i` is old label `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> FusionRing {
        let r = self.rank();
        assert_eq!(perm.len(), r);
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let unit = perm.iter().position(|&p| p == self.unit).expect("perm is a bijection");
        FusionRing::from_fn(labels, unit, |a, b, c| self.n(perm[a], perm[b], perm[c]) as u32).expect("relabeling preserves structure")
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<FusionRing> {
        if labels.len() != self.rank() {
            return Err(Error::Malformed("label count does not match rank".into()));
        }
        check_labels(&labels, "fusion ring")?;
        let mut out = self.clone();
        out.labels = labels;
        Ok(out)
    }
}

impl FusionAction for FusionRing {
    fn ring_rank(&self) -> usize {
        self.rank()
    }
    fn action_rank(&self) -> usize {
        self.rank()
    }
    fn act(&self, a: usize, m: usize, n: usize) -> usize {
        self.n(a, m, n)
    }
}

/// Module fusion rules `Nm(a, m, n)`: multiplicity of `n` in `a ▷ m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleFusion {
    labels: Vec<String>,
    ring_rank: usize,
    nm: Vec<u32>,
}

impl ModuleFusion {
    pub fn new(labels: Vec<String>, ring_rank: usize, triples: &[(usize, usize, usize, u32)]) -> Result<Self> {
        check_labels(&labels, "module")?;
        let k = labels.len();
        let mut nm = vec![0u32; ring_rank * k * k];
        let mut seen = HashSet::new();
        for &(a, m, n, v) in triples {
            if a >= ring_rank || m >= k || n >= k {
                return Err(Error::Malformed(format!("module triple ({a},{m},{n}) has an unknown label")));
            }
            if !seen.insert((a, m, n)) {
                return Err(Error::Malformed(format!("module triple ({a},{m},{n}) listed twice")));
            }
            nm[(a * k + m) * k + n] = v;
        }
        Ok(ModuleFusion { labels, ring_rank, nm })
    }

    pub fn from_fn(labels: Vec<String>, ring_rank: usize, f: impl Fn(usize, usize, usize) -> u32) -> Result<Self> {
        let k = labels.len();
        let mut triples = Vec::new();
        for a in 0..ring_rank {
            for m in 0..k {
                for n in 0..k {
                    let v = f(a, m, n);
                    if v > 0 {
                        triples.push((a, m, n, v));
                    }
                }
            }
        }
        ModuleFusion::new(labels, ring_rank, &triples)
    }

    /// The regular module of a ring over itself.
    pub fn regular(ring: &FusionRing) -> ModuleFusion {
        ModuleFusion::from_fn(ring.labels().to_vec(), ring.rank(), |a, m, n| ring.n(a, m, n) as u32).expect("ring is well formed")
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, m: usize) -> &str {
        &self.labels[m]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    #[inline]
    pub fn nm(&self, a: usize, m: usize, n: usize) -> usize {
        let k = self.labels.len();
        self.nm[(a * k + m) * k + n] as usize
    }

    pub fn triples(&self) -> Vec<(usize, usize, usize, u32)> {
        let k = self.rank();
        let mut out = Vec::new();
        for a in 0..self.ring_rank {
            for m in 0..k {
                for n in 0..k {
                    let v = self.nm(a, m, n) as u32;
                    if v > 0 {
                        out.push((a, m, n, v));
                    }
                }
            }
        }
        out
    }

    /// True when every pair of module labels is linked through the action.
    pub fn is_indecomposable(&self) -> bool {
        let k = self.rank();
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(m) = queue.pop_front() {
            for n in 0..k {
                if !seen[n] && (0..self.ring_rank).any(|a| self.nm(a, m, n) > 0 || self.nm(a, n, m) > 0) {
                    seen[n] = true;
                    queue.push_back(n);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl FusionAction for ModuleFusion {
    fn ring_rank(&self) -> usize {
        self.ring_rank
    }
    fn action_rank(&self) -> usize {
        self.rank()
    }
    fn act(&self, a: usize, m: usize, n: usize) -> usize {
        self.nm(a, m, n)
    }
}

/// Checks the unit, associativity and duality axioms.
pub fn validate_fusion_ring(ring: &FusionRing) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let r = ring.rank();
    let u = ring.unit();
    let name = |a: usize| ring.label(a).to_string();
    for x in 0..r {
        for y in 0..r {
            let want = usize::from(x == y);
            if ring.n(u, x, y) != want || ring.n(x, u, y) != want {
                rep.push(Rule::UnitAxiom, format!("N(1,{0},{1}) or N({0},1,{1}) differs from delta", name(x), name(y)));
            }
        }
    }
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    let lhs: usize = (0..r).map(|e| ring.n(a, b, e) * ring.n(e, c, d)).sum();
                    let rhs: usize = (0..r).map(|f| ring.n(a, f, d) * ring.n(b, c, f)).sum();
                    if lhs != rhs {
                        rep.push(
                            Rule::Associativity,
                            format!("({},{},{}) -> {}: {} vs {}", name(a), name(b), name(c), name(d), lhs, rhs),
                        );
                    }
                }
            }
        }
    }
    for x in 0..r {
        if ring.dual(x).is_none() {
            rep.push(Rule::Duals, format!("{} has no unique dual", name(x)));
        }
    }
    rep
}

/// Checks the module unit axiom and mixed associativity.
pub fn validate_module_fusion(ring: &FusionRing, module: &ModuleFusion) -> ValidationReport {
    let mut rep = ValidationReport::default();
    if module.ring_rank() != ring.rank() {
        rep.push(Rule::BlockShape, "module fusion rules refer to a ring of different rank");
        return rep;
    }
    let r = ring.rank();
    let k = module.rank();
    let u = ring.unit();
    for m in 0..k {
        for n in 0..k {
            if module.nm(u, m, n) != usize::from(m == n) {
                rep.push(Rule::ModuleUnit, format!("Nm(1,{},{}) differs from delta", module.label(m), module.label(n)));
            }
        }
    }
    for a in 0..r {
        for b in 0..r {
            for m in 0..k {
                for n in 0..k {
                    let lhs: usize = (0..r).map(|e| ring.n(a, b, e) * module.nm(e, m, n)).sum();
                    let rhs: usize = (0..k).map(|p| module.nm(a, p, n) * module.nm(b, m, p)).sum();
                    if lhs != rhs {
                        rep.push(
                            Rule::MixedAssociativity,
                            format!(
                                "({},{},{}) -> {}: {} vs {}",
                                ring.label(a),
                                ring.label(b),
                                module.label(m),
                                module.label(n),
                                lhs,
                                rhs
                            ),
                        );
                    }
                }
            }
        }
    }
    rep
}

/// Perron vector of a nonnegative square matrix by power iteration on `s + I`.
fn perron_vector(s: &[Vec<f64>]) -> Vec<f64> {
    let n = s.len();
    let mut x = vec![1.0; n];
    for _ in 0..100_000 {
        let mut y: Vec<f64> = (0..n).map(|i| x[i] + (0..n).map(|j| s[i][j] * x[j]).sum::<f64>()).collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        y.iter_mut().for_each(|v| *v /= norm);
        let change = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if change < 1e-15 {
            break;
        }
    }
    x
}

/// Frobenius–Perron dimensions: the positive common eigenvector of the fusion
/// matrices, normalized so the unit has dimension 1.
pub fn fp_dimensions(ring: &FusionRing) -> Result<Vec<f64>> {
    let r = ring.rank();
    let s: Vec<Vec<f64>> = (0..r).map(|b| (0..r).map(|c| (0..r).map(|a| ring.n(a, b, c) as f64).sum()).collect()).collect();
    let x = perron_vector(&s);
    let scale = x[ring.unit()];
    if !(scale > 0.0) {
        return Err(Error::computation("fp_dimensions", "Perron vector vanishes on the unit"));
    }
    let d: Vec<f64> = x.iter().map(|v| v / scale).collect();
    let mut worst: f64 = 0.0;
    for a in 0..r {
        for b in 0..r {
            let rhs: f64 = (0..r).map(|c| ring.n(a, b, c) as f64 * d[c]).sum();
            worst = worst.max((d[a] * d[b] - rhs).abs() / (1.0 + rhs));
        }
    }
    if worst > 1e-9 || d.iter().any(|&v| v <= 0.0) {
        return Err(Error::computation("fp_dimensions", format!("no positive dimension vector (recurrence defect {worst:.3e})")));
    }
    Ok(d)
}

/// Module dimensions: positive solution of `d_a d_m = Σ_n Nm(a,m,n) d_n`
/// normalized so `Σ_m d_m² = Σ_a d_a²`.
pub fn module_fp_dimensions(ring: &FusionRing, ring_dims: &[f64], module: &ModuleFusion) -> Result<Vec<f64>> {
    if !module.is_indecomposable() {
        return Err(Error::Validation({
            let mut rep = ValidationReport::default();
            rep.push(Rule::Indecomposable, "module category is decomposable; the construction requires an indecomposable module");
            rep
        }));
    }
    let k = module.rank();
    let r = ring.rank();
    let s: Vec<Vec<f64>> = (0..k).map(|m| (0..k).map(|n| (0..r).map(|a| module.nm(a, m, n) as f64).sum()).collect()).collect();
    let x = perron_vector(&s);
    let total: f64 = ring_dims.iter().map(|d| d * d).sum();
    let norm: f64 = x.iter().map(|v| v * v).sum();
    let d: Vec<f64> = x.iter().map(|v| v * (total / norm).sqrt()).collect();
    let mut worst: f64 = 0.0;
    for a in 0..r {
        for m in 0..k {
            let rhs: f64 = (0..k).map(|n| module.nm(a, m, n) as f64 * d[n]).sum();
            worst = worst.max((ring_dims[a] * d[m] - rhs).abs() / (1.0 + rhs));
        }
    }
    if worst > 1e-9 || d.iter().any(|&v| v <= 0.0) {
        return Err(Error::computation("module_fp_dimensions", format!("no positive module dimensions (recurrence defect {worst:.3e})")));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FusionRing {
        FusionRing::from_fn(vec!["0".into(), "1".into()], 0, |a, b, c| u32::from((a + b) % 2 == c)).unwrap()
    }

    #[test]
    fn z2_ring_is_valid() {
        let ring = z2();
        assert!(validate_fusion_ring(&ring).is_ok());
        assert_eq!(ring.dual(1), Some(1));
        assert_eq!(fp_dimensions(&ring).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn broken_unit_is_reported() {
        let ring = FusionRing::from_fn(vec!["0".into(), "1".into()], 0, |a, b, c| {
            if (a, b, c) == (0, 1, 1) {
                2
            } else {
                u32::from((a + b) % 2 == c)
            }
        })
        .unwrap();
        let rep = validate_fusion_ring(&ring);
        assert!(rep.has(Rule::UnitAxiom));
    }

    #[test]
    fn unknown_label_is_structural() {
        let err = FusionRing::new(vec!["0".into()], 0, &[(0, 0, 3, 1)]).unwrap_err();
        assert!(matches!(err, Error::Malformed(_)));
    }

    #[test]
    fn decomposable_module_is_rejected() {
        let ring = z2();
        // Two copies of the trivial module.
        let m = ModuleFusion::from_fn(vec!["x".into(), "y".into()], 2, |_, m, n| u32::from(m == n)).unwrap();
        assert!(validate_module_fusion(&ring, &m).is_ok());
        let err = module_fp_dimensions(&ring, &[1.0, 1.0], &m).unwrap_err();
        assert!(matches!(err, Error::Validation(ref r) if r.has(Rule::Indecomposable)));
    }

    #[test]
    fn trivial_z2_module_dimension() {
        let ring = z2();
        let m = ModuleFusion::from_fn(vec!["*".into()], 2, |_, _, _| 1).unwrap();
        let d = module_fp_dimensions(&ring, &[1.0, 1.0], &m).unwrap();
        assert!((d[0] - 2f64.sqrt()).abs() < 1e-14);
    }
}
