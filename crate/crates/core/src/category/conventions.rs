use crate::category::data::{FusionCategoryData, ModuleCategoryData};
use crate::linalg::{max_abs_diff, CMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct ConventionReport {
    /// Unit-strand F blocks are identity matrices.
    pub nice_gauge: bool,
    /// Keys of unit-strand blocks that are not the identity.
    pub nice_gauge_violations: Vec<[usize; 4]>,
    pub unitary: bool,
    pub max_unitarity_defect: f64,
    /// `κ_a`, present when every `d_a F^{a ā a}_a` is ±1.
    pub kappa: Option<Vec<i8>>,
    pub module_nice_gauge: Option<bool>,
    pub module_unitary: Option<bool>,
    pub module_max_unitarity_defect: Option<f64>,
}

fn is_identity(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && max_abs_diff(m, &CMatrix::identity(m.nrows(), m.ncols())) <= tol
}

/// Reports whether unit-strand blocks are identities, whether every block is
/// unitary, and the Frobenius–Schur signs.
pub fn check_gauge_conventions(cat: &FusionCategoryData, module: Option<&ModuleCategoryData>, tol: f64) -> ConventionReport {
    let ring = cat.ring();
    let u = ring.unit();
    let mut violations = Vec::new();
    for (key, b) in cat.symbols().blocks() {
        let [a, bb, c, _] = *key;
        if (a == u || bb == u || c == u) && !is_identity(&b.matrix, tol) {
            violations.push(*key);
        }
    }
    let defect = cat.symbols().max_unitarity_defect();
    let unitary = defect <= tol;
    let kappa = if unitary { cat.clone().with_unitary(true).kappa().map(|k| k.to_vec()) } else { None };

    let (module_nice_gauge, module_unitary, module_defect) = match module {
        Some(m) => {
            let nice = m.symbols().blocks().all(|(key, b)| {
                let [a, bb, _, _] = *key;
                !(a == u || bb == u) || is_identity(&b.matrix, tol)
            });
            let d = m.symbols().max_unitarity_defect();
            (Some(nice), Some(d <= tol), Some(d))
        }
        None => (None, None, None),
    };

    ConventionReport {
        nice_gauge: violations.is_empty(),
        nice_gauge_violations: violations,
        unitary,
        max_unitarity_defect: defect,
        kappa,
        module_nice_gauge,
        module_unitary,
        module_max_unitarity_defect: module_defect,
    }
}
