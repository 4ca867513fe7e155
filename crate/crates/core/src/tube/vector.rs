use crate::linalg::{CVector, C64, ZERO};

/// Element of the tube algebra as a coefficient vector over the basis.
///
/// Storage is dense; [`TubeVector::nonzeros`] and [`TubeVector::canonical`]
/// give the sparse view.
#[derive(Clone, Debug, PartialEq)]
pub struct TubeVector {
    coeffs: Vec<C64>,
}

impl TubeVector {
    pub fn zeros(dim: usize) -> Self {
        TubeVector { coeffs: vec![ZERO; dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = TubeVector::zeros(dim);
        v.coeffs[i] = C64::new(1.0, 0.0);
        v
    }

    pub fn from_coeffs(coeffs: Vec<C64>) -> Self {
        TubeVector { coeffs }
    }

    pub fn from_column(v: &CVector) -> Self {
        TubeVector { coeffs: v.iter().copied().collect() }
    }

    pub fn to_column(&self) -> CVector {
        CVector::from_column_slice(&self.coeffs)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    #[inline]
    pub fn get(&self, i: usize) -> C64 {
        self.coeffs[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: C64) {
        self.coeffs[i] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, v: C64) {
        self.coeffs[i] += v;
    }

    /// `(index, coefficient)` for entries with magnitude above `floor`.
    pub fn nonzeros(&self, floor: f64) -> impl Iterator<Item = (usize, C64)> + '_ {
        self.coeffs.iter().enumerate().filter(move |(_, v)| v.norm() > floor).map(|(i, v)| (i, *v))
    }

    /// Zeroes entries at or below `floor`.
    pub fn canonical(mut self, floor: f64) -> Self {
        for v in &mut self.coeffs {
            if v.norm() <= floor {
                *v = ZERO;
            }
        }
        self
    }

    pub fn scaled(&self, s: C64) -> Self {
        TubeVector { coeffs: self.coeffs.iter().map(|v| v * s).collect() }
    }

    pub fn plus(&self, other: &TubeVector) -> Self {
        TubeVector { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn minus(&self, other: &TubeVector) -> Self {
        TubeVector { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: C64, other: &TubeVector) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += s * b;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn max_abs_diff(&self, other: &TubeVector) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Index of the largest-magnitude coefficient (first on ties).
    pub fn argmax(&self) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, v) in self.coeffs.iter().enumerate() {
            let a = v.norm();
            if best.is_none_or(|(_, b)| a > b) {
                best = Some((i, a));
            }
        }
        best.map(|(i, _)| i)
    }
}
