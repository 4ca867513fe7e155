//! Thin helpers over nalgebra for complex dense work. Singular value and
//! Hermitian eigen decompositions go through faer: nalgebra's complex SVD
//! returns inaccurate singular vectors on some Hermitian inputs.

use faer::{Mat, Side};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// max |B†B − I| entrywise. Zero for an empty matrix.
pub fn unitarity_defect(b: &CMatrix) -> f64 {
    if b.nrows() != b.ncols() {
        return f64::INFINITY;
    }
    let g = b.adjoint() * b;
    let n = g.nrows();
    max_abs_diff(&g, &CMatrix::identity(n, n))
}

fn to_faer(m: &CMatrix) -> Mat<C64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Singular values (descending) and the matching left singular vectors.
fn left_svd(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let svd = to_faer(m).thin_svd().expect("svd converges");
    let s: Vec<f64> = svd.S().column_vector().iter().map(|z| z.re).collect();
    let u = svd.U();
    (s, CMatrix::from_fn(u.nrows(), u.ncols(), |i, j| u[(i, j)]))
}

/// Numerical rank with a cutoff relative to the largest singular value.
pub fn rank(m: &CMatrix, rel_tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = to_faer(m).singular_values().expect("svd converges");
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Orthonormal basis (columns) of the column space, ordered by decreasing
/// singular value. `abs_floor` guards against a numerically zero matrix.
pub fn range_basis(m: &CMatrix, rel_tol: f64, abs_floor: f64) -> CMatrix {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return CMatrix::zeros(rows, 0);
    }
    let (s, u) = left_svd(m);
    let top = s.iter().cloned().fold(0.0, f64::max);
    if top <= abs_floor {
        return CMatrix::zeros(rows, 0);
    }
    let keep = s.iter().filter(|&&x| x > rel_tol * top).count();
    u.columns(0, keep).into_owned()
}

/// Eigenvectors of a Hermitian positive semidefinite matrix whose eigenvalues
/// are at most `rel_tol` times the largest one.
pub fn hermitian_null_space(g: &CMatrix, rel_tol: f64) -> CMatrix {
    let n = g.nrows();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let eig = to_faer(g).self_adjoint_eigen(Side::Lower).expect("eigen decomposition converges");
    let vals: Vec<f64> = eig.S().column_vector().iter().map(|z| z.re).collect();
    let top = vals.iter().cloned().fold(0.0, f64::max);
    let idx: Vec<usize> = (0..n).filter(|&i| vals[i] <= rel_tol * top.max(f64::MIN_POSITIVE)).collect();
    let u = eig.U();
    CMatrix::from_fn(n, idx.len(), |i, k| u[(i, idx[k])])
}

/// Eigenvalues of a general complex square matrix.
pub fn eigenvalues(m: &CMatrix) -> Option<Vec<C64>> {
    let n = m.nrows();
    if n == 0 {
        return Some(Vec::new());
    }
    if n == 1 {
        return Some(vec![m[(0, 0)]]);
    }
    to_faer(m).eigenvalues().ok()
}

/// Least-squares solve of `a x = b` by Householder QR. Returns the solution
/// and the max-norm residual. Requires `a` to have full column rank.
pub fn least_squares(a: &CMatrix, b: &CMatrix, rel_tol: f64) -> Option<(CMatrix, f64)> {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return Some((CMatrix::zeros(0, b.ncols()), max_abs(b)));
    }
    if rows < cols {
        return None;
    }
    let qr = a.clone().qr();
    let r = qr.r();
    let top = (0..cols).map(|i| r[(i, i)].norm()).fold(0.0, f64::max);
    if (0..cols).any(|i| r[(i, i)].norm() <= rel_tol * top) {
        return None;
    }
    let mut rhs = b.clone();
    qr.q_tr_mul(&mut rhs);
    let rhs = rhs.rows(0, cols).into_owned();
    let x = r.solve_upper_triangular(&rhs)?;
    let res = max_abs_diff(&(a * &x), b);
    Some((x, res))
}

pub fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

/// Haar-ish random unitary from the QR of a random complex matrix.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let q = random_matrix(n, n, rng).qr().q();
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitary(5, &mut rng);
        assert!(unitarity_defect(&u) < 1e-12);
    }

    #[test]
    fn least_squares_recovers_exact_solution() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random_matrix(9, 3, &mut rng);
        let x = random_matrix(3, 2, &mut rng);
        let b = &a * &x;
        let (got, res) = least_squares(&a, &b, 1e-12).unwrap();
        assert!(max_abs_diff(&got, &x) < 1e-12);
        assert!(res < 1e-12);
    }

    #[test]
    fn eigenvalues_of_triangular() {
        let m = CMatrix::from_row_slice(3, 3, &[c(1.0, 0.0), c(2.0, 1.0), ZERO, ZERO, c(0.0, 3.0), ONE, ZERO, ZERO, c(-2.0, 0.0)]);
        let mut ev = eigenvalues(&m).unwrap();
        ev.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((ev[0] - c(-2.0, 0.0)).norm() < 1e-12);
        assert!((ev[1] - c(0.0, 3.0)).norm() < 1e-12);
        assert!((ev[2] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rank_and_null_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(6, 2, &mut rng);
        let p = &a * a.adjoint();
        assert_eq!(rank(&p, 1e-10), 2);
        assert_eq!(hermitian_null_space(&p, 1e-10).ncols(), 4);
        assert_eq!(range_basis(&p, 1e-10, 1e-300).ncols(), 2);
    }

    #[test]
    fn range_of_hermitian_rank_one_is_exact() {
        let x = CMatrix::from_fn(9, 1, |r, _| c((r as f64 * 0.37).sin(), (r as f64 * 1.3).cos() - 0.2));
        let p = &x * x.adjoint();
        let u = range_basis(&p, 1e-8, 1e-13);
        assert_eq!(u.ncols(), 1);
        let overlap = (u.adjoint() * &x)[(0, 0)].norm() / x.norm();
        assert!((overlap - 1.0).abs() < 1e-13, "{overlap}");
    }
}
