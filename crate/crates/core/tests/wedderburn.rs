use endofusion::io::fixtures::fixture;
use endofusion::linalg::{c, max_abs_diff, CMatrix};
use endofusion::tube::{TubeAlgebra, TubeVector};
use endofusion::wedderburn::{irreps, left_regular, matrix_unit_defect, matrix_units, star_defect, WedderburnOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(name: &str, unitary: bool, seed: u64) -> (TubeAlgebra, endofusion::wedderburn::MatrixUnitSystem) {
    let (cat, module) = fixture(name).unwrap();
    let alg = TubeAlgebra::new(&cat, &module).unwrap();
    let sys = matrix_units(&alg, &WedderburnOptions { seed, unitary, ..Default::default() }).unwrap();
    (alg, sys)
}

fn sorted_dims(sys: &endofusion::wedderburn::MatrixUnitSystem) -> Vec<usize> {
    let mut d: Vec<usize> = sys.blocks.iter().map(|b| b.dim).collect();
    d.sort();
    d
}

#[test]
fn block_dimensions() {
    for (name, dims) in [("vec_Z2", vec![1, 1]), ("vec_S3", vec![1, 1, 2]), ("rep_S3_self", vec![3, 3, 5]), ("vec_A4", vec![1, 1, 1, 3])] {
        let (alg, sys) = setup(name, true, 0);
        assert_eq!(sorted_dims(&sys), dims, "{name}");
        assert_eq!(sys.total_dimension(), alg.dim());
    }
}

#[test]
fn matrix_unit_relations_hold_in_both_modes() {
    for name in ["vec_Z2", "vec_S3", "rep_S3_self", "vec_omega_Z3"] {
        for unitary in [true, false] {
            let (alg, sys) = setup(name, unitary, 3);
            let defect = matrix_unit_defect(&alg, &sys);
            assert!(defect <= 1e-9, "{name} unitary={unitary}: {defect:e}");
            if unitary {
                let s = star_defect(&alg, &sys).unwrap();
                assert!(s <= 1e-9, "{name}: star defect {s:e}");
            }
        }
    }
}

#[test]
fn vec_z2_idempotents_match_closed_form() {
    // (T_0 ± T_1) / 2
    let (_, sys) = setup("vec_Z2", true, 0);
    let mut found: Vec<Vec<f64>> = sys.blocks.iter().map(|b| b.e(0, 0).coeffs().iter().map(|v| v.re).collect()).collect();
    found.sort_by(|a, b| a[1].total_cmp(&b[1]));
    assert!((found[0][0] - 0.5).abs() < 1e-12 && (found[0][1] + 0.5).abs() < 1e-12);
    assert!((found[1][0] - 0.5).abs() < 1e-12 && (found[1][1] - 0.5).abs() < 1e-12);
}

#[test]
fn central_idempotents_are_seed_independent() {
    let (_, a) = setup("rep_S3_self", true, 1);
    let (_, b) = setup("rep_S3_self", true, 2);
    let pa: Vec<TubeVector> = a.blocks.iter().map(|x| x.central()).collect();
    let pb: Vec<TubeVector> = b.blocks.iter().map(|x| x.central()).collect();
    assert_eq!(pa.len(), pb.len());
    for x in &pa {
        let best = pb.iter().map(|y| x.max_abs_diff(y)).fold(f64::INFINITY, f64::min);
        assert!(best < 1e-9, "{best:e}");
    }
}

#[test]
fn same_seed_is_bitwise_deterministic() {
    let (_, a) = setup("rep_S3_self", true, 7);
    let (_, b) = setup("rep_S3_self", true, 7);
    for (x, y) in a.blocks.iter().zip(&b.blocks) {
        for (u, v) in x.units.iter().zip(&y.units) {
            assert_eq!(u.coeffs(), v.coeffs());
        }
    }
}

#[test]
fn irreps_are_homomorphisms_with_expected_norms() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, norms) in [("vec_Z2", vec![1.0, 1.0]), ("vec_S3", vec![1.0, 1.0, std::f64::consts::SQRT_2]), ("rep_S3_self", vec![1.0, 1.0, std::f64::consts::SQRT_2])] {
        let (alg, sys) = setup(name, true, 0);
        let reps = irreps(&alg, &sys).unwrap();
        let mut weights: Vec<f64> = reps.iter().map(|r| r.weight.re).collect();
        weights.sort_by(f64::total_cmp);
        weights.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        let mut want = norms.clone();
        want.dedup();
        assert_eq!(weights.len(), want.len(), "{name}: {weights:?}");
        for (w, n) in weights.iter().zip(&want) {
            assert!((w - n * n).abs() < 1e-8, "{name}: {weights:?}");
        }
        for rep in &reps {
            let g = rep.gram.as_ref().unwrap();
            assert!(max_abs_diff(g, &(CMatrix::identity(rep.dim, rep.dim) * rep.weight)) < 1e-9);
            for _ in 0..3 {
                let a = TubeVector::from_coeffs((0..alg.dim()).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect());
                let b = TubeVector::from_coeffs((0..alg.dim()).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect());
                let lhs = rep.matrix_of(&alg, &alg.mul(&a, &b));
                let rhs = rep.matrix_of(&alg, &a) * rep.matrix_of(&alg, &b);
                assert!(max_abs_diff(&lhs, &rhs) < 1e-9, "{name}");
                let st = rep.matrix_of(&alg, &alg.star(&a).unwrap());
                assert!(max_abs_diff(&st, &rep.matrix_of(&alg, &a).adjoint()) < 1e-9, "{name}: star");
            }
        }
    }
}

#[test]
fn left_regular_of_vec_z2() {
    let (cat, module) = fixture("vec_Z2").unwrap();
    let alg = TubeAlgebra::new(&cat, &module).unwrap();
    let l = left_regular(&alg);
    let swap = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    assert!(max_abs_diff(&l[1], &swap) < 1e-14);
    assert!(max_abs_diff(&l[0], &CMatrix::identity(2, 2)) < 1e-14);
}
