use endofusion::category::align::{align_to_reference, relabel};
use endofusion::category::gauge::{apply_gauge, GaugeTransform};
use endofusion::category::pentagon::pentagon_residual;
use endofusion::endomorphizer::{endomorphize, EndomorphizeOptions};
use endofusion::io::fixtures::{fixture, rep_s3, vec_group};
use endofusion::io::format::CategoryFile;
use endofusion::linalg::{c, C64};
use endofusion::tube::{TubeAlgebra, TubeVector};
use proptest::prelude::*;

fn coeffs(dim: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
}

fn vector(v: &[(f64, f64)]) -> TubeVector {
    TubeVector::from_coeffs(v.iter().map(|&(a, b)| c(a, b)).collect())
}

/// Phase gauge on every admissible vertex of the fusion rules.
fn phase_gauge(cat: &endofusion::FusionCategoryData, angles: &[f64]) -> GaugeTransform {
    let ring = cat.ring();
    let r = ring.rank();
    let mut k = 0;
    let mut scalars = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for cc in 0..r {
                if ring.n(a, b, cc) > 0 && a != ring.unit() && b != ring.unit() {
                    scalars.push(((a, b, cc), C64::from_polar(1.0, angles[k % angles.len()])));
                    k += 1;
                }
            }
        }
    }
    GaugeTransform::from_scalars(scalars)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tube_product_is_associative(a in coeffs(43), b in coeffs(43), x in coeffs(43)) {
        let (cat, module) = fixture("rep_S3_self").unwrap();
        let alg = TubeAlgebra::new(&cat, &module).unwrap();
        let (a, b, x) = (vector(&a), vector(&b), vector(&x));
        let lhs = alg.mul(&alg.mul(&a, &b), &x);
        let rhs = alg.mul(&a, &alg.mul(&b, &x));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
    }

    #[test]
    fn star_reverses_products_and_norms_are_positive(a in coeffs(43), b in coeffs(43)) {
        let (cat, module) = fixture("rep_S3_self").unwrap();
        let alg = TubeAlgebra::new(&cat, &module).unwrap();
        let (a, b) = (vector(&a), vector(&b));
        let lhs = alg.star(&alg.mul(&a, &b)).unwrap();
        let rhs = alg.mul(&alg.star(&b).unwrap(), &alg.star(&a).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
        let ip = alg.inner(&a, &a).unwrap();
        prop_assert!(ip.re > 0.0 && ip.im.abs() <= 1e-10);
    }

    #[test]
    fn phase_gauges_preserve_pentagon_and_are_undone(angles in proptest::collection::vec(-3.1f64..3.1, 1..12)) {
        let reference = rep_s3().unwrap();
        let moved = apply_gauge(&reference, &phase_gauge(&reference, &angles)).unwrap();
        prop_assert!(pentagon_residual(&moved) <= 1e-10);
        prop_assert!(moved.is_unitary());
        let align = align_to_reference(&moved, &reference, 1e-6).unwrap();
        prop_assert!(align.max_deviation <= 1e-8);
    }

    #[test]
    fn relabelings_are_found(swap in any::<bool>()) {
        let reference = rep_s3().unwrap();
        let perm = if swap { vec![0, 2, 1] } else { vec![0, 1, 2] };
        let moved = relabel(&reference, &perm).unwrap();
        let align = align_to_reference(&moved, &reference, 1e-6).unwrap();
        prop_assert!(align.max_deviation <= 1e-8);
    }

    #[test]
    fn file_round_trip_survives_gauges(angles in proptest::collection::vec(-3.1f64..3.1, 1..12)) {
        let reference = rep_s3().unwrap();
        let moved = apply_gauge(&reference, &phase_gauge(&reference, &angles)).unwrap();
        let file = CategoryFile::from_data(&moved);
        let text = serde_json::to_string(&file).unwrap();
        let back: CategoryFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &file);
        let data = back.to_data(Some(1e-10)).unwrap();
        prop_assert_eq!(CategoryFile::from_data(&data), file);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn any_seed_gives_rep_s3(seed in any::<u64>()) {
        let (cat, module) = fixture("vec_S3").unwrap();
        let r = endomorphize(&cat, &module, &EndomorphizeOptions { seed, ..Default::default() }).unwrap();
        let align = align_to_reference(&r.output, &rep_s3().unwrap(), 1e-6).unwrap();
        prop_assert!(align.max_deviation <= 1e-8);
        prop_assert!(pentagon_residual(&r.output) <= 1e-8);
    }

    #[test]
    fn cyclic_groups_are_self_dual(n in 2usize..7, seed in any::<u64>()) {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let (cat, module) = vec_group(labels, 0, |a, b| (a + b) % n).unwrap();
        let r = endomorphize(&cat, &module, &EndomorphizeOptions { seed, ..Default::default() }).unwrap();
        prop_assert_eq!(r.report.tube_dimension, n);
        prop_assert_eq!(r.report.block_dimensions.clone(), vec![1; n]);
        // the dual of Vec(Z_n) is Rep(Z_n), again Z_n with trivial symbols up to gauge
        let align = align_to_reference(&r.output, &cat, 1e-6).unwrap();
        prop_assert!(align.max_deviation <= 1e-8);
    }
}
