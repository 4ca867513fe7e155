use endofusion::category::align::align_to_reference;
use endofusion::category::pentagon::pentagon_residual;
use endofusion::category::symbols::Tree;
use endofusion::endomorphizer::{balanced_inner, endomorphize, intertwiner_defect, EndomorphizeOptions, Endomorphized, UnitaryMode};
use endofusion::io::fixtures::{fixture, rep_s3, vec_twisted_cyclic};
use endofusion::linalg::{unitarity_defect, C64};

fn run(name: &str, unitary: UnitaryMode, seed: u64) -> Endomorphized {
    let (cat, module) = fixture(name).unwrap();
    endomorphize(&cat, &module, &EndomorphizeOptions { seed, unitary, ..Default::default() }).unwrap()
}

fn fusion_of(r: &Endomorphized, a: &str, b: &str) -> Vec<(String, usize)> {
    let ring = r.output.ring();
    let (a, b) = (ring.index_of(a).unwrap(), ring.index_of(b).unwrap());
    (0..ring.rank()).filter(|&c| ring.n(a, b, c) > 0).map(|c| (ring.label(c).to_string(), ring.n(a, b, c))).collect()
}

#[test]
fn vec_z2_gives_z2_with_trivial_symbols() {
    let r = run("vec_Z2", UnitaryMode::Auto, 0);
    assert_eq!(r.report.labels, vec!["1", "x1"]);
    assert_eq!(fusion_of(&r, "x1", "x1"), vec![("1".to_string(), 1)]);
    let entries = r.output.symbols().entries(1e-14);
    assert_eq!(entries.len(), 8);
    for (_, _, _, v) in entries {
        assert!((v - C64::new(1.0, 0.0)).norm() <= 1e-10, "{v}");
    }
}

#[test]
fn vec_s3_gives_rep_s3() {
    let r = run("vec_S3", UnitaryMode::Auto, 0);
    assert_eq!(r.report.block_dimensions, vec![1, 1, 2]);
    assert_eq!(fusion_of(&r, "x2", "x2"), vec![("1".to_string(), 1), ("x1".to_string(), 1), ("x2".to_string(), 1)]);
    let align = align_to_reference(&r.output, &rep_s3().unwrap(), 1e-6).unwrap();
    assert!(align.max_deviation <= 1e-8, "{}", align.max_deviation);
    let p = 2;
    let t = |e| Tree::new(0, e, 0);
    assert!(r.output.f(p, p, p, p, t(p), t(p)).norm() <= 1e-8);
    assert!((r.output.f(p, p, p, p, t(0), t(0)).norm() - 0.5).abs() <= 1e-8);
}

#[test]
fn rep_s3_over_itself_gives_rep_s3() {
    let r = run("rep_S3_self", UnitaryMode::Auto, 0);
    assert_eq!(r.report.tube_dimension, 43);
    assert_eq!(r.report.block_dimensions, vec![3, 3, 5]);
    assert!((r.report.irrep_weights[2].sqrt() - 2f64.sqrt()).abs() <= 1e-8);
    let align = align_to_reference(&r.output, &rep_s3().unwrap(), 1e-6).unwrap();
    assert!(align.max_deviation <= 1e-8, "{}", align.max_deviation);
}

#[test]
fn outputs_are_unitary_pentagonal_and_nice() {
    for name in ["vec_Z2", "vec_S3", "rep_S3_self", "vec_omega_Z3", "vec_A4"] {
        for mode in [UnitaryMode::Auto, UnitaryMode::Off] {
            let r = run(name, mode, 1);
            let pent = pentagon_residual(&r.output);
            assert!(pent <= 1e-8, "{name} {mode:?}: pentagon {pent:e}");
            assert!(r.report.nice_gauge, "{name} {mode:?}");
            if mode == UnitaryMode::Auto {
                for (key, _) in r.output.symbols().blocks() {
                    let d = unitarity_defect(&r.output.f_block(key[0], key[1], key[2], key[3]));
                    assert!(d <= 1e-8, "{name}: block {key:?} defect {d:e}");
                }
            }
        }
    }
}

#[test]
fn non_unitary_mode_agrees_up_to_gauge() {
    let r = run("rep_S3_self", UnitaryMode::Off, 2);
    assert!(!r.report.unitary);
    let align = align_to_reference(&r.output, &rep_s3().unwrap(), 1e-6).unwrap();
    assert!(align.max_deviation <= 1e-8, "{}", align.max_deviation);
}

#[test]
fn vertices_are_isometric_intertwiners() {
    let r = run("rep_S3_self", UnitaryMode::Auto, 0);
    let dec = &r.decomposition;
    for (&(a, b, g), vs) in &r.vertices.map {
        let weight = dec.irreps[g].weight.re;
        for (x, v) in vs.iter().enumerate() {
            let d = intertwiner_defect(&dec.algebra, &dec.irreps, v);
            assert!(d <= 1e-9, "({a},{b})->{g}: intertwiner defect {d:e}");
            for (y, w) in vs.iter().enumerate() {
                for k in 0..v.shape.2 {
                    for k2 in 0..v.shape.2 {
                        let ip = balanced_inner(&dec.algebra, &dec.irreps[a], &dec.irreps[b], &v.slice(k), &w.slice(k2));
                        let want = if x == y && k == k2 { weight } else { 0.0 };
                        assert!((ip - C64::new(want, 0.0)).norm() <= 1e-9, "({a},{b})->{g} [{x}{k},{y}{k2}]: {ip}");
                    }
                }
            }
        }
    }
}

#[test]
fn a4_has_a_multiplicity_two_channel() {
    let r = run("vec_A4", UnitaryMode::Auto, 0);
    assert_eq!(r.report.block_dimensions, vec![1, 1, 1, 3]);
    let ring = r.output.ring();
    assert_eq!(ring.n(3, 3, 3), 2);
    assert_eq!(r.vertices.count(3, 3, 3), 2);
    assert_eq!(r.output.f_block(3, 3, 3, 3).nrows(), 7);
}

#[test]
fn twisted_z3_over_itself_is_twisted() {
    let r = run("vec_omega_Z3_self", UnitaryMode::Auto, 0);
    assert_eq!(r.report.labels.len(), 3);
    assert!(pentagon_residual(&r.output) <= 1e-8);
    let trivial = vec_twisted_cyclic(3, 0).unwrap();
    let to_trivial = align_to_reference(&r.output, &trivial, 1e-6).unwrap();
    assert!(to_trivial.max_deviation > 1e-3, "twist was lost");
    let best = (1..3)
        .map(|p| align_to_reference(&r.output, &vec_twisted_cyclic(3, p).unwrap(), 1e-6).unwrap().max_deviation)
        .fold(f64::INFINITY, f64::min);
    assert!(best <= 1e-8, "{best:e}");
}

#[test]
fn different_seeds_agree_in_magnitude() {
    let a = run("rep_S3_self", UnitaryMode::Auto, 0);
    let b = run("rep_S3_self", UnitaryMode::Auto, 11);
    assert_eq!(a.report.labels, b.report.labels);
    for (key, _) in a.output.symbols().blocks() {
        let block = a.output.f_block(key[0], key[1], key[2], key[3]);
        let other = b.output.f_block(key[0], key[1], key[2], key[3]);
        for (x, y) in block.iter().zip(other.iter()) {
            assert!((x.norm() - y.norm()).abs() <= 1e-8, "{key:?}");
        }
    }
}

#[test]
fn same_seed_is_bitwise_deterministic() {
    let a = run("vec_S3", UnitaryMode::Auto, 5);
    let b = run("vec_S3", UnitaryMode::Auto, 5);
    assert_eq!(a.output.symbols().entries(0.0), b.output.symbols().entries(0.0));
}
