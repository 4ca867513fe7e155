//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! The Haagerup criterion needs F- and L-symbols that are not shipped. Point
//! `ENDOFUSION_H3` and `ENDOFUSION_M31` at category and module files to run
//! it; without them the line stays FAIL and does not affect the exit status.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use endofusion::category::align::{align_to_reference, ring_isomorphisms};
use endofusion::category::pentagon::{module_pentagon_residual, pentagon_residual};
use endofusion::endomorphizer::{endomorphize, EndomorphizeOptions, Endomorphized};
use endofusion::io::fixtures::{fixture, h1_ring, m31_fusion, rep_s3, FIXTURE_NAMES};
use endofusion::io::format::{to_json, CategoryFile};
use endofusion::io::{load_category, load_module};
use endofusion::linalg::{unitarity_defect, C64};
use endofusion::tube::{algebra_dimension, TensorSpace, TubeAlgebra, TubeVector};
use endofusion::wedderburn::{matrix_unit_defect, matrix_units, star_defect, WedderburnOptions};
use endofusion::{FusionCategoryData, ModuleCategoryData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const F_TOL: f64 = 1e-10;
const TABLE_TOL: f64 = 1e-8;
const UNITARY_TOL: f64 = 1e-8;
const OUTPUT_PENTAGON_TOL: f64 = 1e-8;
const INPUT_PENTAGON_TOL: f64 = 1e-12;
const ALGEBRA_TOL: f64 = 1e-10;
const MATRIX_UNIT_TOL: f64 = 1e-9;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: &str, pass: bool, detail: String) {
        println!("{} {id}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failed += 1;
        }
    }
}

fn timed(name: &str) -> (Endomorphized, Duration, FusionCategoryData, ModuleCategoryData) {
    let (cat, module) = fixture(name).unwrap();
    let start = Instant::now();
    let r = endomorphize(&cat, &module, &EndomorphizeOptions::default()).unwrap();
    (r, start.elapsed(), cat, module)
}

fn max_unitarity(cat: &FusionCategoryData) -> f64 {
    cat.symbols().blocks().map(|(k, _)| unitarity_defect(&cat.f_block(k[0], k[1], k[2], k[3]))).fold(0.0, f64::max)
}

fn criterion_1(rep: &mut Report, runs: &mut Vec<(String, FusionCategoryData)>) {
    let (r, t, _, _) = timed("vec_Z2");
    let entries = r.output.symbols().entries(1e-14);
    let worst = entries.iter().map(|e| (e.3 - C64::new(1.0, 0.0)).norm()).fold(0.0, f64::max);
    let ring = r.output.ring();
    let z2 = ring.rank() == 2 && ring.n(1, 1, 0) == 1;
    let pass = r.report.tube_dimension == 2
        && r.report.block_dimensions == [1, 1]
        && z2
        && entries.len() == 8
        && worst <= F_TOL
        && t < Duration::from_millis(100);
    rep.line(
        "1 Vec(Z2) end-to-end",
        pass,
        format!(
            "tube dim {}, blocks {:?}, ring Z2 {z2}, {} F-symbols with max |F-1| {worst:.1e} (tol {F_TOL:.0e}), {t:.2?} (< 100ms)",
            r.report.tube_dimension,
            r.report.block_dimensions,
            entries.len()
        ),
    );
    runs.push(("vec_Z2".into(), r.output));
}

fn criterion_2(rep: &mut Report, runs: &mut Vec<(String, FusionCategoryData)>) {
    let (r, t, _, _) = timed("vec_S3");
    let align = align_to_reference(&r.output, &rep_s3().unwrap(), 1e-6).unwrap();
    let mut blocks = r.report.block_dimensions.clone();
    blocks.sort();
    // F^{πππ}_π in the aligned labels: entry (π,π) vanishes, (1,1) is 1/2, (1,π) is 1/√2
    let p = align.perm.iter().position(|&x| x == 2).unwrap_or(2);
    let m = r.output.f_block(p, p, p, p);
    let (zero, half, root) = (m[(2, 2)].norm(), m[(0, 0)].norm(), m[(0, 2)].norm());
    let entries_ok = zero <= TABLE_TOL && (half - 0.5).abs() <= TABLE_TOL && (root - 0.5f64.sqrt()).abs() <= TABLE_TOL;
    let pass = r.report.tube_dimension == 6 && blocks == [1, 1, 2] && align.max_deviation <= TABLE_TOL && entries_ok && t < Duration::from_secs(1);
    rep.line(
        "2 Vec(S3) end-to-end",
        pass,
        format!(
            "tube dim {}, blocks {blocks:?}, table deviation {:.1e} (tol {TABLE_TOL:.0e}), |F^ppp_p| entries pp {zero:.1e} 11 {half:.6} 1p {root:.6}, {t:.2?} (< 1s)",
            r.report.tube_dimension, align.max_deviation
        ),
    );
    runs.push(("vec_S3".into(), r.output));
}

fn criterion_3(rep: &mut Report, runs: &mut Vec<(String, FusionCategoryData)>) {
    let (r, t, _, _) = timed("rep_S3_self");
    let pairs = TensorSpace::new(&r.decomposition.algebra).len();
    let align = align_to_reference(&r.output, &rep_s3().unwrap(), 1e-6).unwrap();
    let mut blocks = r.report.block_dimensions.clone();
    blocks.sort();
    let pi_norm = r.report.irrep_weights.iter().cloned().fold(0.0, f64::max).sqrt();
    let pass = r.report.tube_dimension == 43
        && blocks == [3, 3, 5]
        && pairs == 683
        && (pi_norm - 2f64.sqrt()).abs() <= TABLE_TOL
        && align.max_deviation <= TABLE_TOL
        && t < Duration::from_secs(60);
    rep.line(
        "3 Rep(S3) over itself",
        pass,
        format!(
            "tube dim {}, blocks {blocks:?}, pair basis {pairs}, |v^pi| {pi_norm:.10}, table deviation {:.1e}, {t:.2?} (< 60s)",
            r.report.tube_dimension, align.max_deviation
        ),
    );
    runs.push(("rep_S3_self".into(), r.output));
}

fn criterion_4(rep: &mut Report, runs: &[(String, FusionCategoryData)]) {
    let worst: Vec<String> = runs.iter().map(|(n, c)| format!("{n} {:.1e}", max_unitarity(c))).collect();
    let pass = runs.iter().all(|(_, c)| max_unitarity(c) <= UNITARY_TOL);
    rep.line("4 unitarity of output F-blocks", pass, format!("max |B†B-I| {} (tol {UNITARY_TOL:.0e})", worst.join(", ")));
}

fn criterion_5(rep: &mut Report, runs: &[(String, FusionCategoryData)]) {
    let mut outputs: Vec<(String, f64)> = runs.iter().map(|(n, c)| (n.clone(), pentagon_residual(c))).collect();
    for name in ["vec_omega_Z3", "vec_omega_Z3_self", "vec_A4"] {
        let (cat, module) = fixture(name).unwrap();
        let r = endomorphize(&cat, &module, &EndomorphizeOptions::default()).unwrap();
        outputs.push((name.into(), pentagon_residual(&r.output)));
    }
    let mut inputs = Vec::new();
    for name in FIXTURE_NAMES {
        let (cat, module) = fixture(name).unwrap();
        inputs.push((name, pentagon_residual(&cat).max(module_pentagon_residual(&cat, &module))));
    }
    let out_worst = outputs.iter().map(|x| x.1).fold(0.0, f64::max);
    let in_worst = inputs.iter().map(|x| x.1).fold(0.0, f64::max);
    rep.line(
        "5 pentagon certification",
        out_worst <= OUTPUT_PENTAGON_TOL && in_worst <= INPUT_PENTAGON_TOL,
        format!(
            "{} outputs max {out_worst:.1e} (tol {OUTPUT_PENTAGON_TOL:.0e}); {} inputs max {in_worst:.1e} (tol {INPUT_PENTAGON_TOL:.0e})",
            outputs.len(),
            inputs.len()
        ),
    );
}

fn random_vector(dim: usize, rng: &mut ChaCha8Rng) -> TubeVector {
    TubeVector::from_coeffs((0..dim).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
}

fn criterion_6(rep: &mut Report) {
    let mut assoc: f64 = 0.0;
    let mut star: f64 = 0.0;
    let mut mu: f64 = 0.0;
    let mut positive = true;
    let mut sum_ok = true;
    let mut checked = 0;
    for name in FIXTURE_NAMES {
        let (cat, module) = fixture(name).unwrap();
        let alg = TubeAlgebra::new(&cat, &module).unwrap();
        let n = alg.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = alg.compose_basis(a, b);
                if ab.max_abs() == 0.0 {
                    continue;
                }
                for x in 0..n {
                    let lhs = alg.mul(&ab, &TubeVector::basis(n, x));
                    let rhs = alg.mul(&TubeVector::basis(n, a), &alg.compose_basis(b, x));
                    assoc = assoc.max(lhs.max_abs_diff(&rhs));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..100 {
            let (a, b) = (random_vector(n, &mut rng), random_vector(n, &mut rng));
            let lhs = alg.star(&alg.mul(&a, &b)).unwrap();
            let rhs = alg.mul(&alg.star(&b).unwrap(), &alg.star(&a).unwrap());
            star = star.max(lhs.max_abs_diff(&rhs));
            let ip = alg.inner(&a, &a).unwrap();
            positive &= ip.re > 0.0 && ip.im.abs() <= ALGEBRA_TOL * ip.re.max(1.0);
        }
        let sys = matrix_units(&alg, &WedderburnOptions::default()).unwrap();
        mu = mu.max(matrix_unit_defect(&alg, &sys)).max(star_defect(&alg, &sys).unwrap());
        sum_ok &= sys.blocks.iter().map(|b| b.dim * b.dim).sum::<usize>() == n;
        checked += 1;
    }
    let pass = assoc <= ALGEBRA_TOL && star <= ALGEBRA_TOL && positive && mu <= MATRIX_UNIT_TOL && sum_ok;
    rep.line(
        "6 algebra property suite",
        pass,
        format!(
            "{checked} fixtures: associativity {assoc:.1e}, star {star:.1e} (tol {ALGEBRA_TOL:.0e}), positivity on 100 vectors each {positive}, matrix units {mu:.1e} (tol {MATRIX_UNIT_TOL:.0e}), sum D^2 = dim {sum_ok}"
        ),
    );
}

/// Returns whether the line counts toward the exit status.
fn criterion_7(rep: &mut Report) -> bool {
    let dim = algebra_dimension(&m31_fusion().unwrap());
    let h1 = h1_ring().unwrap();
    let nu = h1.index_of("nu").unwrap();
    let nu_nu: Vec<usize> = (0..4).map(|c| h1.n(nu, nu, c)).collect();
    let partial = format!("from fusion rules alone: tube dim {dim}, H1 nu x nu multiplicities {nu_nu:?}");
    let (h3, m31) = match (std::env::var("ENDOFUSION_H3"), std::env::var("ENDOFUSION_M31")) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            rep.line(
                "7 Haagerup (conditional)",
                false,
                format!("H3 F-symbols and M31 L-symbols not supplied (set ENDOFUSION_H3, ENDOFUSION_M31); not counted; {partial}"),
            );
            rep.failed -= 1;
            return false;
        }
    };
    let start = Instant::now();
    let outcome = load_category(&h3, Some(1e-9)).and_then(|cat| {
        let module = load_module(&m31, &cat, Some(1e-9))?;
        endomorphize(&cat, &module, &EndomorphizeOptions::default())
    });
    match outcome {
        Ok(r) => {
            let t = start.elapsed();
            let iso = !ring_isomorphisms(r.output.ring(), &h1).is_empty();
            let u = max_unitarity(&r.output);
            let p = pentagon_residual(&r.output);
            let pass = r.report.tube_dimension == 555
                && r.report.labels.len() == 4
                && iso
                && u <= UNITARY_TOL
                && p <= OUTPUT_PENTAGON_TOL
                && t <= Duration::from_secs(1800);
            rep.line(
                "7 Haagerup (conditional)",
                pass,
                format!("tube dim {}, {} irreps, H1 rules {iso}, unitarity {u:.1e}, pentagon {p:.1e}, {t:.2?}", r.report.tube_dimension, r.report.labels.len()),
            );
        }
        Err(e) => rep.line("7 Haagerup (conditional)", false, format!("supplied data rejected: {e}")),
    }
    true
}

fn criterion_8(rep: &mut Report) {
    let mut same = true;
    for name in ["vec_Z2", "vec_S3", "rep_S3_self"] {
        let (cat, module) = fixture(name).unwrap();
        let opts = EndomorphizeOptions { seed: 42, ..Default::default() };
        let render = |r: &Endomorphized| (to_json(&CategoryFile::from_data(&r.output)), to_json(&r.report));
        let a = render(&endomorphize(&cat, &module, &opts).unwrap());
        let b = render(&endomorphize(&cat, &module, &opts).unwrap());
        same &= a == b;
    }
    rep.line("8 determinism", same, format!("byte-identical output and report files across two runs: {same}"));
}

fn main() -> ExitCode {
    let mut rep = Report { failed: 0 };
    let mut runs = Vec::new();
    criterion_1(&mut rep, &mut runs);
    criterion_2(&mut rep, &mut runs);
    criterion_3(&mut rep, &mut runs);
    criterion_4(&mut rep, &runs);
    criterion_5(&mut rep, &runs);
    criterion_6(&mut rep);
    criterion_7(&mut rep);
    criterion_8(&mut rep);
    if rep.failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} counted criteria failed", rep.failed);
        ExitCode::FAILURE
    }
}
