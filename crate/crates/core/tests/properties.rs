use std::f64::consts::{FRAC_PI_2, PI};

use locinv_core::numkernel::{
    eigenphases_unitary, expm_antihermitian, kernel_basis, nullity, special_unitarize,
};
use locinv_core::{
    canonical_from_gate, canonical_gate, eta_analytic, eta_numeric, eta_spectral,
    eta_spectral_canonical, generator_basis, m_matrix, makhlin_from_canonical, makhlin_from_gate,
    random_local, random_su, w_matrix, weyl_reduce, CanonicalParams, ComplexMatrix, GateMatrix,
    RealMatrix, TolerancePolicy,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: TolerancePolicy = TolerancePolicy::DEFAULT;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dressed(u: &GateMatrix, rng: &mut ChaCha8Rng) -> GateMatrix {
    let k1 = random_local(2, rng).gate();
    let k2 = random_local(2, rng).gate();
    k1.then_after(u).then_after(&k2)
}

fn triple() -> impl Strategy<Value = CanonicalParams> {
    let r = -2.0 * PI..2.0 * PI;
    (r.clone(), r.clone(), r).prop_map(|(a, b, c)| CanonicalParams::new(a, b, c))
}

fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(-1.0f64..1.0, 2 * dim * dim).prop_map(move |v| {
        let mut h = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                let k = 2 * (i * dim + j);
                h[(i, j)] += Complex64::new(v[k], v[k + 1]) * 0.5;
                h[(j, i)] += Complex64::new(v[k], -v[k + 1]) * 0.5;
            }
        }
        h
    })
}

// Oracle: the M(U) spectrum of the canonical gate has phases
// c1+c2-c3, c1-c2+c3, -c1+c2+c3, -(c1+c2+c3). Its sum is zero, and the trace
// of the matrix is the sum of the corresponding unit phasors.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigenphases_reproduce_trace(p in triple()) {
        let m = m_matrix(&canonical_gate(p)).unwrap();
        let phases = eigenphases_unitary(&m, &TOL).unwrap();
        let sum: Complex64 = phases.iter().map(|&t| Complex64::from_polar(1.0, t)).sum();
        prop_assert!((sum - m.trace()).norm() < 1e-10);
        let mut want = p.m_phases();
        let mut got = phases.clone();
        want.iter_mut().for_each(|x| *x = x.sin());
        got.iter_mut().for_each(|x| *x = x.sin());
        want.sort_by(f64::total_cmp);
        got.sort_by(f64::total_cmp);
        for (a, b) in want.iter().zip(&got) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn expm_inverse_pair(h in hermitian(4)) {
        // Scale so the spectral radius stays below pi.
        let h = h.scale(Complex64::new(0.0, 0.5));
        let minus = h.scale(Complex64::new(-1.0, 0.0));
        let a = expm_antihermitian(&h, &TOL).unwrap();
        let b = expm_antihermitian(&minus, &TOL).unwrap();
        prop_assert!((&a * &b).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
        prop_assert!(a.unitarity_deviation() < 1e-12);
    }

    #[test]
    fn rank_plus_nullity(rows in 1usize..9, cols in 1usize..9, rank in 0usize..9, seed in any::<u64>()) {
        let rank = rank.min(rows).min(cols);
        let mut r = rng(seed);
        let left: Vec<Vec<f64>> = (0..rows).map(|_| (0..rank).map(|_| r.random_range(-1.0..1.0)).collect()).collect();
        let right: Vec<Vec<f64>> = (0..rank).map(|_| (0..cols).map(|_| r.random_range(-1.0..1.0)).collect()).collect();
        let mut m = RealMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = (0..rank).map(|k| left[i][k] * right[k][j]).sum();
            }
        }
        let k = nullity(&m, TOL.eps_rank);
        // Random factors have full rank almost surely.
        prop_assert_eq!(k, cols - rank);
        let basis = kernel_basis(&m, TOL.eps_rank);
        prop_assert_eq!(basis.cols(), k);
        if k > 0 {
            prop_assert!((&m * &basis).max_abs() < 1e-10);
        }
    }

    #[test]
    fn special_unitarize_idempotent(seed in any::<u64>(), phase in -PI..PI) {
        let u = random_su(4, &mut rng(seed)).into_matrix().scale(Complex64::from_polar(1.0, phase));
        let (once, _) = special_unitarize(&u, &TOL).unwrap();
        let (twice, removed) = special_unitarize(&once, &TOL).unwrap();
        prop_assert!(once.max_abs_diff(&twice) < 1e-12);
        prop_assert!(removed.abs() < 1e-12);
        prop_assert!((once.det() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn reduce_is_idempotent_and_preserves_makhlin(p in triple()) {
        let r = weyl_reduce(p, &TOL).unwrap();
        prop_assert!(r.is_reduced(TOL.eps_match));
        let again = weyl_reduce(r, &TOL).unwrap();
        prop_assert!(again.max_abs_diff(&r) < 1e-12);
        prop_assert!(makhlin_from_canonical(r).max_abs_diff(&makhlin_from_canonical(p)) < 1e-12);
    }

    #[test]
    fn canonical_phase_sum_vanishes(p in triple()) {
        // det canonical_gate = 1, so the M(U) phases sum to a multiple of 2 pi.
        let phases = eigenphases_unitary(&m_matrix(&canonical_gate(p)).unwrap(), &TOL).unwrap();
        let s: f64 = phases.iter().sum();
        let k = (s / (2.0 * PI)).round();
        prop_assert!((s - 2.0 * PI * k).abs() < 1e-9);
    }
}

#[test]
fn reduction_over_ten_thousand_triples() {
    let mut r = rng(11);
    for _ in 0..10_000 {
        let p: [f64; 3] = core::array::from_fn(|_| r.random_range(-2.0 * PI..2.0 * PI));
        let p = CanonicalParams::new(p[0], p[1], p[2]);
        let q = weyl_reduce(p, &TOL).unwrap();
        assert!(q.is_reduced(TOL.eps_match), "{p:?} -> {q:?}");
        assert!(weyl_reduce(q, &TOL).unwrap().max_abs_diff(&q) < 1e-12);
        assert!(makhlin_from_canonical(q).max_abs_diff(&makhlin_from_canonical(p)) < 1e-12);
    }
}

#[test]
fn makhlin_closed_form_matches_gate_form() {
    let mut r = rng(12);
    for _ in 0..1000 {
        let p: [f64; 3] = core::array::from_fn(|_| r.random_range(-PI..PI));
        let p = CanonicalParams::new(p[0], p[1], p[2]);
        let from_gate = makhlin_from_gate(&canonical_gate(p)).unwrap();
        assert!(from_gate.max_abs_diff(&makhlin_from_canonical(p)) < 1e-12, "{p:?}");
    }
}

#[test]
fn invariants_are_local() {
    let mut r = rng(13);
    for _ in 0..300 {
        let u = random_su(4, &mut r);
        let v = dressed(&u, &mut r);
        let (gu, gv) = (makhlin_from_gate(&u).unwrap(), makhlin_from_gate(&v).unwrap());
        assert!(gu.max_abs_diff(&gv) < 1e-12);
        let (cu, cv) =
            (canonical_from_gate(&u, &TOL).unwrap(), canonical_from_gate(&v, &TOL).unwrap());
        assert!(cu.max_abs_diff(&cv) < 1e-9, "{cu:?} vs {cv:?}");
        assert_eq!(eta_numeric(&u, &TOL).unwrap().eta, eta_numeric(&v, &TOL).unwrap().eta);
    }
}

#[test]
fn eta_routes_agree_on_strata() {
    let mut r = rng(14);
    let h = FRAC_PI_2;
    for _ in 0..100 {
        let a = r.random_range(0.05..h - 0.05);
        let b = r.random_range(0.05..a);
        let points = [
            CanonicalParams::new(a, a, a),
            CanonicalParams::new(PI - a, a, a),
            CanonicalParams::new(2.0 * a, 0.0, 0.0),
            CanonicalParams::new(h, h, a),
            CanonicalParams::new(a, a, b),
            CanonicalParams::new(a + h, b, b),
            CanonicalParams::new(PI - a, a, b),
            CanonicalParams::new(a + 0.3, a, b),
        ];
        for p in points {
            let u = dressed(&canonical_gate(p), &mut r);
            let n = eta_numeric(&u, &TOL).unwrap().eta;
            let an = eta_analytic(p, &TOL).unwrap().eta;
            let sp = eta_spectral(&u, &TOL).unwrap().eta;
            let sc = eta_spectral_canonical(p, &TOL).eta;
            assert_eq!((n, an, sp, sc), (an, sp, sc, n), "{p:?}");
        }
    }
}

#[test]
fn w_columns_are_orthonormal_and_balanced() {
    let mut r = rng(15);
    for n in 1..=3 {
        let basis = generator_basis(n).unwrap();
        for _ in 0..20 {
            let u = random_su(1 << n, &mut r);
            let w = w_matrix(&u, &basis).unwrap().stacked();
            let gram = &w.transpose() * &w;
            assert!(gram.max_abs_diff(&RealMatrix::identity(3 * n)) < 1e-10);
        }
    }
    // A local gate maps local generators to local generators only.
    let basis = generator_basis(2).unwrap();
    let k = random_local(2, &mut r).gate();
    let w = w_matrix(&k, &basis).unwrap();
    assert!(w.nonlocal.max_abs() < 1e-12);
}

#[test]
fn single_qubit_gates_bind_nothing() {
    let mut r = rng(16);
    for _ in 0..20 {
        let u = random_su(2, &mut r);
        let report = eta_numeric(&u, &TOL).unwrap();
        assert_eq!(report.eta, 0);
    }
}
