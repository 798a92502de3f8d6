use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ptphase_core::algebra::{kron, Complex, ComplexMatrix};
use ptphase_core::eigen::{eig_hermitian, min_eigenvalue};
use ptphase_core::sample::{ginibre, random_density, random_hermitian, random_witness};
use ptphase_core::schwinger::SchwingerPair;
use ptphase_core::states::{isotropic, momentum_distribution, momentum_distribution_of, Shape};
use ptphase_core::transpose::{partial_transpose_1, pt_state, theorem1_check};
use ptphase_core::wigner::{reflect_p1, wigner_one, wigner_two};
use ptphase_core::witness::{
    moments_original_closed, moments_pt_closed, variance_pt_all_ones, WitnessSpec,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn trace_is_cyclic(seed in any::<u64>(), dim in 1usize..8) {
        let mut r = rng(seed);
        let a = ginibre(dim, &mut r);
        let b = ginibre(dim, &mut r);
        let ab = (&a * &b).trace();
        let ba = (&b * &a).trace();
        prop_assert!((ab - ba).norm() < 1e-10);
    }

    #[test]
    fn kron_mixed_product(seed in any::<u64>()) {
        let mut r = rng(seed);
        let [a, b, c, d] = [(); 4].map(|_| ginibre(3, &mut r));
        let lhs = &kron(&a, &b) * &kron(&c, &d);
        let rhs = kron(&(&a * &c), &(&b * &d));
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10);
    }

    #[test]
    fn adjoint_is_an_involution(seed in any::<u64>(), dim in 1usize..10) {
        let a = ginibre(dim, &mut rng(seed));
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn eigensolver_round_trip(seed in any::<u64>(), dim in 1usize..65) {
        let a = random_hermitian(dim, &mut rng(seed));
        let e = eig_hermitian(&a).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&a).unwrap() <= 1e-9);
        let vv = &e.eigenvectors.adjoint() * &e.eigenvectors;
        prop_assert!(vv.max_abs_diff(&ComplexMatrix::identity(dim)).unwrap() <= 1e-9);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn partial_transpose_structure(seed in any::<u64>(), n in 2usize..4) {
        let mut r = rng(seed);
        let a = random_hermitian(n * n, &mut r);
        let b = random_hermitian(n * n, &mut r);
        let s = Complex::new(0.7, -1.3);
        let pt = |m: &ComplexMatrix| partial_transpose_1(m, n).unwrap();

        let lin = pt(&(&a + &b.scale(s)));
        let lin_expected = &pt(&a) + &pt(&b).scale(s);
        prop_assert!(lin.max_abs_diff(&lin_expected).unwrap() < 1e-12);
        prop_assert_eq!(pt(&pt(&a)), a.clone());
        prop_assert!((pt(&a).trace() - a.trace()).norm() < 1e-12);
        prop_assert!(pt(&a).is_hermitian(1e-12));
    }

    #[test]
    fn square_of_transposed_observable_is_positive(seed in any::<u64>(), n in 2usize..4) {
        let a = random_hermitian(n * n, &mut rng(seed));
        let at = partial_transpose_1(&a, n).unwrap();
        prop_assert!(min_eigenvalue(&(&at * &at)).unwrap() >= -1e-9);
    }

    #[test]
    fn momentum_distribution_is_normalized(seed in any::<u64>(), n in 2usize..6, bipartite in any::<bool>()) {
        let shape = if bipartite { Shape::Bipartite(n) } else { Shape::Single(n) };
        let rho = random_density(shape, &mut rng(seed)).unwrap();
        let p = momentum_distribution(&rho).unwrap();
        prop_assert!((p.total() - 1.0).abs() < 1e-9);
        prop_assert!(p.values.iter().all(|&v| v >= -1e-12));
    }
}

#[test]
fn isotropic_states_are_positive() {
    for n in [2usize, 3, 5] {
        for k in 0..=20 {
            let r = k as f64 / 20.0;
            let rho = isotropic(n, r).unwrap();
            assert!(
                min_eigenvalue(rho.matrix()).unwrap() >= -1e-12,
                "N={n} r={r}"
            );
        }
    }
}

#[test]
fn partial_transpose_flips_first_momentum() {
    for (n, seed) in [(3usize, 11u64), (5, 12), (7, 13)] {
        let mut r = rng(seed);
        for _ in 0..5 {
            let rho = random_density(Shape::Bipartite(n), &mut r).unwrap();
            let p = momentum_distribution(&rho).unwrap();
            let pt = pt_state(&rho).unwrap();
            let q = momentum_distribution_of(&pt.matrix, Shape::Bipartite(n)).unwrap();
            for p1 in 0..n {
                for p2 in 0..n {
                    assert!((q.joint(p1, p2) - p.joint((n - p1) % n, p2)).abs() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn transpose_flips_single_momentum() {
    for (n, seed) in [(3usize, 21u64), (5, 22)] {
        let mut r = rng(seed);
        for _ in 0..5 {
            let rho = random_density(Shape::Single(n), &mut r).unwrap();
            let p = momentum_distribution(&rho).unwrap();
            let q = momentum_distribution(&rho.transpose()).unwrap();
            for k in 0..n {
                assert!((q.single(k) - p.single((n - k) % n)).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn theorem_holds_on_random_pairs() {
    for n in [2usize, 3, 5] {
        let mut r = rng(100 + n as u64);
        for _ in 0..20 {
            let rho = random_density(Shape::Bipartite(n), &mut r).unwrap();
            let a = random_hermitian(n * n, &mut r);
            assert!(theorem1_check(&rho, &a).unwrap().agree);
        }
    }
}

#[test]
fn wigner_reflection_and_marginals() {
    for n in [3usize, 5] {
        let mut r = rng(200 + n as u64);
        for _ in 0..3 {
            let rho = random_density(Shape::Bipartite(n), &mut r).unwrap();
            let w = wigner_two(&rho).unwrap();
            let pt = pt_state(&rho).unwrap().as_state().unwrap();
            let w_pt = wigner_two(&pt).unwrap();
            assert!(w_pt.max_abs_diff(&reflect_p1(&w)).unwrap() < 1e-10);
            assert!((w.total() - (n * n) as f64).abs() < 1e-8);

            let single = random_density(Shape::Single(n), &mut r).unwrap();
            let g = wigner_one(&single).unwrap();
            let g_t = wigner_one(&single.transpose()).unwrap();
            assert!(g_t.max_abs_diff(&reflect_p1(&g)).unwrap() < 1e-10);
            assert!((g.total() - n as f64).abs() < 1e-8);
            for q in 0..n {
                let marginal: f64 = (0..n).map(|p| g.get(q, p)).sum();
                let expected = n as f64 * single.matrix()[(q, q)].re;
                assert!((marginal - expected).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn schwinger_trace_identities_exhaustive() {
    for n in [3usize, 5] {
        let pair = SchwingerPair::build(n).unwrap();
        let n = n as i64;
        for m in 0..n {
            for l in 0..n {
                for m2 in 0..n {
                    for l2 in 0..n {
                        let delta = if m == m2 && l == l2 { 1.0 } else { 0.0 };
                        let pair_val = pair.trace_pair_identity(m, l, m2, l2);
                        assert!((pair_val - Complex::new(delta, 0.0)).norm() < 1e-12);
                        let quad = pair.trace_quad_identity(m, l, m2, l2);
                        assert!((quad - pair.omega_pow(m * l2 - m2 * l)).norm() < 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn original_variance_is_nonnegative() {
    for n in 2usize..7 {
        let mut r = rng(300 + n as u64);
        for _ in 0..10 {
            let spec = random_witness(n, &mut r).unwrap();
            for k in 0..=10 {
                let rep = moments_original_closed(&spec, k as f64 / 10.0).unwrap();
                assert!(rep.variance >= -1e-9, "N={n} variance {}", rep.variance);
            }
        }
    }
}

#[test]
fn pt_variance_sign_tracks_threshold() {
    for n in [2usize, 3, 5, 9] {
        let r0 = 1.0 / (n as f64 + 1.0);
        let ones = WitnessSpec::all_ones(n).unwrap();
        for k in 0..1000 {
            let r = k as f64 / 999.0;
            let v = variance_pt_all_ones(n, r);
            if r <= r0 {
                assert!(v >= -1e-12, "N={n} r={r} var={v}");
            } else if r > r0 + 1e-9 {
                assert!(v < 0.0, "N={n} r={r} var={v}");
            }
            if k % 100 == 0 {
                let closed = moments_pt_closed(&ones, r).unwrap().variance;
                assert!((closed - v).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn closed_forms_match_dense_matrices() {
    use ptphase_core::witness::{moments_matrix, Basis};
    for n in 2usize..7 {
        let mut r = rng(400 + n as u64);
        for _ in 0..3 {
            let spec = random_witness(n, &mut r).unwrap();
            for rv in [0.0, 0.45, 1.0] {
                let closed = moments_original_closed(&spec, rv).unwrap();
                let dense = moments_matrix(&spec, rv, Basis::Original).unwrap();
                assert!((closed.mean - dense.mean).norm() < 1e-9, "N={n} r={rv}");
                assert!((closed.second - dense.second).abs() < 1e-9, "N={n} r={rv}");

                let closed = moments_pt_closed(&spec, rv).unwrap();
                let dense = moments_matrix(&spec, rv, Basis::PartiallyTransposed).unwrap();
                assert!((closed.mean - dense.mean).norm() < 1e-9, "N={n} r={rv}");
                assert!((closed.second - dense.second).abs() < 1e-9, "N={n} r={rv}");
            }
        }
    }
}
