use ncorr::qmat::{
    c64, herm_eig, partial_trace, partial_transpose, tensor, von_neumann_entropy, ComplexMatrix,
};
use ncorr::rng::{complex_gaussian, seeded_rng};
use ncorr::search::haar_unitary;
use ncorr::states::random_density_matrix;
use proptest::prelude::*;

fn gaussian_matrix(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = seeded_rng(seed);
    ComplexMatrix::from_fn(n, n, |_, _| complex_gaussian(&mut rng))
}

fn random_hermitian(n: usize, seed: u64, scale: f64) -> ComplexMatrix {
    let g = gaussian_matrix(n, seed);
    (&g + &g.adjoint()).scale_re(0.5 * scale)
}

fn sorted_spectrum(m: &ComplexMatrix) -> Vec<f64> {
    herm_eig(m).unwrap().spectrum.into_values()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn eigen_reconstruction(n in 1usize..=16, seed in any::<u64>(), log_scale in -3.0f64..3.0) {
        let h = random_hermitian(n, seed, 10f64.powf(log_scale));
        let eig = herm_eig(&h).unwrap();
        let residual = (&eig.reconstruct() - &h).frobenius_norm();
        prop_assert!(residual <= 1e-10 * h.frobenius_norm().max(1.0), "residual {residual:e}");
        prop_assert!(eig.vectors.unitarity_residual() <= 1e-12);
        prop_assert!(eig.spectrum.values().windows(2).all(|w| w[0] >= w[1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn partial_transpose_is_an_involution(
        dims in prop::collection::vec(1usize..=3, 1..=3),
        side_mask in any::<u8>(),
        seed in any::<u64>(),
    ) {
        let n: usize = dims.iter().product();
        let m = gaussian_matrix(n, seed);
        let side: Vec<usize> = (0..dims.len()).filter(|k| side_mask >> k & 1 == 1).collect();
        let twice = partial_transpose(&partial_transpose(&m, &dims, &side).unwrap(), &dims, &side).unwrap();
        prop_assert_eq!(twice, m);
    }

    #[test]
    fn partial_transpose_preserves_product_spectra(da in 1usize..=3, db in 1usize..=3, seed in any::<u64>()) {
        let a = random_hermitian(da, seed, 1.0);
        let b = random_hermitian(db, seed.wrapping_add(1), 1.0);
        let ab = tensor(&a, &b);
        let pt = partial_transpose(&ab, &[da, db], &[1]).unwrap();
        for (x, y) in sorted_spectrum(&ab).iter().zip(sorted_spectrum(&pt)) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn partial_trace_of_product(da in 1usize..=4, db in 2usize..=4, seed in any::<u64>()) {
        let a = gaussian_matrix(da, seed);
        let b = random_density_matrix(&[db], db, seed.wrapping_add(7)).unwrap();
        let (reduced, kept) = partial_trace(&tensor(&a, b.matrix()), &[da, db], &[0]).unwrap();
        prop_assert_eq!(kept, vec![da]);
        prop_assert!(reduced.max_abs_diff(&a) <= 1e-12);
    }

    #[test]
    fn entropy_is_unitarily_invariant(n in 2usize..=8, rank in 1usize..=8, seed in any::<u64>()) {
        let rho = random_density_matrix(&[n], rank.min(n), seed).unwrap();
        let u = haar_unitary(n, &mut seeded_rng(seed ^ 0x5555));
        let before = von_neumann_entropy(rho.matrix()).unwrap();
        let after = von_neumann_entropy(&rho.matrix().conjugate_by(&u)).unwrap();
        prop_assert!((before - after).abs() <= 1e-9);
    }
}

#[test]
fn degenerate_sigma_spectrum() {
    let p = 0.125;
    let rho = ComplexMatrix::from_real_rows(&[
        &[0.5 - p, 0.0, 0.0, 0.0],
        &[0.0, p, p, 0.0],
        &[0.0, p, p, 0.0],
        &[0.0, 0.0, 0.0, 0.5 - p],
    ]);
    let values = sorted_spectrum(&rho);
    for (got, want) in values.iter().zip([0.375, 0.375, 0.25, 0.0]) {
        assert!((got - want).abs() < 1e-14, "{values:?}");
    }
}

#[test]
fn complex_entries_survive_partial_transpose() {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 3)] = c64::new(0.0, 1.0);
    let pt = partial_transpose(&m, &[2, 2], &[1]).unwrap();
    assert_eq!(pt[(1, 2)], c64::new(0.0, 1.0));
    assert_eq!(pt[(0, 3)], c64::new(0.0, 0.0));
}
