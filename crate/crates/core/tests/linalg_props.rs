mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use udw_core::cmatrix::pauli;
use udw_core::{Complex, ComplexMatrix};

fn random_hermitian(seed: u64, dim: usize) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = Complex::new(common::gaussian_complex(&mut rng).re, 0.0);
        for j in (i + 1)..dim {
            let z = common::gaussian_complex(&mut rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sqrt_psd_squares_back(seed in any::<u64>(), dim in 2usize..=4, rank in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_psd(&mut rng, dim, rank.min(dim));
        let r = a.sqrt_psd().unwrap();
        prop_assert!(r.is_hermitian(1e-12));
        prop_assert!(r.herm_eig().unwrap().min_eigenvalue() >= -1e-10);
        let err = r.multiply(&r).unwrap().max_abs_diff(&a);
        prop_assert!(err <= 1e-10, "err = {err:e}");
    }

    #[test]
    fn herm_eig_reconstructs(seed in any::<u64>(), dim in 2usize..=4) {
        let a = random_hermitian(seed, dim);
        let eig = a.herm_eig().unwrap();
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let scale = 1.0 + a.max_abs();
        prop_assert!(eig.recompose().max_abs_diff(&a) <= 1e-12 * scale);
        let vtv = eig.eigenvectors.adjoint().multiply(&eig.eigenvectors).unwrap();
        prop_assert!(vtv.max_abs_diff(&ComplexMatrix::identity(dim)) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kron_trace_factorizes(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_hermitian(s1, 2);
        let b = random_hermitian(s2, 2);
        let lhs = a.kron(&b).trace();
        let rhs = a.trace() * b.trace();
        prop_assert!((lhs - rhs).norm() <= 1e-13);
    }

    #[test]
    fn kron_is_associative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b, c) = (random_hermitian(s1, 2), random_hermitian(s2, 2), random_hermitian(s3, 2));
        let left = a.kron(&b).kron(&c);
        let right = a.kron(&b.kron(&c));
        prop_assert!(left.max_abs_diff(&right) <= 1e-13);
    }

    #[test]
    fn partial_trace_of_product(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_hermitian(s1, 2);
        let b = random_hermitian(s2, 2);
        let reduced = a.kron(&b).partial_trace_b().unwrap();
        prop_assert!(reduced.max_abs_diff(&a.scale(b.trace())) <= 1e-13);
    }

    #[test]
    fn adjoint_reverses_products(s1 in any::<u64>(), s2 in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s1 ^ s2);
        let a = ComplexMatrix::new(3, (0..9).map(|_| common::gaussian_complex(&mut rng)).collect()).unwrap();
        let b = ComplexMatrix::new(3, (0..9).map(|_| common::gaussian_complex(&mut rng)).collect()).unwrap();
        let lhs = a.multiply(&b).unwrap().adjoint();
        let rhs = b.adjoint().multiply(&a.adjoint()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-13);
    }
}

#[test]
fn degenerate_spectra() {
    // repeated eigenvalues must not stall the rotations
    let m = pauli::x().kron(&pauli::x());
    let eig = m.herm_eig().unwrap();
    let expected = [-1.0, -1.0, 1.0, 1.0];
    for (got, want) in eig.eigenvalues.iter().zip(expected) {
        assert!((got - want).abs() < 1e-14);
    }
    assert!(eig.recompose().max_abs_diff(&m) < 1e-14);
}
