#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use udw_core::{Complex, ComplexMatrix, DensityMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn gaussian_complex(rng: &mut impl Rng) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Complex Ginibre matrix with `rows × cols` standard normal entries.
fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> Vec<Complex> {
    (0..rows * cols).map(|_| gaussian_complex(rng)).collect()
}

/// `G G†` for a `dim × rank` Ginibre `G`: a random PSD matrix of the given rank.
pub fn random_psd(rng: &mut impl Rng, dim: usize, rank: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim, rank);
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = (0..rank)
                .map(|k| g[i * rank + k] * g[j * rank + k].conj())
                .sum();
        }
    }
    m
}

/// Two-qubit mixed state: partial trace of a random purification with an
/// ancilla of dimension `rank`.
pub fn random_state_of_rank(rng: &mut impl Rng, rank: usize) -> DensityMatrix {
    let m = random_psd(rng, 4, rank);
    let t = m.trace().re;
    DensityMatrix::new(m.scale(Complex::new(1.0 / t, 0.0))).expect("normalized PSD")
}

pub fn random_state(rng: &mut impl Rng) -> DensityMatrix {
    let rank = rng.gen_range(1..=4);
    random_state_of_rank(rng, rank)
}

pub fn random_pure_state(rng: &mut impl Rng) -> DensityMatrix {
    random_state_of_rank(rng, 1)
}

pub fn random_unit_vector(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Haar-random SU(2) from a uniformly random unit quaternion.
pub fn random_qubit_unitary(rng: &mut impl Rng) -> ComplexMatrix {
    let q: Vec<f64> = (0..4).map(|_| rng.sample(StandardNormal)).collect();
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let (a, b, c, d) = (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
    ComplexMatrix::from_rows([
        [Complex::new(a, b), Complex::new(c, d)],
        [Complex::new(-c, d), Complex::new(a, -b)],
    ])
    .unwrap()
}

/// `1 − Tr[ρ_a²]`, twice of which is the linear entropy of entanglement for pure states.
pub fn marginal_impurity(rho: &DensityMatrix) -> f64 {
    let a = rho.marginal_a();
    1.0 - a.multiply(&a).unwrap().trace().re
}
