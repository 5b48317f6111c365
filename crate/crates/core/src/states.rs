//! Two-qubit states: the asymptotic equilibrium state of a pair of uniformly
//! accelerated detectors, product states built from Bloch vectors, and a few
//! reference states.
//!
//! Basis order is `|00⟩, |01⟩, |10⟩, |11⟩`, with the first detector (`a`) as the
//! slow index.

use std::f64::consts::PI;

use crate::cmatrix::{pauli, Complex, ComplexMatrix, PSD_TOLERANCE};
use crate::error::{Error, Result};

pub const TRACE_TOLERANCE: f64 = 1e-10;

/// Hermitian, unit-trace, positive semidefinite 4×4 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if mat.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: mat.dim(),
            });
        }
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > TRACE_TOLERANCE || trace.im.abs() > TRACE_TOLERANCE {
            return Err(Error::BadTrace { trace: trace.re });
        }
        // herm_eig checks the Hermitian tolerance.
        let lowest = mat.herm_eig()?.min_eigenvalue();
        if lowest < -PSD_TOLERANCE {
            return Err(Error::NotPsd { eigenvalue: lowest });
        }
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.mat[(row, col)]
    }

    /// Reduced state of the first qubit.
    pub fn marginal_a(&self) -> ComplexMatrix {
        self.mat
            .partial_trace_b()
            .expect("density matrices are 4x4")
    }

    /// Applies `U ρ U†`. The result is re-validated.
    pub fn conjugate_by(&self, unitary: &ComplexMatrix) -> Result<Self> {
        let m = unitary.multiply(&self.mat)?.dot(&unitary.adjoint());
        Self::new(m)
    }
}

/// Parameters of the detector equilibrium state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UdwParams {
    unruh_temperature: f64,
    energy_spacing: f64,
    delta0: f64,
}

impl UdwParams {
    pub fn new(unruh_temperature: f64, energy_spacing: f64, delta0: f64) -> Result<Self> {
        if !(unruh_temperature.is_finite() && unruh_temperature > 0.0) {
            return Err(Error::InvalidParameter {
                name: "t_u",
                value: unruh_temperature,
                reason: "Unruh temperature must be positive and finite",
            });
        }
        if !(energy_spacing.is_finite() && energy_spacing > 0.0) {
            return Err(Error::InvalidParameter {
                name: "omega",
                value: energy_spacing,
                reason: "energy spacing must be positive and finite",
            });
        }
        if !(-3.0..=1.0).contains(&delta0) {
            return Err(Error::InvalidParameter {
                name: "delta0",
                value: delta0,
                reason: "must lie in [-3, 1]",
            });
        }
        Ok(Self {
            unruh_temperature,
            energy_spacing,
            delta0,
        })
    }

    pub fn unruh_temperature(&self) -> f64 {
        self.unruh_temperature
    }

    pub fn energy_spacing(&self) -> f64 {
        self.energy_spacing
    }

    pub fn delta0(&self) -> f64 {
        self.delta0
    }

    /// `β = 1 / T_U`.
    pub fn beta(&self) -> f64 {
        1.0 / self.unruh_temperature
    }

    /// `γ = tanh(ω / 2T_U)`; depends on the ratio `ω / T_U` only.
    pub fn gamma(&self) -> f64 {
        (self.energy_spacing / (2.0 * self.unruh_temperature)).tanh()
    }
}

pub fn gamma_of(params: &UdwParams) -> f64 {
    params.gamma()
}

/// The four distinct entries of the X-shaped equilibrium state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquilibriumElements {
    /// `⟨00|ρ|00⟩`
    pub rho11: f64,
    /// `⟨01|ρ|01⟩ = ⟨10|ρ|10⟩`
    pub rho22: f64,
    /// `⟨01|ρ|10⟩ = ⟨10|ρ|01⟩`
    pub rho23: f64,
    /// `⟨11|ρ|11⟩`
    pub rho44: f64,
}

impl EquilibriumElements {
    pub fn from_gamma(gamma: f64, delta0: f64) -> Self {
        let g2 = gamma * gamma;
        let denom = 4.0 * (3.0 + g2);
        Self {
            rho11: (3.0 + delta0) * (gamma - 1.0).powi(2) / denom,
            rho44: (3.0 + delta0) * (gamma + 1.0).powi(2) / denom,
            rho22: (3.0 - delta0 - (delta0 + 1.0) * g2) / denom,
            rho23: (delta0 - g2) / (2.0 * (3.0 + g2)),
        }
    }

    pub fn of(params: &UdwParams) -> Self {
        Self::from_gamma(params.gamma(), params.delta0())
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::from_diagonal(&[self.rho11, self.rho22, self.rho22, self.rho44]);
        m[(1, 2)] = Complex::new(self.rho23, 0.0);
        m[(2, 1)] = Complex::new(self.rho23, 0.0);
        m
    }
}

/// Asymptotic equilibrium state of the two detectors.
pub fn udw_equilibrium_state(params: &UdwParams) -> Result<DensityMatrix> {
    let mat = EquilibriumElements::of(params).to_matrix();
    DensityMatrix::new(mat).map_err(|e| {
        Error::Numerical(format!(
            "equilibrium state at {params:?} failed validation: {e}"
        ))
    })
}

/// A qubit as a real 3-vector with `|n| ≤ 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochQubit {
    vector: [f64; 3],
}

impl BlochQubit {
    pub const NORM_TOLERANCE: f64 = 1e-12;

    pub fn new(vector: [f64; 3]) -> Result<Self> {
        let norm = vector.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm > 1.0 + Self::NORM_TOLERANCE {
            return Err(Error::InvalidParameter {
                name: "bloch vector norm",
                value: norm,
                reason: "must not exceed 1",
            });
        }
        Ok(Self { vector })
    }

    pub fn vector(&self) -> [f64; 3] {
        self.vector
    }

    pub fn norm(&self) -> f64 {
        self.vector.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_pure(&self) -> bool {
        (self.norm() - 1.0).abs() <= Self::NORM_TOLERANCE
    }

    /// `½(𝟙 + n·σ)`.
    pub fn density(&self) -> ComplexMatrix {
        let half = Complex::new(0.5, 0.0);
        (&pauli::identity() + &pauli::dot(self.vector)).scale(half)
    }
}

/// `ρ_a ⊗ ρ_b` for two Bloch vectors.
pub fn product_state(n: &BlochQubit, m: &BlochQubit) -> Result<DensityMatrix> {
    DensityMatrix::new(n.density().kron(&m.density()))
}

pub fn delta0_of_product(n: &BlochQubit, m: &BlochQubit) -> f64 {
    n.vector.iter().zip(&m.vector).map(|(a, b)| a * b).sum()
}

/// `Σ_i Tr[ρ σ_i ⊗ σ_i]`.
pub fn delta0_of_state(rho: &DensityMatrix) -> f64 {
    pauli::all()
        .iter()
        .map(|s| rho.matrix().trace_dot(&s.kron(s)).re)
        .sum()
}

/// Unruh temperature `a / 2π` seen by a detector with proper acceleration `a`.
pub fn temperature_from_acceleration(acceleration: f64) -> Result<f64> {
    if !(acceleration.is_finite() && acceleration > 0.0) {
        return Err(Error::InvalidParameter {
            name: "acceleration",
            value: acceleration,
            reason: "must be positive and finite",
        });
    }
    Ok(acceleration / (2.0 * PI))
}

/// `(σy ⊗ σy) ρ* (σy ⊗ σy)`.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMatrix {
    spin_flip_matrix(rho.matrix())
}

pub(crate) fn spin_flip_matrix(m: &ComplexMatrix) -> ComplexMatrix {
    let yy = pauli::y().kron(&pauli::y());
    yy.dot(&m.conj()).dot(&yy)
}

/// Reference states used throughout the tests and the CLI.
pub mod reference {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn pure(amplitudes: [f64; 4]) -> DensityMatrix {
        let v: Vec<Complex> = amplitudes.iter().map(|&a| Complex::new(a, 0.0)).collect();
        DensityMatrix::new(ComplexMatrix::outer(&v)).expect("normalized pure state")
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn bell_phi_plus() -> DensityMatrix {
        pure([FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2])
    }

    /// `(|01⟩ − |10⟩)/√2`.
    pub fn singlet() -> DensityMatrix {
        pure([0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0])
    }

    pub fn maximally_mixed() -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::identity(4).scale(Complex::new(0.25, 0.0)))
            .expect("I/4 is a state")
    }

    /// Projector onto computational basis state `index` (0 = |00⟩ … 3 = |11⟩).
    pub fn basis(index: usize) -> DensityMatrix {
        let mut amp = [0.0; 4];
        amp[index] = 1.0;
        pure(amp)
    }
}
