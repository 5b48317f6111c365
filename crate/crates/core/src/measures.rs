//! Entanglement, skew-information correlations and coherence of two-qubit states.
//!
//! The closed forms (`concurrence`, `lqu`, `uin`) each come with a slower
//! route that evaluates the defining optimization directly:
//! `x_state_concurrence` for X-shaped states and the sphere searches
//! `lqu_bruteforce` / `uin_bruteforce`. The sphere searches call
//! `skew_information` on explicit 4×4 observables and never touch the W matrix.

use std::fmt;
use std::str::FromStr;

use crate::cmatrix::{pauli, ComplexMatrix, HERMITIAN_TOLERANCE, PSD_TOLERANCE};
use crate::error::{Error, Result};
use crate::states::{spin_flip_matrix, DensityMatrix};

/// Below this marginal Bloch-vector length `uin` switches to the unconstrained branch.
pub const UIN_ZERO_THRESHOLD: f64 = 1e-9;

/// Commutator size below which a grid direction counts as compatible with the marginal.
pub const COMMUTATION_TOLERANCE: f64 = 1e-8;

/// Minimum number of sphere points accepted by the brute-force searches.
pub const MIN_GRID_POINTS: usize = 1000;

const X_SUPPORT_TOLERANCE: f64 = 1e-14;

/// `ω_ij = Tr[√ρ (σ_i⊗𝟙) √ρ (σ_j⊗𝟙)]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WMatrix([[f64; 3]; 3]);

impl WMatrix {
    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[i][j]
    }

    /// Ascending.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let flat: Vec<f64> = self.0.iter().flatten().copied().collect();
        let eig = ComplexMatrix::from_real(3, &flat)
            .expect("finite 3x3")
            .herm_eig()
            .expect("W is symmetric by construction");
        [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]]
    }

    /// `n · W · n`.
    pub fn quadratic_form(&self, n: [f64; 3]) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                acc += n[i] * self.0[i][j] * n[j];
            }
        }
        acc
    }
}

/// A density matrix bundled with its square roots, so that all measures share
/// one eigen-decomposition.
///
/// Skew information is not Lipschitz at rank-deficient states: an eigenvalue
/// of 1e-17 left over from rounding a pure state contributes `√1e-17 ≈ 3e-9`.
/// The skew-based quantities therefore use a root that treats eigenvalues
/// within round-off of zero as zero. The concurrence goes through singular
/// values, which are stable, and keeps the plain root so that genuinely tiny
/// populations still count.
#[derive(Clone, Debug)]
pub struct RootedState<'a> {
    rho: &'a DensityMatrix,
    sqrt: ComplexMatrix,
    skew_root: ComplexMatrix,
}

impl<'a> RootedState<'a> {
    pub fn new(rho: &'a DensityMatrix) -> Result<Self> {
        let eig = rho.matrix().herm_eig()?;
        if eig.min_eigenvalue() < -PSD_TOLERANCE {
            return Err(Error::NotPsd {
                eigenvalue: eig.min_eigenvalue(),
            });
        }
        let roots: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
        Ok(Self {
            rho,
            sqrt: eig.recompose_with(&roots),
            skew_root: eig.sqrt_rank_revealing(),
        })
    }

    pub fn state(&self) -> &DensityMatrix {
        self.rho
    }

    /// `√ρ`, identical to `ComplexMatrix::sqrt_psd`.
    pub fn sqrt(&self) -> &ComplexMatrix {
        &self.sqrt
    }

    /// `Tr[ρK²] − Tr[√ρ K √ρ K]`.
    pub fn skew_information(&self, observable: &ComplexMatrix) -> Result<f64> {
        if observable.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: observable.dim(),
            });
        }
        let deviation = observable.hermitian_deviation();
        if deviation > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(self.skew_unchecked(observable))
    }

    fn skew_unchecked(&self, k: &ComplexMatrix) -> f64 {
        let k2 = k.dot(k);
        let variance_part = self.rho.matrix().trace_dot(&k2).re;
        let sk = self.skew_root.dot(k);
        let overlap = sk.trace_dot(&sk).re;
        (variance_part - overlap).max(0.0)
    }

    pub fn w_matrix(&self) -> WMatrix {
        let rooted: Vec<ComplexMatrix> = pauli::all()
            .iter()
            .map(|s| self.skew_root.dot(&s.kron(&pauli::identity())))
            .collect();
        let mut w = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let v = rooted[i].trace_dot(&rooted[j]).re;
                w[i][j] = v;
                w[j][i] = v;
            }
        }
        WMatrix(w)
    }

    /// Eigenvalues of `R = sqrt(√ρ ρ̃ √ρ)`, descending.
    ///
    /// `R² = A A†` with `A = √ρ · sqrt(ρ̃)`, and `sqrt(ρ̃)` is the spin flip of
    /// `√ρ`, so the eigenvalues of `R` are the singular values of `A`. They are
    /// read off the Hermitian dilation `[[0, A], [A†, 0]]`, whose spectrum is
    /// `±σ_i`; this keeps small `λ_i` accurate to round-off instead of to its
    /// square root.
    pub fn wootters_lambdas(&self) -> Result<[f64; 4]> {
        let a = self.sqrt.dot(&spin_flip_matrix(&self.sqrt));
        let a_adj = a.adjoint();
        let mut dilation = ComplexMatrix::zeros(8);
        for i in 0..4 {
            for j in 0..4 {
                dilation[(i, 4 + j)] = a[(i, j)];
                dilation[(4 + i, j)] = a_adj[(i, j)];
            }
        }
        let eig = dilation.herm_eig()?;
        // The upper half of the spectrum holds σ_1..σ_4; a negative value there
        // would mean the ± pairing broke down.
        let lowest_upper = eig.eigenvalues[4];
        if lowest_upper < -PSD_TOLERANCE {
            return Err(Error::Numerical(format!(
                "singular value estimate {lowest_upper:e} for sqrt(rho)·sqrt(rho~)"
            )));
        }
        let mut lambdas = [0.0; 4];
        for (k, slot) in lambdas.iter_mut().enumerate() {
            *slot = eig.eigenvalues[7 - k].max(0.0);
        }
        Ok(lambdas)
    }

    pub fn concurrence(&self) -> Result<f64> {
        let l = self.wootters_lambdas()?;
        Ok((l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0))
    }

    pub fn lqu(&self) -> f64 {
        lqu_from_w(&self.w_matrix())
    }

    pub fn uin(&self) -> f64 {
        uin_from_parts(&self.w_matrix(), bloch_a(self.rho))
    }
}

/// Wootters concurrence, `max(0, λ1 − λ2 − λ3 − λ4)` over the eigenvalues of `R = sqrt(√ρ ρ̃ √ρ)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    RootedState::new(rho)?.concurrence()
}

/// Closed-form concurrence `2·max(0, |ρ23| − √(ρ11ρ44))` for states whose only
/// off-diagonal entries are `⟨01|ρ|10⟩` and its conjugate.
pub fn x_state_concurrence(rho: &DensityMatrix) -> Result<f64> {
    let m = rho.matrix();
    for i in 0..4 {
        for j in 0..4 {
            if i == j || (i, j) == (1, 2) || (i, j) == (2, 1) {
                continue;
            }
            let magnitude = m[(i, j)].norm();
            if magnitude > X_SUPPORT_TOLERANCE {
                return Err(Error::NotXState {
                    row: i,
                    col: j,
                    magnitude,
                });
            }
        }
    }
    let coherence = m[(1, 2)].norm();
    let populations = (m[(0, 0)].re * m[(3, 3)].re).max(0.0).sqrt();
    Ok((2.0 * (coherence - populations)).max(0.0))
}

pub fn skew_information(rho: &DensityMatrix, observable: &ComplexMatrix) -> Result<f64> {
    RootedState::new(rho)?.skew_information(observable)
}

pub fn w_matrix(rho: &DensityMatrix) -> Result<WMatrix> {
    Ok(RootedState::new(rho)?.w_matrix())
}

/// Local quantum uncertainty, `1 − λ_max(W)`.
pub fn lqu(rho: &DensityMatrix) -> Result<f64> {
    Ok(RootedState::new(rho)?.lqu())
}

fn lqu_from_w(w: &WMatrix) -> f64 {
    (1.0 - w.eigenvalues()[2]).clamp(0.0, 1.0)
}

/// Bloch vector of the first qubit's marginal.
pub fn bloch_a(rho: &DensityMatrix) -> [f64; 3] {
    let marginal = rho.marginal_a();
    let [sx, sy, sz] = pauli::all();
    [
        marginal.trace_dot(&sx).re,
        marginal.trace_dot(&sy).re,
        marginal.trace_dot(&sz).re,
    ]
}

/// Uncertainty-induced nonlocality.
///
/// With `x` the marginal Bloch vector: `1 − λ_min(W)` when `x = 0`, otherwise
/// `1 − x̂·W·x̂`. The value jumps across `|x| = UIN_ZERO_THRESHOLD`.
pub fn uin(rho: &DensityMatrix) -> Result<f64> {
    Ok(RootedState::new(rho)?.uin())
}

fn uin_from_parts(w: &WMatrix, x: [f64; 3]) -> f64 {
    let norm = norm3(x);
    let value = if norm <= UIN_ZERO_THRESHOLD {
        1.0 - w.eigenvalues()[0]
    } else {
        let unit = [x[0] / norm, x[1] / norm, x[2] / norm];
        1.0 - w.quadratic_form(unit)
    };
    value.clamp(0.0, 1.0)
}

/// Sum of the moduli of all off-diagonal entries in the computational basis.
pub fn l1_coherence(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let mut acc = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                acc += m[(i, j)].norm();
            }
        }
    }
    acc
}

/// Quasi-uniform unit vectors on the sphere (Fibonacci lattice).
pub fn fibonacci_sphere(points: usize) -> impl Iterator<Item = [f64; 3]> {
    let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..points).map(move |k| {
        let z = 1.0 - (2.0 * k as f64 + 1.0) / points as f64;
        let r = (1.0 - z * z).max(0.0).sqrt();
        let phi = golden_angle * k as f64;
        [r * phi.cos(), r * phi.sin(), z]
    })
}

fn check_grid(grid_points: usize) -> Result<()> {
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::InvalidArgument(format!(
            "grid_points = {grid_points}, need at least {MIN_GRID_POINTS}"
        )));
    }
    Ok(())
}

/// Minimum of the skew information of `(n·σ)⊗𝟙` over a sphere grid.
pub fn lqu_bruteforce(rho: &DensityMatrix, grid_points: usize) -> Result<f64> {
    check_grid(grid_points)?;
    let rooted = RootedState::new(rho)?;
    Ok(fibonacci_sphere(grid_points)
        .map(|n| rooted.skew_unchecked(&pauli::local_a(n)))
        .fold(f64::INFINITY, f64::min))
}

/// Maximum of the skew information of `(n·σ)⊗𝟙` over directions whose local
/// observable commutes with the first qubit's marginal.
///
/// Grid directions are filtered by the commutator norm. When the marginal is
/// not maximally mixed the admissible set is exactly `{±x̂}`, which the grid
/// misses in general, so those two directions are always evaluated as well.
pub fn uin_bruteforce(rho: &DensityMatrix, grid_points: usize) -> Result<f64> {
    check_grid(grid_points)?;
    let rooted = RootedState::new(rho)?;
    let marginal = rho.marginal_a();
    let x = bloch_a(rho);
    let norm = norm3(x);

    let mut best = f64::NEG_INFINITY;
    for n in fibonacci_sphere(grid_points) {
        let local = pauli::dot(n);
        let commutator = &local.dot(&marginal) - &marginal.dot(&local);
        if commutator.max_abs() <= COMMUTATION_TOLERANCE {
            best = best.max(rooted.skew_unchecked(&local.kron(&pauli::identity())));
        }
    }
    if norm > 0.0 {
        for sign in [1.0, -1.0] {
            let n = [sign * x[0] / norm, sign * x[1] / norm, sign * x[2] / norm];
            best = best.max(rooted.skew_unchecked(&pauli::local_a(n)));
        }
    }
    Ok(best)
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// The quantities reported per parameter point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    Concurrence,
    Lqu,
    Uin,
    Coherence,
}

impl Measure {
    /// Column order used in every CSV output.
    pub const ALL: [Measure; 4] = [
        Measure::Concurrence,
        Measure::Lqu,
        Measure::Uin,
        Measure::Coherence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Concurrence => "concurrence",
            Measure::Lqu => "lqu",
            Measure::Uin => "uin",
            Measure::Coherence => "coherence",
        }
    }

    /// Parses a comma-separated list, returning the measures in canonical order without duplicates.
    pub fn parse_list(s: &str) -> Result<Vec<Measure>> {
        let mut out = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Measure>>>()?;
        if out.is_empty() {
            return Err(Error::InvalidArgument("measures: empty list".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "c" | "concurrence" => Ok(Measure::Concurrence),
            "lqu" => Ok(Measure::Lqu),
            "uin" => Ok(Measure::Uin),
            "coh" | "coherence" | "l1" => Ok(Measure::Coherence),
            other => Err(Error::InvalidArgument(format!(
                "measures: unknown measure '{other}' (expected c, lqu, uin, coh)"
            ))),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureReport {
    pub concurrence: f64,
    pub lqu: f64,
    pub uin: f64,
    pub coherence_l1: f64,
}

impl MeasureReport {
    pub fn get(&self, measure: Measure) -> f64 {
        match measure {
            Measure::Concurrence => self.concurrence,
            Measure::Lqu => self.lqu,
            Measure::Uin => self.uin,
            Measure::Coherence => self.coherence_l1,
        }
    }
}

/// All four measures from a single square root of `rho`.
pub fn measure_all(rho: &DensityMatrix) -> Result<MeasureReport> {
    let rooted = RootedState::new(rho)?;
    let w = rooted.w_matrix();
    let lqu = lqu_from_w(&w);
    let uin = uin_from_parts(&w, bloch_a(rho));
    Ok(MeasureReport {
        concurrence: rooted.concurrence()?,
        lqu,
        uin,
        coherence_l1: l1_coherence(rho),
    })
}
