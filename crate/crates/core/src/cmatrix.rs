//! Small dense complex matrices.
//!
//! Everything in this crate lives in dimension 2, 3 or 4, so the kernel keeps a
//! flat row-major `Vec` and uses plain triple loops. Tensor products follow the
//! convention that the first factor is the slow index: entry `(i_a, i_b)` of
//! `A ⊗ B` sits at `i_a * dim(B) + i_b`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Sub};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

/// Largest `|A - A†|` entry accepted as Hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Eigenvalues above `-PSD_TOLERANCE` are treated as round-off and clamped to zero.
pub const PSD_TOLERANCE: f64 = 1e-10;

const MAX_JACOBI_SWEEPS: usize = 64;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);
pub(crate) const I: Complex = Complex::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex>,
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Sorted ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. Rejects non-square input and non-finite entries.
    pub fn new(dim: usize, data: Vec<Complex>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "matrix dimension must be positive".into(),
            ));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if let Some(k) = data
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::new(dim, data.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn from_rows<const N: usize>(rows: [[Complex; N]; N]) -> Result<Self> {
        Self::new(N, rows.iter().flatten().copied().collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, 0.0);
        }
        m
    }

    /// `|v⟩⟨v|` for a (not necessarily normalized) vector.
    pub fn outer(v: &[Complex]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn multiply(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_same_dim(other)?;
        Ok(self.dot(other))
    }

    /// Unchecked product for callers that already own matching dimensions.
    pub(crate) fn dot(&self, other: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Result<Complex> {
        self.check_same_dim(other)?;
        Ok(self.trace_dot(other))
    }

    pub(crate) fn trace_dot(&self, other: &ComplexMatrix) -> Complex {
        let n = self.dim;
        let mut acc = ZERO;
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        acc
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> ComplexMatrix {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: Complex) -> ComplexMatrix {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (na, nb) = (self.dim, other.dim);
        let n = na * nb;
        let mut out = ComplexMatrix::zeros(n);
        for ia in 0..na {
            for ja in 0..na {
                let a = self.data[ia * na + ja];
                for ib in 0..nb {
                    for jb in 0..nb {
                        out.data[(ia * nb + ib) * n + ja * nb + jb] = a * other.data[ib * nb + jb];
                    }
                }
            }
        }
        out
    }

    /// Traces out the second qubit of a two-qubit operator.
    pub fn partial_trace_b(&self) -> Result<ComplexMatrix> {
        if self.dim != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: self.dim,
            });
        }
        let mut out = ComplexMatrix::zeros(2);
        for ia in 0..2 {
            for ja in 0..2 {
                out[(ia, ja)] = (0..2).map(|b| self[(2 * ia + b, 2 * ja + b)]).sum();
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(
            self.dim, other.dim,
            "max_abs_diff on matrices of different size"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
    pub fn herm_eig(&self) -> Result<HermitianEigen> {
        let deviation = self.hermitian_deviation();
        if deviation > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(jacobi_eigen(self))
    }

    /// Principal square root of a positive semidefinite Hermitian matrix.
    pub fn sqrt_psd(&self) -> Result<ComplexMatrix> {
        let eig = self.herm_eig()?;
        let lowest = eig.eigenvalues[0];
        if lowest < -PSD_TOLERANCE {
            return Err(Error::NotPsd { eigenvalue: lowest });
        }
        let roots: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
        Ok(eig.recompose_with(&roots))
    }

    fn check_same_dim(&self, other: &ComplexMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

impl HermitianEigen {
    /// `V · diag(values) · V†`.
    pub fn recompose_with(&self, values: &[f64]) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.dim;
        assert_eq!(values.len(), n);
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = ZERO;
                for (k, &l) in values.iter().enumerate() {
                    if l != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * l;
                    }
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)].im = 0.0;
        }
        out
    }

    /// `V · diag(√λ) · V†`, dropping eigenvalues at or below
    /// `dim · ε · λ_max` as numerically zero.
    pub fn sqrt_rank_revealing(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let floor = n as f64 * f64::EPSILON * self.max_eigenvalue().max(0.0);
        let roots: Vec<f64> = self
            .eigenvalues
            .iter()
            .map(|&l| if l > floor { l.sqrt() } else { 0.0 })
            .collect();
        self.recompose_with(&roots)
    }

    pub fn recompose(&self) -> ComplexMatrix {
        self.recompose_with(&self.eigenvalues)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("empty spectrum")
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }
}

fn jacobi_eigen(input: &ComplexMatrix) -> HermitianEigen {
    let n = input.dim;
    // Work on the exactly Hermitian part.
    let mut a = input.clone();
    for i in 0..n {
        a[(i, i)].im = 0.0;
        for j in (i + 1)..n {
            let h = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
            a[(i, j)] = h;
            a[(j, i)] = h.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);

    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off == 0.0 {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                rotated |= rotate(&mut a, &mut v, p, q);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[(row, col)] = v[(row, k)];
        }
    }
    HermitianEigen {
        eigenvalues,
        eigenvectors,
    }
}

/// One complex Jacobi rotation annihilating `a[p][q]`. Returns false when the
/// element is already negligible against the diagonal.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) -> bool {
    let n = a.dim;
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return false;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Same negligibility test as the classic real Jacobi: adding g to both
    // diagonal entries would not change them.
    let scaled = 100.0 * g;
    if app.abs() + scaled == app.abs() && aqq.abs() + scaled == aqq.abs() {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return false;
    }
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.is_infinite() {
        1.0 / (2.0 * theta)
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J restricted to (p, q): [[c, s·e^{iφ}], [-s·e^{-iφ}, c]]; A ← J† A J, V ← V J.
    let jpp = Complex::new(c, 0.0);
    let jpq = phase * s;
    let jqp = -phase.conj() * s;
    let jqq = Complex::new(c, 0.0);

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
    true
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "adding matrices of different size");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "subtracting matrices of different size");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Pauli matrices and qubit helpers.
pub mod pauli {
    use super::{Complex, ComplexMatrix, I, ONE, ZERO};

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_rows([[ZERO, ONE], [ONE, ZERO]]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_rows([[ZERO, -I], [I, ZERO]]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_rows([[ONE, ZERO], [ZERO, -ONE]]).unwrap()
    }

    /// `[σx, σy, σz]`.
    pub fn all() -> [ComplexMatrix; 3] {
        [x(), y(), z()]
    }

    /// `n · σ` for a real 3-vector.
    pub fn dot(n: [f64; 3]) -> ComplexMatrix {
        let [a, b, c] = n;
        ComplexMatrix::from_rows([
            [Complex::new(c, 0.0), Complex::new(a, -b)],
            [Complex::new(a, b), Complex::new(-c, 0.0)],
        ])
        .unwrap()
    }

    /// `(n · σ) ⊗ 𝟙`, an observable local to the first qubit.
    pub fn local_a(n: [f64; 3]) -> ComplexMatrix {
        dot(n).kron(&identity())
    }
}
