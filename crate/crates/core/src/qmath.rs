//! Exact-size complex linear algebra for the handful of Hilbert spaces used here.
//!
//! Everything is dense and small: spinors (dim 2), spin-velocity states
//! (dim 4) and two-particle states (dim 16). Tensor products use row-major
//! ordering, so the index of the left factor varies slowest.

use std::ops::Index;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub use num_complex::Complex64 as Complex;

/// Norm tolerance for normalized states.
pub const NORM_TOL: f64 = 1e-12;
/// Entry-wise Hermiticity and trace tolerance for density matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues below `-EIGEN_TOL` are treated as a broken density matrix.
pub const EIGEN_TOL: f64 = 1e-9;

const AXIS_TOL: f64 = 1e-9;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// A ket in a finite-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex>,
}

impl StateVector {
    pub fn new(amps: Vec<Complex>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::EmptyVector);
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitude"));
        }
        Ok(Self { amps })
    }

    pub(crate) fn from_vec(amps: Vec<Complex>) -> Self {
        debug_assert!(!amps.is_empty());
        Self { amps }
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| c(x, 0.0)).collect())
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dim {dim}");
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Self { amps }
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0);
        Self {
            amps: vec![ZERO; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Unit-norm copy. The zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        self.scaled(c(1.0 / n, 0.0))
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    pub fn scaled(&self, factor: Complex) -> Self {
        Self {
            amps: self.amps.iter().map(|&z| z * factor).collect(),
        }
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex> {
        self.check_dim(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect(),
        })
    }

    /// `self += factor * other`
    pub fn axpy(&mut self, factor: Complex, other: &Self) -> Result<()> {
        self.check_dim(other)?;
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += factor * b;
        }
        Ok(())
    }

    /// Largest component-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl Index<usize> for StateVector {
    type Output = Complex;

    fn index(&self, index: usize) -> &Complex {
        &self.amps[index]
    }
}

/// `a ⊗ b` with the index of `a` varying slowest.
pub fn tensor_product(a: &StateVector, b: &StateVector) -> StateVector {
    let mut amps = Vec::with_capacity(a.dim() * b.dim());
    for x in a.amps() {
        for y in b.amps() {
            amps.push(x * y);
        }
    }
    StateVector { amps }
}

/// Which factor of a bipartite space survives a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Density operator stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex>,
}

impl DensityMatrix {
    /// Checks shape, Hermiticity and unit trace. Positivity is checked by
    /// [`DensityMatrix::check_invariants`] and by the entropy routine.
    pub fn new(dim: usize, entries: Vec<Complex>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("density matrix entry"));
        }
        let rho = Self { dim, entries };
        let defect = rho.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!("trace is {tr}, expected 1")));
        }
        Ok(rho)
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`
    pub fn from_pure(psi: &StateVector) -> Result<Self> {
        let n2 = psi.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::InvalidDensity("zero state vector".into()));
        }
        let dim = psi.dim();
        let mut entries = Vec::with_capacity(dim * dim);
        for a in psi.amps() {
            for b in psi.amps() {
                entries.push(a * b.conj() / n2);
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = c(1.0 / dim as f64, 0.0);
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[row * self.dim + col]
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest `|ρ_ij - conj(ρ_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(self)
    }

    /// Full check of the density-operator axioms: Hermitian and unit trace
    /// within `HERMITIAN_TOL`, no eigenvalue below `-HERMITIAN_TOL`.
    pub fn check_invariants(&self) -> Result<()> {
        let defect = self.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (defect {defect:e})"
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > HERMITIAN_TOL || tr.im.abs() > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!("trace is {tr}, expected 1")));
        }
        let min = self.eigenvalues().first().copied().unwrap_or(0.0);
        if min < -HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:e}"
            )));
        }
        Ok(())
    }

    /// `ρA ⊗ ρB`
    pub fn tensor(&self, other: &Self) -> Self {
        let dim = self.dim * other.dim;
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.get(i, j);
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        let row = i * other.dim + k;
                        let col = j * other.dim + l;
                        entries[row * dim + col] = a * other.get(k, l);
                    }
                }
            }
        }
        Self { dim, entries }
    }

    /// `U ρ U†` for a dense unitary given row-major.
    pub fn conjugated(&self, unitary: &[Complex]) -> Result<Self> {
        let n = self.dim;
        if unitary.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: unitary.len(),
            });
        }
        let u = DMatrix::from_row_slice(n, n, unitary);
        let rho = DMatrix::from_row_slice(n, n, &self.entries);
        let out = &u * rho * u.adjoint();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(out[(i, j)]);
            }
        }
        Ok(Self { dim: n, entries })
    }
}

/// Reduce a bipartite density matrix on `dA ⊗ dB` to one factor.
pub fn partial_trace(
    rho: &DensityMatrix,
    dims: (usize, usize),
    keep: Subsystem,
) -> Result<DensityMatrix> {
    let (da, db) = dims;
    if da == 0 || db == 0 || da * db != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: da * db,
            found: rho.dim(),
        });
    }
    let (kept, traced) = match keep {
        Subsystem::A => (da, db),
        Subsystem::B => (db, da),
    };
    let mut entries = vec![ZERO; kept * kept];
    for i in 0..kept {
        for j in 0..kept {
            let mut acc = ZERO;
            for k in 0..traced {
                let (row, col) = match keep {
                    Subsystem::A => (i * db + k, j * db + k),
                    Subsystem::B => (k * db + i, k * db + j),
                };
                acc += rho.get(row, col);
            }
            entries[i * kept + j] = acc;
        }
    }
    Ok(DensityMatrix {
        dim: kept,
        entries,
    })
}

/// Ascending eigenvalues of a Hermitian matrix. Closed form for dim 2,
/// `nalgebra`'s Hermitian eigensolver otherwise.
pub fn hermitian_eigenvalues(rho: &DensityMatrix) -> Vec<f64> {
    let n = rho.dim();
    match n {
        1 => vec![rho.get(0, 0).re],
        2 => {
            let a = rho.get(0, 0).re;
            let d = rho.get(1, 1).re;
            // average the two off-diagonals so tiny Hermiticity defects cancel
            let b = 0.5 * (rho.get(0, 1) + rho.get(1, 0).conj());
            let mean = 0.5 * (a + d);
            let half_gap = 0.5 * (a - d);
            let r = half_gap.hypot(b.norm());
            vec![mean - r, mean + r]
        }
        _ => {
            let m = DMatrix::from_row_slice(n, n, rho.entries());
            let mut vals: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
            vals.sort_by(f64::total_cmp);
            vals
        }
    }
}

/// Shannon entropy in bits of a spectrum, with `0 log 0 = 0`.
/// Entries in `[-EIGEN_TOL, 0)` are clamped to zero.
pub fn entropy_bits(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in eigenvalues {
        if lambda < -EIGEN_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {lambda:e}"
            )));
        }
        if lambda > 0.0 {
            s -= lambda * lambda.log2();
        }
    }
    let max = (eigenvalues.len() as f64).log2();
    Ok(s.clamp(0.0, max))
}

/// `S(ρ) = -Tr ρ log₂ ρ`
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    entropy_bits(&hermitian_eigenvalues(rho))
}

/// A 2×2 unitary acting on spinors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    m: [[Complex; 2]; 2],
}

impl Unitary2 {
    pub fn new(m: [[Complex; 2]; 2]) -> Result<Self> {
        let u = Self { m };
        let defect = u.unitarity_defect();
        if defect > NORM_TOL {
            return Err(Error::InvalidDensity(format!(
                "matrix is not unitary (defect {defect:e})"
            )));
        }
        Ok(u)
    }

    pub const fn identity() -> Self {
        Self {
            m: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    /// Unitary whose columns are the two given orthonormal spinors.
    pub fn from_columns(first: [Complex; 2], second: [Complex; 2]) -> Result<Self> {
        Self::new([[first[0], second[0]], [first[1], second[1]]])
    }

    pub fn entries(&self) -> [[Complex; 2]; 2] {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.m[row][col]
    }

    pub fn apply(&self, v: [Complex; 2]) -> [Complex; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        let mut m = [[ZERO; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                *out = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { m }
    }

    pub fn dagger(&self) -> Self {
        let a = &self.m;
        Self {
            m: [
                [a[0][0].conj(), a[1][0].conj()],
                [a[0][1].conj(), a[1][1].conj()],
            ],
        }
    }

    pub fn det(&self) -> Complex {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Largest entry of `|U U† - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.mul(&self.dagger());
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((p.m[i][j] - target).norm());
            }
        }
        worst
    }
}

/// `cos ω I - i sin ω (n·σ)`: the spin-1/2 rotation about `axis`.
pub fn su2_rotation(omega: f64, axis: [f64; 3]) -> Result<Unitary2> {
    if !omega.is_finite() || axis.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("rotation parameters"));
    }
    let norm = axis.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > AXIS_TOL {
        return Err(Error::NonUnitAxis { norm });
    }
    let [nx, ny, nz] = axis;
    let (s, co) = omega.sin_cos();
    // n·σ = [[nz, nx - i ny], [nx + i ny, -nz]]
    let m = [
        [c(co, -s * nz), c(0.0, -s) * c(nx, -ny)],
        [c(0.0, -s) * c(nx, ny), c(co, s * nz)],
    ];
    Ok(Unitary2 { m })
}
