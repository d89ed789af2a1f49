//! Dense complex matrix kernel.
//!
//! Everything in this crate lives in dimension 2, 3 or 4, so the kernel is a
//! plain row-major `Vec<Complex64>` with no blocking or sparsity. Hermitian
//! eigenvalues come from cyclic Jacobi rotations, which are foolproof at
//! these sizes.

use num_complex::Complex64;

use crate::{Error, Result};

/// Jacobi iteration stops once the off-diagonal Frobenius norm drops below this.
const JACOBI_OFF_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Default tolerance when checking `m == m^dag`.
pub const DEFAULT_HERMITICITY_TOL: f64 = 1e-9;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. Rejects size mismatches and
    /// non-finite entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "matrix needs {rows}x{cols} = {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite entry {bad}")));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix by evaluating `f(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds a matrix from real row-major entries (imaginary parts zero).
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.cols + j] = v;
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::InvalidArgument(format!(
                "trace needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    /// Trace of a (nominally) Hermitian matrix; the imaginary residue is
    /// discarded. Residues above 1e-12 indicate a bug upstream.
    pub fn trace_real(&self) -> Result<f64> {
        let t = self.trace()?;
        debug_assert!(t.im.abs() <= 1e-12, "trace imaginary residue {}", t.im);
        Ok(t.re)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidArgument(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidArgument(format!(
                "cannot compare {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entrywise deviation from Hermiticity, `max |m - m^dag|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }
}

/// `tr(a b)` without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if a.cols != b.rows || a.rows != b.cols {
        return Err(Error::InvalidArgument(format!(
            "trace of product needs conformable shapes, got {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.rows {
        for j in 0..a.cols {
            acc += a.get(i, j) * b.get(j, i);
        }
    }
    Ok(acc)
}

/// Kronecker product of two 2x2 matrices; block (i, j) of the result is
/// `a[i][j] * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.rows != 2 || a.cols != 2 || b.rows != 2 || b.cols != 2 {
        return Err(Error::InvalidArgument(format!(
            "kron expects 2x2 factors, got {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(ComplexMatrix::from_fn(4, 4, |i, j| {
        a.get(i / 2, j / 2) * b.get(i % 2, j % 2)
    }))
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("static entries")
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .expect("static entries")
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).expect("static entries")
}

/// The three Pauli matrices in (x, y, z) order.
pub fn paulis() -> [ComplexMatrix; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}

/// Real eigenvalues of a Hermitian matrix, sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Eigenvalues of a Hermitian matrix of size 2, 3 or 4 by cyclic Jacobi
/// rotations.
///
/// The input must be Hermitian up to `hermiticity_tol`; it is symmetrized
/// (`(m + m^dag)/2`) before iterating so accumulated channel rounding cannot
/// leak into the spectrum.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, hermiticity_tol: f64) -> Result<Spectrum> {
    if !m.is_square() || !(2..=4).contains(&m.rows()) {
        return Err(Error::InvalidArgument(format!(
            "eigenvalues are supported for square sizes 2..4, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let residual = m.hermiticity_residual();
    if residual > hermiticity_tol {
        return Err(Error::NotHermitian { residual });
    }
    let sym = m.add(&m.dagger())?.scale(Complex64::new(0.5, 0.0));
    let values = jacobi_eigenvalues(sym)?;
    Ok(Spectrum { values })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let mut acc = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j {
                acc += m.get(i, j).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi on a Hermitian matrix. Each rotation `G^dag m G` zeroes one
/// off-diagonal entry; the phase of the entry is folded into the rotation so
/// complex Hermitian input needs no real embedding.
fn jacobi_eigenvalues(mut m: ComplexMatrix) -> Result<Vec<f64>> {
    let n = m.rows();
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) < JACOBI_OFF_TOL {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m.get(p, q);
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                let phase = apq / g;
                let alpha = m.get(p, p).re;
                let beta = m.get(q, q).re;
                let tau = (beta - alpha) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let mut rot = ComplexMatrix::identity(n);
                rot.set(p, p, Complex64::new(c, 0.0));
                rot.set(q, q, Complex64::new(c, 0.0));
                rot.set(p, q, phase * s);
                rot.set(q, p, -phase.conj() * s);
                m = rot.dagger().matmul(&m)?.matmul(&rot)?;
            }
        }
    }
    if !converged && off_diagonal_norm(&m) >= JACOBI_OFF_TOL {
        return Err(Error::Numerical(format!(
            "jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps"
        )));
    }
    let mut values: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn kron_identity_is_identity() {
        let id = ComplexMatrix::identity(2);
        let out = kron(&id, &id).unwrap();
        assert_eq!(out.max_abs_diff(&ComplexMatrix::identity(4)).unwrap(), 0.0);
    }

    #[test]
    fn kron_pauli_products() {
        let xx = kron(&pauli_x(), &pauli_x()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i + j == 3 { 1.0 } else { 0.0 };
                assert_eq!(xx.get(i, j), c(expect, 0.0));
            }
        }
        let zz = kron(&pauli_z(), &pauli_z()).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| zz.get(i, i).re).collect();
        assert_eq!(diag, vec![1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn kron_rejects_wrong_size() {
        let id3 = ComplexMatrix::identity(3);
        assert!(matches!(
            kron(&id3, &ComplexMatrix::identity(2)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn basic_ops() {
        assert_eq!(ComplexMatrix::identity(4).trace().unwrap(), c(4.0, 0.0));
        let x = pauli_x();
        let xx = x.matmul(&x).unwrap();
        assert_eq!(xx.max_abs_diff(&ComplexMatrix::identity(2)).unwrap(), 0.0);
        assert_eq!(x.max_abs_diff(&x).unwrap(), 0.0);
    }

    #[test]
    fn constructor_rejects_non_finite() {
        let err = ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]);
        assert!(matches!(err, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn eigenvalues_identity() {
        let spec = hermitian_eigenvalues(&ComplexMatrix::identity(4), 1e-9).unwrap();
        assert_eq!(spec.values(), &[1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn eigenvalues_diagonal() {
        let m = ComplexMatrix::from_real(
            4,
            4,
            &[
                0.4, 0.0, 0.0, 0.0, //
                0.0, 0.3, 0.0, 0.0, //
                0.0, 0.0, 0.2, 0.0, //
                0.0, 0.0, 0.0, 0.1,
            ],
        )
        .unwrap();
        let spec = hermitian_eigenvalues(&m, 1e-9).unwrap();
        for (got, want) in spec.values().iter().zip([0.4, 0.3, 0.2, 0.1]) {
            assert_close(*got, want, 1e-14);
        }
    }

    // diag(7/16, 1/16, 1/16, 7/16) with 1/8 corners block-diagonalizes by
    // hand to 7/16 +- 2/16 on the outer block.
    #[test]
    fn eigenvalues_corner_block() {
        let mut m = ComplexMatrix::zeros(4, 4);
        m.set(0, 0, c(7.0 / 16.0, 0.0));
        m.set(1, 1, c(1.0 / 16.0, 0.0));
        m.set(2, 2, c(1.0 / 16.0, 0.0));
        m.set(3, 3, c(7.0 / 16.0, 0.0));
        m.set(0, 3, c(0.125, 0.0));
        m.set(3, 0, c(0.125, 0.0));
        let spec = hermitian_eigenvalues(&m, 1e-9).unwrap();
        let want = [9.0 / 16.0, 5.0 / 16.0, 1.0 / 16.0, 1.0 / 16.0];
        for (got, want) in spec.values().iter().zip(want) {
            assert_close(*got, want, 1e-13);
        }
    }

    #[test]
    fn eigenvalues_complex_hermitian() {
        // -sigma_y has eigenvalues +-1.
        let m = pauli_y().scale(c(-1.0, 0.0));
        let spec = hermitian_eigenvalues(&m, 1e-9).unwrap();
        assert_close(spec.values()[0], 1.0, 1e-14);
        assert_close(spec.values()[1], -1.0, 1e-14);
    }

    #[test]
    fn eigenvalues_reject_non_hermitian() {
        let mut m = ComplexMatrix::identity(2);
        m.set(0, 1, c(0.5, 0.0));
        assert!(matches!(
            hermitian_eigenvalues(&m, 1e-9),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn eigenvalues_reject_unsupported_size() {
        let m = ComplexMatrix::identity(5);
        assert!(matches!(
            hermitian_eigenvalues(&m, 1e-9),
            Err(Error::InvalidArgument(_))
        ));
        let m1 = ComplexMatrix::identity(1);
        assert!(hermitian_eigenvalues(&m1, 1e-9).is_err());
    }

    #[test]
    fn eigenvalue_sum_matches_trace() {
        // Deterministic pseudo-random Hermitian matrices.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for _ in 0..50 {
            let raw = ComplexMatrix::from_fn(4, 4, |_, _| c(next(), next()));
            let herm = raw.add(&raw.dagger()).unwrap().scale(c(0.5, 0.0));
            let spec = hermitian_eigenvalues(&herm, 1e-9).unwrap();
            assert_close(spec.sum(), herm.trace_real().unwrap(), 1e-10);
        }
    }
}
