//! Dense complex matrices.
//!
//! `CMat` is a row-major `rows x cols` array of [`CScalar`]. Operator-level
//! routines (adjoint pairing, Cartesian parts, radii) require square input
//! and say so through [`Error::NotSquare`].

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CScalar = Complex64;

pub const ZERO: CScalar = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: CScalar = Complex64 { re: 1.0, im: 0.0 };
pub const I: CScalar = Complex64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> CScalar {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<CScalar>,
}

impl CMat {
    /// Builds a matrix from row-major data. Rejects empty shapes, length
    /// mismatches and non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<CScalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix(format!(
                "dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "data has {} entries, expected {}",
                data.len(),
                rows * cols
            )));
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "entry ({}, {}) is not finite",
                k / cols,
                k % cols
            )));
        }
        Ok(CMat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "dimensions must be positive");
        CMat {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diag(d: &[CScalar]) -> Self {
        let mut m = CMat::zeros(d.len(), d.len());
        for (i, &z) in d.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn from_real_diag(d: &[f64]) -> Self {
        let d: Vec<CScalar> = d.iter().map(|&x| c(x, 0.0)).collect();
        CMat::from_diag(&d)
    }

    pub fn from_rows(rows: &[Vec<CScalar>]) -> Result<Self> {
        let r = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != cols) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        CMat::new(r, cols, rows.concat())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<CScalar>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| c(x, 0.0)).collect())
            .collect();
        CMat::from_rows(&rows)
    }

    /// The matrix unit `E_ij` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        m[(i, j)] = ONE;
        m
    }

    /// `u v*` for column vectors `u`, `v`.
    pub fn outer(u: &[CScalar], v: &[CScalar]) -> Self {
        let mut m = CMat::zeros(u.len(), v.len());
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                m[(i, j)] = ui * vj.conj();
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[CScalar] {
        &self.data
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn column(&self, j: usize) -> Vec<CScalar> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// `(A + A*) / 2`.
    pub fn re_part(&self) -> Result<CMat> {
        let n = self.ensure_square()?;
        let mut out = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            }
        }
        Ok(out)
    }

    /// `(A - A*) / 2i`.
    pub fn im_part(&self) -> Result<CMat> {
        let n = self.ensure_square()?;
        let mut out = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let d = self[(i, j)] - self[(j, i)].conj();
                // d / 2i = -i d / 2
                out[(i, j)] = c(d.im * 0.5, -d.re * 0.5);
            }
        }
        Ok(out)
    }

    /// `e^{i theta} A`.
    pub fn rotate(&self, theta: f64) -> CMat {
        self.scale(CScalar::from_polar(1.0, theta))
    }

    /// `Re(e^{i theta} A)` without forming the rotated matrix.
    pub fn rotated_re_part(&self, theta: f64) -> Result<CMat> {
        let n = self.ensure_square()?;
        let z = CScalar::from_polar(1.0, theta);
        let mut out = CMat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = (z * self[(i, j)] + (z * self[(j, i)]).conj()) * 0.5;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        Ok(out)
    }

    /// `Im(e^{i theta} A)`.
    pub fn rotated_im_part(&self, theta: f64) -> Result<CMat> {
        self.rotated_re_part(theta - std::f64::consts::FRAC_PI_2)
    }

    pub fn scale(&self, z: CScalar) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * z).collect(),
        }
    }

    pub fn scale_real(&self, x: f64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * x).collect(),
        }
    }

    fn check_same_shape(&self, other: &CMat) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CMat) -> Result<CMat> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &CMat) -> Result<CMat> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// `a A + b B` for same-shape `A`, `B`.
    pub fn lin_comb(a: CScalar, x: &CMat, b: CScalar, y: &CMat) -> Result<CMat> {
        x.check_same_shape(y)?;
        Ok(x.zip_with(y, |p, q| a * p + b * q))
    }

    fn zip_with(&self, other: &CMat, f: impl Fn(CScalar, CScalar) -> CScalar) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn matmul(&self, other: &CMat) -> Result<CMat> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `A* A`, Hermitian by construction.
    pub fn gram(&self) -> CMat {
        let n = self.cols;
        let mut out = CMat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut s = ZERO;
                for k in 0..self.rows {
                    s += self[(k, i)].conj() * self[(k, j)];
                }
                out[(i, j)] = s;
                out[(j, i)] = s.conj();
            }
        }
        for i in 0..n {
            out[(i, i)].im = 0.0;
        }
        out
    }

    pub fn mat_vec(&self, x: &[CScalar]) -> Vec<CScalar> {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn trace(&self) -> Result<CScalar> {
        let n = self.ensure_square()?;
        Ok((0..n).map(|i| self[(i, i)]).sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `||A - A*||_F`.
    pub fn hermitian_defect(&self) -> Result<f64> {
        let n = self.ensure_square()?;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        Ok(s.sqrt())
    }

    /// Hermiticity test at relative tolerance `tol`: `||A - A*||_F <= tol * max(1, ||A||_F)`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        match self.hermitian_defect() {
            Ok(d) => d <= tol * self.frobenius_norm().max(1.0),
            Err(_) => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| *z == ZERO)
    }

    /// `A^k` by repeated multiplication.
    pub fn square(&self) -> Result<CMat> {
        self.ensure_square()?;
        self.matmul(self)
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &CMat) -> Result<CMat> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// `A B + B A`.
    pub fn anticommutator(&self, other: &CMat) -> Result<CMat> {
        self.matmul(other)?.add(&other.matmul(self)?)
    }

    /// `A A* + A* A`.
    pub fn sym_gram(&self) -> Result<CMat> {
        self.ensure_square()?;
        let a_star = self.adjoint();
        self.matmul(&a_star)?.add(&a_star.matmul(self)?)
    }

    /// Kronecker product.
    pub fn kron(&self, other: &CMat) -> CMat {
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        let mut out = CMat::zeros(r1 * r2, c1 * c2);
        for i in 0..r1 {
            for j in 0..c1 {
                let a = self[(i, j)];
                for k in 0..r2 {
                    for l in 0..c2 {
                        out[(i * r2 + k, j * c2 + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!(self.shape(), other.shape());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = CScalar;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &CScalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CScalar {
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; the named methods return errors.

impl Add for &CMat {
    type Output = CMat;
    fn add(self, rhs: &CMat) -> CMat {
        CMat::add(self, rhs).expect("matrix add: shape mismatch")
    }
}

impl Sub for &CMat {
    type Output = CMat;
    fn sub(self, rhs: &CMat) -> CMat {
        CMat::sub(self, rhs).expect("matrix sub: shape mismatch")
    }
}

impl Mul for &CMat {
    type Output = CMat;
    fn mul(self, rhs: &CMat) -> CMat {
        self.matmul(rhs).expect("matmul: shape mismatch")
    }
}

impl Mul<CScalar> for &CMat {
    type Output = CMat;
    fn mul(self, rhs: CScalar) -> CMat {
        self.scale(rhs)
    }
}

impl Mul<f64> for &CMat {
    type Output = CMat;
    fn mul(self, rhs: f64) -> CMat {
        self.scale_real(rhs)
    }
}

impl Neg for &CMat {
    type Output = CMat;
    fn neg(self) -> CMat {
        self.scale_real(-1.0)
    }
}

/// `<x, y> = sum x_i conj(y_i)`, linear in the first slot.
pub fn inner(x: &[CScalar], y: &[CScalar]) -> CScalar {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &[CScalar]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
