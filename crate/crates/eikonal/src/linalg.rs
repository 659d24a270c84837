//! Dense dim ≤ 3 vectors and matrices, sized at runtime but stored inline.
//! Small enough that hand-rolled arithmetic beats pulling in a matrix
//! library, and the explicit determinant/inverse formulas double as
//! documentation of the dimensions we actually support.

use std::ops::{Add, Mul, Neg, Sub};

/// Real vector of dimension 1, 2, or 3; unused slots stay zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vector {
    dim: usize,
    v: [f64; 3],
}

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=3).contains(&dim), "vector dim must be 1..=3");
        Self { dim, v: [0.0; 3] }
    }

    /// Builds from the first `dim` entries of a slice.
    pub fn from_slice(dim: usize, s: &[f64]) -> Self {
        let mut out = Self::zeros(dim);
        out.v[..dim].copy_from_slice(&s[..dim]);
        out
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize) -> f64) -> Self {
        let mut out = Self::zeros(dim);
        for i in 0..dim {
            out.v[i] = f(i);
        }
        out
    }

    /// Unit coordinate vector e_axis.
    pub fn unit(dim: usize, axis: usize) -> Self {
        assert!(axis < dim);
        Self::from_fn(dim, |i| if i == axis { 1.0 } else { 0.0 })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> f64 {
        debug_assert!(i < self.dim);
        self.v[i]
    }

    pub fn set(&mut self, i: usize, x: f64) {
        debug_assert!(i < self.dim);
        self.v[i] = x;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.v[..self.dim]
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        (0..self.dim).map(|i| self.v[i] * other.v[i]).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(mut self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..3 {
            self.v[i] += rhs.v[i];
        }
        self
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(mut self, rhs: Vector) -> Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..3 {
            self.v[i] -= rhs.v[i];
        }
        self
    }
}

impl Mul<f64> for Vector {
    type Output = Vector;
    fn mul(mut self, c: f64) -> Vector {
        for i in 0..3 {
            self.v[i] *= c;
        }
        self
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self * -1.0
    }
}

/// Real dim×dim matrix, dim ≤ 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix {
    dim: usize,
    a: [[f64; 3]; 3],
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        assert!((1..=3).contains(&dim), "matrix dim must be 1..=3");
        Self { dim, a: [[0.0; 3]; 3] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.a[i][i] = 1.0;
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.a[i][j] = f(i, j);
            }
        }
        m
    }

    /// c·I.
    pub fn scalar(dim: usize, c: f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.a[i][i] = c;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.dim && j < self.dim);
        self.a[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        debug_assert!(i < self.dim && j < self.dim);
        self.a[i][j] = x;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.dim, |i, j| self.a[j][i])
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.a[i][i]).sum()
    }

    pub fn frobenius(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += self.a[i][j] * self.a[i][j];
            }
        }
        s.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                m = m.max(self.a[i][j].abs());
            }
        }
        m
    }

    /// ‖M − Mᵀ‖_F, the symmetry defect.
    pub fn sym_defect(&self) -> f64 {
        (*self - self.transpose()).frobenius()
    }

    pub fn is_finite(&self) -> bool {
        let mut ok = true;
        for i in 0..self.dim {
            for j in 0..self.dim {
                ok &= self.a[i][j].is_finite();
            }
        }
        ok
    }

    pub fn det(&self) -> f64 {
        let a = &self.a;
        match self.dim {
            1 => a[0][0],
            2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
            _ => {
                a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                    - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                    + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
            }
        }
    }

    /// Inverse by the adjugate formula; `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Matrix> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let a = &self.a;
        let inv = match self.dim {
            1 => Matrix::from_fn(1, |_, _| 1.0 / d),
            2 => {
                let mut m = Matrix::zeros(2);
                m.a[0][0] = a[1][1] / d;
                m.a[0][1] = -a[0][1] / d;
                m.a[1][0] = -a[1][0] / d;
                m.a[1][1] = a[0][0] / d;
                m
            }
            _ => Matrix::from_fn(3, |i, j| {
                // Cofactor expansion, transposed.
                let r = [(j + 1) % 3, (j + 2) % 3];
                let c = [(i + 1) % 3, (i + 2) % 3];
                (a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]) / d
            }),
        };
        Some(inv)
    }

    pub fn mul_vec(&self, x: &Vector) -> Vector {
        debug_assert_eq!(self.dim, x.dim());
        Vector::from_fn(self.dim, |i| (0..self.dim).map(|j| self.a[i][j] * x.get(j)).sum())
    }

    /// Quadratic form ᵗx M x.
    pub fn quad_form(&self, x: &Vector) -> f64 {
        x.dot(&self.mul_vec(x))
    }
}

impl Add for Matrix {
    type Output = Matrix;
    fn add(mut self, rhs: Matrix) -> Matrix {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..3 {
            for j in 0..3 {
                self.a[i][j] += rhs.a[i][j];
            }
        }
        self
    }
}

impl Sub for Matrix {
    type Output = Matrix;
    fn sub(mut self, rhs: Matrix) -> Matrix {
        debug_assert_eq!(self.dim, rhs.dim);
        for i in 0..3 {
            for j in 0..3 {
                self.a[i][j] -= rhs.a[i][j];
            }
        }
        self
    }
}

impl Mul<f64> for Matrix {
    type Output = Matrix;
    fn mul(mut self, c: f64) -> Matrix {
        for i in 0..3 {
            for j in 0..3 {
                self.a[i][j] *= c;
            }
        }
        self
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        debug_assert_eq!(self.dim, rhs.dim);
        Matrix::from_fn(self.dim, |i, j| (0..self.dim).map(|k| self.a[i][k] * rhs.a[k][j]).sum())
    }
}
