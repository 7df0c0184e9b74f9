//! Minimal dense linear algebra for small dimensions (n <= ~50):
//! vectors as slices, square matrices in column-major storage, LU
//! determinants/inverses, a Jacobi eigensolver for symmetric matrices,
//! and the `Rotation`/`Frame` carriers for SO(n) and Gr(n,i).

use crate::error::{Error, Result};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn normalize(a: &mut [f64]) -> f64 {
    let n = norm(a);
    if n > 0.0 {
        for x in a.iter_mut() {
            *x /= n;
        }
    }
    n
}

/// Dense square matrix, column-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for k in 0..n {
            m.set(k, k, 1.0);
        }
        m
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (k, &v) in entries.iter().enumerate() {
            m.set(k, k, v);
        }
        m
    }

    /// Build from rows given as nested slices (convenient in fixtures/tests).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Config("matrix rows must be square".into()));
        }
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.n + row]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: f64) {
        self.data[col * self.n + row] = v;
    }

    pub fn column(&self, col: usize) -> &[f64] {
        &self.data[col * self.n..(col + 1) * self.n]
    }

    pub fn column_mut(&mut self, col: usize) -> &mut [f64] {
        &mut self.data[col * self.n..(col + 1) * self.n]
    }

    /// y = A x.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = vec![0.0; n];
        for j in 0..n {
            let xj = x[j];
            let col = self.column(j);
            for i in 0..n {
                y[i] += col[i] * xj;
            }
        }
        y
    }

    /// y = A^T x.
    pub fn matvec_t(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|j| dot(self.column(j), x)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for j in 0..n {
            let bj = other.column(j);
            for k in 0..n {
                let bkj = bj[k];
                let ak = self.column(k);
                let oj = out.column_mut(j);
                for i in 0..n {
                    oj[i] += ak[i] * bkj;
                }
            }
        }
        out
    }

    /// LU decomposition with partial pivoting; returns (lu, perm, sign).
    fn lu(&self) -> Option<(Matrix, Vec<usize>, f64)> {
        let n = self.n;
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let mut pivot = k;
            let mut max = lu.get(k, k).abs();
            for i in (k + 1)..n {
                let v = lu.get(i, k).abs();
                if v > max {
                    max = v;
                    pivot = i;
                }
            }
            if max == 0.0 {
                return None;
            }
            if pivot != k {
                for j in 0..n {
                    let a = lu.get(k, j);
                    let b = lu.get(pivot, j);
                    lu.set(k, j, b);
                    lu.set(pivot, j, a);
                }
                perm.swap(k, pivot);
                sign = -sign;
            }
            let d = lu.get(k, k);
            for i in (k + 1)..n {
                let f = lu.get(i, k) / d;
                lu.set(i, k, f);
                for j in (k + 1)..n {
                    lu.set(i, j, lu.get(i, j) - f * lu.get(k, j));
                }
            }
        }
        Some((lu, perm, sign))
    }

    pub fn det(&self) -> f64 {
        match self.lu() {
            None => 0.0,
            Some((lu, _, sign)) => {
                let mut d = sign;
                for k in 0..self.n {
                    d *= lu.get(k, k);
                }
                d
            }
        }
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.n;
        let (lu, perm, _) = self
            .lu()
            .ok_or_else(|| Error::Domain("singular matrix has no inverse".into()))?;
        let mut inv = Matrix::zeros(n);
        let mut col = vec![0.0; n];
        for j in 0..n {
            for (i, c) in col.iter_mut().enumerate() {
                *c = if perm[i] == j { 1.0 } else { 0.0 };
            }
            // forward substitution (unit lower triangle)
            for i in 1..n {
                for k in 0..i {
                    col[i] -= lu.get(i, k) * col[k];
                }
            }
            // back substitution
            for i in (0..n).rev() {
                for k in (i + 1)..n {
                    col[i] -= lu.get(i, k) * col[k];
                }
                col[i] /= lu.get(i, i);
            }
            inv.column_mut(j).copy_from_slice(&col);
        }
        Ok(inv)
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
    /// ascending order.
    pub fn symmetric_eigenvalues(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = self.clone();
        for _sweep in 0..100 {
            let mut off = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    off += a.get(i, j).abs();
                }
            }
            if off < 1e-300 {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.get(p, q);
                    if apq.abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, c * akp - s * akq);
                        a.set(k, q, s * akp + c * akq);
                    }
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let aqk = a.get(q, k);
                        a.set(p, k, c * apk - s * aqk);
                        a.set(q, k, s * apk + c * aqk);
                    }
                }
            }
        }
        let mut eig: Vec<f64> = (0..n).map(|k| a.get(k, k)).collect();
        eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
        eig
    }

    /// Spectral condition number from the singular values of A.
    pub fn condition_number(&self) -> f64 {
        let ata = self.transpose().mul(self);
        let eig = ata.symmetric_eigenvalues();
        let min = eig.first().copied().unwrap_or(0.0).max(0.0);
        let max = eig.last().copied().unwrap_or(0.0).max(0.0);
        if min <= 0.0 {
            f64::INFINITY
        } else {
            (max / min).sqrt()
        }
    }
}

/// Rotation in SO(n): orthogonal columns, determinant +1.
#[derive(Debug, Clone)]
pub struct Rotation {
    matrix: Matrix,
}

impl Rotation {
    /// Wrap a matrix after checking orthogonality and determinant to 1e-12.
    pub fn new(matrix: Matrix) -> Result<Self> {
        let n = matrix.n;
        for i in 0..n {
            for j in i..n {
                let d = dot(matrix.column(i), matrix.column(j));
                let target = if i == j { 1.0 } else { 0.0 };
                if (d - target).abs() > 1e-12 {
                    return Err(Error::Domain(format!(
                        "columns {i},{j} not orthonormal: dot = {d}"
                    )));
                }
            }
        }
        let det = matrix.det();
        if (det - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("determinant {det} != +1")));
        }
        Ok(Rotation { matrix })
    }

    /// Unchecked wrap for matrices produced by our own orthonormalization.
    pub(crate) fn from_orthonormal(matrix: Matrix) -> Self {
        Rotation { matrix }
    }

    pub fn identity(n: usize) -> Self {
        Rotation {
            matrix: Matrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.matrix.matvec(x)
    }

    pub fn apply_inverse(&self, x: &[f64]) -> Vec<f64> {
        self.matrix.matvec_t(x)
    }

    /// Image of the k-th basis vector (k-th column).
    pub fn column(&self, k: usize) -> &[f64] {
        self.matrix.column(k)
    }

    /// First i columns as a frame for the subspace `span(phi e_1, ..., phi e_i)`.
    pub fn prefix_frame(&self, i: usize) -> Frame {
        let n = self.dim();
        assert!(i >= 1 && i <= n);
        Frame {
            dim_ambient: n,
            dim_sub: i,
            basis: self.matrix.data[..i * n].to_vec(),
        }
    }
}

/// Orthonormal basis of an i-dimensional subspace of R^n, column-major.
#[derive(Debug, Clone)]
pub struct Frame {
    dim_ambient: usize,
    dim_sub: usize,
    basis: Vec<f64>,
}

impl Frame {
    pub fn new(dim_ambient: usize, vectors: &[Vec<f64>]) -> Result<Self> {
        let i = vectors.len();
        if i < 1 || i > dim_ambient {
            return Err(Error::Domain(format!(
                "frame dimension {i} out of range 1..={dim_ambient}"
            )));
        }
        let mut basis = Vec::with_capacity(i * dim_ambient);
        for v in vectors {
            if v.len() != dim_ambient {
                return Err(Error::Domain("frame vector has wrong length".into()));
            }
            basis.extend_from_slice(v);
        }
        let frame = Frame {
            dim_ambient,
            dim_sub: i,
            basis,
        };
        for a in 0..i {
            for b in a..i {
                let d = dot(frame.basis_vector(a), frame.basis_vector(b));
                let target = if a == b { 1.0 } else { 0.0 };
                if (d - target).abs() > 1e-12 {
                    return Err(Error::Domain(format!(
                        "frame vectors {a},{b} not orthonormal: dot = {d}"
                    )));
                }
            }
        }
        Ok(frame)
    }

    /// Standard frame spanning span(e_1, ..., e_i).
    pub fn standard(dim_ambient: usize, i: usize) -> Self {
        let mut basis = vec![0.0; i * dim_ambient];
        for k in 0..i {
            basis[k * dim_ambient + k] = 1.0;
        }
        Frame {
            dim_ambient,
            dim_sub: i,
            basis,
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn dim_sub(&self) -> usize {
        self.dim_sub
    }

    pub fn basis_vector(&self, k: usize) -> &[f64] {
        &self.basis[k * self.dim_ambient..(k + 1) * self.dim_ambient]
    }
}

/// Euclidean length of the orthogonal projection of x onto the frame's span.
pub fn project_length(x: &[f64], frame: &Frame) -> f64 {
    let mut sum = 0.0;
    for k in 0..frame.dim_sub() {
        let c = dot(x, frame.basis_vector(k));
        sum += c * c;
    }
    sum.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lu_det_and_inverse() {
        let a = Matrix::from_rows(&[
            vec![2.0, 1.0, 0.0],
            vec![1.0, 3.0, 1.0],
            vec![0.0, 1.0, 4.0],
        ])
        .unwrap();
        // det by cofactor: 2*(12-1) - 1*(4-0) = 18
        assert!((a.det() - 18.0).abs() < 1e-12);
        let inv = a.inverse().unwrap();
        let prod = a.mul(&inv);
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((prod.get(i, j) - target).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_eigenvalues() {
        let a = Matrix::from_rows(&[
            vec![2.0, 1.0, 0.0],
            vec![1.0, 2.0, 0.0],
            vec![0.0, 0.0, 5.0],
        ])
        .unwrap();
        let eig = a.symmetric_eigenvalues();
        assert!((eig[0] - 1.0).abs() < 1e-10);
        assert!((eig[1] - 3.0).abs() < 1e-10);
        assert!((eig[2] - 5.0).abs() < 1e-10);
    }

    #[test]
    fn condition_number_of_diagonal() {
        let a = Matrix::diagonal(&[4.0, 1.0, 0.5]);
        assert!((a.condition_number() - 8.0).abs() < 1e-9);
    }

    #[test]
    fn projection_lengths() {
        let f1 = Frame::standard(3, 1);
        assert!((project_length(&[1.0, 0.0, 0.0], &f1) - 1.0).abs() < 1e-15);
        let f_orth = Frame::new(3, &[vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        assert!(project_length(&[1.0, 0.0, 0.0], &f_orth).abs() < 1e-15);
        let full = Frame::standard(3, 3);
        let x = [0.3, -1.2, 2.0];
        assert!((project_length(&x, &full) - norm(&x)).abs() < 1e-15);
    }

    #[test]
    fn rotation_rejects_non_orthogonal() {
        let m = Matrix::from_rows(&[vec![1.0, 0.1], vec![0.0, 1.0]]).unwrap();
        assert!(Rotation::new(m).is_err());
    }

    #[test]
    fn rotation_rejects_reflection() {
        let m = Matrix::diagonal(&[1.0, -1.0]);
        assert!(Rotation::new(m).is_err());
    }
}
