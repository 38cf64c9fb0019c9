use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::PrimeField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExactAlgError {
    #[error("linear system has no solution")]
    Infeasible,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
}

/// Dense matrix over a prime field, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from integer rows, reducing mod p. All rows must have length `cols`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[&[i64]]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = field.reduce(x);
            }
        }
        m
    }

    /// Builds from already reduced row-major data.
    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&x| x < field.p()));
        Matrix { field, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
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
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.field.p();
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let k = self.field;
        let p = k.p() as u64;
        let mut out = Matrix::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(l, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "shape mismatch in matrix-vector product");
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64 % p).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let k = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| k.add(a, b)).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let k = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| k.sub(a, b)).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let k = self.field;
        Matrix { data: self.data.iter().map(|&a| k.mul(a, c)).collect(), ..*self }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * m.cols + j] = self.get(i, j);
            }
            for j in 0..other.cols {
                m.data[i * m.cols + self.cols + j] = other.get(i, j);
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * m.cols + j] = self.get(i, j);
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.data[(self.rows + i) * m.cols + self.cols + j] = other.get(i, j);
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let cols: Vec<Vec<u32>> = idx.iter().map(|&j| self.column(j)).collect();
        Matrix::from_columns(self.field, self.rows, &cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    /// Reduced row echelon form and pivot columns. Pivots are the first
    /// nonzero entry found scanning rows downward in each column.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let k = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = k.inv(m.get(r, c));
            for j in c..m.cols {
                let x = m.get(r, j);
                m.data[r * m.cols + j] = k.mul(x, inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let x = k.sub(m.get(i, j), k.mul(f, m.get(r, j)));
                    m.data[i * m.cols + j] = x;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space as the columns of the returned matrix,
    /// one per free variable in increasing order.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let k = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(k, self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            out.data[f * out.cols + t] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                out.data[pc * out.cols + t] = k.neg(r.get(row, f));
            }
        }
        out
    }

    /// Solves `self * X = b`. Free variables are set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix, ExactAlgError> {
        assert_eq!(self.rows, b.rows, "shape mismatch in solve");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(ExactAlgError::Infeasible);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * x.cols + j] = r.get(row, self.cols + j);
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix, ExactAlgError> {
        assert_eq!(self.rows, self.cols);
        if self.rank() < self.rows {
            return Err(ExactAlgError::Infeasible);
        }
        self.solve(&Matrix::identity(self.field, self.rows))
    }
}

/// A surjection `q: F^d -> F^(d-k)` whose kernel is the span of the columns
/// of `basis`, together with a section `s` with `q s = id`.
pub fn quotient_with_section(basis: &Matrix) -> Result<(Matrix, Matrix), ExactAlgError> {
    let d = basis.rows();
    let k = basis.field();
    if basis.rank() < basis.cols() {
        return Err(ExactAlgError::DependentBasis);
    }
    let mut cur = basis.clone();
    let mut added = Vec::new();
    for j in 0..d {
        if cur.cols() == d {
            break;
        }
        let mut e = vec![0u32; d];
        e[j] = 1;
        let ext = cur.hstack(&Matrix::from_columns(k, d, &[e.clone()]));
        if ext.rank() == ext.cols() {
            cur = ext;
            added.push(e);
        }
    }
    let inv = cur.inverse().expect("extended basis is invertible");
    let rows: Vec<usize> = (basis.cols()..d).collect();
    let q = inv.select_rows(&rows);
    let s = Matrix::from_columns(k, d, &added);
    Ok((q, s))
}

pub fn quotient_map(basis: &Matrix) -> Result<Matrix, ExactAlgError> {
    quotient_with_section(basis).map(|(q, _)| q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let a = Matrix::from_rows(f(2), 3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let kb = a.kernel_basis();
        assert_eq!(kb.cols(), 1);
        assert!(a.mul(&kb).is_zero());
        assert_eq!(kb.column(0), vec![1, 1, 1]);
    }

    #[test]
    fn solve_and_infeasible() {
        let k = f(3);
        let a = Matrix::from_rows(k, 2, &[&[1, 2], &[0, 1]]);
        let b = Matrix::from_rows(k, 1, &[&[1], &[2]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let z = Matrix::from_rows(k, 2, &[&[1, 1], &[1, 1]]);
        let c = Matrix::from_rows(k, 1, &[&[1], &[0]]);
        assert_eq!(z.solve(&c), Err(ExactAlgError::Infeasible));
    }

    #[test]
    fn quotient_kills_basis() {
        let k = f(3);
        let b = Matrix::from_rows(k, 1, &[&[1], &[2], &[0]]);
        let (q, s) = quotient_with_section(&b).unwrap();
        assert_eq!(q.rows(), 2);
        assert!(q.mul(&b).is_zero());
        assert_eq!(q.mul(&s), Matrix::identity(k, 2));
        let dep = Matrix::from_rows(k, 2, &[&[1, 2], &[1, 2], &[0, 0]]);
        assert_eq!(quotient_map(&dep), Err(ExactAlgError::DependentBasis));
    }
}
