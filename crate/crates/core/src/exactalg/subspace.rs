use alloc::vec;
use alloc::vec::Vec;

use super::field::PrimeField;
use super::matrix::{quotient_with_section, Matrix};

/// A linear subspace of F_p^d in canonical form: its basis vectors are the
/// rows of the reduced row echelon form, so equal spaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Matrix,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace { ambient, rows: Matrix::zeros(field, 0, ambient) }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace { ambient, rows: Matrix::identity(field, ambient) }
    }

    pub fn span_columns(m: &Matrix) -> Self {
        Self::span_rows(&m.transpose())
    }

    pub fn span_vectors(field: PrimeField, ambient: usize, vs: &[Vec<u32>]) -> Self {
        Self::span_columns(&Matrix::from_columns(field, ambient, vs))
    }

    fn span_rows(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        let idx: Vec<usize> = (0..pivots.len()).collect();
        Subspace { ambient: m.cols(), rows: r.select_rows(&idx) }
    }

    pub fn field(&self) -> PrimeField {
        self.rows.field()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.rows.rows()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Basis vectors as the columns of a `ambient x dim` matrix.
    pub fn basis(&self) -> Matrix {
        self.rows.transpose()
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|i| self.rows.row(i).to_vec()).collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let ext = self.rows.vstack(&Matrix::from_data(self.field(), 1, self.ambient, v.to_vec()));
        ext.rank() == self.dim()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient);
        other.dim() == 0 || self.rows.vstack(&other.rows).rank() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Self::span_rows(&self.rows.vstack(&other.rows))
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field(), self.ambient);
        }
        // Solve U a = W b through the kernel of [U | W].
        let u = self.basis();
        let joint = u.hstack(&other.basis());
        let ker = joint.kernel_basis();
        let idx: Vec<usize> = (0..self.dim()).collect();
        let a = ker.select_rows(&idx);
        Self::span_columns(&u.mul(&a))
    }

    /// Image under `map` (shape `target x ambient`).
    pub fn image(&self, map: &Matrix) -> Subspace {
        assert_eq!(map.cols(), self.ambient);
        if self.is_zero() {
            return Subspace::zero(self.field(), map.rows());
        }
        Self::span_columns(&map.mul(&self.basis()))
    }

    /// `{x : map x in self}` for `map: F^n -> F^ambient`.
    pub fn preimage(&self, map: &Matrix) -> Subspace {
        assert_eq!(map.rows(), self.ambient);
        let (q, _) = quotient_with_section(&self.basis()).expect("canonical basis is independent");
        Self::span_columns(&q.mul(map).kernel_basis())
    }

    /// Kernel of `map` as a subspace of its domain.
    pub fn kernel_of(map: &Matrix) -> Subspace {
        Self::span_columns(&map.kernel_basis())
    }

    pub fn image_of(map: &Matrix) -> Subspace {
        Self::span_columns(map)
    }

    /// Standard basis vectors extending this space to the whole ambient space,
    /// chosen greedily in index order.
    pub fn complement_basis(&self) -> Vec<Vec<u32>> {
        let k = self.field();
        let mut cur = self.clone();
        let mut out = Vec::new();
        for j in 0..self.ambient {
            if cur.is_full() {
                break;
            }
            let mut e = vec![0u32; self.ambient];
            e[j] = 1;
            if !cur.contains(&e) {
                cur = cur.sum(&Subspace::span_vectors(k, self.ambient, &[e.clone()]));
                out.push(e);
            }
        }
        out
    }

    /// Coordinates of `v` in the canonical basis; `None` if `v` is outside.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let b = self.basis();
        let rhs = Matrix::from_columns(self.field(), self.ambient, &[v.to_vec()]);
        b.solve(&rhs).ok().map(|x| x.column(0))
    }
}

/// Linear combination `sum c_i b_i` of the given vectors.
pub fn combine(field: PrimeField, ambient: usize, basis: &[Vec<u32>], coeffs: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; ambient];
    for (b, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(b) {
            *o = field.add(*o, field.mul(c, x));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_equality() {
        let k = PrimeField::new(3).unwrap();
        let a = Subspace::span_vectors(k, 3, &[vec![1, 1, 0], vec![0, 1, 1]]);
        let b = Subspace::span_vectors(k, 3, &[vec![1, 2, 2], vec![1, 0, 2]]);
        assert_eq!(a.dim(), 2);
        assert_eq!(a == b, a.contains_space(&b) && b.contains_space(&a));
    }

    #[test]
    fn intersection_dimension_formula() {
        let k = PrimeField::f2();
        let a = Subspace::span_vectors(k, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let b = Subspace::span_vectors(k, 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
        let i = a.intersect(&b);
        assert_eq!(i.dim() + a.sum(&b).dim(), a.dim() + b.dim());
        assert!(i.contains(&[0, 1, 0, 0]));
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let k = PrimeField::f2();
        let m = Matrix::from_rows(k, 3, &[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(Subspace::zero(k, 2).preimage(&m), Subspace::kernel_of(&m));
    }
}
