use alloc::vec::Vec;

use super::{NatMap, StructureError};
use crate::exactalg::{Matrix, PrimeField};
use crate::gridmod::GridModule;

/// Linear constraints on the entries of a family of matrices
/// `X_v: source(v) -> target(v)`, one per lattice point.
pub struct NatSystem<'a> {
    source: &'a GridModule,
    target: &'a GridModule,
    offsets: Vec<usize>,
    nvars: usize,
    rows: Vec<(Vec<(usize, u32)>, u32)>,
}

impl<'a> NatSystem<'a> {
    pub fn new(source: &'a GridModule, target: &'a GridModule) -> Result<Self, StructureError> {
        source.check_compatible(target)?;
        let mut offsets = Vec::with_capacity(source.grid().len());
        let mut nvars = 0;
        for idx in 0..source.grid().len() {
            offsets.push(nvars);
            nvars += source.dim_at(idx) * target.dim_at(idx);
        }
        Ok(NatSystem { source, target, offsets, nvars, rows: Vec::new() })
    }

    fn field(&self) -> PrimeField {
        self.source.field()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Variable index of entry `(a, b)` of `X` at point index `idx`.
    pub fn var(&self, idx: usize, a: usize, b: usize) -> usize {
        self.offsets[idx] + a * self.source.dim_at(idx) + b
    }

    /// Naturality on every edge: `X_s F(e) = G(e) X_v`.
    pub fn add_naturality(&mut self) {
        let g = self.source.grid();
        let k = self.field();
        for idx in 0..g.len() {
            for axis in 0..g.r() {
                let Some(s) = g.successor(idx, axis) else { continue };
                let fe = self.source.edge(idx, axis);
                let ge = self.target.edge(idx, axis);
                for a in 0..self.target.dim_at(s) {
                    for b in 0..self.source.dim_at(idx) {
                        let mut row = Vec::new();
                        for c in 0..self.source.dim_at(s) {
                            let x = fe.get(c, b);
                            if x != 0 {
                                row.push((self.var(s, a, c), x));
                            }
                        }
                        for c in 0..self.target.dim_at(idx) {
                            let x = ge.get(a, c);
                            if x != 0 {
                                row.push((self.var(idx, c, b), k.neg(x)));
                            }
                        }
                        self.rows.push((row, 0));
                    }
                }
            }
        }
    }

    /// `sum coeff * var = rhs`
    pub fn add_equation(&mut self, terms: Vec<(usize, u32)>, rhs: u32) {
        self.rows.push((terms, rhs));
    }

    /// `L X_idx R = M` for fixed matrices: `L` acts on the target side and
    /// `R` on the source side.
    pub fn add_sandwich(&mut self, idx: usize, left: &Matrix, right: &Matrix, rhs: &Matrix) {
        let k = self.field();
        debug_assert_eq!(left.cols(), self.target.dim_at(idx));
        debug_assert_eq!(right.rows(), self.source.dim_at(idx));
        for i in 0..left.rows() {
            for j in 0..right.cols() {
                let mut terms = Vec::new();
                for a in 0..left.cols() {
                    let l = left.get(i, a);
                    if l == 0 {
                        continue;
                    }
                    for b in 0..right.rows() {
                        let r = right.get(b, j);
                        if r != 0 {
                            terms.push((self.var(idx, a, b), k.mul(l, r)));
                        }
                    }
                }
                self.rows.push((terms, rhs.get(i, j)));
            }
        }
    }

    fn dense(&self) -> (Matrix, Matrix) {
        let k = self.field();
        let mut a = Matrix::zeros(k, self.rows.len(), self.nvars);
        let mut b = Matrix::zeros(k, self.rows.len(), 1);
        for (i, (terms, rhs)) in self.rows.iter().enumerate() {
            for &(v, c) in terms {
                let cur = a.get(i, v);
                a.set(i, v, k.add(cur, c));
            }
            b.set(i, 0, *rhs);
        }
        (a, b)
    }

    /// A particular solution and a basis of the homogeneous solutions, or
    /// `None` if the system is inconsistent.
    pub fn solve(&self) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
        let k = self.field();
        if self.nvars == 0 {
            let consistent = self.rows.iter().all(|(_, rhs)| *rhs == 0);
            return consistent.then(|| (Vec::new(), Vec::new()));
        }
        let (a, b) = self.dense();
        let x = if self.rows.is_empty() { Matrix::zeros(k, self.nvars, 1) } else { a.solve(&b).ok()? };
        let ker = if self.rows.is_empty() { Matrix::identity(k, self.nvars) } else { a.kernel_basis() };
        Some((x.column(0), ker.columns()))
    }

    pub fn to_natmap(&self, x: &[u32]) -> NatMap {
        let k = self.field();
        let mats = (0..self.source.grid().len())
            .map(|idx| {
                let (rows, cols) = (self.target.dim_at(idx), self.source.dim_at(idx));
                let start = self.offsets[idx];
                Matrix::from_data(k, rows, cols, x[start..start + rows * cols].to_vec())
            })
            .collect();
        NatMap::from_parts_unchecked(self.source.clone(), self.target.clone(), mats)
    }
}

/// A basis of the space of natural transformations `source -> target`.
pub fn nat_basis(source: &GridModule, target: &GridModule) -> Result<Vec<NatMap>, StructureError> {
    let mut sys = NatSystem::new(source, target)?;
    sys.add_naturality();
    let (_, ker) = sys.solve().expect("homogeneous system is consistent");
    Ok(ker.iter().map(|x| sys.to_natmap(x)).collect())
}

/// `sum c_i basis_i`
pub fn nat_combination(basis: &[NatMap], coeffs: &[u32], source: &GridModule, target: &GridModule) -> NatMap {
    let k = source.field();
    let mut mats: Vec<Matrix> = (0..source.grid().len())
        .map(|i| Matrix::zeros(k, target.dim_at(i), source.dim_at(i)))
        .collect();
    for (b, &c) in basis.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (m, bm) in mats.iter_mut().zip(b.mats()) {
            *m = m.add(&bm.scale(c));
        }
    }
    NatMap::from_parts_unchecked(source.clone(), target.clone(), mats)
}
