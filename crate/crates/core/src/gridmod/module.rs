use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::grid::{leq, Grid, GridPoint};
use crate::exactalg::{floor_div, rational_gcd, Matrix, PrimeField, Rational};

/// A point of `Q^r` with non-negative coordinates.
pub type RationalPoint = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GridError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("points are not comparable")]
    NotComparable,
    #[error("scale alpha must be positive")]
    NonPositiveAlpha,
    #[error("map at {point:?} along axis {axis} has shape {got:?}, expected {expected:?}")]
    BadShape { point: GridPoint, axis: usize, got: (usize, usize), expected: (usize, usize) },
    #[error("missing map at {point:?} along axis {axis}")]
    MissingMap { point: GridPoint, axis: usize },
    #[error("square at {point:?} in axes {i},{j} does not commute")]
    NonCommuting { point: GridPoint, i: usize, j: usize },
    #[error("coordinate {0} is negative")]
    NegativeCoordinate(Rational),
    #[error("field mismatch")]
    FieldMismatch,
}

/// An interval module `K` on `{v : start <= v, not end <= v}` with identity
/// maps; `end = None` gives the free module at `start`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bar {
    pub start: GridPoint,
    pub end: Option<GridPoint>,
}

/// An `alpha`-tame functor `Q^r -> Vect_K` that is constant beyond
/// `alpha * (n, ..., n)`, stored by its values on the box `{0..n}^r` and the
/// maps between neighbouring lattice points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridModule {
    field: PrimeField,
    alpha: Rational,
    grid: Grid,
    dims: Vec<usize>,
    edges: Vec<Option<Matrix>>,
}

impl GridModule {
    /// Builds a module after checking shapes. `edges[idx * r + axis]` is the
    /// map from the point with index `idx` to its successor along `axis`,
    /// and must be `None` exactly when that successor leaves the box.
    pub fn new(
        field: PrimeField,
        r: usize,
        alpha: Rational,
        n: usize,
        dims: Vec<usize>,
        edges: Vec<Option<Matrix>>,
    ) -> Result<Self, GridError> {
        if !alpha.is_positive() {
            return Err(GridError::NonPositiveAlpha);
        }
        if r == 0 {
            return Err(GridError::DimensionMismatch("r must be at least 1"));
        }
        let grid = Grid::new(r, n);
        if dims.len() != grid.len() {
            return Err(GridError::DimensionMismatch("dims length differs from box size"));
        }
        if edges.len() != grid.len() * r {
            return Err(GridError::DimensionMismatch("edge count differs from box size"));
        }
        for idx in 0..grid.len() {
            for axis in 0..r {
                let e = &edges[idx * r + axis];
                match (grid.successor(idx, axis), e) {
                    (Some(s), Some(m)) => {
                        if m.field() != field {
                            return Err(GridError::FieldMismatch);
                        }
                        let expected = (dims[s], dims[idx]);
                        if (m.rows(), m.cols()) != expected {
                            return Err(GridError::BadShape {
                                point: grid.point(idx),
                                axis,
                                got: (m.rows(), m.cols()),
                                expected,
                            });
                        }
                    }
                    (Some(_), None) => return Err(GridError::MissingMap { point: grid.point(idx), axis }),
                    (None, Some(_)) => {
                        return Err(GridError::DimensionMismatch("map leaves the box"));
                    }
                    (None, None) => {}
                }
            }
        }
        Ok(GridModule { field, alpha, grid, dims, edges })
    }

    /// Builds a module from callbacks giving dimensions and edge maps.
    pub fn from_fn(
        field: PrimeField,
        r: usize,
        alpha: Rational,
        n: usize,
        mut dim: impl FnMut(&[usize]) -> usize,
        mut edge: impl FnMut(&[usize], usize) -> Matrix,
    ) -> Result<Self, GridError> {
        let grid = Grid::new(r, n);
        let dims: Vec<usize> = grid.points().map(|v| dim(&v)).collect();
        let mut edges = Vec::with_capacity(grid.len() * r);
        for idx in 0..grid.len() {
            let v = grid.point(idx);
            for axis in 0..r {
                edges.push(grid.successor(idx, axis).map(|_| edge(&v, axis)));
            }
        }
        Self::new(field, r, alpha, n, dims, edges)
    }

    /// The zero module.
    pub fn zero(field: PrimeField, r: usize, alpha: Rational, n: usize) -> Self {
        Self::from_fn(field, r, alpha, n, |_| 0, |_, _| Matrix::zeros(field, 0, 0)).expect("zero module")
    }

    /// `K` on the points where `support` holds, identity maps inside the
    /// support and zero maps elsewhere. The support must be an interval of
    /// the poset for the result to commute; `validate` checks this.
    pub fn indicator(
        field: PrimeField,
        r: usize,
        alpha: Rational,
        n: usize,
        support: impl Fn(&[usize]) -> bool,
    ) -> Result<Self, GridError> {
        let m = Self::from_fn(
            field,
            r,
            alpha,
            n,
            |v| usize::from(support(v)),
            |v, axis| {
                let mut w = v.to_vec();
                w[axis] += 1;
                let (a, b) = (usize::from(support(v)), usize::from(support(&w)));
                if a == 1 && b == 1 {
                    Matrix::identity(field, 1)
                } else {
                    Matrix::zeros(field, b, a)
                }
            },
        )?;
        m.validate()?;
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn alpha(&self) -> Rational {
        self.alpha
    }
    #[inline]
    pub fn r(&self) -> usize {
        self.grid.r()
    }
    /// Box size `n`.
    #[inline]
    pub fn size(&self) -> usize {
        self.grid.size()
    }
    #[inline]
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension at a lattice point; points beyond the box are clipped.
    pub fn dim(&self, v: &[usize]) -> usize {
        self.dims[self.grid.index(&self.grid.clip(v))]
    }

    pub fn dim_at(&self, idx: usize) -> usize {
        self.dims[idx]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn max_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Map from the point with index `idx` to its successor along `axis`,
    /// or the identity when the successor is clipped back to the same point.
    pub fn edge(&self, idx: usize, axis: usize) -> Matrix {
        match &self.edges[idx * self.r() + axis] {
            Some(m) => m.clone(),
            None => Matrix::identity(self.field, self.dims[idx]),
        }
    }

    pub fn edge_ref(&self, idx: usize, axis: usize) -> Option<&Matrix> {
        self.edges[idx * self.r() + axis].as_ref()
    }

    /// Checks that every elementary square commutes.
    pub fn validate(&self) -> Result<(), GridError> {
        let g = self.grid;
        let r = self.r();
        for idx in 0..g.len() {
            for i in 0..r {
                let Some(si) = g.successor(idx, i) else { continue };
                for j in (i + 1)..r {
                    let Some(sj) = g.successor(idx, j) else { continue };
                    let a = self.edge(si, j).mul(&self.edge(idx, i));
                    let b = self.edge(sj, i).mul(&self.edge(idx, j));
                    if a != b {
                        return Err(GridError::NonCommuting { point: g.point(idx), i, j });
                    }
                }
            }
        }
        Ok(())
    }

    /// `F(v <= w)` for lattice points, clipping both to the box. Composes
    /// along the path that raises axis 0 first, then axis 1, and so on.
    pub fn evaluate_map(&self, v: &[usize], w: &[usize]) -> Result<Matrix, GridError> {
        if v.len() != self.r() || w.len() != self.r() {
            return Err(GridError::DimensionMismatch("point has wrong length"));
        }
        if !leq(v, w) {
            return Err(GridError::NotComparable);
        }
        let (v, w) = (self.grid.clip(v), self.grid.clip(w));
        let mut idx = self.grid.index(&v);
        let mut acc = Matrix::identity(self.field, self.dims[idx]);
        for axis in 0..self.r() {
            for _ in v[axis]..w[axis] {
                let m = self.edges[idx * self.r() + axis].as_ref().expect("step inside box");
                acc = m.mul(&acc);
                idx = self.grid.successor(idx, axis).expect("step inside box");
            }
        }
        Ok(acc)
    }

    /// `F(v <= clip(v + m))`
    pub fn shift_map(&self, v: &[usize], m: &[usize]) -> Matrix {
        let w: GridPoint = v.iter().zip(m).map(|(a, b)| a + b).collect();
        self.evaluate_map(v, &w).expect("shift is comparable")
    }

    /// Anchor lattice point `floor(v / alpha)` (clipped) and the dimension
    /// there, which is the dimension of `F(v)` for the tame functor.
    pub fn evaluate_rational(&self, v: &[Rational]) -> Result<(GridPoint, usize), GridError> {
        let anchor = self.anchor(v)?;
        let d = self.dim(&anchor);
        Ok((anchor, d))
    }

    pub fn anchor(&self, v: &[Rational]) -> Result<GridPoint, GridError> {
        if v.len() != self.r() {
            return Err(GridError::DimensionMismatch("point has wrong length"));
        }
        let mut out = Vec::with_capacity(v.len());
        for &x in v {
            if x.is_negative() {
                return Err(GridError::NegativeCoordinate(x));
            }
            out.push((floor_div(x, self.alpha) as usize).min(self.size()));
        }
        Ok(out)
    }

    /// `F(v <= w)` for rational points.
    pub fn evaluate_rational_map(&self, v: &[Rational], w: &[Rational]) -> Result<Matrix, GridError> {
        if v.iter().zip(w).any(|(a, b)| a > b) {
            return Err(GridError::NotComparable);
        }
        self.evaluate_map(&self.anchor(v)?, &self.anchor(w)?)
    }

    pub fn direct_sum(&self, other: &GridModule) -> Result<GridModule, GridError> {
        self.check_compatible(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let edges = self
            .edges
            .iter()
            .zip(&other.edges)
            .map(|(a, b)| match (a, b) {
                (Some(a), Some(b)) => Some(a.block_diag(b)),
                _ => None,
            })
            .collect();
        Ok(GridModule { field: self.field, alpha: self.alpha, grid: self.grid, dims, edges })
    }

    pub fn check_compatible(&self, other: &GridModule) -> Result<(), GridError> {
        if self.field != other.field {
            return Err(GridError::FieldMismatch);
        }
        if self.grid != other.grid || self.alpha != other.alpha {
            return Err(GridError::DimensionMismatch("modules live on different grids"));
        }
        Ok(())
    }

    /// The free module `K(w, -)`.
    pub fn free(field: PrimeField, r: usize, alpha: Rational, n: usize, w: &[usize]) -> Result<Self, GridError> {
        Self::bar(field, r, alpha, n, &Bar { start: w.to_vec(), end: None })
    }

    pub fn bar(field: PrimeField, r: usize, alpha: Rational, n: usize, b: &Bar) -> Result<Self, GridError> {
        if b.start.len() != r || b.end.as_ref().is_some_and(|e| e.len() != r) {
            return Err(GridError::DimensionMismatch("bar endpoints have wrong length"));
        }
        let outside = |p: &GridPoint| p.iter().any(|&x| x > n);
        if outside(&b.start) || b.end.as_ref().is_some_and(outside) {
            return Err(GridError::DimensionMismatch("bar endpoint lies outside the box"));
        }
        Self::indicator(field, r, alpha, n, |v| {
            leq(&b.start, v) && !b.end.as_ref().is_some_and(|e| leq(e, v))
        })
    }

    /// Precomposition with the dilation by `d`: the same functor on the
    /// lattice of step `alpha / d`.
    pub fn rescale(&self, d: usize) -> GridModule {
        assert!(d >= 1);
        if d == 1 {
            return self.clone();
        }
        let n = self.size() * d;
        let coarse = |v: &[usize]| -> GridPoint { v.iter().map(|&x| x / d).collect() };
        Self::from_fn(
            self.field,
            self.r(),
            self.alpha / Rational::from_integer(d as i64),
            n,
            |v| self.dim(&coarse(v)),
            |v, axis| {
                let a = coarse(v);
                let mut w = v.to_vec();
                w[axis] += 1;
                let b = coarse(&w);
                self.evaluate_map(&a, &b).expect("comparable")
            },
        )
        .expect("rescale preserves shapes")
    }

    /// Extends the box to `m >= n`, constant beyond the old corner.
    pub fn pad(&self, m: usize) -> GridModule {
        assert!(m >= self.size());
        if m == self.size() {
            return self.clone();
        }
        Self::from_fn(
            self.field,
            self.r(),
            self.alpha,
            m,
            |v| self.dim(v),
            |v, axis| {
                let mut w = v.to_vec();
                w[axis] += 1;
                self.evaluate_map(v, &w).expect("comparable")
            },
        )
        .expect("padding preserves shapes")
    }

    /// Translation `F(- + w)`, returned on the coarsest lattice on which both
    /// `alpha` and every `w_i` are integral.
    pub fn translate(&self, w: &[Rational]) -> Result<GridModule, GridError> {
        if w.len() != self.r() {
            return Err(GridError::DimensionMismatch("translation has wrong length"));
        }
        if let Some(x) = w.iter().find(|x| x.is_negative()) {
            return Err(GridError::NegativeCoordinate(*x));
        }
        let mut mu = self.alpha;
        for &x in w {
            if !x.is_zero() {
                mu = rational_gcd(mu, x);
            }
        }
        let d = (self.alpha / mu).to_integer() as usize;
        let fine = self.rescale(d);
        let k: Vec<usize> = w.iter().map(|x| (x / mu).to_integer() as usize).collect();
        Ok(fine.shift_lattice(&k))
    }

    /// `F(- + k)` for a lattice vector `k` at the current scale.
    pub fn shift_lattice(&self, k: &[usize]) -> GridModule {
        let g = self.grid;
        Self::from_fn(
            self.field,
            self.r(),
            self.alpha,
            self.size(),
            |v| self.dim(&g.shift(v, k)),
            |v, axis| {
                let mut w = v.to_vec();
                w[axis] += 1;
                self.evaluate_map(&g.shift(v, k), &g.shift(&w, k)).expect("comparable")
            },
        )
        .expect("shift preserves shapes")
    }

    /// Brings the module onto step `alpha` (which must divide the current
    /// step) and box `n` (which must cover the current corner).
    pub fn refine_to(&self, alpha: Rational, n: usize) -> Result<GridModule, GridError> {
        let ratio = self.alpha / alpha;
        if !ratio.is_integer() || !ratio.is_positive() {
            return Err(GridError::DimensionMismatch("target scale does not divide module scale"));
        }
        let fine = self.rescale(ratio.to_integer() as usize);
        if fine.size() > n {
            return Err(GridError::DimensionMismatch("target box is smaller than module box"));
        }
        Ok(fine.pad(n))
    }

    /// Rewrites both modules on a common lattice and box.
    pub fn align(&self, other: &GridModule) -> Result<(GridModule, GridModule), GridError> {
        if self.r() != other.r() {
            return Err(GridError::DimensionMismatch("modules have different r"));
        }
        if self.field != other.field {
            return Err(GridError::FieldMismatch);
        }
        let mu = rational_gcd(self.alpha, other.alpha);
        let a = self.rescale((self.alpha / mu).to_integer() as usize);
        let b = other.rescale((other.alpha / mu).to_integer() as usize);
        let n = a.size().max(b.size());
        Ok((a.pad(n), b.pad(n)))
    }

    /// Dimensions listed against their lattice points.
    pub fn dims_by_point(&self) -> Vec<(GridPoint, usize)> {
        self.grid.points().zip(self.dims.iter().copied()).collect()
    }

    /// Lattice points where the module is nonzero.
    pub fn nonzero_points(&self) -> Vec<GridPoint> {
        self.grid.points().filter(|v| self.dim(v) > 0).collect()
    }
}
