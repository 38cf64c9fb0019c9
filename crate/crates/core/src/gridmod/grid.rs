use alloc::vec;
use alloc::vec::Vec;

/// A point of the lattice `N^r`, in units of the module's scale.
pub type GridPoint = Vec<usize>;

/// The finite box `{0..n}^r`, enumerated in lexicographic order with the
/// first coordinate most significant. Lexicographic order extends the
/// product order, so predecessors always come first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grid {
    r: usize,
    n: usize,
}

impl Grid {
    pub fn new(r: usize, n: usize) -> Self {
        Grid { r, n }
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    /// Upper corner coordinate `n`.
    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        (self.n + 1).pow(self.r as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, v: &[usize]) -> usize {
        debug_assert_eq!(v.len(), self.r);
        v.iter().fold(0, |acc, &x| {
            debug_assert!(x <= self.n);
            acc * (self.n + 1) + x
        })
    }

    pub fn point(&self, mut idx: usize) -> GridPoint {
        let mut v = vec![0; self.r];
        for i in (0..self.r).rev() {
            v[i] = idx % (self.n + 1);
            idx /= self.n + 1;
        }
        v
    }

    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }

    pub fn clip(&self, v: &[usize]) -> GridPoint {
        v.iter().map(|&x| x.min(self.n)).collect()
    }

    /// `clip(v + m)`
    pub fn shift(&self, v: &[usize], m: &[usize]) -> GridPoint {
        v.iter().zip(m).map(|(&a, &b)| (a + b).min(self.n)).collect()
    }

    /// Index of `v + e_axis`, if it lies inside the box.
    pub fn successor(&self, idx: usize, axis: usize) -> Option<usize> {
        let stride = (self.n + 1).pow((self.r - 1 - axis) as u32);
        let coord = (idx / stride) % (self.n + 1);
        (coord < self.n).then_some(idx + stride)
    }

    /// Index of `v - e_axis`, if `v_axis > 0`.
    pub fn predecessor(&self, idx: usize, axis: usize) -> Option<usize> {
        let stride = (self.n + 1).pow((self.r - 1 - axis) as u32);
        let coord = (idx / stride) % (self.n + 1);
        (coord > 0).then(|| idx - stride)
    }

    /// The corner `(n, ..., n)`.
    pub fn top(&self) -> GridPoint {
        vec![self.n; self.r]
    }
}

pub fn leq(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}
