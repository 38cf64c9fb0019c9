//! Degree-zero homology of a Rips bifiltration sampled on a grid.
//!
//! Axis 0 indexes `scale_grid`, axis 1 indexes `density_grid`. At `(i, j)`
//! the vertices are the points with density at most `density_grid[j]`,
//! joined when their distance is at most `scale_grid[i]`. Grid index `i`
//! sits at `alpha * i` in the module.

use pnoise_core::exactalg::{int, Matrix, PrimeField, Rational};
use pnoise_core::gridmod::{GridError, GridModule};

#[derive(Clone, Debug)]
pub enum Metric {
    /// Points in `Q^d` with the Euclidean distance.
    Points(Vec<Vec<Rational>>),
    /// A symmetric matrix of pairwise distances.
    Distances(Vec<Vec<Rational>>),
}

impl Metric {
    pub fn len(&self) -> usize {
        match self {
            Metric::Points(p) => p.len(),
            Metric::Distances(d) => d.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    // `dist(a, b) <= s`, comparing squares for points.
    fn within(&self, a: usize, b: usize, s: Rational) -> bool {
        match self {
            Metric::Points(p) => {
                let d2: Rational = p[a].iter().zip(&p[b]).map(|(x, y)| (x - y) * (x - y)).sum();
                s >= int(0) && d2 <= s * s
            }
            Metric::Distances(d) => d[a][b] <= s,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BifiltrationInput {
    pub metric: Metric,
    /// One value per point; empty means every point has density 0.
    pub density: Vec<Rational>,
    pub scale_grid: Vec<Rational>,
    pub density_grid: Vec<Rational>,
}

#[derive(Debug, thiserror::Error)]
pub enum H0Error {
    #[error("scale and density grids must be non-empty")]
    EmptyGrid,
    #[error("{0} grid is not strictly increasing")]
    UnsortedGrid(&'static str),
    #[error("no points")]
    NoPoints,
    #[error("point {0} has a different dimension from point 0")]
    RaggedPoints(usize),
    #[error("distance matrix is not square and symmetric with zero diagonal at row {0}")]
    BadDistances(usize),
    #[error("{got} density values for {expected} points")]
    DensityLength { got: usize, expected: usize },
    #[error(transparent)]
    Grid(#[from] GridError),
}

fn check(input: &BifiltrationInput) -> Result<(), H0Error> {
    if input.scale_grid.is_empty() || input.density_grid.is_empty() {
        return Err(H0Error::EmptyGrid);
    }
    for (name, g) in [("scale", &input.scale_grid), ("density", &input.density_grid)] {
        if g.windows(2).any(|w| w[0] >= w[1]) {
            return Err(H0Error::UnsortedGrid(name));
        }
    }
    let n = input.metric.len();
    if n == 0 {
        return Err(H0Error::NoPoints);
    }
    match &input.metric {
        Metric::Points(p) => {
            if let Some(i) = p.iter().position(|x| x.len() != p[0].len()) {
                return Err(H0Error::RaggedPoints(i));
            }
        }
        Metric::Distances(d) => {
            for (i, row) in d.iter().enumerate() {
                if row.len() != n || row[i] != int(0) || (0..n).any(|j| d[j][i] != row[j] || row[j] < int(0)) {
                    return Err(H0Error::BadDistances(i));
                }
            }
        }
    }
    if !input.density.is_empty() && input.density.len() != n {
        return Err(H0Error::DensityLength { got: input.density.len(), expected: n });
    }
    Ok(())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

// Component index of each vertex (None when absent), and the count.
fn components(input: &BifiltrationInput, s: Rational, d: Rational) -> (Vec<Option<usize>>, usize) {
    let n = input.metric.len();
    let present: Vec<bool> = (0..n).map(|v| input.density.get(v).copied().unwrap_or(int(0)) <= d).collect();
    let mut parent: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in a + 1..n {
            if present[a] && present[b] && input.metric.within(a, b, s) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut label = vec![None; n];
    let mut roots: Vec<usize> = Vec::new();
    for v in 0..n {
        if present[v] {
            let root = find(&mut parent, v);
            let c = match roots.iter().position(|&x| x == root) {
                Some(c) => c,
                None => {
                    roots.push(root);
                    roots.len() - 1
                }
            };
            label[v] = Some(c);
        }
    }
    (label, roots.len())
}

/// The `H_0` module. When the two grids differ in length the shorter one
/// is padded by repeating its last value, which keeps the module constant
/// along that axis.
pub fn build_h0(field: PrimeField, alpha: Rational, input: &BifiltrationInput) -> Result<GridModule, H0Error> {
    check(input)?;
    let size = input.scale_grid.len().max(input.density_grid.len()) - 1;
    let at = |g: &[Rational], i: usize| g[i.min(g.len() - 1)];
    let grid = pnoise_core::gridmod::Grid::new(2, size);
    let labels: Vec<(Vec<Option<usize>>, usize)> = grid
        .points()
        .map(|v| components(input, at(&input.scale_grid, v[0]), at(&input.density_grid, v[1])))
        .collect();
    let dims = labels.iter().map(|l| l.1).collect();
    let mut edges = Vec::with_capacity(grid.len() * 2);
    for idx in 0..grid.len() {
        for axis in 0..2 {
            edges.push(grid.successor(idx, axis).map(|next| {
                let (from, rows) = (&labels[idx], &labels[next]);
                let mut m = Matrix::zeros(field, rows.1, from.1);
                for (v, c) in from.0.iter().enumerate() {
                    if let (Some(c), Some(t)) = (c, rows.0[v]) {
                        m.set(t, *c, 1);
                    }
                }
                m
            }));
        }
    }
    let f = GridModule::new(field, 2, alpha, size, dims, edges)?;
    f.validate()?;
    Ok(f)
}
