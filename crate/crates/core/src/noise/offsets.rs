use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{NoiseError, NoiseSpec};
use crate::exactalg::{ceil_div, Rational, System};
use crate::gridmod::{leq, Grid, GridPoint, RationalPoint};

/// Smallest `eps` at which an offset becomes available: available for
/// `eps > value`, and also at `eps == value` unless `strict`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Level {
    pub value: Rational,
    pub strict: bool,
}

/// Which members of an increasing family are switched on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    /// The `eps` component.
    AtMost(Rational),
    /// The union of the components strictly below `t`.
    Below(Rational),
    /// The intersection of the components strictly above `c`.
    JustAbove(Rational),
}

impl Level {
    pub fn closed(value: Rational) -> Self {
        Level { value, strict: false }
    }

    pub fn within(&self, th: Threshold) -> bool {
        match th {
            Threshold::AtMost(e) => self.value < e || (self.value == e && !self.strict),
            Threshold::Below(t) => self.value < t,
            Threshold::JustAbove(c) => self.value <= c,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Norm {
    Sup,
    V,
}

/// Variables `[c_0..c_k, w_0..w_r, eps]` with `w = sum c_j g_j` and `c >= 0`.
struct Layout<'a> {
    gens: &'a [RationalPoint],
    norm: Norm,
    r: usize,
}

impl<'a> Layout<'a> {
    fn of(spec: &'a NoiseSpec) -> Option<Self> {
        match spec {
            NoiseSpec::Cone(c) => Some(Layout { gens: c.generators(), norm: Norm::Sup, r: c.r() }),
            NoiseSpec::VNorm(v) => Some(Layout { gens: v.vectors(), norm: Norm::V, r: v.r() }),
            _ => None,
        }
    }

    fn k(&self) -> usize {
        self.gens.len()
    }
    fn nvars(&self) -> usize {
        self.k() + self.r + 1
    }
    fn c(&self, j: usize) -> usize {
        j
    }
    fn w(&self, i: usize) -> usize {
        self.k() + i
    }
    fn eps(&self) -> usize {
        self.k() + self.r
    }

    fn unit(&self, var: usize, c: Rational) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.nvars()];
        v[var] = c;
        v
    }

    fn pair(&self, a: usize, ca: Rational, b: usize, cb: Rational) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.nvars()];
        v[a] += ca;
        v[b] += cb;
        v
    }

    /// Cone membership of `w` plus the norm bound `||w|| <= eps`.
    fn base(&self) -> System {
        let one = Rational::one();
        let mut s = System::new(self.nvars());
        for i in 0..self.r {
            let mut row = self.unit(self.w(i), one);
            for j in 0..self.k() {
                row[self.c(j)] -= self.gens[j][i];
            }
            s.eq(&row, Rational::zero());
        }
        for j in 0..self.k() {
            s.ge(&self.unit(self.c(j), one), Rational::zero());
        }
        match self.norm {
            Norm::Sup => {
                for i in 0..self.r {
                    s.ge(&self.pair(self.eps(), one, self.w(i), -one), Rational::zero());
                }
            }
            Norm::V => {
                for j in 0..self.k() {
                    s.ge(&self.pair(self.eps(), one, self.c(j), -one), Rational::zero());
                }
            }
        }
        s.ge(&self.unit(self.eps(), one), Rational::zero());
        s
    }

    /// `alpha m_i <= w_i`, and `w_i < alpha (m_i + 1)` unless `m_i` is
    /// clamped at the box edge `clamp`.
    fn add_cell(&self, s: &mut System, alpha: Rational, m: &[usize], clamp: Option<usize>) {
        let one = Rational::one();
        for i in 0..self.r {
            let lo = alpha * Rational::from_integer(m[i] as i64);
            s.ge(&self.unit(self.w(i), one), -lo);
            if clamp != Some(m[i]) {
                s.gt(&self.unit(self.w(i), -one), lo + alpha);
            }
        }
    }

    fn fix_eps(&self, s: &mut System, eps: Rational) {
        s.eq(&self.unit(self.eps(), Rational::one()), -eps);
    }
}

/// The availability level of every clamped lattice offset in `{0..n}^r`,
/// where offset `m` with `m_i = n` stands for all offsets reaching past the
/// box along axis `i`.
#[derive(Clone, Debug)]
pub(crate) struct OffsetTable {
    grid: Grid,
    levels: Vec<Option<Level>>,
}

impl OffsetTable {
    pub(crate) fn build(spec: &NoiseSpec, alpha: Rational, n: usize) -> Self {
        let lay = Layout::of(spec).expect("cone-like spec");
        let grid = Grid::new(lay.r, n);
        let levels = grid
            .points()
            .map(|m| {
                let mut s = lay.base();
                lay.add_cell(&mut s, alpha, &m, Some(n));
                s.project_onto(lay.eps()).map(|iv| {
                    let b = iv.lower.expect("eps >= 0 is a lower bound");
                    Level { value: b.value, strict: b.strict }
                })
            })
            .collect();
        OffsetTable { grid, levels }
    }

    pub(crate) fn available(&self, th: Threshold) -> Vec<GridPoint> {
        self.grid
            .points()
            .zip(&self.levels)
            .filter(|(_, l)| l.is_some_and(|l| l.within(th)))
            .map(|(m, _)| m)
            .collect()
    }

    pub(crate) fn maxima(&self, th: Threshold) -> Vec<GridPoint> {
        maximal_elements(self.available(th))
    }

    pub(crate) fn candidates(&self) -> Vec<Rational> {
        let mut c: Vec<Rational> = self.levels.iter().flatten().map(|l| l.value).collect();
        c.sort();
        c.dedup();
        c
    }

    pub(crate) fn level(&self, m: &[usize]) -> Option<Level> {
        self.levels[self.grid.index(m)]
    }
}

pub(crate) fn maximal_elements(pts: Vec<GridPoint>) -> Vec<GridPoint> {
    pts.iter()
        .filter(|a| !pts.iter().any(|b| b != *a && leq(a, b)))
        .cloned()
        .collect()
}

/// Lattice offsets `m` in `{0..ceil(eps/alpha)}^r` such that some `w` in the
/// cone with norm exactly `eps` has `floor(w_i / alpha) = m_i` for all `i`.
pub fn feasible_offsets(spec: &NoiseSpec, eps: Rational, alpha: Rational, r: usize) -> Result<Vec<GridPoint>, NoiseError> {
    let lay = Layout::of(spec).ok_or(NoiseError::UnsupportedNoise)?;
    if lay.r != r {
        return Err(NoiseError::DimensionMismatch { spec: lay.r, module: r });
    }
    if eps < Rational::zero() {
        return Err(NoiseError::InvalidSpec(alloc::string::String::from("eps must be non-negative")));
    }
    let top = ceil_div(eps, alpha) as usize;
    let grid = Grid::new(r, top);
    let one = Rational::one();
    // For the V-norm, `||w||_V >= eps` means `w` is outside the projection of
    // `{ sum b_j v_j : 0 <= b_j < eps }`, a union of complemented half-spaces.
    let small_ball = (lay.norm == Norm::V).then(|| {
        let mut q = System::new(lay.nvars());
        for i in 0..r {
            let mut row = lay.unit(lay.w(i), one);
            for j in 0..lay.k() {
                row[lay.c(j)] -= lay.gens[j][i];
            }
            q.eq(&row, Rational::zero());
        }
        for j in 0..lay.k() {
            q.ge(&lay.unit(lay.c(j), one), Rational::zero());
            q.gt(&lay.unit(lay.c(j), -one), eps);
        }
        let keep: Vec<bool> = (0..lay.nvars()).map(|v| v >= lay.k() && v < lay.eps()).collect();
        q.project(&keep)
    });
    let mut out = Vec::new();
    for m in grid.points() {
        let mut s = lay.base();
        lay.add_cell(&mut s, alpha, &m, None);
        lay.fix_eps(&mut s, eps);
        let hit = match lay.norm {
            Norm::Sup => (0..r).any(|i| {
                let mut t = s.clone();
                t.ge(&lay.pair(lay.w(i), one, lay.eps(), -one), Rational::zero());
                t.is_feasible()
            }),
            Norm::V => match small_ball.as_ref().expect("computed for V") {
                None => s.is_feasible(),
                Some(rows) => rows.iter().any(|h| {
                    let mut t = s.clone();
                    t.add(&h.negated());
                    t.is_feasible()
                }),
            },
        };
        if hit {
            out.push(m);
        }
    }
    Ok(out)
}

/// Whether the `eps` component is closed under direct sums. For cones this
/// holds exactly when the coordinatewise supremum of the norm-`eps` ball lies
/// in the cone; domain noise always is, dimension noise only where
/// `n_eps = 0`, and intersections are reported closed when every part is.
pub fn closed_under_sums(spec: &NoiseSpec, eps: Rational) -> bool {
    match spec {
        NoiseSpec::VNorm(_) => true,
        NoiseSpec::Cone(_) => eps.is_zero() || cone_has_top(spec),
        NoiseSpec::Domain(_) => true,
        NoiseSpec::Dimension(d) => d.n_at(eps) == super::DimBound::Finite(0),
        NoiseSpec::Intersection(ps) => ps.iter().all(|p| closed_under_sums(p, eps)),
    }
}

/// Closedness for every `eps` at once; this is the condition that makes
/// `max_noise_below` well defined.
pub fn closed_everywhere(spec: &NoiseSpec) -> bool {
    match spec {
        NoiseSpec::Dimension(d) => d.steps().iter().all(|(_, n)| *n == super::DimBound::Finite(0)),
        NoiseSpec::Intersection(ps) => ps.iter().all(closed_everywhere),
        _ => closed_under_sums(spec, Rational::one()),
    }
}

fn cone_has_top(spec: &NoiseSpec) -> bool {
    let lay = Layout::of(spec).expect("cone");
    let one = Rational::one();
    let mut top = Vec::with_capacity(lay.r);
    for i in 0..lay.r {
        let mut s = lay.base();
        lay.fix_eps(&mut s, one);
        let Some(iv) = s.project_onto(lay.w(i)) else { return false };
        top.push(iv.upper.expect("bounded by the norm").value);
    }
    let mut s = lay.base();
    lay.fix_eps(&mut s, one);
    for (i, &x) in top.iter().enumerate() {
        s.eq(&lay.unit(lay.w(i), one), -x);
    }
    s.is_feasible()
}
