use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::Zero;

use super::offsets::{closed_everywhere, closed_under_sums, Level, OffsetTable, Threshold};
use super::spec::{DimBound, DimensionNoise, DomainNoise, Region};
use super::{NoiseError, NoiseSpec};
use crate::exactalg::{elements, Rational, Subspace};
use crate::gridmod::{leq, GridModule, GridPoint};
use crate::structure::Submodule;

/// Per-point element cap for membership by enumeration.
pub const ELEMENT_CAP: u64 = 1 << 16;

/// `inf { eps : F in S_eps }`, recording whether the infimum is attained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseSize {
    Attained(Rational),
    /// `F` is in every component above the value but not at it.
    Infimum(Rational),
    Infinite,
}

impl NoiseSize {
    pub fn zero() -> Self {
        NoiseSize::Attained(Rational::zero())
    }

    pub fn value(&self) -> Option<Rational> {
        match self {
            NoiseSize::Attained(q) | NoiseSize::Infimum(q) => Some(*q),
            NoiseSize::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, NoiseSize::Infinite)
    }

    /// Membership in the `eps` component.
    pub fn admits(&self, eps: Rational) -> bool {
        match self {
            NoiseSize::Attained(q) => *q <= eps,
            NoiseSize::Infimum(q) => *q < eps,
            NoiseSize::Infinite => false,
        }
    }

    /// Membership in some component strictly below `t`.
    pub fn below(&self, t: Rational) -> bool {
        self.value().is_some_and(|q| q < t)
    }

    /// Size of a composite whose parts have these sizes, e.g. the budget of
    /// an equivalence with the given kernel and cokernel sizes.
    pub fn plus(&self, other: &NoiseSize) -> NoiseSize {
        match (self, other) {
            (NoiseSize::Infinite, _) | (_, NoiseSize::Infinite) => NoiseSize::Infinite,
            (NoiseSize::Attained(a), NoiseSize::Attained(b)) => NoiseSize::Attained(a + b),
            (a, b) => NoiseSize::Infimum(a.value().expect("finite") + b.value().expect("finite")),
        }
    }

    fn key(&self) -> (u8, Rational, u8) {
        match self {
            NoiseSize::Attained(q) => (0, *q, 0),
            NoiseSize::Infimum(q) => (0, *q, 1),
            NoiseSize::Infinite => (1, Rational::zero(), 0),
        }
    }
}

impl PartialOrd for NoiseSize {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NoiseSize {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for NoiseSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseSize::Attained(q) => write!(f, "{q}"),
            NoiseSize::Infimum(q) => write!(f, "{q}+"),
            NoiseSize::Infinite => write!(f, "inf"),
        }
    }
}

/// For each lattice point and each nonzero element of `F(v)`, a maximal
/// available offset whose shift map kills it, or `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OffsetCertificate {
    pub entries: Vec<(GridPoint, Vec<(Vec<u32>, Option<GridPoint>)>)>,
}

impl OffsetCertificate {
    pub fn is_complete(&self) -> bool {
        self.entries.iter().all(|(_, xs)| xs.iter().all(|(_, m)| m.is_some()))
    }
}

/// A noise spec specialised to the lattice and box of a module, reusable
/// for every module on the same lattice.
#[derive(Clone, Debug)]
pub struct NoiseEvaluator<'a> {
    spec: &'a NoiseSpec,
    kind: Kind<'a>,
}

#[derive(Clone, Debug)]
enum Kind<'a> {
    Offsets(OffsetTable),
    Domain(&'a DomainNoise, Rational, usize),
    Dimension(&'a DimensionNoise),
    Intersection(Vec<NoiseEvaluator<'a>>),
}

impl<'a> NoiseEvaluator<'a> {
    pub fn new(spec: &'a NoiseSpec, like: &GridModule) -> Result<Self, NoiseError> {
        if let Some(r) = spec.r() {
            if r != like.r() {
                return Err(NoiseError::DimensionMismatch { spec: r, module: like.r() });
            }
        }
        let kind = match spec {
            NoiseSpec::Cone(_) | NoiseSpec::VNorm(_) => Kind::Offsets(OffsetTable::build(spec, like.alpha(), like.size())),
            NoiseSpec::Domain(d) => Kind::Domain(d, like.alpha(), like.size()),
            NoiseSpec::Dimension(d) => Kind::Dimension(d),
            NoiseSpec::Intersection(ps) => {
                Kind::Intersection(ps.iter().map(|p| NoiseEvaluator::new(p, like)).collect::<Result<_, _>>()?)
            }
        };
        Ok(NoiseEvaluator { spec, kind })
    }

    pub fn spec(&self) -> &NoiseSpec {
        self.spec
    }

    /// Every value at which membership can change, including 0, ascending.
    pub fn candidates(&self) -> Vec<Rational> {
        let mut c = alloc::vec![Rational::zero()];
        match &self.kind {
            Kind::Offsets(t) => c.extend(t.candidates()),
            Kind::Domain(d, _, _) => c.extend(d.steps().iter().map(|(t, _)| *t)),
            Kind::Dimension(d) => c.extend(d.steps().iter().map(|(t, _)| *t)),
            Kind::Intersection(ps) => {
                for p in ps {
                    c.extend(p.candidates());
                }
            }
        }
        c.sort();
        c.dedup();
        c
    }

    /// Maximal available lattice offsets at a threshold (cone-like specs).
    pub fn maximal_offsets(&self, th: Threshold) -> Option<Vec<GridPoint>> {
        match &self.kind {
            Kind::Offsets(t) => Some(t.maxima(th)),
            _ => None,
        }
    }

    /// Availability level of a clamped offset (cone-like specs).
    pub fn offset_level(&self, m: &[usize]) -> Option<Level> {
        match &self.kind {
            Kind::Offsets(t) => t.level(m),
            _ => None,
        }
    }

    pub fn member(&self, f: &GridModule, th: Threshold) -> Result<bool, NoiseError> {
        match &self.kind {
            Kind::Offsets(t) => offsets_member(f, &t.maxima(th)),
            Kind::Domain(d, alpha, n) => {
                let region = domain_region(d, th);
                Ok(f.grid().points().all(|v| f.dim(&v) == 0 || cell_inside(&region, *alpha, *n, &v)))
            }
            Kind::Dimension(d) => Ok(match dimension_bound(d, th) {
                DimBound::Unbounded => true,
                DimBound::Finite(n) => f.max_dim() <= n,
            }),
            Kind::Intersection(ps) => {
                for p in ps {
                    if !p.member(f, th)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    pub fn noise_size(&self, f: &GridModule) -> Result<NoiseSize, NoiseError> {
        if f.is_zero() {
            return Ok(NoiseSize::zero());
        }
        for c in self.candidates() {
            if self.member(f, Threshold::AtMost(c))? {
                return Ok(NoiseSize::Attained(c));
            }
            if self.member(f, Threshold::JustAbove(c))? {
                return Ok(NoiseSize::Infimum(c));
            }
        }
        Ok(NoiseSize::Infinite)
    }

    /// The largest subfunctor of `f` lying in the components selected by
    /// `th`, among subfunctors on the lattice of `f`.
    pub fn max_submodule(&self, f: &GridModule, th: Threshold) -> Result<Submodule, NoiseError> {
        let closed = match th {
            Threshold::AtMost(e) => closed_under_sums(self.spec, e),
            _ => closed_everywhere(self.spec) || threshold_closed(self.spec, th),
        };
        if !closed {
            return Err(NoiseError::NotClosedUnderSums);
        }
        match &self.kind {
            Kind::Offsets(t) => {
                let maxima = t.maxima(th);
                let m = match maxima.as_slice() {
                    [] => return Ok(Submodule::zero(f)),
                    [m] => m,
                    _ => return Err(NoiseError::NotClosedUnderSums),
                };
                let spaces = f.grid().points().map(|v| Subspace::kernel_of(&f.shift_map(&v, m))).collect();
                Ok(Submodule::new(f.clone(), spaces).expect("shift kernels form a subfunctor"))
            }
            Kind::Domain(d, alpha, n) => {
                let region = domain_region(d, th);
                let g = f.grid();
                let bad: Vec<GridPoint> = g.points().filter(|u| !cell_inside(&region, *alpha, *n, u)).collect();
                let spaces = g
                    .points()
                    .map(|v| {
                        let mut s = Subspace::full(f.field(), f.dim(&v));
                        for u in bad.iter().filter(|u| leq(&v, u)) {
                            s = s.intersect(&Subspace::kernel_of(&f.evaluate_map(&v, u).expect("comparable")));
                        }
                        s
                    })
                    .collect();
                Ok(Submodule::new(f.clone(), spaces).expect("kernels to bad cells form a subfunctor"))
            }
            Kind::Dimension(d) => match dimension_bound(d, th) {
                DimBound::Finite(0) => Ok(Submodule::zero(f)),
                _ => Err(NoiseError::NotClosedUnderSums),
            },
            Kind::Intersection(ps) => {
                let mut acc = Submodule::full(f);
                for p in ps {
                    acc = acc.intersect(&p.max_submodule(f, th)?);
                }
                Ok(acc)
            }
        }
    }

    pub fn certificate(&self, f: &GridModule, eps: Rational) -> Result<OffsetCertificate, NoiseError> {
        let Kind::Offsets(t) = &self.kind else { return Err(NoiseError::UnsupportedNoise) };
        let maxima = t.maxima(Threshold::AtMost(eps));
        let mut entries = Vec::new();
        for v in f.grid().points() {
            let space = Subspace::full(f.field(), f.dim(&v));
            let elts = elements(&space, ELEMENT_CAP).ok_or(NoiseError::ElementEnumerationTooLarge { cap: ELEMENT_CAP })?;
            let maps: Vec<_> = maxima.iter().map(|m| f.shift_map(&v, m)).collect();
            let xs = elts
                .into_iter()
                .filter(|x| x.iter().any(|&c| c != 0))
                .map(|x| {
                    let m = maxima.iter().zip(&maps).find(|(_, a)| a.apply(&x).iter().all(|&c| c == 0)).map(|(m, _)| m.clone());
                    (x, m)
                })
                .collect();
            entries.push((v, xs));
        }
        Ok(OffsetCertificate { entries })
    }
}

/// For thresholds other than `AtMost`, closedness of the components involved.
fn threshold_closed(spec: &NoiseSpec, th: Threshold) -> bool {
    match spec {
        NoiseSpec::Dimension(d) => dimension_bound(d, th) == DimBound::Finite(0),
        NoiseSpec::Intersection(ps) => ps.iter().all(|p| threshold_closed(p, th)),
        _ => closed_everywhere(spec),
    }
}

fn offsets_member(f: &GridModule, maxima: &[GridPoint]) -> Result<bool, NoiseError> {
    let g = f.grid();
    if let [m] = maxima {
        return Ok(g.points().all(|v| f.dim(&v) == 0 || f.shift_map(&v, m).is_zero()));
    }
    for v in g.points() {
        let d = f.dim(&v);
        if d == 0 {
            continue;
        }
        let kernels: Vec<Subspace> = maxima.iter().map(|m| Subspace::kernel_of(&f.shift_map(&v, m))).collect();
        if kernels.iter().any(Subspace::is_full) {
            continue;
        }
        let space = Subspace::full(f.field(), d);
        let elts = elements(&space, ELEMENT_CAP).ok_or(NoiseError::ElementEnumerationTooLarge { cap: ELEMENT_CAP })?;
        if !elts.iter().all(|x| kernels.iter().any(|k| k.contains(x))) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn domain_region(d: &DomainNoise, th: Threshold) -> Region {
    d.steps()
        .iter().rfind(|(t, _)| Level::closed(*t).within(th))
        .map(|(_, reg)| reg.clone())
        .unwrap_or_default()
}

fn dimension_bound(d: &DimensionNoise, th: Threshold) -> DimBound {
    d.steps()
        .iter().rfind(|(t, _)| Level::closed(*t).within(th))
        .map_or(DimBound::Finite(0), |(_, n)| *n)
}

/// Whether the cell of lattice point `v` lies inside the region.
fn cell_inside(region: &Region, alpha: Rational, n: usize, v: &[usize]) -> bool {
    let lo: Vec<Rational> = v.iter().map(|&x| alpha * Rational::from_integer(x as i64)).collect();
    let hi: Vec<Option<Rational>> = v
        .iter()
        .map(|&x| (x < n).then(|| alpha * Rational::from_integer(x as i64 + 1)))
        .collect();
    region.contains_box(&lo, &hi)
}
