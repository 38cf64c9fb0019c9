use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::function::{FeatureCountingFunction, StepStart};
use super::FcfError;
use crate::barcode1::{decompose, reconstruct, Barcode};
use crate::exactalg::{projective_points, subspaces_between, Rational, Subspace};
use crate::gridmod::{leq, GridModule, GridPoint};
use crate::noise::{closed_everywhere, NoiseEvaluator, NoiseSpec, Threshold};
use crate::structure::{betti0, minimal_cover, rank, span_submodule, Submodule};

/// Exhaustive search refuses modules with more than `2^24` elements in total.
pub const EXHAUSTIVE_CAP_BITS: u32 = 24;
/// Per-point cap on the linear combinations used by the orbit engine.
pub const ORBIT_COMBINATION_CAP: u64 = 1 << 12;
/// Cap on the generator subsets tried by the orbit engine for one `t`.
pub const ORBIT_SUBSET_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Every subfunctor of `F`; exact for cone noise.
    Exhaustive,
    /// Subfunctors spanned by combinations of forward translates of
    /// minimal generators; an upper bound.
    GeneratorOrbit,
    /// Exhaustive when the module is within the search cap, otherwise the
    /// generator orbit.
    Auto,
}

/// A smallest-rank subfunctor found for one `t`.
#[derive(Clone, Debug)]
pub struct Minimizer {
    pub t: Rational,
    pub rank: usize,
    pub submodule: Submodule,
    pub exact: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BarSample {
    pub t: Rational,
    pub value: usize,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct BarSearch {
    pub function: FeatureCountingFunction,
    pub samples: Vec<BarSample>,
}

impl BarSearch {
    pub fn is_exact(&self) -> bool {
        self.samples.iter().all(|s| s.exact)
    }
}

/// `bar(F)_t = 0` exactly when `F` is in some component below `t`.
pub fn bar_zero_check(spec: &NoiseSpec, f: &GridModule, t: Rational) -> Result<bool, FcfError> {
    Ok(NoiseEvaluator::new(spec, f)?.noise_size(f)?.below(t))
}

/// The feature counting function of a one-parameter module from its
/// barcode: `bar(F)_t` counts the summands of noise size at least `t`.
pub fn bar_r1(spec: &NoiseSpec, f: &GridModule) -> Result<FeatureCountingFunction, FcfError> {
    if f.r() != 1 {
        return Err(FcfError::NotOneDimensional(f.r()));
    }
    if !closed_everywhere(spec) {
        return Err(FcfError::Noise(crate::noise::NoiseError::NotClosedUnderSums));
    }
    let eval = NoiseEvaluator::new(spec, f)?;
    let code = decompose(f)?;
    let mut sizes = Vec::with_capacity(code.len());
    for (s, e) in code.intervals() {
        let single = match e {
            Some(e) => Barcode::new(code.alpha, vec![crate::gridmod::Bar { start: vec![s], end: Some(vec![e]) }], vec![]),
            None => Barcode::new(code.alpha, vec![], vec![vec![s]]),
        };
        let m = reconstruct(&single, f.field(), f.size())?;
        sizes.push(eval.noise_size(&m)?);
    }
    let mut values: Vec<Rational> = sizes.iter().filter_map(|s| s.value()).collect();
    values.push(Rational::zero());
    values.sort();
    values.dedup();
    let mut steps = vec![(StepStart::Closed(Rational::zero()), sizes.len())];
    for c in values {
        let alive = sizes.iter().filter(|s| s.value().is_none_or(|q| q > c)).count();
        steps.push((StepStart::Open(c), alive));
    }
    Ok(FeatureCountingFunction::new(steps).expect("counts shrink as t grows"))
}

/// `bar(F)` from subfunctor searches at one point in each interval between
/// consecutive noise-size candidates, plus the caller's `t` values.
pub fn bar_search(spec: &NoiseSpec, f: &GridModule, t_values: &[Rational], engine: Engine) -> Result<BarSearch, FcfError> {
    let eval = NoiseEvaluator::new(spec, f)?;
    let cands = eval.candidates();
    let mut reps: Vec<Rational> = cands.iter().skip(1).copied().collect();
    reps.push(*cands.last().expect("0 is a candidate") + Rational::one());
    let mut steps = vec![(StepStart::Closed(Rational::zero()), rank(f))];
    let mut flags = vec![true];
    let mut prev = rank(f);
    for (j, &t) in reps.iter().enumerate() {
        let m = minimizer_with(&eval, f, t, engine)?;
        prev = prev.min(m.rank);
        steps.push((StepStart::Open(cands[j]), prev));
        flags.push(m.exact);
    }
    let interval_of = |t: Rational| -> usize {
        if t.is_zero() {
            0
        } else {
            1 + cands.iter().skip(1).filter(|&&c| c < t).count()
        }
    };
    let mut samples: Vec<BarSample> = Vec::new();
    for (k, (s, v)) in steps.iter().enumerate() {
        let t = if k == 0 { Rational::zero() } else { reps[k - 1] };
        let _ = s;
        samples.push(BarSample { t, value: *v, exact: flags[k] });
    }
    for &t in t_values {
        let k = interval_of(t);
        samples.push(BarSample { t, value: steps[k].1, exact: flags[k] });
    }
    samples.sort_by_key(|a| a.t);
    samples.dedup_by(|a, b| a.t == b.t);
    let function = FeatureCountingFunction::new(steps).expect("running minimum is non-increasing");
    Ok(BarSearch { function, samples })
}

/// A smallest-rank subfunctor `G` of `F` with `coker(G -> F)` in a noise
/// component below `t`.
pub fn min_rank_submodule(spec: &NoiseSpec, f: &GridModule, t: Rational, engine: Engine) -> Result<Minimizer, FcfError> {
    let eval = NoiseEvaluator::new(spec, f)?;
    minimizer_with(&eval, f, t, engine)
}

pub(crate) fn minimizer_with(eval: &NoiseEvaluator<'_>, f: &GridModule, t: Rational, engine: Engine) -> Result<Minimizer, FcfError> {
    if top_is_rigid(eval, f, t)? {
        return Ok(Minimizer { t, rank: rank(f), submodule: Submodule::full(f), exact: true });
    }
    let engine = match engine {
        Engine::Auto if exhaustive_fits(f) => Engine::Exhaustive,
        Engine::Auto => Engine::GeneratorOrbit,
        e => e,
    };
    match engine {
        Engine::Exhaustive => {
            let (rank, submodule) = exhaustive(eval, f, t)?;
            Ok(Minimizer { t, rank, submodule, exact: eval.spec().is_cone_like() })
        }
        Engine::GeneratorOrbit => {
            if !eval.spec().is_cone_like() {
                return Err(FcfError::UnsupportedNoise);
            }
            let (rank, submodule) = orbit(eval, f, t)?;
            Ok(Minimizer { t, rank, submodule, exact: false })
        }
        Engine::Auto => unreachable!("resolved above"),
    }
}

/// True when no simple module at a generator grade is noise below `t`.
/// Then no nonzero quotient of `F / rad F` is noise either, and since
/// `F -> F / rad F` is onto, `bar(F)_t = rank(F)`.
fn top_is_rigid(eval: &NoiseEvaluator<'_>, f: &GridModule, t: Rational) -> Result<bool, FcfError> {
    for g in betti0(f).into_keys() {
        let simple = GridModule::indicator(f.field(), f.r(), f.alpha(), f.size(), |v| v == g.as_slice())?;
        if eval.member(&simple, Threshold::Below(t))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn coker_below(eval: &NoiseEvaluator<'_>, sub: &Submodule, t: Rational) -> Result<bool, FcfError> {
    let (q, _) = sub.quotient();
    Ok(eval.member(&q, Threshold::Below(t))?)
}

/// Whether the exhaustive engine accepts `f`.
pub fn exhaustive_fits(f: &GridModule) -> bool {
    f.field().count(f.total_dim()).is_some_and(|n| n <= 1u64 << EXHAUSTIVE_CAP_BITS)
}

/// Depth-first search over subfunctors in lattice order. Each point chooses a
/// subspace containing the images from its predecessors; for cone noise with
/// a single dominating offset `m`, it must also contain the images of
/// `F(v <= v + m)` landing there, which every valid subfunctor does.
fn exhaustive(eval: &NoiseEvaluator<'_>, f: &GridModule, t: Rational) -> Result<(usize, Submodule), FcfError> {
    if !exhaustive_fits(f) {
        return Err(FcfError::SearchSpaceTooLarge { total_dim: f.total_dim() });
    }
    let g = f.grid();
    let k = f.field();
    let mut req: Vec<Subspace> = f.dims().iter().map(|&d| Subspace::zero(k, d)).collect();
    if let Some(maxima) = eval.maximal_offsets(Threshold::Below(t)) {
        if let [m] = maxima.as_slice() {
            for v in g.points() {
                let u = g.shift(&v, m);
                let ui = g.index(&u);
                let img = Subspace::image_of(&f.shift_map(&v, m));
                req[ui] = req[ui].sum(&img);
            }
        }
    }
    let full = Submodule::full(f);
    let mut search = Dfs { f, eval, t, req, best: (rank(f), f.total_dim(), full) };
    let mut spaces = Vec::with_capacity(g.len());
    search.go(0, &mut spaces, 0, 0)?;
    Ok((search.best.0, search.best.2))
}

struct Dfs<'a, 'b> {
    f: &'a GridModule,
    eval: &'a NoiseEvaluator<'b>,
    t: Rational,
    req: Vec<Subspace>,
    best: (usize, usize, Submodule),
}

impl Dfs<'_, '_> {
    fn go(&mut self, idx: usize, spaces: &mut Vec<Subspace>, rank: usize, total: usize) -> Result<(), FcfError> {
        let g = self.f.grid();
        if idx == g.len() {
            let sub = Submodule::new(self.f.clone(), spaces.clone()).expect("search keeps closure");
            if coker_below(self.eval, &sub, self.t)? {
                self.best = (rank, total, sub);
            }
            return Ok(());
        }
        let k = self.f.field();
        let d = self.f.dim_at(idx);
        let mut lower = Subspace::zero(k, d);
        for axis in 0..g.r() {
            if let Some(p) = g.predecessor(idx, axis) {
                lower = lower.sum(&spaces[p].image(&self.f.edge(p, axis)));
            }
        }
        let floor = lower.sum(&self.req[idx]);
        let choices = subspaces_between(&floor, &Subspace::full(k, d), u64::MAX)
            .ok_or(FcfError::SearchSpaceTooLarge { total_dim: self.f.total_dim() })?;
        for s in choices {
            let r2 = rank + s.dim() - lower.dim();
            let d2 = total + s.dim();
            if (r2, d2) >= (self.best.0, self.best.1) {
                break;
            }
            spaces.push(s);
            self.go(idx + 1, spaces, r2, d2)?;
            spaces.pop();
        }
        Ok(())
    }
}

/// Element pool of the orbit engine: at `u`, the images of minimal
/// generators `g` with `grade(g) <= u <= grade(g) + m` for an offset `m`
/// available below `t`, with all their linear combinations.
fn orbit(eval: &NoiseEvaluator<'_>, f: &GridModule, t: Rational) -> Result<(usize, Submodule), FcfError> {
    let g = f.grid();
    let k = f.field();
    if eval.member(f, Threshold::Below(t))? {
        return Ok((0, Submodule::zero(f)));
    }
    let gens = minimal_cover(f).generators;
    let maxima = eval.maximal_offsets(Threshold::Below(t)).unwrap_or_default();
    let mut seeds: Vec<(GridPoint, Vec<u32>)> = Vec::new();
    for u in g.points() {
        let imgs: Vec<Vec<u32>> = gens
            .iter()
            .filter(|(v, _)| leq(v, &u) && maxima.iter().any(|m| leq(&u, &g.shift(v, m))))
            .map(|(v, x)| f.evaluate_map(v, &u).expect("comparable").apply(x))
            .collect();
        let pool = Subspace::span_vectors(k, f.dim(&u), &imgs);
        match projective_points(&pool, ORBIT_COMBINATION_CAP) {
            Some(pts) => seeds.extend(pts.into_iter().map(|x| (u.clone(), x))),
            None => seeds.extend(pool.basis_vectors().into_iter().map(|x| (u.clone(), x))),
        }
    }
    let mut best = (rank(f), Submodule::full(f));
    let mut tried = 0usize;
    let mut size = 1;
    while size < best.0 && size <= seeds.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            tried += 1;
            if tried > ORBIT_SUBSET_CAP {
                return Ok((best.0, best.1));
            }
            let chosen: Vec<(GridPoint, Vec<u32>)> = idx.iter().map(|&i| seeds[i].clone()).collect();
            let sub = span_submodule(f, &chosen).expect("seeds lie in F");
            let r = sub.rank();
            if r < best.0 && coker_below(eval, &sub, t)? {
                best = (r, sub);
            }
            if !next_combination(&mut idx, seeds.len()) {
                break;
            }
        }
        size += 1;
    }
    Ok((best.0, best.1))
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
