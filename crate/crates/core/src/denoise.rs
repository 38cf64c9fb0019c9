//! Denoising: replacing `F` at scale `t` by a module of rank `bar(F)_t`
//! that is close to it.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::exactalg::Rational;
use crate::fcf::{bar_r1, min_rank_submodule, Engine, FcfError};
use crate::gridmod::{GridModule, GridPoint, RationalPoint};
use crate::noise::{closed_everywhere, max_noise_below, NoiseError, NoiseEvaluator, NoiseSpec, Threshold};
use crate::structure::{betti_diagram, rank, span_submodule, Submodule};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DenoiseError {
    #[error(transparent)]
    Fcf(#[from] FcfError),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error("Betti diagram at t = {t} is not contained in the one at s = {s}")]
    NotNested { s: Rational, t: Rational },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Quotient,
    MinimalSubfunctor,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Quotient => "quotient",
            Mode::MinimalSubfunctor => "subfunctor",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Denoising {
    pub t: Rational,
    pub module: GridModule,
    pub mode: Mode,
    /// Rank agrees with an exactly computed `bar(F)_t`.
    pub certified: bool,
    /// The noise that was divided out, or the chosen subfunctor.
    pub witness: Submodule,
}

impl Denoising {
    pub fn rank(&self) -> usize {
        rank(&self.module)
    }
}

/// `coker(F[S_{<t}] -> F)`.
pub fn quotient_denoise(spec: &NoiseSpec, f: &GridModule, t: Rational) -> Result<Denoising, DenoiseError> {
    let noise = max_noise_below(spec, f, t)?;
    let (module, _) = noise.quotient();
    let exact = exact_bar(spec, f, t)?;
    let certified = exact == Some(rank(&module));
    Ok(Denoising { t, module, mode: Mode::Quotient, certified, witness: noise })
}

/// `bar(F)_t` when it can be computed exactly.
fn exact_bar(spec: &NoiseSpec, f: &GridModule, t: Rational) -> Result<Option<usize>, DenoiseError> {
    if f.r() == 1 && closed_everywhere(spec) {
        return Ok(Some(bar_r1(spec, f)?.evaluate(t)));
    }
    match min_rank_submodule(spec, f, t, Engine::Exhaustive) {
        Ok(m) if m.exact => Ok(Some(m.rank)),
        Ok(_) | Err(FcfError::SearchSpaceTooLarge { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// A smallest-rank subfunctor of `F` whose cokernel is noise below `t`,
/// shrunk while some generator can be dropped or pushed one step forward.
pub fn subfunctor_denoise(spec: &NoiseSpec, f: &GridModule, t: Rational, engine: Engine) -> Result<Denoising, DenoiseError> {
    let found = min_rank_submodule(spec, f, t, engine)?;
    let eval = NoiseEvaluator::new(spec, f)?;
    let witness = shrink(&eval, f, found.submodule, t)?;
    let (module, _) = witness.to_module();
    Ok(Denoising { t, module, mode: Mode::MinimalSubfunctor, certified: found.exact, witness })
}

fn shrink(eval: &NoiseEvaluator<'_>, f: &GridModule, sub: Submodule, t: Rational) -> Result<Submodule, DenoiseError> {
    let target_rank = sub.rank();
    let g = f.grid();
    let mut cur = sub;
    'outer: loop {
        let gens = cur.generators();
        for i in 0..gens.len() {
            let mut moves: Vec<Vec<(GridPoint, Vec<u32>)>> = Vec::new();
            let mut rest = gens.clone();
            let (v, x) = rest.remove(i);
            moves.push(rest.clone());
            let idx = g.index(&v);
            for axis in 0..f.r() {
                if g.successor(idx, axis).is_some() {
                    let mut w = v.clone();
                    w[axis] += 1;
                    let y = f.edge(idx, axis).apply(&x);
                    if y.iter().any(|&c| c != 0) {
                        let mut m = rest.clone();
                        m.push((w, y));
                        moves.push(m);
                    }
                }
            }
            for m in moves {
                let cand = span_submodule(f, &m).expect("vectors lie in F");
                if cand.rank() > target_rank || cand == cur {
                    continue;
                }
                let (q, _) = cand.quotient();
                if eval.member(&q, Threshold::Below(t))? {
                    cur = cand;
                    continue 'outer;
                }
            }
        }
        return Ok(cur);
    }
}

pub type BettiDiagram = BTreeMap<RationalPoint, usize>;

/// Betti diagrams of the denoised modules at each `t`, in the given order.
/// In quotient mode the diagrams must shrink as `t` grows.
pub fn denoising_betti_sequence(
    spec: &NoiseSpec,
    f: &GridModule,
    t_values: &[Rational],
    mode: Mode,
    engine: Engine,
) -> Result<Vec<BettiDiagram>, DenoiseError> {
    let mut out = Vec::with_capacity(t_values.len());
    for &t in t_values {
        let d = match mode {
            Mode::Quotient => quotient_denoise(spec, f, t)?,
            Mode::MinimalSubfunctor => subfunctor_denoise(spec, f, t, engine)?,
        };
        out.push(betti_diagram(&d.module));
    }
    if mode == Mode::Quotient {
        for (i, &s) in t_values.iter().enumerate() {
            for (j, &t) in t_values.iter().enumerate() {
                if s < t && !submultiset(&out[j], &out[i]) {
                    return Err(DenoiseError::NotNested { s, t });
                }
            }
        }
    }
    Ok(out)
}

/// `a` is contained in `b` as multisets.
pub fn submultiset(a: &BettiDiagram, b: &BettiDiagram) -> bool {
    a.iter().all(|(p, &n)| b.get(p).copied().unwrap_or(0) >= n)
}
