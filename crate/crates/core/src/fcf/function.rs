use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::Zero;

use crate::exactalg::Rational;

/// Where a step starts: at `t` itself, or immediately after it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepStart {
    Closed(Rational),
    Open(Rational),
}

impl StepStart {
    pub fn value(&self) -> Rational {
        match self {
            StepStart::Closed(q) | StepStart::Open(q) => *q,
        }
    }

    /// Whether `t` lies at or past the start of the step.
    pub fn reached_by(&self, t: Rational) -> bool {
        match self {
            StepStart::Closed(q) => t >= *q,
            StepStart::Open(q) => t > *q,
        }
    }

    fn key(&self) -> (Rational, u8) {
        match self {
            StepStart::Closed(q) => (*q, 0),
            StepStart::Open(q) => (*q, 1),
        }
    }
}

impl PartialOrd for StepStart {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StepStart {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for StepStart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepStart::Closed(q) => write!(f, "{q}"),
            StepStart::Open(q) => write!(f, "{q}+"),
        }
    }
}

/// A rational number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Extended {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(q) => write!(f, "{q}"),
            Extended::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FcfShapeError {
    #[error("a feature counting function must start with a closed step at 0")]
    MissingStart,
    #[error("step starts must increase")]
    Unsorted,
    #[error("values must not increase")]
    Increasing,
}

/// A non-increasing step function `Q_{>=0} -> N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureCountingFunction {
    steps: Vec<(StepStart, usize)>,
}

impl FeatureCountingFunction {
    /// Validates and merges repeated values.
    pub fn new(steps: Vec<(StepStart, usize)>) -> Result<Self, FcfShapeError> {
        if steps.first().map(|s| s.0) != Some(StepStart::Closed(Rational::zero())) {
            return Err(FcfShapeError::MissingStart);
        }
        for w in steps.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(FcfShapeError::Unsorted);
            }
            if w[1].1 > w[0].1 {
                return Err(FcfShapeError::Increasing);
            }
        }
        let mut merged: Vec<(StepStart, usize)> = Vec::with_capacity(steps.len());
        for s in steps {
            if merged.last().is_some_and(|l| l.1 == s.1) {
                continue;
            }
            merged.push(s);
        }
        Ok(FeatureCountingFunction { steps: merged })
    }

    pub fn constant(value: usize) -> Self {
        FeatureCountingFunction { steps: alloc::vec![(StepStart::Closed(Rational::zero()), value)] }
    }

    pub fn steps(&self) -> &[(StepStart, usize)] {
        &self.steps
    }

    pub fn evaluate(&self, t: Rational) -> usize {
        self.steps.iter().take_while(|(s, _)| s.reached_by(t)).last().map_or(self.steps[0].1, |(_, v)| *v)
    }

    pub fn initial(&self) -> usize {
        self.steps[0].1
    }

    pub fn terminal(&self) -> usize {
        self.steps.last().expect("nonempty").1
    }

    /// `sup { t : f(t) >= k }`, `None` when `f(0) < k`.
    fn reach(&self, k: usize) -> Option<Extended> {
        if self.initial() < k {
            return None;
        }
        Some(match self.steps.iter().find(|(_, v)| *v < k) {
            Some((s, _)) => Extended::Finite(s.value()),
            None => Extended::Infinite,
        })
    }
}

/// `inf { eps : f_t >= g_{t+eps} and g_t >= f_{t+eps} for all t }`.
pub fn fcf_interleaving_distance(f: &FeatureCountingFunction, g: &FeatureCountingFunction) -> Extended {
    let top = f.initial().max(g.initial());
    let mut worst = Extended::Finite(Rational::zero());
    for k in 1..=top {
        for (a, b) in [(f.reach(k), g.reach(k)), (g.reach(k), f.reach(k))] {
            // a feature of `a` at level k must be matched by `b` within eps
            let Some(a) = a else { continue };
            let b = b.unwrap_or(Extended::Finite(Rational::zero()));
            let gap = match (a, b) {
                (Extended::Infinite, Extended::Infinite) => Extended::Finite(Rational::zero()),
                (Extended::Infinite, _) => Extended::Infinite,
                (_, Extended::Infinite) => Extended::Finite(Rational::zero()),
                (Extended::Finite(x), Extended::Finite(y)) => {
                    Extended::Finite(if x > y { x - y } else { Rational::zero() })
                }
            };
            worst = worst.max(gap);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use alloc::vec;

    fn step(s: &[(StepStart, usize)]) -> FeatureCountingFunction {
        FeatureCountingFunction::new(s.to_vec()).unwrap()
    }

    #[test]
    fn evaluation_respects_open_starts() {
        let f = step(&[(StepStart::Closed(int(0)), 2), (StepStart::Open(int(1)), 1)]);
        assert_eq!(f.evaluate(int(1)), 2);
        assert_eq!(f.evaluate(rat(1001, 1000)), 1);
        assert!(FeatureCountingFunction::new(vec![(StepStart::Open(int(0)), 1)]).is_err());
        assert!(FeatureCountingFunction::new(vec![(StepStart::Closed(int(0)), 1), (StepStart::Closed(int(1)), 2)]).is_err());
    }

    #[test]
    fn distances() {
        let z = FeatureCountingFunction::constant(0);
        let one = FeatureCountingFunction::constant(1);
        assert_eq!(fcf_interleaving_distance(&z, &one), Extended::Infinite);
        assert_eq!(fcf_interleaving_distance(&one, &one), Extended::Finite(int(0)));
        let q = step(&[(StepStart::Closed(int(0)), 1), (StepStart::Closed(rat(22, 7)), 0)]);
        assert_eq!(fcf_interleaving_distance(&q, &z), Extended::Finite(rat(22, 7)));
        let closed = step(&[(StepStart::Closed(int(0)), 1), (StepStart::Open(int(1)), 0)]);
        let open = step(&[(StepStart::Closed(int(0)), 1), (StepStart::Closed(int(1)), 0)]);
        assert_ne!(closed, open);
        assert_eq!(fcf_interleaving_distance(&closed, &open), Extended::Finite(int(0)));
    }
}
