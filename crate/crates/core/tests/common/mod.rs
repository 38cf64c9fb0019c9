#![allow(dead_code)]

use pnoise_core::exactalg::{int, Matrix, PrimeField, Rational};
use pnoise_core::fcf::{FeatureCountingFunction, StepStart};
use pnoise_core::gridmod::{Bar, GridModule, GridPoint};
use pnoise_core::structure::span_submodule;
use rand::Rng;

pub fn random_matrix(rng: &mut impl Rng, k: PrimeField, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..k.p())).collect();
    Matrix::from_data(k, rows, cols, data)
}

/// Random one-parameter module with arbitrary maps.
pub fn random_r1(rng: &mut impl Rng, k: PrimeField, max_n: usize, max_dim: usize) -> GridModule {
    let n = rng.gen_range(1..=max_n);
    let dims: Vec<usize> = (0..=n).map(|_| rng.gen_range(0..=max_dim)).collect();
    let maps: Vec<Matrix> = (0..n).map(|i| random_matrix(rng, k, dims[i + 1], dims[i])).collect();
    GridModule::from_fn(k, 1, int(1), n, |v| dims[v[0]], |v, _| maps[v[0]].clone()).unwrap()
}

fn random_point(rng: &mut impl Rng, r: usize, n: usize) -> GridPoint {
    (0..r).map(|_| rng.gen_range(0..=n)).collect()
}

/// A random sum of bars and free modules in `{0..n}^r`.
pub fn random_bars(rng: &mut impl Rng, k: PrimeField, r: usize, n: usize, count: usize) -> GridModule {
    let mut acc = GridModule::zero(k, r, int(1), n);
    for _ in 0..count {
        let start = random_point(rng, r, n);
        let end = if rng.gen_bool(0.25) {
            None
        } else {
            Some(start.iter().map(|&s| (s + rng.gen_range(0..=2)).min(n)).collect::<Vec<_>>())
        };
        let end = end.filter(|e| e.iter().zip(&start).any(|(a, b)| a > b)).or_else(|| {
            let mut e = start.clone();
            if e[0] < n {
                e[0] += 1;
                Some(e)
            } else {
                None
            }
        });
        let b = GridModule::bar(k, r, int(1), n, &Bar { start, end }).unwrap();
        acc = acc.direct_sum(&b).unwrap();
    }
    acc
}

/// Random elements of `f`.
pub fn random_elements(rng: &mut impl Rng, f: &GridModule, count: usize) -> Vec<(GridPoint, Vec<u32>)> {
    let pts = f.nonzero_points();
    if pts.is_empty() {
        return Vec::new();
    }
    (0..count)
        .map(|_| {
            let v = pts[rng.gen_range(0..pts.len())].clone();
            let x = (0..f.dim(&v)).map(|_| rng.gen_range(0..f.field().p())).collect();
            (v, x)
        })
        .collect()
}

/// A random multi-parameter module: a quotient of a sum of bars.
pub fn random_module(rng: &mut impl Rng, k: PrimeField, r: usize, n: usize, bars: usize) -> GridModule {
    let b = random_bars(rng, k, r, n, bars);
    let count = rng.gen_range(0..=1);
    let rel = random_elements(rng, &b, count);
    span_submodule(&b, &rel).unwrap().quotient().0
}

pub fn random_fcf(rng: &mut impl Rng) -> FeatureCountingFunction {
    let mut v = rng.gen_range(0..5usize);
    let mut t = 0i64;
    let mut steps = vec![(StepStart::Closed(int(0)), v)];
    for _ in 0..rng.gen_range(0..4) {
        t += rng.gen_range(1..4);
        let q = Rational::new(t, rng.gen_range(1..3));
        if q <= steps.last().unwrap().0.value() {
            continue;
        }
        v = v.saturating_sub(rng.gen_range(0..3));
        let s = if rng.gen_bool(0.5) { StepStart::Open(q) } else { StepStart::Closed(q) };
        steps.push((s, v));
    }
    FeatureCountingFunction::new(steps).unwrap()
}
