//! Small worked modules used in tests, benchmarks and the CLI fixtures.
//! Points are written `(x, y)` or `(x, y, z)` with the first coordinate
//! along axis 0.

use alloc::vec;
use alloc::vec::Vec;

use crate::exactalg::{int, quotient_with_section, rat, Matrix, PrimeField, Subspace};
use crate::gridmod::{leq, Bar, GridModule, GridPoint};

fn identity_module(field: PrimeField, r: usize, n: usize, support: impl Fn(&[usize]) -> bool) -> GridModule {
    GridModule::indicator(field, r, int(1), n, support).expect("support is an interval")
}

/// `K` on `{0..2}^2` except the origin, identity maps. Every map is a
/// monomorphism.
pub fn mono_square() -> GridModule {
    identity_module(PrimeField::f2(), 2, 2, |v| v != [0, 0])
}

/// The staircase `K` iff `x + y >= 3` on `{0..3}^2`.
pub fn staircase() -> GridModule {
    identity_module(PrimeField::f2(), 2, 3, |v| v[0] + v[1] >= 3)
}

/// Generators at `(0,3)`, `(1,2)`, `(3,1)`, `(5,0)` on `{0..5}^2`.
pub fn two_minimizers() -> GridModule {
    identity_module(PrimeField::f2(), 2, 5, |v| {
        let (x, y) = (v[0], v[1]);
        y >= 3 || (y == 2 && x >= 1) || (y == 1 && x >= 3) || x >= 5
    })
}

/// Rank-two module over `F_2` on `{0..2}^2` with `F(1,1) = K^2`, where a
/// single element of `F(1,1)` generates a subfunctor `1`-close to `F`.
pub fn plane_combination() -> GridModule {
    let k = PrimeField::f2();
    let dim = |v: &[usize]| match (v[0], v[1]) {
        (0, 0) | (2, 2) => 0,
        (1, 1) => 2,
        _ => 1,
    };
    GridModule::from_fn(k, 2, int(1), 2, dim, |v, axis| {
        let m = |rows: &[&[i64]], cols| Matrix::from_rows(k, cols, rows);
        match (v[0], v[1], axis) {
            (0, 1, 0) => m(&[&[0], &[1]], 1),
            (1, 1, 0) => m(&[&[1, 0]], 2),
            (1, 0, 1) => m(&[&[1], &[-1]], 1),
            (1, 1, 1) => m(&[&[1, 1]], 2),
            _ => {
                let mut w = v.to_vec();
                w[axis] += 1;
                let (a, b) = (dim(v), dim(&w));
                if a == 1 && b == 1 {
                    Matrix::identity(k, 1)
                } else {
                    Matrix::zeros(k, b, a)
                }
            }
        }
    })
    .expect("fixture shapes")
}

/// The element `(1, 0)` of `F(1,1)` in [`plane_combination`].
pub fn plane_combination_element() -> (GridPoint, Vec<u32>) {
    (vec![1, 1], vec![1, 0])
}

/// Minimal generators of [`plane_combination`].
pub fn plane_combination_generators() -> Vec<(GridPoint, Vec<u32>)> {
    vec![(vec![1, 0], vec![1]), (vec![0, 1], vec![1])]
}

/// Rank-three module over `F_3` on `{0..2}^3` whose three generators at
/// the unit vectors map to the standard basis of `F(1,1,1) = K^3`. Leaving
/// `(1,1,1)` along axis `i` quotients by the kernel of `f_i`, and further
/// points are the pushouts of these quotients.
pub fn three_generators() -> GridModule {
    let k = PrimeField::new(3).expect("prime");
    let kernels: [Vec<u32>; 3] = [vec![1, 2, 2], vec![1, 2, 1], vec![1, 1, 2]];
    let unit = [1usize, 1, 1];
    let low = |v: &[usize]| -> GridPoint { v.iter().map(|&x| x.min(1)).collect() };
    let twos = |v: &[usize]| -> Vec<Vec<u32>> { (0..3).filter(|&i| v[i] >= 2).map(|i| kernels[i].clone()).collect() };
    let quotient = |v: &[usize]| -> (Matrix, Matrix) {
        let w = Subspace::span_vectors(k, 3, &twos(v));
        quotient_with_section(&w.basis()).expect("independent basis")
    };
    let cube_dim = |v: &[usize]| v.iter().sum::<usize>();
    let dim = |v: &[usize]| {
        if leq(&unit, v) {
            quotient(v).0.rows()
        } else {
            cube_dim(&low(v))
        }
    };
    let map = |v: &[usize], w: &[usize]| -> Matrix {
        let (lv, lw) = (low(v), low(w));
        if leq(&unit, v) {
            let (_, s) = quotient(v);
            let (q, _) = quotient(w);
            return q.mul(&s);
        }
        let c = cube_map(k, &lv, &lw);
        if leq(&unit, w) {
            quotient(w).0.mul(&c)
        } else {
            c
        }
    };
    GridModule::from_fn(k, 3, int(1), 2, dim, |v, axis| {
        let mut w = v.to_vec();
        w[axis] += 1;
        map(v, &w)
    })
    .expect("fixture shapes")
}

/// The generators of [`three_generators`] at the unit vectors.
pub fn three_generators_generators() -> Vec<(GridPoint, Vec<u32>)> {
    vec![(vec![1, 0, 0], vec![1]), (vec![0, 1, 0], vec![1]), (vec![0, 0, 1], vec![1])]
}

/// `h_1 + h_2 + h_3` at `(1,1,1)`.
pub fn three_generators_sum() -> (GridPoint, Vec<u32>) {
    (vec![1, 1, 1], vec![1, 1, 1])
}

// Maps inside the unit cube of `three_generators`, composed along a path.
fn cube_map(k: PrimeField, v: &[usize], w: &[usize]) -> Matrix {
    let mut cur = v.to_vec();
    let mut acc = Matrix::identity(k, cur.iter().sum());
    for axis in 0..3 {
        if cur[axis] < w[axis] {
            acc = cube_edge(k, &cur, axis).mul(&acc);
            cur[axis] = 1;
        }
    }
    acc
}

fn cube_edge(k: PrimeField, v: &[usize], axis: usize) -> Matrix {
    let m = |cols, rows: &[&[i64]]| Matrix::from_rows(k, cols, rows);
    match (v[0], v[1], v[2], axis) {
        (0, 0, 0, _) => Matrix::zeros(k, 1, 0),
        (1, 0, 0, 1) => m(1, &[&[1], &[0]]),
        (1, 0, 0, 2) => m(1, &[&[0], &[1]]),
        (0, 1, 0, 0) => m(1, &[&[0], &[1]]),
        (0, 1, 0, 2) => m(1, &[&[0], &[1]]),
        (0, 0, 1, 0) => m(1, &[&[1], &[0]]),
        (0, 0, 1, 1) => m(1, &[&[1], &[0]]),
        (1, 1, 0, 2) => m(2, &[&[1, 0], &[0, 1], &[0, 0]]),
        (1, 0, 1, 1) => m(2, &[&[0, 1], &[0, 0], &[1, 0]]),
        (0, 1, 1, 0) => m(2, &[&[0, 0], &[0, 1], &[1, 0]]),
        _ => unreachable!("edge leaves the unit cube"),
    }
}

/// The one-parameter module over `F_3` on `{0..4}` with dimensions
/// `3, 2, 2, 1, 1`.
pub fn five_step() -> GridModule {
    let k = PrimeField::new(3).expect("prime");
    let dims = [3, 2, 2, 1, 1];
    let maps = [
        Matrix::from_rows(k, 3, &[&[1, 0, 1], &[1, 1, 1]]),
        Matrix::from_rows(k, 2, &[&[1, 0], &[0, 0]]),
        Matrix::from_rows(k, 2, &[&[1, 1]]),
        Matrix::identity(k, 1),
    ];
    GridModule::from_fn(k, 1, int(1), 4, |v| dims[v[0]], |v, _| maps[v[0]].clone()).expect("fixture shapes")
}

/// `K` wherever `x < 1` or `y < 1`, on `{0..2}^2`.
pub fn union_of_axes() -> GridModule {
    identity_module(PrimeField::f2(), 2, 2, |v| v[0] < 1 || v[1] < 1)
}

/// The horizontal strip `y < 1` of [`union_of_axes`], as a submodule.
pub fn horizontal_strip() -> GridModule {
    identity_module(PrimeField::f2(), 2, 2, |v| v[1] < 1)
}

/// The vertical strip `x < 1`, the quotient of [`union_of_axes`] by the
/// horizontal strip.
pub fn vertical_strip() -> GridModule {
    identity_module(PrimeField::f2(), 2, 2, |v| v[0] < 1)
}

/// Bars `[0, (1,0,1))` and `[0, (1/2,1,0))` in `Q^3` at step `1/2`.
pub fn two_bars() -> (GridModule, GridModule) {
    let k = PrimeField::f2();
    let a = rat(1, 2);
    let f = GridModule::bar(k, 3, a, 2, &Bar { start: vec![0, 0, 0], end: Some(vec![2, 0, 2]) }).expect("bar");
    let g = GridModule::bar(k, 3, a, 2, &Bar { start: vec![0, 0, 0], end: Some(vec![1, 2, 0]) }).expect("bar");
    (f, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_commute() {
        let (f, g) = two_bars();
        for m in [
            mono_square(),
            staircase(),
            two_minimizers(),
            plane_combination(),
            three_generators(),
            five_step(),
            union_of_axes(),
            horizontal_strip(),
            vertical_strip(),
            f,
            g,
        ] {
            m.validate().unwrap();
        }
    }

    #[test]
    fn three_generator_dims() {
        let f = three_generators();
        assert_eq!(f.dim(&[1, 1, 1]), 3);
        assert_eq!(f.dim(&[2, 1, 1]), 2);
        assert_eq!(f.dim(&[2, 2, 1]), 1);
        assert_eq!(f.dim(&[1, 2, 2]), 1);
        assert_eq!(f.dim(&[2, 2, 2]), 0);
        assert_eq!(f.dim(&[2, 0, 2]), 2);
        assert_eq!(crate::structure::rank(&f), 3);
    }
}
