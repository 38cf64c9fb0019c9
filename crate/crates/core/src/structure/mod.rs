//! Generators, covers, kernels, images and cokernels of grid modules.

mod natmap;
mod natspace;
mod submodule;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

pub use natmap::NatMap;
pub use natspace::{nat_basis, nat_combination, NatSystem};
pub use submodule::{span_submodule, Submodule};

use crate::exactalg::{Matrix, Rational, Subspace};
use crate::gridmod::{leq, GridError, GridModule, GridPoint, RationalPoint};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("shapes do not match")]
    ShapeMismatch,
    #[error("maps are not natural at {point:?} along axis {axis}")]
    NotNatural { point: GridPoint, axis: usize },
    #[error("subspaces are not closed under the map at {point:?} along axis {axis}")]
    NotClosed { point: GridPoint, axis: usize },
}

/// `rad F(v) = sum_i im F(v - e_i <= v)`.
pub fn radical(f: &GridModule) -> Submodule {
    let full = Submodule::full(f);
    Submodule::new_unchecked(f.clone(), full.radical_spaces())
}

/// `beta_0(v) = dim F(v) - dim rad F(v)`, listing only nonzero entries.
pub fn betti0(f: &GridModule) -> BTreeMap<GridPoint, usize> {
    let rad = radical(f);
    let g = f.grid();
    let mut out = BTreeMap::new();
    for idx in 0..g.len() {
        let b = f.dim_at(idx) - rad.spaces()[idx].dim();
        if b > 0 {
            out.insert(g.point(idx), b);
        }
    }
    out
}

/// Betti numbers placed at their rational grades `alpha * v`, so diagrams of
/// modules at different scales can be compared.
pub fn betti_diagram(f: &GridModule) -> BTreeMap<RationalPoint, usize> {
    let a = f.alpha();
    betti0(f)
        .into_iter()
        .map(|(v, b)| (v.iter().map(|&x| a * Rational::from_integer(x as i64)).collect(), b))
        .collect()
}

/// Minimal number of generators.
pub fn rank(f: &GridModule) -> usize {
    betti0(f).values().sum()
}

/// Rational grades carrying generators.
pub fn support(f: &GridModule) -> Vec<RationalPoint> {
    betti_diagram(f).into_keys().collect()
}

/// A free module with an epimorphism onto `f` that is an isomorphism modulo
/// radicals.
#[derive(Clone, Debug)]
pub struct Cover {
    pub free: GridModule,
    pub map: NatMap,
    pub generators: Vec<(GridPoint, Vec<u32>)>,
}

pub fn minimal_cover(f: &GridModule) -> Cover {
    let g = f.grid();
    let k = f.field();
    let rad = radical(f);
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by_key(|&i| {
        let v = g.point(i);
        (v.iter().sum::<usize>(), v)
    });
    let mut generators = Vec::new();
    for idx in order {
        let r = &rad.spaces()[idx];
        if r.dim() == f.dim_at(idx) {
            continue;
        }
        for e in r.complement_basis() {
            generators.push((g.point(idx), e));
        }
    }
    let grades: Vec<GridPoint> = generators.iter().map(|(v, _)| v.clone()).collect();
    let free = free_on(f, &grades);
    let mats = g
        .points()
        .map(|u| {
            let cols: Vec<Vec<u32>> = generators
                .iter()
                .filter(|(v, _)| leq(v, &u))
                .map(|(v, x)| f.evaluate_map(v, &u).expect("comparable").apply(x))
                .collect();
            Matrix::from_columns(k, f.dim(&u), &cols)
        })
        .collect();
    let map = NatMap::from_parts_unchecked(free.clone(), f.clone(), mats);
    Cover { free, map, generators }
}

/// `sum_k K(grades[k], -)` on the lattice of `like`, with basis at `u`
/// given by the generators `k` with `grades[k] <= u` in their listed order.
pub fn free_on(like: &GridModule, grades: &[GridPoint]) -> GridModule {
    let k = like.field();
    let g = like.grid();
    let present = |u: &[usize]| -> Vec<usize> { (0..grades.len()).filter(|&j| leq(&grades[j], u)).collect() };
    GridModule::from_fn(
        k,
        g.r(),
        like.alpha(),
        g.size(),
        |u| present(u).len(),
        |u, axis| {
            let a = present(u);
            let mut w = u.to_vec();
            w[axis] += 1;
            let b = present(&w);
            let mut m = Matrix::zeros(k, b.len(), a.len());
            for (col, j) in a.iter().enumerate() {
                let row = b.iter().position(|x| x == j).expect("generators persist");
                m.set(row, col, 1);
            }
            m
        },
    )
    .expect("free module shapes")
}

pub fn kernel(phi: &NatMap) -> Submodule {
    Submodule::new_unchecked(phi.source().clone(), phi.kernel_spaces())
}

pub fn image(phi: &NatMap) -> Submodule {
    Submodule::new_unchecked(phi.target().clone(), phi.image_spaces())
}

/// Cokernel of `phi` with the projection from its target.
pub fn cokernel(phi: &NatMap) -> (GridModule, NatMap) {
    image(phi).quotient()
}

pub fn submodule_to_module(s: &Submodule) -> (GridModule, NatMap) {
    s.to_module()
}

/// `x` lies in the submodule spanned at each point.
pub fn spans(s: &Submodule, v: &[usize], x: &[u32]) -> bool {
    s.at(v).contains(x)
}

/// Subspace of `F(v)` killed by `F(v <= w)`.
pub fn kernel_between(f: &GridModule, v: &[usize], w: &[usize]) -> Subspace {
    Subspace::kernel_of(&f.evaluate_map(v, w).expect("comparable"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, PrimeField};
    use crate::gridmod::Bar;
    use alloc::vec;

    fn k2() -> PrimeField {
        PrimeField::f2()
    }

    #[test]
    fn betti_of_direct_sum_of_frees() {
        let a = GridModule::free(k2(), 2, int(1), 2, &[0, 1]).unwrap();
        let b = GridModule::free(k2(), 2, int(1), 2, &[1, 0]).unwrap();
        let s = a.direct_sum(&b).unwrap();
        let b0 = betti0(&s);
        assert_eq!(b0.len(), 2);
        assert_eq!(rank(&s), 2);
        let cover = minimal_cover(&s);
        assert!(cover.map.is_epi());
        assert!(cover.map.is_iso());
    }

    #[test]
    fn cover_of_bar_has_nontrivial_kernel() {
        let b = GridModule::bar(k2(), 2, int(1), 3, &Bar { start: vec![0, 0], end: Some(vec![2, 1]) }).unwrap();
        let cover = minimal_cover(&b);
        assert_eq!(cover.generators.len(), 1);
        assert!(cover.map.is_epi());
        let ker = kernel(&cover.map);
        let gens = ker.generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].0, vec![2, 1]);
    }

    #[test]
    fn quotient_and_inclusion_are_exact() {
        let f = GridModule::free(k2(), 2, int(1), 2, &[0, 0]).unwrap();
        let s = span_submodule(&f, &[(vec![1, 1], vec![1])]).unwrap();
        let (q, proj) = s.quotient();
        q.validate().unwrap();
        assert_eq!(q.dim(&[1, 1]), 0);
        assert_eq!(q.dim(&[0, 2]), 1);
        assert_eq!(kernel(&proj), s);
        let (m, inc) = s.to_module();
        m.validate().unwrap();
        assert!(inc.is_mono());
        assert_eq!(image(&inc), s);
    }

    #[test]
    fn nat_space_of_free_modules() {
        // Hom(K(v,-), F) = F(v)
        let f = GridModule::free(k2(), 2, int(1), 2, &[0, 0]).unwrap();
        let f = f.direct_sum(&GridModule::free(k2(), 2, int(1), 2, &[0, 1]).unwrap()).unwrap();
        let h = GridModule::free(k2(), 2, int(1), 2, &[1, 1]).unwrap();
        assert_eq!(nat_basis(&h, &f).unwrap().len(), f.dim(&[1, 1]));
        assert_eq!(nat_basis(&f, &h).unwrap().len(), 0);
    }
}
