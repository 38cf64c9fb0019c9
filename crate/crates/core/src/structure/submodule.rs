use alloc::vec::Vec;

use super::StructureError;
use crate::exactalg::{Matrix, Subspace};
use crate::gridmod::{leq, GridModule, GridPoint};

/// A subfunctor of a module: one subspace per lattice point, closed under
/// the structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    parent: GridModule,
    spaces: Vec<Subspace>,
}

impl Submodule {
    pub fn new(parent: GridModule, spaces: Vec<Subspace>) -> Result<Self, StructureError> {
        let g = parent.grid();
        if spaces.len() != g.len() {
            return Err(StructureError::ShapeMismatch);
        }
        for (idx, s) in spaces.iter().enumerate() {
            if s.ambient() != parent.dim_at(idx) {
                return Err(StructureError::ShapeMismatch);
            }
        }
        let sub = Submodule { parent, spaces };
        sub.check_closed()?;
        Ok(sub)
    }

    pub(crate) fn new_unchecked(parent: GridModule, spaces: Vec<Subspace>) -> Self {
        debug_assert!(Submodule::new(parent.clone(), spaces.clone()).is_ok());
        Submodule { parent, spaces }
    }

    fn check_closed(&self) -> Result<(), StructureError> {
        let g = self.parent.grid();
        for idx in 0..g.len() {
            for axis in 0..g.r() {
                let Some(s) = g.successor(idx, axis) else { continue };
                let img = self.spaces[idx].image(&self.parent.edge(idx, axis));
                if !self.spaces[s].contains_space(&img) {
                    return Err(StructureError::NotClosed { point: g.point(idx), axis });
                }
            }
        }
        Ok(())
    }

    pub fn zero(parent: &GridModule) -> Self {
        let spaces = parent.dims().iter().map(|&d| Subspace::zero(parent.field(), d)).collect();
        Submodule { parent: parent.clone(), spaces }
    }

    pub fn full(parent: &GridModule) -> Self {
        let spaces = parent.dims().iter().map(|&d| Subspace::full(parent.field(), d)).collect();
        Submodule { parent: parent.clone(), spaces }
    }

    pub fn parent(&self) -> &GridModule {
        &self.parent
    }
    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }
    pub fn at(&self, v: &[usize]) -> &Subspace {
        let g = self.parent.grid();
        &self.spaces[g.index(&g.clip(v))]
    }
    pub fn dim(&self, v: &[usize]) -> usize {
        self.at(v).dim()
    }
    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }
    pub fn is_full(&self) -> bool {
        self.spaces.iter().all(Subspace::is_full)
    }

    pub fn contains(&self, other: &Submodule) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.contains_space(b))
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        let spaces = self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.sum(b)).collect();
        Submodule { parent: self.parent.clone(), spaces }
    }

    pub fn intersect(&self, other: &Submodule) -> Submodule {
        let spaces = self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.intersect(b)).collect();
        Submodule { parent: self.parent.clone(), spaces }
    }

    /// Sum of the images of the immediate predecessors inside this submodule.
    pub(crate) fn radical_spaces(&self) -> Vec<Subspace> {
        let g = self.parent.grid();
        let k = self.parent.field();
        (0..g.len())
            .map(|idx| {
                let mut acc = Subspace::zero(k, self.parent.dim_at(idx));
                for axis in 0..g.r() {
                    if let Some(pred) = g.predecessor(idx, axis) {
                        acc = acc.sum(&self.spaces[pred].image(&self.parent.edge(pred, axis)));
                    }
                }
                acc
            })
            .collect()
    }

    /// A minimal generating set: at each point, canonical basis vectors of
    /// the submodule that extend the radical, listed by coordinate sum and
    /// then lexicographically.
    pub fn generators(&self) -> Vec<(GridPoint, Vec<u32>)> {
        let g = self.parent.grid();
        let k = self.parent.field();
        let rad = self.radical_spaces();
        let mut order: Vec<usize> = (0..g.len()).collect();
        order.sort_by_key(|&i| {
            let v = g.point(i);
            (v.iter().sum::<usize>(), v)
        });
        let mut out = Vec::new();
        for idx in order {
            let d = self.parent.dim_at(idx);
            let mut cur = rad[idx].clone();
            if cur.dim() == self.spaces[idx].dim() {
                continue;
            }
            for b in self.spaces[idx].basis_vectors() {
                if !cur.contains(&b) {
                    cur = cur.sum(&Subspace::span_vectors(k, d, core::slice::from_ref(&b)));
                    out.push((g.point(idx), b));
                }
            }
        }
        out
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> usize {
        let rad = self.radical_spaces();
        self.spaces.iter().zip(&rad).map(|(s, r)| s.dim() - r.dim()).sum()
    }

    /// The submodule as a module in its own right, with its inclusion.
    pub fn to_module(&self) -> (GridModule, super::NatMap) {
        let p = &self.parent;
        let g = p.grid();
        let bases: Vec<Matrix> = self.spaces.iter().map(Subspace::basis).collect();
        let m = GridModule::from_fn(
            p.field(),
            g.r(),
            p.alpha(),
            g.size(),
            |v| self.spaces[g.index(v)].dim(),
            |v, axis| {
                let idx = g.index(v);
                let s = g.successor(idx, axis).expect("inside box");
                let img = p.edge(idx, axis).mul(&bases[idx]);
                bases[s].solve(&img).expect("submodule is closed")
            },
        )
        .expect("restriction preserves shapes");
        let inc = super::NatMap::from_parts_unchecked(m.clone(), p.clone(), bases);
        (m, inc)
    }

    /// The quotient module with its projection.
    pub fn quotient(&self) -> (GridModule, super::NatMap) {
        let p = &self.parent;
        let g = p.grid();
        let qs: Vec<(Matrix, Matrix)> = self
            .spaces
            .iter()
            .map(|s| crate::exactalg::quotient_with_section(&s.basis()).expect("canonical basis"))
            .collect();
        let m = GridModule::from_fn(
            p.field(),
            g.r(),
            p.alpha(),
            g.size(),
            |v| qs[g.index(v)].0.rows(),
            |v, axis| {
                let idx = g.index(v);
                let s = g.successor(idx, axis).expect("inside box");
                qs[s].0.mul(&p.edge(idx, axis)).mul(&qs[idx].1)
            },
        )
        .expect("quotient preserves shapes");
        let proj = super::NatMap::from_parts_unchecked(p.clone(), m.clone(), qs.into_iter().map(|(q, _)| q).collect());
        (m, proj)
    }
}

/// The smallest submodule containing each `x` at its grade `v`.
pub fn span_submodule(parent: &GridModule, seeds: &[(GridPoint, Vec<u32>)]) -> Result<Submodule, StructureError> {
    let g = parent.grid();
    let k = parent.field();
    for (v, x) in seeds {
        if v.len() != g.r() || v.iter().any(|&c| c > g.size()) || x.len() != parent.dim(v) {
            return Err(StructureError::ShapeMismatch);
        }
    }
    let spaces = g
        .points()
        .map(|u| {
            let imgs: Vec<Vec<u32>> = seeds
                .iter()
                .filter(|(v, _)| leq(v, &u))
                .map(|(v, x)| parent.evaluate_map(v, &u).expect("comparable").apply(x))
                .collect();
            Subspace::span_vectors(k, parent.dim(&u), &imgs)
        })
        .collect();
    Ok(Submodule { parent: parent.clone(), spaces })
}
