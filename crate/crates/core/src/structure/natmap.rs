use alloc::vec::Vec;

use super::StructureError;
use crate::exactalg::{Matrix, Subspace};
use crate::gridmod::GridModule;

/// A natural transformation between modules on the same lattice and box,
/// given by one matrix per lattice point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatMap {
    source: GridModule,
    target: GridModule,
    mats: Vec<Matrix>,
}

impl NatMap {
    /// Checks shapes and naturality on every edge.
    pub fn new(source: GridModule, target: GridModule, mats: Vec<Matrix>) -> Result<Self, StructureError> {
        source.check_compatible(&target)?;
        let g = source.grid();
        if mats.len() != g.len() {
            return Err(StructureError::ShapeMismatch);
        }
        for (idx, m) in mats.iter().enumerate() {
            if m.rows() != target.dim_at(idx) || m.cols() != source.dim_at(idx) {
                return Err(StructureError::ShapeMismatch);
            }
        }
        let nat = NatMap { source, target, mats };
        nat.check_natural()?;
        Ok(nat)
    }

    fn check_natural(&self) -> Result<(), StructureError> {
        let g = self.source.grid();
        for idx in 0..g.len() {
            for axis in 0..g.r() {
                let Some(s) = g.successor(idx, axis) else { continue };
                let a = self.mats[s].mul(&self.source.edge(idx, axis));
                let b = self.target.edge(idx, axis).mul(&self.mats[idx]);
                if a != b {
                    return Err(StructureError::NotNatural { point: g.point(idx), axis });
                }
            }
        }
        Ok(())
    }

    pub fn identity(m: &GridModule) -> NatMap {
        let mats = m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect();
        NatMap { source: m.clone(), target: m.clone(), mats }
    }

    pub fn zero(source: &GridModule, target: &GridModule) -> Result<NatMap, StructureError> {
        source.check_compatible(target)?;
        let mats = (0..source.grid().len())
            .map(|i| Matrix::zeros(source.field(), target.dim_at(i), source.dim_at(i)))
            .collect();
        Ok(NatMap { source: source.clone(), target: target.clone(), mats })
    }

    pub fn source(&self) -> &GridModule {
        &self.source
    }
    pub fn target(&self) -> &GridModule {
        &self.target
    }
    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }
    pub fn at(&self, v: &[usize]) -> &Matrix {
        let g = self.source.grid();
        &self.mats[g.index(&g.clip(v))]
    }

    /// `other . self`
    pub fn then(&self, other: &NatMap) -> Result<NatMap, StructureError> {
        if self.target != other.source {
            return Err(StructureError::ShapeMismatch);
        }
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| b.mul(a)).collect();
        Ok(NatMap { source: self.source.clone(), target: other.target.clone(), mats })
    }

    pub fn is_mono(&self) -> bool {
        self.mats.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.mats.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub(crate) fn image_spaces(&self) -> Vec<Subspace> {
        self.mats.iter().map(Subspace::image_of).collect()
    }

    pub(crate) fn kernel_spaces(&self) -> Vec<Subspace> {
        self.mats.iter().map(Subspace::kernel_of).collect()
    }

    pub(crate) fn from_parts_unchecked(source: GridModule, target: GridModule, mats: Vec<Matrix>) -> NatMap {
        debug_assert!(NatMap::new(source.clone(), target.clone(), mats.clone()).is_ok());
        NatMap { source, target, mats }
    }
}
