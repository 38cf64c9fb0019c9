//! Noise systems: membership, noise size and maximal noise subfunctors.

mod membership;
mod offsets;
mod spec;

use alloc::string::String;

pub use membership::{NoiseEvaluator, NoiseSize, OffsetCertificate, ELEMENT_CAP};
pub use offsets::{closed_everywhere, closed_under_sums, feasible_offsets, Level, Threshold};
pub use spec::{ConeNoise, DimBound, DimensionNoise, DomainNoise, NoiseSpec, Region, RegionBox, VNormNoise};

use crate::exactalg::Rational;
use crate::gridmod::{GridModule, GridPoint};
use crate::structure::Submodule;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NoiseError {
    #[error("invalid noise spec: {0}")]
    InvalidSpec(String),
    #[error("cannot parse noise spec: {0}")]
    Parse(String),
    #[error("noise spec has r = {spec} but the module has r = {module}")]
    DimensionMismatch { spec: usize, module: usize },
    #[error("element enumeration exceeds the cap of {cap} vectors per point")]
    ElementEnumerationTooLarge { cap: u64 },
    #[error("noise component is not closed under direct sums")]
    NotClosedUnderSums,
    #[error("operation is not supported for this kind of noise")]
    UnsupportedNoise,
}

/// `F` lies in the `eps` component.
pub fn contains(spec: &NoiseSpec, f: &GridModule, eps: Rational) -> Result<bool, NoiseError> {
    NoiseEvaluator::new(spec, f)?.member(f, Threshold::AtMost(eps))
}

/// `F` lies in some component strictly below `t`.
pub fn contains_below(spec: &NoiseSpec, f: &GridModule, t: Rational) -> Result<bool, NoiseError> {
    NoiseEvaluator::new(spec, f)?.member(f, Threshold::Below(t))
}

pub fn noise_size(spec: &NoiseSpec, f: &GridModule) -> Result<NoiseSize, NoiseError> {
    NoiseEvaluator::new(spec, f)?.noise_size(f)
}

/// `F[S_eps]`
pub fn max_noise_submodule(spec: &NoiseSpec, f: &GridModule, eps: Rational) -> Result<Submodule, NoiseError> {
    NoiseEvaluator::new(spec, f)?.max_submodule(f, Threshold::AtMost(eps))
}

/// `F[S_<t]`, the union of `F[S_tau]` over `tau < t`.
pub fn max_noise_below(spec: &NoiseSpec, f: &GridModule, t: Rational) -> Result<Submodule, NoiseError> {
    NoiseEvaluator::new(spec, f)?.max_submodule(f, Threshold::Below(t))
}

pub fn offset_certificate(spec: &NoiseSpec, f: &GridModule, eps: Rational) -> Result<OffsetCertificate, NoiseError> {
    NoiseEvaluator::new(spec, f)?.certificate(f, eps)
}

/// Whether every element of every `F(v)` is killed by the shift along one
/// of the given lattice offsets. With the offsets of several rays this tests
/// membership for a union of rays, which is not itself a cone.
pub fn killed_by_offsets(f: &GridModule, offsets: &[GridPoint]) -> Result<bool, NoiseError> {
    let maxima = offsets::maximal_elements(offsets.to_vec());
    membership_by_offsets(f, &maxima)
}

fn membership_by_offsets(f: &GridModule, maxima: &[GridPoint]) -> Result<bool, NoiseError> {
    use crate::exactalg::{elements, Subspace};
    for v in f.grid().points() {
        let d = f.dim(&v);
        if d == 0 {
            continue;
        }
        let kernels: alloc::vec::Vec<Subspace> =
            maxima.iter().map(|m| Subspace::kernel_of(&f.shift_map(&v, m))).collect();
        let elts = elements(&Subspace::full(f.field(), d), ELEMENT_CAP)
            .ok_or(NoiseError::ElementEnumerationTooLarge { cap: ELEMENT_CAP })?;
        if !elts.iter().all(|x| kernels.iter().any(|k| k.contains(x))) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat, PrimeField};
    use crate::gridmod::Bar;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;
    use core::str::FromStr;

    fn ones(r: usize) -> Vec<Rational> {
        vec![int(1); r]
    }

    #[test]
    fn parse_roundtrip() {
        for s in [
            "cone:1,1",
            "cone:1,0,1;1/2,1,0",
            "vnorm:1,0;0,1",
            "dim:0@0,2@1,4@2",
            "domain:@1=box(0,0,3,3)",
            "domain:@0=empty;@2=box(0,0,3,3)|box(3,0,inf,1)",
            "cone:1,0&cone:0,1",
        ] {
            let spec = NoiseSpec::from_str(s).unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!(NoiseSpec::from_str("cone:0,0").is_err());
        assert!(NoiseSpec::from_str("dim:1@0").is_err());
        assert!(NoiseSpec::from_str("dim:0@0,2@1,3@2").is_err());
        assert!(NoiseSpec::from_str("domain:@0=box(0,0,3,3);@1=box(0,0,1,1)").is_err());
    }

    #[test]
    fn feasible_offsets_of_diagonal_ray() {
        let spec = NoiseSpec::ray(ones(2)).unwrap();
        assert_eq!(feasible_offsets(&spec, int(1), int(1), 2).unwrap(), vec![vec![1, 1]]);
        assert_eq!(feasible_offsets(&spec, int(0), int(1), 2).unwrap(), vec![vec![0, 0]]);
        let half = feasible_offsets(&spec, rat(3, 2), rat(1, 2), 2).unwrap();
        assert_eq!(half, vec![vec![3, 3]]);
    }

    #[test]
    fn feasible_offsets_of_vnorm() {
        // V = {e1, e2}: norm-1 vectors are the boundary of the unit square
        let spec = NoiseSpec::vnorm(vec![vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap();
        let offs = feasible_offsets(&spec, int(1), int(1), 2).unwrap();
        assert_eq!(offs, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        // V = {(1,1)} halves nothing: norm of (2,2) is 2
        let spec = NoiseSpec::vnorm(vec![ones(2)]).unwrap();
        assert_eq!(feasible_offsets(&spec, int(2), int(1), 2).unwrap(), vec![vec![2, 2]]);
    }

    #[test]
    fn closedness() {
        assert!(closed_under_sums(&NoiseSpec::ray(ones(3)).unwrap(), int(1)));
        let axes = NoiseSpec::cone(vec![vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap();
        assert!(closed_under_sums(&axes, int(1)));
        let two = NoiseSpec::from_str("cone:1,0,1;1/2,1,0").unwrap();
        assert!(!closed_under_sums(&two, int(1)));
        assert!(closed_under_sums(&two, int(0)));
    }

    #[test]
    fn bar_noise_size_is_its_length() {
        let k = PrimeField::f2();
        let spec = NoiseSpec::ray(vec![int(1)]).unwrap();
        for len in 1..4 {
            let b = GridModule::bar(k, 1, rat(1, 2), 5, &Bar { start: vec![1], end: Some(vec![1 + len]) }).unwrap();
            assert_eq!(noise_size(&spec, &b).unwrap(), NoiseSize::Attained(rat(len as i64, 2)));
        }
        let free = GridModule::free(k, 1, int(1), 3, &[0]).unwrap();
        assert_eq!(noise_size(&spec, &free).unwrap(), NoiseSize::Infinite);
        let zero = GridModule::zero(k, 1, int(1), 3);
        assert_eq!(noise_size(&spec, &zero).unwrap(), NoiseSize::zero());
        assert!(max_noise_submodule(&spec, &free, int(2)).unwrap().is_zero());
    }

    #[test]
    fn diagonal_bar_is_ray_noise() {
        // [v, v + eps w) for the ray unit w
        let k = PrimeField::f2();
        let spec = NoiseSpec::ray(ones(2)).unwrap();
        let b = GridModule::bar(k, 2, int(1), 4, &Bar { start: vec![1, 0], end: Some(vec![3, 2]) }).unwrap();
        assert!(contains(&spec, &b, int(2)).unwrap());
        assert!(!contains(&spec, &b, int(1)).unwrap());
        let cert = offset_certificate(&spec, &b, int(2)).unwrap();
        assert!(cert.is_complete());
    }

    #[test]
    fn domain_and_dimension_membership() {
        let k = PrimeField::f2();
        let b = GridModule::bar(k, 2, int(1), 4, &Bar { start: vec![0, 0], end: Some(vec![2, 2]) }).unwrap();
        let dom = NoiseSpec::from_str("domain:@1=box(0,0,inf,2)|box(0,0,2,inf);@3=box(0,0,inf,inf)").unwrap();
        assert_eq!(noise_size(&dom, &b).unwrap(), NoiseSize::Attained(int(1)));
        let dim = NoiseSpec::from_str("dim:0@0,1@1,2@2,inf@3").unwrap();
        assert_eq!(noise_size(&dim, &b.direct_sum(&b).unwrap()).unwrap(), NoiseSize::Attained(int(2)));
        let sub = max_noise_submodule(&dom, &b, int(1)).unwrap();
        assert!(sub.is_full());
    }
}
