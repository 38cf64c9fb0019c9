use super::FcfError;
use crate::exactalg::Rational;
use crate::noise::{NoiseEvaluator, NoiseSize, NoiseSpec};
use crate::structure::{cokernel, kernel, NatMap};

/// Noise sizes of the kernel and cokernel of a natural transformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivalenceBudget {
    pub tau: NoiseSize,
    pub mu: NoiseSize,
}

impl EquivalenceBudget {
    pub fn total(&self) -> NoiseSize {
        self.tau.plus(&self.mu)
    }

    /// Whether the map is an `eps`-equivalence.
    pub fn is_equivalence(&self, eps: Rational) -> bool {
        self.total().admits(eps)
    }
}

pub fn equivalence_budget(spec: &NoiseSpec, phi: &NatMap) -> Result<EquivalenceBudget, FcfError> {
    let (k, _) = kernel(phi).to_module();
    let (c, _) = cokernel(phi);
    let ek = NoiseEvaluator::new(spec, &k)?;
    let ec = NoiseEvaluator::new(spec, &c)?;
    Ok(EquivalenceBudget { tau: ek.noise_size(&k)?, mu: ec.noise_size(&c)? })
}
