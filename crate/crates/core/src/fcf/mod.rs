//! Feature counting functions, the invariant `bar(F)`, equivalence budgets
//! and closeness bounds between modules.

mod bar;
mod budget;
mod close;
mod function;

pub use bar::{
    bar_r1, bar_search, bar_zero_check, exhaustive_fits, min_rank_submodule, BarSample, BarSearch, Engine, Minimizer, EXHAUSTIVE_CAP_BITS,
    ORBIT_COMBINATION_CAP, ORBIT_SUBSET_CAP,
};
pub use budget::{equivalence_budget, EquivalenceBudget};
pub use close::{closeness_upper_bound, is_interleaved, ClosenessCertificate, NAT_ENUMERATION_CAP};
pub use function::{fcf_interleaving_distance, Extended, FcfShapeError, FeatureCountingFunction, StepStart};

use crate::barcode1::BarcodeError;
use crate::gridmod::GridError;
use crate::noise::NoiseError;
use crate::structure::StructureError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FcfError {
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Barcode(#[from] BarcodeError),
    #[error("expected a one-parameter module, got r = {0}")]
    NotOneDimensional(usize),
    #[error("subfunctor search over total dimension {total_dim} exceeds the cap")]
    SearchSpaceTooLarge { total_dim: usize },
    #[error("natural transformation space of dimension {dim} is too large to enumerate")]
    NatSpaceTooLarge { dim: usize },
    #[error("this engine does not support the given noise")]
    UnsupportedNoise,
}
