//! Strong-ideal decompositions, the annihilator filtration, comparison of
//! decompositions and the flat Riemannian split.

pub mod commutant;
pub mod compare;
pub mod decomposition;
pub mod filtration;
pub mod flat;
pub mod idempotent;
pub mod isometry;

pub use commutant::{commutant, commutant_of};
pub use compare::{compare_decompositions, nabla_span, CompareReport};
pub use decomposition::{
    decompose, Certificate, DecomposeOptions, Decomposition, Evidence, SplitStep,
};
pub use filtration::{filtration, FiltrationChain};
pub use flat::{flat_riemannian_structure, FlatSplit, FlatStructure};
pub use idempotent::{
    find_splitting_idempotent, IdempotentSearch, SearchBudget, DEFAULT_BUDGET, DEFAULT_SEED,
};
pub use isometry::{adapted_basis, build_strong_isometry, AdaptedBasis, IsometryOutcome, StrongIsometry};
