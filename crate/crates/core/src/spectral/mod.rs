//! Lowest-weight states, spectra, ladder coefficients and norms of the
//! deformed oscillators.

mod lwv;
pub mod norms;
mod soft;
pub mod special;
mod spectrum;
mod state;
mod tower;

pub use lwv::{eigenvalue, lowest_weight_states, LowestWeight};
pub use norms::{ladder_coeff, norm_closed_form, norm_recursion, norm_table, NormEntry, NormTable};
pub use soft::{
    klein_similarity, phase_equivalence_check, similarity_check, soft_susy_check, Identity, IdentityReport,
    PhaseEntry, PhaseReport,
};
pub use state::{apply, inner, Affine, Basis, GammaSum, StateFn};
pub use tower::{annihilators, creators, level_words, raise, tower, TowerState};
pub use spectrum::{spectrum, spectrum_option, Level, LevelLabel, SpectrumRecord};
