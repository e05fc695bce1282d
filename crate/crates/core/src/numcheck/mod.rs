//! Numerical cross-checks: quadrature norms, Gram matrices and grid spectra.

mod checks;
mod grid;
mod quad;
mod report;

pub use checks::{gram_matrix, klein_n1_states, nonklein_states, norms_check, NamedState};
pub use grid::{channel_eigenvalues, channels, grid_spectrum, tridiagonal_lowest, wall_eigenvalues, Channel, GridResult, GridSpec};
pub use quad::{quad_norm, quad_overlap};
pub use report::{NumReport, NumRow};
