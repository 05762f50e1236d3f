//! Local factors, Satake multisets, coefficient series and symmetric-function
//! identities.

mod euler;
mod multiset;
mod series;
mod symmetric;

pub use euler::{euler_factor_from_roots, EulerFactor, TRIM_TOL};
pub use multiset::{EigenvalueMultiset, MULTISET_TOL};
pub use series::{dirichlet_convolve, dirichlet_expand, dirichlet_expand_with, CoefficientSeries};
pub use symmetric::{
    complete_homogeneous, elementary_symmetric, exterior_square, lemma_z_bound, log_coefficients,
    newton_power_from_h, power_sum, rankin_selberg_factor, symmetric_square, tensor_product,
    ZBound,
};
