//! Analytic toolkit: prime sums, cutoffs, approximate functional equations,
//! character families and eigenform comparison.

mod afe;
mod compare;
mod family;
mod mellin;
mod oracle;
mod sums;

pub use afe::{
    afe_gl2_central, afe_gl2_central_with, afe_gsp4_central, afe_gsp4_central_with, auto_c_pi,
    epsilon_factor, spin_gamma, AfeConfig, CentralValue, Gl2Afe, Gsp4Afe, RootSign,
};
pub use compare::{compare_eigenforms, CompareOptions, ComparisonKind, ComparisonReport, ComparisonVerdict};
pub use family::{
    family_q, first_moment, moment_terms, sk_average, Family, FamilyOverrides, FamilyParams, FirstMoment,
    SkAverage,
};
pub use mellin::{
    bump_v, cutoff_u, partition_v, CutoffU, GammaFactor, MellinWeight, Quadrature, TestFunction,
};
pub use oracle::{damped_sum, richardson, smoothed_value, DAMPING_SPAN};
pub use sums::{hypothesis_h_sum, selberg_sum, siegel_walfisz_sum, SelbergSum};
