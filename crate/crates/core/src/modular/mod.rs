//! Spectral models of a unitary one-parameter group with a conjugation.

mod discrete;
mod laplace;

pub use discrete::{
    conj_j, double_kms_collapse, flow, inner, kms_check, kms_midpoint, modular_group, norm, standard_subspace_test,
    DiscreteSpectralModel, SpectralVector, DEFAULT_TOL,
};
pub use laplace::{
    distribution_limit_check, laplace, laplace_asymptotics, laplace_moment, log_laplace, moment_index,
    temperedness_test, AsymptoticReport, DistributionLimit, Regime, TailMeasure, TemperednessReport, DYADIC_RANGE,
    MAX_MOMENT,
};
