//! Partition function of the elliptic solid-on-solid model on an `L x L`
//! lattice with domain-wall boundaries.
//!
//! Two independent routes are provided: exhaustive enumeration of height
//! configurations ([`lattice::enumerate_z`]) and a ratio of determinants of
//! a `L(L+3)/2` square matrix ([`determinant::partition_function_det`]).
//! [`funceq`] checks that the determinant route solves the functional
//! equations it was derived from.

pub mod determinant;
pub mod error;
pub mod fixtures;
pub mod funceq;
pub mod lattice;
pub mod params;
pub mod sampling;
pub mod theta;

pub use num_complex::Complex64;

pub use determinant::{log_partition_function, partition_function_det, prefactor, LogDet};
pub use error::{Result, SosError};
pub use fixtures::{ParameterSet, SET_1, SET_2};
pub use funceq::{coeffs_a, coeffs_ad, coeffs_d, residual_a, residual_ad, residual_d, CoefficientSet, EquationKind};
pub use lattice::{count_states, enumerate_z, MAX_ENUMERATION_L};
pub use params::{regularity, Condition, ModelParameters, VariableSet, DEFAULT_REGULARITY_TOL};
pub use theta::{EllipticNome, ThetaEvaluator, ThetaValue};
