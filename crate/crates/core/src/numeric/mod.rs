//! Independent numerical oracle: discretized Hamiltonians, Sturm-bisection
//! eigenvalues, quadrature, residuals, overlaps and node counts.

mod operator;
pub mod quadrature;
pub mod report;
pub mod verify;

pub use operator::{discretize, from_samples, lowest_eigenvalues, DiscretizedOperator, Grid, Scheme};
pub use report::{verify_axis, verify_model, OracleConfig, SpectrumReport};
