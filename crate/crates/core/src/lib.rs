//! Rationally extended harmonic oscillators built by first-order SUSY, with
//! exact rational algebra for potentials and states and a numerical oracle
//! that checks every closed-form claim.

pub mod cli;
pub mod error;
pub mod models;
pub mod numeric;
pub mod orthopoly;
pub mod potential;
pub mod ratpoly;
pub mod susy;

pub use error::{Error, Result};
pub use potential::{Domain, PotentialForm};
