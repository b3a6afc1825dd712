//! Modular analysis of translationally covariant generalized free fields.

pub mod lorentz;
pub mod poly;
pub mod rational;
pub mod shell;
