//! Exact computer algebra for spo(2|2)-equivariant quantization on the
//! supercircle S^{1|2}.
//!
//! Superfunctions, contact vector fields, differential operators between
//! weighted densities and their symbols are all represented exactly over the
//! rationals, so every identity in the test suites is checked with zero
//! tolerance.

pub mod casimir;
pub mod cli;
pub mod contact;
pub mod diffop;
pub mod error;
pub mod json;
pub mod parse;
pub mod poly;
pub mod quantize;
pub mod random;
pub mod rational;
pub mod spo_matrix;
pub mod superfn;
pub mod symbol;

pub use casimir::{alpha, casimir, critical_values, is_critical, CasimirSpec, Rep};
pub use contact::{contact_bracket, hamiltonian_field, Generator, VectorField};
pub use diffop::{lie_density, lie_density_op, lie_op, DiffOp, Mono};
pub use error::{Error, Result};
pub use parse::parse_superfn;
pub use poly::Poly;
pub use quantize::{
    quantize, quantize_closed_form, quantize_iterative, verify_equivariance, Method, QuantizationResult, Status,
};
pub use rational::{HalfInt, Rational, Weight};
pub use spo_matrix::{kform, projective_embed, spo_member, SpoMatrix};
pub use superfn::{Dir, Parity, SuperFn};
pub use symbol::{
    gamma, gamma_closed_form, lie_symbol, n_closed_form, principal_symbol, q_aff, q_aff_inv,
    GradedSymbol, Symbol,
};
