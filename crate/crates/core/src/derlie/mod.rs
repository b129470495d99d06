//! Lie algebras of derivations of free algebras over an operad and their
//! Chevalley–Eilenberg homology.

pub mod ce;
pub mod freealg;
pub mod schur;

pub use ce::{ce_complex, tensor_invariants, Chain, Coefficients, DgLie, Gen, LieKind};
pub use freealg::{DerKey, Derivation, FreeAlgebra};
pub use schur::{Elem, Mono};

use crate::exactla::ComplexError;
use crate::operads::OperadError;

#[derive(Debug, thiserror::Error)]
pub enum DerLieError {
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("truncation exceeded: {0}")]
    Truncation(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not closed: {0}")]
    NotClosed(String),
}
