//! Operads given by partial compositions on explicit bases.
//!
//! Inputs are numbered from 0. `a ∘_i b` for `a` of arity `n` and `b` of
//! arity `m` has inputs `0..i` from `a`, then `i..i+m` from `b`, then the
//! remaining inputs of `a` shifted by `m - 1`. `relabel(n, σ, a)` renames
//! input `j` to `σ(j)`.

pub mod builtins;
pub mod derivative;
pub mod lie;
mod table;

pub use builtins::{Alg1, Ass, Com, Lie, PreLie};
pub use derivative::{Derivative, Quotient, QuotientAlgebra, TwistedAlgebra};
pub use table::{block_perm, build_operad, OperadTable, WeightRule};

use crate::exactla::SparseVec;
use serde::{Deserialize, Serialize};

pub trait Operad: Send + Sync {
    fn name(&self) -> &str;
    fn dim(&self, n: usize) -> usize;
    fn basis_tag(&self, n: usize, a: usize) -> String;
    /// Index of the identity in arity one.
    fn unit(&self) -> usize;
    /// Whether a basis element lies in the augmentation ideal; the basis is
    /// adapted so that the unit is the only element outside it.
    fn in_ideal(&self, n: usize, a: usize) -> bool;
    fn weight(&self, n: usize, a: usize) -> usize;
    fn compose(&self, n: usize, i: usize, a: usize, m: usize, b: usize) -> SparseVec;
    fn relabel(&self, n: usize, sigma: &[usize], a: usize) -> SparseVec;
}

#[derive(Debug, thiserror::Error)]
pub enum OperadError {
    #[error("unknown operad {0:?}")]
    Unknown(String),
    #[error("invalid structure constants: {0}")]
    InvalidConstants(String),
    #[error("invalid weight rule: {0}")]
    InvalidWeights(String),
    #[error("arity {needed} exceeds the truncation {max}")]
    Truncation { needed: usize, max: usize },
    #[error("axiom {axiom} fails at {at}")]
    Axiom { axiom: &'static str, at: String },
    #[error("cache: {0}")]
    Cache(String),
}

/// Serialized description of an operad.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperadSpec {
    pub name: String,
    /// For `alg1`: `c[i][j][k]` is the coefficient of `e_k` in `e_i e_j`,
    /// written as `"p"` or `"p/q"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity1_structure_constants: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_rule: Option<WeightRule>,
    pub max_arity: usize,
}

impl OperadSpec {
    pub fn builtin(name: &str, max_arity: usize) -> Self {
        OperadSpec { name: name.to_string(), arity1_structure_constants: None, weight_rule: None, max_arity }
    }

    /// `A₊` for `A = k` (idempotent `e`, weight 0).
    pub fn alg1_ground_field() -> Self {
        OperadSpec {
            name: "alg1".into(),
            arity1_structure_constants: Some(vec![vec![vec!["1".into()]]]),
            weight_rule: Some(WeightRule::IdealWeights(vec![0])),
            max_arity: 1,
        }
    }

    /// `A₊` for `A₊ = k[ε]/(ε²)` with `ε` in weight 1.
    pub fn alg1_dual_numbers() -> Self {
        OperadSpec {
            name: "alg1".into(),
            arity1_structure_constants: Some(vec![vec![vec!["0".into()]]]),
            weight_rule: Some(WeightRule::IdealWeights(vec![1])),
            max_arity: 1,
        }
    }
}
