//! Wheeled bar constructions of operads and the stable homology of Lie
//! algebras of derivations of free algebras, computed exactly.

pub mod cyclic;
pub mod derlie;
pub mod exactla;
pub mod operads;
pub mod perm;
pub mod report;
pub mod species;
pub mod stability;
pub mod wheeledbar;

use serde::{Deserialize, Serialize};

/// Bounds on arity, weight and homological degree of materialized blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    pub max_arity: usize,
    pub max_weight: usize,
    pub max_degree: usize,
}

impl Truncation {
    pub fn new(max_arity: usize, max_weight: usize, max_degree: usize) -> Self {
        Truncation { max_arity, max_weight, max_degree }
    }

    pub fn admits(&self, n: usize, w: usize, d: usize) -> bool {
        n <= self.max_arity && w <= self.max_weight && d <= self.max_degree
    }
}
