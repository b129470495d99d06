//! Exact linear algebra over the rationals: sparse matrices, ranks, chain
//! complexes, symmetric group characters and isotypic decompositions.

pub mod characters;
pub mod complex;
pub mod field;
pub mod isotypic;
pub mod reduce;
pub mod sparse;

pub use characters::{character, character_table, dim_irrep, partitions, CharacterTable, Partition};
pub use complex::{BlockKey, ChainComplex, ComplexError};
pub use field::{parse_rational, q, qf, Rational};
pub use isotypic::{isotypic_homology, IsotypicError};
pub use reduce::{certified_modular_rank, nullspace, rank, rank_dense, rank_of_vectors, KernelBasis, Rref};
pub use sparse::{Lin, SparseMatrix, SparseVec};
