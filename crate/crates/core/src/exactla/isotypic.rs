use super::characters::{character_table, dim_irrep, Partition};
use super::complex::{BlockKey, ChainComplex};
use super::field::{q, Rational};
use super::reduce::rank_of_vectors_bounded;
use super::sparse::SparseMatrix;
use crate::perm::{compose, cycle_type, identity, transposition, Perm};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap, VecDeque};

#[derive(Debug, thiserror::Error)]
pub enum IsotypicError {
    #[error("block {0:?} has no group action")]
    MissingAction(BlockKey),
    #[error("isotypic homology at {0:?} for {1:?} is not a multiple of the irreducible dimension")]
    NotDivisible(BlockKey, Partition),
    #[error(transparent)]
    Complex(#[from] super::complex::ComplexError),
}

/// Matrices of every permutation, generated from the adjacent transpositions
/// (`gens[i]` represents `s_i`).
pub fn all_group_matrices(n: usize, dim: usize, gens: &[SparseMatrix]) -> Vec<(Perm, SparseMatrix)> {
    let mut seen: HashMap<Perm, SparseMatrix> = HashMap::new();
    let id = identity(n);
    seen.insert(id.clone(), SparseMatrix::identity(dim));
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let t = compose(&transposition(n, i), &p);
            if seen.contains_key(&t) {
                continue;
            }
            let m = g.mul(&seen[&p]);
            seen.insert(t.clone(), m);
            queue.push_back(t);
        }
    }
    let mut v: Vec<_> = seen.into_iter().collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

/// Multiplicity of the irreducible `lambda` in a representation given by all
/// its group matrices.
pub fn multiplicity_from_traces(n: usize, mats: &[(Perm, SparseMatrix)], lambda: &[usize]) -> Rational {
    let table = character_table(n);
    let li = table.irrep_index(lambda).expect("partition of n");
    let mut s = Rational::zero();
    for (p, m) in mats {
        let ci = table.class_index(&cycle_type(p));
        s += q(table.values[li][ci]) * m.trace();
    }
    s / q(mats.len() as i64)
}

fn isotypic_projector(n: usize, mats: &[(Perm, SparseMatrix)], lambda: &[usize], dim: usize) -> SparseMatrix {
    let table = character_table(n);
    let li = table.irrep_index(lambda).expect("partition of n");
    let mut acc = SparseMatrix::zeros(dim, dim);
    for (p, m) in mats {
        let c = table.values[li][table.class_index(&cycle_type(p))];
        if c != 0 {
            acc = acc.add_scaled(&q(c), m);
        }
    }
    acc
}

/// For every block of arity `n`, the multiplicity of each irreducible
/// `S_n`-module in homology, computed from the complex restricted to the image
/// of the central idempotent of that irreducible.
pub fn isotypic_homology(c: &ChainComplex, n: usize) -> Result<BTreeMap<BlockKey, BTreeMap<Partition, usize>>, IsotypicError> {
    c.check_d_squared()?;
    let table = character_table(n);
    let keys: Vec<BlockKey> = c.blocks.keys().copied().filter(|k| k.n == n && c.dim(*k) > 0).collect();
    let mut group: BTreeMap<BlockKey, Vec<(Perm, SparseMatrix)>> = BTreeMap::new();
    for k in &keys {
        let gens = if n >= 2 { c.actions.get(k).ok_or(IsotypicError::MissingAction(*k))?.clone() } else { Vec::new() };
        group.insert(*k, all_group_matrices(n, c.dim(*k), &gens));
    }
    // projectors and isotypic dimensions per (block, irrep)
    let jobs: Vec<(BlockKey, usize)> = keys.iter().flat_map(|k| (0..table.irreps.len()).map(move |i| (*k, i))).collect();
    let proj: HashMap<(BlockKey, usize), (SparseMatrix, usize)> = jobs
        .par_iter()
        .map(|(k, i)| {
            let lam = &table.irreps[*i];
            let mats = &group[k];
            let mult = multiplicity_from_traces(n, mats, lam);
            let dim = (mult * q(dim_irrep(lam) as i64)).to_integer().to_usize().unwrap();
            ((*k, *i), (isotypic_projector(n, mats, lam, c.dim(*k)), dim))
        })
        .collect();
    // rank of the differential out of each block restricted to each isotypic part
    let out_rank: HashMap<(BlockKey, usize), usize> = jobs
        .par_iter()
        .map(|(k, i)| {
            let (e, dim) = &proj[&(*k, *i)];
            let r = match (c.differentials.get(k), k.below()) {
                (Some(d), Some(b)) if d.nrows > 0 && *dim > 0 => {
                    let lower = proj.get(&(b, *i)).map(|x| x.1).unwrap_or(0);
                    let prod = d.mul(e);
                    rank_of_vectors_bounded(&prod.columns(), prod.nrows, (*dim).min(lower))
                }
                _ => 0,
            };
            ((*k, *i), r)
        })
        .collect();
    let mut out = BTreeMap::new();
    for k in &keys {
        let mut m = BTreeMap::new();
        for (i, lam) in table.irreps.iter().enumerate() {
            let dim = proj[&(*k, i)].1;
            let r_out = out_rank[&(*k, i)];
            let r_in = out_rank.get(&(k.above(), i)).copied().unwrap_or(0);
            let h = dim - r_out - r_in;
            let f = dim_irrep(lam) as usize;
            if h % f != 0 {
                return Err(IsotypicError::NotDivisible(*k, lam.clone()));
            }
            if h > 0 {
                m.insert(lam.clone(), h / f);
            }
        }
        out.insert(*k, m);
    }
    Ok(out)
}
