//! Cyclic homology of twisted associative algebras.
//!
//! A chain of length `m` is a word `x₁ ⋯ x_m` of suspended letters whose label
//! sets form an ordered decomposition of `0..n`; words are taken modulo the
//! signed rotation `x₁ ⋯ x_m = (−1)^{m−1} x_m x₁ ⋯ x_{m−1}`. Such a word sits
//! in degree `m − 1`, so the homology is `HC_•`.

use crate::exactla::{q, BlockKey, ChainComplex, Lin, Rational, SparseMatrix, SparseVec};
use crate::operads::{Derivative, OperadTable, QuotientAlgebra, TwistedAlgebra};
use crate::perm::ordered_decompositions;
use crate::wheeledbar::{bar, trivial_wheeling, BarError};
use crate::Truncation;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A letter: its label set (increasing) and a basis index of `A(|labels|)`.
pub type Letter = (Vec<u8>, usize);
pub type Word = Vec<Letter>;

/// The rotation class of `w` as a signed representative, or `None` if a
/// rotation fixing `w` carries the sign −1.
pub fn canonical_word(w: &[Letter]) -> Option<(Word, i64)> {
    let m = w.len();
    let rot = |r: usize| -> Word { (0..m).map(|i| w[(i + r) % m].clone()).collect() };
    // rotating left by r moves r letters from the front to the back
    let sign = |r: usize| if r * (m - 1) % 2 == 0 { 1 } else { -1 };
    let mut best = 0;
    let mut best_w = rot(0);
    for r in 1..m {
        let c = rot(r);
        if c < best_w {
            best = r;
            best_w = c;
        }
    }
    for r in 1..m {
        if (best + r) % m != best && rot((best + r) % m) == best_w && sign(r) == -1 {
            return None;
        }
    }
    Some((best_w, sign(best)))
}

/// Positions of the elements of `s` inside the increasing union `u`.
fn positions(s: &[u8], u: &[u8]) -> Vec<usize> {
    s.iter().map(|x| u.binary_search(x).unwrap()).collect()
}

/// `x · y` as a combination of letters on the union of their labels.
fn multiply(a: &dyn TwistedAlgebra, x: &Letter, y: &Letter) -> (Vec<u8>, SparseVec) {
    let mut u: Vec<u8> = x.0.iter().chain(y.0.iter()).copied().collect();
    u.sort_unstable();
    let s = positions(&x.0, &u);
    let t = positions(&y.0, &u);
    let v = a.mul_split(&s, x.1, &t, y.1);
    (u, v)
}

/// The cyclic complex with its bases.
#[derive(Clone, Debug, Default)]
pub struct CyclicComplex {
    pub complex: ChainComplex,
    pub bases: BTreeMap<BlockKey, Vec<Word>>,
}

fn word_weight(a: &dyn TwistedAlgebra, w: &[Letter]) -> usize {
    w.iter().map(|(l, x)| a.weight(l.len(), *x)).sum()
}

/// Differential of a canonical word.
pub fn cyclic_differential(a: &dyn TwistedAlgebra, w: &[Letter]) -> Vec<(Word, Rational)> {
    let m = w.len();
    let mut lin = Lin::new();
    if m < 2 {
        return Vec::new();
    }
    for i in 0..m {
        // merge w[i] and w[i+1]; the wrap pair (w[m-1], w[0]) goes to the front
        let (x, y) = if i + 1 < m { (&w[i], &w[i + 1]) } else { (&w[m - 1], &w[0]) };
        let sgn: i64 = if i % 2 == 0 { 1 } else { -1 };
        let (u, v) = multiply(a, x, y);
        for (z, c) in v.iter() {
            let letter = (u.clone(), *z);
            let word: Word = if i + 1 < m {
                w[..i].iter().cloned().chain(std::iter::once(letter)).chain(w[i + 2..].iter().cloned()).collect()
            } else {
                std::iter::once(letter).chain(w[1..m - 1].iter().cloned()).collect()
            };
            if let Some((k, s)) = canonical_word(&word) {
                lin.add(k, c.clone() * q(sgn * s));
            }
        }
    }
    lin.into_sorted()
}

/// Relabels a word by `sigma`.
pub fn act_word(a: &dyn TwistedAlgebra, w: &[Letter], sigma: &[usize]) -> Vec<(Word, Rational)> {
    let mut terms: Vec<(Word, Rational)> = vec![(Vec::new(), Rational::from_integer(1.into()))];
    for (labels, x) in w {
        let img: Vec<u8> = labels.iter().map(|&l| sigma[l as usize] as u8).collect();
        let mut sorted = img.clone();
        sorted.sort_unstable();
        let local = positions(&img, &sorted);
        let v = a.relabel(labels.len(), &local, *x);
        let mut next = Vec::new();
        for (word, c) in &terms {
            for (z, d) in v.iter() {
                let mut nw = word.clone();
                nw.push((sorted.clone(), *z));
                next.push((nw, c * d));
            }
        }
        terms = next;
    }
    let mut lin = Lin::new();
    for (word, c) in terms {
        if let Some((k, s)) = canonical_word(&word) {
            lin.add(k, c * q(s));
        }
    }
    lin.into_sorted()
}

fn words(a: &dyn TwistedAlgebra, n: usize, m: usize, max_weight: usize) -> Vec<Word> {
    let items: Vec<usize> = (0..n).collect();
    let allow_empty = a.dim(0) > 0;
    let mut out = BTreeSet::new();
    for dec in ordered_decompositions(&items, m, allow_empty) {
        if dec.iter().any(|b| b.len() > a.max_arity() || a.dim(b.len()) == 0) {
            continue;
        }
        if n > 0 && !dec[0].contains(&0) {
            continue;
        }
        let blocks: Vec<Vec<u8>> = dec.iter().map(|b| b.iter().map(|&x| x as u8).collect()).collect();
        let mut choice = vec![0usize; m];
        'outer: loop {
            let w: Word = blocks.iter().cloned().zip(choice.iter().copied()).collect();
            if word_weight(a, &w) <= max_weight {
                if let Some((k, _)) = canonical_word(&w) {
                    out.insert(k);
                }
            }
            for i in 0..m {
                choice[i] += 1;
                if choice[i] < a.dim(blocks[i].len()) {
                    continue 'outer;
                }
                choice[i] = 0;
            }
            break;
        }
    }
    out.into_iter().collect()
}

/// The complex `s⁻¹Cyc(sA)` with `d ≤ t.max_degree + 1`; the top row is
/// flagged untrusted.
pub fn cyclic_complex(a: &dyn TwistedAlgebra, t: &Truncation, actions: bool) -> Result<CyclicComplex, BarError> {
    if t.max_arity > a.max_arity() && a.dim(0) == 0 {
        return Err(BarError::Truncation(format!("arity {} beyond the algebra's {}", t.max_arity, a.max_arity())));
    }
    let jobs: Vec<(usize, usize)> = (0..=t.max_arity).flat_map(|n| (1..=t.max_degree + 2).map(move |m| (n, m))).collect();
    let found: Vec<(usize, usize, Vec<Word>)> = jobs.par_iter().map(|&(n, m)| (n, m, words(a, n, m, t.max_weight))).collect();
    let mut bases: BTreeMap<BlockKey, Vec<Word>> = BTreeMap::new();
    for (n, m, ws) in found {
        for w in ws {
            bases.entry(BlockKey::new(n, word_weight(a, &w), m - 1)).or_default().push(w);
        }
    }
    for v in bases.values_mut() {
        v.sort();
    }
    let index: HashMap<&Word, usize> = bases.values().flat_map(|v| v.iter().enumerate().map(|(i, w)| (w, i))).collect();
    let mut complex = ChainComplex::new();
    for (k, v) in &bases {
        complex.add_block(*k, v.len());
        if k.d > t.max_degree {
            complex.untrusted.insert(*k);
        }
    }
    let coords = |terms: Vec<(Word, Rational)>| -> Result<SparseVec, BarError> {
        let mut out = Vec::with_capacity(terms.len());
        for (w, c) in terms {
            let i = index.get(&w).ok_or_else(|| BarError::Truncation(format!("word {w:?} outside the basis")))?;
            out.push((*i, c));
        }
        Ok(SparseVec::from_unsorted(out))
    };
    let keys: Vec<BlockKey> = bases.keys().copied().collect();
    let diffs: Vec<(BlockKey, Result<SparseMatrix, BarError>)> = keys
        .par_iter()
        .filter(|k| k.d > 0)
        .map(|k| {
            let rows = complex.dim(k.below().unwrap());
            let cols: Result<Vec<SparseVec>, BarError> = bases[k].iter().map(|w| coords(cyclic_differential(a, w))).collect();
            (*k, cols.map(|c| SparseMatrix::from_columns(rows, &c)))
        })
        .collect();
    for (k, m) in diffs {
        complex.set_differential(k, m?);
    }
    if actions {
        for k in &keys {
            let mats: Result<Vec<SparseMatrix>, BarError> = (0..k.n.saturating_sub(1))
                .map(|i| {
                    let s = crate::perm::transposition(k.n, i);
                    let cols: Result<Vec<SparseVec>, BarError> = bases[k].iter().map(|w| coords(act_word(a, w, &s))).collect();
                    cols.map(|c| SparseMatrix::from_columns(bases[k].len(), &c))
                })
                .collect();
            complex.actions.insert(*k, mats?);
        }
    }
    Ok(CyclicComplex { complex, bases })
}

/// `HC_•(A)` by `(n, w, d)`, for `d ≤ t.max_degree`.
pub fn cyclic_homology(a: &dyn TwistedAlgebra, t: &Truncation) -> Result<BTreeMap<BlockKey, usize>, BarError> {
    let c = cyclic_complex(a, t, false)?;
    Ok(c.complex.homology_dims()?.into_iter().filter(|(k, _)| k.d <= t.max_degree).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CalchomStatus {
    /// Both sides agree on every compared block.
    Match,
    Mismatch,
    /// `∂(O)` is not visibly free over `O` within the truncation.
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CalchomReport {
    pub operad: String,
    pub status: CalchomStatus,
    /// `(k, dim ∂(O)(k), dim (∂(O)₀ ∘ O)(k))`.
    pub freeness: Vec<(usize, usize, usize)>,
    pub operadic_matches_bar: bool,
    /// `(n, w, d, wheel homology, HC_{d−1})` for every compared block.
    pub blocks: Vec<(usize, usize, usize, usize, usize)>,
}

/// Compares the wheel homology of `B^↻(O)` with `HC_{•−1}(∂(Ō)₀)`.
pub fn calchom_check(op: &OperadTable, t: &Truncation) -> Result<CalchomReport, BarError> {
    let freeness = Derivative::new(op).freeness_witness(t.max_arity + 1);
    let free = freeness.iter().all(|(_, a, b)| a == b);
    if !free {
        return Ok(CalchomReport { operad: op.name().into(), status: CalchomStatus::Skipped, freeness, operadic_matches_bar: false, blocks: Vec::new() });
    }
    let u = trivial_wheeling(op);
    let wb = u.wheeled_bar(t, false)?;
    let bar_h = bar(op, t, false)?.homology()?;
    let op_h = wb.operadic.homology()?;
    let operadic_matches_bar = bar_h == op_h;
    let wheel: BTreeMap<BlockKey, usize> = wb.wheeled.homology()?.into_iter().filter(|(k, _)| k.d <= t.max_degree).collect();
    let alg = QuotientAlgebra::reduced_indecomposables(op, t.max_arity);
    let hc_t = Truncation { max_degree: t.max_degree.saturating_sub(1), ..*t };
    let hc = cyclic_homology(&alg, &hc_t)?;
    let mut keys: BTreeSet<BlockKey> = wheel.keys().copied().filter(|k| k.d >= 1).collect();
    keys.extend(hc.keys().map(|k| BlockKey { d: k.d + 1, ..*k }));
    let mut blocks = Vec::new();
    let mut ok = operadic_matches_bar;
    for k in keys {
        if k.d == 0 || k.d > t.max_degree {
            continue;
        }
        let lhs = wheel.get(&k).copied().unwrap_or(0);
        let rhs = hc.get(&BlockKey { d: k.d - 1, ..k }).copied().unwrap_or(0);
        ok &= lhs == rhs;
        blocks.push((k.n, k.w, k.d, lhs, rhs));
    }
    // the wheel part has nothing in degree zero
    ok &= wheel.iter().all(|(k, v)| k.d > 0 || *v == 0);
    let status = if ok { CalchomStatus::Match } else { CalchomStatus::Mismatch };
    Ok(CalchomReport { operad: op.name().into(), status, freeness, operadic_matches_bar, blocks })
}
