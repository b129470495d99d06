//! Schur functors `S(V) = ⊕_k S(k) ⊗_{S_k} V^{⊗k}` of species with explicit
//! bases. A monomial is a sorted word in the generators together with a basis
//! index of the coinvariants of `S(k)` under the stabilizer of the word.

use crate::exactla::{q, Lin, Rational, SparseVec};
use crate::operads::{Derivative, OperadTable, Quotient};
use std::collections::HashMap;

/// A linear species given on basis vectors.
pub trait LinearSpecies: Sync {
    fn dim(&self, k: usize) -> usize;
    fn relabel(&self, k: usize, sigma: &[usize], x: &SparseVec) -> SparseVec;
    fn weight(&self, k: usize, a: usize) -> usize;
}

pub struct OperadSpecies<'a>(pub &'a OperadTable);

impl LinearSpecies for OperadSpecies<'_> {
    fn dim(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.0.dim(k)
        }
    }
    fn relabel(&self, k: usize, sigma: &[usize], x: &SparseVec) -> SparseVec {
        self.0.relabel_vec(k, sigma, x)
    }
    fn weight(&self, k: usize, a: usize) -> usize {
        self.0.weight(k, a)
    }
}

/// `∂(O)`, the marked input last.
pub struct DerivativeSpecies<'a>(pub Derivative<'a>);

impl LinearSpecies for DerivativeSpecies<'_> {
    fn dim(&self, k: usize) -> usize {
        self.0.dim(k)
    }
    fn relabel(&self, k: usize, sigma: &[usize], x: &SparseVec) -> SparseVec {
        self.0.relabel(k, sigma, x)
    }
    fn weight(&self, k: usize, a: usize) -> usize {
        self.0.op.weight(k + 1, a)
    }
}

/// A quotient of `∂(O)` by an `S_k`-stable subspace in each arity.
pub struct QuotientSpecies<'a> {
    pub d: Derivative<'a>,
    pub parts: Vec<Quotient>,
}

impl QuotientSpecies<'_> {
    pub fn project(&self, k: usize, x: &SparseVec) -> SparseVec {
        self.parts[k].coords(x)
    }

    pub fn lift(&self, k: usize, x: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, c) in x.iter() {
            acc = acc.add_scaled(c, &self.parts[k].lift(*i));
        }
        acc
    }
}

impl LinearSpecies for QuotientSpecies<'_> {
    fn dim(&self, k: usize) -> usize {
        self.parts.get(k).map(|p| p.dim()).unwrap_or(0)
    }
    fn relabel(&self, k: usize, sigma: &[usize], x: &SparseVec) -> SparseVec {
        self.project(k, &self.d.relabel(k, sigma, &self.lift(k, x)))
    }
    fn weight(&self, k: usize, a: usize) -> usize {
        self.d.op.weight(k + 1, self.parts[k].reps[a])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub word: Vec<u8>,
    pub idx: u32,
}

impl Mono {
    pub fn arity(&self) -> usize {
        self.word.len()
    }
}

pub type Elem = Vec<(Mono, Rational)>;

/// Lengths of the runs of equal letters of a sorted word.
fn runs(word: &[u8]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, x) in word.iter().enumerate() {
        if i > 0 && word[i - 1] == *x {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
        }
    }
    out
}

/// All compositions of `k` into at most `parts` positive parts.
fn compositions(k: usize, parts: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if parts == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=k {
        for mut rest in compositions(k - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub struct Schur<S: LinearSpecies> {
    pub species: S,
    pub n: usize,
    pub max_arity: usize,
    quotients: HashMap<Vec<usize>, Quotient>,
}

impl<S: LinearSpecies> Schur<S> {
    pub fn new(species: S, n: usize, max_arity: usize) -> Self {
        let mut quotients = HashMap::new();
        for k in 0..=max_arity {
            let dim = species.dim(k);
            for c in compositions(k, n) {
                let mut rel = Vec::new();
                let mut start = 0;
                for &len in &c {
                    for p in start..start + len - 1 {
                        let s = crate::perm::transposition(k, p);
                        for a in 0..dim {
                            let v = species.relabel(k, &s, &SparseVec::unit(a)).add_scaled(&q(-1), &SparseVec::unit(a));
                            if !v.is_zero() {
                                rel.push(v);
                            }
                        }
                    }
                    start += len;
                }
                quotients.insert(c, Quotient::new(dim, &rel));
            }
        }
        Schur { species, n, max_arity, quotients }
    }

    fn quotient(&self, word: &[u8]) -> &Quotient {
        &self.quotients[&runs(word)]
    }

    /// Representative in `S(k)` of a monomial.
    pub fn lift(&self, m: &Mono) -> usize {
        self.quotient(&m.word).reps[m.idx as usize]
    }

    pub fn weight(&self, m: &Mono) -> usize {
        self.species.weight(m.arity(), self.lift(m))
    }

    /// Sorted words of length `k` in `n` letters.
    pub fn words(&self, k: usize) -> Vec<Vec<u8>> {
        fn rec(k: usize, from: u8, n: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for x in from..n {
                cur.push(x);
                rec(k, x, n, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, 0, self.n as u8, &mut Vec::new(), &mut out);
        out
    }

    /// Monomials of arity `k`.
    pub fn basis(&self, k: usize) -> Vec<Mono> {
        if k > self.max_arity {
            return Vec::new();
        }
        self.words(k)
            .into_iter()
            .flat_map(|w| {
                let d = self.quotient(&w).dim();
                (0..d as u32).map(move |idx| Mono { word: w.clone(), idx })
            })
            .collect()
    }

    /// The class of `x ⊗ v_{word[0]} ⊗ … ⊗ v_{word[k-1]}`, input `p` of `x`
    /// receiving `word[p]`.
    pub fn canonical(&self, x: &SparseVec, word: &[u8]) -> Vec<(Mono, Rational)> {
        let k = word.len();
        assert!(k <= self.max_arity, "arity {k} beyond the Schur truncation {}", self.max_arity);
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&p| word[p]);
        let mut sigma = vec![0; k];
        for (new, &old) in order.iter().enumerate() {
            sigma[old] = new;
        }
        let sorted: Vec<u8> = order.iter().map(|&p| word[p]).collect();
        let y = self.species.relabel(k, &sigma, x);
        let q = self.quotient(&sorted);
        q.coords(&y).0.into_iter().map(|(i, c)| (Mono { word: sorted.clone(), idx: i as u32 }, c)).collect()
    }

    /// Linear combination of monomials from `(x, word)` pairs.
    pub fn collect(&self, terms: impl IntoIterator<Item = (SparseVec, Vec<u8>, Rational)>) -> Elem {
        let mut acc = Lin::new();
        for (x, word, c) in terms {
            for (m, d) in self.canonical(&x, &word) {
                acc.add(m, d * &c);
            }
        }
        acc.into_sorted()
    }

    /// The raising operator `E_{i,i+1}`, which substitutes `x_i` for
    /// `x_{i+1}` as a derivation.
    pub fn raise(&self, x: &Elem, i: u8) -> Elem {
        self.collect(x.iter().flat_map(|(m, c)| {
            let rep = SparseVec::unit(self.lift(m));
            m.word.iter().enumerate().filter(|(_, &l)| l == i + 1).map(move |(p, _)| {
                let mut w = m.word.clone();
                w[p] = i;
                (rep.clone(), w, c.clone())
            })
        }))
    }
}
