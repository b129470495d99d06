//! Free algebras `O(V)`, their derivations, the universal derivation into
//! `∂(O)(V)` and the divergence.

use super::schur::{DerivativeSpecies, Elem, Mono, OperadSpecies, QuotientSpecies, Schur};
use super::DerLieError;
use crate::exactla::{q, Lin, Rational, SparseVec};
use crate::operads::{Derivative, OperadTable};
use num_traits::Zero;

/// A derivation, given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub images: Vec<Elem>,
}

impl Derivation {
    pub fn zero(n: usize) -> Self {
        Derivation { images: vec![Vec::new(); n] }
    }

    /// `x_gen ↦ m`, all other generators to zero.
    pub fn basic(n: usize, gen: u8, m: Mono) -> Self {
        let mut d = Self::zero(n);
        d.images[gen as usize] = vec![(m, q(1))];
        d
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|x| x.is_empty())
    }

    pub fn add_scaled(&self, c: &Rational, other: &Derivation) -> Derivation {
        let images = self.images.iter().zip(&other.images).map(|(a, b)| add_elems(a, c, b)).collect();
        Derivation { images }
    }
}

/// `a + c·b`.
pub fn add_elems(a: &Elem, c: &Rational, b: &Elem) -> Elem {
    let mut acc = Lin::new();
    for (m, x) in a {
        acc.add(m.clone(), x.clone());
    }
    for (m, x) in b {
        acc.add(m.clone(), x * c);
    }
    acc.into_sorted()
}

/// A basis derivation of `Der⁺`: `x_gen ↦ mono`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerKey {
    pub gen: u8,
    pub mono: Mono,
}

/// `O(V)` for `dim V = n` up to weight `max_weight`, together with
/// `∂(O)(V)` and its reduced commutator quotient.
pub struct FreeAlgebra<'a> {
    pub op: &'a OperadTable,
    pub n: usize,
    pub max_weight: usize,
    pub alg: Schur<OperadSpecies<'a>>,
    pub env: Schur<DerivativeSpecies<'a>>,
    pub tr: Schur<QuotientSpecies<'a>>,
}

impl<'a> FreeAlgebra<'a> {
    pub fn new(op: &'a OperadTable, n: usize, max_weight: usize) -> Result<Self, DerLieError> {
        if n == 0 || n > 250 {
            return Err(DerLieError::Config(format!("dim V = {n} is out of range")));
        }
        let max_arity = if op.is_arity_one() { 1 } else { max_weight + 1 };
        op.require_arity(max_arity)?;
        let d = Derivative::new(op);
        let parts = (0..max_arity).map(|k| d.reduced_commutator_quotient(k)).collect();
        Ok(FreeAlgebra {
            op,
            n,
            max_weight,
            alg: Schur::new(OperadSpecies(op), n, max_arity),
            env: Schur::new(DerivativeSpecies(d), n, max_arity - 1),
            tr: Schur::new(QuotientSpecies { d, parts }, n, max_arity - 1),
        })
    }

    /// Basis of the weight-`w` part of `O(V)`.
    pub fn basis(&self, w: usize) -> Vec<Mono> {
        (0..=self.alg.max_arity).flat_map(|k| self.alg.basis(k)).filter(|m| self.alg.weight(m) == w).collect()
    }

    /// Basis of the weight-`w` part of `Der⁺`: derivations sending a generator
    /// into the augmentation ideal.
    pub fn der_basis(&self, w: usize) -> Vec<DerKey> {
        let mut out = Vec::new();
        for gen in 0..self.n as u8 {
            for m in self.basis(w) {
                if self.op.in_ideal(m.arity(), self.alg.lift(&m)) {
                    out.push(DerKey { gen, mono: m.clone() });
                }
            }
        }
        out
    }

    pub fn der_weight(&self, k: &DerKey) -> usize {
        self.alg.weight(&k.mono)
    }

    /// Torus weight of a monomial: letter counts.
    pub fn counts(&self, word: &[u8]) -> Vec<i32> {
        let mut t = vec![0; self.n];
        for &l in word {
            t[l as usize] += 1;
        }
        t
    }

    pub fn der_torus(&self, k: &DerKey) -> Vec<i32> {
        let mut t = self.counts(&k.mono.word);
        t[k.gen as usize] -= 1;
        t
    }

    fn check_arity(&self, k: usize) -> Result<(), DerLieError> {
        if k > self.alg.max_arity {
            return Err(DerLieError::Truncation(format!("arity {k} beyond weight truncation {}", self.max_weight)));
        }
        Ok(())
    }

    /// `D(f)`.
    pub fn apply(&self, d: &Derivation, f: &Elem) -> Result<Elem, DerLieError> {
        let mut terms = Vec::new();
        for (m, c) in f {
            let k = m.arity();
            let x = SparseVec::unit(self.alg.lift(m));
            for p in 0..k {
                for (m2, c2) in &d.images[m.word[p] as usize] {
                    let k2 = m2.arity();
                    self.check_arity(k + k2 - 1)?;
                    let v = self.op.compose_vec(k, p, &x, k2, &SparseVec::unit(self.alg.lift(m2)));
                    let mut w = m.word[..p].to_vec();
                    w.extend_from_slice(&m2.word);
                    w.extend_from_slice(&m.word[p + 1..]);
                    terms.push((v, w, c * c2));
                }
            }
        }
        Ok(self.alg.collect(terms))
    }

    /// `D ◁ D'`, the derivation `x ↦ D(D'(x))`.
    pub fn prelie(&self, d1: &Derivation, d2: &Derivation) -> Result<Derivation, DerLieError> {
        let images = d2.images.iter().map(|f| self.apply(d1, f)).collect::<Result<_, _>>()?;
        Ok(Derivation { images })
    }

    pub fn bracket(&self, d1: &Derivation, d2: &Derivation) -> Result<Derivation, DerLieError> {
        Ok(self.prelie(d1, d2)?.add_scaled(&q(-1), &self.prelie(d2, d1)?))
    }

    /// The universal derivation: `df = Σ_i (∂f/∂x_i) dx_i`, returned as the
    /// coefficients `∂f/∂x_i` in `∂(O)(V)`.
    pub fn universal_derivation(&self, f: &Elem) -> Vec<Elem> {
        let mut terms: Vec<Vec<(SparseVec, Vec<u8>, Rational)>> = vec![Vec::new(); self.n];
        for (m, c) in f {
            let k = m.arity();
            let x = SparseVec::unit(self.alg.lift(m));
            for p in 0..k {
                let sigma: Vec<usize> = (0..k)
                    .map(|j| {
                        if j < p {
                            j
                        } else if j == p {
                            k - 1
                        } else {
                            j - 1
                        }
                    })
                    .collect();
                let v = self.op.relabel_vec(k, &sigma, &x);
                let mut w = m.word.clone();
                w.remove(p);
                terms[m.word[p] as usize].push((v, w, c.clone()));
            }
        }
        terms.into_iter().map(|t| self.env.collect(t)).collect()
    }

    /// `Σ_i ∂D(x_i)/∂x_i` in `∂(O)(V)`.
    pub fn divergence_unprojected(&self, d: &Derivation) -> Elem {
        let mut acc = Vec::new();
        for (i, f) in d.images.iter().enumerate() {
            acc = add_elems(&acc, &q(1), &self.universal_derivation(f)[i]);
        }
        acc
    }

    /// Image of an element of `∂(O)(V)` in the commutator quotient.
    pub fn project(&self, x: &Elem) -> Elem {
        self.tr.collect(x.iter().map(|(m, c)| {
            let k = m.arity();
            (self.tr.species.project(k, &SparseVec::unit(self.env.lift(m))), m.word.clone(), c.clone())
        }))
    }

    pub fn divergence(&self, d: &Derivation) -> Elem {
        self.project(&self.divergence_unprojected(d))
    }

    /// `D_*`, the action of a derivation on the commutator quotient by
    /// substitution into the unmarked inputs.
    pub fn act_on_trace(&self, d: &Derivation, x: &Elem) -> Result<Elem, DerLieError> {
        let mut terms = Vec::new();
        for (m, c) in x {
            let k = m.arity();
            let v = self.tr.species.lift(k, &SparseVec::unit(self.tr.lift(m)));
            for p in 0..k {
                for (m2, c2) in &d.images[m.word[p] as usize] {
                    let k2 = m2.arity();
                    if k + k2 - 1 > self.env.max_arity {
                        return Err(DerLieError::Truncation(format!("arity {} beyond weight truncation {}", k + k2 - 1, self.max_weight)));
                    }
                    let u = self.op.compose_vec(k + 1, p, &v, k2, &SparseVec::unit(self.alg.lift(m2)));
                    let mut w = m.word[..p].to_vec();
                    w.extend_from_slice(&m2.word);
                    w.extend_from_slice(&m.word[p + 1..]);
                    terms.push((u, w, c * c2));
                }
            }
        }
        Ok(self.project(&self.env.collect(terms)))
    }

    /// The adjoint action of `E_{i,i+1}` on derivations.
    pub fn raise_derivation(&self, d: &Derivation, i: u8) -> Derivation {
        let mut images: Vec<Elem> = d.images.iter().map(|f| self.alg.raise(f, i)).collect();
        let moved = d.images[i as usize].clone();
        images[i as usize + 1] = add_elems(&images[i as usize + 1], &q(-1), &moved);
        Derivation { images }
    }

    /// Weight of a homogeneous element, `None` for zero.
    pub fn weight_of(&self, f: &Elem) -> Option<usize> {
        f.iter().find(|(_, c)| !c.is_zero()).map(|(m, _)| self.alg.weight(m))
    }
}
