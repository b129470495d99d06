//! The derivative `∂(O)(k) = O(k+1)`, whose last input is the marked slot `⋆`.
//!
//! `μ(c₁, c₂) = c₁ ∘_⋆ c₂` makes it a twisted associative algebra (labels of
//! `c₁` come first), and composition into unmarked slots makes it a right
//! `O`-module.

use super::OperadTable;
use crate::exactla::{q, Rref, SparseVec};
use crate::perm::{set_partitions, subsets, Perm};

/// Permutation of `0..k` sending `0..|s|` onto `s` and the rest onto `t`,
/// both increasingly, extended by fixing `⋆ = k`.
pub fn shuffle_with_star(s: &[usize], t: &[usize]) -> Perm {
    let mut p: Perm = s.iter().chain(t.iter()).copied().collect();
    p.push(p.len());
    p
}

/// A quotient of a based space by the span of some vectors. The quotient
/// basis is the set of free columns of the reduced relations.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ambient: usize,
    rref: Rref,
    /// Ambient basis vectors representing the quotient basis.
    pub reps: Vec<usize>,
}

impl Quotient {
    pub fn new(ambient: usize, relations: &[SparseVec]) -> Self {
        let rref = Rref::of_vectors(relations, ambient);
        let reps = rref.free_columns().to_vec();
        Quotient { ambient, rref, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        self.rref.quotient_coords(v)
    }

    pub fn lift(&self, i: usize) -> SparseVec {
        SparseVec::unit(self.reps[i])
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.rref.contains(v)
    }
}

/// Structure maps of `∂(O)`.
#[derive(Clone, Copy)]
pub struct Derivative<'a> {
    pub op: &'a OperadTable,
}

impl<'a> Derivative<'a> {
    pub fn new(op: &'a OperadTable) -> Self {
        Derivative { op }
    }

    pub fn dim(&self, k: usize) -> usize {
        self.op.dim(k + 1)
    }

    /// Basis of `∂(Ō)(k)`, the part of `O(k+1)` in the augmentation ideal.
    pub fn ideal_basis(&self, k: usize) -> Vec<usize> {
        self.op.ideal_basis(k + 1)
    }

    /// `μ(c₁, c₂)` with the labels of `c₁` first.
    pub fn mu(&self, k1: usize, x: &SparseVec, k2: usize, y: &SparseVec) -> SparseVec {
        self.op.compose_vec(k1 + 1, k1, x, k2 + 1, y)
    }

    /// `μ` through the Cauchy product: the labels of `x` go to `s` and those
    /// of `y` to `t`, where `s ⊔ t = 0..k`.
    pub fn mu_split(&self, s: &[usize], x: &SparseVec, t: &[usize], y: &SparseVec) -> SparseVec {
        let k = s.len() + t.len();
        let m = self.mu(s.len(), x, t.len(), y);
        self.op.relabel_vec(k + 1, &shuffle_with_star(s, t), &m)
    }

    /// Right action `c ∘_j u` into the unmarked slot `j < k`.
    pub fn rho(&self, k: usize, c: &SparseVec, j: usize, m: usize, u: &SparseVec) -> SparseVec {
        assert!(j < k);
        self.op.compose_vec(k + 1, j, c, m, u)
    }

    /// Relabels the unmarked inputs by `sigma ∈ S_k`.
    pub fn relabel(&self, k: usize, sigma: &[usize], x: &SparseVec) -> SparseVec {
        let mut p = sigma.to_vec();
        p.push(k);
        self.op.relabel_vec(k + 1, &p, x)
    }

    /// All graded commutators `μ_{S,T}(a, b) - μ_{T,S}(b, a)` in arity `k`
    /// over basis elements, for nonempty or empty splittings alike.
    pub fn commutators(&self, k: usize, ideal_only: bool) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for m in 0..=k {
            for s in subsets(k, m) {
                let t: Vec<usize> = (0..k).filter(|x| !s.contains(x)).collect();
                let ba = if ideal_only { self.ideal_basis(m) } else { (0..self.dim(m)).collect() };
                let bb = if ideal_only { self.ideal_basis(k - m) } else { (0..self.dim(k - m)).collect() };
                for &a in &ba {
                    for &b in &bb {
                        let (ea, eb) = (SparseVec::unit(a), SparseVec::unit(b));
                        let c = self.mu_split(&s, &ea, &t, &eb).add_scaled(&q(-1), &self.mu_split(&t, &eb, &s, &ea));
                        if !c.is_zero() {
                            out.push(c);
                        }
                    }
                }
            }
        }
        out
    }

    /// Non-ideal basis vectors of `O(k+1)`; killing them restricts a
    /// quotient to `∂(Ō)`.
    fn non_ideal(&self, k: usize) -> Vec<SparseVec> {
        (0..self.dim(k)).filter(|&a| !self.op.in_ideal(k + 1, a)).map(SparseVec::unit).collect()
    }

    /// `|∂(O)|(k)`, the quotient by commutators.
    pub fn commutator_quotient(&self, k: usize) -> Quotient {
        Quotient::new(self.dim(k), &self.commutators(k, false))
    }

    /// The augmentation ideal `Ū_w(k)` of `|∂(O)|`: commutators of `∂(Ō)`
    /// inside `∂(Ō)`, realized on `O(k+1)` with the non-ideal part killed.
    pub fn reduced_commutator_quotient(&self, k: usize) -> Quotient {
        let mut rel = self.commutators(k, true);
        rel.extend(self.non_ideal(k));
        Quotient::new(self.dim(k), &rel)
    }

    /// Image of the right action of `Ō` in arity `k`.
    pub fn right_action_image(&self, k: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for m in 1..=k {
            let us = self.op.ideal_basis(m);
            if us.is_empty() {
                continue;
            }
            let kc = k - m + 1;
            for c in 0..self.dim(kc) {
                for &u in &us {
                    let base = self.rho(kc, &SparseVec::unit(c), 0, m, &SparseVec::unit(u));
                    for b in subsets(k, m) {
                        let rest: Vec<usize> = (0..k).filter(|x| !b.contains(x)).collect();
                        let v = self.op.relabel_vec(k + 1, &shuffle_with_star(&b, &rest), &base);
                        if !v.is_zero() {
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    }

    /// `∂(O)₀(k) = ∂(O)(k)` modulo the image of the right action of `Ō`.
    pub fn indecomposables_zero(&self, k: usize) -> Quotient {
        Quotient::new(self.dim(k), &self.right_action_image(k))
    }

    /// `∂(Ō)₀(k)`: as above, with the unit of arity zero removed.
    pub fn reduced_indecomposables_zero(&self, k: usize) -> Quotient {
        let mut rel = self.right_action_image(k);
        rel.extend(self.non_ideal(k));
        Quotient::new(self.dim(k), &rel)
    }

    /// `Σ_π dim A(|π|) Π_B dim O(|B|)` over set partitions of `0..k`: the
    /// dimension of `A ∘ O` for a right-module generator species `A`.
    pub fn free_module_dim(&self, gens: &dyn Fn(usize) -> usize, k: usize) -> usize {
        let items: Vec<usize> = (0..k).collect();
        set_partitions(&items).iter().map(|p| gens(p.len()) * p.iter().map(|b| self.op.dim(b.len())).product::<usize>()).sum()
    }

    /// Whether `dim ∂(O)(k) = dim (∂(O)₀ ∘ O)(k)` for all `k ≤ max_k`.
    pub fn freeness_witness(&self, max_k: usize) -> Vec<(usize, usize, usize)> {
        let g: Vec<usize> = (0..=max_k).map(|k| self.indecomposables_zero(k).dim()).collect();
        (0..=max_k).map(|k| (k, self.dim(k), self.free_module_dim(&|j| g[j], k))).collect()
    }
}

/// A twisted associative algebra given as a quotient of `∂(O)` by an ideal,
/// one quotient per arity.
pub struct QuotientAlgebra<'a> {
    pub d: Derivative<'a>,
    pub parts: Vec<Quotient>,
}

impl<'a> QuotientAlgebra<'a> {
    /// `∂(Ō)₀` up to arity `max_k`.
    pub fn reduced_indecomposables(op: &'a OperadTable, max_k: usize) -> Self {
        let d = Derivative::new(op);
        QuotientAlgebra { d, parts: (0..=max_k).map(|k| d.reduced_indecomposables_zero(k)).collect() }
    }

    /// `∂(Ō)` itself up to arity `max_k`.
    pub fn reduced_derivative(op: &'a OperadTable, max_k: usize) -> Self {
        let d = Derivative::new(op);
        let parts = (0..=max_k)
            .map(|k| {
                let rel: Vec<SparseVec> = (0..d.dim(k)).filter(|&a| !op.in_ideal(k + 1, a)).map(SparseVec::unit).collect();
                Quotient::new(d.dim(k), &rel)
            })
            .collect();
        QuotientAlgebra { d, parts }
    }
}

/// Twisted associative algebras, concentrated in degree zero.
pub trait TwistedAlgebra: Sync {
    fn max_arity(&self) -> usize;
    fn dim(&self, k: usize) -> usize;
    /// Product with the labels of `x` sent to `s` and those of `y` to `t`.
    fn mul_split(&self, s: &[usize], x: usize, t: &[usize], y: usize) -> SparseVec;
    fn relabel(&self, k: usize, sigma: &[usize], x: usize) -> SparseVec;
    fn weight(&self, k: usize, x: usize) -> usize;
}

impl TwistedAlgebra for QuotientAlgebra<'_> {
    fn max_arity(&self) -> usize {
        self.parts.len() - 1
    }
    fn dim(&self, k: usize) -> usize {
        self.parts.get(k).map(|p| p.dim()).unwrap_or(0)
    }
    fn mul_split(&self, s: &[usize], x: usize, t: &[usize], y: usize) -> SparseVec {
        let k = s.len() + t.len();
        let v = self.d.mu_split(s, &self.parts[s.len()].lift(x), t, &self.parts[t.len()].lift(y));
        self.parts[k].coords(&v)
    }
    fn relabel(&self, k: usize, sigma: &[usize], x: usize) -> SparseVec {
        self.parts[k].coords(&self.d.relabel(k, sigma, &self.parts[k].lift(x)))
    }
    fn weight(&self, k: usize, x: usize) -> usize {
        self.d.op.weight(k + 1, self.parts[k].reps[x])
    }
}
