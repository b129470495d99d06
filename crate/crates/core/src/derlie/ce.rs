//! Chevalley–Eilenberg complexes of dg Lie algebras `g ⋉ s⁻¹M` with
//! coefficients in `Hom(V^{⊗p}, V^{⊗q})`, and their `gl(V)`-invariants.

use super::freealg::{DerKey, Derivation, FreeAlgebra};
use super::schur::{Elem, Mono};
use super::DerLieError;
use crate::exactla::{q, BlockKey, ChainComplex, KernelBasis, Rational, SparseMatrix, SparseVec};
use crate::Truncation;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieKind {
    #[serde(rename = "der+")]
    DerPlus,
    #[serde(rename = "sder+")]
    SDerPlus,
    #[serde(rename = "semidirect")]
    Semidirect,
}

impl LieKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            LieKind::DerPlus => "der+",
            LieKind::SDerPlus => "sder+",
            LieKind::Semidirect => "semidirect",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "der+" => Some(LieKind::DerPlus),
            "sder+" => Some(LieKind::SDerPlus),
            "semidirect" => Some(LieKind::Semidirect),
            _ => None,
        }
    }
}

/// A basis vector with its weight and torus weight.
#[derive(Clone, Debug)]
pub struct Gen {
    pub weight: usize,
    pub torus: Vec<i32>,
}

/// A dg Lie algebra `g ⊕ s⁻¹M` with `M` abelian, given by structure
/// constants on bases, together with the raising operators `E_{i,i+1}` of
/// `gl(V)`.
pub struct DgLie {
    pub n: usize,
    pub max_weight: usize,
    pub gens: Vec<Gen>,
    pub mods: Vec<Gen>,
    /// `[g_a, g_b]` for `a < b` with `w_a + w_b ≤ max_weight`.
    pub bracket: HashMap<(u32, u32), SparseVec>,
    /// `g_a · m_b` for `w_a + w_b ≤ max_weight`.
    pub action: HashMap<(u32, u32), SparseVec>,
    pub div: Vec<SparseVec>,
    pub raise_gens: Vec<Vec<SparseVec>>,
    pub raise_mods: Vec<Vec<SparseVec>>,
}

struct DerIndex {
    keys: Vec<DerKey>,
    index: HashMap<DerKey, usize>,
}

impl DerIndex {
    fn new(fa: &FreeAlgebra, max_weight: usize) -> Self {
        let keys: Vec<DerKey> = (0..=max_weight).flat_map(|w| fa.der_basis(w)).collect();
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        DerIndex { keys, index }
    }

    fn coords(&self, d: &Derivation) -> Result<SparseVec, DerLieError> {
        let mut out = Vec::new();
        for (gen, f) in d.images.iter().enumerate() {
            for (m, c) in f {
                let k = DerKey { gen: gen as u8, mono: m.clone() };
                let i = self.index.get(&k).ok_or_else(|| DerLieError::Truncation(format!("derivation term {k:?} outside Der⁺ up to the weight bound")))?;
                out.push((*i, c.clone()));
            }
        }
        Ok(SparseVec::from_unsorted(out))
    }

    fn derivation(&self, n: usize, v: &SparseVec) -> Derivation {
        let mut d = Derivation::zero(n);
        for (i, c) in v.iter() {
            d = d.add_scaled(c, &Derivation::basic(n, self.keys[*i].gen, self.keys[*i].mono.clone()));
        }
        d
    }
}

fn elem_coords(index: &HashMap<Mono, usize>, x: &Elem) -> Result<SparseVec, DerLieError> {
    let mut out = Vec::new();
    for (m, c) in x {
        let i = index.get(m).ok_or_else(|| DerLieError::Truncation(format!("trace term {m:?} outside the module up to the weight bound")))?;
        out.push((*i, c.clone()));
    }
    Ok(SparseVec::from_unsorted(out))
}

/// A subalgebra of `Der⁺` given by basis derivations, with coordinates.
struct Subalgebra {
    ders: Vec<Derivation>,
    gens: Vec<Gen>,
    coords: Box<dyn Fn(&Derivation) -> Result<SparseVec, DerLieError> + Sync>,
}

impl DgLie {
    fn from_subalgebra(fa: &FreeAlgebra, sub: Subalgebra, with_module: bool) -> Result<Self, DerLieError> {
        let w_max = fa.max_weight;
        let ng = sub.gens.len();
        let pairs: Vec<(u32, u32)> = (0..ng)
            .flat_map(|a| (a + 1..ng).map(move |b| (a as u32, b as u32)))
            .filter(|&(a, b)| sub.gens[a as usize].weight + sub.gens[b as usize].weight <= w_max)
            .collect();
        let bracket = pairs
            .par_iter()
            .map(|&(a, b)| Ok(((a, b), (sub.coords)(&fa.bracket(&sub.ders[a as usize], &sub.ders[b as usize])?)?)))
            .filter(|r: &Result<_, DerLieError>| r.as_ref().map(|(_, v)| !v.is_zero()).unwrap_or(true))
            .collect::<Result<HashMap<_, _>, _>>()?;
        let raise_gens = (0..fa.n.saturating_sub(1) as u8)
            .map(|i| sub.ders.par_iter().map(|d| (sub.coords)(&fa.raise_derivation(d, i))).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let mut lie = DgLie {
            n: fa.n,
            max_weight: w_max,
            gens: sub.gens,
            mods: Vec::new(),
            bracket,
            action: HashMap::new(),
            div: vec![SparseVec::new(); ng],
            raise_gens,
            raise_mods: vec![Vec::new(); fa.n.saturating_sub(1)],
        };
        if !with_module {
            return Ok(lie);
        }
        let mods: Vec<Mono> = (0..=fa.tr.max_arity).flat_map(|k| fa.tr.basis(k)).filter(|m| fa.tr.weight(m) <= w_max).collect();
        if let Some(m) = mods.iter().find(|m| fa.tr.weight(m) == 0) {
            return Err(DerLieError::Unsupported(format!(
                "the commutator quotient has a class {m:?} of weight zero, so its symmetric algebra is infinite in each weight"
            )));
        }
        let index: HashMap<Mono, usize> = mods.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        lie.mods = mods.iter().map(|m| Gen { weight: fa.tr.weight(m), torus: fa.counts(&m.word) }).collect();
        let acts: Vec<(u32, u32)> = (0..ng)
            .flat_map(|a| (0..mods.len()).map(move |b| (a as u32, b as u32)))
            .filter(|&(a, b)| lie.gens[a as usize].weight + lie.mods[b as usize].weight <= w_max)
            .collect();
        lie.action = acts
            .par_iter()
            .map(|&(a, b)| {
                let x = fa.act_on_trace(&sub.ders[a as usize], &vec![(mods[b as usize].clone(), q(1))])?;
                Ok(((a, b), elem_coords(&index, &x)?))
            })
            .filter(|r: &Result<_, DerLieError>| r.as_ref().map(|(_, v)| !v.is_zero()).unwrap_or(true))
            .collect::<Result<HashMap<_, _>, _>>()?;
        lie.div = sub.ders.par_iter().map(|d| elem_coords(&index, &fa.divergence(d))).collect::<Result<_, _>>()?;
        lie.raise_mods = (0..fa.n.saturating_sub(1) as u8)
            .map(|i| mods.iter().map(|m| elem_coords(&index, &fa.tr.raise(&vec![(m.clone(), q(1))], i))).collect::<Result<Vec<_>, _>>())
            .collect::<Result<_, _>>()?;
        Ok(lie)
    }

    fn der_subalgebra(fa: &FreeAlgebra) -> Subalgebra {
        let idx = DerIndex::new(fa, fa.max_weight);
        let ders = idx.keys.iter().map(|k| Derivation::basic(fa.n, k.gen, k.mono.clone())).collect();
        let gens = idx.keys.iter().map(|k| Gen { weight: fa.der_weight(k), torus: fa.der_torus(k) }).collect();
        Subalgebra { ders, gens, coords: Box::new(move |d| idx.coords(d)) }
    }

    /// `Der⁺(O(V))` up to the weight bound of `fa`.
    pub fn der_plus(fa: &FreeAlgebra) -> Result<Self, DerLieError> {
        Self::from_subalgebra(fa, Self::der_subalgebra(fa), false)
    }

    /// `Der⁺ ⋉ s⁻¹|∂(O)(V)|` with the divergence as differential.
    pub fn semidirect(fa: &FreeAlgebra) -> Result<Self, DerLieError> {
        Self::from_subalgebra(fa, Self::der_subalgebra(fa), true)
    }

    /// `SDer⁺(O(V))`, the kernel of the divergence, with a basis computed
    /// per weight and torus weight.
    pub fn sder_plus(fa: &FreeAlgebra) -> Result<Self, DerLieError> {
        let idx = DerIndex::new(fa, fa.max_weight);
        let tr_index: HashMap<Mono, usize> = (0..=fa.tr.max_arity).flat_map(|k| fa.tr.basis(k)).enumerate().map(|(i, m)| (m, i)).collect();
        let mut blocks: BTreeMap<(usize, Vec<i32>), Vec<usize>> = BTreeMap::new();
        for (i, k) in idx.keys.iter().enumerate() {
            blocks.entry((fa.der_weight(k), fa.der_torus(k))).or_default().push(i);
        }
        let kernels: Vec<((usize, Vec<i32>), Vec<usize>, KernelBasis)> = blocks
            .into_par_iter()
            .map(|(key, members)| {
                let mut rows: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
                for (j, &g) in members.iter().enumerate() {
                    let div = fa.divergence(&Derivation::basic(fa.n, idx.keys[g].gen, idx.keys[g].mono.clone()));
                    for (i, c) in elem_coords(&tr_index, &div)?.0 {
                        rows.entry(i).or_default().push((j, c));
                    }
                }
                let rows: Vec<SparseVec> = rows.into_values().map(SparseVec::from_unsorted).collect();
                let kb = KernelBasis::of(&rows, members.len());
                Ok((key, members, kb))
            })
            .collect::<Result<_, DerLieError>>()?;
        let mut gens = Vec::new();
        let mut ders = Vec::new();
        let mut offsets: HashMap<usize, (usize, usize)> = HashMap::new();
        for (b, ((w, t), members, kb)) in kernels.iter().enumerate() {
            for (j, &g) in members.iter().enumerate() {
                offsets.insert(g, (b, j));
            }
            for v in &kb.basis {
                let global = SparseVec(v.iter().map(|(j, c)| (members[*j], c.clone())).collect::<Vec<_>>());
                let global = SparseVec::from_unsorted(global.0);
                ders.push(idx.derivation(fa.n, &global));
                gens.push(Gen { weight: *w, torus: t.clone() });
            }
        }
        let starts: Vec<usize> = kernels
            .iter()
            .scan(0, |acc, (_, _, kb)| {
                let s = *acc;
                *acc += kb.dim();
                Some(s)
            })
            .collect();
        let coords = move |d: &Derivation| -> Result<SparseVec, DerLieError> {
            let global = idx.coords(d)?;
            let mut local: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
            for (g, c) in global.0 {
                let (b, j) = offsets[&g];
                local.entry(b).or_default().push((j, c));
            }
            let mut out = Vec::new();
            for (b, entries) in local {
                let v = SparseVec::from_unsorted(entries);
                let x = kernels[b].2.coords(&v).ok_or_else(|| DerLieError::NotClosed("bracket or gl(V)-action leaves the divergence kernel".into()))?;
                out.extend(x.0.into_iter().map(|(i, c)| (starts[b] + i, c)));
            }
            Ok(SparseVec::from_unsorted(out))
        };
        Self::from_subalgebra(fa, Subalgebra { ders, gens, coords: Box::new(coords) }, false)
    }

    pub fn build(kind: LieKind, fa: &FreeAlgebra) -> Result<Self, DerLieError> {
        match kind {
            LieKind::DerPlus => Self::der_plus(fa),
            LieKind::SDerPlus => Self::sder_plus(fa),
            LieKind::Semidirect => Self::semidirect(fa),
        }
    }

    /// The zero Lie algebra on `dim V = n`, for coefficient spaces alone.
    pub fn zero(n: usize) -> Self {
        DgLie {
            n,
            max_weight: 0,
            gens: Vec::new(),
            mods: Vec::new(),
            bracket: HashMap::new(),
            action: HashMap::new(),
            div: Vec::new(),
            raise_gens: vec![Vec::new(); n.saturating_sub(1)],
            raise_mods: vec![Vec::new(); n.saturating_sub(1)],
        }
    }

    pub fn dim_by_weight(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for g in &self.gens {
            *out.entry(g.weight).or_default() += 1;
        }
        out
    }
}

/// A basis chain `g_{a_1} ∧ … ∧ g_{a_d} · m_{b_1} ⋯ m_{b_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub odd: Vec<u32>,
    pub even: Vec<u32>,
}

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// Inserts `k` into the strictly increasing `rest`; `None` if present.
fn insert_odd(rest: &[u32], k: u32) -> Option<(Vec<u32>, usize)> {
    match rest.binary_search(&k) {
        Ok(_) => None,
        Err(pos) => {
            let mut v = rest.to_vec();
            v.insert(pos, k);
            Some((v, pos))
        }
    }
}

fn insert_even(rest: &[u32], k: u32) -> Vec<u32> {
    let mut v = rest.to_vec();
    let pos = v.partition_point(|&x| x <= k);
    v.insert(pos, k);
    v
}

fn without(v: &[u32], i: usize) -> Vec<u32> {
    let mut out = v.to_vec();
    out.remove(i);
    out
}

impl DgLie {
    /// Chains of weight `w` and degree `d`.
    pub fn chains(&self, w: usize, d: usize) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut odd = Vec::new();
        self.odd_rec(0, w, d, &mut odd, &mut out);
        out
    }

    fn odd_rec(&self, from: usize, w: usize, d: usize, cur: &mut Vec<u32>, out: &mut Vec<Chain>) {
        if d == 0 {
            let mut even = Vec::new();
            self.even_rec(0, w, cur, &mut even, out);
            return;
        }
        for a in from..self.gens.len() {
            if self.gens[a].weight <= w {
                cur.push(a as u32);
                self.odd_rec(a + 1, w - self.gens[a].weight, d - 1, cur, out);
                cur.pop();
            }
        }
    }

    fn even_rec(&self, from: usize, w: usize, odd: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Chain>) {
        if w == 0 {
            out.push(Chain { odd: odd.to_vec(), even: cur.clone() });
            return;
        }
        for b in from..self.mods.len() {
            let wb = self.mods[b].weight;
            if wb <= w {
                cur.push(b as u32);
                self.even_rec(b, w - wb, odd, cur, out);
                cur.pop();
            }
        }
    }

    pub fn torus(&self, c: &Chain) -> Vec<i32> {
        let mut t = vec![0; self.n];
        for &a in &c.odd {
            for (x, y) in t.iter_mut().zip(&self.gens[a as usize].torus) {
                *x += y;
            }
        }
        for &b in &c.even {
            for (x, y) in t.iter_mut().zip(&self.mods[b as usize].torus) {
                *x += y;
            }
        }
        t
    }

    /// The Chevalley–Eilenberg differential plus the internal differential.
    pub fn differential(&self, c: &Chain) -> Vec<(Chain, Rational)> {
        let mut out = Vec::new();
        let d = c.odd.len();
        for i in 0..d {
            for j in i + 1..d {
                let Some(br) = self.bracket.get(&(c.odd[i], c.odd[j])) else { continue };
                let rest = without(&without(&c.odd, j), i);
                for (k, x) in br.iter() {
                    if let Some((odd, pos)) = insert_odd(&rest, *k as u32) {
                        out.push((Chain { odd, even: c.even.clone() }, sign(i + j + 1 + pos) * x));
                    }
                }
            }
        }
        for i in 0..d {
            let rest = without(&c.odd, i);
            for l in 0..c.even.len() {
                let Some(act) = self.action.get(&(c.odd[i], c.even[l])) else { continue };
                let others = without(&c.even, l);
                for (k, x) in act.iter() {
                    out.push((Chain { odd: rest.clone(), even: insert_even(&others, *k as u32) }, sign(i) * x));
                }
            }
            for (k, x) in self.div[c.odd[i] as usize].iter() {
                out.push((Chain { odd: rest.clone(), even: insert_even(&c.even, *k as u32) }, sign(i) * x));
            }
        }
        out
    }

    /// `E_{i,i+1}` acting on a chain as a derivation.
    pub fn raise(&self, c: &Chain, i: usize) -> Vec<(Chain, Rational)> {
        let mut out = Vec::new();
        for t in 0..c.odd.len() {
            let rest = without(&c.odd, t);
            for (k, x) in self.raise_gens[i][c.odd[t] as usize].iter() {
                if let Some((odd, pos)) = insert_odd(&rest, *k as u32) {
                    out.push((Chain { odd, even: c.even.clone() }, sign(t + pos) * x));
                }
            }
        }
        for l in 0..c.even.len() {
            let others = without(&c.even, l);
            for (k, x) in self.raise_mods[i][c.even[l] as usize].iter() {
                out.push((Chain { odd: c.odd.clone(), even: insert_even(&others, *k as u32) }, x.clone()));
            }
        }
        out
    }
}

/// Words for `(V*)^{⊗p} ⊗ V^{⊗q}`, the first `p` letters dual.
fn coefficient_words(n: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..n as u8).map(move |l| [w.clone(), vec![l]].concat())).collect();
    }
    out
}

fn word_torus(n: usize, p: usize, w: &[u8]) -> Vec<i32> {
    let mut t = vec![0; n];
    for (pos, &l) in w.iter().enumerate() {
        t[l as usize] += if pos < p { -1 } else { 1 };
    }
    t
}

fn raise_word(p: usize, w: &[u8], i: u8) -> Vec<(Vec<u8>, Rational)> {
    let mut out = Vec::new();
    for (pos, &l) in w.iter().enumerate() {
        if pos < p && l == i {
            let mut v = w.to_vec();
            v[pos] = i + 1;
            out.push((v, q(-1)));
        } else if pos >= p && l == i + 1 {
            let mut v = w.to_vec();
            v[pos] = i;
            out.push((v, q(1)));
        }
    }
    out
}

type Pair = (Chain, Vec<u8>);

/// A block of `Λ(g) ⊗ S(M) ⊗ Hom(V^{⊗p}, V^{⊗q})`, optionally restricted
/// to `gl(V)`-invariants.
struct Block {
    pairs: Vec<Pair>,
    index: HashMap<Pair, usize>,
    inv: Option<KernelBasis>,
}

impl Block {
    fn dim(&self) -> usize {
        self.inv.as_ref().map(|k| k.dim()).unwrap_or(self.pairs.len())
    }
}

/// Options for [`ce_complex`].
#[derive(Clone, Copy, Debug)]
pub struct Coefficients {
    pub p: usize,
    pub q: usize,
    pub invariants: bool,
}

impl DgLie {
    fn block(&self, w: usize, d: usize, co: Coefficients, words: &[(Vec<u8>, Vec<i32>)]) -> Block {
        let chains = self.chains(w, d);
        let mut pairs = Vec::new();
        if co.invariants {
            let mut by_torus: HashMap<&Vec<i32>, Vec<usize>> = HashMap::new();
            for (j, (_, t)) in words.iter().enumerate() {
                by_torus.entry(t).or_default().push(j);
            }
            for c in chains {
                let t: Vec<i32> = self.torus(&c).into_iter().map(|x| -x).collect();
                if let Some(js) = by_torus.get(&t) {
                    for &j in js {
                        pairs.push((c.clone(), words[j].0.clone()));
                    }
                }
            }
        } else {
            for c in chains {
                for (w, _) in words {
                    pairs.push((c.clone(), w.clone()));
                }
            }
        }
        let index: HashMap<Pair, usize> = pairs.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        let inv = co.invariants.then(|| {
            let mut targets: HashMap<(usize, Pair), usize> = HashMap::new();
            let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
            for (col, (c, wd)) in pairs.iter().enumerate() {
                for i in 0..self.n.saturating_sub(1) {
                    let mut img: Vec<(Pair, Rational)> = self.raise(c, i).into_iter().map(|(c2, x)| ((c2, wd.clone()), x)).collect();
                    img.extend(raise_word(co.p, wd, i as u8).into_iter().map(|(w2, x)| ((c.clone(), w2), x)));
                    for (key, x) in img {
                        let next = targets.len();
                        let r = *targets.entry((i, key)).or_insert(next);
                        if r == rows.len() {
                            rows.push(Vec::new());
                        }
                        rows[r].push((col, x));
                    }
                }
            }
            let rows: Vec<SparseVec> = rows.into_iter().map(SparseVec::from_unsorted).collect();
            KernelBasis::of(&rows, pairs.len())
        });
        Block { pairs, index, inv }
    }

    fn apply_d(&self, src: &Block, dst: &Block, v: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (col, x) in v.iter() {
            let (c, wd) = &src.pairs[*col];
            for (c2, y) in self.differential(c) {
                let key = (c2, wd.clone());
                let i = dst.index.get(&key).expect("differential preserves torus weight");
                acc.push((*i, x * &y));
            }
        }
        SparseVec::from_unsorted(acc)
    }

    /// Blocks `(w, d)` for `w ≤ t.max_weight`, `d ≤ t.max_degree + 1`; the
    /// top degree is marked untrusted.
    pub fn chain_complex(&self, co: Coefficients, t: &Truncation) -> Result<ChainComplex, DerLieError> {
        let words: Vec<(Vec<u8>, Vec<i32>)> = coefficient_words(self.n, co.p + co.q).into_iter().map(|w| (w.clone(), word_torus(self.n, co.p, &w))).collect();
        let keys: Vec<(usize, usize)> = (0..=t.max_weight).flat_map(|w| (0..=t.max_degree + 1).map(move |d| (w, d))).collect();
        let blocks: HashMap<(usize, usize), Block> = keys.par_iter().map(|&(w, d)| ((w, d), self.block(w, d, co, &words))).collect();
        let mut c = ChainComplex::new();
        for (&(w, d), b) in &blocks {
            let key = BlockKey::new(0, w, d);
            c.add_block(key, b.dim());
            if d == t.max_degree + 1 {
                c.untrusted.insert(key);
            }
        }
        let diffs = keys
            .par_iter()
            .filter(|&&(_, d)| d > 0)
            .map(|&(w, d)| {
                let (src, dst) = (&blocks[&(w, d)], &blocks[&(w, d - 1)]);
                let cols: Vec<SparseVec> = match (&src.inv, &dst.inv) {
                    (Some(ks), Some(kd)) => ks
                        .basis
                        .iter()
                        .map(|v| {
                            kd.coords(&self.apply_d(src, dst, v)).ok_or(DerLieError::NotClosed(format!("differential leaves the invariants at (w={w}, d={d})")))
                        })
                        .collect::<Result<_, _>>()?,
                    _ => (0..src.pairs.len()).map(|i| self.apply_d(src, dst, &SparseVec::unit(i))).collect(),
                };
                Ok((BlockKey::new(0, w, d), SparseMatrix::from_columns(dst.dim(), &cols)))
            })
            .collect::<Result<Vec<_>, DerLieError>>()?;
        for (k, m) in diffs {
            if m.nrows > 0 && m.ncols > 0 {
                c.set_differential(k, m);
            }
        }
        Ok(c)
    }
}

/// The CE complex of `kind` over `fa`, with coefficients `Hom(V^{⊗p}, V^{⊗q})`.
pub fn ce_complex(kind: LieKind, fa: &FreeAlgebra, co: Coefficients, t: &Truncation) -> Result<ChainComplex, DerLieError> {
    if t.max_weight > fa.max_weight {
        return Err(DerLieError::Truncation(format!("weight {} beyond the free algebra bound {}", t.max_weight, fa.max_weight)));
    }
    DgLie::build(kind, fa)?.chain_complex(co, t)
}

/// `dim ((V*)^{⊗p} ⊗ V^{⊗q})^{gl(V)}`.
pub fn tensor_invariants(n: usize, p: usize, q: usize) -> usize {
    let c = DgLie::zero(n).chain_complex(Coefficients { p, q, invariants: true }, &Truncation::new(0, 0, 0)).expect("no differential to restrict");
    c.dim(BlockKey::new(0, 0, 0))
}
