//! Linear species with explicit bases, degrees, weights and symmetric group
//! actions, stored skeletally: component `n` is a species evaluated on
//! `{0, .., n-1}`.
//!
//! The action of `σ` renames label `j` to `σ(j)`. Each component stores the
//! matrices of the adjacent transpositions `s_0, .., s_{n-2}`.

use crate::exactla::{q, Lin, Rational, SparseMatrix, SparseVec};
use crate::operads::OperadTable;
use crate::perm::{all_perms, identity, koszul_sign, ordered_decompositions, reduced_word, set_partitions, subsets, transposition, Perm};
use crate::Truncation;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SpeciesError {
    #[error("truncation exceeded: arity {needed} is not available (have {have})")]
    Truncation { needed: usize, have: usize },
    #[error("composition needs a reduced right factor")]
    NotReduced,
    #[error("cyclic words of even arity-zero letters are unbounded")]
    Unbounded,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub tags: Vec<String>,
    pub degrees: Vec<i32>,
    pub weights: Vec<usize>,
    /// `actions[i]` represents `s_i`; column `j` is the image of basis `j`.
    pub actions: Vec<SparseMatrix>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.tags.len()
    }

    /// Matrix of an arbitrary permutation.
    pub fn act(&self, sigma: &[usize]) -> SparseMatrix {
        let mut m = SparseMatrix::identity(self.dim());
        for &i in reduced_word(sigma).iter().rev() {
            m = self.actions[i].mul(&m);
        }
        m
    }

    /// Image of a basis vector under `sigma`.
    pub fn apply(&self, sigma: &[usize], x: usize) -> SparseVec {
        let mut v = SparseVec::unit(x);
        for &i in reduced_word(sigma).iter().rev() {
            v = self.actions[i].apply(&v);
        }
        v
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Species {
    pub name: String,
    pub components: Vec<Component>,
}

/// Renaming of positions inside a block: the element at position `p` of
/// `block` lands at position `result[p]` of the sorted image.
fn local_perm(block: &[usize], sigma: &[usize]) -> (Vec<usize>, Perm) {
    let img: Vec<usize> = block.iter().map(|&x| sigma[x]).collect();
    let mut sorted = img.clone();
    sorted.sort_unstable();
    let local = img.iter().map(|x| sorted.binary_search(x).unwrap()).collect();
    (sorted, local)
}

/// Tensor product of sparse vectors, indexed by tuples of basis indices.
fn tensor(vs: &[SparseVec]) -> Vec<(Vec<usize>, Rational)> {
    let mut out: Vec<(Vec<usize>, Rational)> = vec![(Vec::new(), Rational::one())];
    for v in vs {
        let mut next = Vec::with_capacity(out.len() * v.len());
        for (idx, c) in &out {
            for (i, d) in v.iter() {
                let mut j = idx.clone();
                j.push(*i);
                next.push((j, c * d));
            }
        }
        out = next;
    }
    out
}

impl Species {
    pub fn max_arity(&self) -> usize {
        self.components.len().saturating_sub(1)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.components.get(n).map(|c| c.dim()).unwrap_or(0)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.dim()).collect()
    }

    /// Dimensions by `(weight, degree)` in each arity.
    pub fn graded_dims(&self) -> Vec<BTreeMap<(usize, i32), usize>> {
        self.components
            .iter()
            .map(|c| {
                let mut m = BTreeMap::new();
                for i in 0..c.dim() {
                    *m.entry((c.weights[i], c.degrees[i])).or_default() += 1;
                }
                m
            })
            .collect()
    }

    fn require(&self, n: usize) -> Result<(), SpeciesError> {
        if n > self.max_arity() {
            Err(SpeciesError::Truncation { needed: n, have: self.max_arity() })
        } else {
            Ok(())
        }
    }

    /// Builds a species from bases and a relabeling rule on basis vectors.
    pub fn from_rule(
        name: &str,
        max_arity: usize,
        basis: impl Fn(usize) -> Vec<(String, i32, usize)>,
        relabel: impl Fn(usize, &[usize], usize) -> SparseVec,
    ) -> Species {
        let components = (0..=max_arity)
            .map(|n| {
                let b = basis(n);
                let dim = b.len();
                let actions = (0..n.saturating_sub(1))
                    .map(|i| {
                        let s = transposition(n, i);
                        let cols: Vec<SparseVec> = (0..dim).map(|x| relabel(n, &s, x)).collect();
                        SparseMatrix::from_columns(dim, &cols)
                    })
                    .collect();
                Component {
                    tags: b.iter().map(|x| x.0.clone()).collect(),
                    degrees: b.iter().map(|x| x.1).collect(),
                    weights: b.iter().map(|x| x.2).collect(),
                    actions,
                }
            })
            .collect();
        Species { name: name.into(), components }
    }

    /// One-dimensional trivial representation in each arity of `arities`.
    fn trivial(name: &str, max_arity: usize, arities: impl Fn(usize) -> bool) -> Species {
        Species::from_rule(name, max_arity, |n| if arities(n) { vec![(name.to_string(), 0, 0)] } else { Vec::new() }, |_, _, x| SparseVec::unit(x))
    }

    pub fn zero(max_arity: usize) -> Species {
        Species::trivial("0", max_arity, |_| false)
    }

    /// The unit `1` of the Cauchy product: `k` in arity zero.
    pub fn one(max_arity: usize) -> Species {
        Species::trivial("1", max_arity, |n| n == 0)
    }

    /// The unit `𝟙` of the composition product: `k` in arity one.
    pub fn x(max_arity: usize) -> Species {
        Species::trivial("X", max_arity, |n| n == 1)
    }

    pub fn com(max_arity: usize) -> Species {
        Species::trivial("Com", max_arity, |n| n >= 1)
    }

    pub fn ucom(max_arity: usize) -> Species {
        Species::trivial("uCom", max_arity, |_| true)
    }

    /// Linear orders, with weight `n - 1`; arity zero included when `unital`.
    fn orders(name: &str, max_arity: usize, unital: bool) -> Species {
        let perms: Vec<Vec<Perm>> = (0..=max_arity).map(all_perms).collect();
        let index: Vec<HashMap<Perm, usize>> = perms.iter().map(|ps| ps.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect()).collect();
        Species::from_rule(
            name,
            max_arity,
            |n| {
                if n == 0 && !unital {
                    return Vec::new();
                }
                perms[n]
                    .iter()
                    .map(|p| (p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""), 0, if unital { 0 } else { n.saturating_sub(1) }))
                    .collect()
            },
            |n, sigma, x| {
                let w: Perm = perms[n][x].iter().map(|&l| sigma[l]).collect();
                SparseVec::unit(index[n][&w])
            },
        )
    }

    pub fn ass(max_arity: usize) -> Species {
        Species::orders("Ass", max_arity, false)
    }

    pub fn uass(max_arity: usize) -> Species {
        Species::orders("uAss", max_arity, true)
    }

    /// Components of an operad, or of its augmentation ideal.
    pub fn from_operad(op: &OperadTable, max_arity: usize, ideal_only: bool) -> Species {
        let name = if ideal_only { format!("{}bar", op.name()) } else { op.name().to_string() };
        Species::from_rule(
            &name,
            max_arity,
            |n| {
                if n == 0 || (op.is_arity_one() && n > 1) {
                    return Vec::new();
                }
                (0..op.dim(n)).filter(|&a| !ideal_only || op.in_ideal(n, a)).map(|a| (op.tag(n, a), 0, op.weight(n, a))).collect()
            },
            |n, sigma, x| {
                let basis: Vec<usize> = (0..op.dim(n)).filter(|&a| !ideal_only || op.in_ideal(n, a)).collect();
                let v = op.relabel(n, sigma, basis[x]);
                SparseVec::from_unsorted(v.iter().map(|(a, c)| (basis.binary_search(a).expect("ideal is stable"), c.clone())))
            },
        )
    }

    /// Shifts all degrees by `k`.
    pub fn suspend(&self, k: i32) -> Species {
        let mut s = self.clone();
        s.name = format!("s^{k}{}", self.name);
        for c in &mut s.components {
            for d in &mut c.degrees {
                *d += k;
            }
        }
        s
    }

    pub fn direct_sum(&self, other: &Species) -> Species {
        let len = self.components.len().min(other.components.len());
        let components = (0..len)
            .map(|n| {
                let (a, b) = (&self.components[n], &other.components[n]);
                let (da, db) = (a.dim(), b.dim());
                let actions = (0..a.actions.len())
                    .map(|i| {
                        let t = a.actions[i].rows().into_iter().map(|r| r.iter().map(|(j, c)| (*j, c.clone())).collect::<Vec<_>>());
                        let mut trip = Vec::new();
                        for (r, row) in t.enumerate() {
                            trip.extend(row.into_iter().map(|(j, c)| (r, j, c)));
                        }
                        for (r, row) in b.actions[i].rows().into_iter().enumerate() {
                            trip.extend(row.iter().map(|(j, c)| (r + da, j + da, c.clone())));
                        }
                        SparseMatrix::from_triplets(da + db, da + db, trip)
                    })
                    .collect();
                Component {
                    tags: a.tags.iter().chain(b.tags.iter()).cloned().collect(),
                    degrees: a.degrees.iter().chain(b.degrees.iter()).copied().collect(),
                    weights: a.weights.iter().chain(b.weights.iter()).copied().collect(),
                    actions,
                }
            })
            .collect();
        Species { name: format!("({} + {})", self.name, other.name), components }
    }

    /// Acts on a basis vector of arity `n` by any permutation.
    pub fn act_by_perm(&self, n: usize, sigma: &[usize], x: usize) -> SparseVec {
        self.components[n].apply(sigma, x)
    }

    /// `∂S(n) = S(n+1)` with the last label marked.
    pub fn derivative(&self) -> Species {
        let components = (1..self.components.len())
            .map(|n| {
                let c = &self.components[n];
                Component { actions: c.actions[..n.saturating_sub(2).min(c.actions.len())].to_vec(), ..c.clone() }
            })
            .collect();
        Species { name: format!("∂{}", self.name), components }
    }

    /// Generic assembly: a basis of structured keys and an action rule that
    /// returns combinations of keys.
    fn assemble<K: Clone + Eq + std::hash::Hash + Ord>(
        name: String,
        t: &Truncation,
        keys: Vec<Vec<(K, String, i32, usize)>>,
        act: impl Fn(usize, &[usize], &K) -> Vec<(K, Rational)>,
    ) -> Species {
        let components = keys
            .into_iter()
            .enumerate()
            .map(|(n, ks)| {
                let ks: Vec<_> = ks.into_iter().filter(|k| k.3 <= t.max_weight && k.2 <= t.max_degree as i32).collect();
                let index: HashMap<&K, usize> = ks.iter().enumerate().map(|(i, k)| (&k.0, i)).collect();
                let actions = (0..n.saturating_sub(1))
                    .map(|i| {
                        let s = transposition(n, i);
                        let cols: Vec<SparseVec> =
                            ks.iter().map(|k| SparseVec::from_unsorted(act(n, &s, &k.0).into_iter().map(|(img, c)| (index[&img], c)))).collect();
                        SparseMatrix::from_columns(ks.len(), &cols)
                    })
                    .collect();
                Component {
                    tags: ks.iter().map(|k| k.1.clone()).collect(),
                    degrees: ks.iter().map(|k| k.2).collect(),
                    weights: ks.iter().map(|k| k.3).collect(),
                    actions,
                }
            })
            .collect();
        Species { name, components }
    }

    /// Cauchy product: basis `(I, x, J, y)` with `I ⊔ J = 0..n`.
    pub fn cauchy(&self, other: &Species, t: &Truncation) -> Result<Species, SpeciesError> {
        self.require(t.max_arity)?;
        other.require(t.max_arity)?;
        type Key = (Vec<usize>, usize, usize);
        let keys: Vec<Vec<(Key, String, i32, usize)>> = (0..=t.max_arity)
            .map(|n| {
                let mut out = Vec::new();
                for k in 0..=n {
                    for s in subsets(n, k) {
                        let (a, b) = (&self.components[k], &other.components[n - k]);
                        for x in 0..a.dim() {
                            for y in 0..b.dim() {
                                let tag = format!("{}{:?}⊗{}", a.tags[x], s, b.tags[y]);
                                out.push(((s.clone(), x, y), tag, a.degrees[x] + b.degrees[y], a.weights[x] + b.weights[y]));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        Ok(Species::assemble(format!("{}⊗{}", self.name, other.name), t, keys, |n, sigma, (s, x, y)| {
            let rest: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
            let (s2, ls) = local_perm(s, sigma);
            let (_, lr) = local_perm(&rest, sigma);
            let vx = self.components[s.len()].apply(&ls, *x);
            let vy = other.components[rest.len()].apply(&lr, *y);
            tensor(&[vx, vy]).into_iter().map(|(ix, c)| ((s2.clone(), ix[0], ix[1]), c)).collect()
        }))
    }

    /// Composition `A ∘ B`: basis `(π, x, y₁..y_k)` for set partitions `π`
    /// with blocks ordered by their minima.
    pub fn compose(&self, other: &Species, t: &Truncation) -> Result<Species, SpeciesError> {
        self.require(t.max_arity)?;
        other.require(t.max_arity)?;
        if other.dim(0) > 0 {
            return Err(SpeciesError::NotReduced);
        }
        type Key = (Vec<Vec<usize>>, usize, Vec<usize>);
        let keys: Vec<Vec<(Key, String, i32, usize)>> = (0..=t.max_arity)
            .map(|n| {
                let mut out = Vec::new();
                let parts = if n == 0 { vec![Vec::new()] } else { set_partitions(&identity(n)) };
                for p in parts {
                    let k = p.len();
                    let a = &self.components[k];
                    let blocks: Vec<&Component> = p.iter().map(|b| &other.components[b.len()]).collect();
                    let dims: Vec<usize> = blocks.iter().map(|c| c.dim()).collect();
                    for x in 0..a.dim() {
                        for ys in tuples(&dims) {
                            let deg = a.degrees[x] + ys.iter().enumerate().map(|(j, &y)| blocks[j].degrees[y]).sum::<i32>();
                            let w = a.weights[x] + ys.iter().enumerate().map(|(j, &y)| blocks[j].weights[y]).sum::<usize>();
                            let tag = format!(
                                "{}({})",
                                a.tags[x],
                                ys.iter().enumerate().map(|(j, &y)| format!("{}{:?}", blocks[j].tags[y], p[j])).collect::<Vec<_>>().join(",")
                            );
                            out.push(((p.clone(), x, ys), tag, deg, w));
                        }
                    }
                }
                out
            })
            .collect();
        Ok(Species::assemble(format!("{}∘{}", self.name, other.name), t, keys, |_, sigma, (p, x, ys)| {
            let k = p.len();
            let moved: Vec<(Vec<usize>, Perm)> = p.iter().map(|b| local_perm(b, sigma)).collect();
            let tau = crate::perm::ranks(&moved.iter().map(|(b, _)| b[0]).collect::<Vec<_>>());
            let odd: Vec<bool> = (0..k).map(|j| other.components[p[j].len()].degrees[ys[j]] % 2 != 0).collect();
            let sign = koszul_sign(&tau, &odd);
            let mut newp = vec![Vec::new(); k];
            let mut vecs = vec![SparseVec::new(); k + 1];
            vecs[0] = self.components[k].apply(&tau, *x);
            for j in 0..k {
                newp[tau[j]] = moved[j].0.clone();
                vecs[tau[j] + 1] = other.components[p[j].len()].apply(&moved[j].1, ys[j]);
            }
            tensor(&vecs).into_iter().map(|(ix, c)| ((newp.clone(), ix[0], ix[1..].to_vec()), c * q(sign as i64))).collect()
        }))
    }

    /// Cyclic words `Cyc(S) = ⊕_m (S^{⊗m})_{C_m}` with the Koszul sign for
    /// rotations; words of length at most `t.max_degree + 1` when `S(0) ≠ 0`.
    pub fn cyc(&self, t: &Truncation) -> Result<Species, SpeciesError> {
        self.require(t.max_arity)?;
        let zero = &self.components[0];
        if zero.degrees.iter().zip(&zero.weights).any(|(d, w)| *d == 0 && *w == 0) {
            return Err(SpeciesError::Unbounded);
        }
        let max_len = |n: usize| if zero.dim() > 0 { n + t.max_degree + 1 } else { n };
        let keys: Vec<Vec<(CycWord, String, i32, usize)>> = (0..=t.max_arity)
            .map(|n| {
                let mut seen = std::collections::BTreeSet::new();
                for m in 1..=max_len(n) {
                    for dec in ordered_decompositions(&identity(n), m, zero.dim() > 0) {
                        if n > 0 && !dec[0].contains(&0) {
                            continue;
                        }
                        let dims: Vec<usize> = dec.iter().map(|b| self.dim(b.len())).collect();
                        for ys in tuples(&dims) {
                            let w: CycWord = dec.iter().cloned().zip(ys).collect();
                            if self.word_weight(&w) <= t.max_weight && self.word_degree(&w) <= t.max_degree as i32 {
                                if let Some((c, _)) = self.canonical_cyc(&w) {
                                    seen.insert(c);
                                }
                            }
                        }
                    }
                }
                seen.into_iter()
                    .map(|w| {
                        let tag = w.iter().map(|(b, y)| format!("{}{:?}", self.components[b.len()].tags[*y], b)).collect::<Vec<_>>().join(" ");
                        let (d, wt) = (self.word_degree(&w), self.word_weight(&w));
                        (w, format!("({tag})"), d, wt)
                    })
                    .collect()
            })
            .collect();
        Ok(Species::assemble(format!("Cyc({})", self.name), t, keys, |_, sigma, w| {
            let mut blocks = Vec::with_capacity(w.len());
            let mut vecs = Vec::with_capacity(w.len());
            for (b, y) in w {
                let (nb, l) = local_perm(b, sigma);
                vecs.push(self.components[b.len()].apply(&l, *y));
                blocks.push(nb);
            }
            let mut lin = Lin::new();
            for (ix, c) in tensor(&vecs) {
                let word: CycWord = blocks.iter().cloned().zip(ix).collect();
                if let Some((k, s)) = self.canonical_cyc(&word) {
                    lin.add(k, c * q(s));
                }
            }
            lin.into_sorted()
        }))
    }

    fn word_degree(&self, w: &[(Vec<usize>, usize)]) -> i32 {
        w.iter().map(|(b, y)| self.components[b.len()].degrees[*y]).sum()
    }

    fn word_weight(&self, w: &[(Vec<usize>, usize)]) -> usize {
        w.iter().map(|(b, y)| self.components[b.len()].weights[*y]).sum()
    }

    /// Least rotation of a cyclic word with its sign, or `None` when the
    /// word equals minus itself.
    fn canonical_cyc(&self, w: &[(Vec<usize>, usize)]) -> Option<(CycWord, i64)> {
        let m = w.len();
        let deg: Vec<i32> = w.iter().map(|(b, y)| self.components[b.len()].degrees[*y]).collect();
        let total: i32 = deg.iter().sum();
        // w = ε_r · rot_r(w), rot_r moving the first r letters to the back
        let sign = |r: usize| {
            let front: i32 = deg[..r].iter().sum();
            if (front * (total - front)) % 2 == 0 {
                1
            } else {
                -1
            }
        };
        let rot = |r: usize| -> CycWord { (0..m).map(|i| w[(i + r) % m].clone()).collect() };
        let best = (0..m).min_by_key(|&r| rot(r)).unwrap();
        let bw = rot(best);
        for r in 0..m {
            if r != best && rot(r) == bw && sign(r) != sign(best) {
                return None;
            }
        }
        Some((bw, sign(best)))
    }

    /// Whether the stored generators satisfy the Coxeter relations of `S_n`.
    pub fn check_braid(&self) -> bool {
        self.components.iter().all(|c| {
            let g = &c.actions;
            let id = SparseMatrix::identity(c.dim());
            (0..g.len()).all(|i| {
                g[i].mul(&g[i]) == id
                    && (i + 1 >= g.len() || g[i].mul(&g[i + 1]).mul(&g[i]) == g[i + 1].mul(&g[i]).mul(&g[i + 1]))
                    && (i + 2..g.len()).all(|j| g[i].mul(&g[j]) == g[j].mul(&g[i]))
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string(self)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Species> {
        serde_json::from_str(s)
    }
}

type CycWord = Vec<(Vec<usize>, usize)>;

/// All tuples `(y₁, .., y_k)` with `y_j < dims[j]`.
fn tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out.into_iter().flat_map(|t| (0..d).map(move |y| [t.clone(), vec![y]].concat())).collect();
    }
    out
}

/// Rooted trees `T(sŌ) = 𝟙 ⊕ sŌ ∘ T(sŌ)` up to arity `t.max_arity`, for a
/// reduced species `o` without arity one.
pub fn free_operad_trees(o: &Species, t: &Truncation) -> Result<Species, SpeciesError> {
    let so = o.suspend(1);
    let x = Species::x(t.max_arity);
    let mut trees = x.clone();
    for _ in 0..t.max_arity {
        trees = x.direct_sum(&so.compose(&trees, t)?);
    }
    Ok(trees)
}
