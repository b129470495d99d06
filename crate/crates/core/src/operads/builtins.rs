use super::lie::{straighten, Bracket};
use super::Operad;
use crate::exactla::{q, Rational, SparseVec};
use crate::perm::{all_perms, compose as pcompose};
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// Per-arity basis of combinatorial objects with a reverse index, built lazily.
struct Indexed<T> {
    build: fn(usize) -> Vec<T>,
    cache: RwLock<HashMap<usize, Arc<(Vec<T>, HashMap<T, usize>)>>>,
}

impl<T: Clone + Eq + std::hash::Hash> Indexed<T> {
    fn new(build: fn(usize) -> Vec<T>) -> Self {
        Indexed { build, cache: RwLock::new(HashMap::new()) }
    }

    fn get(&self, n: usize) -> Arc<(Vec<T>, HashMap<T, usize>)> {
        if let Some(b) = self.cache.read().unwrap().get(&n) {
            return b.clone();
        }
        let items = (self.build)(n);
        let index = items.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect();
        let b = Arc::new((items, index));
        self.cache.write().unwrap().entry(n).or_insert(b).clone()
    }
}

/// Input positions after inserting `m` inputs at slot `i` of an `n`-ary operation.
fn shift(x: usize, i: usize, m: usize) -> usize {
    if x < i {
        x
    } else {
        x + m - 1
    }
}

pub struct Com;

impl Operad for Com {
    fn name(&self) -> &str {
        "com"
    }
    fn dim(&self, n: usize) -> usize {
        usize::from(n >= 1)
    }
    fn basis_tag(&self, n: usize, _a: usize) -> String {
        format!("m{n}")
    }
    fn unit(&self) -> usize {
        0
    }
    fn in_ideal(&self, n: usize, _a: usize) -> bool {
        n >= 2
    }
    fn weight(&self, n: usize, _a: usize) -> usize {
        n - 1
    }
    fn compose(&self, _n: usize, _i: usize, _a: usize, _m: usize, _b: usize) -> SparseVec {
        SparseVec::unit(0)
    }
    fn relabel(&self, _n: usize, _sigma: &[usize], _a: usize) -> SparseVec {
        SparseVec::unit(0)
    }
}

fn perm_words(n: usize) -> Vec<Vec<u8>> {
    all_perms(n).into_iter().map(|p| p.into_iter().map(|x| x as u8).collect()).collect()
}

/// Associative operad; basis element `a` of arity `n` is the word
/// `x_{w0} x_{w1} .. x_{w(n-1)}`.
pub struct Ass {
    words: Indexed<Vec<u8>>,
}

impl Default for Ass {
    fn default() -> Self {
        Ass { words: Indexed::new(perm_words) }
    }
}

impl Ass {
    pub fn word(&self, n: usize, a: usize) -> Vec<u8> {
        self.words.get(n).0[a].clone()
    }
    pub fn index(&self, w: &[u8]) -> usize {
        self.words.get(w.len()).1[w]
    }
}

impl Operad for Ass {
    fn name(&self) -> &str {
        "ass"
    }
    fn dim(&self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            self.words.get(n).0.len()
        }
    }
    fn basis_tag(&self, n: usize, a: usize) -> String {
        self.word(n, a).iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join("")
    }
    fn unit(&self) -> usize {
        0
    }
    fn in_ideal(&self, n: usize, _a: usize) -> bool {
        n >= 2
    }
    fn weight(&self, n: usize, _a: usize) -> usize {
        n - 1
    }
    fn compose(&self, n: usize, i: usize, a: usize, m: usize, b: usize) -> SparseVec {
        let wa = self.word(n, a);
        let wb = self.word(m, b);
        let mut out = Vec::with_capacity(n + m - 1);
        for &x in &wa {
            if x as usize == i {
                out.extend(wb.iter().map(|&y| y + i as u8));
            } else {
                out.push(shift(x as usize, i, m) as u8);
            }
        }
        SparseVec::unit(self.index(&out))
    }
    fn relabel(&self, n: usize, sigma: &[usize], a: usize) -> SparseVec {
        let w: Vec<u8> = self.word(n, a).iter().map(|&x| sigma[x as usize] as u8).collect();
        SparseVec::unit(self.index(&w))
    }
}

fn lie_words(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return Vec::new();
    }
    all_perms(n - 1).into_iter().map(|p| std::iter::once(0u8).chain(p.into_iter().map(|x| x as u8 + 1)).collect()).collect()
}

/// Lie operad in the left-normed basis `[..[x_0, x_{w1}], .., x_{w(n-1)}]`.
pub struct Lie {
    words: Indexed<Vec<u8>>,
}

impl Default for Lie {
    fn default() -> Self {
        Lie { words: Indexed::new(lie_words) }
    }
}

impl Lie {
    pub fn word(&self, n: usize, a: usize) -> Vec<u8> {
        self.words.get(n).0[a].clone()
    }

    /// Coordinates of an arbitrary bracket tree on the leaves `0..n`.
    pub fn coords(&self, t: &Bracket) -> SparseVec {
        let n = t.leaves().len();
        let b = self.words.get(n);
        SparseVec::from_unsorted(straighten(t).into_iter().map(|(w, c)| (b.1[&w], q(c))))
    }
}

impl Operad for Lie {
    fn name(&self) -> &str {
        "lie"
    }
    fn dim(&self, n: usize) -> usize {
        self.words.get(n).0.len()
    }
    fn basis_tag(&self, n: usize, a: usize) -> String {
        let w = self.word(n, a);
        let mut s = format!("{}", w[0] + 1);
        for x in &w[1..] {
            s = format!("[{s},{}]", x + 1);
        }
        s
    }
    fn unit(&self) -> usize {
        0
    }
    fn in_ideal(&self, n: usize, _a: usize) -> bool {
        n >= 2
    }
    fn weight(&self, n: usize, _a: usize) -> usize {
        n - 1
    }
    fn compose(&self, n: usize, i: usize, a: usize, m: usize, b: usize) -> SparseVec {
        let ta = Bracket::left_normed(&self.word(n, a));
        let tb = Bracket::left_normed(&self.word(m, b));
        let t = ta.substitute(&|x| {
            if x as usize == i {
                tb.substitute(&|y| Bracket::Leaf(y + i as u8))
            } else {
                Bracket::Leaf(shift(x as usize, i, m) as u8)
            }
        });
        self.coords(&t)
    }
    fn relabel(&self, n: usize, sigma: &[usize], a: usize) -> SparseVec {
        let w: Vec<u8> = self.word(n, a).iter().map(|&x| sigma[x as usize] as u8).collect();
        self.coords(&Bracket::left_normed(&w))
    }
}

pub const ROOT: u8 = u8::MAX;

/// Labeled rooted trees on `0..n` as parent arrays, `ROOT` marking the root.
pub fn rooted_trees(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut par = vec![0u8; n];
    fn acyclic(par: &[u8]) -> bool {
        par.iter().enumerate().all(|(v, _)| {
            let mut x = v;
            for _ in 0..=par.len() {
                if par[x] == ROOT {
                    return true;
                }
                x = par[x] as usize;
            }
            false
        })
    }
    fn rec(v: usize, par: &mut Vec<u8>, root_used: bool, out: &mut Vec<Vec<u8>>) {
        let n = par.len();
        if v == n {
            if root_used && acyclic(par) {
                out.push(par.clone());
            }
            return;
        }
        for p in 0..n {
            if p != v {
                par[v] = p as u8;
                rec(v + 1, par, root_used, out);
            }
        }
        if !root_used {
            par[v] = ROOT;
            rec(v + 1, par, true, out);
        }
    }
    rec(0, &mut par, false, &mut out);
    out
}

/// Pre-Lie operad on labeled rooted trees; `T ∘_i S` grafts `S` at vertex
/// `i` and sums over the ways to reattach the children of `i` to `S`.
pub struct PreLie {
    trees: Indexed<Vec<u8>>,
}

impl Default for PreLie {
    fn default() -> Self {
        PreLie { trees: Indexed::new(rooted_trees) }
    }
}

impl PreLie {
    pub fn tree(&self, n: usize, a: usize) -> Vec<u8> {
        self.trees.get(n).0[a].clone()
    }
    pub fn index(&self, t: &[u8]) -> usize {
        self.trees.get(t.len()).1[t]
    }
}

impl Operad for PreLie {
    fn name(&self) -> &str {
        "prelie"
    }
    fn dim(&self, n: usize) -> usize {
        self.trees.get(n).0.len()
    }
    fn basis_tag(&self, n: usize, a: usize) -> String {
        let t = self.tree(n, a);
        t.iter().map(|&p| if p == ROOT { "r".to_string() } else { (p + 1).to_string() }).collect::<Vec<_>>().join(",")
    }
    fn unit(&self) -> usize {
        0
    }
    fn in_ideal(&self, n: usize, _a: usize) -> bool {
        n >= 2
    }
    fn weight(&self, n: usize, _a: usize) -> usize {
        n - 1
    }
    fn compose(&self, n: usize, i: usize, a: usize, m: usize, b: usize) -> SparseVec {
        let t = self.tree(n, a);
        let s = self.tree(m, b);
        let map = |x: u8| if x == ROOT { ROOT } else { shift(x as usize, i, m) as u8 };
        let children: Vec<usize> = (0..n).filter(|&v| t[v] as usize == i && t[v] != ROOT).collect();
        let mut base = vec![0u8; n + m - 1];
        for v in 0..n {
            if v != i {
                base[shift(v, i, m)] = map(t[v]);
            }
        }
        for k in 0..m {
            base[i + k] = if s[k] == ROOT { map(t[i]) } else { s[k] + i as u8 };
        }
        let total = m.pow(children.len() as u32);
        let mut acc = Vec::with_capacity(total);
        for code in 0..total {
            let mut c = code;
            let mut p = base.clone();
            for &v in &children {
                p[shift(v, i, m)] = (i + c % m) as u8;
                c /= m;
            }
            acc.push((self.index(&p), Rational::from_integer(1.into())));
        }
        SparseVec::from_unsorted(acc)
    }
    fn relabel(&self, n: usize, sigma: &[usize], a: usize) -> SparseVec {
        let t = self.tree(n, a);
        let mut p = vec![0u8; n];
        for v in 0..n {
            p[sigma[v]] = if t[v] == ROOT { ROOT } else { sigma[t[v] as usize] as u8 };
        }
        SparseVec::unit(self.index(&p))
    }
}

/// An augmented algebra `A₊ = k ⊕ Ā` viewed as an operad concentrated in
/// arity one. Basis `0` is the unit, `1..=r` a basis of `Ā`.
pub struct Alg1 {
    /// `consts[i][j]` is `e_i e_j` in the basis of `Ā`.
    pub consts: Vec<Vec<SparseVec>>,
    pub weights: Vec<usize>,
}

impl Alg1 {
    pub fn new(consts: Vec<Vec<SparseVec>>, weights: Vec<usize>) -> Self {
        Alg1 { consts, weights }
    }

    /// Rank of the augmentation ideal.
    pub fn r(&self) -> usize {
        self.weights.len()
    }

    /// `(e_i e_j) e_k - e_i (e_j e_k)`; zero for an associative algebra.
    pub fn associator(&self, i: usize, j: usize, k: usize) -> SparseVec {
        let mut acc = SparseVec::new();
        for (l, c) in self.consts[i][j].iter() {
            acc = acc.add_scaled(c, &self.consts[*l][k]);
        }
        for (l, c) in self.consts[j][k].iter() {
            acc = acc.add_scaled(&-c.clone(), &self.consts[i][*l]);
        }
        acc
    }
}

impl Operad for Alg1 {
    fn name(&self) -> &str {
        "alg1"
    }
    fn dim(&self, n: usize) -> usize {
        if n == 1 {
            self.r() + 1
        } else {
            0
        }
    }
    fn basis_tag(&self, _n: usize, a: usize) -> String {
        if a == 0 {
            "1".into()
        } else {
            format!("e{a}")
        }
    }
    fn unit(&self) -> usize {
        0
    }
    fn in_ideal(&self, _n: usize, a: usize) -> bool {
        a > 0
    }
    fn weight(&self, _n: usize, a: usize) -> usize {
        if a == 0 {
            0
        } else {
            self.weights[a - 1]
        }
    }
    fn compose(&self, _n: usize, _i: usize, a: usize, _m: usize, b: usize) -> SparseVec {
        match (a, b) {
            (0, b) => SparseVec::unit(b),
            (a, 0) => SparseVec::unit(a),
            (a, b) => SparseVec(self.consts[a - 1][b - 1].iter().map(|(k, c)| (k + 1, c.clone())).collect()),
        }
    }
    fn relabel(&self, _n: usize, _sigma: &[usize], a: usize) -> SparseVec {
        SparseVec::unit(a)
    }
}

/// `relabel(relabel(a, tau), sigma)` compared with `relabel(a, sigma ∘ tau)`.
pub fn relabel_is_action(op: &dyn Operad, n: usize, a: usize, sigma: &[usize], tau: &[usize]) -> bool {
    let lhs = {
        let mut acc = SparseVec::new();
        for (b, c) in op.relabel(n, tau, a).iter() {
            acc = acc.add_scaled(c, &op.relabel(n, sigma, *b));
        }
        acc
    };
    let rhs = op.relabel(n, &pcompose(sigma, tau), a);
    lhs == rhs && !rhs.0.iter().any(|(_, c)| c.is_zero())
}
