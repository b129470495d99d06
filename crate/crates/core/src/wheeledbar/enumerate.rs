//! Generation of basis graphs block by block.
//!
//! Hanging inputs are always produced in increasing order of their smallest
//! leaf, so every generated graph is already canonical up to vertex order and
//! canonicalization only sorts vertices.

use super::graph::{GraphKey, Inp, Kind, Labels, Part, RawGraph, RawVertex};
use crate::exactla::SparseVec;
use crate::perm::{ordered_decompositions, set_partitions};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

/// A rooted tree of odd vertices; the root is the last vertex.
#[derive(Clone, Debug)]
struct Frag {
    verts: Vec<RawVertex>,
    weight: usize,
}

#[derive(Clone)]
enum Child {
    Leaf(u8),
    Sub(Frag),
}

#[derive(Clone)]
struct Forest {
    children: Vec<Child>,
    nverts: usize,
    weight: usize,
}

pub(crate) struct Enumerator<'a, 'b> {
    labels: &'b Labels<'a>,
    /// Maximal number of odd vertices.
    budget: usize,
    max_weight: usize,
    memo: HashMap<(u32, usize), Arc<Vec<Frag>>>,
}

fn mask_of(leaves: &[u8]) -> u32 {
    leaves.iter().fold(0, |m, &l| m | (1 << l))
}

fn leaves_of(mask: u32) -> Vec<u8> {
    (0..32u8).filter(|l| mask & (1 << l) != 0).collect()
}

/// Appends the vertices of `children` and returns the corresponding inputs.
fn attach(verts: &mut Vec<RawVertex>, children: &[Child]) -> Vec<Inp> {
    children
        .iter()
        .map(|c| match c {
            Child::Leaf(l) => Inp::Leaf(*l),
            Child::Sub(f) => {
                let off = verts.len() as u16;
                for v in &f.verts {
                    let inputs = v
                        .inputs
                        .iter()
                        .map(|i| match *i {
                            Inp::Vert(u) => Inp::Vert(u + off),
                            leaf => leaf,
                        })
                        .collect();
                    verts.push(RawVertex { kind: v.kind, label: v.label.clone(), inputs });
                }
                Inp::Vert(verts.len() as u16 - 1)
            }
        })
        .collect()
}

impl<'a, 'b> Enumerator<'a, 'b> {
    pub fn new(labels: &'b Labels<'a>, budget: usize, max_weight: usize) -> Self {
        Enumerator { labels, budget, max_weight, memo: HashMap::new() }
    }

    fn ideal(&self, k: usize) -> Vec<usize> {
        if k > self.labels.op.max_arity() && !self.labels.op.is_arity_one() {
            return Vec::new();
        }
        if self.labels.op.is_arity_one() && k != 1 {
            return Vec::new();
        }
        self.labels.op.ideal_basis(k)
    }

    /// Rooted trees on exactly the leaves in `mask` with at most `b` vertices.
    fn subtrees(&mut self, mask: u32, b: usize) -> Arc<Vec<Frag>> {
        if let Some(r) = self.memo.get(&(mask, b)) {
            return r.clone();
        }
        let mut out = Vec::new();
        if b > 0 {
            let leaves = leaves_of(mask);
            let accept = |e: &Self, k: usize| !e.ideal(k).is_empty();
            for forest in self.forests(&leaves, b - 1, &accept) {
                let k = forest.children.len();
                for a in self.ideal(k) {
                    let w = forest.weight + self.labels.op.weight(k, a);
                    if w > self.max_weight {
                        continue;
                    }
                    let mut verts = Vec::with_capacity(forest.nverts + 1);
                    let inputs = attach(&mut verts, &forest.children);
                    verts.push(RawVertex { kind: Kind::Node, label: SparseVec::unit(a), inputs });
                    out.push(Frag { verts, weight: w });
                }
            }
        }
        let r = Arc::new(out);
        self.memo.insert((mask, b), r.clone());
        r
    }

    /// Forests on `leaves`: set partitions whose blocks are leaves or
    /// subtrees, with at most `b` vertices in total. `accept` filters the
    /// number of blocks.
    fn forests(&mut self, leaves: &[u8], b: usize, accept: &dyn Fn(&Self, usize) -> bool) -> Vec<Forest> {
        if leaves.is_empty() {
            return if accept(self, 0) { vec![Forest { children: Vec::new(), nverts: 0, weight: 0 }] } else { Vec::new() };
        }
        let items: Vec<usize> = leaves.iter().map(|&l| l as usize).collect();
        let mut out = Vec::new();
        for p in set_partitions(&items) {
            if !accept(self, p.len()) {
                continue;
            }
            let opts: Vec<Vec<Child>> = p
                .iter()
                .map(|blk| {
                    let bl: Vec<u8> = blk.iter().map(|&x| x as u8).collect();
                    let mut o = Vec::new();
                    if bl.len() == 1 {
                        o.push(Child::Leaf(bl[0]));
                    }
                    if b > 0 {
                        o.extend(self.subtrees(mask_of(&bl), b).iter().cloned().map(Child::Sub));
                    }
                    o
                })
                .collect();
            let mut cur = Vec::with_capacity(opts.len());
            self.product(&opts, 0, &mut cur, 0, 0, b, &mut out);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn product(&self, opts: &[Vec<Child>], i: usize, cur: &mut Vec<Child>, nv: usize, w: usize, b: usize, out: &mut Vec<Forest>) {
        if i == opts.len() {
            out.push(Forest { children: cur.clone(), nverts: nv, weight: w });
            return;
        }
        for c in &opts[i] {
            let (cv, cw) = match c {
                Child::Leaf(_) => (0, 0),
                Child::Sub(f) => (f.verts.len(), f.weight),
            };
            if nv + cv > b || w + cw > self.max_weight {
                continue;
            }
            cur.push(c.clone());
            self.product(opts, i + 1, cur, nv + cv, w + cw, b, out);
            cur.pop();
        }
    }

    pub fn trees(&mut self, n: usize) -> Vec<RawGraph> {
        let mut out = Vec::new();
        if n == 1 {
            out.push(RawGraph { part: Part::Tree, verts: Vec::new() });
        }
        if n == 0 {
            return out;
        }
        let leaves: Vec<u8> = (0..n as u8).collect();
        let b = self.budget;
        for f in self.subtrees(mask_of(&leaves), b).iter() {
            out.push(RawGraph { part: Part::Tree, verts: f.verts.clone() });
        }
        out
    }

    pub fn cul_de_sacs(&mut self, n: usize) -> Vec<RawGraph> {
        let leaves: Vec<u8> = (0..n as u8).collect();
        let accept = |e: &Self, k: usize| e.labels.cds_dim(k) > 0;
        let b = self.budget;
        let mut out = Vec::new();
        for forest in self.forests(&leaves, b, &accept) {
            let k = forest.children.len();
            for c in 0..self.labels.cds_dim(k) {
                if forest.weight + self.labels.weight(Kind::Cds, k, c) > self.max_weight {
                    continue;
                }
                let mut verts = Vec::new();
                let inputs = attach(&mut verts, &forest.children);
                verts.push(RawVertex { kind: Kind::Cds, label: SparseVec::unit(c), inputs });
                out.push(RawGraph { part: Part::CulDeSac, verts });
            }
        }
        out
    }

    pub fn wheels(&mut self, n: usize) -> Vec<RawGraph> {
        let leaves: Vec<u8> = (0..n as u8).collect();
        let mut out = Vec::new();
        let accept = |e: &Self, k: usize| !e.ideal(k + 1).is_empty();
        for c in 1..=self.budget {
            for dec in ordered_decompositions(&leaves.iter().map(|&l| l as usize).collect::<Vec<_>>(), c, true) {
                if n > 0 && !dec[0].contains(&0) {
                    continue;
                }
                // hanging forests and labels of each cycle vertex
                let mut per_vertex: Vec<Vec<(Forest, usize, usize)>> = Vec::with_capacity(c);
                let mut ok = true;
                for h in &dec {
                    let hl: Vec<u8> = h.iter().map(|&x| x as u8).collect();
                    let b = self.budget - c;
                    let mut opts = Vec::new();
                    for f in self.forests(&hl, b, &accept) {
                        let k = f.children.len();
                        for a in self.ideal(k + 1) {
                            let w = f.weight + self.labels.op.weight(k + 1, a);
                            if w <= self.max_weight {
                                opts.push((f.clone(), a, w));
                            }
                        }
                    }
                    if opts.is_empty() {
                        ok = false;
                        break;
                    }
                    per_vertex.push(opts);
                }
                if !ok {
                    continue;
                }
                let mut choice = Vec::with_capacity(c);
                self.wheel_product(&per_vertex, &mut choice, c, 0, 0, &mut out);
            }
        }
        out
    }

    fn wheel_product(&self, per_vertex: &[Vec<(Forest, usize, usize)>], choice: &mut Vec<usize>, c: usize, nv: usize, w: usize, out: &mut Vec<RawGraph>) {
        let i = choice.len();
        if i == per_vertex.len() {
            let mut verts = Vec::new();
            let hanging: Vec<Vec<Inp>> = choice.iter().enumerate().map(|(j, &x)| attach(&mut verts, &per_vertex[j][x].0.children)).collect();
            let base = verts.len();
            for (j, (mut inputs, &x)) in hanging.into_iter().zip(choice.iter()).enumerate() {
                inputs.push(Inp::Vert((base + (j + c - 1) % c) as u16));
                verts.push(RawVertex { kind: Kind::Cycle, label: SparseVec::unit(per_vertex[j][x].1), inputs });
            }
            out.push(RawGraph { part: Part::Wheel, verts });
            return;
        }
        for (x, (f, _, fw)) in per_vertex[i].iter().enumerate() {
            if c + nv + f.nverts > self.budget || w + fw > self.max_weight {
                continue;
            }
            choice.push(x);
            self.wheel_product(per_vertex, choice, c, nv + f.nverts, w + fw, out);
            choice.pop();
        }
    }
}

/// Canonical basis graphs, keyed by `(weight, degree)`.
pub(crate) fn canonical_keys(labels: &Labels, raw: Vec<RawGraph>) -> Vec<((usize, usize), GraphKey)> {
    let mut seen = BTreeSet::new();
    for g in raw {
        for (k, _) in labels.canonicalize(&g) {
            seen.insert(k);
        }
    }
    seen.into_iter().map(|k| ((labels.graph_weight(&k), k.degree()), k)).collect()
}
