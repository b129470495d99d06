//! Decorated graphs of the wheeled bar construction and their canonical forms.
//!
//! A graph is a rooted tree, a cul-de-sac tree (the root is an even vertex
//! labeled by the wheeled part) or a wheel (a single directed cycle with trees
//! attached). Every other vertex is odd and labeled by the augmentation ideal
//! of the operad. A cycle vertex receives its cycle edge in its last input.
//! The orientation of a graph is the order of its odd vertices.

use crate::exactla::{q, Rational, SparseVec};
use crate::operads::{OperadTable, Quotient};
use crate::perm::{is_identity, sign};
use num_traits::One;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Part {
    Tree,
    CulDeSac,
    Wheel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    /// The even root of a cul-de-sac tree.
    Cds,
    /// An odd vertex off the cycle.
    Node,
    /// An odd vertex on the cycle.
    Cycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Inp {
    Leaf(u8),
    Vert(u16),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KeyVertex {
    pub kind: Kind,
    pub label: u32,
    pub inputs: Vec<Inp>,
}

/// A basis graph in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphKey {
    pub part: Part,
    pub verts: Vec<KeyVertex>,
}

impl GraphKey {
    pub fn degree(&self) -> usize {
        self.verts.iter().filter(|v| v.kind != Kind::Cds).count()
    }

    pub fn arity(&self) -> usize {
        if self.verts.is_empty() {
            return 1;
        }
        self.verts.iter().flat_map(|v| v.inputs.iter()).filter(|i| matches!(i, Inp::Leaf(_))).count()
    }
}

#[derive(Clone, Debug)]
pub struct RawVertex {
    pub kind: Kind,
    /// Coordinates in `O(arity)` for odd vertices, in the wheeled part for
    /// the cul-de-sac vertex.
    pub label: SparseVec,
    pub inputs: Vec<Inp>,
}

impl RawVertex {
    pub fn hanging(&self) -> &[Inp] {
        if self.kind == Kind::Cycle {
            &self.inputs[..self.inputs.len() - 1]
        } else {
            &self.inputs
        }
    }
}

/// A graph whose vertex labels are linear combinations and whose vertex
/// order is arbitrary.
#[derive(Clone, Debug)]
pub struct RawGraph {
    pub part: Part,
    pub verts: Vec<RawVertex>,
}

impl RawGraph {
    pub fn from_key(k: &GraphKey) -> Self {
        RawGraph {
            part: k.part,
            verts: k.verts.iter().map(|v| RawVertex { kind: v.kind, label: SparseVec::unit(v.label as usize), inputs: v.inputs.clone() }).collect(),
        }
    }

    /// 1-based positions of the odd vertices in the orientation.
    pub fn odd_positions(&self) -> Vec<usize> {
        let mut p = 0;
        self.verts
            .iter()
            .map(|v| {
                if v.kind != Kind::Cds {
                    p += 1;
                }
                p
            })
            .collect()
    }
}

const NO_LEAF: u16 = u16::MAX;

/// Labels for the vertices of graphs over one operad: `O` for odd vertices
/// and, for the wheeled completion, the reduced commutator quotient for the
/// cul-de-sac vertex.
pub struct Labels<'a> {
    pub op: &'a OperadTable,
    /// `Ū_w(k)` for each arity `k`; empty for the trivial wheeling.
    pub ubar: Vec<Quotient>,
}

impl<'a> Labels<'a> {
    pub fn cds_dim(&self, k: usize) -> usize {
        self.ubar.get(k).map(|q| q.dim()).unwrap_or(0)
    }

    /// Lift of a cul-de-sac label to `O(k+1)`.
    pub fn cds_lift(&self, k: usize, x: &SparseVec) -> SparseVec {
        SparseVec::from_unsorted(x.iter().map(|(i, c)| (self.ubar[k].reps[*i], c.clone())))
    }

    pub fn relabel(&self, kind: Kind, arity: usize, sigma: &[usize], x: &SparseVec) -> SparseVec {
        if is_identity(sigma) {
            return x.clone();
        }
        match kind {
            Kind::Node | Kind::Cycle => self.op.relabel_vec(arity, sigma, x),
            Kind::Cds => {
                let mut p = sigma.to_vec();
                p.push(arity);
                self.ubar[arity].coords(&self.op.relabel_vec(arity + 1, &p, &self.cds_lift(arity, x)))
            }
        }
    }

    pub fn weight(&self, kind: Kind, arity: usize, label: usize) -> usize {
        match kind {
            Kind::Cds => self.op.weight(arity + 1, self.ubar[arity].reps[label]),
            _ => self.op.weight(arity, label),
        }
    }

    pub fn graph_weight(&self, g: &GraphKey) -> usize {
        g.verts.iter().map(|v| self.weight(v.kind, v.inputs.len(), v.label as usize)).sum()
    }

    /// Canonical form of a raw graph as a combination of basis graphs.
    pub fn canonicalize(&self, g: &RawGraph) -> Vec<(GraphKey, Rational)> {
        let nv = g.verts.len();
        if nv == 0 {
            return vec![(GraphKey { part: g.part, verts: Vec::new() }, Rational::one())];
        }
        // smallest leaf below each vertex, not following cycle edges
        let mut minleaf = vec![None::<u16>; nv];
        fn ml(v: usize, g: &RawGraph, memo: &mut Vec<Option<u16>>) -> u16 {
            if let Some(x) = memo[v] {
                return x;
            }
            let mut m = NO_LEAF;
            for i in g.verts[v].hanging() {
                let x = match *i {
                    Inp::Leaf(l) => l as u16,
                    Inp::Vert(u) => ml(u as usize, g, memo),
                };
                m = m.min(x);
            }
            memo[v] = Some(m);
            m
        }
        for v in 0..nv {
            ml(v, g, &mut minleaf);
        }
        let minleaf: Vec<u16> = minleaf.into_iter().map(|x| x.unwrap()).collect();
        let inp_key = |i: &Inp| match *i {
            Inp::Leaf(l) => l as u16,
            Inp::Vert(u) => minleaf[u as usize],
        };

        // depth from the roots, through hanging inputs
        let mut referenced = vec![false; nv];
        for v in &g.verts {
            for i in v.hanging() {
                if let Inp::Vert(u) = i {
                    referenced[*u as usize] = true;
                }
            }
        }
        let mut depth = vec![usize::MAX; nv];
        let mut stack: Vec<usize> = (0..nv).filter(|&v| !referenced[v]).collect();
        for &r in &stack {
            depth[r] = 0;
        }
        while let Some(v) = stack.pop() {
            for i in g.verts[v].hanging() {
                if let Inp::Vert(u) = i {
                    depth[*u as usize] = depth[v] + 1;
                    stack.push(*u as usize);
                }
            }
        }

        // position along the cycle, starting from the cycle vertex with the
        // smallest leaf
        let mut cycle_pos = vec![0usize; nv];
        let cycle: Vec<usize> = (0..nv).filter(|&v| g.verts[v].kind == Kind::Cycle).collect();
        let mut pure_cycle = false;
        if !cycle.is_empty() {
            let mut succ = vec![usize::MAX; nv];
            for &v in &cycle {
                if let Some(Inp::Vert(u)) = g.verts[v].inputs.last() {
                    succ[*u as usize] = v;
                }
            }
            let start = *cycle.iter().min_by_key(|&&v| minleaf[v]).unwrap();
            pure_cycle = minleaf[start] == NO_LEAF;
            let mut v = start;
            for p in 0..cycle.len() {
                cycle_pos[v] = p;
                v = succ[v];
            }
        }

        let mut order: Vec<usize> = (0..nv).collect();
        order.sort_by_key(|&v| (g.verts[v].kind != Kind::Cds, minleaf[v], depth[v], cycle_pos[v]));
        let mut new_index = vec![0u16; nv];
        for (i, &v) in order.iter().enumerate() {
            new_index[v] = i as u16;
        }
        let odd_rank: Vec<usize> = {
            let pos = g.odd_positions();
            order.iter().filter(|&&v| g.verts[v].kind != Kind::Cds).map(|&v| pos[v] - 1).collect()
        };
        let coeff = q(sign(&odd_rank) as i64);

        // sort hanging inputs of every vertex by their smallest leaf
        let mut skeleton: Vec<(Kind, Vec<Inp>)> = Vec::with_capacity(nv);
        let mut labels: Vec<SparseVec> = Vec::with_capacity(nv);
        for &v in &order {
            let rv = &g.verts[v];
            let h = rv.hanging();
            let mut idx: Vec<usize> = (0..h.len()).collect();
            idx.sort_by_key(|&s| inp_key(&h[s]));
            let mut sigma = vec![0usize; rv.inputs.len()];
            for (r, &s) in idx.iter().enumerate() {
                sigma[s] = r;
            }
            let remap = |i: &Inp| match *i {
                Inp::Leaf(l) => Inp::Leaf(l),
                Inp::Vert(u) => Inp::Vert(new_index[u as usize]),
            };
            let mut inputs: Vec<Inp> = idx.iter().map(|&s| remap(&h[s])).collect();
            if rv.kind == Kind::Cycle {
                let last = rv.inputs.len() - 1;
                sigma[last] = last;
                inputs.push(remap(&rv.inputs[last]));
            }
            let arity = rv.inputs.len();
            let label = self.relabel(rv.kind, arity, &sigma, &rv.label);
            if label.is_zero() {
                return Vec::new();
            }
            labels.push(label);
            skeleton.push((rv.kind, inputs));
        }

        // expand the tensor product of labels
        let mut out: Vec<(GraphKey, Rational)> = Vec::new();
        let mut choice = vec![0usize; nv];
        loop {
            let mut c = coeff.clone();
            let verts: Vec<KeyVertex> = (0..nv)
                .map(|i| {
                    let (l, x) = &labels[i].0[choice[i]];
                    c *= x;
                    KeyVertex { kind: skeleton[i].0, label: *l as u32, inputs: skeleton[i].1.clone() }
                })
                .collect();
            let key = GraphKey { part: g.part, verts };
            if pure_cycle {
                if let Some((k, s)) = rotate_pure_cycle(key) {
                    out.push((k, c * q(s)));
                }
            } else {
                out.push((key, c));
            }
            // next choice
            let mut i = 0;
            loop {
                if i == nv {
                    return merge(out);
                }
                choice[i] += 1;
                if choice[i] < labels[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }
}

fn merge(terms: Vec<(GraphKey, Rational)>) -> Vec<(GraphKey, Rational)> {
    if terms.len() <= 1 {
        return terms;
    }
    let mut lin = crate::exactla::Lin::new();
    for (k, c) in terms {
        lin.add(k, c);
    }
    lin.into_sorted()
}

/// Canonical rotation of a leafless cycle whose vertices are already in
/// cycle order; `None` if a rotation automorphism reverses the orientation.
fn rotate_pure_cycle(key: GraphKey) -> Option<(GraphKey, i64)> {
    let c = key.verts.len();
    let labels: Vec<u32> = key.verts.iter().map(|v| v.label).collect();
    let rot = |r: usize| -> Vec<u32> { (0..c).map(|i| labels[(i + r) % c]).collect() };
    let best = (0..c).min_by_key(|&r| rot(r)).unwrap();
    let target = rot(best);
    let shift_sign = |r: usize| if r * (c - 1) % 2 == 0 { 1 } else { -1 };
    for r in 1..c {
        if rot((best + r) % c) == target && shift_sign(r) == -1 {
            return None;
        }
    }
    let verts = (0..c).map(|i| KeyVertex { kind: Kind::Cycle, label: target[i], inputs: vec![Inp::Vert(((i + c - 1) % c) as u16)] }).collect();
    Some((GraphKey { part: key.part, verts }, shift_sign(best)))
}
