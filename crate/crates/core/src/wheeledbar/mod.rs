//! Bar constructions of operads and wheeled operads on explicit graph bases.
//!
//! Blocks are indexed by arity `n`, weight `w` and degree `d`, the number of
//! odd vertices. Cul-de-sac labels sit in degree zero. Blocks are built up to
//! `d = max_degree + 1`; the top row only serves to compute the homology
//! below it and is flagged untrusted.

pub mod coprop;
mod enumerate;
pub mod graph;

pub use coprop::coprop_completion;
pub use graph::{GraphKey, Inp, KeyVertex, Kind, Labels, Part, RawGraph, RawVertex};

use crate::exactla::{isotypic_homology, q, BlockKey, ChainComplex, ComplexError, IsotypicError, Lin, Rational, SparseMatrix, SparseVec};
use crate::operads::{Derivative, OperadError, OperadTable};
use crate::perm::transposition;
use crate::report::{BlockReport, HomologyReport};
use crate::Truncation;
use enumerate::{canonical_keys, Enumerator};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Wheeling {
    /// Wheeled part zero, zero trace.
    Trivial,
    /// Wheeled part `|∂(O)|` with the canonical projection as trace.
    Completion,
}

impl Wheeling {
    pub fn as_str(&self) -> &'static str {
        match self {
            Wheeling::Trivial => "trivial",
            Wheeling::Completion => "completion",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BarError {
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Isotypic(#[from] IsotypicError),
    #[error("truncation exceeded: {0}")]
    Truncation(String),
}

/// Kinds of edges contracted by the differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffPart {
    /// Edges between two cycle vertices.
    Cyclic,
    /// Edges out of tree vertices, into odd or cul-de-sac vertices.
    Tree,
    /// Loops, erased by the trace.
    Trace,
}

/// An operad together with a wheeled part and trace.
pub struct WheeledOperad<'a> {
    pub labels: Labels<'a>,
    pub wheeling: Wheeling,
    /// Dimensions of the full wheeled part `|∂(O)|(k)`, unit included.
    pub wheeled_dims: Vec<usize>,
}

/// The zero wheeling of `op`.
pub fn trivial_wheeling(op: &OperadTable) -> WheeledOperad<'_> {
    WheeledOperad { labels: Labels { op, ubar: Vec::new() }, wheeling: Wheeling::Trivial, wheeled_dims: Vec::new() }
}

/// The wheeled completion of `op` up to arity `t.max_arity`.
pub fn wheeled_completion<'a>(op: &'a OperadTable, t: &Truncation) -> Result<WheeledOperad<'a>, OperadError> {
    let max_k = if op.is_arity_one() { 0 } else { t.max_arity };
    op.require_arity(max_k + 1)?;
    let d = Derivative::new(op);
    let ks: Vec<usize> = (0..=max_k).collect();
    let ubar = ks.par_iter().map(|&k| d.reduced_commutator_quotient(k)).collect();
    let wheeled_dims = ks.par_iter().map(|&k| d.commutator_quotient(k).dim()).collect();
    Ok(WheeledOperad { labels: Labels { op, ubar }, wheeling: Wheeling::Completion, wheeled_dims })
}

/// A chain complex of graphs with its bases.
#[derive(Clone, Debug, Default)]
pub struct GraphComplex {
    pub complex: ChainComplex,
    pub bases: BTreeMap<BlockKey, Vec<GraphKey>>,
}

impl GraphComplex {
    pub fn homology(&self) -> Result<BTreeMap<BlockKey, usize>, ComplexError> {
        self.complex.homology_dims()
    }
}

/// The two summands of a wheeled bar construction: rooted trees, and wheels
/// with cul-de-sac trees.
#[derive(Clone, Debug, Default)]
pub struct WheeledBar {
    pub operadic: GraphComplex,
    pub wheeled: GraphComplex,
}

/// Homology dimensions of a wheeled bar construction split by part.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedHomology {
    pub operadic: BTreeMap<BlockKey, usize>,
    pub wheeled: BTreeMap<BlockKey, usize>,
    /// Largest degree in which the homology is exact.
    pub max_degree: usize,
    pub max_arity: usize,
    pub max_weight: usize,
}

impl WheeledOperad<'_> {
    fn completion(&self) -> bool {
        self.wheeling == Wheeling::Completion
    }

    /// Differential of a basis graph.
    pub fn differential(&self, g: &GraphKey) -> Vec<(GraphKey, Rational)> {
        self.differential_parts(g, &[DiffPart::Cyclic, DiffPart::Tree, DiffPart::Trace])
    }

    /// The summands of the differential contracting the selected kinds of
    /// edges.
    pub fn differential_parts(&self, g: &GraphKey, parts: &[DiffPart]) -> Vec<(GraphKey, Rational)> {
        let raw = RawGraph::from_key(g);
        let pos = raw.odd_positions();
        let mut lin = Lin::new();
        for (vi, v) in raw.verts.iter().enumerate() {
            for (j, inp) in v.inputs.iter().enumerate() {
                let Inp::Vert(u) = *inp else { continue };
                let u = u as usize;
                let part = if u == vi {
                    DiffPart::Trace
                } else if v.kind == Kind::Cycle && raw.verts[u].kind == Kind::Cycle {
                    DiffPart::Cyclic
                } else {
                    DiffPart::Tree
                };
                if !parts.contains(&part) {
                    continue;
                }
                let term = match part {
                    DiffPart::Trace if self.completion() => self.erase_loop(&raw, &pos, vi),
                    DiffPart::Trace => None,
                    _ if v.kind == Kind::Cds => self.absorb(&raw, &pos, vi, j, u),
                    _ => self.merge(&raw, &pos, vi, j, u),
                };
                if let Some((h, s)) = term {
                    for (k, c) in self.labels.canonicalize(&h) {
                        lin.add(k, c * q(s as i64));
                    }
                }
            }
        }
        lin.into_sorted()
    }

    /// Contracts the edge from `u` into input `j` of `v`; the new vertex comes
    /// first in the orientation.
    fn merge(&self, g: &RawGraph, pos: &[usize], v: usize, j: usize, u: usize) -> Option<(RawGraph, i32)> {
        let (gv, gu) = (&g.verts[v], &g.verts[u]);
        let (av, au) = (gv.inputs.len(), gu.inputs.len());
        let label = self.labels.op.compose_vec(av, j, &gv.label, au, &gu.label);
        if label.is_zero() {
            return None;
        }
        let nv = g.verts.len();
        let mut map = vec![0u16; nv];
        let mut next = 1;
        for (x, m) in map.iter_mut().enumerate() {
            if x != u && x != v {
                *m = next;
                next += 1;
            }
        }
        let remap = |i: &Inp| match *i {
            Inp::Vert(x) => Inp::Vert(map[x as usize]),
            leaf => leaf,
        };
        let inputs: Vec<Inp> = gv.inputs[..j].iter().chain(gu.inputs.iter()).chain(gv.inputs[j + 1..].iter()).map(remap).collect();
        let mut verts = vec![RawVertex { kind: gv.kind, label, inputs }];
        for (x, w) in g.verts.iter().enumerate() {
            if x != u && x != v {
                verts.push(RawVertex { kind: w.kind, label: w.label.clone(), inputs: w.inputs.iter().map(remap).collect() });
            }
        }
        let (pv, pu) = (pos[v], pos[u]);
        let pu2 = if pu < pv { pu + 1 } else { pu };
        let s = if (pv - 1 + pu2 - 2) % 2 == 0 { 1 } else { -1 };
        Some((RawGraph { part: g.part, verts }, s))
    }

    /// Composes the odd vertex `u` into input `j` of the cul-de-sac vertex `c`.
    fn absorb(&self, g: &RawGraph, pos: &[usize], c: usize, j: usize, u: usize) -> Option<(RawGraph, i32)> {
        let (gc, gu) = (&g.verts[c], &g.verts[u]);
        let (k, au) = (gc.inputs.len(), gu.inputs.len());
        let lift = self.labels.cds_lift(k, &gc.label);
        let comp = self.labels.op.compose_vec(k + 1, j, &lift, au, &gu.label);
        let label = self.labels.ubar[k + au - 1].coords(&comp);
        if label.is_zero() {
            return None;
        }
        let remap = |i: &Inp| match *i {
            Inp::Vert(x) if x as usize > u => Inp::Vert(x - 1),
            other => other,
        };
        let mut verts = Vec::with_capacity(g.verts.len() - 1);
        for (x, w) in g.verts.iter().enumerate() {
            if x == u {
                continue;
            }
            if x == c {
                let inputs = gc.inputs[..j].iter().chain(gu.inputs.iter()).chain(gc.inputs[j + 1..].iter()).map(remap).collect();
                verts.push(RawVertex { kind: Kind::Cds, label: label.clone(), inputs });
            } else {
                verts.push(RawVertex { kind: w.kind, label: w.label.clone(), inputs: w.inputs.iter().map(remap).collect() });
            }
        }
        let s = if pos[u] % 2 == 0 { 1 } else { -1 };
        Some((RawGraph { part: g.part, verts }, s))
    }

    /// Applies the trace to a vertex whose cycle input is its own output.
    fn erase_loop(&self, g: &RawGraph, pos: &[usize], v: usize) -> Option<(RawGraph, i32)> {
        let gv = &g.verts[v];
        let k = gv.inputs.len() - 1;
        let label = self.labels.ubar.get(k)?.coords(&gv.label);
        if label.is_zero() {
            return None;
        }
        let mut verts = g.verts.clone();
        verts[v] = RawVertex { kind: Kind::Cds, label, inputs: gv.inputs[..k].to_vec() };
        let s = if (pos[v] - 1) % 2 == 0 { 1 } else { -1 };
        Some((RawGraph { part: Part::CulDeSac, verts }, s))
    }

    /// Image of a graph over another operad under a map of vertex labels,
    /// `f(kind, arity, label)`, expressed in this operad's basis.
    pub fn pushforward(&self, g: &GraphKey, f: &dyn Fn(Kind, usize, usize) -> SparseVec) -> Vec<(GraphKey, Rational)> {
        let mut raw = RawGraph::from_key(g);
        for (v, k) in raw.verts.iter_mut().zip(&g.verts) {
            v.label = f(k.kind, k.inputs.len(), k.label as usize);
        }
        self.labels.canonicalize(&raw)
    }

    /// Image of a basis graph under the relabeling of leaves by `sigma`.
    pub fn act(&self, g: &GraphKey, sigma: &[usize]) -> Vec<(GraphKey, Rational)> {
        let mut raw = RawGraph::from_key(g);
        for v in &mut raw.verts {
            for i in &mut v.inputs {
                if let Inp::Leaf(l) = i {
                    *l = sigma[*l as usize] as u8;
                }
            }
        }
        self.labels.canonicalize(&raw)
    }

    fn basis(&self, parts: &[Part], t: &Truncation) -> BTreeMap<BlockKey, Vec<GraphKey>> {
        let budget = t.max_degree + 1;
        let ns: Vec<usize> = (0..=t.max_arity).collect();
        let per_n: Vec<Vec<(BlockKey, GraphKey)>> = ns
            .par_iter()
            .map(|&n| {
                let mut e = Enumerator::new(&self.labels, budget, t.max_weight);
                let mut raw = Vec::new();
                for p in parts {
                    match p {
                        Part::Tree => raw.extend(e.trees(n)),
                        Part::Wheel => raw.extend(e.wheels(n)),
                        Part::CulDeSac if self.completion() => raw.extend(e.cul_de_sacs(n)),
                        Part::CulDeSac => {}
                    }
                }
                canonical_keys(&self.labels, raw)
                    .into_iter()
                    .filter(|((w, d), _)| *w <= t.max_weight && *d <= budget)
                    .map(|((w, d), k)| (BlockKey::new(n, w, d), k))
                    .collect()
            })
            .collect();
        let mut out: BTreeMap<BlockKey, Vec<GraphKey>> = BTreeMap::new();
        for (b, k) in per_n.into_iter().flatten() {
            out.entry(b).or_default().push(k);
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    fn assemble(&self, parts: &[Part], t: &Truncation, actions: bool) -> Result<GraphComplex, BarError> {
        let bases = self.basis(parts, t);
        let index: HashMap<&GraphKey, usize> = bases.values().flat_map(|v| v.iter().enumerate().map(|(i, k)| (k, i))).collect();
        let mut complex = ChainComplex::new();
        for (b, v) in &bases {
            complex.add_block(*b, v.len());
            if b.d > t.max_degree {
                complex.untrusted.insert(*b);
            }
        }
        let keys: Vec<BlockKey> = bases.keys().copied().collect();
        let diffs: Vec<(BlockKey, Result<SparseMatrix, BarError>)> = keys
            .par_iter()
            .filter(|b| b.d > 0)
            .map(|b| {
                let lower = b.below().unwrap();
                let nrows = complex.dim(lower);
                let cols: Result<Vec<SparseVec>, BarError> =
                    bases[b].par_iter().map(|g| self.to_coords(&self.differential(g), lower, &bases, &index)).collect();
                (*b, cols.map(|c| SparseMatrix::from_columns(nrows, &c)))
            })
            .collect();
        for (b, m) in diffs {
            complex.set_differential(b, m?);
        }
        if actions {
            let acts: Vec<(BlockKey, Result<Vec<SparseMatrix>, BarError>)> = keys
                .par_iter()
                .map(|b| {
                    let mats = (0..b.n.saturating_sub(1))
                        .map(|i| {
                            let s = transposition(b.n, i);
                            let cols: Result<Vec<SparseVec>, BarError> =
                                bases[b].iter().map(|g| self.to_coords(&self.act(g, &s), *b, &bases, &index)).collect();
                            cols.map(|c| SparseMatrix::from_columns(bases[b].len(), &c))
                        })
                        .collect();
                    (*b, mats)
                })
                .collect();
            for (b, m) in acts {
                complex.actions.insert(b, m?);
            }
        }
        Ok(GraphComplex { complex, bases })
    }

    fn to_coords(
        &self,
        terms: &[(GraphKey, Rational)],
        block: BlockKey,
        bases: &BTreeMap<BlockKey, Vec<GraphKey>>,
        index: &HashMap<&GraphKey, usize>,
    ) -> Result<SparseVec, BarError> {
        let mut out = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match index.get(k) {
                Some(&i) if bases.get(&block).is_some_and(|v| v.get(i) == Some(k)) => out.push((i, c.clone())),
                _ => return Err(BarError::Truncation(format!("graph {k:?} outside block {block:?}"))),
            }
        }
        Ok(SparseVec::from_unsorted(out))
    }

    /// The wheeled bar construction split into its two summands.
    pub fn wheeled_bar(&self, t: &Truncation, actions: bool) -> Result<WheeledBar, BarError> {
        self.check_arity(t, true)?;
        Ok(WheeledBar { operadic: self.assemble(&[Part::Tree], t, actions)?, wheeled: self.assemble(&[Part::Wheel, Part::CulDeSac], t, actions)? })
    }

    /// Only the wheels and cul-de-sac trees.
    pub fn wheeled_part(&self, t: &Truncation, actions: bool) -> Result<GraphComplex, BarError> {
        self.check_arity(t, true)?;
        self.assemble(&[Part::Wheel, Part::CulDeSac], t, actions)
    }

    fn check_arity(&self, t: &Truncation, wheeled: bool) -> Result<(), OperadError> {
        self.labels.op.require_arity(t.max_arity + usize::from(wheeled))?;
        if self.completion() && !self.labels.op.is_arity_one() && self.labels.ubar.len() <= t.max_arity {
            return Err(OperadError::Truncation { needed: t.max_arity, max: self.labels.ubar.len().saturating_sub(1) });
        }
        Ok(())
    }
}

/// The bar construction `B(O)` on rooted trees.
pub fn bar(op: &OperadTable, t: &Truncation, actions: bool) -> Result<GraphComplex, BarError> {
    let u = trivial_wheeling(op);
    u.check_arity(t, false)?;
    u.assemble(&[Part::Tree], t, actions)
}

/// Homology of both parts; degrees above `t.max_degree` are dropped.
pub fn bigraded_homology(b: &WheeledBar, t: &Truncation) -> Result<BigradedHomology, ComplexError> {
    let keep = |h: BTreeMap<BlockKey, usize>| h.into_iter().filter(|(k, _)| k.d <= t.max_degree).collect();
    Ok(BigradedHomology {
        operadic: keep(b.operadic.homology()?),
        wheeled: keep(b.wheeled.homology()?),
        max_degree: t.max_degree,
        max_arity: t.max_arity,
        max_weight: t.max_weight,
    })
}

fn partition_label(p: &[usize]) -> String {
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Per-block homology records of one part, with isotypic multiplicities
/// when the complex carries actions.
pub fn part_report(gc: &GraphComplex, part: &str, isotypic: bool) -> Result<Vec<BlockReport>, BarError> {
    let h = gc.homology()?;
    let mut iso: BTreeMap<BlockKey, BTreeMap<String, usize>> = BTreeMap::new();
    if isotypic {
        let arities: BTreeSet<usize> = h.keys().map(|k| k.n).collect();
        for n in arities {
            for (k, m) in isotypic_homology(&gc.complex, n)? {
                iso.insert(k, m.into_iter().filter(|(_, x)| *x > 0).map(|(p, x)| (partition_label(&p), x)).collect());
            }
        }
    }
    Ok(h.into_iter()
        .map(|(k, dim)| BlockReport {
            n: k.n,
            w: k.w,
            d: k.d,
            part: part.to_string(),
            dim,
            isotypic: if isotypic { Some(iso.remove(&k).unwrap_or_default()) } else { None },
            untrusted: gc.complex.untrusted.contains(&k),
        })
        .collect())
}

/// JSON-ready homology report of a wheeled bar construction.
pub fn report(operad: &str, wheeling: Wheeling, b: &WheeledBar, isotypic: bool) -> Result<HomologyReport, BarError> {
    let mut blocks = part_report(&b.operadic, "operadic", isotypic)?;
    blocks.extend(part_report(&b.wheeled, "wheeled", isotypic)?);
    Ok(HomologyReport { operad: Some(operad.to_string()), wheeling: Some(wheeling.as_str().to_string()), blocks, ..Default::default() })
}
