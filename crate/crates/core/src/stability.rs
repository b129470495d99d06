//! Side-by-side comparison of `gl(V)`-invariant Chevalley–Eilenberg homology
//! of derivation Lie algebras with coPROP completions of wheeled bar
//! homology, and stable multiplicities of mixed irreducibles.

use crate::cyclic::calchom_check;
use crate::derlie::{ce_complex, Coefficients, DerLieError, FreeAlgebra, LieKind};
use crate::exactla::{character, isotypic_homology, partitions, BlockKey, ChainComplex, Partition, Rational};
use crate::operads::OperadTable;
use crate::wheeledbar::{bigraded_homology, coprop_completion, trivial_wheeling, wheeled_completion, BarError, BigradedHomology, WheeledBar};
use crate::Truncation;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum StabilityError {
    #[error(transparent)]
    DerLie(#[from] DerLieError),
    #[error(transparent)]
    Bar(#[from] BarError),
    #[error("truncation exceeded: {0}")]
    Truncation(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<crate::exactla::ComplexError> for StabilityError {
    fn from(e: crate::exactla::ComplexError) -> Self {
        StabilityError::Bar(e.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Main1,
    Main2,
    NewFuchs,
    Lqt,
    Semidirect,
    Calchom,
}

impl Theorem {
    pub fn as_str(&self) -> &'static str {
        match self {
            Theorem::Main1 => "main1",
            Theorem::Main2 => "main2",
            Theorem::NewFuchs => "newfuchs",
            Theorem::Lqt => "lqt",
            Theorem::Semidirect => "semidirect",
            Theorem::Calchom => "calchom",
        }
    }
}

/// One compared quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonBlock {
    /// Arity, for comparisons of species.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, rename = "dimV", skip_serializing_if = "Option::is_none")]
    pub dim_v: Option<usize>,
    pub w: usize,
    pub d: usize,
    pub p: usize,
    pub q: usize,
    /// What is compared: `chains`, `homology`, `sder_homology`,
    /// `full_homology`, `wheel_homology`, `freeness` or `operadic_bar`.
    pub quantity: String,
    pub left: usize,
    /// The predicted value; absent when there is no prediction.
    pub right: Option<usize>,
    pub in_stable_range: bool,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub theorem: Theorem,
    pub operad: String,
    pub blocks: Vec<ComparisonBlock>,
}

impl ComparisonReport {
    fn new(theorem: Theorem, operad: &str) -> Self {
        ComparisonReport { theorem, operad: operad.to_string(), blocks: Vec::new() }
    }

    #[allow(clippy::too_many_arguments)]
    fn push(&mut self, dim_v: usize, w: usize, d: usize, p: usize, q: usize, quantity: &str, left: usize, right: Option<usize>, in_range: bool) {
        let matches = right.is_none_or(|r| r == left);
        self.blocks.push(ComparisonBlock {
            n: None,
            dim_v: Some(dim_v),
            w,
            d,
            p,
            q,
            quantity: quantity.to_string(),
            left,
            right,
            in_stable_range: in_range,
            matches,
        });
    }

    /// Blocks in the stable range whose two sides differ.
    pub fn failures(&self) -> Vec<&ComparisonBlock> {
        self.blocks.iter().filter(|b| b.in_stable_range && !b.matches).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// Fixed-width text table.
    pub fn to_table(&self) -> String {
        let header = ["n", "dimV", "w", "d", "p", "q", "quantity", "left", "right", "stable", "match"];
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
        let rows: Vec<[String; 11]> = self
            .blocks
            .iter()
            .map(|b| {
                [
                    opt(b.n),
                    opt(b.dim_v),
                    b.w.to_string(),
                    b.d.to_string(),
                    b.p.to_string(),
                    b.q.to_string(),
                    b.quantity.clone(),
                    b.left.to_string(),
                    opt(b.right),
                    if b.in_stable_range { "yes" } else { "no" }.into(),
                    if b.matches { "yes" } else { "NO" }.into(),
                ]
            })
            .collect();
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "# {} {} {}", self.theorem.as_str(), self.operad, if self.passed() { "PASS" } else { "FAIL" });
        let line = |cells: Vec<&str>| cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ");
        let _ = writeln!(out, "{}", line(header.to_vec()));
        for r in &rows {
            let _ = writeln!(out, "{}", line(r.iter().map(|s| s.as_str()).collect()));
        }
        out
    }

    /// Writes `<theorem>_<operad>.json` and `.txt` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf), StabilityError> {
        std::fs::create_dir_all(dir)?;
        let stem = format!("{}_{}", self.theorem.as_str(), self.operad);
        let json = dir.join(format!("{stem}.json"));
        let txt = dir.join(format!("{stem}.txt"));
        std::fs::write(&json, serde_json::to_string_pretty(self)? + "\n")?;
        std::fs::write(&txt, self.to_table())?;
        Ok((json, txt))
    }
}

/// Block dimensions of a wheeled bar construction in the shape of its
/// homology, so that the coPROP completion can be taken at chain level.
pub fn chain_dims(b: &WheeledBar, t: &Truncation) -> BigradedHomology {
    let keep = |c: &ChainComplex| c.blocks.iter().filter(|(k, v)| k.d <= t.max_degree && **v > 0).map(|(k, v)| (*k, *v)).collect();
    BigradedHomology {
        operadic: keep(&b.operadic.complex),
        wheeled: keep(&b.wheeled.complex),
        max_degree: t.max_degree,
        max_arity: t.max_arity,
        max_weight: t.max_weight,
    }
}

fn at(c: &BTreeMap<BlockKey, usize>, w: usize, d: usize) -> usize {
    c.get(&BlockKey::new(0, w, d)).copied().unwrap_or(0)
}

/// The graph side for one coefficient pair: chain and homology dimensions
/// of the `(p, q)` component, by `(w, d)`.
fn graph_side(
    b: &WheeledBar,
    p: usize,
    q: usize,
    t: &Truncation,
) -> Result<(BTreeMap<(usize, usize), usize>, BTreeMap<(usize, usize), usize>), StabilityError> {
    let chains = coprop_completion(&chain_dims(b, t), p, q, t)?;
    let homology = coprop_completion(&bigraded_homology(b, t)?, p, q, t)?;
    Ok((chains, homology))
}

fn weight_of(p: usize, q: usize, t: &Truncation) -> Option<usize> {
    (p >= q && p - q <= t.max_weight).then(|| p - q)
}

/// Degrees past `max(dims) - p` are outside every stable range and skipped.
fn degree_cap(dims: &[usize], p: usize, t: &Truncation) -> usize {
    t.max_degree.min(dims.iter().max().copied().unwrap_or(0).saturating_sub(p))
}

/// `Der⁺(O(V))` against the coPROP completion of `H(B^↻(O))` for the trivial
/// wheeling. Chain blocks are in range for `dim V ≥ d + p`, homology for
/// `dim V > d + p`; degrees above `max(dims) - p` are not computed.
pub fn compare_main1(op: &OperadTable, dims: &[usize], t: &Truncation, coeffs: &[(usize, usize)]) -> Result<ComparisonReport, StabilityError> {
    let mut r = ComparisonReport::new(Theorem::Main1, op.name());
    for &(p, q) in coeffs {
        let Some(w) = weight_of(p, q, t) else { continue };
        let dm = degree_cap(dims, p, t);
        let bt = Truncation::new(p, w, dm);
        let wb = trivial_wheeling(op).wheeled_bar(&bt, false)?;
        let (chains, homology) = graph_side(&wb, p, q, &bt)?;
        for &n in dims {
            let fa = FreeAlgebra::new(op, n, w)?;
            let c = ce_complex(LieKind::DerPlus, &fa, Coefficients { p, q, invariants: true }, &Truncation::new(0, w, dm))?;
            let h = c.homology_dims()?;
            for d in 0..=dm {
                r.push(n, w, d, p, q, "chains", at(&c.blocks, w, d), Some(chains.get(&(w, d)).copied().unwrap_or(0)), n >= d + p);
                r.push(n, w, d, p, q, "homology", at(&h, w, d), Some(homology.get(&(w, d)).copied().unwrap_or(0)), n > d + p);
            }
        }
    }
    Ok(r)
}

/// The semidirect dg Lie algebra and `SDer⁺` against the coPROP completion
/// of `H(B^↻(O^↻))`, in the conservative range `dim V > max(d + p, w)`.
pub fn compare_main2(op: &OperadTable, dims: &[usize], t: &Truncation, coeffs: &[(usize, usize)]) -> Result<ComparisonReport, StabilityError> {
    let mut r = ComparisonReport::new(Theorem::Main2, op.name());
    for &(p, q) in coeffs {
        let Some(w) = weight_of(p, q, t) else { continue };
        let dm = degree_cap(dims, p, t);
        let bt = Truncation::new(p, w, dm);
        let wb = wheeled_completion(op, &bt).map_err(BarError::from)?.wheeled_bar(&bt, false)?;
        let (chains, homology) = graph_side(&wb, p, q, &bt)?;
        for &n in dims {
            let fa = FreeAlgebra::new(op, n, w)?;
            let co = Coefficients { p, q, invariants: true };
            let ct = Truncation::new(0, w, dm);
            let semi = match ce_complex(LieKind::Semidirect, &fa, co, &ct) {
                Ok(c) => Some(c),
                Err(DerLieError::Unsupported(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let sder = ce_complex(LieKind::SDerPlus, &fa, co, &ct)?;
            let hs = sder.homology_dims()?;
            let hsemi = semi.as_ref().map(|c| c.homology_dims()).transpose()?;
            for d in 0..=dm {
                let in_range = n > (d + p).max(w);
                let right = homology.get(&(w, d)).copied().unwrap_or(0);
                if let (Some(c), Some(h)) = (&semi, &hsemi) {
                    r.push(n, w, d, p, q, "chains", at(&c.blocks, w, d), Some(chains.get(&(w, d)).copied().unwrap_or(0)), n >= d + p && n > w);
                    r.push(n, w, d, p, q, "homology", at(h, w, d), Some(right), in_range);
                }
                r.push(n, w, d, p, q, "sder_homology", at(&hs, w, d), Some(right), in_range);
            }
        }
    }
    Ok(r)
}

/// Weight-`r` homology of `L₁(n) = Der⁺(Com(V))`: vanishing off the
/// diagonal for `n > r + 2d`, and on the diagonal the invariants against
/// `Hom(V^{⊗(r+d)}, V^{⊗d})` given by the coPROP completion.
pub fn compare_newfuchs(op: &OperadTable, dim_v: usize, r: usize, max_degree: usize) -> Result<ComparisonReport, StabilityError> {
    let mut rep = ComparisonReport::new(Theorem::NewFuchs, op.name());
    let fa = FreeAlgebra::new(op, dim_v, r)?;
    let full = ce_complex(LieKind::DerPlus, &fa, Coefficients { p: 0, q: 0, invariants: false }, &Truncation::new(0, r, max_degree))?;
    let h = full.homology_dims()?;
    for d in 0..=max_degree {
        let right = (d != r).then_some(0);
        rep.push(dim_v, r, d, 0, 0, "full_homology", at(&h, r, d), right, dim_v > r + 2 * d);
        let (p, q) = (r + d, d);
        if d >= 1 && dim_v >= d + p {
            let bt = Truncation::new(p, r, d);
            let wb = trivial_wheeling(op).wheeled_bar(&bt, false)?;
            let predicted = coprop_completion(&bigraded_homology(&wb, &bt)?, p, q, &bt)?;
            let c = ce_complex(LieKind::DerPlus, &fa, Coefficients { p, q, invariants: true }, &Truncation::new(0, r, d))?;
            let hi = c.homology_dims()?;
            rep.push(dim_v, r, d, p, q, "homology", at(&hi, r, d), Some(predicted.get(&(r, d)).copied().unwrap_or(0)), dim_v > d + p);
        }
    }
    Ok(rep)
}

/// `H(gl_n(A))` and `H(sl_n(A))` for an arity-one operad `A₊`, against the
/// `(0, 0)` component of the coPROP completions for the trivial and the
/// completed wheeling.
pub fn compare_lqt(op: &OperadTable, dim_v: usize, max_degree: usize) -> Result<ComparisonReport, StabilityError> {
    if !op.is_arity_one() {
        return Err(StabilityError::Truncation("the matrix comparison needs an arity-one operad".into()));
    }
    let mut rep = ComparisonReport::new(Theorem::Lqt, op.name());
    let bt = Truncation::new(0, 0, max_degree);
    let fa = FreeAlgebra::new(op, dim_v, 0)?;
    let co = Coefficients { p: 0, q: 0, invariants: false };
    let sides = [
        ("homology", LieKind::DerPlus, trivial_wheeling(op).wheeled_bar(&bt, false)?),
        ("sder_homology", LieKind::SDerPlus, wheeled_completion(op, &bt).map_err(BarError::from)?.wheeled_bar(&bt, false)?),
    ];
    for (quantity, kind, wb) in sides {
        let right = coprop_completion(&bigraded_homology(&wb, &bt)?, 0, 0, &bt)?;
        let h = ce_complex(kind, &fa, co, &bt)?.homology_dims()?;
        for d in 0..=max_degree {
            rep.push(dim_v, 0, d, 0, 0, quantity, at(&h, 0, d), Some(right.get(&(0, d)).copied().unwrap_or(0)), dim_v > d);
        }
    }
    Ok(rep)
}

/// Homology of `SDer⁺(O(V))` against that of the semidirect dg Lie algebra,
/// with trivial coefficients, in weights below `dim V`.
pub fn compare_semidirect(op: &OperadTable, dim_v: usize, max_weight: usize, max_degree: usize) -> Result<ComparisonReport, StabilityError> {
    let mut rep = ComparisonReport::new(Theorem::Semidirect, op.name());
    let fa = FreeAlgebra::new(op, dim_v, max_weight)?;
    let co = Coefficients { p: 0, q: 0, invariants: false };
    let t = Truncation::new(0, max_weight, max_degree);
    let sder = ce_complex(LieKind::SDerPlus, &fa, co, &t)?.homology_dims()?;
    let semi = ce_complex(LieKind::Semidirect, &fa, co, &t)?.homology_dims()?;
    for w in 0..=max_weight {
        for d in 0..=max_degree {
            rep.push(dim_v, w, d, 0, 0, "sder_homology", at(&sder, w, d), Some(at(&semi, w, d)), w < dim_v);
        }
    }
    Ok(rep)
}

/// The wheel homology of `B^↻(O)` against `HC_{•−1}(∂(Ō)₀)`, with the
/// freeness witness and the check that the tree part is the bar construction.
pub fn compare_calchom(op: &OperadTable, t: &Truncation) -> Result<ComparisonReport, StabilityError> {
    let c = calchom_check(op, t)?;
    let mut rep = ComparisonReport::new(Theorem::Calchom, op.name());
    let row = |n: usize, w: usize, d: usize, quantity: &str, left: usize, right: usize| ComparisonBlock {
        n: Some(n),
        dim_v: None,
        w,
        d,
        p: 0,
        q: 0,
        quantity: quantity.to_string(),
        left,
        right: Some(right),
        in_stable_range: true,
        matches: left == right,
    };
    for &(k, a, b) in &c.freeness {
        rep.blocks.push(row(k, 0, 0, "freeness", a, b));
    }
    rep.blocks.push(row(0, 0, 0, "operadic_bar", usize::from(c.operadic_matches_bar), 1));
    for &(n, w, d, lhs, rhs) in &c.blocks {
        rep.blocks.push(row(n, w, d, "wheel_homology", lhs, rhs));
    }
    Ok(rep)
}

/// Isotypic multiplicities of both parts of a wheeled bar homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicHomology {
    pub operadic: BTreeMap<BlockKey, BTreeMap<Partition, usize>>,
    pub wheeled: BTreeMap<BlockKey, BTreeMap<Partition, usize>>,
    pub truncation: Truncation,
}

/// Isotypic homology of a wheeled bar construction assembled with actions.
pub fn isotypic_bigraded(b: &WheeledBar, t: &Truncation) -> Result<IsotypicHomology, StabilityError> {
    let part = |c: &ChainComplex| -> Result<BTreeMap<BlockKey, BTreeMap<Partition, usize>>, StabilityError> {
        let mut out = BTreeMap::new();
        for n in 0..=t.max_arity {
            for (k, m) in isotypic_homology(c, n).map_err(BarError::from)? {
                if k.d <= t.max_degree && k.w <= t.max_weight {
                    out.insert(k, m);
                }
            }
        }
        Ok(out)
    };
    Ok(IsotypicHomology { operadic: part(&b.operadic.complex)?, wheeled: part(&b.wheeled.complex)?, truncation: *t })
}

/// Power-sum monomial `p_μ(x) p_ν(y)` graded by `(w, d)`.
type Key = (Partition, Partition, usize, usize);
type Series = BTreeMap<Key, Rational>;

struct Ring {
    p: usize,
    q: usize,
    w: usize,
    d: usize,
}

fn merge(a: &[usize], b: &[usize]) -> Partition {
    let mut v: Partition = a.iter().chain(b).copied().collect();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

fn size(p: &[usize]) -> usize {
    p.iter().sum()
}

/// `z_μ = Π_i i^{m_i} m_i!`.
fn z(mu: &[usize]) -> Rational {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for &x in mu {
        *counts.entry(x).or_default() += 1;
    }
    let mut acc = Rational::one();
    for (i, m) in counts {
        for k in 1..=m {
            acc *= Rational::from_integer((i as u64 * k).into());
        }
    }
    acc
}

impl Ring {
    fn fits(&self, k: &Key) -> bool {
        size(&k.0) <= self.p && size(&k.1) <= self.q && k.2 <= self.w && k.3 <= self.d
    }

    fn mul(&self, a: &Series, b: &Series) -> Series {
        let mut out = Series::new();
        for (ka, x) in a {
            for (kb, y) in b {
                let k = (merge(&ka.0, &kb.0), merge(&ka.1, &kb.1), ka.2 + kb.2, ka.3 + kb.3);
                if self.fits(&k) {
                    *out.entry(k).or_insert_with(Rational::zero) += x * y;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `exp(a)` for `a` without constant term.
    fn exp(&self, a: &Series) -> Series {
        let mut out: Series = BTreeMap::from([((vec![], vec![], 0, 0), Rational::one())]);
        let mut term = out.clone();
        for k in 1.. {
            let inv = Rational::one() / Rational::from_integer(k.into());
            term = self.mul(&term, a).into_iter().map(|(key, v)| (key, v * &inv)).collect();
            if term.is_empty() {
                break;
            }
            for (key, v) in &term {
                *out.entry(key.clone()).or_insert_with(Rational::zero) += v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// `p_m[a]`, with the sign `(−1)^{(m−1)d}` on degree-`d` parts.
    fn adams(&self, m: usize, a: &Series) -> Series {
        let mut out = Series::new();
        for ((mu, nu, w, d), v) in a {
            let k = (mu.iter().map(|x| x * m).collect(), nu.iter().map(|x| x * m).collect(), w * m, d * m);
            if self.fits(&k) {
                let s = if (m - 1) * d % 2 == 1 { -v.clone() } else { v.clone() };
                out.insert(k, s);
            }
        }
        out
    }
}

/// Frobenius characteristic in the leaf variables of an isotypic table.
fn frobenius(h: &BTreeMap<BlockKey, BTreeMap<Partition, usize>>) -> Series {
    let mut out = Series::new();
    for (k, mults) in h {
        for mu in partitions(k.n) {
            let chi: i64 = mults.iter().map(|(lam, m)| character(lam, &mu) * *m as i64).sum();
            if chi != 0 {
                *out.entry((mu.clone(), vec![], k.w, k.d)).or_insert_with(Rational::zero) += Rational::from_integer(chi.into()) / z(&mu);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Stable multiplicity, by `(w, d)`, attached to `V(alpha, beta)` with
/// `alpha ⊢ p` on the leaves and `beta ⊢ q` on the tree factors: the
/// dimension of the `S_q × S_p`-coinvariants of the `(q, p)` coPROP
/// component tensored with `S^alpha ⊗ S^beta`. For `q > 0` this component
/// also carries the contractions of smaller pairs of partitions.
pub fn repstab_multiplicities(
    h: &IsotypicHomology,
    alpha: &[usize],
    beta: &[usize],
    t: &Truncation,
) -> Result<BTreeMap<(usize, usize), usize>, StabilityError> {
    let (p, q) = (size(alpha), size(beta));
    let ht = &h.truncation;
    if p > ht.max_arity || t.max_weight > ht.max_weight || t.max_degree > ht.max_degree {
        return Err(StabilityError::Truncation(format!(
            "multiplicities for |alpha| = {p} up to (w={}, d={}) need homology beyond arity {}, weight {}, degree {}",
            t.max_weight, t.max_degree, ht.max_arity, ht.max_weight, ht.max_degree
        )));
    }
    let ring = Ring { p, q, w: t.max_weight, d: t.max_degree };
    let trees = frobenius(&h.operadic);
    let wheels = frobenius(&h.wheeled);
    if wheels.keys().any(|k| k.0.is_empty() && k.2 == 0 && k.3 == 0) {
        return Err(StabilityError::Truncation("symmetric powers of a class in weight and degree zero".into()));
    }
    let mut gen = Series::new();
    for m in 1..=(p + q + ring.w + ring.d).max(1) {
        let inv = Rational::one() / Rational::from_integer(m.into());
        let rooted: Series = ring.adams(m, &trees).into_iter().map(|((mu, _, w, d), v)| ((mu, vec![m], w, d), v)).collect();
        for (k, v) in ring.adams(m, &wheels).into_iter().chain(rooted.into_iter().filter(|(k, _)| ring.fits(k))) {
            *gen.entry(k).or_insert_with(Rational::zero) += v * &inv;
        }
    }
    gen.retain(|_, v| !v.is_zero());
    let series = ring.exp(&gen);
    let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for ((mu, nu, w, d), c) in series {
        if size(&mu) == p && size(&nu) == q {
            let x = character(alpha, &mu) * character(beta, &nu);
            *acc.entry((w, d)).or_insert_with(Rational::zero) += c * Rational::from_integer(x.into());
        }
    }
    let mut out = BTreeMap::new();
    for (k, v) in acc {
        if !v.is_integer() || v.is_negative() {
            return Err(StabilityError::Truncation(format!("multiplicity {v} at {k:?} is not a nonnegative integer")));
        }
        let v = v.to_integer().to_usize().unwrap_or(0);
        if v > 0 {
            out.insert(k, v);
        }
    }
    Ok(out)
}

/// All pairs `(alpha, beta)` with `|alpha| = p`, `|beta| = q`.
pub fn shapes(p: usize, q: usize) -> Vec<(Partition, Partition)> {
    partitions(p).into_iter().flat_map(|a| partitions(q).into_iter().map(move |b| (a.clone(), b))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityRow {
    pub w: usize,
    pub d: usize,
    pub multiplicity: usize,
}

/// Multiplicities of one mixed irreducible, by `(w, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub operad: String,
    pub wheeling: String,
    pub alpha: Partition,
    pub beta: Partition,
    pub blocks: Vec<MultiplicityRow>,
}

/// [`repstab_multiplicities`] for the wheeled bar construction of `op` with
/// the given wheeling, built up to the truncation implied by `alpha` and `t`.
pub fn multiplicity_report(
    op: &OperadTable,
    wheeling: crate::wheeledbar::Wheeling,
    alpha: &[usize],
    beta: &[usize],
    t: &Truncation,
) -> Result<MultiplicityReport, StabilityError> {
    use crate::wheeledbar::Wheeling;
    let bt = Truncation::new(size(alpha), t.max_weight, t.max_degree);
    let wb = match wheeling {
        Wheeling::Trivial => trivial_wheeling(op).wheeled_bar(&bt, true)?,
        Wheeling::Completion => wheeled_completion(op, &bt).map_err(BarError::from)?.wheeled_bar(&bt, true)?,
    };
    let iso = isotypic_bigraded(&wb, &bt)?;
    let m = repstab_multiplicities(&iso, alpha, beta, &bt)?;
    Ok(MultiplicityReport {
        operad: op.name().to_string(),
        wheeling: wheeling.as_str().to_string(),
        alpha: alpha.to_vec(),
        beta: beta.to_vec(),
        blocks: m.into_iter().map(|((w, d), multiplicity)| MultiplicityRow { w, d, multiplicity }).collect(),
    })
}
