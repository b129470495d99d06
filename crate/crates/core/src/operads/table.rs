use super::builtins::{Alg1, Ass, Com, Lie, PreLie};
use super::{Operad, OperadError, OperadSpec};
use crate::exactla::{parse_rational, Rational, SparseVec};
use crate::perm::{all_perms, compose as pcompose, identity, Perm};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightRule {
    /// Weight of an `n`-ary operation is `n - 1`.
    ArityMinusOne,
    /// For arity-one operads: the weights of the basis of the augmentation ideal.
    IdealWeights(Vec<usize>),
}

type Tensor = Arc<Vec<SparseVec>>;

#[derive(Serialize, Deserialize)]
struct CachedTensor {
    n: usize,
    i: usize,
    m: usize,
    dims: (usize, usize, usize),
    entries: Vec<SparseVec>,
}

/// An operad together with memoized composition and relabeling tables.
pub struct OperadTable {
    op: Box<dyn Operad>,
    pub spec: OperadSpec,
    pub hash: String,
    cache_dir: Option<PathBuf>,
    comp: RwLock<HashMap<(usize, usize, usize), Tensor>>,
    relab: RwLock<HashMap<(usize, Perm), Tensor>>,
}

impl std::fmt::Debug for OperadTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OperadTable").field("spec", &self.spec).field("hash", &self.hash).finish()
    }
}

fn spec_hash(spec: &OperadSpec) -> String {
    let mut canon = spec.clone();
    canon.max_arity = 0;
    let bytes = serde_json::to_vec(&canon).expect("spec serializes");
    hex::encode(&Sha256::digest(&bytes)[..8])
}

fn parse_alg1(spec: &OperadSpec) -> Result<Alg1, OperadError> {
    let c = spec.arity1_structure_constants.as_ref().ok_or_else(|| OperadError::InvalidConstants("alg1 needs arity1_structure_constants".into()))?;
    let r = c.len();
    let mut consts = vec![vec![SparseVec::new(); r]; r];
    for i in 0..r {
        if c[i].len() != r {
            return Err(OperadError::InvalidConstants(format!("row {i} has {} entries, expected {r}", c[i].len())));
        }
        for j in 0..r {
            if c[i][j].len() != r {
                return Err(OperadError::InvalidConstants(format!("entry ({i},{j}) has length {}, expected {r}", c[i][j].len())));
            }
            let mut v = Vec::new();
            for (k, s) in c[i][j].iter().enumerate() {
                let x = parse_rational(s).ok_or_else(|| OperadError::InvalidConstants(format!("bad rational {s:?}")))?;
                v.push((k, x));
            }
            consts[i][j] = SparseVec::from_unsorted(v);
        }
    }
    let weights = match &spec.weight_rule {
        Some(WeightRule::IdealWeights(w)) if w.len() == r => w.clone(),
        Some(WeightRule::IdealWeights(w)) => return Err(OperadError::InvalidWeights(format!("{} weights for an ideal of rank {r}", w.len()))),
        _ => return Err(OperadError::InvalidWeights("alg1 needs ideal_weights".into())),
    };
    let a = Alg1::new(consts, weights);
    for i in 0..r {
        for j in 0..r {
            for (k, _) in a.consts[i][j].iter() {
                if a.weights[*k] != a.weights[i] + a.weights[j] {
                    return Err(OperadError::InvalidWeights(format!("e{} e{} has a term e{} of the wrong weight", i + 1, j + 1, k + 1)));
                }
            }
            for k in 0..r {
                if !a.associator(i, j, k).is_zero() {
                    return Err(OperadError::InvalidConstants(format!("not associative on (e{}, e{}, e{})", i + 1, j + 1, k + 1)));
                }
            }
        }
    }
    Ok(a)
}

/// Builds the operad described by a spec, validating it.
pub fn build_operad(spec: &OperadSpec) -> Result<Box<dyn Operad>, OperadError> {
    if spec.name != "alg1" {
        if spec.arity1_structure_constants.is_some() {
            return Err(OperadError::InvalidConstants(format!("{} takes no structure constants", spec.name)));
        }
        if !matches!(spec.weight_rule, None | Some(WeightRule::ArityMinusOne)) {
            return Err(OperadError::InvalidWeights(format!("{} uses the arity weight rule", spec.name)));
        }
    }
    Ok(match spec.name.as_str() {
        "com" => Box::new(Com),
        "ass" => Box::new(Ass::default()),
        "lie" => Box::new(Lie::default()),
        "prelie" => Box::new(PreLie::default()),
        "alg1" => Box::new(parse_alg1(spec)?),
        other => return Err(OperadError::Unknown(other.to_string())),
    })
}

impl OperadTable {
    pub fn new(spec: OperadSpec) -> Result<Self, OperadError> {
        let op = build_operad(&spec)?;
        Ok(OperadTable { op, hash: spec_hash(&spec), spec, cache_dir: None, comp: RwLock::new(HashMap::new()), relab: RwLock::new(HashMap::new()) })
    }

    pub fn builtin(name: &str, max_arity: usize) -> Result<Self, OperadError> {
        Self::new(OperadSpec::builtin(name, max_arity))
    }

    /// Composition tensors are read from and written to
    /// `dir/<hash>/comp_<n>_<i>_<m>.json`.
    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn name(&self) -> &str {
        self.op.name()
    }

    pub fn operad(&self) -> &dyn Operad {
        self.op.as_ref()
    }

    pub fn max_arity(&self) -> usize {
        self.spec.max_arity
    }

    pub fn require_arity(&self, needed: usize) -> Result<(), OperadError> {
        if needed > self.spec.max_arity && self.spec.name != "alg1" {
            Err(OperadError::Truncation { needed, max: self.spec.max_arity })
        } else {
            Ok(())
        }
    }

    /// True for operads with nothing above arity one.
    pub fn is_arity_one(&self) -> bool {
        self.spec.name == "alg1"
    }

    pub fn dim(&self, n: usize) -> usize {
        self.op.dim(n)
    }

    pub fn unit(&self) -> usize {
        self.op.unit()
    }

    pub fn in_ideal(&self, n: usize, a: usize) -> bool {
        self.op.in_ideal(n, a)
    }

    /// Basis of the augmentation ideal in arity `n`.
    pub fn ideal_basis(&self, n: usize) -> Vec<usize> {
        (0..self.dim(n)).filter(|&a| self.in_ideal(n, a)).collect()
    }

    pub fn weight(&self, n: usize, a: usize) -> usize {
        self.op.weight(n, a)
    }

    pub fn tag(&self, n: usize, a: usize) -> String {
        self.op.basis_tag(n, a)
    }

    fn cache_path(&self, n: usize, i: usize, m: usize) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| d.join(&self.hash).join(format!("comp_{n}_{i}_{m}.json")))
    }

    fn load(&self, path: &Path, n: usize, i: usize, m: usize) -> Option<Vec<SparseVec>> {
        let bytes = std::fs::read(path).ok()?;
        let t: CachedTensor = serde_json::from_slice(&bytes).ok()?;
        let dims = (self.dim(n), self.dim(m), self.dim(n + m - 1));
        (t.n == n && t.i == i && t.m == m && t.dims == dims && t.entries.len() == dims.0 * dims.1).then_some(t.entries)
    }

    fn store(&self, path: &Path, n: usize, i: usize, m: usize, entries: &[SparseVec]) -> Result<(), OperadError> {
        let dir = path.parent().expect("cache path has a parent");
        std::fs::create_dir_all(dir).map_err(|e| OperadError::Cache(e.to_string()))?;
        let t = CachedTensor { n, i, m, dims: (self.dim(n), self.dim(m), self.dim(n + m - 1)), entries: entries.to_vec() };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| OperadError::Cache(e.to_string()))?;
        serde_json::to_writer(&mut tmp, &t).map_err(|e| OperadError::Cache(e.to_string()))?;
        tmp.flush().map_err(|e| OperadError::Cache(e.to_string()))?;
        tmp.persist(path).map_err(|e| OperadError::Cache(e.to_string()))?;
        Ok(())
    }

    /// All products `a ∘_i b` for `a` in arity `n` and `b` in arity `m`,
    /// indexed by `a * dim(m) + b`.
    pub fn compose_tensor(&self, n: usize, i: usize, m: usize) -> Tensor {
        if let Some(t) = self.comp.read().unwrap().get(&(n, i, m)) {
            return t.clone();
        }
        let path = self.cache_path(n, i, m);
        let entries = match path.as_deref().and_then(|p| self.load(p, n, i, m)) {
            Some(e) => e,
            None => {
                let (da, db) = (self.dim(n), self.dim(m));
                let mut e = Vec::with_capacity(da * db);
                for a in 0..da {
                    for b in 0..db {
                        e.push(self.op.compose(n, i, a, m, b));
                    }
                }
                if let Some(p) = &path {
                    // the cache is an optimization; a failed write is not fatal
                    let _ = self.store(p, n, i, m, &e);
                }
                e
            }
        };
        let t = Arc::new(entries);
        self.comp.write().unwrap().entry((n, i, m)).or_insert(t).clone()
    }

    pub fn compose(&self, n: usize, i: usize, a: usize, m: usize, b: usize) -> SparseVec {
        assert!(i < n, "slot {i} out of range for arity {n}");
        self.compose_tensor(n, i, m)[a * self.dim(m) + b].clone()
    }

    /// Bilinear extension of `∘_i`.
    pub fn compose_vec(&self, n: usize, i: usize, x: &SparseVec, m: usize, y: &SparseVec) -> SparseVec {
        let t = self.compose_tensor(n, i, m);
        let dm = self.dim(m);
        let mut acc = SparseVec::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                acc = acc.add_scaled(&(ca * cb), &t[a * dm + b]);
            }
        }
        acc
    }

    fn relabel_table(&self, n: usize, sigma: &[usize]) -> Tensor {
        let key = (n, sigma.to_vec());
        if let Some(t) = self.relab.read().unwrap().get(&key) {
            return t.clone();
        }
        let t = Arc::new((0..self.dim(n)).map(|a| self.op.relabel(n, sigma, a)).collect::<Vec<_>>());
        self.relab.write().unwrap().entry(key).or_insert(t).clone()
    }

    pub fn relabel(&self, n: usize, sigma: &[usize], a: usize) -> SparseVec {
        if crate::perm::is_identity(sigma) {
            return SparseVec::unit(a);
        }
        self.relabel_table(n, sigma)[a].clone()
    }

    pub fn relabel_vec(&self, n: usize, sigma: &[usize], x: &SparseVec) -> SparseVec {
        if crate::perm::is_identity(sigma) {
            return x.clone();
        }
        let t = self.relabel_table(n, sigma);
        let mut acc = SparseVec::new();
        for (a, c) in x.iter() {
            acc = acc.add_scaled(c, &t[*a]);
        }
        acc
    }

    /// Checks unit, consecutive, parallel and equivariance axioms, and
    /// additivity of weights, on all basis elements with total arity at most
    /// `max_n`.
    pub fn check_axioms(&self, max_n: usize) -> Result<(), OperadError> {
        let fail = |axiom: &'static str, at: String| Err(OperadError::Axiom { axiom, at });
        let one = self.unit();
        let arities: Vec<usize> = (0..=max_n).filter(|&n| self.dim(n) > 0).collect();
        for &n in &arities {
            for a in 0..self.dim(n) {
                for i in 0..n {
                    if self.compose(n, i, a, 1, one) != SparseVec::unit(a) {
                        return fail("right unit", format!("({n},{a},{i})"));
                    }
                }
                if n >= 1 && self.compose(1, 0, one, n, a) != SparseVec::unit(a) {
                    return fail("left unit", format!("({n},{a})"));
                }
            }
        }
        for &n in &arities {
            for &m in &arities {
                if n + m - 1 > max_n || n == 0 {
                    continue;
                }
                for i in 0..n {
                    for a in 0..self.dim(n) {
                        for b in 0..self.dim(m) {
                            let ab = self.compose(n, i, a, m, b);
                            let w = self.weight(n, a) + self.weight(m, b);
                            if ab.iter().any(|(x, _)| self.weight(n + m - 1, *x) != w) {
                                return fail("weight additivity", format!("({n},{i},{a}) ∘ ({m},{b})"));
                            }
                        }
                    }
                }
                for &l in &arities {
                    if n + m + l - 2 > max_n {
                        continue;
                    }
                    self.check_triple(n, m, l)?;
                }
            }
        }
        for &n in &arities {
            let perms = all_perms(n);
            for a in 0..self.dim(n) {
                for s in &perms {
                    for t in (0..n.saturating_sub(1)).map(|k| crate::perm::transposition(n, k)) {
                        let lhs = self.relabel_vec(n, s, &self.relabel(n, &t, a));
                        if lhs != self.relabel(n, &pcompose(s, &t), a) {
                            return fail("relabeling is an action", format!("({n},{a})"));
                        }
                    }
                }
            }
            for &m in &arities {
                if n + m - 1 > max_n || n == 0 || m == 0 {
                    continue;
                }
                for s in &perms {
                    for i in 0..n {
                        for a in 0..self.dim(n) {
                            for b in 0..self.dim(m) {
                                let lhs = self.compose_vec(n, s[i], &self.relabel(n, s, a), m, &SparseVec::unit(b));
                                let rhs = self.relabel_vec(n + m - 1, &block_perm(s, i, m), &self.compose(n, i, a, m, b));
                                if lhs != rhs {
                                    return fail("equivariance", format!("({n},{i},{a}) ∘ ({m},{b}) under {s:?}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_triple(&self, n: usize, m: usize, l: usize) -> Result<(), OperadError> {
        for a in 0..self.dim(n) {
            for b in 0..self.dim(m) {
                for c in 0..self.dim(l) {
                    let (ea, eb, ec) = (SparseVec::unit(a), SparseVec::unit(b), SparseVec::unit(c));
                    for i in 0..n {
                        // consecutive: (a ∘_i b) ∘_{i+j} c = a ∘_i (b ∘_j c)
                        let ab = self.compose_vec(n, i, &ea, m, &eb);
                        for j in 0..m {
                            let lhs = self.compose_vec(n + m - 1, i + j, &ab, l, &ec);
                            let rhs = self.compose_vec(n, i, &ea, m + l - 1, &self.compose_vec(m, j, &eb, l, &ec));
                            if lhs != rhs {
                                return Err(OperadError::Axiom { axiom: "consecutive", at: format!("({n},{a})∘_{i}({m},{b})∘_{j}({l},{c})") });
                            }
                        }
                        // parallel: (a ∘_i b) ∘_{k+m-1} c = (a ∘_k c) ∘_i b for i < k
                        for k in i + 1..n {
                            let lhs = self.compose_vec(n + m - 1, k + m - 1, &ab, l, &ec);
                            let ac = self.compose_vec(n, k, &ea, l, &ec);
                            let rhs = self.compose_vec(n + l - 1, i, &ac, m, &eb);
                            if lhs != rhs {
                                return Err(OperadError::Axiom { axiom: "parallel", at: format!("({n},{a}) slots {i},{k} with ({m},{b}),({l},{c})") });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The augmentation: 1 on the unit, 0 on the ideal.
    pub fn augmentation(&self, n: usize, x: &SparseVec) -> Rational {
        if n != 1 {
            return Rational::zero();
        }
        x.get(self.unit())
    }

    pub fn unit_vec(&self) -> SparseVec {
        SparseVec::single(self.unit(), Rational::one())
    }
}

/// The permutation of `n + m - 1` inputs induced by relabeling the outer
/// operation of `a ∘_i b` by `s` and keeping the block of `b` intact.
pub fn block_perm(s: &[usize], i: usize, m: usize) -> Perm {
    let n = s.len();
    let new_pos = |x: usize| if x < s[i] { x } else { x + m - 1 };
    let mut p = identity(n + m - 1);
    for j in 0..n {
        if j == i {
            continue;
        }
        let old = if j < i { j } else { j + m - 1 };
        p[old] = new_pos(s[j]);
    }
    for k in 0..m {
        p[i + k] = s[i] + k;
    }
    p
}
