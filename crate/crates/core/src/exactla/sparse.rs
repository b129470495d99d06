use super::field::{format_rational, parse_rational, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::hash::Hash;

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec(pub Vec<(usize, Rational)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: usize) -> Self {
        SparseVec(vec![(i, Rational::one())])
    }

    pub fn single(i: usize, c: Rational) -> Self {
        if c.is_zero() {
            SparseVec::new()
        } else {
            SparseVec(vec![(i, c)])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rational)> {
        self.0.iter()
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.0.binary_search_by_key(&i, |e| e.0) {
            Ok(k) => self.0[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn from_unsorted(entries: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (i, c) in entries {
            *acc.entry(i).or_insert_with(Rational::zero) += c;
        }
        let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by_key(|e| e.0);
        SparseVec(v)
    }

    pub fn scaled(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec(self.0.iter().map(|(i, x)| (*i, x * c)).collect())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() || b < other.0.len() {
            let ia = self.0.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.0.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.0[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, c * &other.0[b].1));
                b += 1;
            } else {
                let s = &self.0[a].1 + c * &other.0[b].1;
                if !s.is_zero() {
                    out.push((ia, s));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec(out)
    }

    pub fn dot_dense(&self, dense: &[Rational]) -> Rational {
        self.0.iter().map(|(i, c)| c * &dense[*i]).sum()
    }
}

/// Accumulates a linear combination of hashable terms.
#[derive(Clone, Debug)]
pub struct Lin<K: Eq + Hash> {
    pub terms: HashMap<K, Rational>,
}

impl<K: Eq + Hash + Clone + Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin { terms: HashMap::new() }
    }
}

impl<K: Eq + Hash + Clone + Ord> Lin<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
    }

    /// Nonzero terms sorted by key.
    pub fn into_sorted(self) -> Vec<(K, Rational)> {
        let mut v: Vec<_> = self.terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// Compressed sparse row matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub vals: Vec<Rational>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, row_ptr: vec![0; nrows + 1], col_idx: Vec::new(), vals: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, Rational::one())))
    }

    /// Duplicate entries are summed; zeros are dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, t: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nrows];
        for (r, c, v) in t {
            assert!(r < nrows && c < ncols, "entry ({r},{c}) outside {nrows}x{ncols}");
            rows[r].push((c, v));
        }
        Self::from_rows(ncols, rows.into_iter().map(SparseVec::from_unsorted).collect())
    }

    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        let nrows = rows.len();
        let mut row_ptr = Vec::with_capacity(nrows + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for r in rows {
            for (c, v) in r.0 {
                debug_assert!(c < ncols);
                col_idx.push(c);
                vals.push(v);
            }
            row_ptr.push(col_idx.len());
        }
        SparseMatrix { nrows, ncols, row_ptr, col_idx, vals }
    }

    /// Column `j` is `cols[j]`, given in row coordinates.
    pub fn from_columns(nrows: usize, cols: &[SparseVec]) -> Self {
        let ncols = cols.len();
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nrows];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter() {
                assert!(*i < nrows, "row {i} outside {nrows}");
                rows[*i].push((j, v.clone()));
            }
        }
        Self::from_rows(ncols, rows.into_iter().map(SparseVec).collect())
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &Rational)> {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        self.col_idx[a..b].iter().copied().zip(self.vals[a..b].iter())
    }

    pub fn row_vec(&self, i: usize) -> SparseVec {
        SparseVec(self.row(i).map(|(c, v)| (c, v.clone())).collect())
    }

    pub fn rows(&self) -> Vec<SparseVec> {
        (0..self.nrows).map(|i| self.row_vec(i)).collect()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let t = self.transpose();
        t.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        match self.col_idx[a..b].binary_search(&j) {
            Ok(k) => self.vals[a + k].clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.ncols];
        for i in 0..self.nrows {
            for (c, v) in self.row(i) {
                rows[c].push((i, v.clone()));
            }
        }
        Self::from_rows(self.nrows, rows.into_iter().map(SparseVec).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.vals.iter().all(|v| v.is_zero())
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let mut rows = Vec::with_capacity(self.nrows);
        for i in 0..self.nrows {
            let mut acc: HashMap<usize, Rational> = HashMap::new();
            for (k, a) in self.row(i) {
                for (j, b) in other.row(k) {
                    *acc.entry(j).or_insert_with(Rational::zero) += a * b;
                }
            }
            rows.push(SparseVec::from_unsorted(acc));
        }
        Self::from_rows(other.ncols, rows)
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(&Rational::one(), other)
    }

    pub fn add_scaled(&self, c: &Rational, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let rows = (0..self.nrows).map(|i| self.row_vec(i).add_scaled(c, &other.row_vec(i))).collect();
        Self::from_rows(self.ncols, rows)
    }

    pub fn scaled(&self, c: &Rational) -> SparseMatrix {
        let rows = (0..self.nrows).map(|i| self.row_vec(i).scaled(c)).collect();
        Self::from_rows(self.ncols, rows)
    }

    /// Matrix-vector product, with `v` in column coordinates.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut dense_v: HashMap<usize, &Rational> = HashMap::new();
        for (i, c) in v.iter() {
            dense_v.insert(*i, c);
        }
        let mut out = Vec::new();
        for i in 0..self.nrows {
            let mut s = Rational::zero();
            for (c, a) in self.row(i) {
                if let Some(x) = dense_v.get(&c) {
                    s += a * *x;
                }
            }
            if !s.is_zero() {
                out.push((i, s));
            }
        }
        SparseVec(out)
    }

    pub fn trace(&self) -> Rational {
        (0..self.nrows.min(self.ncols)).map(|i| self.get(i, i)).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.ncols]; self.nrows];
        for i in 0..self.nrows {
            for (c, v) in self.row(i) {
                d[i][c] = v.clone();
            }
        }
        d
    }

    pub fn from_dense(d: &[Vec<Rational>], ncols: usize) -> SparseMatrix {
        let rows = d.iter().map(|r| SparseVec(r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect())).collect();
        Self::from_rows(ncols, rows)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for SparseMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut entries = Vec::with_capacity(self.nnz());
        for i in 0..self.nrows {
            for (c, v) in self.row(i) {
                entries.push((i, c, format_rational(v)));
            }
        }
        MatrixRepr { nrows: self.nrows, ncols: self.ncols, entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparseMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        let mut t = Vec::with_capacity(r.entries.len());
        for (i, j, v) in r.entries {
            if i >= r.nrows || j >= r.ncols {
                return Err(serde::de::Error::custom("matrix entry out of range"));
            }
            let x = parse_rational(&v).ok_or_else(|| serde::de::Error::custom(format!("bad rational {v}")))?;
            t.push((i, j, x));
        }
        Ok(SparseMatrix::from_triplets(r.nrows, r.ncols, t))
    }
}

impl Serialize for SparseVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(usize, String)> = self.0.iter().map(|(i, c)| (*i, format_rational(c))).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparseVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<(usize, String)> = Vec::deserialize(d)?;
        let mut out = Vec::with_capacity(v.len());
        for (i, s) in v {
            let x = parse_rational(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s}")))?;
            out.push((i, x));
        }
        Ok(SparseVec::from_unsorted(out))
    }
}
