//! Sparse Gaussian elimination.
//!
//! Vectors are inserted one at a time and reduced against the pivots created
//! so far, in creation order, so a pivot row never contains the pivot column
//! of an older pivot. Short vectors are inserted first and the pivot column is
//! the entry whose column is least populated (a Markowitz-style choice).

use super::field::{Field, Fp, Overflow, Rational, SmallRat, PRIME_A, PRIME_B};
use super::sparse::{SparseMatrix, SparseVec};
use num_traits::Zero;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

type Row<F> = Vec<(usize, F)>;

const NONE: u32 = u32::MAX;

fn axpy<F: Field>(a: &Row<F>, c: &F, b: &Row<F>) -> Result<Row<F>, Overflow> {
    // a + c * b
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ia = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let jb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ia < jb {
            out.push(a[i].clone());
            i += 1;
        } else if jb < ia {
            out.push((jb, c.fmul(&b[j].1)?));
            j += 1;
        } else {
            let s = a[i].1.fadd(&c.fmul(&b[j].1)?)?;
            if !s.fis_zero() {
                out.push((ia, s));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

fn lookup<F: Field>(r: &Row<F>, col: usize) -> Option<&F> {
    r.binary_search_by_key(&col, |e| e.0).ok().map(|k| &r[k].1)
}

pub struct RowReducer<F: Field> {
    ncols: usize,
    rows: Vec<Row<F>>,
    pivot_col: Vec<usize>,
    col_pivot: Vec<u32>,
    col_weight: Option<Vec<u32>>,
}

impl<F: Field> RowReducer<F> {
    pub fn new(ncols: usize) -> Self {
        RowReducer { ncols, rows: Vec::new(), pivot_col: Vec::new(), col_pivot: vec![NONE; ncols], col_weight: None }
    }

    /// Column populations used to choose pivots.
    pub fn with_column_weights(mut self, w: Vec<u32>) -> Self {
        assert_eq!(w.len(), self.ncols);
        self.col_weight = Some(w);
        self
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_col
    }

    pub fn pivot_rows(&self) -> &[Row<F>] {
        &self.rows
    }

    /// Reduces `r` against all pivots; returns the remainder and the
    /// multiples `(pivot index, coefficient)` that were subtracted.
    pub fn reduce_tracking(&self, mut r: Row<F>) -> Result<(Row<F>, Vec<(usize, F)>), Overflow> {
        let mut heap = BinaryHeap::new();
        for (c, _) in &r {
            let k = self.col_pivot[*c];
            if k != NONE {
                heap.push(Reverse(k as usize));
            }
        }
        let mut used = Vec::new();
        let mut last = usize::MAX;
        while let Some(Reverse(k)) = heap.pop() {
            if k == last {
                continue;
            }
            last = k;
            let col = self.pivot_col[k];
            let Some(coef) = lookup(&r, col).cloned() else { continue };
            let p = &self.rows[k];
            r = axpy(&r, &coef.fneg()?, p)?;
            for (c, _) in p {
                if *c != col {
                    let k2 = self.col_pivot[*c];
                    if k2 != NONE {
                        heap.push(Reverse(k2 as usize));
                    }
                }
            }
            used.push((k, coef));
        }
        Ok((r, used))
    }

    pub fn reduce(&self, r: Row<F>) -> Result<Row<F>, Overflow> {
        Ok(self.reduce_tracking(r)?.0)
    }

    /// Adds `r` to the span. Returns whether it was independent.
    pub fn insert(&mut self, r: Row<F>) -> Result<bool, Overflow> {
        let r = self.reduce(r)?;
        if r.is_empty() {
            return Ok(false);
        }
        let pos = match &self.col_weight {
            Some(w) => (0..r.len()).min_by_key(|&i| (w[r[i].0], r[i].0)).unwrap(),
            None => 0,
        };
        let col = r[pos].0;
        let inv = r[pos].1.finv()?;
        let mut row = Vec::with_capacity(r.len());
        for (c, v) in r {
            row.push((c, v.fmul(&inv)?));
        }
        self.col_pivot[col] = self.rows.len() as u32;
        self.pivot_col.push(col);
        self.rows.push(row);
        Ok(true)
    }

    /// Back-substitutes so that every pivot row vanishes on the other pivot
    /// columns.
    pub fn make_reduced(&mut self) -> Result<(), Overflow> {
        for k in (0..self.rows.len()).rev() {
            let col = self.pivot_col[k];
            let mut r = std::mem::take(&mut self.rows[k]);
            loop {
                let next = r.iter().find(|(c, _)| *c != col && self.col_pivot[*c] != NONE).map(|(c, v)| (*c, v.clone()));
                let Some((c, v)) = next else { break };
                let k2 = self.col_pivot[c] as usize;
                r = axpy(&r, &v.fneg()?, &self.rows[k2])?;
            }
            self.rows[k] = r;
        }
        Ok(())
    }
}

fn convert<F: Field>(v: &SparseVec) -> Result<Row<F>, Overflow> {
    v.iter().map(|(i, c)| Ok((*i, F::from_rational(c)?))).collect()
}

fn column_weights(vecs: &[SparseVec], ncols: usize) -> Vec<u32> {
    let mut w = vec![0u32; ncols];
    for v in vecs {
        for (i, _) in v.iter() {
            w[*i] += 1;
        }
    }
    w
}

fn rank_generic<F: Field>(vecs: &[SparseVec], ncols: usize, limit: usize) -> Result<usize, Overflow> {
    let mut order: Vec<usize> = (0..vecs.len()).collect();
    order.sort_by_key(|&i| (vecs[i].len(), i));
    let mut red = RowReducer::<F>::new(ncols).with_column_weights(column_weights(vecs, ncols));
    for i in order {
        if red.rank() >= limit {
            break;
        }
        if vecs[i].is_empty() {
            continue;
        }
        red.insert(convert(&vecs[i])?)?;
    }
    Ok(red.rank())
}

/// Exact rank of the span of `vecs`, each with indices below `ncols`.
pub fn rank_of_vectors(vecs: &[SparseVec], ncols: usize) -> usize {
    rank_of_vectors_bounded(vecs, ncols, usize::MAX)
}

/// As [`rank_of_vectors`], stopping early once the rank reaches `bound`,
/// which must be a known upper bound.
pub fn rank_of_vectors_bounded(vecs: &[SparseVec], ncols: usize, bound: usize) -> usize {
    let limit = ncols.min(vecs.len()).min(bound);
    match rank_generic::<SmallRat>(vecs, ncols, limit) {
        Ok(r) => r,
        Err(Overflow) => rank_generic::<Rational>(vecs, ncols, limit).expect("exact arithmetic cannot overflow"),
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    if m.nrows == 0 || m.ncols == 0 || m.nnz() == 0 {
        return 0;
    }
    let r = if m.nrows <= m.ncols { rank_of_vectors(&m.rows(), m.ncols) } else { rank_of_vectors(&m.columns(), m.nrows) };
    #[cfg(debug_assertions)]
    if m.ncols <= 60 && m.nrows <= 60 {
        debug_assert_eq!(r, rank_dense(m), "sparse and dense ranks disagree");
    }
    r
}

/// Rank modulo the prime `P`; never exceeds the rational rank.
pub fn modular_rank<const P: u64>(m: &SparseMatrix) -> Option<usize> {
    let rows = m.rows();
    rank_generic::<Fp<P>>(&rows, m.ncols, m.nrows.min(m.ncols)).ok()
}

/// Rank modulo two primes above 2^30, returned only when they agree.
pub fn certified_modular_rank(m: &SparseMatrix) -> Option<usize> {
    let a = modular_rank::<PRIME_A>(m)?;
    let b = modular_rank::<PRIME_B>(m)?;
    (a == b).then_some(a)
}

/// Dense Gaussian elimination; used to cross-check small matrices.
pub fn rank_dense(m: &SparseMatrix) -> usize {
    let mut a = m.to_dense();
    let (nr, nc) = (m.nrows, m.ncols);
    let mut r = 0;
    for c in 0..nc {
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for j in c..nc {
            a[r][j] = &a[r][j] * &inv;
        }
        for i in 0..nr {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..nc {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == nr {
            break;
        }
    }
    r
}

/// Reduced row echelon form of a span.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ncols: usize,
    /// Pivot rows, each normalized to 1 at its pivot and 0 at other pivots.
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
    /// Position of each column among the free (non-pivot) columns.
    pub free_index: Vec<Option<usize>>,
    pub free: Vec<usize>,
}

fn rref_generic<F: Field>(vecs: &[SparseVec], ncols: usize, to_q: impl Fn(&F) -> Rational) -> Result<Rref, Overflow> {
    let mut order: Vec<usize> = (0..vecs.len()).collect();
    order.sort_by_key(|&i| (vecs[i].len(), i));
    let mut red = RowReducer::<F>::new(ncols).with_column_weights(column_weights(vecs, ncols));
    for i in order {
        if red.rank() >= ncols {
            break;
        }
        if !vecs[i].is_empty() {
            red.insert(convert(&vecs[i])?)?;
        }
    }
    red.make_reduced()?;
    let mut pairs: Vec<(usize, SparseVec)> =
        red.pivot_col.iter().zip(red.rows.iter()).map(|(c, r)| (*c, SparseVec(r.iter().map(|(i, v)| (*i, to_q(v))).collect()))).collect();
    pairs.sort_by_key(|p| p.0);
    let pivots: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let rows = pairs.into_iter().map(|p| p.1).collect();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let mut free_index = vec![None; ncols];
    for (k, &c) in free.iter().enumerate() {
        free_index[c] = Some(k);
    }
    Ok(Rref { ncols, rows, pivots, free_index, free })
}

impl Rref {
    pub fn of_vectors(vecs: &[SparseVec], ncols: usize) -> Rref {
        match rref_generic::<SmallRat>(vecs, ncols, |x| x.to_rational()) {
            Ok(r) => r,
            Err(Overflow) => rref_generic::<Rational>(vecs, ncols, |x| x.clone()).expect("exact arithmetic cannot overflow"),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    /// `v` minus its component along the span; supported on free columns.
    pub fn remainder(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (k, &p) in self.pivots.iter().enumerate() {
            let c = v.get(p);
            if !c.is_zero() {
                out = out.add_scaled(&(-c), &self.rows[k]);
            }
        }
        out
    }

    /// Coordinates of the class of `v` in the quotient by the span, indexed
    /// by free columns.
    pub fn quotient_coords(&self, v: &SparseVec) -> SparseVec {
        let r = self.remainder(v);
        SparseVec(r.0.into_iter().map(|(i, c)| (self.free_index[i].expect("remainder on pivot column"), c)).collect())
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.remainder(v).is_zero()
    }

    /// Basis of the solutions of `row . x = 0` for all rows of the span.
    /// The basis vector for free column `f` is 1 at `f` and 0 at the other
    /// free columns.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.ncols];
        for (k, r) in self.rows.iter().enumerate() {
            for (c, v) in r.iter() {
                if *c != self.pivots[k] {
                    cols[*c].push((self.pivots[k], -v.clone()));
                }
            }
        }
        self.free
            .iter()
            .map(|&f| {
                let mut e = std::mem::take(&mut cols[f]);
                e.push((f, Rational::from_integer(1.into())));
                e.sort_by_key(|x| x.0);
                SparseVec(e)
            })
            .collect()
    }
}

/// Kernel of `m`, as vectors in column coordinates.
pub fn nullspace(m: &SparseMatrix) -> Vec<SparseVec> {
    Rref::of_vectors(&m.rows(), m.ncols).nullspace()
}

/// A subspace given by a basis in the form produced by [`Rref::nullspace`],
/// with coordinates read off at the free columns.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub ambient: usize,
    pub basis: Vec<SparseVec>,
    pub coord_cols: Vec<usize>,
}

impl KernelBasis {
    pub fn of(m_rows: &[SparseVec], ncols: usize) -> KernelBasis {
        let r = Rref::of_vectors(m_rows, ncols);
        let basis = r.nullspace();
        KernelBasis { ambient: ncols, basis, coord_cols: r.free.clone() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v`, which must lie in the subspace (checked).
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut out = Vec::new();
        let mut recon = SparseVec::new();
        for (k, &c) in self.coord_cols.iter().enumerate() {
            let x = v.get(c);
            if !x.is_zero() {
                recon = recon.add_scaled(&x, &self.basis[k]);
                out.push((k, x));
            }
        }
        (recon == *v).then_some(SparseVec(out))
    }
}
