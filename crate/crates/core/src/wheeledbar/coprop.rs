//! Dimensions of the coPROP completion `(W_o^{⊗q} ⊗ S(W_w))(p)` of the
//! homology of a wheeled bar construction.

use super::{BarError, BigradedHomology};
use crate::perm::binomial;
use crate::Truncation;
use std::collections::BTreeMap;

/// Dimensions by `(weight, degree)`.
pub type Poly = BTreeMap<(usize, usize), usize>;

struct Bounds {
    w: usize,
    d: usize,
}

impl Bounds {
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (&(w1, d1), x) in a {
            for (&(w2, d2), y) in b {
                if w1 + w2 <= self.w && d1 + d2 <= self.d {
                    *out.entry((w1 + w2, d1 + d2)).or_default() += x * y;
                }
            }
        }
        out
    }

    fn add_into(out: &mut Poly, a: &Poly, scale: usize) {
        for (k, x) in a {
            *out.entry(*k).or_default() += x * scale;
        }
    }

    /// Cauchy product of species given by dimension series.
    fn cauchy(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        (0..a.len())
            .map(|n| {
                let mut out = Poly::new();
                for k in 0..=n {
                    Self::add_into(&mut out, &self.mul(&a[k], &b[n - k]), binomial(n, k));
                }
                out
            })
            .collect()
    }

    /// `S(W)` for a species without arity zero.
    fn exp(&self, w: &[Poly]) -> Vec<Poly> {
        let mut e: Vec<Poly> = vec![unit()];
        for n in 1..w.len() {
            let mut out = Poly::new();
            for k in 1..=n {
                Self::add_into(&mut out, &self.mul(&w[k], &e[n - k]), binomial(n - 1, k - 1));
            }
            e.push(out);
        }
        e
    }

    /// Graded-symmetric algebra on a graded vector space.
    fn graded_sym(&self, gens: &Poly) -> Result<Poly, BarError> {
        let mut acc = unit();
        for (&(w, d), &m) in gens {
            if m == 0 {
                continue;
            }
            if (w, d) == (0, 0) {
                return Err(BarError::Truncation("symmetric powers of a class in weight and degree zero".into()));
            }
            let mut f = Poly::new();
            let mut j = 0;
            while j * w <= self.w && j * d <= self.d {
                let c = if d % 2 == 1 { binomial(m, j) } else { binomial(m + j - 1, j) };
                if c > 0 {
                    f.insert((j * w, j * d), c);
                }
                if d % 2 == 1 && j >= m {
                    break;
                }
                j += 1;
            }
            acc = self.mul(&acc, &f);
        }
        Ok(acc)
    }
}

fn unit() -> Poly {
    Poly::from([((0, 0), 1)])
}

fn series(h: &BTreeMap<crate::exactla::BlockKey, usize>, len: usize) -> Vec<Poly> {
    let mut s = vec![Poly::new(); len];
    for (k, &x) in h {
        if k.n < len && x > 0 {
            *s[k.n].entry((k.w, k.d)).or_default() += x;
        }
    }
    s
}

/// Dimensions by `(w, d)` of the component with `q` tree factors on `p`
/// leaves, for `w ≤ t.max_weight` and `d ≤ t.max_degree`.
pub fn coprop_completion(h: &BigradedHomology, p: usize, q: usize, t: &Truncation) -> Result<Poly, BarError> {
    if p > h.max_arity || t.max_degree > h.max_degree || t.max_weight > h.max_weight {
        return Err(BarError::Truncation(format!(
            "component (p={p}, q={q}) up to (w={}, d={}) needs homology beyond arity {}, weight {}, degree {}",
            t.max_weight, t.max_degree, h.max_arity, h.max_weight, h.max_degree
        )));
    }
    let b = Bounds { w: t.max_weight, d: t.max_degree };
    let len = p + 1;
    let op = series(&h.operadic, len);
    let wh = series(&h.wheeled, len);
    let mut tensor: Vec<Poly> = (0..len).map(|n| if n == 0 { unit() } else { Poly::new() }).collect();
    for _ in 0..q {
        tensor = b.cauchy(&tensor, &op);
    }
    let mut positive = wh.clone();
    positive[0] = Poly::new();
    let sym = b.cauchy(&tensor, &b.exp(&positive));
    let zero = b.graded_sym(&wh[0])?;
    Ok(b.mul(&sym[p], &zero))
}
