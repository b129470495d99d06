//! Straightening of Lie monomials into the left-normed basis
//! `[..[[x_{w0}, x_{w1}], x_{w2}], .., x_{wk}]` with the smallest letter first.

use std::collections::HashMap;

/// Binary bracket tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracket {
    Leaf(u8),
    Br(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn br(a: Bracket, b: Bracket) -> Bracket {
        Bracket::Br(Box::new(a), Box::new(b))
    }

    pub fn left_normed(word: &[u8]) -> Bracket {
        let mut t = Bracket::Leaf(word[0]);
        for &x in &word[1..] {
            t = Bracket::br(t, Bracket::Leaf(x));
        }
        t
    }

    pub fn leaves(&self) -> Vec<u8> {
        match self {
            Bracket::Leaf(x) => vec![*x],
            Bracket::Br(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    /// Replaces every leaf `x` by `f(x)`.
    pub fn substitute(&self, f: &impl Fn(u8) -> Bracket) -> Bracket {
        match self {
            Bracket::Leaf(x) => f(*x),
            Bracket::Br(a, b) => Bracket::br(a.substitute(f), b.substitute(f)),
        }
    }
}

type Comb = Vec<(Vec<u8>, i64)>;

fn collect(terms: impl IntoIterator<Item = (Vec<u8>, i64)>) -> Comb {
    let mut acc: HashMap<Vec<u8>, i64> = HashMap::new();
    for (w, c) in terms {
        *acc.entry(w).or_default() += c;
    }
    let mut v: Comb = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    v.sort();
    v
}

/// `[u, v]` for left-normed `u`, `v`, as left-normed words starting with `u`.
fn bracket_ln(u: &[u8], v: &[u8]) -> Comb {
    if v.len() == 1 {
        let mut w = u.to_vec();
        w.push(v[0]);
        return vec![(w, 1)];
    }
    // [u, [v', z]] = [[u, v'], z] - [[u, z], v']
    let (vp, z) = (&v[..v.len() - 1], v[v.len() - 1]);
    let mut out: Comb = bracket_ln(u, vp)
        .into_iter()
        .map(|(mut w, c)| {
            w.push(z);
            (w, c)
        })
        .collect();
    let mut uz = u.to_vec();
    uz.push(z);
    out.extend(bracket_ln(&uz, vp).into_iter().map(|(w, c)| (w, -c)));
    out
}

/// Rewrites one left-normed word so that its smallest letter comes first.
pub fn orient(w: &[u8]) -> Comb {
    let p = (0..w.len()).min_by_key(|&i| w[i]).unwrap();
    match p {
        0 => vec![(w.to_vec(), 1)],
        1 => {
            let mut v = w.to_vec();
            v.swap(0, 1);
            vec![(v, -1)]
        }
        _ => {
            // [P, m] = -[m, P]
            let rest = &w[p + 1..];
            bracket_ln(&[w[p]], &w[..p])
                .into_iter()
                .map(|(mut v, c)| {
                    v.extend_from_slice(rest);
                    (v, -c)
                })
                .collect()
        }
    }
}

fn expand(t: &Bracket) -> Comb {
    match t {
        Bracket::Leaf(x) => vec![(vec![*x], 1)],
        Bracket::Br(a, b) => {
            let la = expand(a);
            let lb = expand(b);
            let mut out = Vec::new();
            for (u, cu) in &la {
                for (v, cv) in &lb {
                    for (w, c) in bracket_ln(u, v) {
                        out.push((w, c * cu * cv));
                    }
                }
            }
            collect(out)
        }
    }
}

/// Coordinates of a bracket tree in the left-normed basis with the smallest
/// letter first.
pub fn straighten(t: &Bracket) -> Comb {
    collect(expand(t).into_iter().flat_map(|(w, c)| orient(&w).into_iter().map(move |(v, d)| (v, c * d))))
}
