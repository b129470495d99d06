//! Permutations of `0..n` stored as images: `p[i]` is where `i` goes.

pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `(a ∘ b)[i] = a[b[i]]`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

pub fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x)
}

/// +1 or -1.
pub fn sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Cycle lengths sorted in decreasing order.
pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p = identity(n);
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// Adjacent transposition `s_i` swapping `i` and `i + 1`.
pub fn transposition(n: usize, i: usize) -> Perm {
    let mut p = identity(n);
    p.swap(i, i + 1);
    p
}

/// Word `[i1, .., ik]` with `p = s_{i1} ∘ .. ∘ s_{ik}`.
pub fn reduced_word(p: &[usize]) -> Vec<usize> {
    // bubble sort p into the identity; each swap is a right multiplication
    let mut q = p.to_vec();
    let mut word = Vec::new();
    loop {
        let mut done = true;
        for i in 0..q.len().saturating_sub(1) {
            if q[i] > q[i + 1] {
                q.swap(i, i + 1);
                word.push(i);
                done = false;
            }
        }
        if done {
            break;
        }
    }
    // q = p ∘ s_{w1} ∘ .. ∘ s_{wk} = id, so p = s_{wk} ∘ .. ∘ s_{w1}
    word.reverse();
    word
}

/// Permutation sorting `keys` increasingly: `p[i]` is the rank of `keys[i]`.
/// Keys must be distinct.
pub fn ranks<T: Ord>(keys: &[T]) -> Perm {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    inverse(&idx)
}

/// Sign of the permutation that sorts the odd-flagged items, as used by the
/// Koszul rule when `order[i]` is the new position of item `i`.
pub fn koszul_sign(order: &[usize], odd: &[bool]) -> i32 {
    let mut s = 1;
    for i in 0..order.len() {
        if !odd[i] {
            continue;
        }
        for j in i + 1..order.len() {
            if odd[j] && order[i] > order[j] {
                s = -s;
            }
        }
    }
    s
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// All set partitions of `items` into nonempty blocks; blocks are listed by
/// their first element in the order of `items`.
pub fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut cur: Vec<Vec<usize>> = Vec::new();
    fn rec(items: &[usize], k: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == items.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(items[k]);
            rec(items, k + 1, cur, out);
            cur[b].pop();
        }
        cur.push(vec![items[k]]);
        rec(items, k + 1, cur, out);
        cur.pop();
    }
    rec(items, 0, &mut cur, &mut out);
    out
}

/// All `m`-element subsets of `0..k` in lexicographic order.
pub fn subsets(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in start..=k - (m - cur.len()) {
            cur.push(x);
            rec(x + 1, k, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m <= k {
        rec(0, k, m, &mut Vec::new(), &mut out);
    }
    out
}

/// All ways to write `items` as an ordered sequence of `k` blocks (possibly
/// empty when `allow_empty`), each block keeping the order of `items`.
pub fn ordered_decompositions(items: &[usize], k: usize, allow_empty: bool) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if k == 0 {
        if items.is_empty() {
            out.push(Vec::new());
        }
        return out;
    }
    let total = k.pow(items.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut blocks = vec![Vec::new(); k];
        for &x in items {
            blocks[c % k].push(x);
            c /= k;
        }
        if allow_empty || blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_word_reconstructs() {
        for p in all_perms(4) {
            let w = reduced_word(&p);
            let mut q = identity(4);
            for &i in &w {
                q = compose(&q, &transposition(4, i));
            }
            assert_eq!(q, p);
        }
    }

    #[test]
    fn set_partition_counts_are_bell_numbers() {
        let counts: Vec<usize> = (0..6).map(|n| set_partitions(&identity(n)).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn sign_is_multiplicative() {
        let ps = all_perms(4);
        for a in &ps {
            for b in &ps {
                assert_eq!(sign(&compose(a, b)), sign(a) * sign(b));
            }
        }
    }
}
