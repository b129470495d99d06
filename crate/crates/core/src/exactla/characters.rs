//! Irreducible characters of symmetric groups via the Murnaghan–Nakayama rule.

use std::collections::HashMap;
use std::sync::OnceLock;

pub type Partition = Vec<usize>;

pub const MAX_CHARACTER_N: usize = 8;

/// Partitions of `n` in reverse lexicographic order, starting with `(n)`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Removes zero parts.
pub fn normalize(p: &[usize]) -> Partition {
    p.iter().copied().filter(|&x| x > 0).collect()
}

/// Murnaghan–Nakayama: value of the character `lambda` on cycle type `mu`.
pub fn character(lambda: &[usize], mu: &[usize]) -> i64 {
    let mut memo = HashMap::new();
    let lam = normalize(lambda);
    let mut rho = normalize(mu);
    rho.sort_unstable_by(|a, b| b.cmp(a));
    mn(&lam, &rho, &mut memo)
}

fn mn(lam: &[usize], rho: &[usize], memo: &mut HashMap<(Partition, Partition), i64>) -> i64 {
    let total: usize = lam.iter().sum();
    if total == 0 {
        return 1;
    }
    let key = (lam.to_vec(), rho.to_vec());
    if let Some(v) = memo.get(&key) {
        return *v;
    }
    let k = rho[0];
    let rest = &rho[1..];
    // beta numbers: lam_i + (len - 1 - i), distinct and decreasing
    let len = lam.len();
    let beta: Vec<usize> = (0..len).map(|i| lam[i] + (len - 1 - i)).collect();
    let mut acc = 0i64;
    for i in 0..len {
        if beta[i] < k {
            continue;
        }
        let nb = beta[i] - k;
        if beta.contains(&nb) {
            continue;
        }
        // sign: number of beta numbers strictly between nb and beta[i]
        let between = beta.iter().filter(|&&b| b > nb && b < beta[i]).count();
        let mut newb = beta.clone();
        newb[i] = nb;
        newb.sort_unstable_by(|a, b| b.cmp(a));
        let l = newb.len();
        let newlam: Partition = normalize(&(0..l).map(|j| newb[j] - (l - 1 - j)).collect::<Vec<_>>());
        let s = if between % 2 == 0 { 1 } else { -1 };
        acc += s * mn(&newlam, rest, memo);
    }
    memo.insert(key, acc);
    acc
}

/// Number of standard Young tableaux, by the hook length formula.
pub fn dim_irrep(lambda: &[usize]) -> u64 {
    let lam = normalize(lambda);
    let n: usize = lam.iter().sum();
    let conj = conjugate(&lam);
    let mut num: u128 = (1..=n as u128).product();
    let mut den: u128 = 1;
    for (i, &row) in lam.iter().enumerate() {
        for j in 0..row {
            let hook = (row - j) + (conj[j] - i) - 1;
            den *= hook as u128;
        }
    }
    num /= den;
    num as u64
}

pub fn conjugate(lam: &[usize]) -> Partition {
    let lam = normalize(lam);
    if lam.is_empty() {
        return Vec::new();
    }
    (0..lam[0]).map(|j| lam.iter().filter(|&&x| x > j).count()).collect()
}

/// Size of the conjugacy class with cycle type `mu` in `S_n`.
pub fn class_size(mu: &[usize]) -> u64 {
    let mu = normalize(mu);
    let n: usize = mu.iter().sum();
    let mut z: u128 = 1;
    let mut counts: HashMap<usize, u32> = HashMap::new();
    for &m in &mu {
        z *= m as u128;
        *counts.entry(m).or_default() += 1;
    }
    for (_, c) in counts {
        z *= (1..=c as u128).product::<u128>();
    }
    let fact: u128 = (1..=n as u128).product();
    (fact / z) as u64
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub n: usize,
    /// Irreducibles, indexed like `partitions(n)`.
    pub irreps: Vec<Partition>,
    /// Conjugacy classes by cycle type, in the same order.
    pub classes: Vec<Partition>,
    pub class_sizes: Vec<u64>,
    /// `values[i][j]` is the character of `irreps[i]` on `classes[j]`.
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn class_index(&self, cycle_type: &[usize]) -> usize {
        let mut c = normalize(cycle_type);
        c.sort_unstable_by(|a, b| b.cmp(a));
        self.classes.iter().position(|x| *x == c).expect("cycle type of the right size")
    }

    pub fn irrep_index(&self, lambda: &[usize]) -> Option<usize> {
        let l = normalize(lambda);
        self.irreps.iter().position(|x| *x == l)
    }

    pub fn dim(&self, i: usize) -> u64 {
        self.values[i][self.class_index(&vec![1; self.n])] as u64
    }
}

static TABLES: [OnceLock<CharacterTable>; MAX_CHARACTER_N + 1] = [const { OnceLock::new() }; MAX_CHARACTER_N + 1];

/// Character table of `S_n` for `n ≤ 8`, computed once.
pub fn character_table(n: usize) -> &'static CharacterTable {
    assert!(n <= MAX_CHARACTER_N, "character tables are provided for n ≤ {MAX_CHARACTER_N}");
    TABLES[n].get_or_init(|| {
        let parts = partitions(n);
        let values = parts.iter().map(|l| parts.iter().map(|m| character(l, m)).collect()).collect();
        CharacterTable { n, irreps: parts.clone(), class_sizes: parts.iter().map(|m| class_size(m)).collect(), classes: parts, values }
    })
}
